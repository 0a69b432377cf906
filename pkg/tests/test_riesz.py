import dataclasses

import numpy as np
import pytest

from rieszlab import (DimensionError, InjectivityError, SequenceFamily,
                      StateError, ValidationError, WeightedTriplet,
                      adjoint_action, coefficient_seminorm, coords_of,
                      hilbert_triplet_realization, make_riesz_basis,
                      metric_operator_check, range_membership, realized_grams,
                      strictness_constants, strictness_report,
                      with_strictness)
from rieszlab.trends import classify_growth, loglog_slope

from conftest import random_vector, well_conditioned_transform

LADDER = (8, 16, 32, 64)


def number_op_basis(n, levels=1):
    k = np.arange(1.0, n + 1)
    return make_riesz_basis(np.diag(k), WeightedTriplet(n, k, levels))


def identity_basis(n, levels=1):
    return make_riesz_basis(np.eye(n), WeightedTriplet(n, np.ones(n), levels))


class TestMakeRieszBasis:
    def test_transported_identities(self, rng):
        n = 6
        t = well_conditioned_transform(rng, n)
        basis = make_riesz_basis(t, WeightedTriplet(n, np.ones(n)))
        xi, z = basis.fam.family, basis.fam.dual
        eye = np.eye(n)
        assert np.max(np.abs(t @ xi - eye)) < 1e-10
        assert np.max(np.abs(z - t.conj().T)) < 1e-12
        assert np.max(np.abs(t.conj().T @ t @ xi - z)) < 1e-10

    def test_starts_inconclusive(self):
        assert number_op_basis(4).strict == "inconclusive"

    def test_unknown_verdict_rejected(self):
        basis = number_op_basis(4)
        with pytest.raises(ValidationError):
            dataclasses.replace(basis, strict="maybe")

    def test_continuity_certificate_attached(self):
        basis = number_op_basis(4)
        # ||T f|| over the level-1 ball of w = (1..4): T cancels the scale
        assert basis.transform.certificate[(1, 0)] == pytest.approx(1.0)

    def test_singular_transform_rejected(self):
        tri = WeightedTriplet(3, np.ones(3))
        with pytest.raises(InjectivityError):
            make_riesz_basis(np.diag([1.0, 1.0, 0.0]), tri)

    def test_nearly_singular_transform_rejected(self):
        tri = WeightedTriplet(2, np.ones(2))
        with pytest.raises(InjectivityError):
            make_riesz_basis(np.diag([1.0, 1e-15]), tri)

    def test_shape_validation(self):
        tri = WeightedTriplet(3, np.ones(3))
        with pytest.raises(DimensionError):
            make_riesz_basis(np.ones((3, 2)), tri)
        with pytest.raises(DimensionError):
            make_riesz_basis(np.eye(4), tri)


class TestAdjointAction:
    def test_diagonal_example(self):
        out = adjoint_action(number_op_basis(4), [1.0, 1.0, 0.0, 0.0])
        assert out.label == "Ddual"
        assert np.allclose(coords_of(out), [1.0, 2.0, 0.0, 0.0], atol=1e-15)

    def test_matches_dual_expansion(self, rng):
        n = 5
        t = well_conditioned_transform(rng, n)
        basis = make_riesz_basis(t, WeightedTriplet(n, np.ones(n)))
        g = random_vector(rng, n)
        direct = coords_of(adjoint_action(basis, g))
        expanded = basis.fam.dual @ g
        assert np.max(np.abs(direct - expanded)) < 1e-12

    def test_dimension_check(self):
        with pytest.raises(DimensionError):
            adjoint_action(number_op_basis(4), np.ones(3))


class TestCoefficientSeminorm:
    def test_diagonal_example(self):
        basis = number_op_basis(4)
        f = np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2.0)
        assert coefficient_seminorm(basis.fam, f) == \
            pytest.approx(np.sqrt(2.5), rel=1e-12)

    def test_equals_transformed_norm(self, rng):
        n = 6
        t = well_conditioned_transform(rng, n)
        basis = make_riesz_basis(t, WeightedTriplet(n, np.ones(n)))
        for _ in range(20):
            f = random_vector(rng, n)
            assert coefficient_seminorm(basis.fam, f) == \
                pytest.approx(float(np.linalg.norm(t @ f)), rel=1e-12)


class TestMetricOperator:
    def test_identity_basis(self):
        res = metric_operator_check(identity_basis(4).fam)
        assert np.allclose(res.metric.matrix, np.eye(4), atol=1e-12)
        assert res.verdict == "pass"
        assert res.p_zeta_level == 0

    def test_number_op_metric_is_squared_weights(self):
        res = metric_operator_check(number_op_basis(4).fam)
        assert np.allclose(res.metric.matrix,
                           np.diag([1.0, 4.0, 9.0, 16.0]), atol=1e-10)
        assert res.level_constants == pytest.approx({0: 4.0, 1: 1.0})
        assert res.p_zeta_level == 1
        assert res.positivity < 1e-10
        assert res.verdict == "pass"

    def test_transported_metric_is_gram_of_transform(self, rng):
        n = 5
        t = well_conditioned_transform(rng, n)
        basis = make_riesz_basis(t, WeightedTriplet(n, np.ones(n)))
        res = metric_operator_check(basis.fam)
        assert np.max(np.abs(res.metric.matrix - t.conj().T @ t)) < 1e-10
        assert res.verdict == "pass"

    def test_mismatched_dual_fails(self):
        tri = WeightedTriplet(4, np.ones(4))
        fam = SequenceFamily(np.eye(4), tri, dual=2.0 * np.eye(4))
        res = metric_operator_check(fam)
        assert res.verdict == "fail"
        assert res.biorthogonality == pytest.approx(1.0)
        assert res.positivity > 0.5

    def test_singular_family_rejected(self):
        tri = WeightedTriplet(3, np.ones(3))
        col = np.eye(3)[:, :1]
        fam = SequenceFamily(np.hstack([col, col, col]), tri,
                             dual=np.eye(3))
        with pytest.raises(InjectivityError):
            metric_operator_check(fam)

    def test_deterministic_in_seed(self):
        fam = number_op_basis(4).fam
        a = metric_operator_check(fam, seed=5)
        b = metric_operator_check(fam, seed=5)
        assert a.positivity == b.positivity


class TestRangeMembership:
    def test_constant_probe_stays_bounded(self):
        res = range_membership(number_op_basis, lambda n: np.ones(n), LADDER)
        assert res.trend == "bounded"
        assert res.in_range is True
        # the coefficient mass climbs toward pi^2/6 from below
        target = np.pi ** 2 / 6.0
        for n, s in zip(res.ladder, res.sq_sums):
            assert s < target
            assert target - s < 1.0 / n
        assert max(res.preimage_residuals) < 1e-10

    def test_linear_probe_grows(self):
        res = range_membership(number_op_basis,
                               lambda n: np.arange(1.0, n + 1), LADDER)
        assert res.sq_sums == pytest.approx(LADDER)
        assert res.trend == "growing"
        assert res.in_range is False
        assert res.slope == pytest.approx(1.0, abs=1e-6)
        assert max(res.preimage_residuals) < 1e-10

    def test_single_dual_vector_is_flat(self):
        res = range_membership(number_op_basis,
                               lambda n: np.eye(n)[:, 0], LADDER)
        assert res.sq_sums == pytest.approx((1.0,) * 4)
        assert res.trend == "bounded"

    def test_single_point_is_inconclusive(self):
        res = range_membership(number_op_basis, lambda n: np.ones(n), (8,))
        assert res.trend == "inconclusive"
        assert res.in_range is None
        assert res.slope is None

    def test_empty_ladder_rejected(self):
        with pytest.raises(ValidationError):
            range_membership(number_op_basis, lambda n: np.ones(n), ())


class TestStrictnessConstants:
    def test_number_op_level_one(self):
        basis = number_op_basis(8)
        lower, upper = strictness_constants(basis.triplet, basis.fam.family)
        assert lower == pytest.approx(1.0, abs=1e-12)
        assert upper[0] == pytest.approx(1.0, abs=1e-12)
        assert upper[1] == pytest.approx(1.0, abs=1e-12)

    def test_number_op_level_two_upper(self):
        for n in (8, 16):
            basis = number_op_basis(n, levels=2)
            _, upper = strictness_constants(basis.triplet, basis.fam.family)
            assert upper[2] == pytest.approx(n ** 2, rel=1e-12)

    def test_too_many_columns_rejected(self):
        tri = WeightedTriplet(2, np.ones(2))
        with pytest.raises(DimensionError):
            strictness_constants(tri, np.ones((2, 3)))


class TestStrictnessReport:
    def test_number_op_level_one_is_strict(self):
        report = strictness_report(number_op_basis, LADDER)
        assert report.verdict == "strict"
        assert report.lower == pytest.approx((1.0,) * 4, abs=1e-12)
        for q, values in report.upper.items():
            assert values == pytest.approx((1.0,) * 4, abs=1e-12)

    def test_number_op_level_two_is_non_strict(self):
        report = strictness_report(lambda n: number_op_basis(n, levels=2),
                                   LADDER)
        assert report.verdict == "non-strict"
        assert report.upper[2] == pytest.approx([n ** 2 for n in LADDER],
                                                rel=1e-10)
        assert report.upper_slopes[2] == pytest.approx(2.0, abs=1e-6)

    def test_identity_basis_is_strict(self):
        report = strictness_report(identity_basis, LADDER)
        assert report.verdict == "strict"

    def test_short_ladder_inconclusive(self):
        report = strictness_report(number_op_basis, (8, 16, 32))
        assert report.verdict == "inconclusive"
        assert "window" in report.note

    def test_single_point_inconclusive(self):
        report = strictness_report(number_op_basis, (8,))
        assert report.verdict == "inconclusive"
        assert "single truncation" in report.note

    def test_ladder_validation(self):
        with pytest.raises(ValidationError):
            strictness_report(number_op_basis, ())
        with pytest.raises(ValidationError):
            strictness_report(number_op_basis, (8, 8, 16, 32))

    def test_truncated_family_rule(self):
        tri = WeightedTriplet(8, np.ones(8))
        eye = np.eye(8)
        report = strictness_report(lambda n: (tri, eye[:, :n]), (4, 5, 6, 7))
        assert report.verdict == "strict"
        assert report.lower == pytest.approx((1.0,) * 4)

    def test_frame_rotation_leaves_constants(self, rng):
        n, levels = 6, 2
        w = np.sort(rng.uniform(1.0, 3.0, n))
        t = well_conditioned_transform(rng, n)
        q, _ = np.linalg.qr(rng.standard_normal((n, n))
                            + 1j * rng.standard_normal((n, n)))

        plain = WeightedTriplet(n, w, levels)
        rotated = WeightedTriplet(n, w, levels, frame=q)
        lo1, up1 = strictness_constants(
            plain, make_riesz_basis(t, plain).fam.family)
        lo2, up2 = strictness_constants(
            rotated, make_riesz_basis(q @ t @ q.conj().T, rotated).fam.family)
        assert lo2 == pytest.approx(lo1, rel=1e-9)
        for level in up1:
            assert up2[level] == pytest.approx(up1[level], rel=1e-9)

    def test_with_strictness_attaches_verdict(self):
        report = strictness_report(number_op_basis, LADDER)
        basis = with_strictness(number_op_basis(8), report)
        assert basis.strict == "strict"


class TestRealization:
    def strict_number_op(self, n=6):
        report = strictness_report(number_op_basis, LADDER)
        return with_strictness(number_op_basis(n), report)

    def test_weights_are_singular_values(self):
        tri = hilbert_triplet_realization(self.strict_number_op(6))
        assert np.allclose(np.sort(tri.weights), np.arange(1.0, 7.0),
                           atol=1e-12)

    def test_level_one_seminorm_is_transformed_norm(self, rng):
        basis = self.strict_number_op(6)
        tri = hilbert_triplet_realization(basis)
        t = basis.transform.matrix
        for _ in range(20):
            f = random_vector(rng, 6)
            assert tri.seminorm(f, 1) == \
                pytest.approx(float(np.linalg.norm(t @ f)), rel=1e-12)

    def test_realized_grams_are_identities(self):
        basis = self.strict_number_op(6)
        g_plus, g_minus = realized_grams(basis)
        eye = np.eye(6)
        assert np.max(np.abs(g_plus - eye)) < 1e-9
        assert np.max(np.abs(g_minus - eye)) < 1e-9

    def test_dual_vectors_normalized_in_realized_dual_norm(self):
        basis = self.strict_number_op(6)
        tri = hilbert_triplet_realization(basis)
        for k in range(6):
            zeta = basis.fam.dual[:, k]
            assert tri.dual_norm(zeta, 1) == pytest.approx(1.0, rel=1e-10)

    def test_random_transported_basis_realizes(self, rng):
        n = 6
        t = well_conditioned_transform(rng, n)
        basis = make_riesz_basis(t, WeightedTriplet(n, np.ones(n)))
        basis = dataclasses.replace(basis, strict="strict")
        tri = hilbert_triplet_realization(basis)
        s = np.linalg.svd(t, compute_uv=False)
        assert np.allclose(np.sort(tri.weights), np.sort(s), atol=1e-10)

    def test_non_strict_rejected(self):
        with pytest.raises(StateError):
            hilbert_triplet_realization(number_op_basis(6))
        report = strictness_report(lambda n: number_op_basis(n, levels=2),
                                   LADDER)
        basis = with_strictness(number_op_basis(6, levels=2), report)
        with pytest.raises(StateError):
            hilbert_triplet_realization(basis)

    def test_corrupted_family_rejected(self):
        basis = self.strict_number_op(4)
        fam = SequenceFamily(2.0 * basis.fam.family, basis.triplet,
                             dual=basis.fam.dual)
        bad = dataclasses.replace(basis, fam=fam)
        with pytest.raises(ValidationError):
            hilbert_triplet_realization(bad)


class TestTrendHelpers:
    def test_loglog_slope_of_power_law(self):
        ns = np.array([8, 16, 32, 64])
        assert loglog_slope(ns, ns.astype(float) ** 2) == \
            pytest.approx(2.0, abs=1e-12)

    def test_classification_bands(self):
        assert classify_growth(0.1) == "bounded"
        assert classify_growth(1.0) == "growing"
        assert classify_growth(0.5) == "inconclusive"
        assert classify_growth(0.52) == "inconclusive"
        assert classify_growth(0.56) == "growing"

    def test_slope_input_validation(self):
        with pytest.raises(ValueError):
            loglog_slope([1, 2], [1.0])
        with pytest.raises(ValueError):
            loglog_slope([1], [1.0])
