"""Bases carried onto the canonical orthonormal basis by an injective map.

A continuous injective map T with T xi_n = e_n determines the family
xi_n = T^{-1} e_n, the dual zeta_n = T^H e_n, and the coefficient
seminorm (the l2 mass of the dual pairings, which equals ||T f||).  The
strict/non-strict dichotomy asks whether T^{-1} stays continuous back
from the Hilbert space; at truncation this becomes a growth question for
scaled singular values over a dimension ladder, and a strict verdict
collapses the whole ladder onto a single Hilbert triplet whose +1 inner
product is <T . , T .>.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionError, InjectivityError, StateError, ValidationError
from .sequences import (LinearMap, RANK_RTOL, SequenceFamily,
                        biorthogonality_residual, dual_analysis,
                        make_linear_map)
from .trends import (GROWTH_THRESHOLD, MIN_LADDER_POINTS, STRADDLE_BAND,
                     classify_growth, loglog_slope)
from .triplet import CoefVector, WeightedTriplet, coords_of, pairing


@dataclass(frozen=True)
class RieszBasis:
    """A transported basis: transform T, family/dual pair, and its triplet.

    `strict` is a tri-state ladder verdict ("strict", "non-strict",
    "inconclusive"); fresh constructions start inconclusive because a
    single truncation cannot decide the dichotomy.
    """

    transform: LinearMap
    fam: SequenceFamily
    triplet: WeightedTriplet
    strict: str = "inconclusive"

    def __post_init__(self):
        if self.strict not in ("strict", "non-strict", "inconclusive"):
            raise ValidationError(f"unknown strictness verdict {self.strict!r}")


def make_riesz_basis(transform, triplet, rank_rtol=RANK_RTOL):
    """Build the basis xi_n = T^{-1} e_n with dual zeta_n = T^H e_n.

    Parameters
    ----------
    transform : ndarray or LinearMap
        Square injective map T of the model dimension; rejected when its
        smallest singular value falls below the rank tolerance.
    triplet : WeightedTriplet
        Model the basis lives in; the (1 -> 0) continuity certificate of
        T is computed against it.

    The identities T Xi = I, Z = T^H and T^H T Xi = Z hold by
    construction, so the family/dual pair is exactly biorthogonal up to
    the inversion's roundoff.
    """
    a = np.asarray(getattr(transform, "matrix", transform), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("the transform must be square")
    if a.shape[0] != triplet.dim:
        raise DimensionError("transform size does not match the model dimension")
    u, s, vh = np.linalg.svd(a)
    if s.size == 0 or s[-1] <= rank_rtol * s[0]:
        raise InjectivityError(
            f"transform is singular at this truncation "
            f"(sigma_min {0.0 if s.size == 0 else s[-1]:.3e})")
    xi = vh.conj().T @ ((1.0 / s)[:, None] * u.conj().T)
    fam = SequenceFamily(xi, triplet, dual=a.conj().T)
    tmap = make_linear_map(a, triplet, pairs=((1, 0),))
    return RieszBasis(tmap, fam, triplet)


def adjoint_action(basis, g):
    """T^H g, which expands as sum_k g_k zeta_k over the dual family."""
    v = coords_of(g)
    if v.shape[0] != basis.triplet.dim:
        raise DimensionError("vector does not match the model dimension")
    return CoefVector(basis.transform.matrix.conj().T @ v, "Ddual")


def coefficient_seminorm(fam, f):
    """l2 mass of the dual pairings: (sum_k |<zeta_k, f>|^2)^{1/2}.

    For a transported basis this equals ||T f||, which is what makes the
    coefficient functionals jointly continuous.
    """
    z = fam.require_dual()
    v = coords_of(f)
    if v.shape[0] != fam.dim:
        raise DimensionError("vector does not match the model dimension")
    return float(np.linalg.norm(z.conj().T @ v))


# -- metric operator --------------------------------------------------------

@dataclass(frozen=True)
class MetricCheckResult:
    """Joint check of the equivalent basis formulations through S xi_k = zeta_k.

    metric : S = Z Xi^+ with its (1, -1) certificate
    positivity : worst |<S f, f> - sum |a_k|^2| over sampled f = Xi a
    p_zeta_level : smallest ladder level dominating the coefficient
        seminorm within the declared factor (None if none does)
    level_constants : exact per-level domination constants (sup over all f)
    biorthogonality : residual of the family/dual pair
    verdict : "pass" when all three equivalent conditions check out
    """

    metric: LinearMap
    positivity: float
    p_zeta_level: int | None
    level_constants: dict
    biorthogonality: float
    verdict: str


def metric_operator_check(fam, samples=50, seed=0, level_factor=2.0,
                          rank_rtol=RANK_RTOL, positivity_tol=1e-8):
    """Build S with S xi_k = zeta_k and test the equivalent formulations.

    S is Z Xi^+ (the minimal linear extension at truncation; a singular
    family is rejected).  The quadratic form <S f, f> must reproduce the
    squared coefficient mass of f = sum a_k xi_k, and the coefficient
    seminorm must be dominated by some ladder level.  Level constants are
    computed exactly as scaled singular values rather than sampled, so the
    chosen level is a guarantee, not an estimate.
    """
    z = fam.require_dual()
    xi = fam.family
    u, s, vh = np.linalg.svd(xi, full_matrices=False)
    if s.size == 0 or s[-1] <= rank_rtol * s[0]:
        raise InjectivityError("family matrix is singular; S is not determined")
    pinv = (vh.conj().T * (1.0 / s)) @ u.conj().T
    smat = z @ pinv
    metric = make_linear_map(smat, fam.triplet, pairs=((1, -1),))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(int(samples)):
        a = rng.standard_normal(fam.size) + 1j * rng.standard_normal(fam.size)
        f = xi @ a
        dev = abs(pairing(smat @ f, f) - float(np.sum(np.abs(a) ** 2)))
        worst = max(worst, dev)

    constants = {}
    for j in range(fam.triplet.levels + 1):
        sj = np.linalg.svd(z.conj().T @ fam.triplet.scale_matrix(-j),
                           compute_uv=False)
        constants[j] = float(sj[0]) if sj.size else 0.0
    p_level = next((j for j in range(fam.triplet.levels + 1)
                    if constants[j] <= level_factor), None)

    bio = biorthogonality_residual(fam)
    ok = bio <= fam.biorth_tol and worst <= positivity_tol and p_level is not None
    return MetricCheckResult(metric, worst, p_level, constants, bio,
                             "pass" if ok else "fail")


# -- dual-range membership ---------------------------------------------------

@dataclass(frozen=True)
class RangeMembershipResult:
    """Ladder evidence for membership of a dual vector in T^H(H).

    sq_sums collects sum_k |<psi, xi_k>|^2 per ladder dimension;
    preimage_residuals checks ||T^H h - psi|| for the reconstructed
    preimage h (exact at truncation, so these stay at roundoff).  The
    in_range field is True/False/None for bounded/growing/straddling
    trends; a single dimension never decides membership.
    """

    ladder: tuple
    sq_sums: tuple
    preimage_residuals: tuple
    slope: float | None
    trend: str
    in_range: bool | None


def range_membership(basis_rule, psi_rule, ladder, *,
                     threshold=GROWTH_THRESHOLD, band=STRADDLE_BAND):
    """Diagnose whether a dual-side vector lies in the adjoint's range.

    Parameters
    ----------
    basis_rule : callable N -> RieszBasis
        Per-dimension construction of the basis under study.
    psi_rule : callable N -> array_like
        Per-dimension coordinates of the probe vector.
    ladder : increasing dimensions to sample.
    """
    ladder = tuple(int(n) for n in ladder)
    if not ladder:
        raise ValidationError("empty ladder")
    sq_sums, defects = [], []
    for n in ladder:
        basis = basis_rule(n)
        psi = coords_of(psi_rule(n))
        res = dual_analysis(basis.fam, psi)
        h = res.coefficients  # preimage coordinates sum_k <psi, xi_k> e_k
        defect = float(np.linalg.norm(
            basis.transform.matrix.conj().T @ h - psi))
        sq_sums.append(res.sq_sum)
        defects.append(defect)
    if len(ladder) >= 2:
        slope = loglog_slope(ladder, sq_sums)
        trend = classify_growth(slope, threshold, band)
    else:
        slope, trend = None, "inconclusive"
    in_range = {"bounded": True, "growing": False}.get(trend)
    return RangeMembershipResult(ladder, tuple(sq_sums), tuple(defects),
                                 slope, trend, in_range)


# -- strictness -------------------------------------------------------------

def strictness_constants(triplet, family_matrix):
    """Exact two-sided constants of a family at one truncation.

    Returns (lower, upper): lower is the squared smallest singular value
    of scale(1) @ Xi (how far coefficient mass is dominated by the level-1
    seminorm of the sum), upper maps each level q to the squared largest
    singular value of scale(q) @ Xi.
    """
    x = np.asarray(family_matrix, dtype=complex)
    if x.shape[1] > x.shape[0]:
        raise DimensionError("more columns than the dimension supports")
    s1 = np.linalg.svd(triplet.scale_matrix(1) @ x, compute_uv=False)
    lower = float(s1[-1] ** 2) if s1.size else 0.0
    upper = {}
    for q in range(triplet.levels + 1):
        sq = np.linalg.svd(triplet.scale_matrix(q) @ x, compute_uv=False)
        upper[q] = float(sq[0] ** 2) if sq.size else 0.0
    return lower, upper


@dataclass(frozen=True)
class StrictnessReport:
    """Two-sided constants over a dimension ladder with the trend verdict.

    The verdict convention is declared, not proven: fitted log-log slopes
    against a 0.5 threshold with a 10% straddle band, and at least four
    ladder points; completeness beyond full column rank has no finite
    content, so the verdict speaks about trends only.
    """

    ladder: tuple
    lower: tuple
    upper: dict
    lower_slope: float | None
    upper_slopes: dict
    verdict: str
    note: str = ""


def strictness_report(basis_rule, ladder, *, threshold=GROWTH_THRESHOLD,
                      band=STRADDLE_BAND, min_points=MIN_LADDER_POINTS):
    """Fit growth trends of the two-sided constants across a ladder.

    Strict means the inverse lower constant and every level's upper
    constant stay bounded; any clearly growing trend is non-strict;
    straddling slopes or a window shorter than `min_points` stay
    inconclusive.  `basis_rule` may return either a basis or a plain
    (triplet, family_matrix) pair, which covers families truncated by
    column count rather than rebuilt per dimension.
    """
    ladder = tuple(int(n) for n in ladder)
    if not ladder:
        raise ValidationError("empty ladder")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValidationError("ladder must be strictly increasing")
    lowers, uppers = [], {}
    for n in ladder:
        item = basis_rule(n)
        if isinstance(item, tuple):
            tri, mat = item
        else:
            tri, mat = item.triplet, item.fam.family
        lo, up = strictness_constants(tri, mat)
        lowers.append(lo)
        for q, val in up.items():
            uppers.setdefault(q, []).append(val)
    if len(ladder) < 2:
        return StrictnessReport(ladder, tuple(lowers),
                                {q: tuple(v) for q, v in uppers.items()},
                                None, {}, "inconclusive",
                                "single truncation cannot exhibit a trend")
    inv_lower = [1.0 / max(v, 1e-300) for v in lowers]
    lower_slope = loglog_slope(ladder, inv_lower)
    upper_slopes = {q: loglog_slope(ladder, v) for q, v in uppers.items()}
    classes = [classify_growth(lower_slope, threshold, band)]
    classes += [classify_growth(sl, threshold, band)
                for sl in upper_slopes.values()]
    if len(ladder) < min_points:
        verdict, note = "inconclusive", (
            f"ladder shorter than the declared {min_points}-point window")
    elif "growing" in classes:
        verdict, note = "non-strict", "some constant grows along the ladder"
    elif all(c == "bounded" for c in classes):
        verdict, note = "strict", "all constants bounded along the ladder"
    else:
        verdict, note = "inconclusive", "a trend straddles the threshold band"
    return StrictnessReport(ladder, tuple(lowers),
                            {q: tuple(v) for q, v in uppers.items()},
                            lower_slope, upper_slopes, verdict, note)


def with_strictness(basis, report):
    """Copy of the basis carrying the ladder verdict."""
    return replace(basis, strict=report.verdict)


# -- Hilbert triplet realization --------------------------------------------

def realized_grams(basis):
    """(+1, -1) Gram matrices of family and dual in the realized triplet.

    The +1 inner product is <T . , T .>; with T xi_n = e_n the family
    Gram is the identity, and the dual is orthonormal in the -1 inner
    product <|T|^{-1} . , |T|^{-1} .>.
    """
    t = basis.transform.matrix
    xi = basis.fam.family
    z = basis.fam.require_dual()
    txi = t @ xi
    g_plus = txi.conj().T @ txi
    g_minus = z.conj().T @ np.linalg.solve(t.conj().T @ t, z)
    return g_plus, g_minus


def hilbert_triplet_realization(basis, gram_tol=1e-8):
    """Collapse a strict basis's ladder onto a single Hilbert triplet.

    The returned triplet's level-1 seminorm is ||T f||: weights are the
    singular values of T with the right-singular-vector frame attached.
    Only a basis carrying a strict ladder verdict may be realized; the
    +-1 Gram identities of family and dual are verified on the way out.
    Weights may fall below 1 when sigma_min(T) < 1 (the +1 norm is then
    equivalent to, not pointwise above, the Hilbert norm).
    """
    if basis.strict != "strict":
        raise StateError(
            f"realization needs a strict ladder verdict, have {basis.strict!r}")
    t = basis.transform.matrix
    _, s, vh = np.linalg.svd(t)
    triplet = WeightedTriplet(t.shape[0], s, 1, vh.conj().T,
                              check_weights=False)
    g_plus, g_minus = realized_grams(basis)
    eye = np.eye(t.shape[0])
    defect = max(float(np.max(np.abs(g_plus - eye))),
                 float(np.max(np.abs(g_minus - eye))))
    if not defect <= gram_tol:
        raise ValidationError(
            f"realized Gram identities violated (defect {defect:.2e})")
    return triplet
