"""Non-self-adjoint Hamiltonians intertwined with self-adjoint partners.

Given a real spectrum, a unitary eigenvector matrix psi and an injective
transform T, the pair is H_sa = sum_k lambda_k psi_k psi_k^H and
H = T^{-1} H_sa T.  H keeps the real spectrum with (generally
non-orthogonal) eigenvectors xi_k = T^{-1} psi_k, and the two operators
satisfy a weak similarity identity through T that holds pair by pair:
<H xi, T^H eta> = <T xi, H_sa eta>.  The diagnostics below measure how
far a (possibly perturbed) pair is from these identities, plus the one
finite-dimensional shadow of the density question: the growth of
||T^H eta_N|| along a dimension ladder.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InjectivityError, ValidationError
from .sequences import RANK_RTOL
from .trends import classify_growth, loglog_slope
from .triplet import coords_of, pairing


@dataclass(frozen=True)
class HamiltonianPair:
    """An intertwined pair with its spectral data.

    hamiltonian : H = T^{-1} H_sa T
    selfadjoint : H_sa, Hermitian with spectrum `eigenvalues`
    transform : the intertwining map T
    eigenvalues : real spectrum shared by both operators
    eigenvectors_sa : unitary columns psi_k of H_sa
    eigenvectors : columns xi_k = T^{-1} psi_k of H
    degenerate : repeated eigenvalues were supplied (accepted, flagged)
    """

    hamiltonian: np.ndarray
    selfadjoint: np.ndarray
    transform: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors_sa: np.ndarray
    eigenvectors: np.ndarray
    degenerate: bool = False

    @property
    def dim(self):
        return int(self.hamiltonian.shape[0])


def random_unitary(dim, seed):
    """Deterministic Haar-style unitary: QR of a complex Gaussian matrix
    with the phases of the R diagonal fixed."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    d = np.diag(r)
    return q * (np.conj(d) / np.abs(d))


def build_selfadjoint(eigenvalues, eigenvectors, unitary_tol=1e-10):
    """H_sa = sum_k lambda_k psi_k psi_k^H from real eigenvalues and a
    unitary eigenvector matrix; the result is symmetrized so Hermiticity
    is exact."""
    lam = np.asarray(eigenvalues)
    if np.iscomplexobj(lam):
        if np.max(np.abs(lam.imag)) > 0.0:
            raise ValidationError("eigenvalues must be real")
        lam = lam.real
    lam = lam.astype(float)
    psi = np.asarray(eigenvectors, dtype=complex)
    if psi.ndim != 2 or psi.shape[0] != psi.shape[1]:
        raise DimensionError("eigenvector matrix must be square")
    if lam.shape != (psi.shape[0],):
        raise DimensionError("need one eigenvalue per eigenvector")
    defect = float(np.max(np.abs(psi.conj().T @ psi - np.eye(psi.shape[0]))))
    if not defect <= unitary_tol:
        raise ValidationError(
            f"eigenvector matrix is not unitary (defect {defect:.2e})")
    h = (psi * lam) @ psi.conj().T
    return (h + h.conj().T) / 2.0


def build_pair(eigenvalues, eigenvectors, transform, rank_rtol=RANK_RTOL,
               unitary_tol=1e-10):
    """Assemble the intertwined pair H = T^{-1} H_sa T.

    The transform must be injective at this truncation; repeated
    eigenvalues are accepted and flagged as degenerate.
    """
    hsa = build_selfadjoint(eigenvalues, eigenvectors, unitary_tol)
    t = np.asarray(transform, dtype=complex)
    if t.shape != hsa.shape:
        raise DimensionError("transform does not match the operator size")
    u, s, vh = np.linalg.svd(t)
    if s.size == 0 or s[-1] <= rank_rtol * s[0]:
        raise InjectivityError(
            f"transform is singular (sigma_min {0.0 if s.size == 0 else s[-1]:.3e})")
    tinv = vh.conj().T @ ((1.0 / s)[:, None] * u.conj().T)
    lam = np.asarray(eigenvalues, dtype=float).ravel() \
        if not np.iscomplexobj(eigenvalues) \
        else np.asarray(eigenvalues).real.astype(float).ravel()
    psi = np.asarray(eigenvectors, dtype=complex)
    degenerate = bool(np.any(np.diff(np.sort(lam)) < 1e-12))
    return HamiltonianPair(tinv @ hsa @ t, hsa, t, lam, psi, tinv @ psi,
                           degenerate)


def weak_similarity_residual(pair, xi, eta):
    """|<H xi, T^H eta> - <T xi, H_sa eta>| for one vector pair.

    Zero in exact arithmetic for any correctly intertwined pair; the
    residual measures perturbations of H away from T^{-1} H_sa T.
    """
    x = coords_of(xi)
    e = coords_of(eta)
    lhs = pairing(pair.hamiltonian @ x, pair.transform.conj().T @ e)
    rhs = pairing(pair.transform @ x, pair.selfadjoint @ e)
    return float(abs(lhs - rhs))


def eigen_residual(pair):
    """Worst relative defect max_k ||H xi_k - lambda_k xi_k|| / ||xi_k||."""
    r = pair.hamiltonian @ pair.eigenvectors \
        - pair.eigenvectors * pair.eigenvalues
    return float(np.max(np.linalg.norm(r, axis=0)
                        / np.linalg.norm(pair.eigenvectors, axis=0)))


def spectrum_residual(pair):
    """Multiset distance between eig(H) and the declared real spectrum.

    Eigenvalues are matched by sorted real part; the result is the worst
    absolute difference in the complex plane.
    """
    ev = np.linalg.eigvals(pair.hamiltonian)
    ev = ev[np.argsort(ev.real)]
    lam = np.sort(pair.eigenvalues)
    return float(np.max(np.abs(ev - lam)))


def nonnormality(matrix):
    """Spectral norm of the commutator [A, A^H]; zero iff A is normal."""
    a = np.asarray(matrix, dtype=complex)
    c = a @ a.conj().T - a.conj().T @ a
    return float(np.linalg.norm(c, 2))


@dataclass(frozen=True)
class DensityTrend:
    """Ladder record of the admissibility diagnostic.

    At truncation the admissible set {eta : T^H eta in H} is everything
    (ranks full, principal angles zero), so the informative entry is the
    growth trend of ||T^H eta_N|| for the per-dimension probe vector.
    """

    ladder: tuple
    norms: tuple
    ranks: tuple
    principal_angles: tuple
    slope: float | None
    flag: str


def density_diagnostic(pair_rule, ladder, eta_rule=None):
    """Trend of ||T^H eta_N|| over a dimension ladder.

    Parameters
    ----------
    pair_rule : callable N -> HamiltonianPair
    ladder : increasing dimensions to sample
    eta_rule : callable N -> array_like, optional
        Probe vectors; the default is the last canonical basis vector,
        which exposes the largest singular directions of diagonal-style
        transforms.

    A clearly growing trend is flagged "growing" (the probe directions
    leave every bounded admissibility ball), bounded trends are "benign".
    """
    ladder = tuple(int(n) for n in ladder)
    if not ladder:
        raise ValidationError("empty ladder")
    norms, ranks, angles = [], [], []
    for n in ladder:
        pair = pair_rule(n)
        if eta_rule is None:
            eta = np.zeros(pair.dim, dtype=complex)
            eta[-1] = 1.0
        else:
            eta = coords_of(eta_rule(n))
        norms.append(float(np.linalg.norm(pair.transform.conj().T @ eta)))
        ranks.append(pair.dim)      # invertible T: every eta is admissible
        angles.append(0.0)
    if len(ladder) >= 2:
        slope = loglog_slope(ladder, norms)
        cls = classify_growth(slope)
        flag = {"growing": "growing", "bounded": "benign"}.get(cls,
                                                               "inconclusive")
    else:
        slope, flag = None, "inconclusive"
    return DensityTrend(ladder, tuple(norms), tuple(ranks), tuple(angles),
                        slope, flag)


def demo_pair(dim, psi_seed=7):
    """Reference pair: T = diag(1..N), seeded random unitary psi,
    eigenvalues 1..N.  Non-normal for generic psi, spectrum exactly known."""
    lam = np.arange(1, int(dim) + 1, dtype=float)
    psi = random_unitary(int(dim), psi_seed)
    t = np.diag(lam).astype(complex)
    return build_pair(lam, psi, t)
