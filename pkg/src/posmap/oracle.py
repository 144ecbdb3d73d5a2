"""Numeric ground truth for the region predicates.

Nothing in this module knows the closed-form boundary curves: verdicts come
from eigenvalues of explicitly constructed matrices (block matrices of
matrix-unit images for k-positivity, Choi matrices for complete positivity)
and from sampled states.  The per-point operations run every matrix through
the package's own Jacobi eigensolver; the grid helpers batch thousands of
small eigenproblems through ``numpy.linalg.eigvalsh`` for throughput and are
tested to agree with the per-point path.

Verdict normalization: the matrix actually tested is the image of the
canonical unit-norm maximally entangled witness state (the k-block divided
by k, the Choi matrix divided by n), so a reported negative min eigenvalue
is exactly the eigenvalue the witness state exhibits.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg, maps
from .linalg import DEFAULT_PSD_TOL, entry_scale, hermitian_eigenvalues
from .maps import MapKind, MapParams

# probe seed for the fixed random input used by decomposition_consistency
_PROBE_SEED = 20260809


@dataclass(frozen=True)
class OracleVerdict:
    """Outcome of one numeric positivity test.

    ``witness`` is a unit-norm state (flat complex array) whose image under
    the extended map attains ``min_eigenvalue``; present only when the
    verdict is False.
    """

    predicate: str
    verdict: bool
    min_eigenvalue: float
    witness: np.ndarray | None = None


def canonical_entangled_state(k: int, n: int) -> np.ndarray:
    """Unit vector (1/sqrt(k)) sum_{i<k} e_i (x) e_i in C^k (x) C^n."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    x = np.zeros(k * n, dtype=complex)
    for i in range(k):
        x[i * n + i] = 1.0
    return x / math.sqrt(k)


def _psd_verdict(predicate: str, image: np.ndarray, witness: np.ndarray,
                 tol: float) -> OracleVerdict:
    res = hermitian_eigenvalues(image)
    mn = float(res.eigenvalues[0])
    ok = mn >= -tol * entry_scale(image)
    return OracleVerdict(predicate, ok, mn, None if ok else witness)


def numeric_k_positive(p: MapParams, k: int, tol: float = DEFAULT_PSD_TOL) -> OracleVerdict:
    """k-positivity via the block matrix of matrix-unit images.

    For k = 1 the tested matrix is the image of e_11; for k >= 2 it is the
    k-block divided by k, i.e. the image of the canonical entangled witness.
    """
    if not 1 <= k <= p.n:
        raise ValueError(f"need 1 <= k <= n = {p.n}, got k={k}")
    if k == 1:
        image = maps.apply_map(MapKind.PHI, p, linalg.matrix_unit(p.n, 1, 1))
    else:
        image = maps.block_matrix(p, k) / k
    witness = canonical_entangled_state(k, p.n)
    return _psd_verdict(f"k_positive(k={k})", image, witness, tol)


def numeric_completely_positive(p: MapParams, kind=MapKind.PHI,
                                tol: float = DEFAULT_PSD_TOL) -> OracleVerdict:
    """Complete positivity via the Choi matrix (divided by n) of any kind."""
    kind = MapKind(kind)
    image = maps.choi_matrix(kind, p) / p.n
    witness = canonical_entangled_state(p.n, p.n)
    return _psd_verdict(f"completely_positive({kind.value})", image, witness, tol)


def _trial_state(seed: int, trial: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence((seed, trial)))
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def monte_carlo_falsify(p: MapParams, k: int, trials: int, seed: int,
                        tol: float = DEFAULT_PSD_TOL) -> OracleVerdict:
    """Search for a state whose image under the extended map is not PSD.

    Probes the canonical entangled witness first, then ``trials`` seeded
    Haar-uniform states in C^k (x) C^n.  A True verdict only means no
    violation was found; False comes with the worst witness state.
    """
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    if not 1 <= k <= p.n:
        raise ValueError(f"need 1 <= k <= n = {p.n}, got k={k}")
    dim = k * p.n
    states = [canonical_entangled_state(k, p.n)]
    states += [_trial_state(seed, t, dim) for t in range(trials)]
    images = np.empty((len(states), k * p.n * p.n, k * p.n * p.n), dtype=complex)
    for idx, x in enumerate(states):
        images[idx] = maps.apply_extended_map(p, k, np.outer(x, x.conj()))
    eigs = np.linalg.eigvalsh(images)
    mins = eigs[:, 0]
    scales = np.maximum(1.0, np.abs(images).max(axis=(1, 2)))
    violated = mins < -tol * scales
    worst = int(np.argmin(mins))
    verdict = not bool(violated.any())
    return OracleVerdict(
        f"monte_carlo(k={k})",
        verdict,
        float(mins[worst]),
        None if verdict else states[worst],
    )


def equivariance_residual(p: MapParams, trials: int, seed: int) -> float:
    """Largest relative defect of the conjugation-covariance identity.

    For each trial draws a Haar unitary U and a Gaussian complex matrix X
    and compares the image of U X U* with the conjugated image of X under
    V = conj(U) (x) U.  The identity is exact, so the result is rounding
    noise for any parameters.
    """
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    n = p.n
    worst = 0.0
    for t in range(trials):
        ss = np.random.SeedSequence((seed, t))
        useed, xseed = (int(s) for s in ss.generate_state(2))
        u = linalg.random_unitary(n, useed)
        rng = np.random.default_rng(xseed)
        x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        lhs = maps.apply_map(MapKind.PHI, p, u @ x @ u.conj().T)
        v = linalg.kron(u.conj(), u)
        rhs = v @ maps.apply_map(MapKind.PHI, p, x) @ v.conj().T
        resid = float(np.abs(lhs - rhs).max()) / entry_scale(lhs)
        worst = max(worst, resid)
    return worst


def cp_ccp_equivalence(p: MapParams, tol: float = DEFAULT_PSD_TOL) -> bool:
    """Numerically check that the map and its transpose composition are
    completely positive together or not at all."""
    if p.n != 3:
        raise ValueError(f"the transpose-composition kinds require n = 3, got {p.n}")
    cp = numeric_completely_positive(p, MapKind.PHI, tol)
    ccp = numeric_completely_positive(p, MapKind.PHI_TRANSPOSE, tol)
    return cp.verdict == ccp.verdict


def decomposition_consistency(p: MapParams, tol: float = DEFAULT_PSD_TOL) -> bool:
    """Two facts behind the decomposability test, checked numerically.

    The transposed-half map is completely copositive exactly when the plain
    half is completely positive, and the two halves sum to the main map on a
    fixed random probe.
    """
    if p.n != 3:
        raise ValueError(f"the half maps require n = 3, got {p.n}")
    ccp1 = numeric_completely_positive(p, MapKind.PHI1_TRANSPOSE, tol)
    cp2 = numeric_completely_positive(p, MapKind.PHI2, tol)
    if ccp1.verdict != cp2.verdict:
        return False
    rng = np.random.default_rng(_PROBE_SEED)
    probe = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    total = maps.apply_map(MapKind.PHI1, p, probe) + maps.apply_map(MapKind.PHI2, p, probe)
    whole = maps.apply_map(MapKind.PHI, p, probe)
    return float(np.abs(total - whole).max()) <= 1e-12 * entry_scale(whole)


# --- batched grid evaluation ----------------------------------------------
#
# Every tested matrix family is affine in the parameters:
#     M(alpha, beta) = base + beta * beta_part + alpha * c * I
# with c read off (and verified exactly) from the builders.  One batched
# eigensolve per beta then classifies a whole alpha column, which is what
# makes full-grid oracle runs cheap.

@dataclass(frozen=True)
class AffineFamily:
    base: np.ndarray
    beta_part: np.ndarray
    alpha_coeff: float


def _family_from_builder(builder) -> AffineFamily:
    m00 = builder(0.0, 0.0)
    m10 = builder(1.0, 0.0)
    m01 = builder(0.0, 1.0)
    shift = m10 - m00
    coeff = float(shift[0, 0].real)
    if not np.array_equal(shift, coeff * np.eye(m00.shape[0], dtype=complex)):
        raise AssertionError("matrix family is not an identity shift in alpha")
    return AffineFamily(m00, m01 - m00, coeff)


def _grid_builders(n: int):
    def mk(builder):
        return _family_from_builder(builder)

    # raw (unnormalized) matrices keep the alpha shift an exact multiple of I;
    # PSD verdicts are scale-invariant so the normalization is irrelevant here
    e11 = linalg.matrix_unit(n, 1, 1)
    fams = {
        "positive": mk(lambda a, b: maps.apply_map(MapKind.PHI, MapParams(a, b, n), e11)),
    }
    if n == 3:
        fams.update({
            "two_positive": mk(lambda a, b: maps.block_matrix(MapParams(a, b, 3), 2)),
            "cp": mk(lambda a, b: maps.choi_matrix(MapKind.PHI, MapParams(a, b, 3))),
            "ccp": mk(lambda a, b: maps.choi_matrix(MapKind.PHI_TRANSPOSE, MapParams(a, b, 3))),
            "half1_ccp": mk(lambda a, b: maps.choi_matrix(MapKind.PHI1_TRANSPOSE, MapParams(a, b, 3))),
            "half2_cp": mk(lambda a, b: maps.choi_matrix(MapKind.PHI2, MapParams(a, b, 3))),
        })
    return fams


def thread_count() -> int:
    """Worker cap for grid eigensolves; POSMAP_THREADS overrides the default."""
    env = os.environ.get("POSMAP_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"POSMAP_THREADS must be an integer, got {env!r}") from None
    return min(4, os.cpu_count() or 1)


def _batched_eigvalsh(mats: np.ndarray, workers: int) -> np.ndarray:
    if workers <= 1 or mats.shape[0] < 2 * workers:
        return np.linalg.eigvalsh(mats)
    chunks = np.array_split(np.arange(mats.shape[0]), workers)
    out = np.empty(mats.shape[:2], dtype=float)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for idx, eigs in zip(chunks, pool.map(lambda ix: np.linalg.eigvalsh(mats[ix]), chunks)):
            out[idx] = eigs
    return out


def grid_psd_verdicts(name: str, alphas, betas, n: int = 3,
                      tol: float = DEFAULT_PSD_TOL,
                      workers: int | None = None) -> np.ndarray:
    """PSD verdict of one matrix family on an alpha x beta grid.

    Returns a boolean array of shape (len(alphas), len(betas)) with the same
    tolerance semantics as the per-point operations: min eigenvalue above
    -tol * max(1, largest absolute entry), both evaluated per cell.
    """
    fams = _grid_builders(n)
    if name not in fams:
        raise ValueError(f"unknown grid family {name!r} for n={n}")
    fam = fams[name]
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    if workers is None:
        workers = thread_count()
    mats = fam.base[None, :, :] + betas[:, None, None] * fam.beta_part[None, :, :]
    eigs = _batched_eigvalsh(mats, workers)
    lam0 = eigs[:, 0]                                    # (nb,)
    diag0 = np.real(np.diagonal(mats, axis1=1, axis2=2))  # (nb, d)
    off = np.abs(mats).copy()
    d = off.shape[1]
    off[:, np.arange(d), np.arange(d)] = 0.0
    offmax = off.max(axis=(1, 2))                         # (nb,)
    shift = fam.alpha_coeff * alphas[:, None]             # (na, nb) broadcast
    lam = lam0[None, :] + shift
    diagmax = np.abs(diag0[None, :, :] + shift[:, :, None]).max(axis=2)
    scale = np.maximum(1.0, np.maximum(offmax[None, :], diagmax))
    return lam >= -tol * scale


def grid_min_eigenvalues(name: str, alphas, betas, n: int = 3,
                         workers: int | None = None) -> np.ndarray:
    """Min eigenvalue of one matrix family on an alpha x beta grid."""
    fams = _grid_builders(n)
    if name not in fams:
        raise ValueError(f"unknown grid family {name!r} for n={n}")
    fam = fams[name]
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    if workers is None:
        workers = thread_count()
    mats = fam.base[None, :, :] + betas[:, None, None] * fam.beta_part[None, :, :]
    eigs = _batched_eigvalsh(mats, workers)
    return eigs[None, :, 0] + fam.alpha_coeff * alphas[:, None]
