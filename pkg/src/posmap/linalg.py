"""Dense complex matrix primitives and a self-contained Hermitian eigensolver.

Everything operates on plain ``numpy.ndarray`` values with complex entries.
All matrices in this package are tiny (dimension <= ~100), so the eigensolver
is a cyclic Jacobi iteration: deterministic, dependency-free and accurate at
this scale.  Values are never mutated in place by the public functions; every
operation returns fresh arrays and is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# absolute entrywise tolerance accepted when validating Hermitian input
HERMITIAN_ATOL = 1e-12
# default relative off-diagonal target for hermitian_eigenvalues
DEFAULT_EIG_TOL = 1e-11
# default relative threshold for is_psd classification decisions
DEFAULT_PSD_TOL = 1e-9
# hard cap on full Jacobi sweeps
MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    """Jacobi sweep cap reached before the off-diagonal tolerance."""

    def __init__(self, residual: float, sweeps: int):
        super().__init__(
            f"eigensolver did not converge after {sweeps} sweeps "
            f"(off-diagonal residual {residual:.3e})"
        )
        self.residual = residual
        self.sweeps = sweeps


@dataclass(frozen=True)
class EigenResult:
    """Spectrum of a Hermitian matrix.

    eigenvalues are real and sorted ascending; ``iterations`` counts full
    Jacobi sweeps; ``off_diagonal_residual`` is the largest off-diagonal
    magnitude left when the iteration stopped.
    """

    eigenvalues: np.ndarray
    iterations: int
    off_diagonal_residual: float


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting anything else."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got array of shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"matrix dimensions must be >= 1, got {a.shape}")
    return a


def require_hermitian(m, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate that ``m`` equals its conjugate transpose entrywise.

    The check is absolute with tolerance ``atol``; construction of any
    Hermitian value in this package funnels through here.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"Hermitian matrix must be square, got {a.shape}")
    dev = np.abs(a - a.conj().T).max()
    if dev > atol:
        raise ValueError(f"matrix is not Hermitian (max |A - A*| = {dev:.3e})")
    return a


def entry_scale(m) -> float:
    """max(1, largest absolute entry): the scale used by relative tolerances."""
    return max(1.0, float(np.abs(m).max()))


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry [i*rb+k, j*cb+l] = a[i,j] * b[k,l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def matrix_unit(d: int, i: int, j: int) -> np.ndarray:
    """The d x d matrix unit e_ij, with 1-based indices i, j."""
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError(f"matrix unit indices must lie in 1..{d}, got ({i}, {j})")
    e = np.zeros((d, d), dtype=complex)
    e[i - 1, j - 1] = 1.0
    return e


def bell_projector(n: int) -> np.ndarray:
    """Rank-one projector (scaled to trace n) onto the vector sum_i e_i (x) e_i.

    The result is the n^2 x n^2 matrix with ones at positions
    (i*n+i, j*n+j) and zeros elsewhere.
    """
    if n < 2:
        raise ValueError(f"bell_projector requires n >= 2, got {n}")
    b = np.zeros((n * n, n * n), dtype=complex)
    idx = np.arange(n) * n + np.arange(n)
    b[np.ix_(idx, idx)] = 1.0
    return b


def partial_transpose(m, dim_a: int, dim_b: int, subsystem: str = "second") -> np.ndarray:
    """Transpose one tensor factor of a (dim_a*dim_b)-square matrix.

    ``subsystem`` selects which factor ("first" or "second") gets transposed.
    Applying the same call twice returns the original matrix.
    """
    a = as_matrix(m)
    d = dim_a * dim_b
    if a.shape != (d, d):
        raise ValueError(
            f"matrix shape {a.shape} does not match dim_a*dim_b = {dim_a}*{dim_b}"
        )
    t = a.reshape(dim_a, dim_b, dim_a, dim_b)
    if subsystem == "first":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "second":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'first' or 'second', got {subsystem!r}")
    return t.reshape(d, d).copy()


def _max_offdiag(a: np.ndarray) -> float:
    return float(np.abs(a - np.diag(a.diagonal())).max())


def hermitian_eigenvalues(h, tol: float = DEFAULT_EIG_TOL) -> EigenResult:
    """All eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.

    ``tol`` is relative to the largest absolute entry.  Raises
    ConvergenceError if the off-diagonal mass has not dropped below the
    threshold after MAX_SWEEPS full sweeps.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    a = require_hermitian(h).copy()
    n = a.shape[0]
    if n == 1:
        return EigenResult(np.array([a[0, 0].real]), 0, 0.0)
    thresh = tol * entry_scale(a)
    # rotations on entries far below threshold would only churn rounding noise
    skip = 0.01 * thresh
    off = _max_offdiag(a)
    sweeps = 0
    while off > thresh:
        if sweeps >= MAX_SWEEPS:
            raise ConvergenceError(off, sweeps)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / r
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                pc = phase.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - (s * pc) * colq
                a[:, q] = s * colp + (c * pc) * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - (s * phase) * rowq
                a[q, :] = s * rowp + (c * phase) * rowq
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0
        off = _max_offdiag(a)
    return EigenResult(np.sort(a.diagonal().real.copy()), sweeps, off)


def is_psd(h, tol: float = DEFAULT_PSD_TOL) -> bool:
    """True iff the smallest eigenvalue is >= -tol * max(1, largest |entry|)."""
    if tol < 0:
        raise ValueError(f"tolerance must be >= 0, got {tol}")
    a = require_hermitian(h)
    res = hermitian_eigenvalues(a)
    return bool(res.eigenvalues[0] >= -tol * entry_scale(a))


def random_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-distributed d x d unitary, deterministic per seed.

    Complex Gaussian matrix followed by QR orthonormalization with the
    diagonal of R phase-fixed, which makes the distribution exactly Haar.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = r.diagonal().copy()
    diag = np.where(diag == 0, 1.0, diag)
    return q * (diag / np.abs(diag))


def random_pure_state(d: int, seed: int) -> np.ndarray:
    """Haar-uniform unit vector in C^d as a (d, 1) column, deterministic per seed."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    z /= np.linalg.norm(z)
    return z.reshape(d, 1)


# --- shared matrix text format -------------------------------------------
#
# First line "rows cols"; then one line per row with entries written as
# "re+imi" pairs ("%.16e" mantissas, 17 significant digits) separated by
# single spaces.

def format_matrix(m) -> str:
    a = as_matrix(m)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for row in a:
        lines.append(" ".join(f"{z.real:.16e}{z.imag:+.16e}i" for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        rows, cols = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad matrix header {lines[0]!r}") from exc
    if len(lines) != rows + 1:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    out = np.zeros((rows, cols), dtype=complex)
    for i, line in enumerate(lines[1:]):
        toks = line.split()
        if len(toks) != cols:
            raise ValueError(f"row {i} has {len(toks)} entries, expected {cols}")
        out[i] = [complex(tok[:-1] + "j") if tok.endswith("i") else complex(tok)
                  for tok in toks]
    return out


def save_matrix(m, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(m))


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix(fh.read())
