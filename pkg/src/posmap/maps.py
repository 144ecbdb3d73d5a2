"""The two-parameter family of linear maps M_n -> M_n (x) M_n.

The main map sends an n x n matrix A to

    A^t (x) I_n  +  I_n (x) A  +  tr(A) * (alpha * I + beta * B),

where B is the unnormalized maximally-entangled projector on the output
space.  For n = 3 the map splits into two halves (``PHI1`` carrying the
transposed factor, ``PHI2`` the plain factor, each with half of the trace
term); composing either map with the transpose is exposed as its own kind
because the copositivity checks need those Choi matrices.

Tensor ordering convention: Choi and block matrices live in
M_k (x) (M_n (x) M_n) with the map *input* factor outermost, i.e. the
(i, j) outer block of the Choi matrix is the image of e_ij.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import as_matrix, bell_projector, kron, matrix_unit, require_hermitian


@dataclass(frozen=True)
class MapParams:
    """Parameters (alpha, beta, n) selecting one member of the family."""

    alpha: float
    beta: float
    n: int = 3

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"the map family requires n >= 3, got n={self.n}")


class MapKind(str, Enum):
    """Which map of the family (or of its additive split) to evaluate."""

    PHI = "phi"
    PHI1 = "phi1"
    PHI2 = "phi2"
    PHI_TRANSPOSE = "phi-t"
    PHI1_TRANSPOSE = "phi1-t"


_SPLIT_KINDS = frozenset({MapKind.PHI1, MapKind.PHI2, MapKind.PHI1_TRANSPOSE})


def _check_kind(kind: MapKind, p: MapParams) -> None:
    if kind in _SPLIT_KINDS and p.n != 3:
        raise ValueError(f"{kind.value} is defined for n = 3 only, got n={p.n}")


def trace_block(p: MapParams) -> np.ndarray:
    """The trace-coefficient matrix alpha * I_{n^2} + beta * B_{n^2}."""
    d = p.n * p.n
    return p.alpha * np.eye(d, dtype=complex) + p.beta * bell_projector(p.n)


def apply_map(kind, p: MapParams, a) -> np.ndarray:
    """Evaluate the selected map on an n x n matrix, returning n^2 x n^2."""
    kind = MapKind(kind)
    _check_kind(kind, p)
    n = p.n
    a = as_matrix(a)
    if a.shape != (n, n):
        raise ValueError(f"input must be {n} x {n}, got {a.shape}")
    if kind is MapKind.PHI_TRANSPOSE:
        return apply_map(MapKind.PHI, p, a.T)
    if kind is MapKind.PHI1_TRANSPOSE:
        return apply_map(MapKind.PHI1, p, a.T)
    eye = np.eye(n, dtype=complex)
    t = np.trace(a)
    if kind is MapKind.PHI:
        return kron(a.T, eye) + kron(eye, a) + t * trace_block(p)
    if kind is MapKind.PHI1:
        return kron(a.T, eye) + (0.5 * t) * trace_block(p)
    return kron(eye, a) + (0.5 * t) * trace_block(p)


def choi_matrix(kind, p: MapParams) -> np.ndarray:
    """Choi matrix sum_ij e_ij (x) map(e_ij); Hermitian of dimension n^3."""
    kind = MapKind(kind)
    _check_kind(kind, p)
    n = p.n
    d = n * n
    out = np.zeros((n * d, n * d), dtype=complex)
    for i in range(n):
        for j in range(n):
            blk = apply_map(kind, p, matrix_unit(n, i + 1, j + 1))
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = blk
    return require_hermitian(out)


def block_matrix(p: MapParams, k: int) -> np.ndarray:
    """The k x k block matrix [map(e_ij)] for the main map; dimension k * n^2.

    At k = n this coincides with the Choi matrix.
    """
    if not 2 <= k <= p.n:
        raise ValueError(f"block size must satisfy 2 <= k <= n = {p.n}, got {k}")
    n = p.n
    d = n * n
    out = np.zeros((k * d, k * d), dtype=complex)
    for i in range(k):
        for j in range(k):
            blk = apply_map(MapKind.PHI, p, matrix_unit(n, i + 1, j + 1))
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = blk
    return require_hermitian(out)


def apply_extended_map(p: MapParams, k: int, m) -> np.ndarray:
    """Apply (identity on M_k) (x) map to a (k*n)-square matrix, blockwise.

    The input is read as a k x k grid of n x n blocks; each block passes
    through the main map while the outer structure stays put.  The result is
    k*n^2-square.
    """
    if k < 1:
        raise ValueError(f"outer dimension must be >= 1, got {k}")
    m = as_matrix(m)
    n = p.n
    if m.shape != (k * n, k * n):
        raise ValueError(f"input must be {k * n} x {k * n}, got {m.shape}")
    d = n * n
    out = np.zeros((k * d, k * d), dtype=complex)
    for i in range(k):
        for j in range(k):
            blk = apply_map(MapKind.PHI, p, m[i * n:(i + 1) * n, j * n:(j + 1) * n])
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = blk
    return out
