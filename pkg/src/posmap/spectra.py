"""Closed-form eigenvalue multisets for the family's structured matrices.

Four matrices built from the maps have fully explicit spectra: the image of
the corner matrix unit e_11 (any n >= 3), the Choi matrix of the main map,
the 2 x 2 block matrix of images of matrix units, and the Choi matrix of the
plain-factor half map (the last three for n = 3).  Each function returns the
multiset as (eigenvalue, multiplicity) pairs; ``verify_spectrum`` compares a
multiset against numerically computed eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg, maps
from .maps import MapKind, MapParams
from .regions import smallest_cubic_root

PHI_E11 = "phi_e11"
CHOI_PHI = "choi_phi"
BLOCK2 = "block2"
CHOI_PHI2 = "choi_phi2"
SOURCES = (PHI_E11, CHOI_PHI, BLOCK2, CHOI_PHI2)

# default relative tolerance for closed-form vs numeric agreement
DEFAULT_MATCH_TOL = 1e-8


@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Eigenvalue multiset of one structured matrix."""

    source: str
    entries: tuple[tuple[float, int], ...]

    @property
    def dimension(self) -> int:
        return sum(mult for _, mult in self.entries)

    def expand(self) -> np.ndarray:
        """The multiset as a sorted flat array."""
        vals = np.repeat([v for v, _ in self.entries], [m for _, m in self.entries])
        return np.sort(vals)

    def min_eigenvalue(self) -> float:
        return min(v for v, _ in self.entries)


@dataclass(frozen=True)
class SpectrumReport:
    """Outcome of pairing a closed-form multiset with numeric eigenvalues."""

    max_abs_deviation: float
    matched: bool
    pairing: tuple[tuple[float, float], ...]


def spectrum_phi_e11(p: MapParams) -> ClosedFormSpectrum:
    """Spectrum of the image of e_11 under the main map; dimension n^2."""
    n, alpha, beta = p.n, p.alpha, p.beta
    root = math.sqrt((n * beta) ** 2 - 4.0 * (n - 2) * beta + 4.0)
    return ClosedFormSpectrum(PHI_E11, (
        (alpha, n * (n - 2)),
        (1.0 + alpha, 2 * (n - 1)),
        (alpha + (2.0 + n * beta - root) / 2.0, 1),
        (alpha + (2.0 + n * beta + root) / 2.0, 1),
    ))


def spectrum_choi(alpha: float, beta: float) -> ClosedFormSpectrum:
    """Spectrum of the main map's Choi matrix at n = 3; dimension 27.

    The flip part contributes alpha - 1 on six antisymmetric directions and
    alpha + 1 on fifteen symmetric ones; the entangled projectors of the two
    remaining terms couple on three paired subspaces, giving
    alpha + (3 + 3*beta -/+ s)/2 with s = sqrt(9 b^2 - 10 b + 17).
    Multiplicities pinned by trace and trace-of-square identities.
    """
    s = math.sqrt(9.0 * beta * beta - 10.0 * beta + 17.0)
    return ClosedFormSpectrum(CHOI_PHI, (
        (alpha - 1.0, 6),
        (alpha + 1.0, 15),
        (alpha + (3.0 + 3.0 * beta - s) / 2.0, 3),
        (alpha + (3.0 + 3.0 * beta + s) / 2.0, 3),
    ))


def spectrum_block2(alpha: float, beta: float) -> ClosedFormSpectrum:
    """Spectrum of the 2 x 2 block matrix of e_ij images at n = 3; dimension 18.

    The paired eigenvalues are alpha plus each real root of the threshold
    cubic; raises if the cubic solver reports a complex pair.
    """
    cubic = smallest_cubic_root(beta)
    if len(cubic.all_real_roots) != 3:
        raise ValueError(
            f"threshold cubic has a complex root pair at beta={beta!r}; "
            "no closed-form block spectrum"
        )
    r1, r2, r3 = cubic.all_real_roots
    return ClosedFormSpectrum(BLOCK2, (
        (2.0 + alpha, 1),
        (alpha - 1.0, 1),
        (1.0 + alpha, 7),
        (alpha, 3),
        (alpha + r1, 2),
        (alpha + r2, 2),
        (alpha + r3, 2),
    ))


def spectrum_choi_phi2(alpha: float, beta: float) -> ClosedFormSpectrum:
    """Spectrum of the plain-factor half map's Choi matrix at n = 3; dimension 27.

    The entangled projector of the half map and the beta-scaled projector of
    the trace term overlap pairwise in three 2-dimensional subspaces, giving
    eigenvalues alpha/2 + (6 + 3*beta -/+ t)/4 with t = sqrt(9 b^2 - 28 b + 36)
    on those, and alpha/2 on the 21-dimensional rest.
    """
    t = math.sqrt(9.0 * beta * beta - 28.0 * beta + 36.0)
    half = alpha / 2.0
    return ClosedFormSpectrum(CHOI_PHI2, (
        (half, 21),
        (half + (6.0 + 3.0 * beta - t) / 4.0, 3),
        (half + (6.0 + 3.0 * beta + t) / 4.0, 3),
    ))


def closed_form(source: str, p: MapParams) -> ClosedFormSpectrum:
    """Dispatch on the source name; all sources except phi_e11 need n = 3."""
    if source == PHI_E11:
        return spectrum_phi_e11(p)
    if p.n != 3:
        raise ValueError(f"{source} has a closed form for n = 3 only, got n={p.n}")
    if source == CHOI_PHI:
        return spectrum_choi(p.alpha, p.beta)
    if source == BLOCK2:
        return spectrum_block2(p.alpha, p.beta)
    if source == CHOI_PHI2:
        return spectrum_choi_phi2(p.alpha, p.beta)
    raise ValueError(f"unknown spectrum source {source!r}")


def build_matrix(source: str, p: MapParams) -> np.ndarray:
    """The actual matrix whose spectrum the closed form describes."""
    if source == PHI_E11:
        return maps.apply_map(MapKind.PHI, p, linalg.matrix_unit(p.n, 1, 1))
    if source == CHOI_PHI:
        return maps.choi_matrix(MapKind.PHI, p)
    if source == BLOCK2:
        return maps.block_matrix(p, 2)
    if source == CHOI_PHI2:
        return maps.choi_matrix(MapKind.PHI2, p)
    raise ValueError(f"unknown spectrum source {source!r}")


def verify_spectrum(closed: ClosedFormSpectrum, numeric, tol: float | None = None) -> SpectrumReport:
    """Pair a closed-form multiset with numeric eigenvalues by sorted order.

    ``numeric`` may be an EigenResult or a flat array of eigenvalues.  The
    threshold is tol * max(1, largest |closed eigenvalue|), with tol
    defaulting to 1e-8.  Count mismatch is an error, never a report.
    """
    if isinstance(numeric, linalg.EigenResult):
        numeric = numeric.eigenvalues
    numeric = np.sort(np.asarray(numeric, dtype=float))
    expected = closed.expand()
    if numeric.shape != expected.shape:
        raise ValueError(
            f"eigenvalue count mismatch: closed form has {expected.size}, "
            f"numeric has {numeric.size}"
        )
    deviation = float(np.abs(expected - numeric).max())
    scale = max(1.0, float(np.abs(expected).max()))
    if tol is None:
        tol = DEFAULT_MATCH_TOL
    return SpectrumReport(
        max_abs_deviation=deviation,
        matched=deviation <= tol * scale,
        pairing=tuple(zip(expected.tolist(), numeric.tolist())),
    )


def verify_point(source: str, p: MapParams, tol: float | None = None) -> SpectrumReport:
    """Build the matrix, eigensolve it, and compare with the closed form."""
    spectrum = closed_form(source, p)
    result = linalg.hermitian_eigenvalues(build_matrix(source, p))
    return verify_spectrum(spectrum, result, tol)
