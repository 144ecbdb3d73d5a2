"""Closed-form (alpha, beta) region predicates for the n = 3 map family.

Every region of interest is bounded below by a curve alpha = b(beta); the
predicates reduce to comparisons against those curves.  Finite interval
endpoints written with a closed bracket are inside the region, half-open
upper ends are outside.  Only 1-positivity has a closed form for general
n >= 3; everything else is n = 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .maps import MapParams

# beta value where the complete-positivity condition changes branch
CP_BRANCH_BETA = -0.2


class ConsistencyError(RuntimeError):
    """Two redundant computations of the same predicate disagreed."""


@dataclass(frozen=True)
class CubicRootResult:
    """Real roots of the 2-positivity threshold cubic at one beta.

    ``all_real_roots`` is ascending and has length 3, or length 1 when the
    discriminant reveals a complex pair; ``s_beta`` is the smallest real
    root and ``residual`` the cubic's absolute value there.
    """

    s_beta: float
    all_real_roots: tuple[float, ...]
    residual: float


@dataclass(frozen=True)
class Classification:
    """Region membership flags for one (alpha, beta) point.

    Fields other than ``positive`` are None when the closed forms do not
    apply (n > 3).
    """

    positive: bool
    two_positive: bool | None = None
    completely_positive: bool | None = None
    completely_copositive: bool | None = None
    positive_not_cp: bool | None = None
    two_positive_not_cp: bool | None = None
    decomposable_sufficient: bool | None = None
    decomposable_and_two_positive: bool | None = None


@dataclass(frozen=True)
class Boundaries:
    """Effective lower boundary curves evaluated at one beta (n = 3)."""

    beta: float
    positive: float
    two_positive: float
    cp: float
    decomposable: float


def positivity_boundary(beta: float, n: int = 3) -> float:
    """Smallest alpha for which the map is positive at this beta."""
    if n < 3:
        raise ValueError(f"positivity boundary requires n >= 3, got {n}")
    if beta >= 0:
        return 0.0
    disc = (n * beta) ** 2 - 4.0 * (n - 2) * beta + 4.0
    return 0.5 * (-(2.0 + n * beta) + math.sqrt(disc))


def _cp_curve(beta: float) -> float:
    return 0.5 * (-(3.0 + 3.0 * beta) + math.sqrt(9.0 * beta * beta - 10.0 * beta + 17.0))


def cp_boundary(beta: float) -> float:
    """Smallest alpha for which the map is completely positive (n = 3)."""
    g = _cp_curve(beta)
    if beta <= CP_BRANCH_BETA:
        return g
    return max(g, 1.0)


def decomposability_boundary(beta: float) -> float:
    """Smallest alpha passing the sufficient decomposability test (n = 3)."""
    if beta >= 0:
        return 0.0
    return 0.5 * (-(6.0 + 3.0 * beta) + math.sqrt(9.0 * beta * beta - 28.0 * beta + 36.0))


def cubic_coefficients(beta: float) -> tuple[float, float, float]:
    """Coefficients (b2, b1, b0) of the monic threshold cubic at this beta."""
    return (-2.0 - 3.0 * beta, -2.0 + 4.0 * beta, 2.0 * beta)


def _cubic(x: float, b2: float, b1: float, b0: float) -> float:
    return ((x + b2) * x + b1) * x + b0


def _cubic_deriv(x: float, b2: float, b1: float) -> float:
    return (3.0 * x + 2.0 * b2) * x + b1


def _polish(x: float, b2: float, b1: float, b0: float) -> float:
    # Newton refinement; trig/Cardano seeds are already near machine accuracy
    for _ in range(40):
        f = _cubic(x, b2, b1, b0)
        if f == 0.0:
            break
        d = _cubic_deriv(x, b2, b1)
        if d == 0.0:
            break
        step = f / d
        xn = x - step
        if not math.isfinite(xn) or xn == x:
            break
        if abs(_cubic(xn, b2, b1, b0)) >= abs(f):
            break
        x = xn
    return x


def real_cubic_roots(b2: float, b1: float, b0: float) -> tuple[float, ...]:
    """Ascending real roots of x^3 + b2 x^2 + b1 x + b0, Newton-polished.

    Uses the trigonometric form when the discriminant says three real roots
    and the stable single-root Cardano form otherwise, so the returned tuple
    has length 3 or 1.
    """
    p = b1 - b2 * b2 / 3.0
    q = 2.0 * b2 ** 3 / 27.0 - b2 * b1 / 3.0 + b0
    shift = b2 / 3.0
    disc = -4.0 * p ** 3 - 27.0 * q * q
    if disc >= 0.0 and p < 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = min(1.0, max(-1.0, 3.0 * q / (p * m)))
        theta = math.acos(arg) / 3.0
        roots = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]
    elif disc >= 0.0:
        # p >= 0 with nonnegative discriminant forces p = q = 0: triple root
        roots = [-shift] * 3
    else:
        s = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
        a3 = -q / 2.0 - math.copysign(s, q)
        a = math.copysign(abs(a3) ** (1.0 / 3.0), a3) if a3 != 0.0 else 0.0
        b = -p / (3.0 * a) if a != 0.0 else 0.0
        roots = [a + b - shift]
    return tuple(sorted(_polish(r, b2, b1, b0) for r in roots))


def smallest_cubic_root(beta: float) -> CubicRootResult:
    """Real roots of the threshold cubic at this beta, smallest first.

    A complex pair (never observed for this coefficient family, but detected
    at runtime via the discriminant) is flagged by ``all_real_roots`` having
    length 1.
    """
    b2, b1, b0 = cubic_coefficients(beta)
    roots = real_cubic_roots(b2, b1, b0)
    s_beta = roots[0]
    return CubicRootResult(s_beta, roots, abs(_cubic(s_beta, b2, b1, b0)))


def two_positivity_boundary(beta: float) -> float:
    """Smallest alpha for which the map is 2-positive (n = 3)."""
    return max(1.0, -smallest_cubic_root(beta).s_beta)


def boundaries_at(beta: float) -> Boundaries:
    """All effective boundary curves at one beta, computed once."""
    return Boundaries(
        beta=beta,
        positive=positivity_boundary(beta, 3),
        two_positive=two_positivity_boundary(beta),
        cp=cp_boundary(beta),
        decomposable=decomposability_boundary(beta),
    )


def _require_n3(p: MapParams, what: str) -> None:
    if p.n != 3:
        raise ValueError(f"{what} has a closed form for n = 3 only, got n={p.n}")


def is_positive(p: MapParams) -> bool:
    return p.alpha >= positivity_boundary(p.beta, p.n)


def is_completely_positive(p: MapParams) -> bool:
    _require_n3(p, "complete positivity")
    return p.alpha >= cp_boundary(p.beta)


def is_completely_copositive(p: MapParams) -> bool:
    # coincides with complete positivity for this family
    _require_n3(p, "complete copositivity")
    return p.alpha >= cp_boundary(p.beta)


def is_two_positive(p: MapParams) -> bool:
    _require_n3(p, "2-positivity")
    return p.alpha >= two_positivity_boundary(p.beta)


def is_positive_not_cp(p: MapParams) -> bool:
    _require_n3(p, "positive-not-CP")
    return bool(classify(p).positive_not_cp)


def is_two_positive_not_cp(p: MapParams) -> bool:
    _require_n3(p, "2-positive-not-CP")
    return bool(classify(p).two_positive_not_cp)


def is_decomposable_sufficient(p: MapParams) -> bool:
    """One-sided test: True guarantees decomposability, False proves nothing."""
    _require_n3(p, "the decomposability test")
    return p.alpha >= decomposability_boundary(p.beta)


def is_decomposable_and_two_positive(p: MapParams) -> bool:
    _require_n3(p, "decomposable-and-2-positive")
    return bool(classify(p).decomposable_and_two_positive)


def classify_at(alpha: float, b: Boundaries) -> Classification:
    """Full flag bundle at one point, with redundant routes cross-checked.

    The banded predicates are evaluated both from their published interval
    descriptions and as conjunctions of the simpler flags; any disagreement
    raises ConsistencyError since it can only mean a coding bug.
    """
    beta = b.beta
    positive = alpha >= b.positive
    two_positive = alpha >= b.two_positive
    cp = alpha >= b.cp
    ccp = cp

    pos_not_cp = positive and not cp
    if beta <= CP_BRANCH_BETA:
        band = b.positive <= alpha < _cp_curve(beta)
    elif beta <= 0.0:
        band = b.positive <= alpha < 1.0
    else:
        band = 0.0 <= alpha < 1.0
    if band != pos_not_cp:
        raise ConsistencyError(
            f"positive-not-CP disagreement at alpha={alpha!r}, beta={beta!r}"
        )

    two_pos_not_cp = two_positive and not cp
    band2 = beta <= CP_BRANCH_BETA and (
        max(b.positive, b.two_positive) <= alpha < b.cp
    )
    if band2 != two_pos_not_cp:
        raise ConsistencyError(
            f"2-positive-not-CP disagreement at alpha={alpha!r}, beta={beta!r}"
        )

    decomp = alpha >= b.decomposable
    decomp_two_pos = decomp and two_positive and not cp
    band3 = beta <= CP_BRANCH_BETA and (
        max(b.decomposable, b.two_positive) <= alpha < b.cp
    )
    if band3 != decomp_two_pos:
        raise ConsistencyError(
            f"decomposable-and-2-positive disagreement at alpha={alpha!r}, beta={beta!r}"
        )

    if cp and not two_positive or two_positive and not positive or cp and not decomp:
        raise ConsistencyError(
            f"implication chain broken at alpha={alpha!r}, beta={beta!r}"
        )

    return Classification(
        positive=positive,
        two_positive=two_positive,
        completely_positive=cp,
        completely_copositive=ccp,
        positive_not_cp=pos_not_cp,
        two_positive_not_cp=two_pos_not_cp,
        decomposable_sufficient=decomp,
        decomposable_and_two_positive=decomp_two_pos,
    )


def classify(p: MapParams) -> Classification:
    """Classify one parameter point; only positivity is filled for n > 3."""
    if p.n != 3:
        return Classification(positive=is_positive(p))
    return classify_at(p.alpha, boundaries_at(p.beta))
