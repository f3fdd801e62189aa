"""Deterministic one-dimensional solvers.

Both prediction engines reduce to nested scalar problems: monotone
first-order conditions (bisection), unimodal sections of convex objectives
(golden section), and bracketing the maximizer of a concave function on a
positive half-line (geometric expansion).  Everything here is deterministic:
identical inputs produce bit-identical outputs.
"""

import math
from dataclasses import dataclass
from typing import Callable, Tuple

from .errors import MaxIterError, NoSignChangeError

# golden-section shrink factor (1/phi)
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Bracket:
    """A finite interval [lo, hi] with lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"bracket endpoints must be finite, got {self}")
        if not self.lo < self.hi:
            raise ValueError(f"bracket requires lo < hi, got {self}")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class SolverConfig:
    """Absolute tolerances and iteration budget for the scalar solvers."""

    tol_x: float = 1e-10
    tol_f: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not (self.tol_x > 0.0 and self.tol_f > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


DEFAULT_CONFIG = SolverConfig()


def bisect_root(
    f: Callable[[float], float],
    bracket: Bracket,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> float:
    """Root of a monotone ``f`` inside ``bracket`` by plain bisection.

    Returns ``x`` with ``|f(x)| <= tol_f`` or bracket width ``<= tol_x``.
    Never evaluates ``f`` outside the initial bracket.  Raises
    ``NoSignChangeError`` if ``f`` has the same sign at both endpoints.
    """
    lo, hi = bracket.lo, bracket.hi
    flo = f(lo)
    fhi = f(hi)
    if abs(flo) <= cfg.tol_f:
        return lo
    if abs(fhi) <= cfg.tol_f:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise NoSignChangeError(
            f"f({lo}) = {flo} and f({hi}) = {fhi} have the same sign"
        )
    for _ in range(cfg.max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if abs(fmid) <= cfg.tol_f or hi - lo <= cfg.tol_x:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    raise MaxIterError(f"bisection did not converge in {cfg.max_iter} iterations")


def golden_min(
    f: Callable[[float], float],
    bracket: Bracket,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> Tuple[float, float]:
    """Minimize a unimodal ``f`` on ``bracket`` by golden-section search.

    Returns ``(argmin, f(argmin))``.  On a plateau the midpoint of the final
    bracket is returned.  Unimodality is the caller's responsibility.
    """
    lo, hi = bracket.lo, bracket.hi
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(cfg.max_iter):
        if hi - lo <= cfg.tol_x:
            xm = 0.5 * (lo + hi)
            return xm, f(xm)
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    raise MaxIterError(f"golden section did not converge in {cfg.max_iter} iterations")


@dataclass(frozen=True)
class ExpandedBracket:
    """Result of a bracket expansion; ``at_cap`` flags a boundary maximum."""

    bracket: Bracket
    at_cap: bool


def expand_bracket_for_max(
    f: Callable[[float], float],
    seed: Bracket,
    growth: float,
    cap: float,
) -> ExpandedBracket:
    """Geometrically grow ``seed`` until it brackets a maximizer of concave ``f``.

    The domain is the positive half-line capped at ``cap``.  Returns a bracket
    whose interior contains a stationary point of ``f``, or one whose upper end
    equals ``cap`` with ``at_cap=True`` when ``f`` is still increasing there
    (boundary maximum).  Requires ``growth > 1`` and ``0 < seed.lo < seed.hi
    <= cap``.
    """
    if not growth > 1.0:
        raise ValueError(f"growth must exceed 1, got {growth!r}")
    if not (0.0 < seed.lo and seed.hi <= cap):
        raise ValueError(f"seed {seed} must lie within (0, cap={cap!r}]")
    lo, hi = seed.lo, seed.hi
    mid = math.sqrt(lo * hi)
    flo, fmid, fhi = f(lo), f(mid), f(hi)
    # floor guards the (out-of-contract) case of f decreasing on all of (0, cap]
    floor = 1e-300
    for _ in range(20_000):
        if fmid >= flo and fmid >= fhi:
            return ExpandedBracket(Bracket(lo, hi), at_cap=False)
        if fhi > fmid:
            # still climbing to the right
            if hi >= cap:
                return ExpandedBracket(Bracket(lo, cap), at_cap=True)
            lo, flo = mid, fmid
            mid, fmid = hi, fhi
            hi = min(hi * growth, cap)
            fhi = f(hi)
        else:
            # still climbing to the left
            if lo <= floor:
                return ExpandedBracket(Bracket(lo, hi), at_cap=False)
            hi, fhi = mid, fmid
            mid, fmid = lo, flo
            lo = max(lo / growth, floor)
            flo = f(lo)
    raise MaxIterError("bracket expansion exhausted its step budget")
