"""Bracketed root finding and bounded unimodal maximization.

Bisection and golden-section search: every target function in this package is
cheap and comes with a bracket, so robustness and determinism beat speed.
"""

import math
from dataclasses import dataclass
from typing import Callable

from .errors import BracketError, ConvergenceError, DomainError

# Hard cap for bracket-discovery doubling.
_BRACKET_CAP = 2.0 ** 60

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SolverConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")

    def width_tol(self, x: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(x))


DEFAULT_CONFIG = SolverConfig()


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> float:
    """Bisection root of a continuous f with f(lo) and f(hi) of opposite sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketError(f"f({lo})={flo} and f({hi})={fhi} do not bracket a root")
    for _ in range(cfg.max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < cfg.width_tol(mid):
            return mid
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    raise ConvergenceError(f"bisection did not converge in {cfg.max_iter} iterations")


def expand_bracket(
    f: Callable[[float], float], start: float
) -> tuple[float, float]:
    """Grow [start, hi] by doubling hi until f changes sign.

    Used for best-response and drive-out equations that have a single positive
    root but no a-priori upper bound.
    """
    fstart = f(start)
    if fstart == 0.0:
        return start, start
    hi = max(start, 1.0)
    while hi <= _BRACKET_CAP:
        hi *= 2.0
        if f(hi) * fstart <= 0:
            return start, hi
    raise BracketError(f"no sign change found up to {_BRACKET_CAP}")


def maximize_unimodal(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> tuple[float, float]:
    """Golden-section maximum of a unimodal f on [lo, hi].

    Returns (argmax, max). Deterministic: fixed-ratio interval shrink.
    """
    if hi < lo:
        raise DomainError(f"empty interval [{lo}, {hi}]")
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(cfg.max_iter):
        if b - a < cfg.width_tol(0.5 * (a + b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    else:
        raise ConvergenceError(
            f"golden-section search did not converge in {cfg.max_iter} iterations"
        )
    # Include the endpoints so boundary maxima are exact.
    best_x, best_f = a, f(a)
    for x, fx in ((b, f(b)), (c, fc), (d, fd)):
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f
