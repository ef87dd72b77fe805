"""Scalar numerical kernels.

Bracketed root finding, composite Simpson quadrature, central differences
and golden-section minimization. Everything is a pure function of its
arguments; the rest of the package uses these routines as independent
cross-checks against closed forms, so they deliberately avoid shortcuts
through each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    DomainViolation,
    InvalidParams,
    NoBracket,
    NoConvergence,
    NonFiniteSample,
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Tolerance:
    """Stopping control for the iterative kernels."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not (math.isfinite(self.abs_tol) and self.abs_tol > 0.0):
            raise InvalidParams("abs_tol must be finite and positive")
        if not (math.isfinite(self.rel_tol) and self.rel_tol > 0.0):
            raise InvalidParams("rel_tol must be finite and positive")
        if self.max_iter < 1:
            raise InvalidParams("max_iter must be at least 1")


DEFAULT_TOL = Tolerance()


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
    df: Callable[[float], float] | None = None,
) -> float:
    """Root of ``f`` on ``[lo, hi]`` by bisection, Newton-accelerated.

    The bracket must carry a sign change. When ``df`` is supplied, Newton
    steps are taken whenever they stay strictly inside the current
    bracket; otherwise the step falls back to the midpoint, so the
    bisection convergence guarantee is never lost.
    """
    if hi <= lo:
        raise NoBracket(f"empty bracket [{lo}, {hi}]")
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise NoBracket(f"f({lo})={flo} and f({hi})={fhi} have the same sign")

    x = 0.5 * (lo + hi)
    for _ in range(tol.max_iter):
        fx = f(x)
        if abs(fx) <= tol.abs_tol:
            return x
        if math.copysign(1.0, fx) == math.copysign(1.0, flo):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        if (hi - lo) <= tol.rel_tol * abs(x):
            return x
        nxt = None
        if df is not None:
            slope = df(x)
            if slope != 0.0 and math.isfinite(slope):
                cand = x - fx / slope
                if lo < cand < hi:
                    nxt = cand
        x = 0.5 * (lo + hi) if nxt is None else nxt
    raise NoConvergence(f"no root to tolerance after {tol.max_iter} iterations")


def integrate(f: Callable[[float], float], a: float, b: float, n: int) -> float:
    """Composite Simpson rule with ``n`` panels (``n`` even)."""
    if n <= 0 or n % 2 != 0:
        raise InvalidParams(f"panel count must be even and positive, got {n}")
    h = (b - a) / n
    total = 0.0
    for k in range(n + 1):
        xk = a + k * h if k < n else b
        fk = f(xk)
        if not math.isfinite(fk):
            raise NonFiniteSample(f"integrand returned {fk} at {xk}")
        if k == 0 or k == n:
            total += fk
        elif k % 2 == 1:
            total += 4.0 * fk
        else:
            total += 2.0 * fk
    return total * h / 3.0


def finite_diff(
    f: Callable[[float], float], x: float, h: float | None = None
) -> float:
    """Central difference derivative estimate at ``x``.

    Falls back to a second-order one-sided stencil when one side of the
    step leaves the domain of ``f``.
    """
    if h is None:
        h = max(1e-6, 1e-6 * abs(x))
    try:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    except DomainViolation:
        pass
    try:
        return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h)
    except DomainViolation:
        return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h)


def solve_scalar(
    f: Callable[[float], float],
    seed: float,
    lo: float = -math.inf,
    hi: float = math.inf,
    tol: Tolerance = DEFAULT_TOL,
    df: Callable[[float], float] | None = None,
    max_steps: int = 60,
) -> float:
    """Root of ``f`` near ``seed``, growing a bracket inside ``(lo, hi)``.

    Probes outward from ``seed`` in both directions, doubling the step
    toward an infinite bound and halving the remaining distance toward a
    finite one, until the sign of ``f`` flips; then hands the bracket to
    :func:`find_root`.
    """
    fseed = f(seed)
    if fseed == 0.0:
        return seed
    side = math.copysign(1.0, fseed)
    below, above = seed, seed
    step = max(1.0, 1e-3 * abs(seed))
    up_alive = down_alive = True
    for _ in range(max_steps):
        if up_alive:
            nxt = 0.5 * (above + hi) if math.isfinite(hi) else above + step
            if nxt > above:
                try:
                    fn = f(nxt)
                except OverflowError:
                    up_alive = False
                else:
                    if math.isnan(fn):
                        up_alive = False
                    elif math.copysign(1.0, fn) != side:
                        return find_root(f, above, nxt, tol, df)
                    else:
                        above = nxt
            else:
                up_alive = False
        if down_alive:
            nxt = 0.5 * (below + lo) if math.isfinite(lo) else below - step
            if nxt < below:
                try:
                    fn = f(nxt)
                except OverflowError:
                    down_alive = False
                else:
                    if math.isnan(fn):
                        down_alive = False
                    elif math.copysign(1.0, fn) != side:
                        return find_root(f, nxt, below, tol, df)
                    else:
                        below = nxt
            else:
                down_alive = False
        if not (up_alive or down_alive):
            break
        step *= 2.0
    raise NoBracket(
        f"no sign change found around {seed} within ({lo}, {hi})"
    )


def minimize_1d(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Golden-section argmin of a unimodal ``f`` on ``[lo, hi]``."""
    if hi < lo:
        raise InvalidParams(f"empty interval [{lo}, {hi}]")
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(tol.max_iter):
        mid = 0.5 * (a + b)
        if (b - a) <= tol.abs_tol + tol.rel_tol * abs(mid):
            return mid
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    raise NoConvergence(
        f"bracket width {b - a} above tolerance after {tol.max_iter} iterations"
    )
