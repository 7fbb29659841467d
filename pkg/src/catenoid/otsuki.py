"""Minimal rotation hypersurfaces in the sphere via the support-function ODE.

The generating curve is described by its support function ``h(theta)``,
which solves

    n h (1 - h^2) h'' + h'^2 + (1 - h^2)(n h^2 - 1) = 0,   h(0) = a, h'(0) = 0

and oscillates between ``a0 = a`` and an upper root ``a1``. The first
integral ``h'^2 + h^2 + C(a) (1/h^2 - 1)^(1/n) = 1`` gives the period as a
quadrature with inverse square-root singularities at both turning points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from . import _quadrature
from .errors import ConvergenceError, DomainError

# a must stay this far below 1/sqrt(n): the two turning points merge there
DEGENERACY_GUARD = 1e-6
# lower end of the scan in find_closed; T(a) -> pi as a -> 0
SCAN_FLOOR = 1e-4
DEFAULT_GRID = 2000


@dataclass(frozen=True)
class SupportState:
    theta: float
    h: float
    dh: float


@dataclass(frozen=True)
class PeriodResult:
    a0: float
    a1: float
    T: float
    quadrature_error: float


class SupportTrajectory:
    """Samples of the support function on a theta grid.

    Behaves as a sequence of :class:`SupportState`; the underlying arrays are
    exposed as ``theta``, ``h`` and ``dh``. ``returns`` lists the theta values
    where ``h`` comes back to its minimum (``h' = 0`` crossed upwards).
    """

    def __init__(self, n, a, theta, h, dh, returns):
        self.n = n
        self.a = a
        self.theta = theta
        self.h = h
        self.dh = dh
        self.returns = returns

    def __len__(self):
        return len(self.theta)

    def __getitem__(self, i):
        return SupportState(float(self.theta[i]), float(self.h[i]), float(self.dh[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def first_integral(self) -> np.ndarray:
        """``h'^2 + h^2 + C(a) (1/h^2 - 1)^(1/n)``, identically 1 on exact solutions."""
        C = capital_C(self.n, self.a)
        return self.dh**2 + self.h**2 + C * (1.0 / self.h**2 - 1.0) ** (1.0 / self.n)

    def disk_coords(self) -> tuple[np.ndarray, np.ndarray]:
        return _disk(self.theta, self.h, self.dh)


def _check_n(n):
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n}")


def clifford_value(n: int) -> float:
    """The constant solution ``h = 1/sqrt(n)``."""
    return 1.0 / math.sqrt(n)


def capital_C(n: int, a: float) -> float:
    _check_n(n)
    if not 0.0 < a < 1.0:
        raise DomainError(f"a must lie in (0, 1), got {a}")
    return a ** (2.0 / n) * (1.0 - a * a) ** (1.0 - 1.0 / n)


def _log_gap(n, a0, d):
    """log of ``(1 - x^2) / (C (1/x^2 - 1)^(1/n))`` at ``x = a0 + d``.

    Vanishes exactly at ``d = 0``; the turning-point function
    ``1 - x^2 - C (1/x^2 - 1)^(1/n)`` is positive exactly where this is.
    """
    log_r = np.log1p(-d * (2.0 * a0 + d) / (1.0 - a0 * a0))
    return (1.0 - 1.0 / n) * log_r + (2.0 / n) * np.log1p(d / a0)


def upper_root_a1(n: int, a: float) -> float:
    """Upper turning point of the support function, in ``(1/sqrt(n), 1)``."""
    _check_n(n)
    lo = clifford_value(n)
    if not 0.0 < a < lo:
        raise DomainError(f"a must lie in (0, 1/sqrt(n)) = (0, {lo:.12g}), got {a}")
    hi = 1.0 - 1e-15
    g = lambda x: float(_log_gap(n, a, x - a))
    if g(lo) <= 0.0:
        # only reachable within rounding of the double root
        return lo
    while g(hi) >= 0.0:
        hi = 0.5 * (hi + 1.0)
        if hi >= 1.0:
            raise ConvergenceError(f"could not bracket a1 for n={n}, a={a}")
    return brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def _radicand(n, a0, a1, d, anchor):
    """``1 - x^2 - C (1/x^2 - 1)^(1/n)`` at distance ``d`` inside the turning point ``anchor``.

    Taking the offset rather than ``x`` keeps full relative accuracy as
    ``d -> 0``.
    """
    if anchor == 0:
        x = a0 + d
        gap = _log_gap(n, a0, d)
    else:
        x = a1 - d
        # log gap relative to x = a1, where it vanishes
        gap = (1.0 - 1.0 / n) * np.log1p(d * (2.0 * a1 - d) / (1.0 - a1 * a1)) + (
            2.0 / n
        ) * np.log1p(-d / a1)
    C = a0 ** (2.0 / n) * (1.0 - a0 * a0) ** (1.0 - 1.0 / n)
    return C * (1.0 / (x * x) - 1.0) ** (1.0 / n) * np.expm1(gap)


def period(n: int, a: float, tol: float = 1e-13) -> PeriodResult:
    """Period ``T(a)`` of the support function.

    The integral is split at the midpoint of ``[a0, a1]``; each half is
    desingularised by ``x = a0 + u^2`` or ``x = a1 - v^2``.
    """
    _check_n(n)
    top = clifford_value(n)
    if not 0.0 < a < top - DEGENERACY_GUARD:
        raise DomainError(
            f"a must lie in (0, 1/sqrt(n) - {DEGENERACY_GUARD:g}) for a periodic "
            f"non-constant solution, got {a}"
        )
    a0 = a
    a1 = upper_root_a1(n, a)
    mid = 0.5 * (a0 + a1)

    def lower(u):
        return 2.0 * u / np.sqrt(_radicand(n, a0, a1, u * u, 0))

    def upper(v):
        return 2.0 * v / np.sqrt(_radicand(n, a0, a1, v * v, 1))

    lo_val, lo_err = _quadrature.adaptive(lower, 0.0, math.sqrt(mid - a0), tol=tol)
    hi_val, hi_err = _quadrature.adaptive(upper, 0.0, math.sqrt(a1 - mid), tol=tol)
    return PeriodResult(a0, a1, 2.0 * (lo_val + hi_val), 2.0 * (lo_err + hi_err))


def _rhs(n):
    def f(theta, y):
        h, dh = y
        one = 1.0 - h * h
        return [dh, -(dh * dh + one * (n * h * h - 1.0)) / (n * h * one)]

    return f


def integrate_support(
    n: int,
    a: float,
    theta_max: float,
    num: int = 2001,
    rtol: float = 1e-12,
    atol: float = 1e-14,
) -> SupportTrajectory:
    """Integrate the support-function ODE from ``h(0) = a``, ``h'(0) = 0``.

    ``theta_max`` may be negative to integrate backwards. Output is sampled on
    ``num`` equally spaced theta values.
    """
    _check_n(n)
    if not 0.0 < a <= clifford_value(n):
        raise DomainError(f"a must lie in (0, 1/sqrt(n)], got {a}")
    theta = np.linspace(0.0, theta_max, num)
    if a == clifford_value(n) or theta_max == 0.0:
        return SupportTrajectory(n, a, theta, np.full(num, a), np.zeros(num), [])

    def minimum(t, y):
        return y[1]

    minimum.direction = 1.0 if theta_max > 0 else -1.0
    sol = solve_ivp(
        _rhs(n),
        (0.0, theta_max),
        [a, 0.0],
        method="DOP853",
        t_eval=theta,
        events=minimum,
        rtol=rtol,
        atol=atol,
    )
    if sol.status != 0:
        raise ConvergenceError(f"support ODE failed: {sol.message}")
    returns = [float(t) for t in sol.t_events[0] if abs(t) > 1e-9]
    return SupportTrajectory(n, a, sol.t, sol.y[0], sol.y[1], returns)


def ode_period(n: int, a: float, rtol: float = 1e-12, atol: float = 1e-14) -> float:
    """Period measured as the first return of the ODE solution to its minimum."""
    guess = period(n, a).T
    traj = integrate_support(n, a, 1.25 * guess, num=2, rtol=rtol, atol=atol)
    if not traj.returns:
        raise ConvergenceError(f"no return to the minimum within {1.25 * guess}")
    return traj.returns[0]


def _disk(theta, h, dh):
    s, c = np.sin(theta), np.cos(theta)
    return h * s + dh * c, -h * c + dh * s


def disk_coords(state: SupportState) -> tuple[float, float]:
    """Planar coordinates ``(x_{n+1}, x_{n+2})`` of the projected generating curve."""
    x, y = _disk(state.theta, state.h, state.dh)
    return float(x), float(y)


def closure_fraction(T: float, max_q: int = 50, tol: float = 1e-5) -> Fraction | None:
    """Reduced ``p/q`` with ``T = 2 pi p / q``, or None if no such fraction fits.

    The curve closes after ``q`` periods, i.e. at ``theta = 2 pi p``.
    """
    ratio = T / (2.0 * math.pi)
    frac = Fraction(ratio).limit_denominator(max_q)
    if abs(float(frac) - ratio) <= tol:
        return frac
    return None


def find_closed(
    n: int,
    p: int,
    q: int,
    grid: int = DEFAULT_GRID,
    xtol: float = 1e-12,
) -> list[float]:
    """All ``a`` in the scan range with ``T(a) = 2 pi p / q``.

    ``T`` is not assumed monotone: every sign change of ``T(a) - T*`` on the
    grid is bracketed and refined.
    """
    _check_n(n)
    if q <= 0 or not 0.5 < p / q < 1.0:
        raise DomainError(f"need 1/2 < p/q < 1 so that 2 pi p/q lies in (pi, 2 pi), got {p}/{q}")
    target = 2.0 * math.pi * p / q
    # period() excludes the guard boundary itself
    hi = clifford_value(n) - 2.0 * DEGENERACY_GUARD
    a_grid = np.linspace(SCAN_FLOOR, hi, grid)
    gap = np.array([period(n, a).T - target for a in a_grid])
    hits = []
    for i in range(grid - 1):
        if gap[i] == 0.0:
            hits.append(float(a_grid[i]))
        elif gap[i] * gap[i + 1] < 0.0:
            root = brentq(lambda a: period(n, a).T - target, a_grid[i], a_grid[i + 1], xtol=xtol)
            hits.append(float(root))
    if gap[-1] == 0.0:
        hits.append(float(a_grid[-1]))
    return hits
