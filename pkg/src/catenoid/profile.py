"""Generating curves of catenoids.

Two descriptions are provided. For ``c <= 0`` the curve is a graph over the
distance ``y`` to the rotation axis, with axial coordinate given by a
quadrature whose integrand blows up like ``(t - a)^(-1/2)`` at the neck.
For any ``c`` the radial coordinate ``x1`` of the ambient embedding obeys
an arclength ODE with first integral ``x1'^2 = 1 - c x1^2 - a^2 x1^(2-2n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from . import _quadrature
from .errors import ConvergenceError, DivergenceError, DomainError, UnsupportedCurvatureError
from .spaceform import SpaceForm, warp

# profiles with a this close to the double-root value are rejected
DOUBLE_ROOT_GUARD = 1e-6


@dataclass(frozen=True)
class ProfilePoint:
    s: float
    x1: float
    dx1: float
    ddx1: float


def _check_neck(a):
    if not a > 0 or not math.isfinite(a):
        raise DomainError(f"neck parameter a must be positive and finite, got {a}")


def _log_warp_terms(sf, a, d):
    """Return ``log(f(t)/f(a))``, ``log(f'(t)/f'(a))`` and ``log f'(t)`` at ``t = a + d``.

    Differences are formed analytically so the ratios keep full relative
    accuracy as ``d -> 0``.
    """
    d = np.asarray(d, dtype=float)
    if sf.c == 0.0:
        return np.log1p(d / a), np.zeros_like(d), np.zeros_like(d)
    k = math.sqrt(-sf.c)
    t = a + d
    near = k * d <= 1.0
    dn = np.minimum(d, 1.0 / k)
    half = np.sinh(0.5 * k * dn)
    lf_near = np.log1p(2.0 * np.cosh(0.5 * k * (2 * a + dn)) * half / math.sinh(k * a))
    lfp_near = np.log1p(2.0 * np.sinh(0.5 * k * (2 * a + dn)) * half / math.cosh(k * a))
    lf_far = _log_sinh(k * t) - _log_sinh(k * a)
    lfp_far = _log_cosh(k * t) - _log_cosh(k * a)
    return (
        np.where(near, lf_near, lf_far),
        np.where(near, lfp_near, lfp_far),
        _log_cosh(k * t),
    )


def _log_sinh(z):
    return z + np.log(-np.expm1(-2.0 * z)) - math.log(2.0)


def _log_cosh(z):
    return z + np.log1p(np.exp(-2.0 * z)) - math.log(2.0)


def _dx_dy(sf, a, d):
    """Integrand ``1 / (f'(t) sqrt(R(t) - 1))`` of the axial coordinate, at ``t = a + d``."""
    n = sf.n
    lf, lfp, log_fp = _log_warp_terms(sf, a, d)
    log_r = (2 * n - 2) * lf + 2.0 * lfp
    # log(expm1(L)) without overflow for large L
    log_gap = log_r + np.log(-np.expm1(-log_r))
    return np.exp(-log_fp - 0.5 * log_gap)


def _tail_cutoff(a):
    return a + max(1.0, a)


def _require_nonpositive(sf):
    if sf.c > 0:
        raise UnsupportedCurvatureError(
            "the graph description needs c <= 0; use the support-function "
            "description (catenoid.otsuki) for c > 0"
        )


def sin_alpha(sf: SpaceForm, a: float, y: float) -> float:
    """Sine of the angle between the curve and the radial direction at distance ``y``.

    Equals ``f(a)^(n-1) f'(a) / (f(y)^(n-1) f'(y))``; the numerator is the
    conserved quantity along the curve.
    """
    _require_nonpositive(sf)
    _check_neck(a)
    if y < a:
        raise DomainError(f"y={y} lies inside the neck a={a}")
    if math.isinf(y):
        return 0.0
    lf, lfp, _ = _log_warp_terms(sf, a, y - a)
    return float(np.exp(-(sf.n - 1) * lf - lfp))


def conserved_k(sf: SpaceForm, a: float) -> float:
    """``f(a)^(n-1) f'(a)``; equals the arclength-profile constant of the same catenoid."""
    w = warp(sf, a)
    return w.f ** (sf.n - 1) * w.df


def generating_curve_x(sf: SpaceForm, a: float, y: float, tol: float = 1e-13) -> float:
    """Axial coordinate ``x(y)`` of the generating curve with neck at distance ``a``.

    ``y`` may be ``math.inf``. The neck singularity is removed by
    ``t = a + u^2``; beyond a cutoff the range is mapped by ``t = t_c / v``.
    """
    _require_nonpositive(sf)
    _check_neck(a)
    if y < a:
        raise DomainError(f"y={y} lies inside the neck a={a}")
    if y == a:
        return 0.0
    if math.isinf(y) and sf.c == 0.0 and sf.n == 2:
        raise DivergenceError("the planar catenary has infinite axial extent (c=0, n=2)")

    def near(u):
        return 2.0 * u * _dx_dy(sf, a, u * u)

    tc = _tail_cutoff(a)
    head_end = min(y, tc)
    total, _ = _quadrature.adaptive(near, 0.0, math.sqrt(head_end - a), tol=tol)
    if y > tc:

        def tail(v):
            return _dx_dy(sf, a, tc / v - a) * tc / (v * v)

        extra, _ = _quadrature.adaptive(tail, tc / y, 1.0, tol=tol)
        total += extra
    return total


def euclidean_half_extent(n: int, a: float, tol: float = 1e-13) -> float:
    """Total axial half-width ``x(infinity)`` of the Euclidean catenoid with neck ``a``.

    Scales linearly in ``a``; finite only for ``n >= 3``.
    """
    _check_neck(a)
    if n == 2:
        raise DivergenceError("the planar catenary has infinite axial extent (n=2)")
    return a * generating_curve_x(SpaceForm(0.0, n), 1.0, math.inf, tol=tol)


def generating_curve(sf: SpaceForm, a: float, y_max: float, num: int = 201) -> tuple[np.ndarray, np.ndarray]:
    """Sample one branch of the generating curve: arrays ``(y, x)`` with ``y`` from ``a`` to ``y_max``.

    Samples are equally spaced in ``u = sqrt(y - a)`` so they cluster at the
    neck, where the curve turns fastest.
    """
    _require_nonpositive(sf)
    _check_neck(a)
    if not y_max > a or math.isinf(y_max):
        raise DomainError(f"y_max must be finite and exceed a={a}, got {y_max}")
    u = np.linspace(0.0, math.sqrt(y_max - a), num)
    nodes, weights = _quadrature._rule(16)
    half = 0.5 * np.diff(u)
    mid = 0.5 * (u[1:] + u[:-1])
    q = mid[:, None] + half[:, None] * nodes[None, :]
    vals = 2.0 * q * _dx_dy(sf, a, q * q)
    pieces = np.sum(vals * weights[None, :], axis=1) * half
    x = np.concatenate([[0.0], np.cumsum(pieces)])
    return a + u * u, x


def neck_radius(sf: SpaceForm, a: float) -> float:
    """Smallest positive root of ``1 - c x^2 - a^2 x^(2-2n)``: the ambient radius at the neck."""
    _check_neck(a)
    c, n = sf.c, sf.n

    def F(x):
        return 1.0 - c * x * x - math.exp(2.0 * math.log(a) + (2 - 2 * n) * math.log(x))

    lo = (a * a / 2.0) ** (1.0 / (2 * n - 2))
    if c > 0:
        crit = critical_neck(sf)
        if a >= crit - DOUBLE_ROOT_GUARD:
            raise DomainError(
                f"a={a} leaves no oscillating profile for c={c}, n={n}: "
                f"need a < {crit:.12g} - {DOUBLE_ROOT_GUARD:g}"
            )
        hi = ((n - 1) * a * a / c) ** (1.0 / (2 * n))
    else:
        # F increases monotonically when c <= 0
        while F(lo) >= 0.0:
            lo *= 0.5
        hi = max(2.0 * lo, 1.0)
        while F(hi) <= 0.0:
            hi *= 2.0
    return brentq(F, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def critical_neck(sf: SpaceForm) -> float:
    """For ``c > 0``, the value of ``a`` where the two roots of the first integral merge.

    At this value the profile is the constant ``x1 = sqrt((n-1)/(c n))``, a
    Clifford hypersurface.
    """
    c, n = sf.c, sf.n
    if c <= 0:
        return math.inf
    return math.sqrt(c / (n - 1) * ((n - 1) / (c * n)) ** n)


class Profile:
    """Arclength samples of a catenoid profile on a uniform grid.

    A sequence of :class:`ProfilePoint`. Array attributes ``s``, ``x1``,
    ``dx1``, ``ddx1`` and ``axial`` (the arclength-integrated coordinate
    along the rotation axis) are also exposed.
    """

    def __init__(self, sf, a, s, x1, dx1, axial):
        self.sf = sf
        self.a = a
        self.s = np.asarray(s, dtype=float)
        self.x1 = np.asarray(x1, dtype=float)
        self.dx1 = np.asarray(dx1, dtype=float)
        self.ddx1 = profile_acceleration(sf, a, self.x1)
        self.axial = np.asarray(axial, dtype=float)

    def __len__(self):
        return len(self.s)

    def __getitem__(self, i):
        return ProfilePoint(float(self.s[i]), float(self.x1[i]), float(self.dx1[i]), float(self.ddx1[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    @property
    def spacing(self) -> float:
        return float(self.s[1] - self.s[0])

    def first_integral_residual(self) -> np.ndarray:
        """Scaled residual of ``x1'^2 + c x1^2 + a^2 x1^(2-2n) = 1``.

        Divided by ``max(1, x1'^2 + |c| x1^2 + a^2 x1^(2-2n))``: for ``c >= 0``
        this is the plain residual, for ``c < 0`` it is relative to the
        magnitude of the terms, which grow like ``x1^2`` along the curve.
        """
        c, n, a = self.sf.c, self.sf.n, self.a
        pot = a * a * self.x1 ** (2 - 2 * n)
        terms = self.dx1**2 + abs(c) * self.x1**2 + pot
        return (self.dx1**2 + c * self.x1**2 + pot - 1.0) / np.maximum(1.0, terms)

    def distance_to_axis(self) -> np.ndarray:
        """Geodesic distance ``y`` from the rotation axis, inverting ``x1 = f(y)``."""
        c = self.sf.c
        if c == 0.0:
            return self.x1.copy()
        k = math.sqrt(abs(c))
        if c < 0:
            return np.arcsinh(k * self.x1) / k
        return np.arcsin(k * self.x1) / k


def profile_acceleration(sf: SpaceForm, a: float, x1):
    """``x1'' = -c x1 + a^2 (n-1) x1^(1-2n)``."""
    n = sf.n
    return -sf.c * x1 + a * a * (n - 1) * x1 ** (1 - 2 * n)


def integrate_profile(
    sf: SpaceForm,
    a: float,
    s_max: float,
    num: int = 1001,
    rtol: float = 1e-13,
    atol: float = 1e-15,
) -> Profile:
    """Integrate the profile ODE from the neck over ``s`` in ``[0, s_max]``.

    Starts at the smallest positive root of the first integral with
    ``x1' = 0``; output is sampled on ``num`` equally spaced arclengths.
    ``s_max`` may be negative for the mirror branch.

    The second-order equation ``x1'' = -c x1 + a^2 (n-1) x1^(1-2n)`` is
    integrated in the equivalent angle form ``x1' = rho cos(psi)`` with
    ``rho = sqrt(1 - c x1^2)``, so that ``1 - c x1^2 - x1'^2 = rho^2 sin(psi)^2``
    is carried directly instead of being recovered by cancellation; it
    decays like ``x1^(2-2n)`` along the curve.
    """
    c, n = sf.c, sf.n
    x0 = neck_radius(sf, a)

    def rhs(s, y):
        x, psi, _ = y
        rho2 = 1.0 - c * x * x
        rho = math.sqrt(rho2)
        return [
            rho * math.cos(psi),
            rho * math.sin(psi) * ((1 - n) / x + c * x / rho2),
            a * x ** (1 - n) / rho2,
        ]

    s = np.linspace(0.0, s_max, num)
    if s_max == 0.0:
        return Profile(sf, a, s, np.full(num, x0), np.zeros(num), np.zeros(num))
    sol = solve_ivp(
        rhs, (0.0, s_max), [x0, 0.5 * math.pi, 0.0], method="DOP853", t_eval=s, rtol=rtol, atol=atol
    )
    if sol.status != 0:
        raise ConvergenceError(f"profile ODE failed: {sol.message}")
    x, psi, axial = sol.y
    dx = np.sqrt(1.0 - c * x * x) * np.cos(psi)
    dx[0] = 0.0
    return Profile(sf, a, sol.t, x, dx, axial)
