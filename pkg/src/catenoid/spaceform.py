"""Space-form primitives: warp functions and Clifford hypersurface data."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

# below this value of |c| y^2 the closed forms lose accuracy to cancellation
# in the c -> 0 limit, so a Taylor series is used instead
SERIES_THRESHOLD = 1e-8


@dataclass(frozen=True)
class SpaceForm:
    """Space form of sectional curvature ``c`` holding a hypersurface of dimension ``n``."""

    c: float
    n: int

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise DomainError(f"curvature must be finite, got {self.c}")
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension n must be an integer >= 2, got {self.n}")

    @property
    def y_max(self) -> float:
        """Largest admissible distance to the rotation axis."""
        if self.c > 0:
            return math.pi / (2.0 * math.sqrt(self.c))
        return math.inf


@dataclass(frozen=True)
class WarpProfile:
    f: float
    df: float
    ddf: float


def warp(sf: SpaceForm, y: float) -> WarpProfile:
    """Evaluate the warp function ``f`` of the half-space metric and two derivatives.

    ``f`` solves ``f'' + c f = 0`` with ``f(0) = 0`` and ``f'(0) = 1``.
    """
    c = sf.c
    if y < 0 or y > sf.y_max * (1 + 1e-15):
        raise DomainError(f"y={y} outside admissible range [0, {sf.y_max}] for c={c}")
    if abs(c) * y * y < SERIES_THRESHOLD:
        y2 = y * y
        f = y * (1.0 - c * y2 / 6.0 + c * c * y2 * y2 / 120.0)
        df = 1.0 - c * y2 / 2.0 + c * c * y2 * y2 / 24.0
        return WarpProfile(f, df, -c * f)
    k = math.sqrt(abs(c))
    if c < 0:
        f = math.sinh(k * y) / k
        df = math.cosh(k * y)
    else:
        f = math.sin(k * y) / k
        df = math.cos(k * y)
    return WarpProfile(f, df, -c * f)


@dataclass(frozen=True)
class CliffordSpec:
    """Clifford minimal hypersurface S^m x S^(n-m) in the sphere of curvature ``c``."""

    m: int
    n: int
    c: float = 1.0

    def __post_init__(self):
        if self.n < 2 or not 1 <= self.m <= self.n - 1:
            raise DomainError(f"need 1 <= m <= n-1 and n >= 2, got m={self.m}, n={self.n}")
        if not self.c > 0:
            raise DomainError(f"Clifford hypersurfaces need c > 0, got {self.c}")


@dataclass(frozen=True)
class CliffordSFF:
    """Two-eigenvalue second fundamental form ``root * coef`` with rational ``coef``.

    Both eigenvalues share the irrational factor ``root``, so the trace is
    evaluated exactly on the rational coefficients.
    """

    root: float
    lam_coef: Fraction
    lam_mult: int
    nu_coef: Fraction
    nu_mult: int

    @property
    def lam(self) -> float:
        return self.root * float(self.lam_coef)

    @property
    def nu(self) -> float:
        return self.root * float(self.nu_coef)

    @property
    def trace(self) -> float:
        return self.root * float(self.lam_mult * self.lam_coef + self.nu_mult * self.nu_coef)

    @property
    def norm_sq(self) -> float:
        return self.lam_mult * self.lam**2 + self.nu_mult * self.nu**2

    def eigenvalues(self) -> list[float]:
        return [self.lam] * self.lam_mult + [self.nu] * self.nu_mult


def clifford_radii(spec: CliffordSpec) -> tuple[float, float]:
    m, n, c = spec.m, spec.n, spec.c
    return math.sqrt(m / (c * n)), math.sqrt((n - m) / (c * n))


def clifford_sff(spec: CliffordSpec) -> CliffordSFF:
    """Principal curvatures of the Clifford hypersurface.

    On the unit sphere these are ``sqrt((n-m)/m)`` (multiplicity m) and
    ``-sqrt(m/(n-m))`` (multiplicity n-m); shrinking the sphere to curvature
    ``c`` multiplies both by ``sqrt(c)``.
    """
    m, n, c = spec.m, spec.n, spec.c
    root = math.sqrt(c * m * (n - m))
    return CliffordSFF(root, Fraction(1, m), m, Fraction(-1, n - m), n - m)
