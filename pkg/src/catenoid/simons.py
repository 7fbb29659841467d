"""Second fundamental form analytics and the Simons identity.

Covers the principal curvatures of catenoids along their arclength profile,
the Laplacian of functions of arclength, the Simons equation residual

    |A| Lap|A| + |A|^4 - (2/n) |grad|A||^2 - n c |A|^2

and the pointwise algebraic decomposition of ``|grad A|^2`` into
``(1 + 2/n) |grad|A||^2 + E1 + E2 + E3`` for raw tensor data.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .profile import Profile, ProfilePoint
from .spaceform import CliffordSpec, SpaceForm, clifford_sff

# E3 carries a 1/|A|^2 factor; below this |A|^2 it is treated as undefined
NORM_SQ_FLOOR = 1e-14


@dataclass(frozen=True)
class PrincipalCurvatures:
    lam: float  # multiplicity n - 1
    mu: float
    n: int

    @property
    def trace(self) -> float:
        return (self.n - 1) * self.lam + self.mu

    @property
    def norm_sq(self) -> float:
        return (self.n - 1) * self.lam**2 + self.mu**2


def principal_curvatures(sf: SpaceForm, p: ProfilePoint) -> PrincipalCurvatures:
    """Principal curvatures of the rotation hypersurface at a profile point.

    ``lam = -sqrt(1 - c x1^2 - x1'^2) / x1`` along the orbit sphere and
    ``mu = (x1'' + c x1) / sqrt(1 - c x1^2 - x1'^2)`` along the profile.
    """
    rad = 1.0 - sf.c * p.x1 * p.x1 - p.dx1 * p.dx1
    if not rad > 0.0 or not p.x1 > 0.0:
        raise DomainError(f"not a point of a valid profile: 1 - c x1^2 - x1'^2 = {rad}, x1 = {p.x1}")
    root = math.sqrt(rad)
    return PrincipalCurvatures(-root / p.x1, (p.ddx1 + sf.c * p.x1) / root, sf.n)


def sff_norm_sq(sf: SpaceForm, a: float, x1):
    """``|A|^2 = a^2 n (n-1) x1^(-2n)`` on the catenoid with profile constant ``a``."""
    n = sf.n
    return a * a * n * (n - 1) * np.asarray(x1, dtype=float) ** (-2 * n)


@dataclass(frozen=True)
class AxialField:
    """A function of arclength with its first two derivatives, sampled on a grid."""

    s: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    ddphi: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.s) <= 0):
            raise DomainError("arclength grid must be strictly increasing")
        if not len(self.s) == len(self.phi) == len(self.dphi) == len(self.ddphi):
            raise DomainError("field samples and grid differ in length")


class AxialDerivatives(NamedTuple):
    laplacian: np.ndarray
    grad_sq: np.ndarray


def axial_laplacian(sf: SpaceForm, profile: Profile, field: AxialField) -> AxialDerivatives:
    """Laplacian and squared gradient of a function that depends on arclength only.

    On the induced metric ``x1^2 alpha + ds^2`` these reduce to
    ``phi'' + (n-1) (x1'/x1) phi'`` and ``phi'^2``.
    """
    if len(field.s) != len(profile.s) or not np.allclose(field.s, profile.s, rtol=0, atol=1e-12):
        raise DomainError("field is not sampled on the profile's arclength grid")
    lap = field.ddphi + (sf.n - 1) * profile.dx1 / profile.x1 * field.dphi
    return AxialDerivatives(lap, field.dphi**2)


def norm_field(sf: SpaceForm, a: float, profile: Profile) -> AxialField:
    """``|A|`` along the profile with closed-form arclength derivatives."""
    n = sf.n
    K = a * math.sqrt(n * (n - 1))
    x, dx, ddx = profile.x1, profile.dx1, profile.ddx1
    phi = K * x ** (-n)
    dphi = -n * K * x ** (-n - 1) * dx
    ddphi = n * K * ((n + 1) * x ** (-n - 2) * dx * dx - x ** (-n - 1) * ddx)
    return AxialField(profile.s, phi, dphi, ddphi)


def fd_field(profile: Profile, phi: np.ndarray) -> AxialField:
    """Central second-order differences of ``phi`` on the profile's uniform grid.

    The two end samples have no centred stencil and are set to NaN.
    """
    h = profile.spacing
    dphi = np.full_like(phi, np.nan)
    ddphi = np.full_like(phi, np.nan)
    dphi[1:-1] = (phi[2:] - phi[:-2]) / (2.0 * h)
    ddphi[1:-1] = (phi[2:] - 2.0 * phi[1:-1] + phi[:-2]) / (h * h)
    return AxialField(profile.s, phi, dphi, ddphi)


def _simons_terms(sf, phi, lap, grad_sq):
    n, c = sf.n, sf.c
    return [phi * lap, phi**4, -(2.0 / n) * grad_sq, -n * c * phi**2]


def simons_residual(
    sf: SpaceForm,
    a: float,
    profile: Profile,
    method: str = "analytic",
    relative: bool = True,
) -> np.ndarray:
    """Residual of the Simons equation for ``|A|`` along a catenoid profile.

    ``method="analytic"`` differentiates ``|A| = a sqrt(n(n-1)) x1^(-n)``
    in closed form; ``method="fd"`` uses central differences of the sampled
    ``|A|`` (end points come back as NaN). With ``relative=True`` the
    residual is divided by the sum of the absolute values of its terms.
    """
    exact = norm_field(sf, a, profile)
    if method == "analytic":
        field = exact
    elif method == "fd":
        field = fd_field(profile, exact.phi)
    else:
        raise ValueError(f"unknown method {method!r}")
    n = sf.n
    lap = field.ddphi + (n - 1) * profile.dx1 / profile.x1 * field.dphi
    terms = _simons_terms(sf, field.phi, lap, field.dphi**2)
    res = sum(terms)
    if not relative:
        return res
    # the Laplacian term is split so cancellation inside it counts in the scale
    scale = (
        np.abs(field.phi * field.ddphi)
        + np.abs(field.phi * (n - 1) * profile.dx1 / profile.x1 * field.dphi)
        + sum(np.abs(t) for t in terms[1:])
    )
    return res / scale


def clifford_simons_residual(spec: CliffordSpec) -> float:
    """Simons residual of a Clifford hypersurface, where ``|A|`` is constant."""
    sff = clifford_sff(spec)
    norm_sq = sff.norm_sq
    return norm_sq * norm_sq - spec.n * spec.c * norm_sq


@dataclass(frozen=True)
class SFFData:
    """Second fundamental form in a principal frame and its covariant derivative.

    ``lambdas[i]`` are the principal curvatures (``h_ij = lambdas[i] delta_ij``)
    and ``h[i, j, k]`` the components of the covariant derivative.
    """

    lambdas: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        h = np.asarray(self.h, dtype=float)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "h", h)
        n = lam.shape[0]
        if h.shape != (n, n, n):
            raise DomainError(f"derivative tensor must be {n}x{n}x{n}, got {h.shape}")

    @property
    def n(self) -> int:
        return self.lambdas.shape[0]

    @property
    def norm_sq(self) -> float:
        return float(np.sum(self.lambdas**2))

    def check(self, tol: float = 1e-10) -> None:
        """Raise DomainError unless the tensor is admissible.

        Admissible means trace-free ``lambdas``, fully symmetric ``h`` and
        ``sum_i h_iik = 0`` for every ``k``.
        """
        lam, h = self.lambdas, self.h
        scale = max(1.0, float(np.max(np.abs(lam))), float(np.max(np.abs(h))) if h.size else 1.0)
        if abs(lam.sum()) > tol * scale * self.n:
            raise DomainError(f"principal curvatures not trace-free: sum = {lam.sum()}")
        for perm in itertools.permutations(range(3)):
            if np.max(np.abs(h - np.transpose(h, perm))) > tol * scale:
                raise DomainError("derivative tensor is not fully symmetric")
        if np.max(np.abs(np.einsum("iik->k", h))) > tol * scale * self.n:
            raise DomainError("derivative tensor has non-zero traces")


def random_admissible(n: int, rng: np.random.Generator, scale: float = 1.0) -> SFFData:
    """Random admissible data: trace-free curvatures, symmetric trace-free derivative.

    A Gaussian tensor is symmetrised and then projected onto the trace-free
    subspace by subtracting ``delta_ij v_k + delta_ik v_j + delta_jk v_i``
    with ``v = trace / (n + 2)``, which keeps it symmetric.
    """
    lam = rng.normal(scale=scale, size=n)
    lam -= lam.mean()
    raw = rng.normal(scale=scale, size=(n, n, n))
    h = sum(np.transpose(raw, p) for p in itertools.permutations(range(3))) / 6.0
    v = np.einsum("iik->k", h) / (n + 2)
    eye = np.eye(n)
    h = h - (
        np.einsum("ij,k->ijk", eye, v) + np.einsum("ik,j->ijk", eye, v) + np.einsum("jk,i->ijk", eye, v)
    )
    return SFFData(lam, h)


@dataclass(frozen=True)
class SimonsTerms:
    E1: float
    E2: float
    E3: float

    @property
    def E(self) -> float:
        return self.E1 + self.E2 + self.E3


def e_terms(data: SFFData, pairs: str = "unordered") -> SimonsTerms:
    """The three non-negative error terms of the Simons identity.

    ``E1`` sums ``h_ijk^2`` over ordered triples of distinct indices. ``E2``
    sums ``(h_kki - h_jji)^2`` over ``i`` and pairs ``{j, k}`` avoiding ``i``;
    ``E3`` sums ``(lam_i h_jjk - lam_j h_iik)^2`` over ``k`` and pairs
    ``{i, j}``. With ``pairs="unordered"`` (default) each pair is counted
    once, which is the convention under which
    ``|grad A|^2 = (1 + 2/n) |grad|A||^2 + E`` holds; ``pairs="ordered"``
    counts both orders, doubling ``E2`` and ``E3``.
    """
    if pairs not in ("unordered", "ordered"):
        raise ValueError(f"pairs must be 'unordered' or 'ordered', got {pairs!r}")
    lam, h, n = data.lambdas, data.h, data.n
    mult = 2.0 if pairs == "ordered" else 1.0

    distinct = np.ones((n, n, n), dtype=bool)
    idx = np.arange(n)
    distinct[idx, idx, :] = False
    distinct[idx, :, idx] = False
    distinct[:, idx, idx] = False
    E1 = float(np.sum(h[distinct] ** 2))

    # w[j, i] = h_jji
    w = np.einsum("jji->ji", h)
    E2 = 0.0
    E3_sum = 0.0
    for j, k in itertools.combinations(range(n), 2):
        others = (idx != j) & (idx != k)
        E2 += float(np.sum((w[k, others] - w[j, others]) ** 2))
        # lam_j h_kkm - lam_k h_jjm over all m
        E3_sum += float(np.sum((lam[j] * w[k] - lam[k] * w[j]) ** 2))
    E2 *= mult * 2.0 / n
    E3_sum *= mult

    norm_sq = data.norm_sq
    if norm_sq < NORM_SQ_FLOOR:
        if E3_sum != 0.0:
            raise DomainError("E3 is undefined where |A| = 0")
        E3 = 0.0
    else:
        E3 = (1.0 + 2.0 / n) * E3_sum / norm_sq
    return SimonsTerms(E1, E2, E3)


def grad_norm_sq(data: SFFData) -> float:
    """``|grad|A||^2 = sum_k (sum_i lam_i h_iik)^2 / |A|^2``."""
    norm_sq = data.norm_sq
    if norm_sq < NORM_SQ_FLOOR:
        raise DomainError("|grad|A|| is undefined where |A| = 0")
    g = np.einsum("i,iik->k", data.lambdas, data.h)
    return float(np.sum(g**2)) / norm_sq


def identity_check(data: SFFData) -> tuple[float, float]:
    """Both sides of ``|grad A|^2 = (1 + 2/n) |grad|A||^2 + E``."""
    lhs = float(np.sum(data.h**2))
    rhs = (1.0 + 2.0 / data.n) * grad_norm_sq(data) + e_terms(data).E
    return lhs, rhs


@dataclass(frozen=True)
class InducedMetric:
    """Block metric ``x1^2 alpha`` on the orbit sphere plus ``ds^2`` along the profile."""

    x1: float
    alpha: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        m = self.alpha.shape[0]
        g = np.zeros((m + 1, m + 1))
        g[:m, :m] = self.x1**2 * self.alpha
        g[m, m] = 1.0
        return g

    @property
    def det(self) -> float:
        m = self.alpha.shape[0]
        return float(np.linalg.det(self.alpha)) * self.x1 ** (2 * m)


def induced_metric(sf: SpaceForm, x1: float, alpha) -> InducedMetric:
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (sf.n - 1, sf.n - 1):
        raise DomainError(f"alpha must be {sf.n - 1}x{sf.n - 1}, got {alpha.shape}")
    if not np.allclose(alpha, alpha.T, rtol=0, atol=1e-12):
        raise DomainError("alpha must be symmetric")
    try:
        np.linalg.cholesky(alpha)
    except np.linalg.LinAlgError:
        raise DomainError("alpha must be positive definite") from None
    return InducedMetric(float(x1), alpha)


def metric_laplacian_fd(sf: SpaceForm, profile: Profile, phi: np.ndarray, alpha=None) -> np.ndarray:
    """Laplace-Beltrami of an arclength-only function, straight from the metric.

    Discretises ``(1/sqrt(g)) d/ds (sqrt(g) dphi/ds)`` in conservative form
    with ``sqrt(g)`` taken from :func:`induced_metric` at each sample. End
    samples are NaN.
    """
    if alpha is None:
        alpha = np.eye(sf.n - 1)
    vol = np.sqrt([induced_metric(sf, x, alpha).det for x in profile.x1])
    h = profile.spacing
    flux = 0.5 * (vol[1:] + vol[:-1]) * np.diff(phi) / h
    out = np.full_like(phi, np.nan)
    out[1:-1] = np.diff(flux) / (h * vol[1:-1])
    return out
