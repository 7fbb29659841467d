"""Composite Gauss-Legendre quadrature with panel doubling.

Integrands are expected to be vectorized (accept and return numpy arrays)
and smooth on the closed interval; singular endpoints must be removed by a
change of variables before calling in here.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceError


@lru_cache(maxsize=None)
def _rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def composite(
    func: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    panels: int,
    order: int = 16,
) -> float:
    """Fixed composite Gauss-Legendre rule with ``panels`` equal panels."""
    nodes, weights = _rule(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = mid[:, None] + half[:, None] * nodes[None, :]
    fx = func(x.ravel()).reshape(x.shape)
    return float(np.sum(fx * weights[None, :] * half[:, None]))


def adaptive(
    func: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    tol: float = 1e-13,
    order: int = 16,
    panels: int = 4,
    max_panels: int = 1 << 14,
) -> tuple[float, float]:
    """Integrate ``func`` over ``[lo, hi]``, doubling panels until stable.

    Returns ``(value, error_estimate)`` where the estimate is the change
    between the last two refinements.
    """
    if hi == lo:
        return 0.0, 0.0
    prev = composite(func, lo, hi, panels, order)
    while panels < max_panels:
        panels *= 2
        cur = composite(func, lo, hi, panels, order)
        err = abs(cur - prev)
        if not np.isfinite(cur):
            raise ConvergenceError(f"non-finite integrand on [{lo}, {hi}]")
        if err <= tol * max(1.0, abs(cur)):
            return cur, err
        prev = cur
    raise ConvergenceError(
        f"quadrature on [{lo}, {hi}] did not converge: last change {err:.3e}"
    )
