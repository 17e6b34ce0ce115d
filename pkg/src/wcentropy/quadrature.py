"""Numerical integration: adaptive 1-D quadrature and tensor-grid rules for 2-3 dims.

Every integral in the package goes through one of the two entry points here so
that tolerances, truncation of semi-infinite domains, and subdivision limits are
controlled by a single ``QuadratureSpec``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, DomainError, IntegrandError

__all__ = [
    "QuadratureSpec",
    "IntegralResult",
    "integrate_1d",
    "integrate_nd",
    "envelope_cutoff",
    "gauss_legendre_rule",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and truncation policy governing every integral.

    Parameters
    ----------
    rel_tol, abs_tol : float
        Relative/absolute tolerance targets for adaptive 1-D integration.
    max_subdivisions : int
        Cap on adaptive interval splits before a convergence error is raised.
    tail_mass : float
        Semi-infinite integrals are cut where the dominating survival factor
        drops below this mass; the cut point is then doubled for safety.
    grid_points_per_dim : int
        Gauss-Legendre nodes per axis for tensor-grid integration in 2-3 dims.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    tail_mass: float = 1e-10
    grid_points_per_dim: int = 256

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise DomainError("tolerances must be positive")
        if not (0.0 < self.tail_mass < 1.0):
            raise DomainError("tail_mass must lie in (0, 1)")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")
        if self.grid_points_per_dim < 16:
            raise DomainError("grid_points_per_dim must be >= 16")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    """Value and diagnostics of one integral evaluation."""

    value: float
    abs_error_estimate: float
    subdivisions_used: int
    truncation_point: Optional[float] = None


def envelope_cutoff(envelope: Callable[[float], float], tail_mass: float,
                    lo: float = 0.0, hard_cap: float = 1e12) -> float:
    """Point where a nonincreasing envelope (typically a survival function)
    drops below ``tail_mass``, enlarged by a factor of two.

    Doubling search followed by bisection; raises if the envelope never decays
    below the requested mass before ``hard_cap``.
    """
    x = max(lo, 1.0)
    if envelope(lo) <= tail_mass:
        return 2.0 * max(lo, 1.0)
    while envelope(x) > tail_mass:
        x *= 2.0
        if x > hard_cap:
            raise DomainError(
                f"envelope does not fall below {tail_mass!r} before {hard_cap!r}")
    a, b = x / 2.0, x
    for _ in range(200):
        m = 0.5 * (a + b)
        if envelope(m) > tail_mass:
            a = m
        else:
            b = m
        if b - a <= 1e-12 * max(1.0, b):
            break
    return 2.0 * b


def _wrap(f):
    def g(x):
        y = f(x)
        if not math.isfinite(y):
            raise IntegrandError(f"integrand returned {y!r} at x={x!r}", x)
        return y
    return g


def integrate_1d(f: Callable[[float], float], lo: float, hi: float,
                 spec: QuadratureSpec = DEFAULT_SPEC, *,
                 cutoff: Optional[float] = None,
                 envelope: Optional[Callable[[float], float]] = None,
                 points: Optional[Sequence[float]] = None) -> IntegralResult:
    """Adaptive (Gauss-Kronrod) integration of ``f`` on ``(lo, hi)``.

    For ``hi = inf`` the interval is truncated: either at ``cutoff`` (already
    including any safety factor the caller wants) or at the point where the
    supplied nonincreasing ``envelope`` falls below ``spec.tail_mass``
    (doubled).  The cut is recorded in ``truncation_point``.

    ``points`` lists known interior breakpoints (kinks, step locations) passed
    to the adaptive rule.

    Raises
    ------
    ConvergenceError
        Tolerance not met within ``spec.max_subdivisions`` splits.
    IntegrandError
        ``f`` returned NaN/inf; the offending abscissa is attached.
    """
    if not lo < hi:
        raise DomainError(f"empty integration interval [{lo}, {hi}]")
    truncation = None
    if math.isinf(hi):
        if cutoff is not None:
            truncation = float(cutoff)
        elif envelope is not None:
            truncation = envelope_cutoff(envelope, spec.tail_mass, lo=lo)
        else:
            raise DomainError(
                "semi-infinite interval requires a cutoff or an envelope")
        hi = truncation
        if not lo < hi:
            return IntegralResult(0.0, 0.0, 0, truncation)

    interior = None
    if points is not None:
        interior = sorted(p for p in points if lo < p < hi)
        if not interior:
            interior = None

    out = integrate.quad(_wrap(f), lo, hi,
                         epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                         limit=spec.max_subdivisions, points=interior,
                         full_output=True)
    value, abserr, info = out[0], out[1], out[2]
    used = int(info.get("last", 0))
    if len(out) > 3:
        # quad attaches a message when the requested accuracy was not certified.
        # Roundoff chatter on essentially-converged integrals is tolerated as
        # long as the reported error stays near the requested tolerances.
        if abserr > max(spec.abs_tol, spec.rel_tol * abs(value)) * 1e3:
            raise ConvergenceError(
                f"1-D quadrature failed to converge: {out[3]}", value, abserr)
    return IntegralResult(float(value), float(abserr), used, truncation)


def gauss_legendre_rule(lo: float, hi: float, n: int):
    """Gauss-Legendre nodes and weights mapped onto ``[lo, hi]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _tensor_value(f, axes, chunk: bool) -> float:
    nodes = [a[0] for a in axes]
    weights = [a[1] for a in axes]
    ndim = len(axes)
    if ndim == 2:
        xx, yy = np.meshgrid(nodes[0], nodes[1], indexing="ij")
        pts = np.column_stack([xx.ravel(), yy.ravel()])
        vals = np.asarray(f(pts), dtype=float).reshape(xx.shape)
        return float(np.einsum("i,j,ij->", weights[0], weights[1], vals))
    total = 0.0
    # Chunk over the first axis to keep the 3-D mesh memory bounded.
    for i, (x0, w0) in enumerate(zip(nodes[0], weights[0])):
        yy, zz = np.meshgrid(nodes[1], nodes[2], indexing="ij")
        pts = np.column_stack([np.full(yy.size, x0), yy.ravel(), zz.ravel()])
        vals = np.asarray(f(pts), dtype=float).reshape(yy.shape)
        total += w0 * float(np.einsum("j,k,jk->", weights[1], weights[2], vals))
    return total


def integrate_nd(f, box: Sequence, spec: QuadratureSpec = DEFAULT_SPEC, *,
                 cutoffs: Optional[Sequence[float]] = None) -> IntegralResult:
    """Tensor-product Gauss-Legendre integration over a 2- or 3-dim box.

    ``f`` receives an ``(k, n)`` array of points and must return ``k`` values.
    Infinite upper limits must come with per-axis ``cutoffs``.  The error
    estimate is the difference against a half-resolution grid.
    """
    ndim = len(box)
    if ndim not in (2, 3):
        raise DomainError("integrate_nd supports 2 or 3 dimensions")
    bounds = []
    truncation = None
    for i, (lo, hi) in enumerate(box):
        if math.isinf(hi):
            if cutoffs is None or cutoffs[i] is None:
                raise DomainError("infinite axis requires a cutoff")
            hi = float(cutoffs[i])
            truncation = hi
        if not lo < hi:
            raise DomainError(f"empty axis {i}: [{lo}, {hi}]")
        bounds.append((float(lo), float(hi)))

    n = spec.grid_points_per_dim
    full = [gauss_legendre_rule(lo, hi, n) for lo, hi in bounds]
    half = [gauss_legendre_rule(lo, hi, max(n // 2, 8)) for lo, hi in bounds]
    v_full = _tensor_value(f, full, chunk=ndim == 3)
    v_half = _tensor_value(f, half, chunk=ndim == 3)
    if not (math.isfinite(v_full) and math.isfinite(v_half)):
        raise IntegrandError("tensor-grid integrand produced non-finite values",
                             float("nan"))
    return IntegralResult(v_full, abs(v_full - v_half), n, truncation)
