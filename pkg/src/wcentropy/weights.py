"""Nonnegative weight functions on the nonnegative half-line.

A weight ``phi`` enters every entropy functional in the package.  The two
derived views used throughout the bounds are its cumulative integral

    psi(x)       = integral of phi(t) on [0, x]
    psi_star(p, x) = integral of t^p * phi(t) on [0, x]

Closed forms are used for the constant / power / exponential kinds; tabulated
weights are piecewise linear with constant extrapolation and integrate exactly.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np
from scipy import special

from .errors import DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d

__all__ = ["WeightFunction", "psi", "psi_star"]


class WeightFunction:
    """A nonnegative weight on [0, inf), one of five parametric kinds.

    Use the classmethod constructors::

        WeightFunction.constant(c)          # x -> c
        WeightFunction.power(a)             # x -> x**a
        WeightFunction.scaled_power(c, a)   # x -> c * x**a
        WeightFunction.exponential(r)       # x -> exp(-r*x)
        WeightFunction.tabulated(knots)     # piecewise linear through knots

    ``power`` admits ``a in (-1, 0)`` with ``integrable_singularity`` set
    (the weight blows up at 0 but its integral is finite); ``a <= -1`` is
    rejected.  Tabulated knots must be strictly increasing in x with
    nonnegative values; extrapolation is constant on both sides.
    """

    def __init__(self, kind: str, **params):
        self.kind = kind
        self.params = params
        self.integrable_singularity = False
        if kind == "constant":
            if params["c"] < 0:
                raise DomainError("constant weight must be nonnegative")
        elif kind in ("power", "scaled_power"):
            a = params["a"]
            if a <= -1.0:
                raise DomainError(
                    f"power weight with exponent {a} is not integrable near 0")
            if a < 0.0:
                self.integrable_singularity = True
            if kind == "scaled_power" and params["c"] < 0:
                raise DomainError("scale factor must be nonnegative")
        elif kind == "exponential":
            pass  # any real rate keeps the weight nonnegative
        elif kind == "tabulated":
            xs = np.asarray(params["xs"], dtype=float)
            ys = np.asarray(params["ys"], dtype=float)
            if xs.ndim != 1 or xs.size < 2 or xs.shape != ys.shape:
                raise DomainError("tabulated weight needs >= 2 (x, value) knots")
            if np.any(np.diff(xs) <= 0):
                raise DomainError("tabulated knots must be strictly increasing")
            if np.any(xs < 0) or np.any(ys < 0):
                raise DomainError("tabulated knots must be nonnegative")
            self.params = {"xs": xs, "ys": ys}
        else:
            raise DomainError(f"unknown weight kind {kind!r}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c: float) -> "WeightFunction":
        return cls("constant", c=float(c))

    @classmethod
    def power(cls, a: float) -> "WeightFunction":
        return cls("power", a=float(a))

    @classmethod
    def scaled_power(cls, c: float, a: float) -> "WeightFunction":
        return cls("scaled_power", c=float(c), a=float(a))

    @classmethod
    def exponential(cls, r: float) -> "WeightFunction":
        return cls("exponential", r=float(r))

    @classmethod
    def tabulated(cls, knots: Iterable[Sequence[float]]) -> "WeightFunction":
        pts = sorted((float(x), float(y)) for x, y in knots)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return cls("tabulated", xs=xs, ys=ys)

    @classmethod
    def from_grid(cls, xs, ys) -> "WeightFunction":
        return cls("tabulated", xs=np.asarray(xs, float), ys=np.asarray(ys, float))

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = self.kind
        if k == "constant":
            out = np.full_like(x, self.params["c"])
        elif k == "power":
            with np.errstate(divide="ignore"):
                out = np.power(x, self.params["a"], where=x > 0,
                               out=np.zeros_like(x))
                if self.params["a"] == 0.0:
                    out = np.ones_like(x)
                elif self.params["a"] < 0.0:
                    out = np.where(x == 0.0, np.inf, out)
        elif k == "scaled_power":
            out = self.params["c"] * np.asarray(
                WeightFunction.power(self.params["a"])(x))
        elif k == "exponential":
            with np.errstate(over="ignore"):
                out = np.exp(-self.params["r"] * x)
        else:
            out = np.interp(x, self.params["xs"], self.params["ys"])
        return out if out.ndim else float(out)

    def psi(self, x: float) -> float:
        """Cumulative integral of the weight on [0, x]; closed form where possible."""
        if x < 0:
            raise DomainError("psi requires x >= 0")
        k, p = self.kind, self.params
        if math.isinf(x):
            return self._psi_infinite()
        if k == "constant":
            return p["c"] * x
        if k == "power":
            a = p["a"]
            return x ** (a + 1.0) / (a + 1.0)
        if k == "scaled_power":
            a = p["a"]
            return p["c"] * x ** (a + 1.0) / (a + 1.0)
        if k == "exponential":
            r = p["r"]
            if r == 0.0:
                return x
            return float(-math.expm1(-r * x) / r)
        return self._tabulated_psi(x)

    def psi_vec(self, x) -> np.ndarray:
        """Vectorized ``psi``; used by the Monte Carlo statistics."""
        x = np.asarray(x, dtype=float)
        k, p = self.kind, self.params
        if k == "constant":
            return p["c"] * x
        if k == "power":
            a = p["a"]
            return x ** (a + 1.0) / (a + 1.0)
        if k == "scaled_power":
            a = p["a"]
            return p["c"] * x ** (a + 1.0) / (a + 1.0)
        if k == "exponential":
            r = p["r"]
            if r == 0.0:
                return x.copy()
            return -np.expm1(-r * x) / r
        xs, ys = np.asarray(p["xs"]), np.asarray(p["ys"])
        # cumulative integral at the knots, then a local piecewise term
        seg = 0.5 * (ys[1:] + ys[:-1]) * np.diff(xs)
        cum = np.concatenate([[ys[0] * xs[0]], ys[0] * xs[0] + np.cumsum(seg)])
        idx = np.clip(np.searchsorted(xs, x, side="right") - 1, -1, len(xs) - 1)
        out = np.empty_like(x)
        left = idx < 0
        out[left] = ys[0] * x[left]
        inner = (idx >= 0) & (idx < len(xs) - 1)
        i = idx[inner]
        t = x[inner] - xs[i]
        slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
        out[inner] = cum[i] + ys[i] * t + 0.5 * slope * t * t
        beyond = idx == len(xs) - 1
        out[beyond] = cum[-1] + ys[-1] * (x[beyond] - xs[-1])
        return out

    def psi_star(self, p_exp: float, x: float,
                 spec: QuadratureSpec = DEFAULT_SPEC) -> float:
        """Integral of t**p_exp * phi(t) on [0, x]."""
        if x < 0 or p_exp < 0:
            raise DomainError("psi_star requires x >= 0 and p >= 0")
        if p_exp == 0.0:
            return self.psi(x)
        k, p = self.kind, self.params
        if math.isinf(x):
            return self._psi_star_infinite(p_exp, spec)
        if k == "constant":
            return p["c"] * x ** (p_exp + 1.0) / (p_exp + 1.0)
        if k in ("power", "scaled_power"):
            a = p["a"] + p_exp
            c = p.get("c", 1.0)
            return c * x ** (a + 1.0) / (a + 1.0)
        if k == "exponential":
            r = p["r"]
            if r == 0.0:
                return x ** (p_exp + 1.0) / (p_exp + 1.0)
            if r > 0.0:
                # lower incomplete gamma, rescaled
                return float(special.gammainc(p_exp + 1.0, r * x)
                             * special.gamma(p_exp + 1.0) / r ** (p_exp + 1.0))
            res = integrate_1d(lambda t: t ** p_exp * math.exp(-r * t),
                               0.0, x, spec)
            return res.value
        xs = self.params["xs"]
        res = integrate_1d(lambda t: t ** p_exp * float(self(t)), 0.0, x, spec,
                           points=list(xs))
        return res.value

    def _psi_infinite(self) -> float:
        k, p = self.kind, self.params
        if k == "exponential" and p["r"] > 0:
            return 1.0 / p["r"]
        if k == "constant" and p["c"] == 0.0:
            return 0.0
        if k == "tabulated" and p["ys"][-1] == 0.0:
            return self._tabulated_psi(float(p["xs"][-1]))
        raise DomainError(f"psi diverges at infinity for weight kind {k!r}")

    def _psi_star_infinite(self, p_exp: float, spec: QuadratureSpec) -> float:
        k, p = self.kind, self.params
        if k == "exponential" and p["r"] > 0:
            r = p["r"]
            return float(special.gamma(p_exp + 1.0) / r ** (p_exp + 1.0))
        if k == "constant" and p["c"] == 0.0:
            return 0.0
        raise DomainError(f"psi_star diverges at infinity for weight kind {k!r}")

    def _tabulated_psi(self, x: float) -> float:
        # exact integral of the piecewise-linear interpolant
        xs, ys = self.params["xs"], self.params["ys"]
        total = 0.0
        if x <= xs[0]:
            return ys[0] * x
        total += ys[0] * xs[0]  # constant extrapolation left of first knot
        for i in range(len(xs) - 1):
            x0, x1 = xs[i], xs[i + 1]
            y0, y1 = ys[i], ys[i + 1]
            if x <= x0:
                break
            hi = min(x, x1)
            t = hi - x0
            slope = (y1 - y0) / (x1 - x0)
            total += y0 * t + 0.5 * slope * t * t
        if x > xs[-1]:
            total += ys[-1] * (x - xs[-1])
        return float(total)

    # -- helpers -----------------------------------------------------------

    def psi_inverse(self, target: float, hi_start: float = 1.0) -> float:
        """Solve psi(x) = target by bisection (psi is nondecreasing)."""
        if target < 0:
            raise DomainError("psi is nonnegative")
        if target == 0.0:
            return 0.0
        hi = hi_start
        for _ in range(200):
            if self.psi(hi) >= target:
                break
            hi *= 2.0
        else:
            raise DomainError("psi never reaches the requested level")
        lo = 0.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.psi(mid) < target:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-12 * max(1.0, hi):
                break
        return 0.5 * (lo + hi)

    def upper_bound_on(self, hi: float, n_probe: int = 512) -> float:
        """Numeric supremum of the weight over [0, hi] (probe grid + knots)."""
        xs = np.linspace(0.0, hi, n_probe)
        if self.kind == "tabulated":
            xs = np.union1d(xs, np.asarray(self.params["xs"]))
        vals = np.asarray(self(xs), dtype=float)
        vals = vals[np.isfinite(vals)]
        return float(vals.max()) if vals.size else 0.0

    def scaled(self, factor: float) -> "WeightFunction":
        """The weight multiplied by a nonnegative constant."""
        if factor < 0:
            raise DomainError("scale factor must be nonnegative")
        k, p = self.kind, self.params
        if k == "constant":
            return WeightFunction.constant(factor * p["c"])
        if k == "power":
            return WeightFunction.scaled_power(factor, p["a"])
        if k == "scaled_power":
            return WeightFunction.scaled_power(factor * p["c"], p["a"])
        if k == "tabulated":
            return WeightFunction.from_grid(p["xs"], factor * np.asarray(p["ys"]))
        raise DomainError(f"cannot scale weight kind {k!r} in closed form")

    def __repr__(self):
        if self.kind == "tabulated":
            return f"WeightFunction.tabulated(<{len(self.params['xs'])} knots>)"
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"WeightFunction.{self.kind}({inner})"


def psi(phi: WeightFunction, x: float) -> float:
    """Module-level alias for ``phi.psi(x)``."""
    return phi.psi(x)


def psi_star(phi: WeightFunction, p: float, x: float,
             spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Module-level alias for ``phi.psi_star(p, x)``."""
    return phi.psi_star(p, x, spec)
