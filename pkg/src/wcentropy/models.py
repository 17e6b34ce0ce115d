"""Univariate lifetime models: parametric families and empirical step models.

Every model exposes the same small surface: ``pdf``, ``cdf``, ``sf``
(survival function, P(X > x)), ``quantile``, and a seeded ``sample``.  All
evaluation methods accept scalars or numpy arrays.

The Gaussian family keeps the untruncated normal curve restricted to x >= 0
without renormalizing, so its density does not integrate to one on the half
line.  Such models carry ``improper = True`` and downstream reports flag them.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .errors import DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d

__all__ = [
    "UnivariateModel", "Uniform", "Exponential", "Weibull", "Gaussian",
    "Gamma", "Empirical", "Mixture", "point_mass",
]


class UnivariateModel:
    """Common behavior for all univariate models."""

    family = "abstract"
    improper = False
    abs_continuous = True

    # subclasses fill these in
    def pdf(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def cdf(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def sf(self, x):
        return 1.0 - self.cdf(x)

    def log_sf(self, x):
        """log of the survival function; -inf past the support end.

        The generic fallback underflows around exp(-745); families backed by
        scipy use the exact tail expansions instead."""
        with np.errstate(divide="ignore"):
            out = np.log(np.asarray(self.sf(x), dtype=float))
        return out if np.ndim(out) else float(out)

    def quantile(self, u):  # pragma: no cover - abstract
        raise NotImplementedError

    def support_upper(self) -> float:
        return math.inf

    def breakpoints(self) -> tuple:
        """Interior points where pdf/sf have kinks; passed to adaptive quadrature."""
        return ()

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return self.quantile(rng.random(n))

    def truncation(self, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
        """Integration cutoff: doubled high quantile, capped at a finite support end."""
        upper = self.support_upper()
        if math.isfinite(upper):
            return upper
        return 2.0 * float(self.quantile(1.0 - spec.tail_mass))

    def expect(self, g: Callable, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
        """E[g(X)] by quadrature against the density (exact for empirical models)."""
        cut = self.truncation(spec)
        res = integrate_1d(lambda x: self.pdf(x) * g(x), 0.0, cut, spec,
                           points=self.breakpoints())
        return res.value

    def moment(self, p: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
        return self.expect(lambda x: x ** p, spec)

    def to_json(self) -> dict:
        raise DomainError(f"model family {self.family!r} is not serializable")


class _ScipyBacked(UnivariateModel):
    """Model backed by a frozen scipy distribution on [0, inf)."""

    def __init__(self, frozen):
        self._d = frozen

    def pdf(self, x):
        return self._d.pdf(x)

    def cdf(self, x):
        return self._d.cdf(x)

    def sf(self, x):
        return self._d.sf(x)

    def log_sf(self, x):
        return self._d.logsf(x)

    def quantile(self, u):
        return self._d.ppf(u)


class Uniform(_ScipyBacked):
    """Uniform on [a, b] with 0 <= a < b."""

    family = "uniform"

    def __init__(self, a: float, b: float):
        if not (0.0 <= a < b):
            raise DomainError("uniform requires 0 <= a < b")
        self.a, self.b = float(a), float(b)
        super().__init__(stats.uniform(loc=a, scale=b - a))

    def support_upper(self):
        return self.b

    def breakpoints(self):
        return (self.a, self.b)

    def to_json(self):
        return {"family": "uniform", "a": self.a, "b": self.b}


class Exponential(_ScipyBacked):
    """Exponential with rate lam: sf(x) = exp(-lam*x)."""

    family = "exponential"

    def __init__(self, lam: float):
        if lam <= 0:
            raise DomainError("exponential rate must be positive")
        self.lam = float(lam)
        super().__init__(stats.expon(scale=1.0 / lam))

    def to_json(self):
        return {"family": "exponential", "lambda": self.lam}


class Weibull(_ScipyBacked):
    """Weibull with sf(x) = exp(-(lam*x)**q)."""

    family = "weibull"

    def __init__(self, lam: float, q: float):
        if lam <= 0 or q <= 0:
            raise DomainError("weibull requires lam > 0 and q > 0")
        self.lam, self.q = float(lam), float(q)
        super().__init__(stats.weibull_min(c=q, scale=1.0 / lam))

    def to_json(self):
        return {"family": "weibull", "lambda": self.lam, "q": self.q}


class Gamma(_ScipyBacked):
    """Gamma with shape k and scale theta."""

    family = "gamma"

    def __init__(self, k: float, theta: float):
        if k <= 0 or theta <= 0:
            raise DomainError("gamma requires k > 0 and theta > 0")
        self.k, self.theta = float(k), float(theta)
        super().__init__(stats.gamma(a=k, scale=theta))

    def to_json(self):
        return {"family": "gamma", "k": self.k, "theta": self.theta}


class Gaussian(UnivariateModel):
    """Normal curve restricted to x >= 0 without renormalization.

    ``sf(x)`` is the full normal tail P(N > x) for x >= 0; consequently the
    density mass on the half line is Phi(mu/sigma) < 1 and the model is
    flagged improper.  The sampler clips negative draws to 0, which has
    exactly this cdf on x >= 0.
    """

    family = "gaussian"
    improper = True

    def __init__(self, mu: float, sigma: float):
        if sigma <= 0:
            raise DomainError("gaussian sigma must be positive")
        self.mu, self.sigma = float(mu), float(sigma)
        self._d = stats.norm(loc=mu, scale=sigma)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.where(x >= 0, self._d.pdf(x), 0.0)
        return out if out.ndim else float(out)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.where(x >= 0, self._d.cdf(x), 0.0)
        return out if out.ndim else float(out)

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.where(x >= 0, self._d.sf(x), 1.0)
        return out if out.ndim else float(out)

    def log_sf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.where(x >= 0, self._d.logsf(x), 0.0)
        return out if out.ndim else float(out)

    def quantile(self, u):
        out = np.maximum(self._d.ppf(u), 0.0)
        return out if np.ndim(out) else float(out)

    def to_json(self):
        return {"family": "gaussian", "mu": self.mu, "sigma": self.sigma}


class Empirical(UnivariateModel):
    """Step model of a finite nonnegative sample.

    Survival uses the right-continuous convention sf(x) = #{X_i > x} / n.
    Not absolutely continuous; expectations are exact sample averages.
    """

    family = "empirical"
    abs_continuous = False

    def __init__(self, sample: Sequence[float]):
        xs = np.sort(np.asarray(sample, dtype=float))
        if xs.size == 0:
            raise DomainError("empirical sample must be nonempty")
        if np.any(xs < 0) or not np.all(np.isfinite(xs)):
            raise DomainError("empirical sample entries must be finite and >= 0")
        self.points = xs
        self.n = xs.size

    def pdf(self, x):
        raise DomainError("empirical model has no density")

    def cdf(self, x):
        out = np.searchsorted(self.points, np.asarray(x, dtype=float),
                              side="right") / self.n
        return out if np.ndim(x) else float(out)

    def sf(self, x):
        out = (self.n - np.searchsorted(self.points, np.asarray(x, dtype=float),
                                        side="right")) / self.n
        return out if np.ndim(x) else float(out)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        idx = np.clip(np.ceil(u * self.n).astype(int) - 1, 0, self.n - 1)
        out = self.points[idx]
        return out if out.ndim else float(out)

    def support_upper(self):
        return float(self.points[-1])

    def breakpoints(self):
        return tuple(np.unique(self.points))

    def expect(self, g, spec=DEFAULT_SPEC):
        return float(np.mean([g(x) for x in self.points]))

    def to_json(self):
        return {"family": "empirical", "sample": [float(x) for x in self.points]}


class Mixture(UnivariateModel):
    """Finite mixture of univariate models."""

    family = "mixture"

    def __init__(self, weights: Sequence[float], components: Sequence[UnivariateModel]):
        w = np.asarray(weights, dtype=float)
        if w.size != len(components) or w.size == 0:
            raise DomainError("mixture needs matching weights and components")
        if np.any(w < 0) or not math.isclose(w.sum(), 1.0, abs_tol=1e-12):
            raise DomainError("mixture weights must be nonnegative and sum to 1")
        self.weights = w
        self.components = list(components)
        self.abs_continuous = all(c.abs_continuous for c in components)
        self.improper = any(c.improper for c in components)

    def pdf(self, x):
        return sum(w * c.pdf(x) for w, c in zip(self.weights, self.components))

    def cdf(self, x):
        return sum(w * c.cdf(x) for w, c in zip(self.weights, self.components))

    def sf(self, x):
        return sum(w * c.sf(x) for w, c in zip(self.weights, self.components))

    def log_sf(self, x):
        from scipy.special import logsumexp
        logs = np.stack([np.atleast_1d(np.asarray(c.log_sf(x), dtype=float))
                         for c in self.components])
        with np.errstate(divide="ignore"):
            out = logsumexp(logs + np.log(self.weights)[:, None], axis=0)
        return out if np.ndim(x) else float(out[0])

    def quantile(self, u):
        u_arr = np.atleast_1d(np.asarray(u, dtype=float))
        hi = np.max([np.atleast_1d(c.quantile(np.clip(u_arr, 0.0, 1.0 - 1e-15)))
                     for c in self.components], axis=0)
        hi = np.maximum(hi, 1e-9)
        lo = np.zeros_like(hi)
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            below = np.asarray(self.cdf(mid)) < u_arr
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        out = 0.5 * (lo + hi)
        return out if np.ndim(u) else float(out[0])

    def support_upper(self):
        return max(c.support_upper() for c in self.components)

    def breakpoints(self):
        pts = []
        for c in self.components:
            pts.extend(c.breakpoints())
        return tuple(sorted(set(pts)))

    def sample(self, n, rng):
        choice = rng.random(n)
        edges = np.cumsum(self.weights)
        idx = np.searchsorted(edges, choice, side="right")
        idx = np.clip(idx, 0, len(self.components) - 1)
        u = rng.random(n)
        out = np.empty(n)
        for i, c in enumerate(self.components):
            mask = idx == i
            if mask.any():
                out[mask] = np.atleast_1d(c.quantile(u[mask]))
        return out

    def expect(self, g, spec=DEFAULT_SPEC):
        return float(sum(w * c.expect(g, spec)
                         for w, c in zip(self.weights, self.components)))

    def to_json(self):
        return {"family": "mixture",
                "weights": [float(w) for w in self.weights],
                "components": [c.to_json() for c in self.components]}


def point_mass(c: float) -> Empirical:
    """Degenerate model concentrated at one point."""
    return Empirical([c])
