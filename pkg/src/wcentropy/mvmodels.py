"""Joint models on the nonnegative orthant, n in {2, 3}.

Every model exposes a vectorized joint survival function over ``(k, n)`` point
arrays, its univariate marginals, a joint cdf, and a seeded sampler.
Conditional survival functions are ratios of joint survival values and are
formed by the entropy layer, not here.

Families
--------
- ``IndependentProduct``: joint sf is the product of marginal sfs.
- ``FgmBivariate``: sf(x1,x2) = sf1*sf2*(1 + theta*F1*F2).
- ``FgmTrivariate``: pairwise interaction terms, sum |theta_ij| <= 1.
- ``FgmMarkovChain``: two FGM pairs glued along the shared middle marginal,
  sf = sf12 * sf23 / sf2.  Conditionally independent ends given the middle
  coordinate in the survival sense, which is the equality case of the
  strong sub-additivity and data-processing checks.
- ``GaussianMv``: untruncated normal restricted to the orthant (improper,
  like the univariate Gaussian).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy import special

from .errors import DomainError
from .models import Gaussian, UnivariateModel
from .quadrature import gauss_legendre_rule

__all__ = [
    "MultivariateModel", "IndependentProduct", "FgmBivariate",
    "FgmTrivariate", "FgmMarkovChain", "GaussianMv",
    "bvn_cdf", "bvn_sf", "fgm_conditional", "PairMarginal",
]

_SQRT2PI = math.sqrt(2.0 * math.pi)


def _phi(z):
    return special.ndtr(z)


def bvn_cdf(h, k, rho: float):
    """Standard bivariate normal P(Z1 <= h, Z2 <= k) with correlation rho.

    Owen's T-function formula; deterministic and vectorized.
    """
    h = np.asarray(h, dtype=float)
    k = np.asarray(k, dtype=float)
    rho = float(np.clip(rho, -1.0 + 1e-12, 1.0 - 1e-12))
    # nudge exact zeros so the a_h/a_k ratios stay finite
    h = np.where(h == 0.0, 1e-13, h)
    k = np.where(k == 0.0, 1e-13, k)
    denom = math.sqrt(1.0 - rho * rho)
    ah = (k - rho * h) / (h * denom)
    ak = (h - rho * k) / (k * denom)
    beta = np.where((h * k < 0) | ((h * k == 0) & (h + k < 0)), 0.5, 0.0)
    out = (0.5 * (_phi(h) + _phi(k))
           - special.owens_t(h, ah) - special.owens_t(k, ak) - beta)
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def bvn_sf(h, k, rho: float):
    """Standard bivariate normal P(Z1 > h, Z2 > k)."""
    h = np.asarray(h, dtype=float)
    k = np.asarray(k, dtype=float)
    out = 1.0 - _phi(h) - _phi(k) + bvn_cdf(h, k, rho)
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def _bisect_unit(g, w, iters: int = 80):
    """Vectorized bisection: solve g(t) = w for t in [0, 1], g increasing."""
    lo = np.zeros_like(w)
    hi = np.ones_like(w)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = g(mid) < w
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


class MultivariateModel:
    """Common surface for joint models."""

    family = "abstract"
    improper = False

    def __init__(self, n: int):
        self.n = n

    def joint_sf(self, pts: np.ndarray) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    def joint_cdf(self, pts: np.ndarray) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    def marginal(self, i: int) -> UnivariateModel:  # pragma: no cover
        raise NotImplementedError

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise DomainError(f"family {self.family!r} has no sampler")

    def sub_sf(self, pts: np.ndarray, axes: Sequence[int]) -> np.ndarray:
        """Survival function of the sub-vector on ``axes``: other coordinates
        are pinned at 0 (valid for orthant-supported families; for improper
        Gaussians this is the orthant-section convention used throughout)."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        full = np.zeros((pts.shape[0], self.n))
        for col, ax in enumerate(axes):
            full[:, ax] = pts[:, col]
        return self.joint_sf(full)

    def to_json(self) -> dict:
        raise DomainError(f"family {self.family!r} is not serializable")


class IndependentProduct(MultivariateModel):
    family = "independent_product"

    def __init__(self, components: Sequence[UnivariateModel]):
        if not 2 <= len(components) <= 3:
            raise DomainError("independent product supports n in {2, 3}")
        super().__init__(len(components))
        self.components = list(components)
        self.improper = any(getattr(c, "improper", False) for c in components)

    def joint_sf(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = np.ones(pts.shape[0])
        for i, c in enumerate(self.components):
            out = out * np.asarray(c.sf(pts[:, i]))
        return out

    def joint_cdf(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = np.ones(pts.shape[0])
        for i, c in enumerate(self.components):
            out = out * np.asarray(c.cdf(pts[:, i]))
        return out

    def marginal(self, i):
        return self.components[i]

    def sample(self, n, rng):
        return np.column_stack([c.sample(n, rng) for c in self.components])

    def to_json(self):
        return {"family": "independent_product",
                "components": [c.to_json() for c in self.components]}


class FgmBivariate(MultivariateModel):
    """Bivariate model with FGM-type survival dependence."""

    family = "fgm"

    def __init__(self, theta: float, m1: UnivariateModel, m2: UnivariateModel):
        if not -1.0 <= theta <= 1.0:
            raise DomainError("fgm theta must lie in [-1, 1]")
        super().__init__(2)
        self.theta = float(theta)
        self.m1, self.m2 = m1, m2

    def joint_sf(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        s1 = np.asarray(self.m1.sf(pts[:, 0]))
        s2 = np.asarray(self.m2.sf(pts[:, 1]))
        return s1 * s2 * (1.0 + self.theta * (1.0 - s1) * (1.0 - s2))

    def joint_cdf(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        f1 = np.asarray(self.m1.cdf(pts[:, 0]))
        f2 = np.asarray(self.m2.cdf(pts[:, 1]))
        return f1 * f2 * (1.0 + self.theta * (1.0 - f1) * (1.0 - f2))

    def marginal(self, i):
        return (self.m1, self.m2)[i]

    def sample(self, n, rng):
        u = rng.random(n)
        w = rng.random(n)
        a = self.theta * (1.0 - 2.0 * u)
        # conditional cdf of the second copula coordinate: v*(1 + a*(1 - v))
        v = _bisect_unit(lambda t: t * (1.0 + a * (1.0 - t)), w)
        return np.column_stack([np.atleast_1d(self.m1.quantile(u)),
                                np.atleast_1d(self.m2.quantile(v))])

    def to_json(self):
        return {"family": "fgm", "theta": self.theta,
                "marginals": [self.m1.to_json(), self.m2.to_json()]}


class FgmTrivariate(MultivariateModel):
    """Trivariate FGM with pairwise interaction terms in survival form."""

    family = "fgm3"

    def __init__(self, theta12: float, theta13: float, theta23: float,
                 marginals: Sequence[UnivariateModel]):
        if len(marginals) != 3:
            raise DomainError("fgm3 needs three marginals")
        if abs(theta12) + abs(theta13) + abs(theta23) > 1.0 + 1e-12:
            raise DomainError("fgm3 requires sum |theta_ij| <= 1")
        super().__init__(3)
        self.thetas = (float(theta12), float(theta13), float(theta23))
        self.marginals = list(marginals)

    def _sf_cdf_parts(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        s = [np.asarray(m.sf(pts[:, i])) for i, m in enumerate(self.marginals)]
        f = [1.0 - si for si in s]
        return s, f

    def joint_sf(self, pts):
        s, f = self._sf_cdf_parts(pts)
        t12, t13, t23 = self.thetas
        return s[0] * s[1] * s[2] * (1.0 + t12 * f[0] * f[1]
                                     + t13 * f[0] * f[2] + t23 * f[1] * f[2])

    def pair_sf(self, pts, i: int, j: int):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        si = np.asarray(self.marginals[i].sf(pts[:, 0]))
        sj = np.asarray(self.marginals[j].sf(pts[:, 1]))
        th = dict({(0, 1): self.thetas[0], (0, 2): self.thetas[1],
                   (1, 2): self.thetas[2]})[tuple(sorted((i, j)))]
        return si * sj * (1.0 + th * (1.0 - si) * (1.0 - sj))

    def joint_cdf(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        s, _ = self._sf_cdf_parts(pts)
        total = np.ones(pts.shape[0]) - s[0] - s[1] - s[2]
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            total = total + self.pair_sf(pts[:, [i, j]], i, j)
        return total - self.joint_sf(pts)

    def marginal(self, i):
        return self.marginals[i]

    def sample(self, n, rng):
        t12, t13, t23 = self.thetas
        u1 = rng.random(n)
        a1 = 1.0 - 2.0 * u1
        w2 = rng.random(n)
        u2 = _bisect_unit(lambda t: t * (1.0 + t12 * a1 * (1.0 - t)), w2)
        a2 = 1.0 - 2.0 * u2
        w3 = rng.random(n)
        const = 1.0 + t12 * a1 * a2
        slope = t13 * a1 + t23 * a2

        def g(t):
            return (const * t + slope * (t - t * t)) / const

        u3 = _bisect_unit(g, w3)
        cols = [self.marginals[0].quantile(u1), self.marginals[1].quantile(u2),
                self.marginals[2].quantile(u3)]
        return np.column_stack([np.atleast_1d(c) for c in cols])

    def to_json(self):
        return {"family": "fgm3", "theta12": self.thetas[0],
                "theta13": self.thetas[1], "theta23": self.thetas[2],
                "marginals": [m.to_json() for m in self.marginals]}


class FgmMarkovChain(MultivariateModel):
    """Survival-glued chain: sf(x1,x2,x3) = sf12(x1,x2) * sf23(x2,x3) / sf2(x2).

    The (1,3) pair marginal is exactly independent, and the ends are
    conditionally independent given the middle coordinate in the survival
    sense, so equality instances of the three-variable inequalities are
    constructible.  Requires |theta12| + |theta23| <= 1 for a valid measure.
    """

    family = "fgm_markov"

    def __init__(self, theta12: float, theta23: float,
                 marginals: Sequence[UnivariateModel]):
        if len(marginals) != 3:
            raise DomainError("fgm_markov needs three marginals")
        if abs(theta12) + abs(theta23) > 1.0 + 1e-12:
            raise DomainError("fgm_markov requires |theta12| + |theta23| <= 1")
        super().__init__(3)
        self.theta12, self.theta23 = float(theta12), float(theta23)
        self.marginals = list(marginals)

    def joint_sf(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        s = [np.asarray(m.sf(pts[:, i])) for i, m in enumerate(self.marginals)]
        f = [1.0 - si for si in s]
        # sf12*sf23/sf2 with the common sf2 factor cancelled analytically
        return (s[0] * s[1] * s[2]
                * (1.0 + self.theta12 * f[0] * f[1])
                * (1.0 + self.theta23 * f[1] * f[2]))

    def pair_sf(self, pts, i: int, j: int):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        si = np.asarray(self.marginals[i].sf(pts[:, 0]))
        sj = np.asarray(self.marginals[j].sf(pts[:, 1]))
        key = tuple(sorted((i, j)))
        if key == (0, 1):
            th = self.theta12
        elif key == (1, 2):
            th = self.theta23
        else:
            th = 0.0  # the glued ends are independent
        return si * sj * (1.0 + th * (1.0 - si) * (1.0 - sj))

    def joint_cdf(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        s = [np.asarray(m.sf(pts[:, i])) for i, m in enumerate(self.marginals)]
        total = np.ones(pts.shape[0]) - s[0] - s[1] - s[2]
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            total = total + self.pair_sf(pts[:, [i, j]], i, j)
        return total - self.joint_sf(pts)

    def marginal(self, i):
        return self.marginals[i]

    def sample(self, n, rng):
        t12, t23 = self.theta12, self.theta23
        u1 = rng.random(n)
        a1 = 1.0 - 2.0 * u1
        w2 = rng.random(n)
        u2 = _bisect_unit(lambda t: t * (1.0 + t12 * a1 * (1.0 - t)), w2)
        w3 = rng.random(n)
        # conditional cdf of the third copula coordinate given the first two,
        # derived from d2 C / du1 du2 of the glued copula
        a = -t12 * a1
        b = 1.0 + t12 * a1 * (1.0 - u2)

        def g(t):
            g23 = u2 * t * (1.0 + t23 * (1.0 - u2) * (1.0 - t))
            d2g23 = t * (1.0 + t23 * (1.0 - 2.0 * u2) * (1.0 - t))
            num = a * g23 + b * d2g23
            den = a * u2 + b
            return num / den

        u3 = _bisect_unit(g, w3)
        cols = [self.marginals[0].quantile(u1), self.marginals[1].quantile(u2),
                self.marginals[2].quantile(u3)]
        return np.column_stack([np.atleast_1d(c) for c in cols])

    def to_json(self):
        return {"family": "fgm_markov", "theta12": self.theta12,
                "theta23": self.theta23,
                "marginals": [m.to_json() for m in self.marginals]}


class GaussianMv(MultivariateModel):
    """Multivariate normal restricted to the orthant without renormalization."""

    family = "gaussian"
    improper = True

    def __init__(self, mu: Sequence[float], cov: Sequence[Sequence[float]]):
        mu = np.asarray(mu, dtype=float)
        cov = np.asarray(cov, dtype=float)
        n = mu.size
        if n not in (2, 3) or cov.shape != (n, n):
            raise DomainError("gaussian joint model supports n in {2, 3}")
        if not np.allclose(cov, cov.T, atol=1e-12):
            raise DomainError("covariance must be symmetric")
        try:
            self._chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            raise DomainError("covariance must be positive definite") from exc
        super().__init__(n)
        self.mu = mu
        self.cov = cov
        self._prec = np.linalg.inv(cov)
        self._sd = np.sqrt(np.diag(cov))

    def _standardize(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return (pts - self.mu) / self._sd

    def joint_sf(self, pts):
        z = self._standardize(pts)
        if self.n == 2:
            rho = self.cov[0, 1] / (self._sd[0] * self._sd[1])
            return np.asarray(bvn_sf(z[:, 0], z[:, 1], rho))
        return self._trivariate_orthant(np.atleast_2d(pts), upper=True)

    def joint_cdf(self, pts):
        z = self._standardize(pts)
        if self.n == 2:
            rho = self.cov[0, 1] / (self._sd[0] * self._sd[1])
            return np.asarray(bvn_cdf(z[:, 0], z[:, 1], rho))
        return self._trivariate_orthant(np.atleast_2d(pts), upper=False)

    def _trivariate_orthant(self, pts, upper: bool, n_nodes: int = 48) -> np.ndarray:
        """P(X > x) or P(X <= x) by direct tensor quadrature of the density."""
        out = np.empty(pts.shape[0])
        norm = (2.0 * math.pi) ** (-1.5) / math.sqrt(np.linalg.det(self.cov))
        reach = 9.0
        for row, x in enumerate(pts):
            axes = []
            for i in range(3):
                if upper:
                    lo, hi = x[i], self.mu[i] + reach * self._sd[i]
                else:
                    lo, hi = self.mu[i] - reach * self._sd[i], x[i]
                if lo >= hi:
                    out[row] = 0.0
                    break
                axes.append(gauss_legendre_rule(lo, hi, n_nodes))
            else:
                xs, ws = zip(*axes)
                g0, g1, g2 = np.meshgrid(*xs, indexing="ij")
                d = np.stack([g0 - self.mu[0], g1 - self.mu[1],
                              g2 - self.mu[2]], axis=-1)
                quad = np.einsum("...i,ij,...j->...", d, self._prec, d)
                vals = np.exp(-0.5 * quad)
                out[row] = norm * np.einsum("i,j,k,ijk->", ws[0], ws[1], ws[2],
                                            vals)
        return np.clip(out, 0.0, 1.0)

    def marginal(self, i):
        return Gaussian(self.mu[i], self._sd[i])

    def sample(self, n, rng):
        z = rng.standard_normal((n, self.n))
        return self.mu + z @ self._chol.T

    def to_json(self):
        return {"family": "gaussian", "mu": [float(m) for m in self.mu],
                "cov": [[float(v) for v in row] for row in self.cov]}


class PairMarginal(MultivariateModel):
    """Bivariate marginal (axes i, j) of a trivariate model, as a model."""

    family = "pair_marginal"

    def __init__(self, base: MultivariateModel, i: int, j: int):
        if base.n != 3:
            raise DomainError("pair marginal is taken from a trivariate model")
        super().__init__(2)
        self.base = base
        self.axes = (i, j)
        self.improper = base.improper

    def joint_sf(self, pts):
        if hasattr(self.base, "pair_sf"):
            return self.base.pair_sf(pts, *self.axes)
        return self.base.sub_sf(pts, self.axes)

    def joint_cdf(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        i, j = self.axes
        si = np.asarray(self.base.marginal(i).sf(pts[:, 0]))
        sj = np.asarray(self.base.marginal(j).sf(pts[:, 1]))
        return 1.0 - si - sj + np.asarray(self.joint_sf(pts))

    def marginal(self, k):
        return self.base.marginal(self.axes[k])


class _FgmConditionalModel(UnivariateModel):
    """Exact conditional of one FGM coordinate given the other equals a value."""

    family = "fgm_conditional"

    def __init__(self, base: UnivariateModel, theta: float, v_other: float):
        self.base = base
        self.theta = float(theta)
        self.v = float(v_other)

    def _tilt(self, u):
        # sf distortion: sf_cond = sfb * (1 - theta*(1-2v)*u) with u = cdf
        return 1.0 - self.theta * (1.0 - 2.0 * self.v) * u

    def pdf(self, x):
        u = np.asarray(self.base.cdf(x))
        out = np.asarray(self.base.pdf(x)) * (
            1.0 + self.theta * (1.0 - 2.0 * u) * (1.0 - 2.0 * self.v))
        return out if out.ndim else float(out)

    def cdf(self, x):
        u = np.asarray(self.base.cdf(x))
        out = 1.0 - (1.0 - u) * self._tilt(u)
        return out if out.ndim else float(out)

    def sf(self, x):
        u = np.asarray(self.base.cdf(x))
        out = (1.0 - u) * self._tilt(u)
        return out if out.ndim else float(out)

    def quantile(self, q):
        q_arr = np.atleast_1d(np.asarray(q, dtype=float))
        u = _bisect_unit(lambda t: 1.0 - (1.0 - t) * self._tilt(t), q_arr)
        out = self.base.quantile(u)
        return out if np.ndim(q) else float(np.atleast_1d(out)[0])

    def support_upper(self):
        return self.base.support_upper()

    def breakpoints(self):
        return self.base.breakpoints()


def fgm_conditional(model: FgmBivariate, given: int, value: float) -> UnivariateModel:
    """Exact conditional model of the other coordinate given X_given = value."""
    if not isinstance(model, FgmBivariate):
        raise DomainError("exact conditionals are available for the fgm family")
    if given == 0:
        v = float(np.asarray(model.m1.cdf(value)))
        return _FgmConditionalModel(model.m2, model.theta, v)
    v = float(np.asarray(model.m2.cdf(value)))
    return _FgmConditionalModel(model.m1, model.theta, v)
