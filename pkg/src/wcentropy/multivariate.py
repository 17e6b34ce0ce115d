"""Joint, conditional, and mutual entropy functionals on tensor grids.

All 2- and 3-dimensional integrals run on per-axis Gauss-Legendre grids
truncated at doubled high quantiles of the marginals (or at a finite support
end).  Derived weights produced by integrating out coordinates are tabulated
on exactly these nodes, so the inequality checks compare both sides on the
same grid and equality cases close to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import special

from .errors import DomainError
from .mvmodels import MultivariateModel
from .quadrature import (DEFAULT_SPEC, IntegralResult, QuadratureSpec,
                         gauss_legendre_rule, integrate_1d, integrate_nd)
from .univariate import EntropyValue, nlogn
from .weights import WeightFunction

__all__ = [
    "MVWeight", "DerivedWeight", "GridContext", "joint_wcre", "joint_wce",
    "conditional_wcre", "mutual_wcre", "derived_weight",
    "independent_decomposition", "gaussian_alpha_star", "gaussian_rho",
    "grid_wcre_1d",
]


class MVWeight:
    """Weight on the orthant: a constant, a product of 1-D weights, or a
    grid tabulation (for derived weights)."""

    def __init__(self, kind: str, **params):
        self.kind = kind
        self.params = params

    @classmethod
    def constant(cls, c: float, n: int) -> "MVWeight":
        if c < 0:
            raise DomainError("constant weight must be nonnegative")
        return cls("constant", c=float(c), n=n)

    @classmethod
    def product(cls, factors: Sequence[WeightFunction]) -> "MVWeight":
        return cls("product", factors=list(factors))

    @property
    def n(self) -> int:
        if self.kind == "constant":
            return self.params["n"]
        return len(self.params["factors"])

    def factor(self, i: int) -> WeightFunction:
        """The i-th univariate factor (constants factor into one c and ones)."""
        if self.kind == "constant":
            return (WeightFunction.constant(self.params["c"]) if i == 0
                    else WeightFunction.constant(1.0))
        return self.params["factors"][i]

    def on_mesh(self, nodes: Sequence[np.ndarray]) -> np.ndarray:
        shape = tuple(len(a) for a in nodes)
        if self.kind == "constant":
            return np.full(shape, self.params["c"])
        out = np.ones(shape)
        for i, (f, ax) in enumerate(zip(self.params["factors"], nodes)):
            vals = np.asarray(f(ax), dtype=float)
            out = out * vals.reshape([-1 if k == i else 1 for k in range(len(nodes))])
        return out

    def scaled(self, factor: float) -> "MVWeight":
        if self.kind == "constant":
            return MVWeight.constant(self.params["c"] * factor, self.params["n"])
        fs = list(self.params["factors"])
        fs[0] = fs[0].scaled(factor)
        return MVWeight.product(fs)


@dataclass(frozen=True)
class DerivedWeight:
    """A weight obtained by integrating the base weight against a conditional
    survival function; tabulated on the surviving axes of the parent grid."""

    axes: Tuple[int, ...]
    nodes: Tuple[np.ndarray, ...]
    values: np.ndarray
    reduction: str

    def to_weight_function(self) -> WeightFunction:
        if len(self.axes) != 1:
            raise DomainError("only 1-D derived weights convert to a "
                              "univariate weight function")
        return WeightFunction.from_grid(self.nodes[0],
                                        np.maximum(self.values, 0.0))


class GridContext:
    """Per-axis Gauss-Legendre nodes/weights and cached survival meshes."""

    def __init__(self, model: MultivariateModel, spec: QuadratureSpec,
                 n_points: Optional[int] = None):
        self.model = model
        self.spec = spec
        n = n_points or spec.grid_points_per_dim
        self.nodes = []
        self.gl_weights = []
        self.cutoffs = []
        for i in range(model.n):
            cut = model.marginal(i).truncation(spec)
            x, w = gauss_legendre_rule(0.0, cut, n)
            self.nodes.append(x)
            self.gl_weights.append(w)
            self.cutoffs.append(cut)
        self._sf_mesh = None
        self._cdf_mesh = None

    @property
    def shape(self):
        return tuple(len(a) for a in self.nodes)

    def mesh_points(self) -> np.ndarray:
        grids = np.meshgrid(*self.nodes, indexing="ij")
        return np.column_stack([g.ravel() for g in grids])

    def sf_mesh(self) -> np.ndarray:
        if self._sf_mesh is None:
            self._sf_mesh = np.asarray(
                self.model.joint_sf(self.mesh_points())).reshape(self.shape)
        return self._sf_mesh

    def cdf_mesh(self) -> np.ndarray:
        if self._cdf_mesh is None:
            self._cdf_mesh = np.asarray(
                self.model.joint_cdf(self.mesh_points())).reshape(self.shape)
        return self._cdf_mesh

    def axis_sf(self, i: int) -> np.ndarray:
        return np.asarray(self.model.marginal(i).sf(self.nodes[i]))

    def pair_sf(self, i: int, j: int) -> np.ndarray:
        """Pair-marginal survival mesh on axes (i, j), i < j orientation kept."""
        xi, xj = np.meshgrid(self.nodes[i], self.nodes[j], indexing="ij")
        pts = np.column_stack([xi.ravel(), xj.ravel()])
        if hasattr(self.model, "pair_sf"):
            vals = self.model.pair_sf(pts, i, j)
        else:
            vals = self.model.sub_sf(pts, (i, j))
        return np.asarray(vals).reshape(len(self.nodes[i]), len(self.nodes[j]))

    def contract(self, values: np.ndarray) -> float:
        out = values
        for ax in range(len(self.nodes) - 1, -1, -1):
            out = np.tensordot(out, self.gl_weights[ax], axes=([ax], [0]))
        return float(out)

    def broadcast_axis(self, arr: np.ndarray, axis: int) -> np.ndarray:
        shape = [1] * len(self.nodes)
        shape[axis] = -1
        return arr.reshape(shape)


def _log_ratio_nlogn(sf: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """-sf * log(sf / ref) with zero contributions where sf vanishes."""
    out = np.zeros_like(sf)
    mask = (sf > 0.0) & (ref > 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out[mask] = -sf[mask] * (np.log(sf[mask]) - np.log(ref[mask]))
    return out


def _grid_entropy_value(model, weight, spec, n_points, use_cdf) -> EntropyValue:
    def compute(npts):
        ctx = GridContext(model, spec, npts)
        prob = ctx.cdf_mesh() if use_cdf else ctx.sf_mesh()
        w = weight.on_mesh(ctx.nodes)
        return ctx.contract(w * nlogn(prob)), ctx

    n = n_points or spec.grid_points_per_dim
    v_full, ctx = compute(n)
    v_half, _ = compute(max(n // 2, 8))
    res = IntegralResult(v_full, abs(v_full - v_half), n,
                         max(ctx.cutoffs))
    v = 0.0 if -1e-10 < v_full < 0.0 else v_full
    return EntropyValue(v, res, improper_model=model.improper)


def joint_wcre(model: MultivariateModel, weight: MVWeight,
               spec: QuadratureSpec = DEFAULT_SPEC,
               n_points: Optional[int] = None) -> EntropyValue:
    """Joint survival-side entropy on the tensor grid, with a half-resolution
    error estimate."""
    return _grid_entropy_value(model, weight, spec, n_points, use_cdf=False)


def joint_wce(model: MultivariateModel, weight: MVWeight,
              spec: QuadratureSpec = DEFAULT_SPEC,
              n_points: Optional[int] = None) -> EntropyValue:
    """Joint distribution-side entropy (joint cdf by inclusion-exclusion or
    direct orthant quadrature, depending on the family)."""
    return _grid_entropy_value(model, weight, spec, n_points, use_cdf=True)


def conditional_wcre(model: MultivariateModel, weight: MVWeight,
                     spec: QuadratureSpec = DEFAULT_SPEC, given: int = 1,
                     n_points: Optional[int] = None) -> float:
    """Conditional entropy of the remaining coordinate(s) given axis ``given``:
    the joint integrand log-ratio is taken against the given axis marginal."""
    ctx = GridContext(model, spec, n_points)
    sf = ctx.sf_mesh()
    ref = ctx.broadcast_axis(ctx.axis_sf(given), given)
    w = weight.on_mesh(ctx.nodes)
    return ctx.contract(w * _log_ratio_nlogn(sf, np.broadcast_to(ref, sf.shape)))


def mutual_wcre(model: MultivariateModel, weight: MVWeight,
                spec: QuadratureSpec = DEFAULT_SPEC,
                n_points: Optional[int] = None) -> float:
    """Divergence of the joint survival function from the product of its
    marginals; zero under independence."""
    ctx = GridContext(model, spec, n_points)
    sf = ctx.sf_mesh()
    prod = np.ones(ctx.shape)
    for i in range(model.n):
        prod = prod * ctx.broadcast_axis(ctx.axis_sf(i), i)
    w = weight.on_mesh(ctx.nodes)
    return -ctx.contract(w * _log_ratio_nlogn(sf, prod))


def derived_weight(model: MultivariateModel, weight: MVWeight, reduction,
                   spec: QuadratureSpec = DEFAULT_SPEC,
                   n_points: Optional[int] = None,
                   ctx: Optional[GridContext] = None) -> DerivedWeight:
    """Integrate the weight against a conditional survival function.

    ``reduction`` is one of::

        ("psi_i", i)        keep axis i, integrate the other one (n = 2)
        ("psi_ij", i, j)    keep axes (i, j), integrate the third (n = 3)
        ("psi_i_rest", i)   keep axis i, integrate the other two (n = 3)

    The conditional survival function is the ratio of the joint mesh to the
    kept-axes marginal mesh; nodes beyond the marginal support get weight 0.
    """
    if ctx is None:
        ctx = GridContext(model, spec, n_points)
    sf = ctx.sf_mesh()
    w = weight.on_mesh(ctx.nodes)
    tag = reduction[0]
    if tag == "psi_i":
        if model.n != 2:
            raise DomainError("psi_i reduction applies to bivariate models")
        keep = reduction[1]
        drop = 1 - keep
        denom = ctx.broadcast_axis(ctx.axis_sf(keep), keep)
    elif tag == "psi_ij":
        if model.n != 3:
            raise DomainError("psi_ij reduction applies to trivariate models")
        keep = tuple(reduction[1:3])
        (drop,) = set(range(3)) - set(keep)
        pair = ctx.pair_sf(*sorted(keep))
        shape = [1, 1, 1]
        shape[sorted(keep)[0]] = pair.shape[0]
        shape[sorted(keep)[1]] = pair.shape[1]
        denom = pair.reshape(shape)
    elif tag == "psi_i_rest":
        keep = reduction[1]
        if model.n != 3:
            raise DomainError("psi_i_rest reduction applies to trivariate models")
        drop = tuple(sorted(set(range(3)) - {keep}))
        denom = ctx.broadcast_axis(ctx.axis_sf(keep), keep)
    else:
        raise DomainError(f"unknown reduction {reduction!r}")

    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(np.broadcast_to(denom, sf.shape) > 0.0,
                        sf / np.broadcast_to(denom, sf.shape), 0.0)
    integrand = w * cond
    if tag == "psi_i":
        vals = np.tensordot(integrand, ctx.gl_weights[drop], axes=([drop], [0]))
        return DerivedWeight((keep,), (ctx.nodes[keep],), vals, tag)
    if tag == "psi_ij":
        vals = np.tensordot(integrand, ctx.gl_weights[drop], axes=([drop], [0]))
        keep_sorted = tuple(sorted(keep))
        if keep != keep_sorted:
            vals = vals.T
            keep = keep_sorted
        return DerivedWeight(tuple(keep),
                             tuple(ctx.nodes[k] for k in keep), vals, tag)
    d0, d1 = drop
    vals = np.tensordot(integrand, ctx.gl_weights[d1], axes=([d1], [0]))
    vals = np.tensordot(vals, ctx.gl_weights[d0], axes=([d0], [0]))
    return DerivedWeight((keep,), (ctx.nodes[keep],), vals, tag)


def grid_wcre_1d(sf_values: np.ndarray, weight_values: np.ndarray,
                 gl_weights: np.ndarray) -> float:
    """Survival entropy of one axis by the shared Gauss-Legendre rule."""
    return float(np.sum(gl_weights * weight_values * nlogn(sf_values)))


def grid_wcre_2d(sf_values: np.ndarray, weight_values: np.ndarray,
                 gl_i: np.ndarray, gl_j: np.ndarray) -> float:
    """Bivariate survival entropy on a shared mesh."""
    return float(np.einsum("i,j,ij->", gl_i, gl_j,
                           weight_values * nlogn(sf_values)))


def grid_conditional_wcre_2d(sf_pair: np.ndarray, sf_given: np.ndarray,
                             weight_values: np.ndarray, gl_i: np.ndarray,
                             gl_j: np.ndarray, given_axis: int) -> float:
    """Conditional entropy of a pair mesh given one axis marginal."""
    ref = sf_given.reshape((1, -1) if given_axis == 1 else (-1, 1))
    vals = weight_values * _log_ratio_nlogn(sf_pair,
                                            np.broadcast_to(ref, sf_pair.shape))
    return float(np.einsum("i,j,ij->", gl_i, gl_j, vals))


def grid_mutual_wcre_2d(sf_pair: np.ndarray, sf_i: np.ndarray,
                        sf_j: np.ndarray, weight_values: np.ndarray,
                        gl_i: np.ndarray, gl_j: np.ndarray) -> float:
    """Mutual entropy of a pair mesh against the product of its marginals."""
    prod = np.outer(sf_i, sf_j)
    vals = weight_values * _log_ratio_nlogn(sf_pair, prod)
    return -float(np.einsum("i,j,ij->", gl_i, gl_j, vals))


def independent_decomposition(model: MultivariateModel, weight: MVWeight,
                              spec: QuadratureSpec = DEFAULT_SPEC,
                              n_points: Optional[int] = None):
    """Decompose the joint entropy of an independent product with a product
    weight into per-coordinate terms.

    parts[i] = prod_{j != i} (E[psi_j(X_j)] - psi_j(0)) * wcre(X_i, phi_i);
    the returned total is their sum and must match the joint grid value.
    """
    from .univariate import wcre as wcre_1d

    if model.family != "independent_product":
        raise DomainError("decomposition applies to independent products")
    n = model.n
    factors = [weight.factor(i) for i in range(n)]
    psi_means = []
    for i in range(n):
        mi = model.marginal(i)
        phi_i = factors[i]
        psi_means.append(mi.expect(lambda x: phi_i.psi(x), spec)
                         - phi_i.psi(0.0))
    parts = []
    for i in range(n):
        cross = 1.0
        for j in range(n):
            if j != i:
                cross *= psi_means[j]
        e_i = wcre_1d(model.marginal(i), factors[i], spec).value
        parts.append(cross * e_i)
    return float(sum(parts)), parts


def gaussian_alpha_star(mu, cov, x, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Unnormalized Gaussian orthant integral from x to infinity, by direct
    quadrature of exp(-(t-mu)' C^{-1} (t-mu) / 2)."""
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = mu.size
    if cov.shape != (n, n) or x.size != n:
        raise DomainError("dimension mismatch")
    if n > 3:
        raise DomainError("supported dimensions: 1..3")
    prec = np.linalg.inv(cov)
    sd = np.sqrt(np.diag(cov))
    z = float(special.ndtri(1.0 - spec.tail_mass))
    his = mu + 2.0 * z * sd
    if n == 1:
        if x[0] >= his[0]:
            return 0.0
        res = integrate_1d(
            lambda t: math.exp(-0.5 * (t - mu[0]) ** 2 * prec[0, 0]),
            float(x[0]), float(his[0]), spec)
        return res.value

    def integrand(pts):
        d = pts - mu
        q = np.einsum("ki,ij,kj->k", d, prec, d)
        return np.exp(-0.5 * q)

    box = [(float(x[i]), float(his[i])) for i in range(n)]
    for lo, hi in box:
        if lo >= hi:
            return 0.0
    res = integrate_nd(integrand, box, spec)
    return res.value


def gaussian_rho(mu, cov, x, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Gaussian survival probability at x: the normalized orthant integral."""
    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    n = cov.shape[0]
    alpha = gaussian_alpha_star(mu, cov, x, spec)
    det = float(np.linalg.det(cov))
    return (2.0 * math.pi) ** (-n / 2.0) * det ** (-0.5) * alpha
