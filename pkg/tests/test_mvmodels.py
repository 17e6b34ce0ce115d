import itertools
import math

import numpy as np
import pytest
import scipy.stats as st

from wcentropy.errors import DomainError
from wcentropy.models import Exponential, Uniform
from wcentropy.mvmodels import (FgmBivariate, FgmMarkovChain, FgmTrivariate,
                                GaussianMv, IndependentProduct, PairMarginal,
                                bvn_cdf, bvn_sf, fgm_conditional)
from wcentropy.rng import philox


def test_bvn_against_scipy():
    rng = np.random.default_rng(3)
    for _ in range(20):
        rho = rng.uniform(-0.95, 0.95)
        h, k = rng.uniform(-2.5, 2.5, 2)
        ref = st.multivariate_normal(mean=[0, 0],
                                     cov=[[1, rho], [rho, 1]]).cdf([h, k])
        assert bvn_cdf(h, k, rho) == pytest.approx(ref, abs=1e-16 + 1e-16 + 5e-14)


def test_bvn_sf_orthant():
    assert bvn_sf(0.0, 0.0, 0.0) == pytest.approx(0.25, abs=1e-12)
    assert bvn_sf(0.0, 0.0, 0.5) == pytest.approx(
        0.25 + math.asin(0.5) / (2 * math.pi), abs=1e-12)


MODELS = [
    IndependentProduct([Exponential(1.0), Uniform(0.0, 1.0)]),
    FgmBivariate(0.6, Uniform(0.0, 1.0), Exponential(2.0)),
    FgmTrivariate(0.3, 0.2, 0.3, [Uniform(0.0, 1.0), Exponential(1.0),
                                  Uniform(0.0, 2.0)]),
    FgmMarkovChain(0.4, 0.4, [Uniform(0.0, 1.0), Uniform(0.0, 1.0),
                              Exponential(1.0)]),
]


@pytest.mark.parametrize("m", MODELS, ids=lambda m: m.family)
def test_joint_sf_monotone_and_bounded(m):
    rngs = [np.linspace(0.0, float(np.asarray(m.marginal(i).quantile(0.99))),
                        9) for i in range(m.n)]
    pts = np.array(list(itertools.product(*rngs)))
    sf = np.asarray(m.joint_sf(pts)).reshape([9] * m.n)
    assert sf.max() <= 1.0 + 1e-12
    assert float(m.joint_sf(np.zeros((1, m.n)))[0]) <= 1.0 + 1e-12
    for ax in range(m.n):
        assert np.all(np.diff(sf, axis=ax) <= 1e-12)


@pytest.mark.parametrize("m", MODELS, ids=lambda m: m.family)
def test_marginal_consistency_at_zero(m):
    # sf of one coordinate with the others pinned at zero recovers the
    # marginal (orthant-supported families)
    for i in range(m.n):
        ts = np.linspace(0.0, float(np.asarray(m.marginal(i).quantile(0.99))),
                         13)
        via_joint = m.sub_sf(ts.reshape(-1, 1), (i,))
        direct = np.asarray(m.marginal(i).sf(ts))
        assert np.allclose(via_joint, direct, atol=1e-10)


def test_fgm_theta_zero_is_product():
    m1, m2 = Uniform(0.0, 1.0), Exponential(1.0)
    fgm = FgmBivariate(0.0, m1, m2)
    prod = IndependentProduct([m1, m2])
    pts = np.random.default_rng(5).uniform(0.0, 1.5, size=(50, 2))
    assert np.allclose(fgm.joint_sf(pts), prod.joint_sf(pts), atol=1e-12)


def test_fgm_theta_validated():
    with pytest.raises(DomainError):
        FgmBivariate(1.5, Uniform(0, 1), Uniform(0, 1))
    with pytest.raises(DomainError):
        FgmTrivariate(0.5, 0.4, 0.3, [Uniform(0, 1)] * 3)
    with pytest.raises(DomainError):
        FgmMarkovChain(0.7, 0.6, [Uniform(0, 1)] * 3)


def test_gaussian_requires_spd():
    with pytest.raises(DomainError):
        GaussianMv([0, 0], [[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(DomainError):
        GaussianMv([0, 0], [[1.0, 0.1], [0.2, 1.0]])


def test_gaussian_bivariate_sf_value():
    g = GaussianMv([0.0, 0.0], [[1.0, 0.0], [0.0, 1.0]])
    assert float(g.joint_sf(np.zeros((1, 2)))[0]) == pytest.approx(0.25,
                                                                   abs=1e-12)


def test_gaussian_trivariate_against_scipy():
    C = np.array([[1.0, 0.3, 0.1], [0.3, 1.2, 0.2], [0.1, 0.2, 0.8]])
    g = GaussianMv([0.5, 0.2, 0.1], C)
    mvn = st.multivariate_normal(mean=[0.5, 0.2, 0.1], cov=C)
    pts = np.array([[0.0, 0.0, 0.0], [0.5, 0.3, 0.4]])
    ours = g.joint_cdf(pts)
    ref = [mvn.cdf(p) for p in pts]
    assert np.allclose(ours, ref, atol=5e-5)


def test_markov_chain_end_pair_independent():
    chain = FgmMarkovChain(0.4, 0.4, [Uniform(0, 1)] * 3)
    pts = np.random.default_rng(2).uniform(0, 1, size=(40, 2))
    pair = chain.pair_sf(pts, 0, 2)
    prod = (np.asarray(chain.marginal(0).sf(pts[:, 0]))
            * np.asarray(chain.marginal(2).sf(pts[:, 1])))
    assert np.allclose(pair, prod, atol=1e-14)


def test_markov_chain_survival_conditional_independence():
    chain = FgmMarkovChain(0.4, 0.4, [Uniform(0, 1)] * 3)
    rng = np.random.default_rng(9)
    pts = rng.uniform(0.05, 0.9, size=(60, 3))
    sf = np.asarray(chain.joint_sf(pts))
    s2 = np.asarray(chain.marginal(1).sf(pts[:, 1]))
    p12 = chain.pair_sf(pts[:, [0, 1]], 0, 1)
    p23 = chain.pair_sf(pts[:, [1, 2]], 1, 2)
    assert np.allclose(sf * s2, p12 * p23, atol=1e-13)


def test_box_masses_nonnegative():
    # the glued chain and the pairwise trivariate family define genuine
    # probability measures at the shipped dependence levels
    grid = np.linspace(0.0, 1.0, 13)
    pts = np.array(list(itertools.product(grid, grid, grid)))
    for m in (FgmMarkovChain(0.4, 0.4, [Uniform(0, 1)] * 3),
              FgmTrivariate(0.3, 0.35, 0.3, [Uniform(0, 1)] * 3)):
        cdf = np.asarray(m.joint_cdf(pts)).reshape(13, 13, 13)
        mass = np.diff(np.diff(np.diff(cdf, axis=0), axis=1), axis=2)
        assert mass.min() > -1e-12


@pytest.mark.parametrize("m", MODELS, ids=lambda m: m.family)
def test_sampler_matches_marginals(m):
    rng = philox(21, 9)
    draws = m.sample(8000, rng)
    assert draws.shape == (8000, m.n)
    for i in range(m.n):
        col = np.sort(draws[:, i])
        grid = np.unique(col)
        cdf = np.asarray(m.marginal(i).cdf(grid))
        ecdf = np.searchsorted(col, grid, side="right") / col.size
        assert np.max(np.abs(ecdf - cdf)) < 1.9495 / math.sqrt(col.size) + 1e-3


def test_fgm_sampler_dependence_sign():
    fgm = FgmBivariate(0.9, Uniform(0, 1), Uniform(0, 1))
    draws = fgm.sample(20000, philox(4, 0))
    corr = np.corrcoef(draws[:, 0], draws[:, 1])[0, 1]
    assert corr > 0.1  # FGM theta=0.9 has positive correlation ~ theta/3


def test_fgm_exact_conditional_model():
    fgm = FgmBivariate(0.5, Uniform(0, 1), Uniform(0, 1))
    cond = fgm_conditional(fgm, given=1, value=0.25)
    xs = np.linspace(0.01, 0.99, 21)
    # oracle: sf(x | Y = y) = (1-u) (1 - theta (1-2v) u) for uniforms
    v = 0.25
    oracle = (1 - xs) * (1 - 0.5 * (1 - 2 * v) * xs)
    assert np.allclose(np.asarray(cond.sf(xs)), oracle, atol=1e-12)
    # density integrates to one
    from wcentropy.quadrature import integrate_1d, QuadratureSpec
    total = integrate_1d(lambda x: float(np.asarray(cond.pdf(x))), 0.0, 1.0,
                         QuadratureSpec()).value
    assert total == pytest.approx(1.0, abs=1e-10)
    for q in (0.2, 0.5, 0.9):
        x = float(np.asarray(cond.quantile(q)))
        assert float(np.asarray(cond.cdf(x))) == pytest.approx(q, abs=1e-9)


def test_pair_marginal_wrapper():
    tri = FgmTrivariate(0.3, 0.2, 0.3, [Uniform(0, 1)] * 3)
    pm = PairMarginal(tri, 0, 2)
    pts = np.random.default_rng(1).uniform(0, 1, size=(20, 2))
    assert np.allclose(pm.joint_sf(pts), tri.pair_sf(pts, 0, 2), atol=1e-14)
