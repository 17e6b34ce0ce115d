import math

import numpy as np
import pytest

from wcentropy.errors import DomainError, SupportError
from wcentropy.models import (Empirical, Exponential, Gamma, Gaussian,
                              Uniform, Weibull, point_mass)
from wcentropy.quadrature import QuadratureSpec, integrate_1d
from wcentropy.univariate import (alpha_phi, convolution_model,
                                  family_closed_form_wcre,
                                  fenchel_upper_bound, finiteness_certificate,
                                  gini_psi_statistic, log_plus_moment_bound,
                                  log_weight_constant, past_integral_mean,
                                  relative_wcre, residual_integral_mean,
                                  shannon_entropy, shifted_weight,
                                  survival_identity_value, wce, wce_via_mean,
                                  wcre, wcre_via_mean)
from wcentropy.weights import WeightFunction

SPEC = QuadratureSpec()
CONST = WeightFunction.constant(1.0)
POWER1 = WeightFunction.power(1.0)
EULER_GAMMA = 0.5772156649015329


class TestSurvivalEntropy:
    def test_exponential_constant(self):
        # antiderivative oracle: lam * int x e^{-lam x} = 1/lam at lam = 1
        assert wcre(Exponential(1.0), CONST, SPEC).value == pytest.approx(
            1.0, abs=1e-9)

    def test_exponential_power(self):
        # oracle: int x * x e^{-x} = Gamma(3) = 2
        assert wcre(Exponential(1.0), POWER1, SPEC).value == pytest.approx(
            2.0, abs=1e-9)

    def test_uniform_constant(self):
        # antiderivative oracle: - int_0^1 (1-x) log(1-x) dx = 1/4
        assert wcre(Uniform(0.0, 1.0), CONST, SPEC).value == pytest.approx(
            0.25, abs=1e-9)

    def test_point_mass_any_weight(self):
        assert wcre(point_mass(3.0), POWER1, SPEC).value == 0.0

    def test_nonnegative_and_weight_linear(self):
        for m in (Exponential(2.0), Uniform(0.0, 2.0), Weibull(1.0, 2.0),
                  Gamma(2.0, 1.0)):
            base = wcre(m, CONST, SPEC).value
            assert base >= 0.0
            for c in (0.5, 2.0, 10.0):
                scaled = wcre(m, WeightFunction.constant(c), SPEC).value
                assert scaled == pytest.approx(c * base, rel=1e-8)


class TestDistributionEntropy:
    def test_uniform_constant(self):
        # oracle: - int_0^1 x log x dx = 1/4
        assert wce(Uniform(0.0, 1.0), CONST, SPEC).value == pytest.approx(
            0.25, abs=1e-9)

    def test_exponential_constant(self):
        # series oracle: - int (1 - e^-x) log(1 - e^-x) dx = pi^2/6 - 1
        assert wce(Exponential(1.0), CONST, SPEC).value == pytest.approx(
            math.pi ** 2 / 6.0 - 1.0, abs=1e-6)

    def test_point_mass(self):
        assert wce(point_mass(1.0), CONST, SPEC).value == 0.0


class TestIntegralMeans:
    def test_exponential_at_zero(self):
        assert residual_integral_mean(Exponential(1.0), CONST, 0.0, SPEC) \
            == pytest.approx(1.0, abs=1e-9)

    def test_memorylessness_makes_it_constant(self):
        m = Exponential(2.0)
        for t in (0.0, 1.0, 3.0):
            assert residual_integral_mean(m, CONST, t, SPEC) \
                == pytest.approx(0.5, abs=1e-8)

    def test_zero_weight(self):
        zero = WeightFunction.constant(0.0)
        assert residual_integral_mean(Exponential(1.0), zero, 1.0, SPEC) == 0.0
        assert past_integral_mean(Uniform(0, 1), zero, 0.5, SPEC) == 0.0

    def test_past_uniform(self):
        # oracle: int_0^1 x dx = 1/2 and (1/F(1/2)) int_0^{1/2} x dx = 1/4
        assert past_integral_mean(Uniform(0, 1), CONST, 1.0, SPEC) \
            == pytest.approx(0.5, abs=1e-10)
        assert past_integral_mean(Uniform(0, 1), CONST, 0.5, SPEC) \
            == pytest.approx(0.25, abs=1e-10)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            residual_integral_mean(Uniform(0, 1), CONST, 2.0, SPEC)
        with pytest.raises(DomainError):
            past_integral_mean(Exponential(1.0), CONST, 0.0, SPEC)


# the representation-identity matrix: >= 12 family x weight combinations;
# the improper Gaussian sits far enough from zero that its half-line mass
# deficit is below the identity tolerance
MATRIX_MODELS = [Exponential(1.0), Uniform(0.0, 1.0), Weibull(1.0, 2.0),
                 Gamma(2.0, 1.0), Gaussian(6.0, 1.0)]
MATRIX_WEIGHTS = [CONST, POWER1, WeightFunction.exponential(0.5)]


@pytest.mark.parametrize("m", MATRIX_MODELS, ids=lambda m: m.family)
@pytest.mark.parametrize("w", MATRIX_WEIGHTS, ids=lambda w: w.kind)
class TestRepresentationIdentities:
    def test_residual_mean_identity(self, m, w):
        assert wcre_via_mean(m, w, SPEC) == pytest.approx(
            wcre(m, w, SPEC).value, abs=1e-6)

    def test_past_mean_identity(self, m, w):
        assert wce_via_mean(m, w, SPEC) == pytest.approx(
            wce(m, w, SPEC).value, abs=1e-6)

    def test_survival_identity(self, m, w):
        assert survival_identity_value(m, w, SPEC) == pytest.approx(
            wcre(m, w, SPEC).value, abs=1e-6)


class TestRelativeEntropy:
    def test_identical_models_vanish(self):
        assert relative_wcre(Exponential(1.0), Exponential(1.0), CONST,
                             SPEC) == pytest.approx(0.0, abs=1e-10)

    def test_exp1_vs_exp2(self):
        # log ratio is x; oracle int x e^{-x} = 1
        assert relative_wcre(Exponential(1.0), Exponential(2.0), CONST,
                             SPEC) == pytest.approx(1.0, abs=1e-8)

    def test_sign_flip_without_hypothesis(self):
        # log ratio is -x; oracle int x e^{-2x} = 1/4
        assert relative_wcre(Exponential(2.0), Exponential(1.0), CONST,
                             SPEC) == pytest.approx(-0.25, abs=1e-8)

    def test_support_violation_names_abscissa(self):
        with pytest.raises(SupportError) as exc:
            relative_wcre(Exponential(1.0), Uniform(0.0, 1.0), CONST, SPEC)
        assert exc.value.abscissa > 1.0


class TestAlphaPhi:
    def test_universal_constant_by_quadrature(self):
        assert log_weight_constant() == pytest.approx(-1.0 - EULER_GAMMA,
                                                      abs=1e-10)

    def test_constant_weight(self):
        expected = math.exp(-1.0 - EULER_GAMMA)
        for m in (Exponential(1.0), Uniform(0.0, 1.0), Gamma(2.0, 1.0)):
            assert alpha_phi(m, CONST, SPEC) == pytest.approx(expected,
                                                              rel=1e-9)

    def test_scaled_constant_shifts_exponent(self):
        base = alpha_phi(Exponential(1.0), CONST, SPEC)
        assert alpha_phi(Exponential(1.0), WeightFunction.constant(3.0),
                         SPEC) == pytest.approx(3.0 * base, rel=1e-9)

    def test_power_weight_exponential(self):
        # E[log X] = -gamma for the unit exponential (quadrature oracle)
        oracle = integrate_1d(lambda x: math.log(x) * math.exp(-x), 1e-300,
                              60.0, SPEC).value
        assert oracle == pytest.approx(-EULER_GAMMA, abs=1e-9)
        assert alpha_phi(Exponential(1.0), POWER1, SPEC) == pytest.approx(
            math.exp(oracle - 1.0 - EULER_GAMMA), rel=1e-8)

    def test_vanishing_weight_returns_zero(self):
        dead = WeightFunction.tabulated([(0.0, 0.0), (10.0, 0.0)])
        assert alpha_phi(Exponential(1.0), dead, SPEC) == 0.0


class TestShannon:
    def test_exponential(self):
        assert shannon_entropy(Exponential(1.0), SPEC) == pytest.approx(
            1.0, abs=1e-9)

    def test_uniforms(self):
        assert shannon_entropy(Uniform(0.0, 1.0), SPEC) == pytest.approx(
            0.0, abs=1e-10)
        assert shannon_entropy(Uniform(0.0, 2.0), SPEC) == pytest.approx(
            math.log(2.0), abs=1e-10)


class TestGiniStatistic:
    def test_exponential_pair_gap(self):
        # mean absolute difference of iid unit exponentials is 1
        stat = gini_psi_statistic(Exponential(1.0), CONST, SPEC,
                                  n_mc=100_000, seed=0)
        assert stat.pair_gap == pytest.approx(1.0, abs=4 * stat.pair_se)

    def test_uniform_pair_gap(self):
        # double-integral oracle: E|U - V| = 1/3
        stat = gini_psi_statistic(Uniform(0.0, 1.0), CONST, SPEC,
                                  n_mc=100_000, seed=1)
        assert stat.pair_gap == pytest.approx(1.0 / 3.0, abs=4 * stat.pair_se)

    def test_point_mass(self):
        stat = gini_psi_statistic(point_mass(2.0), CONST, SPEC, n_mc=2000,
                                  seed=0)
        assert stat.pair_gap == 0.0

    def test_determinism(self):
        a = gini_psi_statistic(Exponential(1.0), CONST, SPEC, n_mc=5000,
                               seed=42)
        b = gini_psi_statistic(Exponential(1.0), CONST, SPEC, n_mc=5000,
                               seed=42)
        assert a == b

    def test_requires_enough_draws(self):
        with pytest.raises(DomainError):
            gini_psi_statistic(Exponential(1.0), CONST, SPEC, n_mc=10)


class TestFenchelBound:
    def test_point_mass_is_four_over_e(self):
        b = fenchel_upper_bound(point_mass(1.0), CONST, SPEC, n_mc=2000)
        assert b.value == pytest.approx(4.0 / math.e, abs=1e-12)

    def test_dominates_entropy(self):
        for m in (Exponential(1.0), Uniform(0.0, 1.0)):
            b = fenchel_upper_bound(m, CONST, SPEC, n_mc=100_000, seed=3)
            assert wcre(m, CONST, SPEC).value <= b.value + 3 * b.standard_error


class TestLogPlusBound:
    def test_exponential(self):
        lhs, rhs = log_plus_moment_bound(Exponential(1.0), CONST, SPEC)
        # oracle (high-precision quadrature): int_1^inf x log x e^{-x} dx
        assert lhs == pytest.approx(0.5872633755669626, abs=1e-7)
        # rhs oracle: 1 + (2/e) log(e * 2/e)
        s = 2.0 / math.e
        assert rhs == pytest.approx(1.0 + s * math.log(math.e * s), abs=1e-7)
        assert lhs <= rhs + 1e-8

    def test_uniform_degenerate(self):
        lhs, rhs = log_plus_moment_bound(Uniform(0.0, 1.0), CONST, SPEC)
        assert lhs == pytest.approx(0.0, abs=1e-12)
        assert rhs == pytest.approx(0.25, abs=1e-8)

    def test_point_mass_below_threshold(self):
        lhs, rhs = log_plus_moment_bound(point_mass(0.5), CONST, SPEC)
        assert lhs == 0.0
        assert lhs <= rhs + 1e-12


class TestConvolution:
    def test_gamma_closed_form(self):
        # sum of two unit exponentials has sf (1+w) e^{-w}
        conv = convolution_model(Exponential(1.0), Exponential(1.0), SPEC)
        for w in (0.0, 1.0, 2.0):
            assert float(np.asarray(conv.sf(w))) == pytest.approx(
                (1 + w) * math.exp(-w), abs=1e-9)

    def test_point_mass_shift_identity(self):
        conv = convolution_model(Exponential(1.0), point_mass(0.0), SPEC)
        for w in (0.3, 1.7):
            assert float(np.asarray(conv.sf(w))) == pytest.approx(
                math.exp(-w), abs=1e-12)

    def test_triangular_midpoint(self):
        conv = convolution_model(Uniform(0.0, 1.0), Uniform(0.0, 1.0), SPEC)
        assert float(np.asarray(conv.sf(1.0))) == pytest.approx(0.5, abs=1e-9)

    def test_point_mass_shifts_even_step_models(self):
        conv = convolution_model(Empirical([1.0, 2.0]), Empirical([1.0]),
                                 SPEC)
        assert float(np.asarray(conv.sf(2.5))) == pytest.approx(0.5)

    def test_rejects_step_model_without_density(self):
        with pytest.raises(DomainError):
            convolution_model(Empirical([1.0, 2.0]), Exponential(1.0), SPEC)


class TestShiftedWeight:
    def test_constant_passthrough(self):
        assert shifted_weight(CONST, Exponential(1.0), SPEC) is CONST

    def test_linear_weight_shifts_by_mean(self):
        # E[x + Y] = x + 1 for the unit exponential
        w = shifted_weight(POWER1, Exponential(1.0), SPEC, x_upper=10.0)
        xs = w.params["xs"]
        assert np.allclose(w.params["ys"], xs + 1.0, atol=1e-8)

    def test_exponential_weight_laplace_transform(self):
        # E[e^{-(x+Y)}] = e^{-x} E[e^{-Y}] = e^{-x} / 2
        w = shifted_weight(WeightFunction.exponential(1.0), Exponential(1.0),
                           SPEC, x_upper=5.0)
        xs = w.params["xs"]
        assert np.allclose(w.params["ys"], np.exp(-xs) / 2.0, atol=1e-9)


class TestFinitenessCertificate:
    def test_convergent_tail(self):
        assert finiteness_certificate(Exponential(1.0), CONST, 2.0, 0.9, 1.0,
                                      SPEC)

    def test_divergent_tail(self):
        assert not finiteness_certificate(Exponential(1.0), CONST, 1.0, 0.5,
                                          1.0, SPEC)

    def test_decaying_weight_always_certifies(self):
        w = WeightFunction.exponential(1.0)
        for p, a_exp in ((1.0, 0.5), (2.0, 0.9), (0.5, 0.0)):
            assert finiteness_certificate(Exponential(1.0), w, p, a_exp, 1.0,
                                          SPEC)

    def test_divergence_detection_round_trip(self):
        growing = WeightFunction.exponential(-2.0)
        ev = wcre(Exponential(1.0), growing, SPEC, certify=True)
        assert ev.finite is False and math.isinf(ev.value)
        ok = wcre(Exponential(1.0), CONST, SPEC, certify=True)
        assert ok.finite is True

    def test_distribution_side_divergence(self):
        # the cdf side decays only like the survival mass, so a growing
        # weight defeats it the same way
        growing = WeightFunction.exponential(-2.0)
        ev = wce(Exponential(1.0), growing, SPEC, certify=True)
        assert ev.finite is False
        assert wce(Exponential(1.0), CONST, SPEC, certify=True).finite is True

    def test_unbounded_psi_at_infinity_rejected(self):
        with pytest.raises(DomainError):
            POWER1.psi(math.inf)


class TestClosedForms:
    def test_exponential_power(self):
        assert family_closed_form_wcre("exponential", {"lambda": 1.0},
                                       POWER1) == pytest.approx(2.0)

    def test_exponential_rate_two(self):
        assert family_closed_form_wcre("exponential", {"lambda": 2.0},
                                       CONST) == pytest.approx(0.5)

    def test_weibull_reduces_to_exponential(self):
        assert family_closed_form_wcre("weibull", {"lambda": 1.0, "q": 1.0},
                                       CONST) == pytest.approx(1.0)

    def test_closed_forms_match_quadrature(self):
        for lam, q in ((1.0, 2.0), (2.0, 1.5), (0.5, 3.0)):
            direct = wcre(Weibull(lam, q), CONST, SPEC).value
            assert family_closed_form_wcre(
                "weibull", {"lambda": lam, "q": q}, CONST) \
                == pytest.approx(direct, rel=1e-8)
