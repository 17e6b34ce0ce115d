"""The shipped default catalog: every registered check with passing, equality,
and hypothesis-violating instances.

Instances are plain JSON-serializable documents.  Checks whose hypothesis is
structurally signed (the conditional-entropy deficit, kernel normalization)
have no wrong-sign instance because none exists; every other hypothesis-
bearing check includes one.
"""

from __future__ import annotations

from typing import List

from .harness import CheckInstance

# model documents ----------------------------------------------------------

EXP1 = {"family": "exponential", "lambda": 1.0}
EXP2 = {"family": "exponential", "lambda": 2.0}
EXP3 = {"family": "exponential", "lambda": 3.0}
U01 = {"family": "uniform", "a": 0.0, "b": 1.0}
U02 = {"family": "uniform", "a": 0.0, "b": 2.0}
WEI12 = {"family": "weibull", "lambda": 1.0, "q": 2.0}
GAM21 = {"family": "gamma", "k": 2.0, "theta": 1.0}
GAM2H = {"family": "gamma", "k": 2.0, "theta": 0.5}
GAUSS = {"family": "gaussian", "mu": 4.0, "sigma": 0.5}

CONST = {"kind": "constant", "c": 1.0}
POWER1 = {"kind": "power", "a": 1.0}
EXPW = {"kind": "exponential", "r": 1.0}

FGM_POS = {"family": "fgm", "theta": 0.9, "marginals": [U01, U01]}
FGM_NEG = {"family": "fgm", "theta": -0.9, "marginals": [U01, U01]}
FGM_HALF = {"family": "fgm", "theta": 0.5, "marginals": [U01, U01]}
PROD_EXP = {"family": "independent_product", "components": [EXP1, EXP1]}
PROD_MIX = {"family": "independent_product", "components": [EXP1, EXP2]}
PROD_3 = {"family": "independent_product", "components": [EXP1, EXP2, WEI12]}
CHAIN = {"family": "fgm_markov", "theta12": 0.4, "theta23": 0.4,
         "marginals": [U01, U01, U01]}
CHAIN_NO12 = {"family": "fgm_markov", "theta12": 0.0, "theta23": 0.4,
              "marginals": [U01, U01, U01]}
CHAIN_NO23 = {"family": "fgm_markov", "theta12": 0.4, "theta23": 0.0,
              "marginals": [U01, U01, U01]}
CHAIN_NEG23 = {"family": "fgm_markov", "theta12": 0.4, "theta23": -0.4,
               "marginals": [U01, U01, U01]}
CHAIN_NEG12 = {"family": "fgm_markov", "theta12": -0.4, "theta23": 0.4,
               "marginals": [U01, U01, U01]}
FGM3 = {"family": "fgm3", "theta12": 0.3, "theta13": 0.35, "theta23": 0.3,
        "marginals": [U01, U01, U01]}
FGM3_NEG13 = {"family": "fgm3", "theta12": 0.0, "theta13": -0.4,
              "theta23": 0.0, "marginals": [U01, U01, U01]}
FGM3_NEG12 = {"family": "fgm3", "theta12": -0.3, "theta13": 0.0,
              "theta23": 0.3, "marginals": [U01, U01, U01]}

# a weight that dies before the first marginal's support starts, making the
# conditional survival ratio identically one wherever the weight is alive
FADE_W = {"kind": "tabulated", "knots": [[0.0, 1.0], [4.0, 1.0], [5.0, 0.0]]}
FAR_UNIFORM = {"family": "uniform", "a": 8.0, "b": 9.0}
PROD_FAR = {"family": "independent_product", "components": [FAR_UNIFORM, U01]}

GRID2 = {"grid_points_per_dim": 192}
GRID3 = {"grid_points_per_dim": 64}
GRID_DPI = {"grid_points_per_dim": 96}

WEIBULL_LADDER = [
    {"family": "weibull", "lambda": 1.0, "q": 1.5},
    {"family": "weibull", "lambda": 1.0, "q": 1.25},
    {"family": "weibull", "lambda": 1.0, "q": 1.125},
    {"family": "weibull", "lambda": 1.0, "q": 1.0625},
]

# gamma shape ratio-matched to the (q = 2, constant-weight) target so one
# scale parameter can hit both cumulative moments
GAMMA_MATCHED = {"family": "gamma", "k": 3.86552, "theta": 1.0}
WEI_WRONG_SHAPE = {"family": "weibull", "lambda": 1.0, "q": 3.0}

SPD_A = [[1.0, 0.3], [0.3, 1.0]]
SPD_B = [[1.2, 0.2], [0.2, 0.8]]
SPD_C = [[0.9, -0.1], [-0.1, 1.1]]


def default_catalog() -> List[CheckInstance]:
    """One or more instances for every implemented check."""
    c = CheckInstance
    return [
        # relative-entropy nonnegativity
        c("GIBBS", "exp1-vs-exp2", (EXP1, EXP2), CONST),
        c("GIBBS", "weibull-vs-gamma", (WEI12, GAM21), CONST),
        c("GIBBS", "equality", (EXP1, EXP1), CONST),
        c("GIBBS", "wrong-sign", (EXP2, EXP1), CONST),
        # uniform-comparison estimates
        c("UNIFORM_EST_DISCRETE", "skewed", (), CONST,
          {"pmf": [0.4, 0.3, 0.2, 0.1]}),
        c("UNIFORM_EST_DISCRETE", "uniform-equality", (), CONST,
          {"pmf": [0.25, 0.25, 0.25, 0.25]}),
        c("UNIFORM_EST_DISCRETE", "wrong-sign", (), CONST,
          {"pmf": [0.0, 0.0, 1.0], "beta": 1.0}),
        c("UNIFORM_EST_CONT", "matched-equality", (U01,), CONST,
          {"alpha": 1.0, "beta": 1.0}),
        c("UNIFORM_EST_CONT", "strict", (U01,), CONST,
          {"alpha": 0.75, "beta": 0.5}),
        c("UNIFORM_EST_CONT", "wrong-sign", (U01,), CONST,
          {"alpha": 1.2, "beta": 0.8}),
        # conditional entropy nonnegativity (structural hypothesis)
        c("COND_NONNEG", "fgm-bivariate", (FGM_POS,), CONST, spec=GRID2),
        c("COND_NONNEG", "trivariate-chain", (CHAIN,), CONST, spec=GRID3),
        c("COND_NONNEG", "degenerate-equality", (PROD_FAR,),
          {"kind": "product", "factors": [FADE_W, CONST]}, spec=GRID2),
        # sub-additivity family
        c("SUBADD", "fgm-positive", (FGM_POS,), CONST, spec=GRID2),
        c("SUBADD", "independent-equality", (PROD_EXP,), CONST, spec=GRID2),
        c("SUBADD", "wrong-sign", (FGM_NEG,), CONST, spec=GRID2),
        c("SUBADD_CHAIN", "fgm3", (FGM3,), CONST, spec=GRID3),
        c("SUBADD_CHAIN", "pair-independent-equality", (CHAIN_NO12,), CONST,
          spec=GRID3),
        c("SUBADD_CHAIN", "wrong-sign", (FGM3_NEG12,), CONST, spec=GRID3),
        c("STRONG_SUBADD", "fgm3", (FGM3,), CONST, spec=GRID3),
        c("STRONG_SUBADD", "chain-equality", (CHAIN,), CONST, spec=GRID3),
        c("STRONG_SUBADD", "wrong-sign", (FGM3_NEG13,), CONST, spec=GRID3),
        # convexity / data processing
        c("REL_CONVEX", "mixed-families", (EXP1, EXP3, WEI12, GAM21), CONST,
          {"lambda1": 0.3}),
        c("REL_CONVEX", "equality", (EXP1, EXP3, EXP1, EXP3), CONST,
          {"lambda1": 0.5}),
        c("REL_DPI", "gaussian-smoothing", (EXP1, EXP3), CONST,
          {"kernel": {"type": "gaussian_smoothing", "bandwidth": 0.5}},
          spec=GRID_DPI),
        c("COND_DPI", "chain", (CHAIN,), CONST, spec=GRID3),
        c("COND_DPI", "ends-independent-equality", (CHAIN_NO23,), CONST,
          spec=GRID3),
        c("COND_DPI", "wrong-sign", (CHAIN_NEG23,), CONST, spec=GRID3),
        c("MUTUAL_DPI", "chain", (CHAIN,), CONST, spec=GRID3),
        c("MUTUAL_DPI", "pair-independent-equality", (CHAIN_NO12,), CONST,
          spec=GRID3),
        c("MUTUAL_DPI", "wrong-sign", (CHAIN_NEG12,), CONST, spec=GRID3),
        # concavity of the survival-side functional
        c("CONCAVITY", "exponential-mixture", (EXP1, EXP3), CONST),
        c("CONCAVITY", "weight-condition-violated", (EXP1, EXP3), POWER1),
        # finiteness / convergence
        c("FINITENESS", "certificate-consistency", (EXP1,), CONST,
          {"p": 2.0, "alpha": 0.9, "a": 1.0,
           "heavy_weight": {"kind": "exponential", "r": -2.0}}),
        c("CONVERGENCE", "weibull-ladder", tuple([EXP1] + WEIBULL_LADDER),
          CONST),
        # sums and decompositions
        c("SUM_INDEP", "exp-plus-exp", (EXP1, EXP1), CONST),
        c("SUM_INDEP", "point-mass-equality",
          (EXP1, {"family": "empirical", "sample": [0.0]}), CONST),
        c("DECOMP", "exp-product", (PROD_EXP,), CONST, spec=GRID2),
        c("DECOMP", "mixed-rates", (PROD_MIX,), CONST, spec=GRID2),
        c("DECOMP", "trivariate", (PROD_3,), CONST, spec=GRID3),
        # entropy lower bounds
        c("ENTROPY_LB", "exp-const", (EXP1,), CONST),
        c("ENTROPY_LB", "uniform-power", (U01,), POWER1),
        c("ENTROPY_LB", "conditional-fgm",
          ({"family": "fgm", "theta": 0.5, "marginals": [EXP1, U01]},),
          {"kind": "product", "factors": [CONST, CONST]},
          {"conditional": True}),
        c("CROSS_LB", "fgm-het", (FGM_HALF,), {"kind": "constant", "c": 1.2},
          spec={"grid_points_per_dim": 128}),
        c("CROSS_LB", "weight-below-one", (FGM_HALF,),
          {"kind": "constant", "c": 0.5}, spec=GRID3),
        c("WE_RELATION", "bounded-weight", (EXP1,), EXPW),
        c("WE_RELATION", "unbounded-weight", (EXP1,), CONST),
        c("GINI_LB", "exp", (EXP1,), CONST, {"n_mc": 100000}),
        c("GINI_LB", "uniform", (U01,), CONST, {"n_mc": 100000}),
        c("GINI_LB", "point-mass", ({"family": "empirical", "sample": [2.0]},),
          CONST, {"n_mc": 100000}),
        c("SURV_IDENTITY", "exp-const", (EXP1,), CONST),
        c("SURV_IDENTITY", "exp-power", (EXP1,), POWER1),
        c("SURV_IDENTITY", "uniform-const", (U01,), CONST),
        c("FENCHEL_UB", "point-mass", ({"family": "empirical",
                                        "sample": [2.0]},), CONST),
        c("FENCHEL_UB", "exp", (EXP1,), CONST),
        c("FENCHEL_UB", "uniform", (U01,), CONST),
        c("LOGPLUS", "exp", (EXP1,), CONST),
        c("LOGPLUS", "uniform-degenerate", (U01,), CONST),
        c("LOGPLUS", "point-mass-below", ({"family": "empirical",
                                           "sample": [0.5]},), CONST),
        # maximizers
        c("MAX_GENERIC", "uniform-vs-exp", (U02, EXP1), CONST),
        c("MAX_GENERIC", "wrong-sign", (U02, EXP2), CONST),
        c("MAX_GAUSS", "self-equality", (GAUSS,), CONST),
        c("MAX_GAUSS", "uniform-power", (U02,), POWER1),
        c("MAX_GAUSS", "wrong-sign", (U02,), CONST),
        c("MAX_EXP", "uniform", (U02,), CONST),
        c("MAX_EXP", "weibull", (WEI12,), CONST),
        c("MAX_EXP", "gamma", (GAM2H,), CONST),
        c("MAX_EXP", "self-equality", (EXP2,), CONST),
        c("MAX_EXP", "wrong-sign", ({"family": "gamma", "k": 0.5,
                                     "theta": 2.0},), CONST),
        c("MAX_WEIBULL", "self-equality", ({"family": "weibull",
                                            "lambda": 2.0, "q": 2.0}, WEI12),
          CONST, {"p": 2.0}),
        c("MAX_WEIBULL", "gamma-matched", (GAMMA_MATCHED, WEI12), CONST,
          {"p": 2.0}),
        c("MAX_WEIBULL", "uniform-skip", (U01, WEI12), CONST, {"p": 2.0}),
        c("MAX_WEIBULL", "wrong-shape-skip", (WEI_WRONG_SHAPE, WEI12), CONST,
          {"p": 2.0}),
        c("MAX_WEIBULL", "weight-above-one", (GAMMA_MATCHED, WEI12),
          {"kind": "constant", "c": 2.0}, {"p": 2.0}),
        # matrix inequalities at the fixed evaluation point
        c("KY_FAN", "identical-equality", (), CONST,
          {"cov1": SPD_A, "cov2": SPD_A, "lambda1": 0.5}, spec=GRID_DPI),
        c("KY_FAN", "degenerate-mixture", (), CONST,
          {"cov1": SPD_B, "cov2": SPD_C, "lambda1": 1.0}, spec=GRID_DPI),
        c("KY_FAN", "generic-filtered", (), CONST,
          {"cov1": SPD_B, "cov2": SPD_C, "lambda1": 0.4}, spec=GRID_DPI),
        c("HADAMARD", "positive-correlation", (), CONST,
          {"cov": [[1.0, 0.5], [0.5, 1.0]]}, spec=GRID_DPI),
        c("HADAMARD", "diagonal-equality", (), CONST,
          {"cov": [[1.0, 0.0], [0.0, 0.7]]}, spec=GRID_DPI),
        c("HADAMARD", "wrong-sign", (), CONST,
          {"cov": [[1.0, -0.5], [-0.5, 1.0]]}, spec=GRID_DPI),
        c("MARGINAL_SUBADD", "fgm3", (FGM3,), CONST, spec=GRID3),
        c("MARGINAL_SUBADD", "bivariate-fgm", (FGM_POS,), CONST, spec=GRID2),
        c("MARGINAL_SUBADD", "wrong-sign", (FGM3_NEG13,), CONST, spec=GRID3),
    ]
