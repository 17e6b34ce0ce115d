import copy

import numpy as np
import pytest

from wcentropy.catalog import default_catalog
from wcentropy.errors import DomainError
from wcentropy.harness import (CHECK_IDS, STUB_IDS, CheckInstance, run_check,
                               run_suite)

EXP1 = {"family": "exponential", "lambda": 1.0}
EXP2 = {"family": "exponential", "lambda": 2.0}
CONST = {"kind": "constant", "c": 1.0}


def test_registry_covers_catalog():
    ids = {inst.check_id for inst in default_catalog()}
    assert ids <= set(CHECK_IDS)
    assert not ids & set(STUB_IDS)


def test_unknown_check_id_rejected():
    with pytest.raises(DomainError):
        run_check(CheckInstance("NOT_A_CHECK"))


def test_stubs_report_unimplemented():
    for cid in STUB_IDS:
        r = run_check(CheckInstance(cid, "stub"))
        assert r.verdict == "UNIMPLEMENTED"
        assert r.lhs is None and r.slack is None
        assert r.notes


def test_gibbs_strict_and_equality():
    strict = run_check(CheckInstance("GIBBS", "", (EXP1, EXP2), CONST))
    assert strict.verdict == "PASS"
    # oracle values: gap 1/2, divergence 1
    assert strict.hypothesis_values[0]["value"] == pytest.approx(0.5,
                                                                 abs=1e-9)
    assert strict.rhs == pytest.approx(1.0, abs=1e-8)
    eq = run_check(CheckInstance("GIBBS", "", (EXP1, EXP1), CONST))
    assert eq.verdict == "PASS" and abs(eq.slack) <= 1e-10


def test_hypothesis_not_met_blocks_conclusion():
    r = run_check(CheckInstance("GIBBS", "", (EXP2, EXP1), CONST))
    assert r.verdict == "HYPOTHESIS_NOT_MET"
    assert not r.hypothesis_met
    assert r.lhs is None and r.rhs is None and r.slack is None


def test_max_exp_catalog_oracle():
    # uniform(0,2) has mean 1, so the surrogate rate is 1; the bound side is
    # the Gamma(2) integral, and the entropy of uniform(0,2) is twice the
    # unit-uniform value by scaling
    r = run_check(CheckInstance("MAX_EXP", "",
                                ({"family": "uniform", "a": 0.0, "b": 2.0},),
                                CONST))
    assert r.verdict == "PASS"
    assert r.lhs == pytest.approx(0.5, abs=1e-8)
    assert r.rhs == pytest.approx(1.0, abs=1e-8)


def test_run_suite_preserves_order_and_is_deterministic():
    instances = [
        CheckInstance("GIBBS", "a", (EXP1, EXP2), CONST),
        CheckInstance("GINI_LB", "b", (EXP1,), CONST, {"n_mc": 5000}),
        CheckInstance("SURV_IDENTITY", "c", (EXP1,), CONST),
    ]
    first = run_suite(instances, parallelism=1)
    second = run_suite(instances, parallelism=3)
    assert [r.label for r in first] == ["a", "b", "c"]
    assert [r.to_json() for r in first] == [r.to_json() for r in second]


def test_duplicate_instance_same_seed_identical():
    inst = CheckInstance("GINI_LB", "dup", (EXP1,), CONST, {"n_mc": 5000},
                         seed=9)
    a, b = run_suite([inst, inst])
    assert a.to_json() == b.to_json()


def test_empty_suite():
    assert run_suite([]) == []


def test_divergent_verdict_surfaces():
    growing = {"kind": "exponential", "r": -2.0}
    ladder = [{"family": "weibull", "lambda": 1.0, "q": 1.5}, EXP2]
    r = run_check(CheckInstance("CONVERGENCE", "diverges",
                                tuple([EXP1] + ladder), growing))
    assert r.verdict == "DIVERGENT"


def test_instance_json_round_trip():
    inst = CheckInstance("SUBADD", "x", ({"family": "fgm", "theta": 0.5,
                                          "marginals": [EXP1, EXP2]},),
                         CONST, {"k": 1}, {"grid_points_per_dim": 64}, 7)
    doc = inst.to_json()
    back = CheckInstance.from_json(doc)
    assert back == inst


def _doubled_weight(doc):
    if doc["kind"] == "constant":
        return {"kind": "constant", "c": 2.0 * doc["c"]}
    if doc["kind"] == "power":
        return {"kind": "scaled_power", "c": 2.0, "a": doc["a"]}
    if doc["kind"] == "scaled_power":
        return {"kind": "scaled_power", "c": 2.0 * doc["c"], "a": doc["a"]}
    if doc["kind"] == "tabulated":
        return {"kind": "tabulated",
                "knots": [[x, 2.0 * y] for x, y in doc["knots"]]}
    if doc["kind"] == "product":
        factors = copy.deepcopy(doc["factors"])
        factors[0] = _doubled_weight(factors[0])
        return {"kind": "product", "factors": factors}
    return None


# checks whose hypotheses cap the weight itself (<= 1 or >= 1) are by design
# not scale-invariant; everything else must keep its verdict when the weight
# doubles, since both sides of the homogeneous inequalities scale together
NON_HOMOGENEOUS = {"MAX_EXP", "MAX_WEIBULL", "CROSS_LB"}


def test_weight_scaling_keeps_verdicts():
    subset = [inst for inst in default_catalog()
              if inst.check_id not in NON_HOMOGENEOUS
              and inst.check_id in {"GIBBS", "SUBADD", "STRONG_SUBADD",
                                    "COND_NONNEG", "MUTUAL_DPI",
                                    "ENTROPY_LB", "GINI_LB", "SURV_IDENTITY",
                                    "MAX_GENERIC", "MAX_GAUSS", "HADAMARD",
                                    "KY_FAN", "DECOMP"}]
    assert len(subset) >= 10
    for inst in subset:
        doubled = _doubled_weight(inst.weight)
        if doubled is None:
            continue
        base = run_check(inst)
        scaled = run_check(CheckInstance(inst.check_id, inst.label,
                                         inst.models, doubled, inst.params,
                                         inst.spec, inst.seed))
        assert scaled.verdict == base.verdict, inst.check_id


def test_suite_aggregates_errors_without_aborting():
    good = CheckInstance("SURV_IDENTITY", "ok", (EXP1,), CONST)
    bad = CheckInstance("UNIFORM_EST_DISCRETE", "too-many", (), CONST,
                        {"pmf": [0.1] * 10})
    reports = run_suite([good, bad, good])
    assert [r.verdict for r in reports] == ["PASS", "ERROR", "PASS"]
    assert "m <= 8" in reports[1].notes[0]


def test_discrete_estimate_size_cap():
    with pytest.raises(DomainError):
        run_check(CheckInstance("UNIFORM_EST_DISCRETE", "", (), CONST,
                                {"pmf": [1.0 / 9.0] * 9}))


def test_linear_majorant_positivity_rejected():
    with pytest.raises(DomainError):
        run_check(CheckInstance(
            "UNIFORM_EST_CONT", "",
            ({"family": "uniform", "a": 0.0, "b": 1.0},), CONST,
            {"alpha": 0.5, "beta": 1.0}))


def test_rel_dpi_grid_matrix_kernel():
    grid = np.linspace(0.0, 8.0, 33)
    cell = np.zeros_like(grid)
    cell[1:] += 0.5 * np.diff(grid)
    cell[:-1] += 0.5 * np.diff(grid)
    k = np.exp(-0.5 * ((grid[None, :] - grid[:, None]) / 0.7) ** 2)
    k = k / (k @ cell)[:, None]
    r = run_check(CheckInstance(
        "REL_DPI", "grid", (EXP1, {"family": "exponential", "lambda": 3.0}),
        CONST, {"kernel": {"type": "grid_matrix", "grid": grid.tolist(),
                           "matrix": k.tolist()}}))
    assert r.verdict == "PASS"
    assert r.slack >= 0.0


def test_cond_nonneg_reports_identity_gap():
    fgm = {"family": "fgm", "theta": 0.7,
           "marginals": [{"family": "uniform", "a": 0.0, "b": 1.0}] * 2}
    r = run_check(CheckInstance("COND_NONNEG", "", (fgm,), CONST,
                                spec={"grid_points_per_dim": 96}))
    assert r.verdict == "PASS"
    assert r.diagnostics["identity_gap"] < 1e-9


def test_default_catalog_clean():
    reports = run_suite(default_catalog(), parallelism=4)
    verdicts = {r.verdict for r in reports}
    assert "FAIL" not in verdicts
    assert "DIVERGENT" not in verdicts
    assert verdicts <= {"PASS", "HYPOTHESIS_NOT_MET"}
    # every hypothesis-bearing check that CAN be violated has a violated
    # instance in the catalog, and equality instances sit at zero slack
    not_met = {r.check_id for r in reports
               if r.verdict == "HYPOTHESIS_NOT_MET"}
    for cid in ("GIBBS", "UNIFORM_EST_DISCRETE", "UNIFORM_EST_CONT",
                "SUBADD", "SUBADD_CHAIN", "STRONG_SUBADD", "COND_DPI",
                "MUTUAL_DPI", "CONCAVITY", "MAX_GENERIC", "MAX_GAUSS",
                "MAX_EXP", "CROSS_LB", "WE_RELATION", "HADAMARD",
                "MARGINAL_SUBADD", "MAX_WEIBULL", "KY_FAN"):
        assert cid in not_met, f"no hypothesis-violating instance for {cid}"
    for r in reports:
        if "equality" in r.label and r.slack is not None:
            assert abs(r.slack) <= 10 * max(r.tolerance, 1e-12), \
                (r.check_id, r.label, r.slack)
