"""JSON codecs for models, weights, and reports.

Output is deterministic: floats are rendered with 17 significant digits (full
round-trip precision), keys keep construction order, and non-finite numbers
map to ``null`` (JSON has no representation for them; a divergent value is
always accompanied by a ``finite: false`` flag).
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import DomainError
from .models import (Empirical, Exponential, Gamma, Gaussian, Mixture,
                     Uniform, UnivariateModel, Weibull)
from .multivariate import MVWeight
from .mvmodels import (FgmBivariate, FgmMarkovChain, FgmTrivariate,
                       GaussianMv, IndependentProduct, MultivariateModel)
from .quadrature import QuadratureSpec
from .weights import WeightFunction

__all__ = [
    "weight_from_json", "weight_to_json", "model_from_json",
    "mv_model_from_json", "mv_weight_from_json", "spec_from_json",
    "dumps", "dump_float",
]


def weight_to_json(phi: WeightFunction) -> dict:
    k, p = phi.kind, phi.params
    if k == "tabulated":
        return {"kind": "tabulated",
                "knots": [[float(x), float(y)]
                          for x, y in zip(p["xs"], p["ys"])]}
    return {"kind": k, **{key: float(v) for key, v in p.items()}}


def weight_from_json(doc: dict) -> WeightFunction:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DomainError("weight document needs a 'kind' field")
    kind = doc["kind"]
    try:
        if kind == "constant":
            return WeightFunction.constant(doc["c"])
        if kind == "power":
            return WeightFunction.power(doc["a"])
        if kind == "scaled_power":
            return WeightFunction.scaled_power(doc["c"], doc["a"])
        if kind == "exponential":
            return WeightFunction.exponential(doc["r"])
        if kind == "tabulated":
            return WeightFunction.tabulated(doc["knots"])
    except KeyError as exc:
        raise DomainError(f"weight kind {kind!r} misses field {exc}") from exc
    raise DomainError(f"unknown weight kind {kind!r}")


def model_from_json(doc: dict) -> UnivariateModel:
    if not isinstance(doc, dict) or "family" not in doc:
        raise DomainError("model document needs a 'family' field")
    fam = doc["family"]
    try:
        if fam == "uniform":
            return Uniform(doc["a"], doc["b"])
        if fam == "exponential":
            return Exponential(doc["lambda"])
        if fam == "weibull":
            return Weibull(doc["lambda"], doc["q"])
        if fam == "gaussian":
            return Gaussian(doc["mu"], doc["sigma"])
        if fam == "gamma":
            return Gamma(doc["k"], doc["theta"])
        if fam == "empirical":
            return Empirical(doc["sample"])
        if fam == "mixture":
            return Mixture(doc["weights"],
                           [model_from_json(c) for c in doc["components"]])
    except KeyError as exc:
        raise DomainError(f"model family {fam!r} misses field {exc}") from exc
    raise DomainError(f"unknown model family {fam!r}")


def mv_model_from_json(doc: dict) -> MultivariateModel:
    if not isinstance(doc, dict) or "family" not in doc:
        raise DomainError("joint model document needs a 'family' field")
    fam = doc["family"]
    try:
        if fam == "independent_product":
            return IndependentProduct(
                [model_from_json(c) for c in doc["components"]])
        if fam == "fgm":
            m1, m2 = (model_from_json(c) for c in doc["marginals"])
            return FgmBivariate(doc["theta"], m1, m2)
        if fam == "fgm3":
            return FgmTrivariate(doc["theta12"], doc["theta13"], doc["theta23"],
                                 [model_from_json(c) for c in doc["marginals"]])
        if fam == "fgm_markov":
            return FgmMarkovChain(doc["theta12"], doc["theta23"],
                                  [model_from_json(c) for c in doc["marginals"]])
        if fam == "gaussian":
            return GaussianMv(doc["mu"], doc["cov"])
    except KeyError as exc:
        raise DomainError(f"joint family {fam!r} misses field {exc}") from exc
    raise DomainError(f"unknown joint model family {fam!r}")


def mv_weight_from_json(doc: dict, n: int) -> MVWeight:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DomainError("joint weight document needs a 'kind' field")
    if doc["kind"] == "constant":
        return MVWeight.constant(doc["c"], n)
    if doc["kind"] == "product":
        factors = [weight_from_json(f) for f in doc["factors"]]
        if len(factors) != n:
            raise DomainError("product weight arity does not match the model")
        return MVWeight.product(factors)
    raise DomainError(f"unknown joint weight kind {doc['kind']!r}")


def spec_from_json(doc: dict) -> QuadratureSpec:
    allowed = {"rel_tol", "abs_tol", "max_subdivisions", "tail_mass",
               "grid_points_per_dim"}
    unknown = set(doc) - allowed
    if unknown:
        raise DomainError(f"unknown quadrature fields: {sorted(unknown)}")
    return QuadratureSpec(**doc)


def dump_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0.0"
    if x == int(x) and abs(x) < 1e16:
        return format(x, ".1f")
    return format(x, ".17g")


def _encode(obj: Any, parts: list) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(dump_float(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                parts.append(", ")
            parts.append(json.dumps(str(k)))
            parts.append(": ")
            _encode(v, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, v in enumerate(obj):
            if i:
                parts.append(", ")
            _encode(v, parts)
        parts.append("]")
    else:
        try:
            import numpy as np
            if isinstance(obj, np.integer):
                parts.append(str(int(obj)))
                return
            if isinstance(obj, np.floating):
                parts.append(dump_float(float(obj)))
                return
            if isinstance(obj, np.ndarray):
                _encode(obj.tolist(), parts)
                return
        except ImportError:  # pragma: no cover
            pass
        raise DomainError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    parts: list = []
    _encode(obj, parts)
    return "".join(parts)
