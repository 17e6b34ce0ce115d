"""Command-line interface.

Subcommands::

    compute   one entropy/divergence quantity for a model + weight
    check     run the checks listed in a catalog file
    suite     run the default catalog (or a file) and emit the report array
    estimate  plug-in estimation from a sample CSV, or a convergence experiment
    report    convert a report-array JSON into plot-ready CSV

Exit codes: 0 success, 1 input error, 2 divergence detected, 3 internal
quadrature failure, 64 usage error.  All randomness flows through ``--seed``
(default 0); outputs carry no timestamps, so identical invocations are
byte-identical (a ``<out>.meta.json`` sidecar holds the wall-clock stamp when
``--out`` is used).
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from typing import Optional

from .catalog import default_catalog
from .empirical import (convergence_experiment, empirical_wce, empirical_wcre,
                        read_sample_csv)
from .errors import (ConvergenceError, DivergenceError, DomainError,
                     IntegrandError, WcentropyError)
from .harness import CheckInstance, run_suite
from .multivariate import conditional_wcre, mutual_wcre
from .quadrature import QuadratureSpec
from .serialization import (dumps, model_from_json, mv_model_from_json,
                            mv_weight_from_json, weight_from_json)
from .univariate import alpha_phi, relative_wcre, shannon_entropy, wce, wcre

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DIVERGENT = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64

QUANTITIES = ("wcre", "wce", "relative", "conditional", "mutual",
              "alpha_phi", "shannon")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_doc(text: str):
    """Inline JSON if it looks like JSON, otherwise a path to a JSON file."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(stripped)
    with open(text, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _spec_from_args(args) -> QuadratureSpec:
    kwargs = {}
    if getattr(args, "tail_mass", None) is not None:
        kwargs["tail_mass"] = args.tail_mass
    if getattr(args, "rel_tol", None) is not None:
        kwargs["rel_tol"] = args.rel_tol
    if getattr(args, "grid", None) is not None:
        kwargs["grid_points_per_dim"] = args.grid
    return QuadratureSpec(**kwargs)


def _emit(payload_text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload_text)
            fh.write("\n")
        meta = {"generated_at":
                datetime.datetime.now(datetime.timezone.utc).isoformat()}
        with open(out + ".meta.json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh)
            fh.write("\n")
    else:
        print(payload_text)


def _csv_escape(v) -> str:
    s = "" if v is None else str(v)
    if any(ch in s for ch in ",\"\n"):
        s = '"' + s.replace('"', '""') + '"'
    return s


def _reports_csv(reports) -> str:
    cols = ["check_id", "label", "verdict", "hypothesis_met", "lhs", "rhs",
            "slack", "tolerance"]
    lines = [",".join(cols)]
    for r in reports:
        doc = r if isinstance(r, dict) else r.to_json()
        lines.append(",".join(_csv_escape(doc.get(c)) for c in cols))
    return "\n".join(lines)


def cmd_compute(args) -> int:
    spec = _spec_from_args(args)
    quantity = args.quantity
    if quantity not in QUANTITIES:
        print(f"error: unknown quantity {quantity!r}; choose from "
              f"{', '.join(QUANTITIES)}", file=sys.stderr)
        return EXIT_USAGE
    model_doc = _load_doc(args.model)
    weight_doc = _load_doc(args.weight) if args.weight else {"kind": "constant",
                                                             "c": 1.0}
    finite = True
    error_estimate = None
    improper = False
    if quantity in ("wcre", "wce"):
        m = model_from_json(model_doc)
        phi = weight_from_json(weight_doc)
        ev = (wcre if quantity == "wcre" else wce)(m, phi, spec, certify=True)
        value = ev.value if ev.finite else None
        finite = bool(ev.finite)
        error_estimate = ev.quadrature.abs_error_estimate
        improper = ev.improper_model
    elif quantity == "relative":
        phi = weight_from_json(weight_doc)
        m_f = model_from_json(model_doc["f"])
        m_g = model_from_json(model_doc["g"])
        value = relative_wcre(m_f, m_g, phi, spec)
    elif quantity in ("conditional", "mutual"):
        model = mv_model_from_json(model_doc)
        weight = mv_weight_from_json(weight_doc, model.n) \
            if "factors" in weight_doc or weight_doc.get("kind") == "constant" \
            else mv_weight_from_json({"kind": "product",
                                      "factors": [weight_doc] * model.n},
                                     model.n)
        fn = conditional_wcre if quantity == "conditional" else mutual_wcre
        value = fn(model, weight, spec)
        improper = model.improper
    elif quantity == "alpha_phi":
        m = model_from_json(model_doc)
        phi = weight_from_json(weight_doc)
        value = alpha_phi(m, phi, spec)
        improper = m.improper
    else:  # shannon
        m = model_from_json(model_doc)
        value = shannon_entropy(m, spec)
        improper = m.improper
    payload = {
        "quantity": quantity,
        "value": value,
        "error_estimate": error_estimate,
        "finite": finite,
        "improper_model": improper,
        "inputs": {"model": model_doc, "weight": weight_doc,
                   "quadrature": {"rel_tol": spec.rel_tol,
                                  "abs_tol": spec.abs_tol,
                                  "tail_mass": spec.tail_mass,
                                  "grid_points_per_dim":
                                      spec.grid_points_per_dim},
                   "seed": args.seed},
    }
    if args.format == "csv":
        text = ("quantity,value,error_estimate,finite\n"
                + ",".join(_csv_escape(payload[k])
                           for k in ("quantity", "value", "error_estimate",
                                     "finite")))
    else:
        text = dumps(payload)
    _emit(text, args.out)
    return EXIT_OK if finite else EXIT_DIVERGENT


def _load_catalog(args):
    if getattr(args, "default", False):
        return default_catalog()
    if not args.catalog:
        raise DomainError("a catalog file (or --default) is required")
    doc = _load_doc(args.catalog)
    if not isinstance(doc, list):
        raise DomainError("a catalog is a JSON array of check instances")
    return [CheckInstance.from_json(d) for d in doc]


def _run_catalog(args, print_summary: bool) -> int:
    instances = _load_catalog(args)
    if args.seed:
        instances = [CheckInstance(check_id=i.check_id, label=i.label,
                                   models=i.models, weight=i.weight,
                                   params=i.params, spec=i.spec,
                                   seed=i.seed + args.seed)
                     for i in instances]
    reports = run_suite(instances, parallelism=max(1, args.jobs))
    if print_summary:
        for r in reports:
            tag = f"{r.check_id}[{r.label}]" if r.label else r.check_id
            extra = "" if r.slack is None else f" slack={r.slack:.3e}"
            print(f"{r.verdict:18s} {tag}{extra}", file=sys.stderr)
        counts = {}
        for r in reports:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        print("summary: " + ", ".join(f"{k}={v}"
                                      for k, v in sorted(counts.items())),
              file=sys.stderr)
    docs = [r.to_json() for r in reports]
    text = _reports_csv(docs) if args.format == "csv" else dumps(docs)
    _emit(text, args.out)
    failed = any(r.verdict in ("FAIL", "ERROR") for r in reports)
    return EXIT_INPUT if failed else EXIT_OK


def cmd_check(args) -> int:
    return _run_catalog(args, print_summary=False)


def cmd_suite(args) -> int:
    return _run_catalog(args, print_summary=True)


def cmd_estimate(args) -> int:
    spec = _spec_from_args(args)
    weight_doc = _load_doc(args.weight) if args.weight else {"kind": "constant",
                                                             "c": 1.0}
    phi = weight_from_json(weight_doc)
    if args.experiment:
        if not args.model or not args.sizes:
            raise DomainError("--experiment needs --model and --sizes")
        target = model_from_json(_load_doc(args.model))
        sizes = [int(s) for s in args.sizes.split(",") if s]
        rows = convergence_experiment(target, phi, sizes, args.reps,
                                      seed=args.seed, spec=spec)
        # the experiment emits its plot-ready CSV table unless JSON is
        # explicitly requested
        if args.format_given and args.format == "json":
            text = dumps(rows)
        else:
            lines = ["n,mean_abs_err,sd"]
            lines += [f"{r['n']},{r['mean_abs_err']!r},{r['sd']!r}"
                      for r in rows]
            text = "\n".join(lines)
        _emit(text, args.out)
        return EXIT_OK
    if not args.sample:
        raise DomainError("--sample (or --experiment) is required")
    sample = read_sample_csv(args.sample)
    est = empirical_wcre(sample, phi, level=0.95, seed=args.seed)
    est_ce = empirical_wce(sample, phi, level=None, seed=args.seed)
    payload = {
        "estimator": "plug-in",
        "wcre": est.value,
        "wce": est_ce.value,
        "n": est.n,
        "pieces": est.pieces,
        "bootstrap_ci_95": list(est.bootstrap_ci) if est.bootstrap_ci else None,
        "inputs": {"sample": args.sample, "weight": weight_doc,
                   "seed": args.seed},
    }
    if args.format == "csv":
        text = ("wcre,wce,n,ci_lo,ci_hi\n"
                + ",".join(map(_csv_escape,
                               [est.value, est_ce.value, est.n,
                                est.bootstrap_ci[0], est.bootstrap_ci[1]])))
    else:
        text = dumps(payload)
    _emit(text, args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    if not args.catalog:
        raise DomainError("report needs --catalog pointing at a report array")
    doc = _load_doc(args.catalog)
    if not isinstance(doc, list):
        raise DomainError("the report input must be a JSON array")
    text = _reports_csv(doc) if args.format != "json" else dumps(doc)
    _emit(text, args.out)
    return EXIT_OK


def _build_parser() -> _Parser:
    p = _Parser(prog="wcentropy",
                description="Weighted cumulative entropy toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("json", "csv"), default=None)
        sp.add_argument("--tail-mass", type=float, default=None,
                        dest="tail_mass")
        sp.add_argument("--rel-tol", type=float, default=None, dest="rel_tol")
        sp.add_argument("--grid", type=int, default=None)
        sp.set_defaults(_fmt_default=fmt_default)

    sp = sub.add_parser("compute", help="compute one quantity")
    sp.add_argument("--quantity", required=True)
    sp.add_argument("--model", required=True)
    sp.add_argument("--weight", default=None)
    common(sp)
    sp.set_defaults(fn=cmd_compute)

    sp = sub.add_parser("check", help="run checks from a catalog file")
    sp.add_argument("--catalog", default=None)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=cmd_check, default=False)

    sp = sub.add_parser("suite", help="run the default or a custom catalog")
    sp.add_argument("--default", action="store_true")
    sp.add_argument("--catalog", default=None)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=cmd_suite)

    sp = sub.add_parser("estimate", help="plug-in estimation from a sample")
    sp.add_argument("--sample", default=None)
    sp.add_argument("--weight", default=None)
    sp.add_argument("--experiment", action="store_true")
    sp.add_argument("--model", default=None)
    sp.add_argument("--sizes", default=None)
    sp.add_argument("--reps", type=int, default=50)
    common(sp)
    sp.set_defaults(fn=cmd_estimate)

    sp = sub.add_parser("report", help="convert a report array to CSV")
    sp.add_argument("--catalog", default=None)
    common(sp, fmt_default="csv")
    sp.set_defaults(fn=cmd_report)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    args.format_given = args.format is not None
    if args.format is None:
        args.format = args._fmt_default
    try:
        return args.fn(args)
    except DivergenceError as exc:
        print(f"divergent: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    except (ConvergenceError, IntegrandError) as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, WcentropyError, json.JSONDecodeError, OSError,
            KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
