"""Command-line front end: ``randknot <subcommand> ...``.

Exit status: 0 on success, 1 when an assertion-bearing experiment observes a
violation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from typing import Sequence

from . import bounds, graph6
from .detectors import classify_property, verify
from .enumeration import count_unlabelled, enumerate_unlabelled
from .experiments import (
    KINDS,
    PROPERTIES,
    BudgetGuard,
    ExperimentSpec,
    GateFailure,
    run_complement_search,
    run_experiment,
    write_csv,
)
from .graph import Graph
from .minors import has_minor
from .models import ModelSpec, parse_model, samples
from .planarity import apex_search


class UsageError(ValueError):
    pass


_NAMED = [
    (re.compile(r"^K(\d+)$"), lambda m: Graph.complete(int(m[1]))),
    (re.compile(r"^K(\d+),(\d+)$"), lambda m: Graph.complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"^C(\d+)$"), lambda m: Graph.cycle(int(m[1]))),
    (re.compile(r"^P(\d+)$"), lambda m: Graph.path(int(m[1]))),
    (re.compile(r"^E(\d+)$"), lambda m: Graph.empty(int(m[1]))),
    (re.compile(r"^petersen$", re.I), lambda m: Graph.petersen()),
]


def parse_graph(text: str) -> Graph:
    """A graph6 string, or a name: ``K7``, ``K3,3``, ``C5``, ``P4``, ``E6``, ``petersen``."""
    text = text.strip()
    for pat, make in _NAMED:
        m = pat.match(text)
        if m:
            return make(m)
    try:
        return graph6.decode(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse graph {text!r}: {exc}") from None


def _int_list(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _float_list(text: str) -> list[float]:
    out = [float(x) for x in text.split(",") if x.strip()]
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _input_graphs(items: Sequence[str]) -> list[Graph]:
    if items:
        return [parse_graph(x) for x in items]
    return [graph6.decode(line) for line in sys.stdin if line.strip() and not line.startswith("#")]


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


# -- subcommands ------------------------------------------------------------------


def cmd_generate(a) -> int:
    if a.model:
        spec = parse_model(a.model)
    elif a.n is not None and a.p is not None:
        spec = ModelSpec.gilbert(a.n[0], a.p)
    elif a.n is not None and a.c is not None:
        spec = ModelSpec.gilbert(a.n[0], min(1.0, a.c[0] / a.n[0]))
    else:
        raise UsageError("generate needs --model, or --n with --p/--c")
    for t, g in enumerate(samples(spec, a.seed, a.trials)):
        if a.format == "json":
            _emit_json({"trial": t, "graph6": g.to_graph6(), "order": g.n, "size": g.size()})
        else:
            sys.stdout.write(g.to_graph6() + "\n")
    return 0


def cmd_classify(a) -> int:
    props = a.property or ["nonplanar", "IL", "IK", "not-1-apex", "not-2-apex"]
    for g in _input_graphs(a.graphs):
        verdicts = [classify_property(g, p) for p in props]
        rec = {"graph6": g.to_graph6(), "verdicts": [v.to_json() for v in verdicts]}
        if a.verify:
            rec["verified"] = all(verify(g, v) for v in verdicts)
        _emit_json(rec)
    return 0


def cmd_minor(a) -> int:
    g, h = parse_graph(a.g), parse_graph(a.h)
    cert = has_minor(g, h)
    _emit_json({"g": g.to_graph6(), "h": h.to_graph6(), "present": cert is not None,
                "branch_sets": None if cert is None else cert.to_json()})
    return 0


def cmd_apex(a) -> int:
    g = parse_graph(a.g)
    w = apex_search(g.rows, a.k)
    _emit_json({"graph6": g.to_graph6(), "k": a.k, "is_n_apex": w is not None,
                "witness": None if w is None else list(w)})
    return 0


def cmd_bounds(a) -> int:
    if a.n is None:
        raise UsageError("bounds needs --n")
    reports = []
    for n in a.n:
        if a.p is not None:
            reports.append(bounds.gilbert_report(n, a.p))
        else:
            reports.append(bounds.model3_chain(n))
    if a.format == "json":
        for r in reports:
            _emit_json(r.to_json())
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(reports[0].csv_fields() + ["all_hold"])
        for r in reports:
            w.writerow(r.csv_row() + [r.all_hold])
    return 0 if all(r.all_hold for r in reports) else 1


def cmd_experiment(a) -> int:
    params: dict = {"check": not a.no_check}
    if a.n is not None:
        params["n_values"] = a.n
        params["n"] = a.n[0]
    if a.c is not None:
        params["c_values"] = a.c
    if a.p is not None:
        params["p"] = a.p
    if a.r is not None:
        params["r"] = a.r
    if a.k is not None:
        params["apex"] = a.k
    if a.mode:
        params["mode"] = a.mode
        params["exhaustive"] = a.mode == "exhaustive"
    needs = {"ThresholdSweep": ("n_values", "c_values"), "TailVsBound": ("n_values",),
             "PairingFraction": ("n",), "NotApexFraction": ("n",), "ComplementSearch": ("n",)}
    for key in needs.get(a.kind, ()):
        if key not in params:
            raise UsageError(f"experiment {a.kind} needs --{key.split('_')[0]}")
    spec = ExperimentSpec(a.kind, a.model, a.trials, a.seed, a.property, params)
    records = run_experiment(spec, jobs=a.jobs)
    if a.format == "json":
        for rec in records:
            if not a.timing:
                rec.pop("mean_seconds", None)
            _emit_json(rec)
    else:
        text = write_csv(records, spec, timing=a.timing)
        if a.out:
            with open(a.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def cmd_enumerate(a) -> int:
    if a.n is None:
        raise UsageError("enumerate needs --n")
    for n in a.n:
        if a.format == "json":
            _emit_json({"n": n, "count": count_unlabelled(n)})
            continue
        for g in enumerate_unlabelled(n):
            sys.stdout.write(g.to_graph6() + "\n")
        sys.stderr.write(f"Gamma_{n} = {count_unlabelled(n)}\n")
    return 0


def cmd_search_complement(a) -> int:
    if a.n is None or not a.property:
        raise UsageError("search-complement needs --n and --property")
    res = run_complement_search(a.n[0], a.property[0], a.mode or "exhaustive", a.budget, a.seed, a.jobs)
    _emit_json(res.to_json())
    if a.expect_empty and res.findings:
        return 1
    return 0


# -- parser ------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--model", help="e.g. gilbert:n=20,p=0.5  er:n=10,m=20  labelled:n=9  unlabelled:n=7")
    p.add_argument("--n", type=_int_list, help="order(s): 20 or 10,20,30 or 10..15")
    p.add_argument("--p", type=float)
    p.add_argument("--c", type=_float_list, help="constant(s) for p = c/n")
    p.add_argument("--format", choices=("csv", "json", "graph6"), default=None)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="randknot", description="Random-graph knotting laboratory.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample graphs from a model as graph6 lines")
    _common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("classify", help="certified verdicts for graph6 inputs (args or stdin)")
    _common(p)
    p.add_argument("graphs", nargs="*")
    p.add_argument("--property", action="append", choices=PROPERTIES)
    p.add_argument("--verify", action="store_true", help="re-check every certificate")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("minor", help="H-minor certificate for G")
    _common(p)
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("apex", help="least apex set of size <= k")
    _common(p)
    p.add_argument("g")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_apex)

    p = sub.add_parser("bounds", help="tail/Hoeffding report (with --p) or unlabelled chain")
    _common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", help="run an experiment and write CSV")
    p.add_argument("kind", choices=KINDS)
    _common(p)
    p.add_argument("--property", choices=PROPERTIES)
    p.add_argument("--r", type=int, help="clique order for ThresholdSweep")
    p.add_argument("--k", type=int, help="apex parameter for NotApexFraction")
    p.add_argument("--mode", choices=("exhaustive", "sampled"))
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="include wall-time column (not reproducible)")
    p.add_argument("--no-check", action="store_true", help="report instead of enforcing gates")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("enumerate", help="one graph6 line per isomorphism class")
    _common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("search-complement", help="graphs where neither G nor its complement has a property")
    _common(p)
    p.add_argument("--property", action="append", choices=PROPERTIES)
    p.add_argument("--mode", choices=("exhaustive", "sampled"))
    p.add_argument("--budget", type=int)
    p.add_argument("--expect-empty", action="store_true", help="exit 1 if anything is found")
    p.set_defaults(func=cmd_search_complement)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.func(a)
    except GateFailure as exc:
        sys.stderr.write(f"gate failure: {exc}\n")
        return 1
    except (UsageError, BudgetGuard, bounds.InapplicableBound, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
