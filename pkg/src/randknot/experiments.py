"""Seeded Monte Carlo campaigns and exhaustive complement searches.

Every trial is a pure function of ``(seed, trial index)``, and rows only
aggregate counts, so results (and CSV bytes) do not depend on ``jobs``.
Wall-clock columns are excluded from CSV unless ``timing=True`` is passed to
:func:`write_csv`, since they are the one non-reproducible quantity.

Minor containment stands in for topological-minor containment in the
threshold sweep: a topological K_r is a K_r minor, so the measured fraction
is an upper bound on the fraction with a topological K_r (and the
conclusions drawn for nonplanarity/IL/IK are the same).
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from . import bounds
from .canon import canonical_code
from .detectors import Status, classify_IK, classify_IL, classify_nonplanar
from .enumeration import ENUMERATION_CAP, count_unlabelled_by_size, enumerate_unlabelled
from .graph import Graph
from .minors import has_clique_minor
from .models import ModelSpec, format_model, sample, unlabelled_weight
from .planarity import apex_search, is_planar
from .stats import wilson_interval

KINDS = ("IKFractionVsN", "ThresholdSweep", "ComplementSearch", "TailVsBound", "WrightRatio",
         "PairingFraction", "NotApexFraction")
PROPERTIES = ("nonplanar", "IL", "IK", "not-0-apex", "not-1-apex", "not-2-apex")


class GateFailure(AssertionError):
    """An assertion-bearing experiment observed a violation."""


class BudgetGuard(ValueError):
    """Parameters exceed the default cost guard of an experiment."""


@dataclass
class EstimateRow:
    n: int
    p: float | None
    trials: int
    successes: int
    estimate: float
    ci_low: float
    ci_high: float
    c: float | None = None
    mean_seconds: float = float("nan")
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_counts(cls, n, p, trials, successes, level=0.95, **kw):
        lo, hi = wilson_interval(successes, trials, level)
        return cls(n, p, trials, successes, successes / trials, lo, hi, **kw)

    def record(self, timing: bool = False) -> dict:
        d = {"n": self.n, "p": self.p, "c": self.c, "trials": self.trials, "successes": self.successes,
             "estimate": self.estimate, "ci_low": self.ci_low, "ci_high": self.ci_high}
        d.update(self.extra)
        if timing:
            d["mean_seconds"] = self.mean_seconds
        return d


# -- execution ------------------------------------------------------------------


def map_trials(fn: Callable[[int], object], trials: int, jobs: int = 1) -> list:
    """Evaluate ``fn`` on trial indices 0..trials-1, results in index order."""
    if jobs <= 1 or trials < 2:
        return [fn(t) for t in range(trials)]
    chunk = max(1, trials // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, range(trials), chunksize=chunk))


def _timed(fn, trials, jobs):
    start = time.perf_counter()
    out = map_trials(fn, trials, jobs)
    return out, (time.perf_counter() - start) / max(trials, 1)


# -- property deciders ---------------------------------------------------------


def property_status(g: Graph, prop: str) -> Status:
    """Certified status of ``prop`` for ``g`` (used by searches and fractions)."""
    if prop == "nonplanar":
        return Status.NO if is_planar(g) else Status.YES
    if prop == "IL":
        return classify_IL(g).status
    if prop == "IK":
        return classify_IK(g).status
    if prop.startswith("not-") and prop.endswith("-apex"):
        k = int(prop[4:-5])
        return Status.NO if apex_search(g.rows, k) is not None else Status.YES
    raise ValueError(f"unknown property {prop!r}")


def known_complement_bound(prop: str) -> int | None:
    table = {"nonplanar": 9, "not-0-apex": 9, "not-1-apex": 11, "not-2-apex": 13, "IL": 13, "IK": 18}
    if prop in table:
        return table[prop]
    if prop.startswith("not-") and prop.endswith("-apex"):
        return bounds.complement_bound_not_apex(int(prop[4:-5]))
    return None


# -- IK fraction -----------------------------------------------------------------


def _ik_trial(spec: ModelSpec, seed: int, t: int):
    g = sample(spec, seed, t)
    return classify_IK(g).status.value


def _ik_weighted_trial(n: int, seed: int, t: int):
    g = sample(ModelSpec.uniform_labelled(n), seed, t)
    return classify_IK(g).status.value, unlabelled_weight(g)


def run_ik_fraction(model: ModelSpec, n_values: Iterable[int], trials: int, seed: int,
                    jobs: int = 1, exhaustive: bool = False) -> list[EstimateRow]:
    """Certified-IK / certified-not-IK / unknown fractions per order.

    For the unlabelled model, ``exhaustive`` classifies every class once
    (n <= 9); above the enumeration cap, uniform labelled draws are weighted
    by |Aut| and the row is tagged ``weighted``.
    """
    rows = []
    for n in n_values:
        spec = model.with_order(n)
        extra: dict = {"model": format_model(spec)}
        if spec.variant == "uniform_unlabelled" and exhaustive:
            start = time.perf_counter()
            statuses = [classify_IK(g).status.value for g in enumerate_unlabelled(n)]
            per = (time.perf_counter() - start) / len(statuses)
            count = len(statuses)
            yes, no = statuses.count(Status.YES.value), statuses.count(Status.NO.value)
            extra["mode"] = "exhaustive"
        elif spec.variant == "uniform_unlabelled" and n > ENUMERATION_CAP:
            res, per = _timed(partial(_ik_weighted_trial, n, seed), trials, jobs)
            tot = sum(w for _, w in res)
            wy = sum(w for s, w in res if s == Status.YES.value)
            wn = sum(w for s, w in res if s == Status.NO.value)
            count = trials
            yes = sum(1 for s, _ in res if s == Status.YES.value)
            no = sum(1 for s, _ in res if s == Status.NO.value)
            extra.update(mode="weighted", weighted_yes=wy / tot, weighted_no=wn / tot)
        else:
            res, per = _timed(partial(_ik_trial, spec, seed), trials, jobs)
            count = trials
            yes, no = res.count(Status.YES.value), res.count(Status.NO.value)
            extra["mode"] = "sampled"
        unknown = count - yes - no
        extra.update(no=no, unknown=unknown, frac_no=no / count, frac_unknown=unknown / count)
        p = spec.edge_probability
        if p is not None and n >= 7 and p > 0:
            extra["exact_tail"] = bounds.exact_tail(n, p)
            t = bounds.hoeffding_t(n, p)
            extra["hoeffding"] = bounds.hoeffding_bound(n, p) if t > 0 else None
        rows.append(EstimateRow.from_counts(n, p, count, yes, mean_seconds=per, extra=extra))
    return rows


# -- threshold sweep ---------------------------------------------------------------


def _threshold_trial(n: int, p: float, r: int, seed: int, t: int) -> int:
    g = sample(ModelSpec.gilbert(n, p), seed, t)
    return int(has_clique_minor(g, r) is not None)


def run_threshold_sweep(c_values: Sequence[float], n_values: Sequence[int], r: int, trials: int,
                        seed: int, jobs: int = 1) -> list[EstimateRow]:
    """Fraction of G(n, c/n) graphs with a K_r minor, per (c, n)."""
    if r not in (5, 6, 7):
        raise ValueError("r must be 5, 6 or 7")
    rows = []
    for c in c_values:
        if c <= 0:
            raise ValueError("c must be positive")
        for n in n_values:
            p = min(1.0, c / n)
            res, per = _timed(partial(_threshold_trial, n, p, r, seed), trials, jobs)
            rows.append(EstimateRow.from_counts(n, p, trials, sum(res), c=c, mean_seconds=per,
                                                extra={"r": r}))
    return rows


# -- complement search -------------------------------------------------------------


@dataclass
class Finding:
    graph6: str
    complement_graph6: str
    status: str  # "counterexample" (both certified No) or "candidate" (some Unknown)
    g_status: str
    complement_status: str


@dataclass
class ComplementSearchResult:
    n: int
    property: str
    mode: str
    examined: int
    findings: list[Finding]
    partial: bool = False
    self_complementary: int = 0

    def to_json(self) -> dict:
        return asdict(self)


def _pair_key(g: Graph):
    return g.size(), canonical_code(g)


def _complement_check(g: Graph, prop: str) -> Finding | None:
    s = property_status(g, prop)
    if s is Status.YES:
        return None
    comp = g.complement()
    sc = property_status(comp, prop)
    if sc is Status.YES:
        return None
    kind = "counterexample" if s is Status.NO and sc is Status.NO else "candidate"
    return Finding(g.to_graph6(), comp.to_graph6(), kind, s.value, sc.value)


def _sampled_complement_trial(n: int, prop: str, seed: int, t: int):
    g = sample(ModelSpec.uniform_labelled(n), seed, t)
    return _complement_check(g, prop)


def run_complement_search(n: int, prop: str, mode: str = "exhaustive", budget: int | None = None,
                          seed: int = 0, jobs: int = 1) -> ComplementSearchResult:
    """Order-n graphs G for which neither G nor its complement certifiably has ``prop``.

    Exhaustive mode visits each complementary pair of classes once: a class
    is skipped when its complement precedes it in (size, canonical code)
    order; self-complementary classes are tested on their own.  ``budget``
    caps the classes (or samples) examined; hitting it flags the result as
    partial.
    """
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    findings: list[Finding] = []
    if mode == "exhaustive":
        if n > ENUMERATION_CAP:
            raise BudgetGuard(f"exhaustive search needs n <= {ENUMERATION_CAP}")
        big_n = comb(n, 2)
        examined = selfc = 0
        partial_run = False
        for g in enumerate_unlabelled(n):
            m = g.size()
            if 2 * m > big_n:
                continue
            if 2 * m == big_n:
                kg, kc = _pair_key(g), _pair_key(g.complement())
                if kc < kg:
                    continue
                if kc == kg:
                    selfc += 1
            if budget is not None and examined >= budget:
                partial_run = True
                break
            examined += 1
            f = _complement_check(g, prop)
            if f is not None:
                findings.append(f)
        return ComplementSearchResult(n, prop, mode, examined, findings, partial_run, selfc)
    if mode == "sampled":
        trials = budget if budget is not None else 10_000
        res = map_trials(partial(_sampled_complement_trial, n, prop, seed), trials, jobs)
        findings = [f for f in res if f is not None]
        return ComplementSearchResult(n, prop, mode, trials, findings)
    raise ValueError("mode must be 'exhaustive' or 'sampled'")


# -- pairing fraction --------------------------------------------------------------


def _pairing_trial(n: int, prop: str, seed: int, t: int) -> int:
    g = sample(ModelSpec.uniform_labelled(n), seed, t)
    return int(property_status(g, prop) is Status.YES)


def run_pairing_fraction(n: int, prop: str, mode: str = "exhaustive", budget: int | None = None,
                         seed: int = 0, jobs: int = 1, check: bool = True) -> EstimateRow:
    """Fraction of order-n graphs certified to have ``prop``.

    Exhaustive mode is the unlabelled model (every class once); sampled mode
    draws uniform labelled graphs.  With ``check`` the pairing argument is
    enforced: at or above the property's complement bound the fraction must
    be at least 1/2 (else :class:`GateFailure`).
    """
    if mode == "exhaustive":
        if n > ENUMERATION_CAP:
            raise BudgetGuard(f"exhaustive mode needs n <= {ENUMERATION_CAP}")
        start = time.perf_counter()
        hits = total = 0
        for g in enumerate_unlabelled(n):
            total += 1
            if budget is not None and total > budget:
                raise BudgetGuard("budget smaller than the number of classes")
            hits += property_status(g, prop) is Status.YES
        per = (time.perf_counter() - start) / total
        model = f"unlabelled:n={n}"
    elif mode == "sampled":
        total = budget if budget is not None else 10_000
        res, per = _timed(partial(_pairing_trial, n, prop, seed), total, jobs)
        hits = sum(res)
        model = f"labelled:n={n}"
    else:
        raise ValueError("mode must be 'exhaustive' or 'sampled'")
    bound = known_complement_bound(prop)
    gated = bound is not None and n >= bound
    row = EstimateRow.from_counts(n, 0.5 if mode == "sampled" else None, total, hits, mean_seconds=per,
                                  extra={"property": prop, "model": model, "mode": mode,
                                         "complement_bound": bound, "gated": gated})
    row.extra["gate_ok"] = (row.estimate >= 0.5) if gated else None
    if check and gated and row.estimate < 0.5:
        raise GateFailure(f"{prop} fraction {row.estimate:.4f} < 1/2 at n={n} >= {bound}")
    return row


# -- tail versus bound ----------------------------------------------------------------


def _size_trial(n: int, p: float, seed: int, t: int) -> int:
    return sample(ModelSpec.gilbert(n, p), seed, t).size()


def run_tail_vs_bound(n_values: Sequence[int], p: float, trials: int, seed: int, jobs: int = 1,
                      check: bool = True) -> list[EstimateRow]:
    """Empirical Pr[size <= 5n-15] against the exact tail and the Hoeffding bound.

    Gates (with ``check``): the exact tail lies inside the 99% Wilson interval
    of the empirical tail, and exact <= Hoeffding.
    """
    rows = []
    for n in n_values:
        r = bounds.tail_cutoff(n)
        sizes, per = _timed(partial(_size_trial, n, p, seed), trials, jobs)
        hits = sum(1 for s in sizes if s <= r)
        exact = bounds.exact_tail(n, p)
        hb = bounds.hoeffding_bound(n, p)
        lo99, hi99 = wilson_interval(hits, trials, 0.99)
        row = EstimateRow.from_counts(n, p, trials, hits, mean_seconds=per, extra={
            "cutoff": r, "exact_tail": exact, "hoeffding": hb, "ci99_low": lo99, "ci99_high": hi99,
            "exact_in_ci99": lo99 <= exact <= hi99, "exact_le_bound": exact <= hb})
        rows.append(row)
        if check and not (exact <= hb):
            raise GateFailure(f"exact tail {exact} exceeds Hoeffding bound {hb} at n={n}")
        if check and not (lo99 <= exact <= hi99):
            raise GateFailure(f"exact tail {exact} outside 99% CI [{lo99}, {hi99}] at n={n}")
    return rows


# -- not-n-apex fraction --------------------------------------------------------------


def _not_apex_trial(k: int, a: int, seed: int, t: int) -> int:
    g = sample(ModelSpec.uniform_labelled(k), seed, t)
    return int(apex_search(g.rows, a) is None)


def run_not_napex_fraction(k: int, apex: int, trials: int, seed: int, jobs: int = 1,
                           check: bool = True, force: bool = False) -> EstimateRow:
    """Fraction of uniform labelled order-k graphs that are not ``apex``-apex."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not force and (apex > 2 or k > 20):
        raise BudgetGuard("default budget allows apex parameter <= 2 and order <= 20 (pass force=True)")
    res, per = _timed(partial(_not_apex_trial, k, apex, seed), trials, jobs)
    hits = sum(res)
    bound = 2 * apex + 9
    lo99, hi99 = wilson_interval(hits, trials, 0.99)
    gated = k >= bound
    row = EstimateRow.from_counts(k, 0.5, trials, hits, mean_seconds=per, extra={
        "apex": apex, "bound_2n_plus_9": bound, "ci99_low": lo99, "ci99_high": hi99, "gated": gated})
    if check and gated and hits / trials < 0.5:
        raise GateFailure(f"not-{apex}-apex fraction {hits / trials:.4f} < 1/2 at k={k}")
    return row


# -- Wright ratio ------------------------------------------------------------------------


def run_wright_ratio(n_values: Sequence[int]) -> list[dict]:
    """Gamma_{n,q} n! / C(N,q) at q = floor(N/2), which tends to 1.

    A class has at most n! labellings, so the ratio is always >= 1 and
    ``inverse_ratio`` lies in (0, 1]; the approach to 1 is reported only.
    """
    out = []
    for n in n_values:
        big_n = comb(n, 2)
        q = big_n // 2
        g = count_unlabelled_by_size(n, q)
        num, den = g * factorial(n), comb(big_n, q)
        out.append({"n": n, "N": big_n, "q": q, "gamma_nq": g, "binom_Nq": den,
                    "ratio": num / den, "inverse_ratio": den / num})
    return out


# -- specs and CSV -----------------------------------------------------------------------


@dataclass
class ExperimentSpec:
    kind: str
    model: str | None = None
    trials: int = 1000
    seed: int = 0
    property: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; expected one of {KINDS}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def describe(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def run_experiment(spec: ExperimentSpec, jobs: int = 1) -> list[dict]:
    """Dispatch an :class:`ExperimentSpec`; returns CSV-ready records."""
    from .models import parse_model

    p = spec.params
    if spec.kind == "IKFractionVsN":
        model = parse_model(spec.model or "labelled:n=7")
        ns = p.get("n_values") or [model.n]
        rows = run_ik_fraction(model, ns, spec.trials, spec.seed, jobs, p.get("exhaustive", False))
        return [r.record(timing=True) for r in rows]
    if spec.kind == "ThresholdSweep":
        rows = run_threshold_sweep(p["c_values"], p["n_values"], p.get("r", 5), spec.trials, spec.seed, jobs)
        return [r.record(timing=True) for r in rows]
    if spec.kind == "TailVsBound":
        rows = run_tail_vs_bound(p["n_values"], p.get("p", 0.5), spec.trials, spec.seed, jobs,
                                 check=p.get("check", True))
        return [r.record(timing=True) for r in rows]
    if spec.kind == "PairingFraction":
        row = run_pairing_fraction(p["n"], spec.property or "nonplanar", p.get("mode", "sampled"),
                                   spec.trials, spec.seed, jobs, check=p.get("check", True))
        return [row.record(timing=True)]
    if spec.kind == "NotApexFraction":
        row = run_not_napex_fraction(p["n"], p.get("apex", 0), spec.trials, spec.seed, jobs,
                                     check=p.get("check", True))
        return [row.record(timing=True)]
    if spec.kind == "WrightRatio":
        return run_wright_ratio(p.get("n_values", [5, 6, 7, 8]))
    if spec.kind == "ComplementSearch":
        res = run_complement_search(p["n"], spec.property or "nonplanar", p.get("mode", "sampled"),
                                    spec.trials, spec.seed, jobs)
        if not res.findings:
            return [{"n": res.n, "property": res.property, "examined": res.examined, "graph6": None,
                     "status": None}]
        return [{"n": res.n, "property": res.property, "examined": res.examined, "graph6": f.graph6,
                 "status": f.status} for f in res.findings]
    raise ValueError(spec.kind)  # pragma: no cover


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(records: list[dict], spec: ExperimentSpec | None = None, fh=None, timing: bool = False) -> str:
    """Render records as CSV with a leading ``# spec=...`` comment row."""
    buf = io.StringIO()
    if spec is not None:
        buf.write(f"# spec={spec.describe()}\n")
    fields: list[str] = []
    for rec in records:
        for k in rec:
            if k == "mean_seconds" and not timing:
                continue
            if k not in fields:
                fields.append(k)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for rec in records:
        w.writerow([_fmt(rec.get(k)) for k in fields])
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text
