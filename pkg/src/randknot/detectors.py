"""Certified three-valued classification of graphs.

Implications used (all are theorems):

* a K_7 minor, in particular Mader's edge bound, forces intrinsic knotting;
* IK graphs are IL, IL graphs are not apex, IK graphs are not 2-apex;
* IL holds exactly when some Petersen-family graph is a minor;
* nonplanarity holds exactly when K_5 or K_{3,3} is a minor.

Every CertifiedYes/CertifiedNo verdict carries data that :func:`verify`
re-checks without trusting the detector that produced it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .graph import Graph
from .minors import (
    BudgetExceeded,
    MinorCertificate,
    check_certificate,
    has_clique_minor,
    has_minor,
    mader_certifies,
    petersen_family,
    petersen_family_minor,
)
from .planarity import apex_search, is_planar

K33 = Graph.complete_bipartite(3, 3)
APEX_RULE_MAX_ORDER = 30
K7_SEARCH_BUDGET = 200_000


class Status(str, enum.Enum):
    YES = "CertifiedYes"
    NO = "CertifiedNo"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    property: str
    status: Status
    certificate_kind: str | None = None
    certificate_data: Any = field(default=None, compare=False)

    @property
    def yes(self) -> bool:
        return self.status is Status.YES

    @property
    def no(self) -> bool:
        return self.status is Status.NO

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "status": self.status.value,
            "certificate_kind": self.certificate_kind,
            "certificate_data": self.certificate_data,
        }


def _minor_data(cert: MinorCertificate, **extra) -> dict:
    return {**extra, "branch_sets": cert.to_json()}


def classify_nonplanar(g: Graph) -> Verdict:
    if is_planar(g):
        return Verdict("nonplanar", Status.NO, "Planarity", {"planar": True})
    cert = has_clique_minor(g, 5)
    name = "K5"
    if cert is None:
        cert = has_minor(g, K33)
        name = "K3,3"
    if cert is None:  # pragma: no cover - would contradict Wagner's theorem
        raise AssertionError("nonplanar graph without a Kuratowski minor")
    return Verdict("nonplanar", Status.YES, "Planarity", _minor_data(cert, minor=name))


def classify_IL(g: Graph) -> Verdict:
    w = apex_search(g.rows, 1)
    if w is not None:
        return Verdict("IL", Status.NO, "ApexWitness", {"k": 1, "apex_set": list(w)})
    found = petersen_family_minor(g)
    if found is None:
        return Verdict("IL", Status.NO, "NotIL", {"members_excluded": len(petersen_family())})
    idx, cert = found
    return Verdict("IL", Status.YES, "PetersenMinor", _minor_data(cert, member=idx))


def classify_IK(g: Graph, apex_rule: bool | None = None, k7_budget: int | None = K7_SEARCH_BUDGET) -> Verdict:
    """Certified IK verdict; Unknown when neither side can be certified.

    Rules, cheapest first: Mader's bound; 2-apex (skipped above order 30
    unless ``apex_rule`` is set); not IL; K_7 minor search (``k7_budget``
    nodes, None for unlimited).
    """
    if mader_certifies(g):
        return Verdict("IK", Status.YES, "MaderBound", {"order": g.n, "size": g.size()})
    if apex_rule is None:
        apex_rule = g.n <= APEX_RULE_MAX_ORDER
    if apex_rule:
        w = apex_search(g.rows, 2)
        if w is not None:
            return Verdict("IK", Status.NO, "ApexWitness", {"k": 2, "apex_set": list(w)})
    il = classify_IL(g)
    if il.no:
        return Verdict("IK", Status.NO, il.certificate_kind, il.certificate_data)
    try:
        cert = has_clique_minor(g, 7, budget=k7_budget)
    except BudgetExceeded:
        return Verdict("IK", Status.UNKNOWN)
    if cert is not None:
        return Verdict("IK", Status.YES, "CliqueMinor", _minor_data(cert, r=7))
    return Verdict("IK", Status.UNKNOWN)


def classify_not_n_apex(g: Graph, k: int) -> Verdict:
    if k < 0:
        raise ValueError("k must be non-negative")
    w = apex_search(g.rows, k)
    prop = f"not-{k}-apex"
    if w is not None:
        return Verdict(prop, Status.NO, "ApexWitness", {"k": k, "apex_set": list(w)})
    return Verdict(prop, Status.YES, "ApexSearch", {"k": k, "exhaustive": True})


def classify(g: Graph, properties=("nonplanar", "IL", "IK", "not-1-apex", "not-2-apex")) -> list[Verdict]:
    out = []
    for p in properties:
        out.append(classify_property(g, p))
    return out


def classify_property(g: Graph, prop: str) -> Verdict:
    if prop == "nonplanar":
        return classify_nonplanar(g)
    if prop == "IL":
        return classify_IL(g)
    if prop == "IK":
        return classify_IK(g)
    if prop.startswith("not-") and prop.endswith("-apex"):
        return classify_not_n_apex(g, int(prop[4:-5]))
    raise ValueError(f"unknown property {prop!r}")


# -- independent verification -----------------------------------------------


def _cert(data) -> MinorCertificate:
    return MinorCertificate(tuple(tuple(b) for b in data["branch_sets"]))


def _apex_ok(g: Graph, data) -> bool:
    s = data["apex_set"]
    return len(s) <= data["k"] and is_planar(g.delete_vertices(s))


def verify(g: Graph, v: Verdict) -> bool:
    """Re-check a verdict's certificate from scratch."""
    if v.status is Status.UNKNOWN:
        return v.certificate_kind is None
    kind, data = v.certificate_kind, v.certificate_data
    if kind == "MaderBound":
        return v.yes and g.n >= 7 and g.size() >= 5 * g.n - 14
    if kind == "CliqueMinor":
        r = data["r"]
        return v.yes and check_certificate(g, Graph.complete(r), _cert(data))
    if kind == "PetersenMinor":
        return v.yes and check_certificate(g, petersen_family()[data["member"]], _cert(data))
    if kind == "ApexWitness":
        return v.no and _apex_ok(g, data)
    if kind == "Planarity":
        if v.no:
            return is_planar(g)
        h = Graph.complete(5) if data["minor"] == "K5" else K33
        return check_certificate(g, h, _cert(data))
    if kind == "ApexSearch":
        return v.yes and apex_search(g.rows, data["k"]) is None
    if kind == "NotIL":
        return v.no and all(has_minor(g, m) is None for m in petersen_family())
    return False
