"""The four random-graph models and the reweighting that links them.

Randomness: trial ``t`` under seed ``s`` draws from
``numpy.random.Generator(PCG64(SeedSequence(s, spawn_key=(t,))))``.  Each
trial therefore owns an independent stream derived only from ``(s, t)``, so
trials can be evaluated in any order or in parallel with identical results.
The PCG64 stream and SeedSequence hashing are stable across platforms.

Vertex pairs are indexed in graph6 (column) order: pair ``(i, j)`` with
``i < j`` has index ``j*(j-1)/2 + i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .canon import automorphism_count
from .enumeration import ENUMERATION_CAP, UnsupportedOrder, unlabelled_rows
from .graph import Graph

VARIANTS = ("erdos_renyi", "gilbert", "uniform_labelled", "uniform_unlabelled")
_ALIASES = {
    "er": "erdos_renyi",
    "erdos_renyi": "erdos_renyi",
    "gnm": "erdos_renyi",
    "gilbert": "gilbert",
    "gnp": "gilbert",
    "labelled": "uniform_labelled",
    "uniform_labelled": "uniform_labelled",
    "unlabelled": "uniform_unlabelled",
    "uniform_unlabelled": "uniform_unlabelled",
}


@dataclass(frozen=True)
class ModelSpec:
    variant: str
    n: int
    m: int | None = None  # edge count, Erdos-Renyi only
    p: float | None = None  # edge probability, Gilbert only

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown model variant {self.variant!r}")
        if self.n < 0:
            raise ValueError("order must be non-negative")
        big_n = self.n * (self.n - 1) // 2
        if self.variant == "erdos_renyi":
            if self.m is None or not 0 <= self.m <= big_n:
                raise ValueError(f"Erdos-Renyi needs 0 <= M <= {big_n}, got {self.m}")
        if self.variant == "gilbert":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ValueError(f"Gilbert needs 0 <= p <= 1, got {self.p}")

    @classmethod
    def erdos_renyi(cls, n: int, m: int) -> "ModelSpec":
        return cls("erdos_renyi", n, m=m)

    @classmethod
    def gilbert(cls, n: int, p: float) -> "ModelSpec":
        return cls("gilbert", n, p=float(p))

    @classmethod
    def uniform_labelled(cls, n: int) -> "ModelSpec":
        return cls("uniform_labelled", n)

    @classmethod
    def uniform_unlabelled(cls, n: int) -> "ModelSpec":
        return cls("uniform_unlabelled", n)

    def with_order(self, n: int) -> "ModelSpec":
        return ModelSpec(self.variant, n, self.m, self.p)

    @property
    def edge_probability(self) -> float | None:
        if self.variant == "gilbert":
            return self.p
        if self.variant == "uniform_labelled":
            return 0.5
        return None

    def __str__(self):
        return format_model(self)


def parse_model(text: str) -> ModelSpec:
    """Parse ``variant:key=value,...``, e.g. ``gilbert:n=20,p=0.5`` or ``er:n=10,m=20``."""
    name, _, rest = text.partition(":")
    variant = _ALIASES.get(name.strip().lower())
    if variant is None:
        raise ValueError(f"unknown model {name!r}; expected one of {sorted(_ALIASES)}")
    fields: dict[str, str] = {}
    for part in filter(None, (x.strip() for x in rest.split(","))):
        k, eq, v = part.partition("=")
        if not eq:
            raise ValueError(f"malformed model field {part!r}")
        fields[k.strip().lower()] = v.strip()
    if "n" not in fields:
        raise ValueError("model needs n=<order>")
    n = int(fields["n"])
    if variant == "erdos_renyi":
        return ModelSpec.erdos_renyi(n, int(fields.get("m", fields.get("M", "-1"))))
    if variant == "gilbert":
        if "p" in fields:
            p = float(Fraction(fields["p"]))
        elif "c" in fields:
            p = min(1.0, float(Fraction(fields["c"])) / n)
        else:
            raise ValueError("Gilbert model needs p=<prob> or c=<const> (p = c/n)")
        return ModelSpec.gilbert(n, p)
    return ModelSpec(variant, n)


def format_model(spec: ModelSpec) -> str:
    short = {"erdos_renyi": "er", "gilbert": "gilbert", "uniform_labelled": "labelled",
             "uniform_unlabelled": "unlabelled"}[spec.variant]
    if spec.variant == "erdos_renyi":
        return f"{short}:n={spec.n},m={spec.m}"
    if spec.variant == "gilbert":
        return f"{short}:n={spec.n},p={spec.p!r}"
    return f"{short}:n={spec.n}"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def pair_of_index(k: int) -> tuple[int, int]:
    j = (1 + math.isqrt(1 + 8 * k)) // 2
    if j * (j - 1) // 2 > k:
        j -= 1
    return k - j * (j - 1) // 2, j


def _graph_from_pair_mask(n: int, mask: np.ndarray) -> Graph:
    rows = [0] * n
    for k in np.flatnonzero(mask).tolist():
        i, j = pair_of_index(k)
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph(n, rows, check=False)


def _gilbert(rng: np.random.Generator, n: int, p: float) -> Graph:
    big_n = n * (n - 1) // 2
    if p >= 1.0:
        return Graph.complete(n)
    return _graph_from_pair_mask(n, rng.random(big_n) < p)


def _erdos_renyi(rng: np.random.Generator, n: int, m: int) -> Graph:
    """First ``m`` positions of a partial Fisher-Yates shuffle of the pair indices."""
    big_n = n * (n - 1) // 2
    if m == 0:
        return Graph.empty(n)
    picks = rng.integers(np.arange(m), big_n).tolist()
    moved: dict[int, int] = {}
    chosen = []
    for i, j in enumerate(picks):
        vi = moved.get(i, i)
        vj = moved.get(j, j)
        moved[j] = vi
        chosen.append(vj)
    mask = np.zeros(big_n, dtype=bool)
    mask[chosen] = True
    return _graph_from_pair_mask(n, mask)


def sample(spec: ModelSpec, seed: int, trial: int) -> Graph:
    """Draw trial ``trial`` of ``spec`` under ``seed`` (pure and reproducible)."""
    rng = trial_rng(seed, trial)
    if spec.variant == "gilbert":
        return _gilbert(rng, spec.n, spec.p)
    if spec.variant == "uniform_labelled":
        return _gilbert(rng, spec.n, 0.5)
    if spec.variant == "erdos_renyi":
        return _erdos_renyi(rng, spec.n, spec.m)
    if spec.n > ENUMERATION_CAP:
        raise UnsupportedOrder(
            f"exact unlabelled sampling is limited to n <= {ENUMERATION_CAP}; for larger n draw "
            "uniform labelled graphs and weight them with unlabelled_weight()"
        )
    reps = unlabelled_rows(spec.n)
    idx = int(rng.integers(len(reps)))
    return Graph(spec.n, reps[idx], check=False)


def samples(spec: ModelSpec, seed: int, trials: int) -> Iterable[Graph]:
    for t in range(trials):
        yield sample(spec, seed, t)


def unlabelled_weight(g: Graph) -> int:
    """|Aut(g)|: weighting uniform labelled draws by it gives unlabelled-uniform expectations."""
    return automorphism_count(g)


@dataclass(frozen=True)
class WeightedEstimate:
    estimate: float
    stderr: float
    trials: int

    def interval(self, z: float = 1.959963984540054) -> tuple[float, float]:
        return max(0.0, self.estimate - z * self.stderr), min(1.0, self.estimate + z * self.stderr)


def unlabelled_estimate(graphs: Iterable[Graph], indicator: Callable[[Graph], bool]) -> WeightedEstimate:
    """Ratio estimator of Pr_unlabelled[indicator] from uniform labelled draws."""
    ws, fs = [], []
    for g in graphs:
        ws.append(float(unlabelled_weight(g)))
        fs.append(1.0 if indicator(g) else 0.0)
    w = np.asarray(ws)
    f = np.asarray(fs)
    if w.size == 0:
        raise ValueError("no samples")
    est = float((w * f).sum() / w.sum())
    # delta-method variance of a ratio estimator
    k = w.size
    var = float((w ** 2 * (f - est) ** 2).sum() / w.sum() ** 2) * k / max(k - 1, 1)
    return WeightedEstimate(est, math.sqrt(var), k)
