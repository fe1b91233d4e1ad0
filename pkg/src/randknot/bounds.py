"""Closed-form bounds behind the "most graphs are knotted" arguments.

Notation: ``N = n(n-1)/2`` pairs, ``r = 5n - 15`` (the largest size a non-IK
graph can have by Mader's bound), ``q = floor(N/2)``, and for Gilbert's
model ``t = p - r/N``.  Combinatorial quantities are handled in log space
(natural logarithms) with exact integer arithmetic where it is cheap.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import gammaln, logsumexp

EXACT_MAX_ORDER = 30


class InapplicableBound(ValueError):
    """The requested inequality does not apply at these parameters."""


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def tail_cutoff(n: int) -> int:
    return 5 * n - 15


def _log_binom(big_n, k):
    return gammaln(big_n + 1) - gammaln(k + 1) - gammaln(big_n - k + 1)


def log_tail(n: int, p: float, cutoff: int | None = None) -> float:
    """log Pr[Bin(N, p) <= cutoff]; cutoff defaults to 5n - 15."""
    big_n = pair_count(n)
    r = tail_cutoff(n) if cutoff is None else cutoff
    if r < 0:
        return -math.inf
    if r >= big_n:
        return 0.0
    if p >= 1.0:
        return -math.inf
    if p <= 0.0:
        return 0.0
    k = np.arange(r + 1)
    terms = _log_binom(big_n, k) + k * math.log(p) + (big_n - k) * math.log1p(-p)
    return float(min(0.0, logsumexp(terms)))


def exact_tail_fraction(n: int, p: float | Fraction, cutoff: int | None = None) -> Fraction:
    """Exact rational tail for a rational (or binary float) p."""
    big_n = pair_count(n)
    r = tail_cutoff(n) if cutoff is None else cutoff
    p = Fraction(p)
    q = 1 - p
    return sum((math.comb(big_n, k) * p ** k * q ** (big_n - k) for k in range(min(r, big_n) + 1)), Fraction(0))


def exact_tail(n: int, p: float) -> float:
    """Pr[||G|| <= 5n - 15] for G ~ G(n, p), for n >= 7 and 0 < p <= 1."""
    if n < 7:
        raise ValueError("the tail bound needs n >= 7")
    if not 0.0 < p <= 1.0:
        raise ValueError("need 0 < p <= 1")
    if n <= EXACT_MAX_ORDER:
        return float(exact_tail_fraction(n, p))
    return math.exp(log_tail(n, p))


def hoeffding_t(n: int, p: float) -> float:
    return p - tail_cutoff(n) / pair_count(n)


def hoeffding_bound(n: int, p: float) -> float:
    """exp(-2 t^2 N) with t = p - (5n-15)/N; refuses t <= 0."""
    if n < 7:
        raise ValueError("the tail bound needs n >= 7")
    t = hoeffding_t(n, p)
    if t <= 0:
        raise InapplicableBound(f"t = {t:.6g} <= 0 at n={n}, p={p}: the mean is not above 5n-15")
    return math.exp(-2.0 * t * t * pair_count(n))


@dataclass(frozen=True)
class Link:
    """One inequality ``lhs < rhs`` of the chain, both sides as natural logs."""

    name: str
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class BoundReport:
    n: int
    p: float | None
    N: int
    r: int
    q: int
    t: float | None
    exact_tail: float | None
    hoeffding: float | None
    model3_terms: dict = field(default_factory=dict)
    links: tuple[Link, ...] = ()

    @property
    def all_hold(self) -> bool:
        return all(link.holds for link in self.links)

    def to_json(self) -> dict:
        d = asdict(self)
        d["links"] = [asdict(x) for x in self.links]
        return d

    def csv_fields(self) -> list[str]:
        return ["n", "p", "N", "r", "q", "t", "exact_tail", "hoeffding"] + sorted(self.model3_terms)

    def csv_row(self) -> list:
        base = [self.n, self.p, self.N, self.r, self.q, self.t, self.exact_tail, self.hoeffding]
        return base + [self.model3_terms[k] for k in sorted(self.model3_terms)]


def gilbert_report(n: int, p: float) -> BoundReport:
    big_n, r = pair_count(n), tail_cutoff(n)
    t = hoeffding_t(n, p)
    tail = exact_tail(n, p)
    hb = hoeffding_bound(n, p) if t > 0 else None
    links = ()
    if hb is not None:
        lt = math.log(tail) if tail > 0 else -math.inf
        links = (Link("exact_tail <= hoeffding", lt, -2 * t * t * big_n, lt <= -2 * t * t * big_n),)
    terms = model3_chain(n).model3_terms if n >= 18 else {}
    return BoundReport(n, p, big_n, r, big_n // 2, t, tail, hb, terms, links)


def _log_factorial(n: int) -> float:
    return float(gammaln(n + 1))


def model3_chain(n: int) -> BoundReport:
    """The unlabelled-model counting chain, every quantity as a natural log.

    Checked links (each must hold pointwise at this n):

    * sum_{k<=r} C(N,k) < (r+1) C(N,r)
    * C(N,r)/C(N,q) = prod_{i=r+1..q} i / prod_{i=N-q+1..N-r} i <= (q/(N-r))^(q-r)
    * n! < n^(n-1), used to pass from (r+1) n! 1.1^(-n^2) to (r+1)/n (n/1.1^n)^n
    * for n > 105: q - r > n^2/5, q/(N-r) < 3/5, (q/(N-r))^(q-r) < (3/5)^(n^2/5) < 1.1^(-n^2)
    """
    if n < 18:
        raise ValueError("the unlabelled chain needs n >= 18 (so that r < q)")
    big_n, r = pair_count(n), tail_cutoff(n)
    q = big_n // 2
    links = [Link("r < q", float(r), float(q), r < q)]

    exact = n <= 300
    if exact:
        lsum_int = sum(math.comb(big_n, k) for k in range(r + 1))
        upper_int = (r + 1) * math.comb(big_n, r)
        log_sum = math.log(lsum_int)
        log_upper = math.log(upper_int)
        links.append(Link("sum C(N,k) < (r+1)C(N,r)", log_sum, log_upper, lsum_int < upper_int))
    else:
        k = np.arange(r + 1)
        log_sum = float(logsumexp(_log_binom(big_n, k)))
        log_upper = math.log(r + 1) + float(_log_binom(big_n, r))
        links.append(Link("sum C(N,k) < (r+1)C(N,r)", log_sum, log_upper, log_sum < log_upper))

    log_wright = float(_log_binom(big_n, q)) - _log_factorial(n)
    log_ratio_exact = math.fsum(math.log(i) for i in range(r + 1, q + 1)) - math.fsum(
        math.log(i) for i in range(big_n - q + 1, big_n - r + 1)
    )
    log_base = math.log(q / (big_n - r))
    log_power = (q - r) * log_base
    if n <= 120:
        num = math.prod(range(r + 1, q + 1))
        den = math.prod(range(big_n - q + 1, big_n - r + 1))
        ratio_ok = num * (big_n - r) ** (q - r) <= q ** (q - r) * den
    else:
        ratio_ok = log_ratio_exact < log_power
    # equality when q - r = 1 (n = 18), strict beyond
    links.append(Link("C(N,r)/C(N,q) <= (q/(N-r))^(q-r)", log_ratio_exact, log_power, ratio_ok))

    log_proportion = log_upper - log_wright  # (r+1)C(N,r) / (C(N,q)/n!)
    log_chain = math.log(r + 1) + _log_factorial(n) + log_power
    log_final = math.log(r + 1) - math.log(n) + n * (math.log(n) - n * math.log(1.1))
    links.append(Link("n! < n^(n-1)", _log_factorial(n), (n - 1) * math.log(n), _log_factorial(n) < (n - 1) * math.log(n)))
    if n > 105:
        links.append(Link("q - r > n^2/5", n * n / 5, float(q - r), (q - r) * 5 > n * n))
        links.append(Link("q/(N-r) < 3/5", log_base, math.log(0.6), 5 * q < 3 * (big_n - r)))
        a = (n * n / 5) * math.log(0.6)
        b = -(n * n) * math.log(1.1)
        links.append(Link("(q/(N-r))^(q-r) < (3/5)^(n^2/5)", log_power, a, log_power < a))
        links.append(Link("(3/5)^(n^2/5) < 1.1^(-n^2)", a, b, a < b))
        links.append(Link("(r+1)n!1.1^(-n^2) < (r+1)/n (n/1.1^n)^n",
                          math.log(r + 1) + _log_factorial(n) + b, log_final,
                          math.log(r + 1) + _log_factorial(n) + b < log_final))

    terms = {
        "log_count_upper": log_upper,  # log (r+1) C(N,r)
        "log_count_exact": log_sum,  # log sum_{k<=r} C(N,k)
        "log_wright_count": log_wright,  # log C(N,q)/n!
        "log_ratio_power": log_power,  # log (q/(N-r))^(q-r)
        "log_chain_bound": log_chain,  # log (r+1) n! (q/(N-r))^(q-r)
        "log_proportion_bound": log_proportion,
        "log_final_term": log_final,  # log (r+1)/n (n/1.1^n)^n
    }
    return BoundReport(n, None, big_n, r, q, None, None, None, terms, tuple(links))


def complement_edge_bound(search_to: int = 200) -> int:
    """Least n >= 7 from which ceil(N/2) >= 5n - 14 holds for every larger order checked."""
    ok = [m for m in range(7, search_to + 1) if -(-pair_count(m) // 2) >= 5 * m - 14]
    best = None
    for m in range(search_to, 6, -1):
        if m in ok:
            best = m
        else:
            break
    if best is None:
        raise RuntimeError("inequality never settles in the searched range")
    return best


def known_bounds() -> dict:
    """Complement bounds: exact values and ranges known for small properties."""
    return {
        "n_NP": 9,
        "n_NA": 11,
        "n_N2A": 13,
        "n_IL": (11, 13),
        "n_IK": (13, 18),
        "n_NnA_upper": lambda k: 2 * k + 9,
    }


def complement_bound_not_apex(k: int) -> int:
    """Best known upper bound for the complement bound of 'not k-apex'."""
    exact = {0: 9, 1: 11, 2: 13}
    return exact.get(k, 2 * k + 9)
