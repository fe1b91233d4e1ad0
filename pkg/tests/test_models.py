import math
from collections import Counter

import numpy as np
import pytest

from randknot.canon import automorphism_count, canonical_code
from randknot.enumeration import UnsupportedOrder, enumerate_unlabelled
from randknot.graph import Graph
from randknot.models import (
    ModelSpec,
    format_model,
    pair_of_index,
    parse_model,
    sample,
    samples,
    unlabelled_estimate,
    unlabelled_weight,
)


def test_degenerate_models():
    for t in range(5):
        assert sample(ModelSpec.gilbert(9, 1.0), 1, t) == Graph.complete(9)
        assert sample(ModelSpec.gilbert(9, 0.0), 1, t) == Graph.empty(9)
        assert sample(ModelSpec.erdos_renyi(5, 10), 1, t) == Graph.complete(5)


def test_erdos_renyi_has_exact_size():
    for t in range(200):
        m = t % 46
        assert sample(ModelSpec.erdos_renyi(10, m), 3, t).size() == m


def test_erdos_renyi_is_uniform_over_pairs():
    # each of the 10 pairs of K5 is chosen with probability M/N
    counts = np.zeros(10)
    trials = 20_000
    for t in range(trials):
        g = sample(ModelSpec.erdos_renyi(5, 3), 11, t)
        for i, j in g.edges():
            counts[j * (j - 1) // 2 + i] += 1
    p = 3 / 10
    se = math.sqrt(trials * p * (1 - p))
    assert np.all(np.abs(counts - trials * p) < 4.5 * se)


def test_gilbert_mean_size():
    n, p, trials = 20, 0.3, 4000
    sizes = np.array([g.size() for g in samples(ModelSpec.gilbert(n, p), 5, trials)])
    big_n = n * (n - 1) // 2
    se = math.sqrt(big_n * p * (1 - p) / trials)
    assert abs(sizes.mean() - p * big_n) < 4 * se


def test_reproducible_and_distinct_streams():
    spec = ModelSpec.gilbert(30, 0.5)
    assert sample(spec, 42, 7) == sample(spec, 42, 7)
    assert sample(spec, 42, 7) != sample(spec, 42, 8)
    assert sample(spec, 42, 7) != sample(spec, 43, 7)


def test_labelled_is_gilbert_half():
    for t in range(20):
        assert sample(ModelSpec.uniform_labelled(12), 9, t) == sample(ModelSpec.gilbert(12, 0.5), 9, t)


def test_unlabelled_uniformity_order_4():
    trials = 110_000
    codes = Counter(canonical_code(sample(ModelSpec.uniform_unlabelled(4), 2024, t)) for t in range(trials))
    assert len(codes) == 11
    p = 1 / 11
    sigma = math.sqrt(trials * p * (1 - p))
    assert all(abs(c - trials * p) < 3 * sigma for c in codes.values())


def test_unlabelled_above_cap():
    with pytest.raises(UnsupportedOrder, match="unlabelled_weight"):
        sample(ModelSpec.uniform_unlabelled(10), 0, 0)


def test_weights():
    assert unlabelled_weight(Graph.complete(6)) == 720
    asym = next(g for g in enumerate_unlabelled(6) if automorphism_count(g) == 1)
    assert unlabelled_weight(asym) == 1


def test_weighted_estimator_recovers_unlabelled_probability():
    est = unlabelled_estimate(samples(ModelSpec.uniform_labelled(4), 77, 20_000), lambda g: g.size() == 3)
    lo, hi = est.interval(z=3.0)
    assert lo <= 3 / 11 <= hi
    # the unweighted labelled frequency is different: C(6,3)/64
    assert abs(20 / 64 - 3 / 11) > 0.03


def test_spec_validation():
    with pytest.raises(ValueError):
        ModelSpec.erdos_renyi(5, 11)
    with pytest.raises(ValueError):
        ModelSpec.gilbert(5, 1.5)
    with pytest.raises(ValueError):
        ModelSpec("smallworld", 5)


def test_parse_and_format():
    for text in ("gilbert:n=20,p=0.5", "er:n=10,m=20", "labelled:n=9", "unlabelled:n=7"):
        assert format_model(parse_model(text)) == text
    assert parse_model("gilbert:n=200,c=2").p == pytest.approx(0.01)
    assert parse_model("gnp:n=10,p=1/4").p == 0.25
    for bad in ("foo:n=3", "gilbert:p=0.5", "gilbert:n=5", "er:n=5,m"):
        with pytest.raises(ValueError):
            parse_model(bad)


def test_pair_index_is_graph6_column_order():
    k = 0
    for j in range(1, 40):
        for i in range(j):
            assert pair_of_index(k) == (i, j)
            k += 1
