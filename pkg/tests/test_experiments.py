import pytest

from randknot.experiments import (
    BudgetGuard,
    ExperimentSpec,
    GateFailure,
    property_status,
    run_complement_search,
    run_experiment,
    run_ik_fraction,
    run_not_napex_fraction,
    run_pairing_fraction,
    run_tail_vs_bound,
    run_threshold_sweep,
    run_wright_ratio,
    write_csv,
)
from randknot.detectors import Status
from randknot.graph import Graph
from randknot.models import ModelSpec


def test_ik_fraction_complete_graphs():
    row, = run_ik_fraction(ModelSpec.gilbert(7, 1.0), [7], 20, 1)
    assert row.estimate == 1.0 and row.extra["exact_tail"] == 0.0


def test_ik_fraction_dense_gilbert():
    row, = run_ik_fraction(ModelSpec.gilbert(50, 0.5), [50], 200, 2)
    assert row.extra["exact_tail"] < 1e-20
    assert row.estimate == 1.0


def test_ik_fraction_unlabelled_exhaustive():
    row, = run_ik_fraction(ModelSpec.uniform_unlabelled(7), [7], 1, 0, exhaustive=True)
    assert row.trials == 1044
    # K7 is the only order-7 graph with 21 edges, and the only IK one
    assert row.successes == 1
    assert row.successes + row.extra["no"] + row.extra["unknown"] == 1044


def test_ik_fraction_weighted_above_cap():
    row, = run_ik_fraction(ModelSpec.uniform_unlabelled(12), [12], 30, 3)
    assert row.extra["mode"] == "weighted"
    assert 0.0 <= row.extra["weighted_yes"] <= 1.0


def test_three_valued_accounting():
    for row in run_ik_fraction(ModelSpec.gilbert(10, 0.6), [9, 11], 60, 4):
        assert row.estimate <= 1 - row.extra["frac_no"] + 1e-12
        assert row.successes + row.extra["no"] + row.extra["unknown"] == row.trials
        assert 0 <= row.ci_low <= row.estimate <= row.ci_high <= 1


def test_threshold_subcritical_and_validation():
    row, = run_threshold_sweep([0.5], [200], 5, 300, 5)
    assert row.estimate < 0.05
    with pytest.raises(ValueError):
        run_threshold_sweep([2.0], [50], 4, 10, 0)
    with pytest.raises(ValueError):
        run_threshold_sweep([0.0], [50], 5, 10, 0)


def test_complement_search_small_orders():
    r = run_complement_search(8, "nonplanar", "exhaustive")
    assert r.findings and all(f.status == "counterexample" for f in r.findings)
    r = run_complement_search(5, "IK", "exhaustive")
    # order 5: nothing is knotted, every pair is a certified counterexample
    assert len(r.findings) == r.examined


def test_complement_search_budget_flags_partial():
    r = run_complement_search(7, "nonplanar", "exhaustive", budget=10)
    assert r.partial and r.examined == 10


def test_complement_search_order_18_ik_sampled():
    r = run_complement_search(18, "IK", "sampled", budget=500, seed=8)
    assert r.findings == [] and r.examined == 500


def test_complement_search_candidates_are_not_counterexamples(monkeypatch):
    import randknot.experiments as ex

    monkeypatch.setattr(ex, "property_status", lambda g, prop: Status.UNKNOWN)
    r = run_complement_search(4, "IK", "exhaustive")
    assert r.findings and {f.status for f in r.findings} == {"candidate"}


def test_self_complementary_counts():
    assert run_complement_search(4, "nonplanar").self_complementary == 1
    assert run_complement_search(5, "nonplanar").self_complementary == 2
    assert run_complement_search(8, "nonplanar").self_complementary == 10


def test_pairing_fraction():
    assert run_pairing_fraction(4, "nonplanar").estimate == 0.0
    row = run_pairing_fraction(13, "IL", "sampled", budget=300, seed=9)
    assert row.extra["gated"] and row.estimate >= 0.5
    row = run_pairing_fraction(8, "nonplanar", "exhaustive")
    assert not row.extra["gated"]


def test_pairing_gate_failure(monkeypatch):
    import randknot.experiments as ex

    monkeypatch.setattr(ex, "property_status", lambda g, prop: Status.NO)
    with pytest.raises(GateFailure):
        ex.run_pairing_fraction(9, "not-0-apex", "sampled", budget=20)


def test_tail_vs_bound():
    rows = run_tail_vs_bound([20, 30, 40], 0.5, 3000, 10)
    exact = [r.extra["exact_tail"] for r in rows]
    bound = [r.extra["hoeffding"] for r in rows]
    assert exact[0] > exact[1] and bound[0] > bound[1] > bound[2]
    assert all(r.extra["exact_le_bound"] for r in rows)


def test_not_apex_fraction_and_guard():
    row = run_not_napex_fraction(9, 0, 300, 11)
    assert row.estimate >= 0.5
    with pytest.raises(BudgetGuard):
        run_not_napex_fraction(21, 1, 10, 0)
    with pytest.raises(BudgetGuard):
        run_not_napex_fraction(10, 3, 10, 0)
    with pytest.raises(ValueError):
        run_not_napex_fraction(0, 0, 10, 0)


def test_wright_ratio():
    rows = run_wright_ratio([5, 6, 7, 8, 9])
    # at most n! labellings per class forces ratio >= 1
    assert all(r["ratio"] >= 1 and 0 < r["inverse_ratio"] <= 1 for r in rows)
    assert [r["gamma_nq"] for r in rows] == [6, 24, 148, 1646, 34040]
    ratios = [r["ratio"] for r in rows]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_property_status():
    assert property_status(Graph.complete(5), "nonplanar") is Status.YES
    assert property_status(Graph.complete(6), "not-2-apex") is Status.NO
    with pytest.raises(ValueError):
        property_status(Graph.complete(5), "blue")


def test_csv_is_deterministic_and_self_describing():
    spec = ExperimentSpec("TailVsBound", trials=500, seed=3, params={"n_values": [20], "p": 0.5})
    a = write_csv(run_experiment(spec), spec)
    b = write_csv(run_experiment(spec, jobs=2), spec)
    assert a == b
    first, header = a.splitlines()[:2]
    assert first.startswith("# spec=") and '"seed": 3' in first
    assert "mean_seconds" not in header
    assert "mean_seconds" in write_csv(run_experiment(spec), spec, timing=True)


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec("Nope")
    with pytest.raises(ValueError):
        ExperimentSpec("TailVsBound", trials=0)
