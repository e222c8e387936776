"""Sweep machinery: Wilson intervals, determinism across worker counts,
monotonicity, and threshold bisection."""

import json
import math

import pytest

from cayleylab import experiments
from cayleylab.experiments import (ConfigError, SweepConfig, compare_families,
                                   estimate_threshold, run_sweep,
                                   threshold_p_clamped, wilson_interval)
from cayleylab.graphs import stream


# -- Wilson intervals ---------------------------------------------------------


def test_wilson_examples():
    # hand-computed: denom = 1 + z^2/10, center = (0.9 + z^2/20)/denom, ...
    lo, hi = wilson_interval(9, 10)
    assert lo == pytest.approx(0.59585, abs=1e-4)
    assert hi == pytest.approx(0.98212, abs=1e-4)
    lo, hi = wilson_interval(0, 10)
    assert lo == 0.0 and hi == pytest.approx(0.27753, abs=1e-4)
    assert wilson_interval(0, 0) == (0.0, 1.0)


def test_wilson_brackets_rate():
    for succ, n in ((0, 50), (1, 7), (25, 50), (49, 50), (50, 50)):
        lo, hi = wilson_interval(succ, n)
        assert 0.0 <= lo <= succ / n <= hi <= 1.0


def test_wilson_coverage_self_test():
    """>= 93% of 1000 synthetic Bernoulli(0.5) replays contain the true rate."""
    rng = stream(8282, 0)
    trials = 200
    covered = 0
    for _ in range(1000):
        succ = int((rng.random(trials) < 0.5).sum())
        lo, hi = wilson_interval(succ, trials)
        covered += lo <= 0.5 <= hi
    assert covered >= 930


# -- config -------------------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ConfigError):
        SweepConfig(family=(), grid={"p": [0.1]}, trials=10, master_seed=0)
    with pytest.raises(ConfigError):
        SweepConfig(family=("cyclic:8",), grid={}, trials=10, master_seed=0)
    with pytest.raises(ConfigError):
        SweepConfig(family=("cyclic:8",), grid={"p": [0.1]}, trials=0, master_seed=0)
    with pytest.raises(ConfigError):
        SweepConfig(family=("cyclic:8",), grid={"p": [0.1]}, trials=5,
                    master_seed=0, model="bogus")
    with pytest.raises(ConfigError):
        run_sweep(SweepConfig(family=("cyclic:8",), grid={"p": [1.5]},
                              trials=5, master_seed=0))


def test_config_json_round_trip():
    cfg = SweepConfig(family=("cyclic:16", "z2^:4"), grid={"c": [1.0, 2.0]},
                      trials=50, master_seed=99, model="cayley")
    again = SweepConfig.from_json(cfg.to_json())
    assert again == cfg
    with pytest.raises(ConfigError):
        SweepConfig.from_json(json.dumps({"family": "cyclic:8"}))


def test_perm_backed_family_rejected():
    cfg = SweepConfig(family=("sym:8",), grid={"p": [0.1]}, trials=5, master_seed=0)
    with pytest.raises(ConfigError, match="dense"):
        run_sweep(cfg)


# -- sweeps ------------------------------------------------------------------------


def test_sweep_degenerate_points():
    cfg = SweepConfig(family=("cyclic:6",), grid={"p": [0.0, 1.0]},
                      trials=20, master_seed=3)
    res = run_sweep(cfg, workers=1)
    by_p = {row.p: row for row in res.rows}
    assert by_p[0.0].successes == 0
    assert by_p[1.0].successes == 20


def test_sweep_single_trial_complete_graph():
    cfg = SweepConfig(family=("sym:3",), grid={"p": [1.0]}, trials=1, master_seed=0)
    assert run_sweep(cfg).rows[0].successes == 1


def test_sweep_row_ordering_and_csv():
    cfg = SweepConfig(family=("z2^:4", "cyclic:12"), grid={"p": [0.4, 0.2]},
                      trials=10, master_seed=5)
    res = run_sweep(cfg, workers=2)
    keys = [(r.family, r.n, r.p) for r in res.rows]
    assert keys == sorted(keys)
    csv = res.to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == experiments.CSV_HEADER
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "cyclic:12" and first[1] == "12"
    assert first[3] == ""  # no c column values on a p grid


def test_sweep_c_grid_maps_through_threshold():
    cfg = SweepConfig(family=("cyclic:64",), grid={"c": [2.0]}, trials=5, master_seed=1)
    row = run_sweep(cfg).rows[0]
    assert row.c == 2.0
    assert row.p == pytest.approx(math.sqrt(2 * math.log(64) / 64))


def test_sweep_deterministic_across_workers():
    cfg = SweepConfig(family=("cyclic:64", "z2^:6"), grid={"c": [0.5, 1.0, 2.0]},
                      trials=60, master_seed=31)
    outs = {w: run_sweep(cfg, workers=w, include_timing=False).to_csv()
            for w in (1, 4, 8)}
    assert outs[1] == outs[4] == outs[8]


def test_sweep_latin_model_matches_cayley_for_group_squares():
    base = dict(family=("cyclic:24",), grid={"p": [0.25]}, trials=40, master_seed=11)
    cay = run_sweep(SweepConfig(model="cayley", **base)).rows[0]
    lat = run_sweep(SweepConfig(model="latin", **base)).rows[0]
    assert cay.successes == lat.successes


def test_sweep_monotone_in_c():
    cfg = SweepConfig(family=("z2^:8",), grid={"c": [1.0, 2.0, 3.0]},
                      trials=300, master_seed=2)
    rows = run_sweep(cfg).rows
    rates = [r.rate for r in rows]
    ses = [math.sqrt(max(r.rate * (1 - r.rate), 1 / r.trials) / r.trials) for r in rows]
    for i in range(len(rows) - 1):
        slack = 3 * math.hypot(ses[i], ses[i + 1])
        assert rates[i + 1] >= rates[i] - slack


# -- threshold estimation --------------------------------------------------------------


def test_threshold_p_clamped():
    assert threshold_p_clamped(8.0, 16) == 1.0
    assert threshold_p_clamped(0.5, 4096) == pytest.approx(
        math.sqrt(0.5 * math.log(4096) / 4096))


def test_estimate_threshold_quick():
    est = estimate_threshold("cyclic:256", trials_per_probe=150, master_seed=77,
                             iterations=6, workers=2)
    assert est.straddles
    assert est.bracket[0] <= est.c_hat <= est.bracket[1]
    assert 0.05 <= est.c_hat <= 8.0
    assert est.c_hat_log2 == pytest.approx(est.c_hat * math.log(2))
    # deterministic
    again = estimate_threshold("cyclic:256", trials_per_probe=150, master_seed=77,
                               iterations=6, workers=1)
    assert again.c_hat == est.c_hat


def test_estimate_threshold_bad_bracket():
    est = estimate_threshold("cyclic:128", trials_per_probe=120, master_seed=5,
                             bracket=(5.0, 8.0), iterations=3)
    assert not est.straddles
    assert math.isnan(est.c_hat)
    assert "does not straddle" in est.note


def test_estimate_threshold_validates_trials():
    with pytest.raises(ConfigError):
        estimate_threshold("cyclic:64", trials_per_probe=50, master_seed=0)


def test_gnp_baseline_crosses_later_than_cyclic():
    """Test-only Erdos-Renyi sampler as a baseline column: the cyclic family
    reaches diameter 2 at a visibly smaller c than G(n, p) at matched order."""
    import numpy as np

    n = 256

    def gnp_rate(c: float, probe: int, trials: int = 150) -> float:
        p = threshold_p_clamped(c, n)
        succ = 0
        for t in range(trials):
            rng = stream(909, probe, t)
            upper = rng.random((n, n)) < p
            adj = np.triu(upper, k=1)
            adj = adj | adj.T
            common = (adj.astype(np.float32) @ adj.astype(np.float32)) > 0
            succ += bool((adj | common)[np.triu_indices(n, k=1)].all())
        return succ / trials

    lo, hi = 0.05, 8.0
    assert gnp_rate(lo, 0) < 0.5 <= gnp_rate(hi, 1)
    for i in range(7):
        mid = (lo + hi) / 2
        if gnp_rate(mid, 2 + i) < 0.5:
            lo = mid
        else:
            hi = mid
    gnp_c = (lo + hi) / 2
    cyc = estimate_threshold("cyclic:256", trials_per_probe=150, master_seed=909,
                             iterations=7)
    assert cyc.straddles
    assert 1.0 <= gnp_c <= 4.0       # asymptotically 2, loose finite-size bracket
    assert gnp_c > cyc.c_hat + 0.5   # cyclic crosses much earlier


def test_compare_families():
    mk = lambda fam, c: experiments.ThresholdEstimate(
        family=fam, n=4096, c_hat=c, bracket=(c - 0.01, c + 0.01),
        trials_per_probe=100, straddles=True, endpoint_rates=(0.0, 1.0))
    rep = compare_families([mk("a", 2.0), mk("b", 0.5), mk("c", 0.25)])
    assert rep["order"] == ["a", "b", "c"]
    assert rep["strict_order"] and rep["disjoint_brackets"]
    assert rep["comparisons"][0]["ratio"] == pytest.approx(4.0)

    single = compare_families([mk("solo", 1.0)])
    assert single["order"] == ["solo"] and single["comparisons"] == []
    with pytest.raises(ValueError):
        compare_families([])
