"""Track classification, schedules, matrices, equivalence experiments."""

import math

import numpy as np
import pytest

from regionlab import BadParams
from regionlab import analyzer, audits, histories


def verdict_of(values, errors=None):
    v = np.asarray(values, dtype=float)
    e = np.full(v.shape, 1e-3) if errors is None else np.asarray(errors, dtype=float)
    return analyzer.classify_track(v, e)


def test_geometric_decay_converges():
    verdict, tol, note = verdict_of([1, 0.5, 0.25, 0.12, 0.06, 0.03])
    assert verdict == "ConvergesToZero"
    assert tol == pytest.approx(0.15)
    assert note == ""


def test_flat_track_is_bounded_away():
    assert verdict_of([1, 1, 1, 1, 1])[0] == "BoundedAway"


def test_fast_rise_diverges():
    assert verdict_of([1, 2, 5, 8, 12])[0] == "Diverges"


def test_mild_rise_is_bounded_away():
    assert verdict_of([1, 1.2, 1.5, 1.8, 2.0])[0] == "BoundedAway"


def test_track_below_sampling_floor_converges_with_note():
    verdict, tol, note = verdict_of([0.05] * 6, [0.05] * 6)
    assert verdict == "ConvergesToZero"
    assert "floor" in note


def test_stalled_decay_is_inconclusive():
    verdict, _, note = verdict_of([10, 5, 2, 1.5, 1.4, 1.35])
    assert verdict == "Inconclusive"
    assert note


def test_all_infinite_is_bounded_away_with_note():
    verdict, _, note = verdict_of([math.inf] * 6, [0.0] * 6)
    assert verdict == "BoundedAway"
    assert "infinite" in note


def test_short_track_is_inconclusive():
    verdict, _, note = verdict_of([1, 0.5, 0.2])
    assert verdict == "Inconclusive"
    assert "4" in note


def test_mixed_finite_infinite_is_inconclusive():
    assert verdict_of([math.inf, 2, 1, 0.5, 0.2, 0.1])[0] == "Inconclusive"


def test_noise_scales_the_tolerance():
    # same shape, large errors: the tolerance follows the noise
    _, tol_quiet, _ = verdict_of([1, 0.8, 0.6, 0.5, 0.45])
    _, tol_noisy, _ = verdict_of([1, 0.8, 0.6, 0.5, 0.45], [0.2] * 5)
    assert tol_quiet == pytest.approx(0.15)
    assert tol_noisy == pytest.approx(0.4)


@pytest.mark.parametrize("t0,ratio,steps", [(0, 0.5, 8), (-1, 0.5, 8), (0.5, 1.0, 8), (0.5, 0.0, 8), (0.5, 0.5, 3)])
def test_schedule_validation(t0, ratio, steps):
    with pytest.raises(BadParams):
        analyzer.Schedule(t0, ratio, steps)


def test_default_schedule_shapes():
    h = histories.catalog("history_4")
    plain = analyzer.default_schedule(h, analyzer.metric_by_name("H"))
    noisy = analyzer.default_schedule(h, analyzer.metric_by_name("W1"))
    assert plain.t0 == pytest.approx(0.8 * h.t_max)
    assert noisy.t0 == pytest.approx(0.8 * h.t_max)
    # sampled metrics decay slower and take more steps
    assert noisy.ratio > plain.ratio
    assert noisy.steps > plain.steps


def test_limit_estimate_history_4_converges():
    h = histories.catalog("history_4")
    rep = analyzer.limit_estimate(h, "H", seed=0)
    assert rep.verdict == "ConvergesToZero"
    ts = [s.t for s in rep.samples]
    assert ts == sorted(ts, reverse=True)
    assert rep.metric == "H"


def test_limit_estimate_verdict_stable_under_extra_steps():
    h = histories.catalog("history_4")
    base = analyzer.default_schedule(h, analyzer.metric_by_name("H"))
    longer = analyzer.Schedule(base.t0, base.ratio, base.steps + 2)
    r1 = analyzer.limit_estimate(h, "H", base, seed=0)
    r2 = analyzer.limit_estimate(h, "H", longer, seed=0)
    assert r1.verdict == r2.verdict == "ConvergesToZero"
    r3 = analyzer.limit_estimate(h, "Hd", base, seed=0)
    r4 = analyzer.limit_estimate(h, "Hd", longer, seed=0)
    assert r3.verdict == r4.verdict == "BoundedAway"


def test_limit_estimate_rejects_t0_beyond_domain():
    h = histories.catalog("history_4")
    with pytest.raises(BadParams):
        analyzer.limit_estimate(h, "H", analyzer.Schedule(h.t_max * 2, 0.5, 8))


def test_sequence_limit_porcupine():
    fam = histories.catalog("porcupine_1")
    rep = analyzer.sequence_limit(fam, "H", seed=0)
    assert rep.verdict == "ConvergesToZero"
    rep_v = analyzer.sequence_limit(fam, "V", seed=0)
    assert rep_v.verdict == "BoundedAway"


def test_report_serialization_roundtrip():
    h = histories.catalog("history_4")
    rep = analyzer.limit_estimate(h, "H", seed=0)
    doc = rep.to_dict()
    assert doc["history"] == "history_4"
    assert doc["verdict"] == "ConvergesToZero"
    assert len(doc["samples"]) == len(rep.samples)
    assert set(doc["samples"][0]) >= {"t", "value", "error", "stable"}


def test_wasserstein_track_trips_resolution_guard():
    # the heavier generator cannot be resolved at 1024 samples deep into the
    # tail, so the track truncates and says why
    h = histories.catalog("history_7", {"psi": "x^2"})
    rep = analyzer.limit_estimate(h, "Wp:3", seed=0)
    assert any(s.resolution_limited for s in rep.samples)
    assert "cannot resolve" in rep.notes


def test_fineness_matrix_space_s_mutual_not_finer():
    res = analyzer.fineness_matrix("S", metrics=("H", "V"), seed=0)
    hv = res.entries[("H", "V")]
    vh = res.entries[("V", "H")]
    assert hv["relation"] == "NOT-FINER"
    assert vh["relation"] == "NOT-FINER"
    assert hv["witnesses"] and vh["witnesses"]


def test_matrix_witnesses_never_certify_both_directions():
    res = analyzer.fineness_matrix("S", metrics=("H", "V"), seed=0)
    for (a, b), cell in res.entries.items():
        if cell["relation"] != "NOT-FINER":
            continue
        other = res.entries.get((b, a))
        if other is None or other["relation"] != "NOT-FINER":
            continue
        assert not (set(cell["witnesses"]) & set(other["witnesses"]))


def test_matrix_unknown_space_rejected():
    with pytest.raises(BadParams):
        analyzer.fineness_matrix("Q")


def test_convex_equivalence_shrinking_amplitude_passes():
    res = analyzer.convex_equivalence_experiment(trials=2, seed=1, metrics=("H", "V"))
    assert res.trials == 2
    assert not res.failures


def test_convex_equivalence_control_detects_non_convergence():
    # frozen amplitude: every metric should refuse to report convergence
    res = analyzer.convex_equivalence_experiment(
        trials=2, seed=1, metrics=("H", "V"), checkpoints=(0, 0, 0)
    )
    failed_metrics = {f["metric"] for f in res.failures}
    assert failed_metrics == {"H", "V"}


def test_wasserstein_order_experiment_separates():
    # 1024 transport samples are needed to push the light track under its floor
    res = analyzer.wasserstein_order_experiment("W1", "Wp:3", seed=0)
    assert res["separated"] is True
    assert res["alpha"]["verdict"] == "ConvergesToZero"
    assert res["beta"]["verdict"] in ("BoundedAway", "Diverges")


def test_wasserstein_order_requires_lighter_alpha():
    with pytest.raises(BadParams):
        analyzer.wasserstein_order_experiment("Wp:3", "W1")


def test_bound_audits_run_clean():
    for res in audits.bound_audits(trials=8, seed=5):
        assert res.violations == 0
        assert res.checked == 8
        assert res.ok


def test_bound_audits_name_filter():
    res = audits.bound_audits(trials=4, seed=2, names=["inball"])
    assert [r.name for r in res] == ["inball"]


def test_bound_audits_unknown_name():
    from regionlab import UnknownName

    with pytest.raises(UnknownName):
        audits.bound_audits(trials=4, seed=2, names=["bogus"])
