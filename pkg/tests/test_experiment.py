import pytest

from charp.experiment import ExperimentConfig, run_experiment


def test_zero_trials_empty_report():
    cfg = ExperimentConfig(family="symbols", trials=0, seed=1)
    report = run_experiment(cfg)
    assert report.rows == []
    assert report.to_csv().strip().splitlines() == [
        "trial,scenario,bound_rule,bound,achieved,certified,runtime_ms,error"]
    assert report.summary()["trials"] == 0


def test_symbols_family_reciprocity():
    cfg = ExperimentConfig(family="symbols", trials=12, seed=3)
    report = run_experiment(cfg)
    summary = report.summary()
    assert summary["failed"] == 0 and summary["trials"] == 12


def test_merge_family():
    cfg = ExperimentConfig(family="merge_pipeline", trials=8, seed=4)
    report = run_experiment(cfg)
    assert report.summary()["failed"] == 0


def test_insep_cyclic_family_respects_bounds():
    cfg = ExperimentConfig(family="insep_cyclic", trials=6, seed=5,
                           degree_cap=2, norm_bound=3)
    report = run_experiment(cfg)
    summary = report.summary()
    assert summary["failed"] == 0
    assert summary["all_within_bound"] and summary["all_certified"]


def test_deterministic_under_seed():
    cfg = ExperimentConfig(family="insep_cyclic", trials=4, seed=9,
                           degree_cap=2, norm_bound=3)
    rows_a = [r.as_list()[:6] for r in run_experiment(cfg).rows]
    rows_b = [r.as_list()[:6] for r in run_experiment(cfg).rows]
    assert rows_a == rows_b


def test_seed_is_mandatory_in_configs():
    with pytest.raises(ValueError):
        ExperimentConfig.from_json({"family": "symbols", "trials": 1})


def test_unknown_family_is_recorded_not_fatal():
    cfg = ExperimentConfig(family="no_such_family", trials=2, seed=1)
    report = run_experiment(cfg)
    assert report.summary()["failed"] == 2
    assert all(r.error for r in report.rows)


def test_merge_family_p3_fifty_trials():
    cfg = ExperimentConfig(family="merge_pipeline", trials=50, seed=8, p=3,
                           degree_cap=2)
    report = run_experiment(cfg)
    assert report.summary()["failed"] == 0
