"""Test the Alice and Bob Monte Carlo against the closed forms."""

import json
import logging
import math
import pytest

from qrevsim.Errors import InvalidParameter
from qrevsim.Options import Options
from qrevsim.coherent import ModelParams
from qrevsim.analysis import reversibility
from qrevsim.engine import PLUS, MINUS, UP, DOWN, PSI_PLUS
from qrevsim.protocol import ProtocolConfig, Protocol, RunRecord, single_run, run_monte_carlo, \
    run_multi_observer, z_score, SPIN_CHECK, BELL_CHECK, DISAGREE, AGREE, YES, NO


def test_run_records():
    failed = RunRecord(3, PLUS, UP, SPIN_CHECK, DISAGREE, 2.5)
    assert failed.failed and failed.fine_paid == 2.5
    assert str(failed) == "3,plus,up,spin_check,disagree,2.5"
    assert len(str(failed).split(',')) == len(RunRecord.header().split(','))
    assert not RunRecord(4, MINUS, DOWN, SPIN_CHECK, AGREE).failed
    assert RunRecord(5, MINUS, DOWN, BELL_CHECK, NO).failed
    assert RunRecord(6, MINUS, DOWN, BELL_CHECK, YES).fine_paid == 0.0


def test_z_score():
    assert z_score(0.5, 0.5, 100) == 0.0
    assert z_score(0.6, 0.5, 100) == pytest.approx(2.0)
    assert z_score(0.1, 0.0, 10) == math.inf
    assert z_score(math.nan, 0.5, 0) == 0.0


@pytest.mark.parametrize("kwargs", [
    {'n_runs': 0},
    {'n_runs': 2.5},
    {'n_runs': 10, 'alice_check_probability': 1.5},
    {'n_runs': 10, 'fine_per_failure': -1.0},
    {'n_runs': 10, 'master_seed': -1},
    {'n_runs': 10, 'observer_labels': ('eve',)},
])
def test_invalid_config(params, kwargs):
    with pytest.raises(InvalidParameter):
        ProtocolConfig(params, **kwargs)


def test_too_much_tapped():
    with pytest.raises(InvalidParameter):
        ModelParams(2, 0.5, bob_eta=0.6, other_etas=(0.5,))


def test_default_observer_labels(params):
    config = ProtocolConfig(params.with_etas(other_etas=(0.1, 0.2)), 10)
    assert config.observer_labels == ('observer2', 'observer3')


def test_options_config(params):
    options = dict(Options().get(), seed=9, reversal_knows_total_tap='false')
    config = ProtocolConfig.from_options(params, 10, options)
    assert config.master_seed == 9
    assert not config.reversal_knows_total_tap


def test_same_records_for_any_worker_count(params):
    config = ProtocolConfig(params, 500, master_seed=7)
    Options().get()['threads'] = 1
    serial = Protocol(config).run_records()
    Options().get()['threads'] = 4
    parallel = Protocol(config).run_records()
    assert serial == parallel
    assert [record.run_index for record in parallel] == list(range(500))


def test_single_run_matches_batch(params):
    config = ProtocolConfig(params, 50, master_seed=3)
    records = Protocol(config).run_records()
    assert single_run(config, 17) == records[17]


def test_different_seeds_differ(params):
    first = Protocol(ProtocolConfig(params, 200, master_seed=1)).run_records()
    second = Protocol(ProtocolConfig(params, 200, master_seed=2)).run_records()
    assert first != second


def test_runs_are_logged_in_order(params, caplog):
    config = ProtocolConfig(params, 40, master_seed=5)
    Options().get()['threads'] = 3
    with caplog.at_level(logging.INFO, logger="runs"):
        records = Protocol(config).run_records()
    assert [record.getMessage() for record in caplog.records if record.name == "runs"] == \
           [str(record) for record in records]


def test_no_measurement_is_perfectly_reversible(params):
    stats = run_monte_carlo(ProtocolConfig(params.with_etas(bob_eta=0.0), 2000, master_seed=11))
    assert stats.empirical_fidelity == 1.0
    assert stats.expected_fidelity == 1.0
    assert stats.expected_p_error == 0.5
    assert stats.z_scores()['p_error'] < 4.0


def test_ideal_measurement_limit():
    params = ModelParams(5, 1.0, bob_eta=1.0)
    stats = run_monte_carlo(ProtocolConfig(params, 10000, master_seed=13))
    assert stats.empirical_p_error == 0.0
    assert stats.n_spin_checks > 4000
    assert stats.expected_fidelity == pytest.approx(0.5, abs=1e-20)
    assert stats.z_scores()['fidelity'] < 4.0


def test_only_spin_checks(params):
    stats = run_monte_carlo(ProtocolConfig(params, 300, alice_check_probability=1.0))
    assert stats.n_bell_checks == 0
    report = stats.to_dict()
    assert report['empirical']['fidelity'] is None
    assert report['counts']['spin_checks'] == 300
    json.dumps(report)


def test_observer_reliability(params):
    params = params.with_etas(bob_eta=0.3, other_etas=(0.2, 0.4))
    stats = run_multi_observer(ProtocolConfig(params, 100, observer_labels=('eve', 'mallory')))
    assert set(stats.observer_reliability) == {'eve', 'mallory'}
    for label in ('eve', 'mallory'):
        entry = stats.observer_reliability[label]
        assert entry['p_error'] == pytest.approx(entry['expected_p_error'], abs=1e-12)
        assert entry['d_rel'] == pytest.approx(entry['expected_d_rel'], abs=1e-12)
    assert stats.to_dict()['parameters']['observers'] == {'eve': 0.2, 'mallory': 0.4}


def test_observer_labels_do_not_change_runs(params):
    params = params.with_etas(bob_eta=0.3, other_etas=(0.2,))
    labelled = Protocol(ProtocolConfig(params, 200, master_seed=4, observer_labels=('eve',))).run_records()
    default = Protocol(ProtocolConfig(params, 200, master_seed=4)).run_records()
    assert labelled == default


def test_expected_values_with_observers(params):
    params = params.with_etas(bob_eta=0.3, other_etas=(0.2,))
    knows = Protocol(ProtocolConfig(params, 10)).run_monte_carlo()
    ignorant = Protocol(ProtocolConfig(params, 10, reversal_knows_total_tap=False)).run_monte_carlo()
    assert knows.expected_d_rev == pytest.approx(math.exp(-1.0))
    assert ignorant.expected_d_rev == pytest.approx(reversibility(params.c0, 0.3, 0.2, knows_total_tap=False))
    assert ignorant.expected_d_rev < knows.expected_d_rev
    assert knows.k == pytest.approx(math.exp(0.8))


def test_cached_tables_match_closed_forms(params):
    protocol = Protocol(ProtocolConfig(params, 1))
    assert protocol.bob_table[PLUS] == pytest.approx(0.5, abs=1e-12)
    spin_table, bell_table = protocol.checks[PLUS]
    assert bell_table[PSI_PLUS] == pytest.approx(0.6839397206, abs=1e-10)


@pytest.mark.slow
def test_monte_carlo_convergence():
    stats = run_monte_carlo(ProtocolConfig(ModelParams(2, 0.5, bob_eta=0.5), 100000, master_seed=42))
    assert stats.expected_p_error == pytest.approx(0.0350632525, abs=1e-10)
    assert stats.expected_fidelity == pytest.approx(0.6839397206, abs=1e-10)
    z = stats.z_scores()
    assert z['p_error'] < 3.0
    assert z['fidelity'] < 3.0
    assert z['mean_fine'] < 4.0
    assert abs(stats.tradeoff_residual) < 4.0 * stats.tradeoff_sigma


@pytest.mark.slow
def test_multi_observer_reversibility():
    params = ModelParams(2, 0.5, bob_eta=0.25, other_etas=(0.5,))
    stats = run_multi_observer(ProtocolConfig(params, 100000, master_seed=42))
    assert stats.expected_d_rev == pytest.approx(math.exp(-2.0) ** 0.75, rel=1e-12)
    assert stats.z_scores()['fidelity'] < 3.0
    assert abs(stats.tradeoff_residual) < 4.0 * stats.tradeoff_sigma


@pytest.mark.slow
def test_ignorant_reversal_converges():
    params = ModelParams(2, 0.5, bob_eta=0.3, other_etas=(0.2,))
    stats = run_monte_carlo(ProtocolConfig(params, 40000, master_seed=42, reversal_knows_total_tap=False))
    assert stats.z_scores()['fidelity'] < 4.0


@pytest.mark.slow
def test_confidence_interval_coverage(params):
    covered = 0
    for seed in range(20):
        stats = run_monte_carlo(ProtocolConfig(params, 20000, master_seed=seed))
        if abs(stats.empirical_p_error - stats.expected_p_error) <= stats.p_error_half_width:
            covered += 1
    assert covered >= 17
