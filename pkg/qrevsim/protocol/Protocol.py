"""
Monte Carlo of the Alice and Bob scenario.

Alice hands Bob one half of a Bell pair. Bob pre-measures it, taps the counter
with his probe (after the silent observers tapped theirs), measures the probe,
reports the spin and reverses the pre-measurement. Alice then either measures
her spin and compares it with Bob's report or checks the Bell state; Bob is
fined when the check fails.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from qrevsim.Options import Options
from qrevsim.coherent.core import c_of_eta, error_probability
from qrevsim.engine.Branch import UP, DOWN
from qrevsim.engine.BranchState import BranchState
from qrevsim.engine.MeasurementOutcome import PLUS, MINUS
from qrevsim.engine.operations import prepare_bell_pair, apply_premeasurement, tap_probe, measure_probe, \
    apply_reversal, spin_probabilities, bell_probabilities, measure_qubit_spin, probe_outcome_probabilities, \
    choose_outcome, PSI_PLUS
from qrevsim.engine.script import BOB_PROBE, observer_probe
from qrevsim.protocol.ProtocolConfig import ProtocolConfig
from qrevsim.protocol.ProtocolStats import ProtocolStats
from qrevsim.protocol.RunRecord import RunRecord, SPIN_CHECK, BELL_CHECK, AGREE, DISAGREE, YES, NO

ALICE = 'A'
BOB = 'B'
REPORTED_SPIN = {PLUS: UP, MINUS: DOWN}


def run_rng(master_seed: int, run_index: int) -> np.random.Generator:
    """Independent stream of one run, the same whichever worker executes it."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(run_index,)))


def observer_error_probability(state: BranchState, probe: str, qubit: str = BOB) -> float:
    """Error probability of an optimal measurement of ``probe`` guessing the spin of ``qubit``."""
    total = 0.0
    for spin, wrong in ((UP, MINUS), (DOWN, PLUS)):
        probability = spin_probabilities(state, qubit)[spin]
        if probability == 0.0:
            continue
        _, conditioned = measure_qubit_spin(state, qubit, None, forced=spin)
        total += probability * probe_outcome_probabilities(conditioned, probe)[wrong]
    return total


class Protocol:
    """Runs of one :class:`ProtocolConfig`.

Everything up to Bob's probe measurement is deterministic, so the tapped state
is built once. Bob's measurement has two outcomes, whose reversed states and
check tables are cached too; a run then only draws from these tables.
    """

    def __init__(self, config: ProtocolConfig):
        self.config = config
        self.params = config.params
        self.logger = logging.getLogger("runs")
        self.tapped = self._tapped_state()
        self.bob_table = probe_outcome_probabilities(self.tapped, BOB_PROBE)
        self.checks = {}
        for label in (PLUS, MINUS):
            if self.bob_table[label] > 0.0:
                _, measured = measure_probe(self.tapped, BOB_PROBE, None, forced=label)
                reversed_state = apply_reversal(measured, self.params, config.reversal_knows_total_tap)
                self.checks[label] = (spin_probabilities(reversed_state, ALICE),
                                      bell_probabilities(reversed_state, ALICE, BOB))
        logging.getLogger("qrevsim").debug("Protocol prepared for %r, Bob's outcome table %s",
                                           self.params, self.bob_table)

    def _tapped_state(self) -> BranchState:
        state = apply_premeasurement(prepare_bell_pair((ALICE, BOB)), self.params, qubit=BOB)
        for k, eta in enumerate(self.params.other_etas, start=2):
            state = tap_probe(state, eta, observer_probe(k), of_initial=True)
        return tap_probe(state, self.params.bob_eta, BOB_PROBE, of_initial=True)

    def single_run(self, run_index: int) -> RunRecord:
        rng = run_rng(self.config.master_seed, run_index)
        outcome = choose_outcome(self.bob_table, rng)
        bob_spin = REPORTED_SPIN[outcome]
        spin_table, bell_table = self.checks[outcome]
        if rng.random() < self.config.alice_check_probability:
            alice_spin = choose_outcome(spin_table, rng)
            return RunRecord(run_index, outcome, bob_spin, SPIN_CHECK, AGREE if alice_spin == bob_spin else DISAGREE,
                             self.config.fine_per_failure)
        bell = choose_outcome(bell_table, rng)
        return RunRecord(run_index, outcome, bob_spin, BELL_CHECK, YES if bell == PSI_PLUS else NO,
                         self.config.fine_per_failure)

    def _run_chunk(self, indices) -> list:
        return [self.single_run(index) for index in indices]

    def run_records(self) -> list:
        """All records in run order, whatever the number of workers.

Runs are pure Python and hold the GIL, so threads bound the work by
``QREV_THREADS`` without making it faster.
    """
        workers = Options().worker_count()
        indices = range(self.config.n_runs)
        if workers <= 1 or self.config.n_runs < 2:
            records = self._run_chunk(indices)
        else:
            chunks = [indices[start::workers] for start in range(workers)]
            with ThreadPoolExecutor(max_workers=workers) as executor:
                results = list(executor.map(self._run_chunk, chunks))
            records = [None] * self.config.n_runs
            for chunk, result in zip(chunks, results):
                for index, record in zip(chunk, result):
                    records[index] = record
        if self.logger.isEnabledFor(logging.INFO):
            for record in records:
                self.logger.info(str(record))
        return records

    def run_monte_carlo(self) -> ProtocolStats:
        return ProtocolStats.from_records(self.run_records(), self.config)

    def run_multi_observer(self) -> ProtocolStats:
        """Monte Carlo plus, for every silent observer, the reliability its probe would give."""
        stats = self.run_monte_carlo()
        c0 = self.params.c0
        for k, (label, eta) in enumerate(zip(self.config.observer_labels, self.params.other_etas), start=2):
            p_error = observer_error_probability(self.tapped, observer_probe(k))
            expected = error_probability(c_of_eta(c0, eta))
            stats.observer_reliability[label] = {'eta': eta, 'p_error': p_error, 'd_rel': 1.0 - 2.0 * p_error,
                                                 'expected_p_error': expected,
                                                 'expected_d_rel': 1.0 - 2.0 * expected}
        return stats


def single_run(config: ProtocolConfig, run_index: int) -> RunRecord:
    return Protocol(config).single_run(run_index)


def run_monte_carlo(config: ProtocolConfig) -> ProtocolStats:
    return Protocol(config).run_monte_carlo()


def run_multi_observer(config: ProtocolConfig) -> ProtocolStats:
    return Protocol(config).run_multi_observer()
