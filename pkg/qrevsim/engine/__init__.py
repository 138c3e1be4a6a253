from qrevsim.engine.RegisterLayout import RegisterLayout, COUNTER
from qrevsim.engine.Branch import Branch, DOWN, UP, READY, ALL_D, ALL_U
from qrevsim.engine.BranchState import BranchState
from qrevsim.engine.MeasurementOutcome import MeasurementOutcome, PLUS, MINUS
from qrevsim.engine.operations import prepare_single_qubit, prepare_bell_pair, apply_premeasurement, \
    evolve_counter_phase, tap_probe, measure_probe, probe_outcome_probabilities, apply_reversal, \
    measure_qubit_spin, spin_probabilities, measure_bell, bell_probabilities, fidelity_with_bell, \
    reduced_density, qubit_amplitudes, PSI_PLUS, PSI_MINUS, PHI_PLUS, PHI_MINUS
from qrevsim.engine.script import protocol_script, run_script, BOB_PROBE, observer_probe
