"""
Reference simulation of a scenario script on a truncated Fock space.

Everything the branch engine does analytically is done here with dense
matrices: displacements are matrix exponentials, taps are beamsplitters and
probe measurements are projections on truncated coherent-state combinations.
Only small systems are supported (N <= 3 qutrits, N*epsilon <= 2).
"""

import logging
import math
import numpy as np
from qrevsim.Errors import InvalidParameter, CutoffInsufficient, DegenerateDiscrimination
from qrevsim.coherent.core import make_discrimination, DEGENERATE_TOLERANCE
from qrevsim.coherent.ModelParams import ModelParams
from qrevsim.engine.Branch import SPIN_INDEX, DOWN, UP
from qrevsim.engine.MeasurementOutcome import MeasurementOutcome, PLUS, MINUS
from qrevsim.engine.operations import BELL_STATES, PSI_PLUS, NORMALIZATION_TOLERANCE, choose_outcome, \
    normalized_table
from qrevsim.oracle.DenseState import DenseState, QUTRIT_READY, QUTRIT_D, QUTRIT_U
from qrevsim.oracle.FockOperators import FockOperators, cutoff_for

MAX_QUTRITS = 3
MAX_DISPLACEMENT = 2.0
LEAKAGE_TOLERANCE = 1e-8

logger = logging.getLogger("qrevsim")


def prepare_dense(params: ModelParams, initial=None) -> DenseState:
    """Bell pair |Psi+> on A, B when ``initial`` is None, else a|down> + b|up> on q for initial = (a, b)."""
    if params.n_qutrits > MAX_QUTRITS or params.displacement > MAX_DISPLACEMENT:
        raise InvalidParameter(f"Oracle supports N <= {MAX_QUTRITS} and N*epsilon <= {MAX_DISPLACEMENT}, "
                               f"got N={params.n_qutrits}, N*epsilon={params.displacement!r}")
    cutoff = cutoff_for(params.displacement)
    if initial is None:
        half = 1.0 / math.sqrt(2.0)
        return DenseState.ground({(1, 1): half, (0, 0): half}, ('A', 'B'), params.n_qutrits, cutoff)
    a, b = complex(initial[0]), complex(initial[1])
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORMALIZATION_TOLERANCE:
        raise InvalidParameter(f"|a|^2 + |b|^2 must be 1, got {abs(a) ** 2 + abs(b) ** 2!r}")
    return DenseState.ground({(0,): a, (1,): b}, ('q',), params.n_qutrits, cutoff)


def _index(state: DenseState, fixed: dict) -> tuple:
    return tuple(fixed.get(axis, slice(None)) for axis in range(state.tensor.ndim))


def _apply_on_slice(state: DenseState, fixed: dict, matrix: np.ndarray, mode: str):
    axis = state.axis(mode)
    sub = state.tensor[_index(state, fixed)]
    # fixed axes are qubits and qutrits, which all precede the modes
    sub_axis = axis - len(fixed)
    result = np.moveaxis(np.tensordot(matrix, sub, axes=([1], [sub_axis])), 0, sub_axis)
    state.tensor[_index(state, fixed)] = result


def _all_qutrits(state: DenseState, code: int) -> dict:
    return {axis: code for axis in state.qutrit_axes}


def check_leakage(state: DenseState, tolerance: float = LEAKAGE_TOLERANCE):
    """Raises CutoffInsufficient when any mode has population in its two highest Fock levels."""
    population = np.abs(state.tensor) ** 2
    for name in state.mode_names:
        axis = state.axis(name)
        edge = np.take(population, range(state.cutoff - 2, state.cutoff), axis=axis).sum()
        if edge > tolerance:
            raise CutoffInsufficient(f"Mode {name} has population {edge:.3g} at the truncation edge "
                                     f"(cutoff {state.cutoff})")


def _swap_ready(state: DenseState, qubit: str):
    """U: ready...ready <-> d...d on down, ready...ready <-> u...u on up. Its own inverse."""
    q_axis = state.axis(qubit)
    for spin, code in ((SPIN_INDEX[DOWN], QUTRIT_D), (SPIN_INDEX[UP], QUTRIT_U)):
        ready = _index(state, {q_axis: spin, **_all_qutrits(state, QUTRIT_READY)})
        target = _index(state, {q_axis: spin, **_all_qutrits(state, code)})
        swapped = state.tensor[ready].copy()
        state.tensor[ready] = state.tensor[target]
        state.tensor[target] = swapped


def _displace_by_qutrits(state: DenseState, operators: FockOperators, amount: float):
    """U': each qutrit displaces the counter by +amount in u and -amount in d."""
    plus = operators.displacement(amount)
    minus = operators.displacement(-amount)
    for axis in state.qutrit_axes:
        _apply_on_slice(state, {axis: QUTRIT_U}, plus, 'counter')
        _apply_on_slice(state, {axis: QUTRIT_D}, minus, 'counter')


def premeasure(state: DenseState, operators: FockOperators, params: ModelParams, qubit: str = None):
    qubit = state.qubit_labels[-1] if qubit is None else qubit
    if state.measured_qubit is not None:
        raise InvalidParameter("Qutrits are not ready, the qubit was already pre-measured")
    _swap_ready(state, qubit)
    _displace_by_qutrits(state, operators, params.epsilon)
    state.measured_qubit = qubit
    state.tapped_fraction = 0.0
    check_leakage(state)


def evolve(state: DenseState, operators: FockOperators, params: ModelParams, t: float):
    axis = state.axis('counter')
    shape = [1] * state.tensor.ndim
    shape[axis] = state.cutoff
    state.tensor = state.tensor * operators.rotation(params.omega * t).reshape(shape)


def _beamsplitter(state: DenseState, operators: FockOperators, theta: float, probe: str):
    counter_axis = state.axis('counter')
    probe_axis = state.axis(probe)
    moved = np.moveaxis(state.tensor, (counter_axis, probe_axis), (-2, -1))
    shape = moved.shape
    flat = moved.reshape(-1, state.cutoff, state.cutoff)
    result = np.zeros_like(flat)
    for counter, probe_numbers, block in operators.beamsplitter_blocks(theta):
        result[:, counter, probe_numbers] = flat[:, counter, probe_numbers] @ block.T
    state.tensor = np.moveaxis(result.reshape(shape), (-2, -1), (counter_axis, probe_axis))


def tap(state: DenseState, operators: FockOperators, params: ModelParams, probe: str, eta: float):
    """Beamsplitter moving a fraction ``eta`` of the initial counter energy into a new probe."""
    if not 0.0 <= eta <= 1.0:
        raise InvalidParameter(f"Tap fraction must lie in [0,1], got {eta!r}")
    remaining = 1.0 - state.tapped_fraction
    if eta > remaining + 1e-12:
        raise InvalidParameter(f"Cannot tap {eta!r} of the initial energy, only {remaining!r} is left")
    current = min(eta / remaining, 1.0) if remaining > 0.0 else 0.0
    state.add_mode(probe)
    _beamsplitter(state, operators, math.asin(math.sqrt(current)), probe)
    state.tapped_fraction = min(state.tapped_fraction + eta, 1.0)
    state.probe_amplitudes[probe] = math.sqrt(eta) * params.displacement
    check_leakage(state)


def measure(state: DenseState, operators: FockOperators, probe: str, rng, forced: str = None,
            tolerance: float = DEGENERATE_TOLERANCE) -> MeasurementOutcome:
    amplitude = state.probe_amplitudes[probe]
    up = operators.coherent(amplitude)
    down = operators.coherent(-amplitude)
    try:
        spec = make_discrimination(math.exp(-2.0 * amplitude ** 2), tolerance)
    except DegenerateDiscrimination:
        symmetric = up + down
        remaining = state.contract_mode(probe, symmetric / np.linalg.norm(symmetric))
        label = choose_outcome({PLUS: 0.5, MINUS: 0.5}, rng, forced)
        state.remove_mode(probe, remaining)
        return MeasurementOutcome(label, 0.5)
    bras = {PLUS: spec.gamma * up - spec.beta_coef * down,
            MINUS: spec.gamma * down - spec.beta_coef * up}
    projected = {label: state.contract_mode(probe, bra) for label, bra in bras.items()}
    probabilities = normalized_table({label: float(np.vdot(rest, rest).real)
                                      for label, rest in projected.items()})
    label = choose_outcome(probabilities, rng, forced)
    state.remove_mode(probe, projected[label])
    return MeasurementOutcome(label, probabilities[label])


def reverse(state: DenseState, operators: FockOperators, params: ModelParams, knows_total_tap: bool = True):
    """Inverse of the pre-measurement for a counter left at +-residual.

The qutrits undo their share of the residual displacement and then swap back
to ready, conditioned on the measured qubit.
    """
    if state.measured_qubit is None:
        raise InvalidParameter("Reversal requested before any pre-measurement")
    eta = state.tapped_fraction if knows_total_tap else params.bob_eta
    residual = math.sqrt(max(1.0 - eta, 0.0)) * params.displacement
    _displace_by_qutrits(state, operators, -residual / state.n_qutrits)
    _swap_ready(state, state.measured_qubit)
    state.measured_qubit = None
    state.tapped_fraction = 0.0
    check_leakage(state)


def observables(state: DenseState) -> dict:
    """Reduced qubit density matrix, its trace and, for two qubits, the Bell table and fidelity."""
    amplitudes = state.qubit_matrix()
    rho = amplitudes @ amplitudes.conj().T
    result = {'trace': float(np.trace(rho).real), 'rho': rho}
    if len(state.qubit_labels) == 2:
        table = {}
        for bell, weights in BELL_STATES.items():
            vector = np.zeros(4)
            for (spin_a, spin_b), weight in weights.items():
                vector[2 * SPIN_INDEX[spin_a] + SPIN_INDEX[spin_b]] = weight
            table[bell] = float(np.real(vector @ rho @ vector))
        result['bell'] = table
        result['fidelity'] = table[PSI_PLUS]
    return result


def oracle_run(params: ModelParams, script: list, rng=None, initial=None,
               tolerance: float = DEGENERATE_TOLERANCE):
    """Executes a scenario script on the dense truncated state.

Args:
    params (ModelParams):
        Apparatus configuration, N <= 3 and N*epsilon <= 2.
    script (list):
        Steps as built by :func:`~qrevsim.engine.script.protocol_script`.
    rng (numpy.random.Generator):
        Source for unforced measurements.
    initial (tuple):
        Single qubit amplitudes (a, b), None for the Bell pair.

Returns:
    The trace, the final :class:`DenseState` and its :func:`observables`.
    """
    state = prepare_dense(params, initial)
    operators = FockOperators(state.cutoff)
    logger.debug("Oracle run with cutoff %d for N=%d epsilon=%g", state.cutoff, params.n_qutrits, params.epsilon)
    trace = []
    for step in script:
        name = step[0]
        if name == 'premeasure':
            premeasure(state, operators, params)
            trace.append((name, None, 1.0))
        elif name == 'tap':
            tap(state, operators, params, step[1], step[2])
            trace.append((name, None, 1.0))
        elif name == 'measure':
            if step[2] is None and rng is None:
                raise InvalidParameter(f"Measurement of {step[1]} is not forced and no random source was given")
            outcome = measure(state, operators, step[1], rng, step[2], tolerance)
            trace.append((name, outcome.label, outcome.probability))
        elif name == 'reverse':
            reverse(state, operators, params, step[1])
            trace.append((name, None, 1.0))
        elif name == 'evolve':
            evolve(state, operators, params, step[1])
            trace.append((name, None, 1.0))
        else:
            raise InvalidParameter(f"Unknown scenario step {name}")
    return trace, state, observables(state)
