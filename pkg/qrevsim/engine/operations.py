"""
Unitaries and measurements of the qubit + qutrits + counter + probes system,
acting on :class:`~qrevsim.engine.BranchState.BranchState` values.

Measurements accept an optional ``forced`` outcome label. When it is given the
random source is not consulted, which lets the dense oracle and this engine be
compared on identical conditional states.
"""

import cmath
import logging
import math
import numpy as np
from qrevsim.Errors import InvalidParameter, DegenerateDiscrimination, ZeroProbabilityOutcome
from qrevsim.coherent.core import coherent_overlap, make_discrimination, projection_amplitudes, \
    DEGENERATE_TOLERANCE
from qrevsim.coherent.ModelParams import ModelParams
from qrevsim.engine.Branch import Branch, DOWN, UP, READY, ALL_D, ALL_U, SPIN_INDEX
from qrevsim.engine.BranchState import BranchState, gram_norm2, ket_overlap
from qrevsim.engine.MeasurementOutcome import MeasurementOutcome, PLUS, MINUS
from qrevsim.engine.RegisterLayout import RegisterLayout

NORMALIZATION_TOLERANCE = 1e-9
AMPLITUDE_TOLERANCE = 1e-9

PSI_PLUS = 'psi_plus'
PSI_MINUS = 'psi_minus'
PHI_PLUS = 'phi_plus'
PHI_MINUS = 'phi_minus'

_HALF = 1.0 / math.sqrt(2.0)
BELL_STATES = {
    PSI_PLUS: {(UP, UP): _HALF, (DOWN, DOWN): _HALF},
    PSI_MINUS: {(UP, UP): _HALF, (DOWN, DOWN): -_HALF},
    PHI_PLUS: {(UP, DOWN): _HALF, (DOWN, UP): _HALF},
    PHI_MINUS: {(UP, DOWN): _HALF, (DOWN, UP): -_HALF},
}

logger = logging.getLogger("qrevsim")


def choose_outcome(probabilities: dict, rng, forced: str = None) -> str:
    if forced is not None:
        if forced not in probabilities:
            raise InvalidParameter(f"Unknown outcome {forced}, expected one of {list(probabilities)}")
        if probabilities[forced] <= 0.0:
            raise ZeroProbabilityOutcome(f"Forced outcome {forced} has probability 0")
        return forced
    draw = rng.random()
    cumulative = 0.0
    labels = [label for label, probability in probabilities.items() if probability > 0.0]
    for label in labels:
        cumulative += probabilities[label]
        if draw < cumulative:
            return label
    return labels[-1]


def normalized_table(table: dict) -> dict:
    total = math.fsum(table.values())
    return {label: value / total for label, value in table.items()}


def prepare_single_qubit(a: complex, b: complex, label: str = 'q') -> BranchState:
    """a|down> + b|up> with ready qutrits and the counter in its ground state."""
    a = complex(a)
    b = complex(b)
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORMALIZATION_TOLERANCE:
        raise InvalidParameter(f"|a|^2 + |b|^2 must be 1, got {abs(a) ** 2 + abs(b) ** 2!r}")
    layout = RegisterLayout((label,))
    branches = [Branch(amplitude, (spin,), READY, (0j,)) for amplitude, spin in ((a, DOWN), (b, UP))
                if amplitude != 0]
    return BranchState(layout, branches)


def prepare_bell_pair(labels: tuple = ('A', 'B')) -> BranchState:
    layout = RegisterLayout(labels)
    return BranchState(layout, [Branch(_HALF, (UP, UP), READY, (0j,)),
                                Branch(_HALF, (DOWN, DOWN), READY, (0j,))])


def apply_premeasurement(state: BranchState, params: ModelParams, qubit: str = None) -> BranchState:
    """Correlates the qutrits and the counter with ``qubit`` (the last qubit by default)."""
    layout = state.layout
    qubit = layout.qubit_labels[-1] if qubit is None else qubit
    index = layout.qubit_index(qubit)
    displacement = params.displacement
    branches = []
    for branch in state.branches:
        if branch.qutrit != READY:
            raise InvalidParameter(f"Qutrits are not ready ({branch.qutrit}), the qubit was already pre-measured")
        if branch.modes[0] != 0:
            raise InvalidParameter(f"Counter must start at amplitude 0, found {branch.modes[0]!r}")
        if branch.qubits[index] == UP:
            qutrit, counter = ALL_U, complex(displacement)
        else:
            qutrit, counter = ALL_D, complex(-displacement)
        branches.append(branch.replace(qutrit=qutrit, modes=(counter,) + branch.modes[1:]))
    logger.debug("Pre-measured qubit %s with N=%d, epsilon=%g", qubit, params.n_qutrits, params.epsilon)
    return state.replace(layout=layout.with_measured_qubit(qubit, params.n_qutrits), branches=branches,
                         tapped_fraction=0.0)


def evolve_counter_phase(state: BranchState, t: float, params: ModelParams) -> BranchState:
    phase = cmath.exp(-1j * params.omega * t)
    branches = [branch.replace(modes=(branch.modes[0] * phase,) + branch.modes[1:]) for branch in state.branches]
    return state.replace(branches=branches)


def tap_probe(state: BranchState, eta_k: float, probe_name: str, of_initial: bool = False) -> BranchState:
    """Moves a fraction of the counter energy into a new probe mode.

Args:
    eta_k (float):
        Fraction of the counter's current energy, or of its energy right after
        the pre-measurement when ``of_initial`` is set.
    probe_name (str):
        Name of the new probe mode, must not exist yet.
    """
    if not 0.0 <= eta_k <= 1.0:
        raise InvalidParameter(f"Tap fraction must lie in [0,1], got {eta_k!r}")
    remaining = 1.0 - state.tapped_fraction
    if of_initial:
        if eta_k > remaining + 1e-12:
            raise InvalidParameter(f"Cannot tap {eta_k!r} of the initial energy, only {remaining!r} is left")
        current = min(eta_k / remaining, 1.0) if remaining > 0.0 else 0.0
        tapped = min(state.tapped_fraction + eta_k, 1.0)
    else:
        current = eta_k
        tapped = 1.0 - remaining * (1.0 - eta_k)
    layout = state.layout.with_mode(probe_name)
    keep = math.sqrt(1.0 - current)
    move = math.sqrt(current)
    branches = [branch.replace(modes=(branch.modes[0] * keep,) + branch.modes[1:] + (branch.modes[0] * move,))
                for branch in state.branches]
    return BranchState(layout, branches, tapped)


def _probe_split(state: BranchState, probe_name: str):
    """Returns (A, probe index, sign per branch) for a probe carrying +-A."""
    index = state.layout.mode_index(probe_name)
    if index == 0:
        raise InvalidParameter("The counter cannot be measured as a probe")
    values = [branch.modes[index] for branch in state.branches]
    amplitude = max(abs(value.real) for value in values)
    tolerance = AMPLITUDE_TOLERANCE * max(1.0, amplitude)
    signs = []
    for value in values:
        if abs(value.imag) > tolerance or abs(abs(value.real) - amplitude) > tolerance:
            raise InvalidParameter(f"Probe {probe_name} must carry real amplitudes +-{amplitude!r}, found {value!r}")
        signs.append(PLUS if value.real >= 0 else MINUS)
    return amplitude, index, signs


def _project_probe(state: BranchState, probe_name: str, tolerance: float):
    """Unnormalized post-measurement branches for each outcome, None when degenerate."""
    amplitude, index, signs = _probe_split(state, probe_name)
    layout = state.layout.without_mode(probe_name)
    stripped = [branch.replace(modes=branch.modes[:index] + branch.modes[index + 1:]) for branch in state.branches]
    c = coherent_overlap(amplitude, -amplitude).magnitude
    try:
        spec = make_discrimination(c, tolerance)
    except DegenerateDiscrimination:
        return layout, stripped, None
    same, other = projection_amplitudes(spec)
    projected = {}
    for outcome in (PLUS, MINUS):
        projected[outcome] = [branch.with_amplitude(branch.amplitude * (same if sign == outcome else other))
                              for branch, sign in zip(stripped, signs)]
    return layout, stripped, projected


def probe_outcome_probabilities(state: BranchState, probe_name: str,
                                tolerance: float = DEGENERATE_TOLERANCE) -> dict:
    _, _, projected = _project_probe(state, probe_name, tolerance)
    if projected is None:
        return {PLUS: 0.5, MINUS: 0.5}
    return normalized_table({outcome: gram_norm2(branches) for outcome, branches in projected.items()})


def measure_probe(state: BranchState, probe_name: str, rng, forced: str = None,
                  tolerance: float = DEGENERATE_TOLERANCE):
    """Optimal two-outcome measurement of a probe, which is removed afterwards.

When the two probe states are indistinguishable the outcome is a fair coin
and the remaining registers are left untouched.

Returns:
    A (:class:`MeasurementOutcome`, :class:`BranchState`) pair.
    """
    layout, stripped, projected = _project_probe(state, probe_name, tolerance)
    if projected is None:
        label = choose_outcome({PLUS: 0.5, MINUS: 0.5}, rng, forced)
        logger.debug("Probe %s is degenerate, fair coin gave %s", probe_name, label)
        return MeasurementOutcome(label, 0.5), BranchState(layout, stripped, state.tapped_fraction)
    probabilities = normalized_table({outcome: gram_norm2(branches) for outcome, branches in projected.items()})
    label = choose_outcome(probabilities, rng, forced)
    post = BranchState(layout, projected[label], state.tapped_fraction).renormalized()
    return MeasurementOutcome(label, probabilities[label]), post


def apply_reversal(state: BranchState, params: ModelParams, knows_total_tap: bool = True) -> BranchState:
    """Resets the qutrits to ready and displaces the counter back towards 0.

With ``knows_total_tap`` the displacement is the actual residual
+-sqrt(1-eta_T) N epsilon and the counter ends exactly at 0. Otherwise only
Bob's own residual +-sqrt(1-eta) N epsilon is removed. Probes are untouched.
    """
    if not state.layout.has_qutrits or state.layout.measured_qubit is None:
        raise InvalidParameter("Reversal requested before any pre-measurement")
    residual = math.sqrt(1.0 - params.bob_eta) * params.displacement
    branches = []
    for branch in state.branches:
        if branch.qutrit == ALL_U:
            sign = 1.0
        elif branch.qutrit == ALL_D:
            sign = -1.0
        else:
            raise InvalidParameter(f"Reversal needs correlated qutrits, found {branch.qutrit}")
        counter = 0j if knows_total_tap else branch.modes[0] - sign * residual
        branches.append(branch.replace(qutrit=READY, modes=(counter,) + branch.modes[1:]))
    layout = RegisterLayout(state.layout.qubit_labels, state.layout.mode_names, state.layout.n_qutrits)
    return BranchState(layout, branches, 0.0).renormalized()


def spin_probabilities(state: BranchState, qubit: str) -> dict:
    index = state.layout.qubit_index(qubit)
    table = {}
    for spin in (UP, DOWN):
        table[spin] = gram_norm2([branch for branch in state.branches if branch.qubits[index] == spin])
    return normalized_table(table)


def measure_qubit_spin(state: BranchState, qubit: str, rng, forced: str = None):
    index = state.layout.qubit_index(qubit)
    probabilities = spin_probabilities(state, qubit)
    label = choose_outcome(probabilities, rng, forced)
    branches = [branch for branch in state.branches if branch.qubits[index] == label]
    return MeasurementOutcome(label, probabilities[label]), state.replace(branches=branches).renormalized()


def _bell_projection(state: BranchState, ia: int, ib: int, bell: str) -> list:
    """Branches of the remaining registers after projecting qubits ia, ib on a Bell state."""
    weights = BELL_STATES[bell]
    projected = []
    for branch in state.branches:
        weight = weights.get((branch.qubits[ia], branch.qubits[ib]))
        if weight is not None:
            projected.append(branch.with_amplitude(branch.amplitude * weight))
    return projected


def bell_probabilities(state: BranchState, qubit_a: str = 'A', qubit_b: str = 'B') -> dict:
    ia = state.layout.qubit_index(qubit_a)
    ib = state.layout.qubit_index(qubit_b)
    table = {bell: gram_norm2(_bell_projection(state, ia, ib, bell), skip_qubits=(ia, ib)) for bell in BELL_STATES}
    return normalized_table(table)


def measure_bell(state: BranchState, qubit_a: str, qubit_b: str, rng, forced: str = None):
    ia = state.layout.qubit_index(qubit_a)
    ib = state.layout.qubit_index(qubit_b)
    probabilities = bell_probabilities(state, qubit_a, qubit_b)
    label = choose_outcome(probabilities, rng, forced)
    branches = []
    for branch in _bell_projection(state, ia, ib, label):
        for (spin_a, spin_b), weight in BELL_STATES[label].items():
            qubits = list(branch.qubits)
            qubits[ia] = spin_a
            qubits[ib] = spin_b
            branches.append(branch.replace(amplitude=branch.amplitude * weight, qubits=tuple(qubits)))
    return MeasurementOutcome(label, probabilities[label]), state.replace(branches=branches).renormalized()


def fidelity_with_bell(state: BranchState, qubit_a: str = 'A', qubit_b: str = 'B') -> float:
    """<Psi+| rho_AB |Psi+>, exact."""
    return bell_probabilities(state, qubit_a, qubit_b)[PSI_PLUS]


def reduced_density(state: BranchState, qubits: tuple) -> np.ndarray:
    """Density matrix of the given qubits, basis index 0 = down, 1 = up, first qubit most significant."""
    indices = [state.layout.qubit_index(name) for name in qubits]
    rho = np.zeros((2 ** len(indices), 2 ** len(indices)), dtype=complex)

    def position(branch):
        value = 0
        for index in indices:
            value = 2 * value + SPIN_INDEX[branch.qubits[index]]
        return value

    for left in state.branches:
        for right in state.branches:
            overlap = ket_overlap(right, left, skip_qubits=tuple(indices))
            if overlap != 0:
                rho[position(left), position(right)] += left.amplitude * right.amplitude.conjugate() * overlap
    return rho


def qubit_amplitudes(state: BranchState, qubit: str) -> tuple:
    """(a, b) of a state of the form (a|down> + b|up>) x |rest>."""
    index = state.layout.qubit_index(qubit)
    if len(state.layout.qubit_labels) != 1:
        raise InvalidParameter("qubit_amplitudes needs a single qubit state")
    rests = {(branch.qutrit, branch.modes) for branch in state.branches}
    if len(rests) != 1:
        raise InvalidParameter("Qubit is entangled with the other registers")
    amplitudes = {DOWN: 0j, UP: 0j}
    for branch in state.branches:
        amplitudes[branch.qubits[index]] += branch.amplitude
    return amplitudes[DOWN], amplitudes[UP]
