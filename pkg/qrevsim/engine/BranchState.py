import cmath
import math
from qrevsim.Errors import InvalidParameter, ZeroProbabilityOutcome
from qrevsim.coherent.core import log_overlap
from qrevsim.engine.RegisterLayout import RegisterLayout
from qrevsim.engine.Branch import Branch

# exp() of anything below this underflows to 0 in double precision
_LOG_UNDERFLOW = -745.0
# relative amplitude below which a branch cannot affect any observable
_PRUNE_RATIO = 1e-300


def ket_overlap(left: Branch, right: Branch, skip_qubits: tuple = ()) -> complex:
    """<left|right> of the two branch kets, amplitudes excluded."""
    if left.qutrit != right.qutrit:
        return 0j
    for index, (l, r) in enumerate(zip(left.qubits, right.qubits)):
        if l != r and index not in skip_qubits:
            return 0j
    exponent = 0j
    for a, b in zip(left.modes, right.modes):
        if a != b:
            exponent += log_overlap(a, b)
    if exponent.real < _LOG_UNDERFLOW:
        return 0j
    return cmath.exp(exponent)


def gram_norm2(branches, skip_qubits: tuple = ()) -> float:
    total = 0j
    for i, left in enumerate(branches):
        total += abs(left.amplitude) ** 2 * ket_overlap(left, left, skip_qubits)
        for right in branches[i + 1:]:
            total += 2 * (left.amplitude.conjugate() * right.amplitude *
                          ket_overlap(left, right, skip_qubits)).real
    return total.real


def merge_branches(branches) -> tuple:
    """Sums branches whose labels and mode amplitudes coincide, drops zero amplitudes."""
    merged = {}
    for branch in branches:
        key = branch.key()
        if key in merged:
            merged[key] = merged[key].with_amplitude(merged[key].amplitude + branch.amplitude)
        else:
            merged[key] = branch
    return tuple(branch for branch in merged.values() if branch.amplitude != 0)


class BranchState:
    """Normalized superposition of branches over a fixed register layout.

Instances are never mutated: every engine operation returns a new state, so
states can be cached and shared between threads.

Attributes:
    layout (RegisterLayout):
        Register names the branch labels refer to.
    branches (tuple):
        The :class:`Branch` terms.
    tapped_fraction (float):
        Fraction of the counter's post pre-measurement energy already handed to probes.
    """

    def __init__(self, layout: RegisterLayout, branches, tapped_fraction: float = 0.0):
        branches = tuple(branches)
        for branch in branches:
            if len(branch.qubits) != len(layout.qubit_labels) or len(branch.modes) != len(layout.mode_names):
                raise InvalidParameter(f"Branch {branch} does not match layout {layout}")
        self.layout = layout
        self.branches = branches
        self.tapped_fraction = tapped_fraction

    def norm2(self) -> float:
        return gram_norm2(self.branches)

    def gram(self) -> list:
        return [[ket_overlap(left, right) for right in self.branches] for left in self.branches]

    def replace(self, layout: RegisterLayout = None, branches=None, tapped_fraction: float = None) -> 'BranchState':
        return BranchState(self.layout if layout is None else layout,
                           self.branches if branches is None else branches,
                           self.tapped_fraction if tapped_fraction is None else tapped_fraction)

    def renormalized(self) -> 'BranchState':
        branches = merge_branches(self.branches)
        if not branches:
            raise ZeroProbabilityOutcome("Cannot renormalize a state without branches")
        scale = max(abs(branch.amplitude) for branch in branches)
        branches = [branch.with_amplitude(branch.amplitude / scale) for branch in branches
                    if abs(branch.amplitude) >= _PRUNE_RATIO * scale]
        norm2 = gram_norm2(branches)
        if norm2 <= 0.0:
            raise ZeroProbabilityOutcome("State has zero norm")
        norm = math.sqrt(norm2)
        return self.replace(branches=[branch.with_amplitude(branch.amplitude / norm) for branch in branches])

    def inner(self, other: 'BranchState') -> complex:
        """<self|other>; probes present on one side only count as vacuum on the other."""
        if self.layout.qubit_labels != other.layout.qubit_labels:
            raise InvalidParameter(f"Cannot compare states on qubits {self.layout.qubit_labels} "
                                   f"and {other.layout.qubit_labels}")
        names = self.layout.mode_names + tuple(name for name in other.layout.mode_names
                                               if name not in self.layout.mode_names)

        def expanded(state):
            positions = {name: index for index, name in enumerate(state.layout.mode_names)}
            return [branch.replace(modes=tuple(branch.modes[positions[name]] if name in positions else 0j
                                               for name in names)) for branch in state.branches]

        total = 0j
        for left in expanded(self):
            for right in expanded(other):
                total += left.amplitude.conjugate() * right.amplitude * ket_overlap(left, right)
        return total

    def __len__(self):
        return len(self.branches)

    def __str__(self):
        return " + ".join(map(str, self.branches))
