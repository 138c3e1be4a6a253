import numpy as np
from qrevsim.Errors import InvalidParameter, ZeroProbabilityOutcome

QUTRIT_READY = 0
QUTRIT_D = 1
QUTRIT_U = 2


def qutrit_axis_name(k: int) -> str:
    return f"qutrit{k}"


class DenseState:
    """Truncated state vector of the whole system as a numpy tensor.

The tensor has one axis per qubit (index 0 = down, 1 = up), one per qutrit
(0 = ready, 1 = d, 2 = u) and one per oscillator mode (Fock index up to
``cutoff``-1). Unlike the branch engine, instances are updated in place.

Attributes:
    tensor (numpy.ndarray):
        Complex amplitudes.
    axes (list):
        Register name of each tensor axis.
    qubit_labels (tuple):
        Names of the qubit axes, which come first.
    n_qutrits (int):
        Number of qutrit axes following the qubits.
    cutoff (int):
        Fock dimension of every mode.
    tapped_fraction (float):
        Fraction of the initial counter energy handed to probes.
    probe_amplitudes (dict):
        Magnitude of the coherent amplitude each live probe carries.
    measured_qubit (str):
        Qubit the qutrits are correlated with, None while they are ready.
    """

    def __init__(self, tensor: np.ndarray, axes: list, qubit_labels: tuple, n_qutrits: int, cutoff: int):
        if tensor.ndim != len(axes):
            raise InvalidParameter(f"Tensor of rank {tensor.ndim} does not match axes {axes}")
        self.tensor = tensor
        self.axes = list(axes)
        self.qubit_labels = tuple(qubit_labels)
        self.n_qutrits = n_qutrits
        self.cutoff = cutoff
        self.tapped_fraction = 0.0
        self.probe_amplitudes = {}
        self.measured_qubit = None

    @classmethod
    def ground(klass, amplitudes: dict, qubit_labels: tuple, n_qutrits: int, cutoff: int) -> 'DenseState':
        """Qubits in the given superposition, ready qutrits and the counter in vacuum.

``amplitudes`` maps tuples of qubit indices to complex amplitudes.
        """
        shape = (2,) * len(qubit_labels) + (3,) * n_qutrits + (cutoff,)
        tensor = np.zeros(shape, dtype=complex)
        rest = (QUTRIT_READY,) * n_qutrits + (0,)
        for spins, amplitude in amplitudes.items():
            tensor[tuple(spins) + rest] = amplitude
        axes = list(qubit_labels) + [qutrit_axis_name(k) for k in range(n_qutrits)] + ['counter']
        return klass(tensor, axes, qubit_labels, n_qutrits, cutoff)

    def axis(self, name: str) -> int:
        try:
            return self.axes.index(name)
        except ValueError:
            raise InvalidParameter(f"State has no register {name}, registers are {self.axes}")

    @property
    def qutrit_axes(self) -> list:
        start = len(self.qubit_labels)
        return list(range(start, start + self.n_qutrits))

    @property
    def mode_names(self) -> list:
        return self.axes[len(self.qubit_labels) + self.n_qutrits:]

    def norm2(self) -> float:
        return float(np.vdot(self.tensor, self.tensor).real)

    def apply(self, matrix: np.ndarray, name: str):
        """Applies a single register operator in place."""
        axis = self.axis(name)
        moved = np.tensordot(matrix, self.tensor, axes=([1], [axis]))
        self.tensor = np.moveaxis(moved, 0, axis)

    def add_mode(self, name: str):
        if name in self.axes:
            raise InvalidParameter(f"Mode {name} already exists")
        vacuum = np.zeros(self.cutoff)
        vacuum[0] = 1.0
        self.tensor = np.multiply.outer(self.tensor, vacuum)
        self.axes.append(name)

    def contract_mode(self, name: str, bra: np.ndarray) -> np.ndarray:
        """<bra| on one mode, returning the remaining tensor without the axis."""
        axis = self.axis(name)
        return np.tensordot(self.tensor, np.conjugate(bra), axes=([axis], [0]))

    def remove_mode(self, name: str, remaining: np.ndarray):
        norm2 = float(np.vdot(remaining, remaining).real)
        if norm2 <= 0.0:
            raise ZeroProbabilityOutcome(f"Projection of mode {name} has zero norm")
        self.tensor = remaining / np.sqrt(norm2)
        self.axes.remove(name)
        self.probe_amplitudes.pop(name, None)

    def qubit_matrix(self) -> np.ndarray:
        """Amplitudes reshaped as (qubit configuration, rest of the system)."""
        rows = 2 ** len(self.qubit_labels)
        return self.tensor.reshape(rows, -1)

    def copy(self) -> 'DenseState':
        other = DenseState(self.tensor.copy(), self.axes, self.qubit_labels, self.n_qutrits, self.cutoff)
        other.tapped_fraction = self.tapped_fraction
        other.probe_amplitudes = dict(self.probe_amplitudes)
        other.measured_qubit = self.measured_qubit
        return other

    def __str__(self):
        return f"DenseState(axes={self.axes}, cutoff={self.cutoff}, norm2={self.norm2():.12g})"
