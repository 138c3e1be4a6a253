from qrevsim.Errors import InvalidParameter

COUNTER = 'counter'


class RegisterLayout:
    """Names of the registers a BranchState is defined on.

Attributes:
    qubit_labels (tuple): ordered qubit register names.
    n_qutrits (int): number of detector qutrits, 0 until a pre-measurement stamps it.
    mode_names (tuple): oscillator modes, the counter first and then one probe per observer.
    measured_qubit (str): qubit the qutrits are correlated with, None when they are ready.
    """

    def __init__(self, qubit_labels: tuple, mode_names: tuple = (COUNTER,), n_qutrits: int = 0,
                 measured_qubit: str = None):
        qubit_labels = tuple(qubit_labels)
        mode_names = tuple(mode_names)
        if len(set(qubit_labels)) != len(qubit_labels):
            raise InvalidParameter(f"Qubit labels must be unique, got {qubit_labels}")
        if len(set(mode_names)) != len(mode_names):
            raise InvalidParameter(f"Mode names must be unique, got {mode_names}")
        if not mode_names or mode_names[0] != COUNTER:
            raise InvalidParameter(f"The first mode must be the counter, got {mode_names}")
        if measured_qubit is not None and measured_qubit not in qubit_labels:
            raise InvalidParameter(f"Unknown measured qubit {measured_qubit}")
        self.qubit_labels = qubit_labels
        self.mode_names = mode_names
        self.n_qutrits = n_qutrits
        self.measured_qubit = measured_qubit

    @property
    def has_qutrits(self) -> bool:
        return self.n_qutrits > 0

    @property
    def probe_names(self) -> tuple:
        return self.mode_names[1:]

    def qubit_index(self, name: str) -> int:
        try:
            return self.qubit_labels.index(name)
        except ValueError:
            raise InvalidParameter(f"Layout has no qubit {name}, qubits are {self.qubit_labels}")

    def mode_index(self, name: str) -> int:
        try:
            return self.mode_names.index(name)
        except ValueError:
            raise InvalidParameter(f"Layout has no mode {name}, modes are {self.mode_names}")

    def with_mode(self, name: str) -> 'RegisterLayout':
        if name in self.mode_names:
            raise InvalidParameter(f"Mode {name} already exists")
        return RegisterLayout(self.qubit_labels, self.mode_names + (name,), self.n_qutrits, self.measured_qubit)

    def without_mode(self, name: str) -> 'RegisterLayout':
        index = self.mode_index(name)
        if index == 0:
            raise InvalidParameter("The counter mode cannot be removed")
        names = self.mode_names[:index] + self.mode_names[index + 1:]
        return RegisterLayout(self.qubit_labels, names, self.n_qutrits, self.measured_qubit)

    def with_measured_qubit(self, name: str, n_qutrits: int) -> 'RegisterLayout':
        return RegisterLayout(self.qubit_labels, self.mode_names, n_qutrits, name)

    def __eq__(self, other):
        if not isinstance(other, RegisterLayout):
            return NotImplemented
        return (self.qubit_labels, self.mode_names, self.n_qutrits, self.measured_qubit) == \
               (other.qubit_labels, other.mode_names, other.n_qutrits, other.measured_qubit)

    def __str__(self):
        return "qubits=" + ",".join(self.qubit_labels) + " qutrits=" + str(self.n_qutrits) + \
               " modes=" + ",".join(self.mode_names)
