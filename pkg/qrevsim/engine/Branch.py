DOWN = 'down'
UP = 'up'
READY = 'ready'
ALL_D = 'all_d'
ALL_U = 'all_u'

SPIN_INDEX = {DOWN: 0, UP: 1}


class Branch:
    """One term of the global pure state.

The N qutrits only ever occupy |r>^N, |d>^N or |u>^N, which are mutually
orthogonal, so a single collective label stands for all of them.
    """

    def __init__(self, amplitude: complex, qubits: tuple, qutrit: str, modes: tuple):
        self.amplitude = complex(amplitude)
        self.qubits = tuple(qubits)
        self.qutrit = qutrit
        self.modes = tuple(modes)

    def labels(self) -> tuple:
        return self.qubits, self.qutrit

    def key(self) -> tuple:
        return self.qubits, self.qutrit, self.modes

    def with_amplitude(self, amplitude: complex) -> 'Branch':
        return Branch(amplitude, self.qubits, self.qutrit, self.modes)

    def replace(self, amplitude: complex = None, qubits: tuple = None, qutrit: str = None,
                modes: tuple = None) -> 'Branch':
        return Branch(self.amplitude if amplitude is None else amplitude,
                      self.qubits if qubits is None else qubits,
                      self.qutrit if qutrit is None else qutrit,
                      self.modes if modes is None else modes)

    def __str__(self):
        return f"({self.amplitude:.6g})|" + ",".join(self.qubits) + ";" + self.qutrit + ";" + \
               ",".join(f"{m:.6g}" for m in self.modes) + ">"
