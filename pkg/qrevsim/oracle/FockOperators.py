import math
import numpy as np
from scipy.linalg import expm
from qrevsim.Errors import InvalidParameter


def cutoff_for(amplitude: float) -> int:
    """Fock dimension keeping a coherent state of this amplitude far from the truncation edge."""
    amplitude = abs(amplitude)
    return int(math.ceil(amplitude ** 2 + 8 * amplitude + 16))


def unitarity_deviation(matrix: np.ndarray) -> float:
    """Largest entry of |U^dag U - 1|."""
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


def is_unitary(matrix: np.ndarray, tolerance: float = 1e-9) -> bool:
    return unitarity_deviation(matrix) <= tolerance


class FockOperators:
    """Truncated single-mode and two-mode operators in the number basis."""

    def __init__(self, cutoff: int):
        if cutoff < 2:
            raise InvalidParameter(f"Fock cutoff must be at least 2, got {cutoff}")
        self.cutoff = cutoff
        # Annihilation operator
        self.a = np.diag(np.sqrt(np.arange(1, cutoff, dtype=complex)), k=1)
        # Creation operator
        self.a_dag = self.a.conj().T
        self.numbers = np.arange(cutoff)
        self._blocks = {}

    def vacuum(self) -> np.ndarray:
        vector = np.zeros(self.cutoff, dtype=complex)
        vector[0] = 1.0
        return vector

    def displacement(self, alpha: complex) -> np.ndarray:
        """ Displacement operator exp(alpha a^dag - alpha* a) """
        return expm(alpha * self.a_dag - np.conjugate(alpha) * self.a)

    def coherent(self, alpha: complex) -> np.ndarray:
        return self.displacement(alpha) @ self.vacuum()

    def rotation(self, angle: float) -> np.ndarray:
        """ Free evolution exp(-i angle a^dag a) as a diagonal """
        return np.exp(-1j * angle * self.numbers)

    def beamsplitter_blocks(self, theta: float) -> list:
        """exp(theta (a b^dag - a^dag b)) split into blocks of fixed total photon number.

Returns:
    A list of (counter numbers, probe numbers, unitary block). The generator
    conserves a^dag a + b^dag b, so restricting it to each truncated block keeps
    it anti-Hermitian and every block exponential exactly unitary.
        """
        key = round(theta, 15)
        if key in self._blocks:
            return self._blocks[key]
        d = self.cutoff
        blocks = []
        for total in range(2 * d - 1):
            counter = np.arange(max(0, total - d + 1), min(total, d - 1) + 1)
            probe = total - counter
            size = len(counter)
            generator = np.zeros((size, size))
            for position in range(1, size):
                i = counter[position]
                # a b^dag |i, n-i> = sqrt(i) sqrt(n-i+1) |i-1, n-i+1>
                value = theta * math.sqrt(i) * math.sqrt(total - i + 1)
                generator[position - 1, position] = value
                generator[position, position - 1] = -value
            blocks.append((counter, probe, expm(generator)))
        self._blocks[key] = blocks
        return blocks

    def beamsplitter(self, theta: float) -> np.ndarray:
        """Dense (counter x probe) matrix assembled from the blocks, for checks only."""
        d = self.cutoff
        matrix = np.zeros((d * d, d * d), dtype=complex)
        for counter, probe, block in self.beamsplitter_blocks(theta):
            flat = counter * d + probe
            matrix[np.ix_(flat, flat)] = block
        return matrix
