from qrevsim.Errors import InvalidParameter
from qrevsim.coherent.ModelParams import ModelParams
from qrevsim.engine.script import observer_probe


class ProtocolConfig:
    """One Monte Carlo experiment of Alice checking Bob's reversible measurement.

Attributes:
    params (ModelParams):
        Apparatus, Bob's strength and the silent observers' strengths.
    n_runs (int):
        Number of independent runs.
    alice_check_probability (float):
        Probability that Alice checks the spin rather than the Bell state.
    fine_per_failure (float):
        Amount Bob pays for each failed check.
    master_seed (int):
        Root of every per-run random stream.
    reversal_knows_total_tap (bool):
        Whether Bob's reversal removes the whole residual counter displacement.
    observer_labels (tuple):
        Report names of the silent observers, one per entry of ``params.other_etas``.
    """

    def __init__(self, params: ModelParams, n_runs: int, alice_check_probability: float = 0.5,
                 fine_per_failure: float = 1.0, master_seed: int = 0, reversal_knows_total_tap: bool = True,
                 observer_labels: tuple = None):
        if int(n_runs) != n_runs or n_runs < 1:
            raise InvalidParameter(f"n_runs must be a positive integer, got {n_runs!r}")
        if not 0.0 <= alice_check_probability <= 1.0:
            raise InvalidParameter(f"alice_check_probability must lie in [0,1], got {alice_check_probability!r}")
        if fine_per_failure < 0:
            raise InvalidParameter(f"fine_per_failure must be non negative, got {fine_per_failure!r}")
        if int(master_seed) != master_seed or master_seed < 0 or master_seed >= 2 ** 64:
            raise InvalidParameter(f"master_seed must be a 64-bit unsigned integer, got {master_seed!r}")
        if observer_labels is None:
            observer_labels = tuple(observer_probe(k) for k in range(2, len(params.other_etas) + 2))
        if len(observer_labels) != len(params.other_etas):
            raise InvalidParameter(f"{len(observer_labels)} observer labels for {len(params.other_etas)} observers")
        self.params = params
        self.n_runs = int(n_runs)
        self.alice_check_probability = float(alice_check_probability)
        self.fine_per_failure = float(fine_per_failure)
        self.master_seed = int(master_seed)
        self.reversal_knows_total_tap = bool(reversal_knows_total_tap)
        self.observer_labels = tuple(observer_labels)

    @classmethod
    def from_options(klass, params: ModelParams, n_runs: int, options: dict, observer_labels: tuple = None):
        return klass(params, n_runs, float(options['alice_check_probability']), float(options['fine_per_failure']),
                     int(options['seed']), _as_bool(options['reversal_knows_total_tap']), observer_labels)

    def __repr__(self):
        return f"ProtocolConfig({self.params!r}, n_runs={self.n_runs}, seed={self.master_seed})"


def _as_bool(value) -> bool:
    # -x overrides arrive as strings
    if isinstance(value, str):
        return value.lower() in ('1', 'true', 'yes')
    return bool(value)
