import math
from scipy.stats import norm
from qrevsim.coherent.core import c_of_eta, error_probability
from qrevsim.analysis.closed_forms import reversibility, fidelity_of, k_factor
from qrevsim.protocol.RunRecord import SPIN_CHECK, BELL_CHECK, DISAGREE, YES

CONFIDENCE = 0.95


def _rate(hits: int, trials: int) -> float:
    return hits / trials if trials > 0 else math.nan


def _sigma(p: float, trials: int) -> float:
    if trials == 0 or math.isnan(p):
        return math.nan
    return math.sqrt(max(p * (1.0 - p), 0.0) / trials)


def z_score(observed: float, expected: float, trials: int) -> float:
    """Deviation in units of the closed-form binomial standard deviation."""
    if trials == 0 or math.isnan(observed):
        return 0.0
    sigma = _sigma(expected, trials)
    if sigma == 0.0:
        return 0.0 if observed == expected else math.inf
    return abs(observed - expected) / sigma


class ProtocolStats:
    """Aggregated outcome of a Monte Carlo experiment and the closed forms it should reproduce.

Rates carry Wald confidence half-widths at 95%. ``mean_fine`` is the average
fine actually paid per run; ``cost_fine`` sums both failure rates, the cost
function Bob minimizes when choosing his strength.
    """

    def __init__(self, n_runs: int, n_spin_checks: int, n_disagree: int, n_bell_checks: int, n_yes: int,
                 total_fine: float, config):
        self.n_runs = n_runs
        self.n_spin_checks = n_spin_checks
        self.n_disagree = n_disagree
        self.n_bell_checks = n_bell_checks
        self.n_yes = n_yes
        self.config = config
        quantile = norm.ppf(0.5 + CONFIDENCE / 2.0)
        self.empirical_p_error = _rate(n_disagree, n_spin_checks)
        self.empirical_fidelity = _rate(n_yes, n_bell_checks)
        self.p_error_half_width = quantile * _sigma(self.empirical_p_error, n_spin_checks)
        self.fidelity_half_width = quantile * _sigma(self.empirical_fidelity, n_bell_checks)
        self.mean_fine = total_fine / n_runs
        failure_rate = total_fine / config.fine_per_failure / n_runs if config.fine_per_failure > 0 else 0.0
        self.mean_fine_half_width = quantile * config.fine_per_failure * _sigma(failure_rate, n_runs)
        self.observer_reliability = {}
        self._set_expected()

    @classmethod
    def from_records(klass, records: list, config) -> 'ProtocolStats':
        spin = [record for record in records if record.alice_choice == SPIN_CHECK]
        bell = [record for record in records if record.alice_choice == BELL_CHECK]
        return klass(len(records), len(spin), sum(1 for record in spin if record.alice_result == DISAGREE),
                     len(bell), sum(1 for record in bell if record.alice_result == YES),
                     math.fsum(record.fine_paid for record in records), config)

    def _set_expected(self):
        params = self.config.params
        c0 = params.c0
        self.expected_p_error = error_probability(c_of_eta(c0, params.bob_eta))
        self.expected_d_rev = reversibility(c0, params.bob_eta, params.eta_tilde,
                                            self.config.reversal_knows_total_tap)
        self.expected_fidelity = fidelity_of(self.expected_d_rev)
        q = self.config.alice_check_probability
        self.expected_failure_rate = q * self.expected_p_error + (1.0 - q) * (1.0 - self.expected_fidelity)
        self.expected_mean_fine = self.config.fine_per_failure * self.expected_failure_rate
        self.k = k_factor(c0, params.eta_tilde) if c0 < 1.0 else 1.0

    @property
    def cost_fine(self) -> float:
        return self.config.fine_per_failure * (self.empirical_p_error + 1.0 - self.empirical_fidelity)

    @property
    def expected_cost_fine(self) -> float:
        return self.config.fine_per_failure * (self.expected_p_error + 1.0 - self.expected_fidelity)

    @property
    def d_rel(self) -> float:
        return 1.0 - 2.0 * self.empirical_p_error

    @property
    def d_rev(self) -> float:
        return 2.0 * self.empirical_fidelity - 1.0

    @property
    def tradeoff_residual(self) -> float:
        """K d_rev^2 + d_rel^2 - 1 from the empirical rates."""
        return self.k * self.d_rev ** 2 + self.d_rel ** 2 - 1.0

    @property
    def tradeoff_sigma(self) -> float:
        sigma_p = _sigma(self.empirical_p_error, self.n_spin_checks)
        sigma_f = _sigma(self.empirical_fidelity, self.n_bell_checks)
        return math.hypot(4.0 * self.k * self.d_rev * sigma_f, 4.0 * self.d_rel * sigma_p)

    def z_scores(self) -> dict:
        failures = self.mean_fine / self.config.fine_per_failure if self.config.fine_per_failure > 0 else 0.0
        return {'p_error': z_score(self.empirical_p_error, self.expected_p_error, self.n_spin_checks),
                'fidelity': z_score(self.empirical_fidelity, self.expected_fidelity, self.n_bell_checks),
                'mean_fine': z_score(failures, self.expected_failure_rate, self.n_runs)}

    @property
    def max_z(self) -> float:
        return max(self.z_scores().values())

    def to_dict(self) -> dict:
        def clean(value):
            return None if isinstance(value, float) and math.isnan(value) else value

        params = self.config.params
        return {
            'parameters': {'n_qutrits': params.n_qutrits, 'epsilon': params.epsilon, 'c0': params.c0,
                           'eta': params.bob_eta, 'observers': dict(zip(self.config.observer_labels,
                                                                         params.other_etas)),
                           'n_runs': self.n_runs, 'seed': self.config.master_seed,
                           'alice_check_probability': self.config.alice_check_probability,
                           'reversal_knows_total_tap': self.config.reversal_knows_total_tap},
            'empirical': {key: clean(value) for key, value in (
                ('p_error', self.empirical_p_error), ('p_error_half_width', self.p_error_half_width),
                ('fidelity', self.empirical_fidelity), ('fidelity_half_width', self.fidelity_half_width),
                ('mean_fine_per_run', self.mean_fine), ('mean_fine_half_width', self.mean_fine_half_width),
                ('cost_fine', self.cost_fine), ('d_rel', self.d_rel), ('d_rev', self.d_rev),
                ('tradeoff_residual', self.tradeoff_residual), ('tradeoff_sigma', self.tradeoff_sigma))},
            'counts': {'spin_checks': self.n_spin_checks, 'disagree': self.n_disagree,
                       'bell_checks': self.n_bell_checks, 'yes': self.n_yes},
            'expected': {'p_error': self.expected_p_error, 'fidelity': self.expected_fidelity,
                         'mean_fine_per_run': self.expected_mean_fine, 'cost_fine': self.expected_cost_fine,
                         'd_rel': 1.0 - 2.0 * self.expected_p_error, 'd_rev': self.expected_d_rev, 'k': self.k},
            'z_scores': self.z_scores(),
            'observers': self.observer_reliability,
        }

    def rows(self) -> list:
        """(quantity, empirical, half width, expected, z) rows for the CSV report."""
        z = self.z_scores()
        return [('p_error', self.empirical_p_error, self.p_error_half_width, self.expected_p_error, z['p_error']),
                ('fidelity', self.empirical_fidelity, self.fidelity_half_width, self.expected_fidelity,
                 z['fidelity']),
                ('mean_fine_per_run', self.mean_fine, self.mean_fine_half_width, self.expected_mean_fine,
                 z['mean_fine'])]
