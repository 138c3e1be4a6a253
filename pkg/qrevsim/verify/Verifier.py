"""
Verification suite: the branch engine against the dense Fock oracle on a grid
of small systems, unitarity of the dense operators, and the closed-form
identities of the analysis module.
"""

import itertools
import json
import logging
import math
import os.path as path
import numpy as np
from qrevsim.Errors import QRevError, InvalidParameter
from qrevsim.coherent.core import make_discrimination
from qrevsim.coherent.ModelParams import ModelParams
from qrevsim.engine.MeasurementOutcome import PLUS, MINUS
from qrevsim.engine.operations import prepare_bell_pair, prepare_single_qubit, bell_probabilities, \
    reduced_density, PSI_PLUS
from qrevsim.engine.script import protocol_script, run_script
from qrevsim.oracle.FockOperators import FockOperators, cutoff_for, unitarity_deviation
from qrevsim.oracle.FockOracle import oracle_run
from qrevsim.analysis import closed_forms
from qrevsim.verify.CheckResult import CheckResult

GRID_LIBRARY = 'verify_grids.json'
FLIPPED = {PLUS: MINUS, MINUS: PLUS}


def load_grids(library_path: str, grid_file: str = None) -> dict:
    """Grids shipped in the library directory, extended or overridden by a user file."""
    grids = {}
    library_file = path.join(library_path, GRID_LIBRARY)
    if path.isfile(library_file):
        with open(library_file, 'r') as lib_f:
            logging.getLogger("qrevsim").debug("Loading grids from %s", library_file)
            grids.update(json.load(lib_f))
    if grid_file:
        with open(grid_file, 'r') as in_f:
            logging.getLogger("qrevsim").debug("Loading grids from %s", grid_file)
            grids.update(json.load(in_f))
    return grids


def grid_points(grid: dict):
    """(N, epsilon, eta, eta_tilde) of the grid with eta + eta_tilde <= 1."""
    for n, epsilon, eta, eta_tilde in itertools.product(grid['n_qutrits'], grid['epsilon'], grid['eta'],
                                                        grid['eta_tilde']):
        if eta + eta_tilde <= 1.0:
            yield n, epsilon, eta, eta_tilde


class Verifier:

    def __init__(self, grid: dict, inject_fault: bool = False):
        for key in ('n_qutrits', 'epsilon', 'eta', 'eta_tilde'):
            if key not in grid:
                raise InvalidParameter(f"Verification grid misses the '{key}' list")
        self.grid = grid
        self.tolerance = float(grid.get('tolerance', 1e-7))
        self.inject_fault = inject_fault
        self.logger = logging.getLogger("checks")
        self.results = []

    def _record(self, check: CheckResult) -> CheckResult:
        self.results.append(check)
        self.logger.info(str(check))
        return check

    def _initial_states(self):
        yield 'bell', None
        for a_re, a_im, b_re, b_im in self.grid.get('single_qubit', []):
            yield f"qubit({a_re}{a_im:+}j;{b_re}{b_im:+}j)", (complex(a_re, a_im), complex(b_re, b_im))

    def _compare(self, params: ModelParams, initial, outcome: str, label: str):
        # the fault flips Bob's outcome on the engine side only
        engine_outcome = FLIPPED[outcome] if self.inject_fault else outcome
        try:
            start = prepare_bell_pair() if initial is None else prepare_single_qubit(*initial)
            engine_trace, engine_state = run_script(start, params, protocol_script(params, engine_outcome))
            oracle_trace, _, observed = oracle_run(params, protocol_script(params, outcome), initial=initial)
        except QRevError as error:
            self._record(CheckResult.failure(label, f"{type(error).__name__}: {error}"))
            return
        engine_p = [probability for name, _, probability in engine_trace if name == 'measure']
        oracle_p = [probability for name, _, probability in oracle_trace if name == 'measure']
        self._record(CheckResult(f"{label} probability", float(np.max(np.abs(np.subtract(engine_p, oracle_p)))),
                                 self.tolerance))
        qubits = engine_state.layout.qubit_labels
        rho = reduced_density(engine_state, qubits)
        self._record(CheckResult(f"{label} density", float(np.max(np.abs(rho - observed['rho']))), self.tolerance))
        if initial is None:
            fidelity = bell_probabilities(engine_state)[PSI_PLUS]
            self._record(CheckResult(f"{label} fidelity", abs(fidelity - observed['fidelity']), self.tolerance))

    def oracle_checks(self) -> list:
        start = len(self.results)
        for n, epsilon, eta, eta_tilde in grid_points(self.grid):
            params = ModelParams(n, epsilon, bob_eta=eta, other_etas=(eta_tilde,) if eta_tilde > 0 else ())
            for (name, initial), outcome in itertools.product(self._initial_states(), (PLUS, MINUS)):
                label = f"oracle N={n} eps={epsilon} eta={eta} eta_tilde={eta_tilde} {name} {outcome}"
                self._compare(params, initial, outcome, label)
        return self.results[start:]

    def unitarity_checks(self) -> list:
        start = len(self.results)
        for n, epsilon in itertools.product(self.grid['n_qutrits'], self.grid['epsilon']):
            cutoff = cutoff_for(n * epsilon)
            operators = FockOperators(cutoff)
            displacement = operators.displacement(epsilon)
            deviation = unitarity_deviation(displacement)
            self._record(CheckResult(f"unitary displacement d={cutoff} eps={epsilon}", deviation, 1e-9))
            for eta in self.grid['eta']:
                blocks = operators.beamsplitter_blocks(math.asin(math.sqrt(eta)))
                deviation = max(unitarity_deviation(block) for _, _, block in blocks)
                self._record(CheckResult(f"unitary beamsplitter d={cutoff} eta={eta}", deviation, 1e-9))
        return self.results[start:]

    def closed_form_checks(self, samples: int = 10000, seed: int = 0) -> list:
        start = len(self.results)
        rng = np.random.default_rng(seed)
        worst = 0.0
        for c0, eta in zip(rng.uniform(1e-12, 1.0 - 1e-12, samples), rng.uniform(0.0, 1.0, samples)):
            worst = max(worst, abs(closed_forms.tradeoff_point(float(c0), float(eta)).circle_residual))
        self._record(CheckResult("tradeoff circle", worst, 1e-12))
        c0 = math.exp(-2.0)
        eta_star, fine_min, _ = closed_forms.optimal_eta(c0)
        self._record(CheckResult("optimal fine", abs(fine_min - (1.0 - math.sqrt(2.0) / 2.0)), 1e-12))
        self._record(CheckResult("optimal eta", abs(eta_star - math.log(2.0) / 4.0), 1e-9))
        self._record(CheckResult("golden section", abs(closed_forms.golden_section_eta(c0) - eta_star), 1e-9))
        k = closed_forms.k_factor(c0, 0.5)
        curve = closed_forms.multi_observer_curve(c0, 0.5, np.linspace(0.0, 0.5, 101))
        self._record(CheckResult("observer tradeoff", max(abs(k * d_rev ** 2 + d_rel ** 2 - 1.0)
                                                          for d_rel, d_rev, _ in curve), 1e-12))
        information = [closed_forms.mutual_information((1.0 - d) / 2.0) for d in np.linspace(0.0, 1.0, 1000)]
        self._record(CheckResult("information endpoints", abs(information[0]) + abs(information[-1] - 1.0), 0.0))
        increasing = all(later > earlier for earlier, later in zip(information, information[1:]))
        self._record(CheckResult("information increasing", 0.0 if increasing else 1.0, 0.0))
        m_p, m_exact = closed_forms.max_observers(math.exp(-50.0), 0.01)
        self._record(CheckResult("observer bound", abs(m_exact - math.floor(m_p)), 1.0, f"M_p={m_p:.4f}"))
        worst = 0.0
        for c in np.linspace(0.0, 0.999, 1000):
            spec = make_discrimination(float(c))
            worst = max(worst, abs(spec.normalization_residual), abs(spec.orthogonality_residual))
        self._record(CheckResult("discrimination projectors", worst, 1e-9))
        return self.results[start:]

    def run(self) -> list:
        self.unitarity_checks()
        self.closed_form_checks()
        self.oracle_checks()
        return self.results

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.results)
