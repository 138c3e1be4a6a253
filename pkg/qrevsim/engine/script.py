"""
Scenario scripts: the measurement protocol written as a list of steps, so that
the branch engine and the dense Fock oracle can execute exactly the same
sequence.

Steps are tuples:
  | - ``('premeasure',)``: correlate qutrits and counter with the measured qubit.
  | - ``('tap', probe, eta)``: hand a fraction eta of the initial counter energy to a probe.
  | - ``('measure', probe, forced)``: optimal measurement of a probe, ``forced`` may be None.
  | - ``('reverse', knows_total_tap)``: undo the pre-measurement.
  | - ``('evolve', t)``: free counter evolution for a time t.
"""

from qrevsim.Errors import InvalidParameter
from qrevsim.coherent.ModelParams import ModelParams
from qrevsim.engine.BranchState import BranchState
from qrevsim.engine import operations

BOB_PROBE = 'bob'


def observer_probe(k: int) -> str:
    return f"observer{k}"


def protocol_script(params: ModelParams, bob_outcome: str = None, knows_total_tap: bool = True) -> list:
    """Bob's side of the protocol: silent taps first, then Bob's tap, measurement and reversal."""
    script = [('premeasure',)]
    for k, eta in enumerate(params.other_etas, start=2):
        script.append(('tap', observer_probe(k), eta))
    script.append(('tap', BOB_PROBE, params.bob_eta))
    script.append(('measure', BOB_PROBE, bob_outcome))
    script.append(('reverse', knows_total_tap))
    return script


def run_script(state: BranchState, params: ModelParams, script: list, rng=None):
    """Executes a scenario on the branch engine.

Returns:
    The trace, a list of (step name, outcome label or None, probability), and the final state.
    """
    trace = []
    for step in script:
        name = step[0]
        if name == 'premeasure':
            state = operations.apply_premeasurement(state, params)
            trace.append((name, None, 1.0))
        elif name == 'tap':
            state = operations.tap_probe(state, step[2], step[1], of_initial=True)
            trace.append((name, None, 1.0))
        elif name == 'measure':
            outcome, state = operations.measure_probe(state, step[1], rng, forced=step[2])
            trace.append((name, outcome.label, outcome.probability))
        elif name == 'reverse':
            state = operations.apply_reversal(state, params, knows_total_tap=step[1])
            trace.append((name, None, 1.0))
        elif name == 'evolve':
            state = operations.evolve_counter_phase(state, step[1], params)
            trace.append((name, None, 1.0))
        else:
            raise InvalidParameter(f"Unknown scenario step {name}")
    return trace, state
