SPIN_CHECK = 'spin_check'
BELL_CHECK = 'bell_check'
AGREE = 'agree'
DISAGREE = 'disagree'
YES = 'yes'
NO = 'no'


class RunRecord:

    def __init__(self, run_index: int, bob_outcome: str, bob_spin: str, alice_choice: str, alice_result: str,
                 fine_per_failure: float = 1.0):
        self.run_index = run_index
        self.bob_outcome = bob_outcome
        self.bob_spin = bob_spin
        self.alice_choice = alice_choice
        self.alice_result = alice_result
        self.fine_paid = fine_per_failure if self.failed else 0.0

    @property
    def failed(self) -> bool:
        return (self.alice_choice == SPIN_CHECK and self.alice_result == DISAGREE) or \
               (self.alice_choice == BELL_CHECK and self.alice_result == NO)

    def __eq__(self, other):
        if not isinstance(other, RunRecord):
            return NotImplemented
        return (self.run_index, self.bob_outcome, self.alice_choice, self.alice_result, self.fine_paid) == \
               (other.run_index, other.bob_outcome, other.alice_choice, other.alice_result, other.fine_paid)

    def __str__(self):
        return ",".join(map(str, [self.run_index, self.bob_outcome, self.bob_spin, self.alice_choice,
                                  self.alice_result, self.fine_paid]))

    @classmethod
    def header(klass):
        return "run,bob_outcome,bob_spin,alice_choice,alice_result,fine"
