import os
import os.path as path
from qrevsim.Errors import InvalidParameter


def _threads_from_environment() -> int:
    value = os.environ.get('QREV_THREADS', '0')
    try:
        threads = int(value)
    except ValueError:
        raise InvalidParameter(f"QREV_THREADS must be an integer, got '{value}'")
    if threads < 0:
        raise InvalidParameter(f"QREV_THREADS must be >= 0, got {threads}")
    return threads


class Options:

    _instance = None

    def __new__(class_, *args, **kwargs):
        if not isinstance(class_._instance, class_):
            class_._instance = object.__new__(class_, *args, **kwargs)
            class_._instance.options = class_.defaults()
        return class_._instance

    @classmethod
    def defaults(klass) -> dict:
        return {'seed': 0, 'output_dir': '.', 'log_level': 'INFO',
                'threads': _threads_from_environment(),
                'alice_check_probability': 0.5,
                'fine_per_failure': 1.0,
                'reversal_knows_total_tap': True,
                'degenerate_tolerance': 1e-9,
                'grid_library_path': path.join(path.dirname(__file__), 'data')}

    def get(self):
        return self.options

    def reset(self):
        self.options = self.defaults()
        return self.options

    def worker_count(self) -> int:
        threads = int(self.options.get('threads', 0))
        if threads == 0:
            return os.cpu_count() or 1
        return threads
