import numpy as np
from qrevsim.Errors import InvalidParameter


class FigureTable:
    """Named numeric columns of one figure or sweep, written as CSV.

Attributes:
    name (str): table name, the key of its metadata in figures.json.
    columns (dict): column name to numpy array, in output order. The first column is the grid.
    metadata (dict): parameters the table was computed with.
    """

    def __init__(self, name: str, columns: dict, metadata: dict = None, increasing: bool = True):
        lengths = {len(values) for values in columns.values()}
        if len(lengths) != 1:
            raise InvalidParameter(f"Columns of {name} have different lengths {sorted(lengths)}")
        grid = next(iter(columns.values()))
        if increasing and np.any(np.diff(grid) <= 0):
            raise InvalidParameter(f"Grid of {name} is not strictly increasing")
        self.name = name
        self.columns = {key: np.asarray(values, dtype=float) for key, values in columns.items()}
        self.metadata = dict(metadata or {})

    def __len__(self):
        return len(next(iter(self.columns.values())))

    def column(self, key: str) -> np.ndarray:
        return self.columns[key]

    def header(self) -> str:
        return ",".join(self.columns)

    def write_csv(self, file_name: str):
        data = np.column_stack(list(self.columns.values()))
        with open(file_name, 'w', newline='\n') as out_f:
            np.savetxt(out_f, data, fmt='%.17g', delimiter=',', header=self.header(), comments='', newline='\n')

    @classmethod
    def read_csv(klass, name: str, file_name: str) -> 'FigureTable':
        data = np.loadtxt(file_name, delimiter=',', skiprows=1, ndmin=2)
        with open(file_name, 'r') as in_f:
            names = in_f.readline().strip().split(',')
        return klass(name, {key: data[:, index] for index, key in enumerate(names)}, increasing=False)
