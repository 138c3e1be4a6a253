from qrevsim.verify.CheckResult import CheckResult
from qrevsim.verify.Verifier import Verifier, load_grids, grid_points
