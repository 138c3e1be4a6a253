from qrevsim.oracle.FockOperators import FockOperators, cutoff_for, is_unitary, unitarity_deviation
from qrevsim.oracle.DenseState import DenseState
from qrevsim.oracle.FockOracle import oracle_run, prepare_dense, observables, check_leakage, \
    MAX_QUTRITS, MAX_DISPLACEMENT
