from qrevsim.protocol.ProtocolConfig import ProtocolConfig
from qrevsim.protocol.RunRecord import RunRecord, SPIN_CHECK, BELL_CHECK, AGREE, DISAGREE, YES, NO
from qrevsim.protocol.ProtocolStats import ProtocolStats, z_score
from qrevsim.protocol.Protocol import Protocol, single_run, run_monte_carlo, run_multi_observer, run_rng, \
    observer_error_probability
