from qrevsim.analysis.TradeoffPoint import TradeoffPoint
from qrevsim.analysis.closed_forms import tradeoff_point, optimal_eta, golden_section_eta, k_factor, \
    multi_observer_curve, optimal_eta_with_observers, reversibility, binary_entropy, mutual_information, \
    joint_distribution, mutual_information_from_joint, fidelity_from_p_error, observer_reliability, \
    max_observers, reliability_of, fidelity_of, FINE_MIN, HALF_SQRT2
