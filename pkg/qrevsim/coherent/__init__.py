from qrevsim.coherent.CoherentAmplitude import CoherentAmplitude
from qrevsim.coherent.OverlapScalar import OverlapScalar
from qrevsim.coherent.ModelParams import ModelParams
from qrevsim.coherent.DiscriminationSpec import DiscriminationSpec
from qrevsim.coherent.core import coherent_overlap, log_overlap, c0_of, c_of_eta, clamp_overlap, \
    error_probability, make_discrimination, projection_amplitudes, DEGENERATE_TOLERANCE
