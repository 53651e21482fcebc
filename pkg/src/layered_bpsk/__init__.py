"""Layered BPSK over AWGN: modulation, achievable rates, and validation.

Two independent antipodal bit streams share one signal dimension through
data-dependent amplitude weights; the receiver peels them apart with a
sign decision followed by a feedback subtraction.  This package provides
the encoder/demodulator pair, seeded AWGN channels, numeric achievable-rate
evaluation with an exact mutual-information oracle, a Monte Carlo harness,
and a CLI that writes the standard comparison sweeps as CSV.
"""

from .channel import NoiseStream, awgn_complex, awgn_real
from .core import (
    Bit,
    NoiseSpec,
    RatePoint,
    SimReport,
    SymbolFrame,
    WeightPair,
    weights_from_ratio,
)
from .modem import (
    Demod1DResult,
    Demod2DResult,
    demod_1d,
    demod_2d,
    demod_bpsk,
    demod_qpsk,
    encode_1d,
    encode_2d,
    encode_bpsk,
    encode_qpsk,
)
from .montecarlo import (
    DECISION_FEEDBACK,
    GENIE_AIDED,
    EntropyEstimate,
    SimConfig,
    ber_predictions_1d,
    empirical_entropy,
    qfunc,
    sample_frames,
    simulate_1d,
    simulate_2d,
)
from .quadrature import ConvergenceError, IntegralSpec, integrate, plogp
from .rates import (
    LOG2_E,
    RateBreakdown,
    bpsk_rate,
    bpsk_rate_at_snr,
    ebn0_1d,
    ebn0_2d,
    exact_mi_1d,
    gaussian_entropy,
    layered_pdf,
    mixture_pdf,
    qpsk_rate_at_snr,
    rate_1d,
    rate_2d,
    rate_breakdown,
    rate_derivative_at_zero,
    rate_diff,
    rate_x,
    rate_z,
    received_entropy_bpsk,
    received_entropy_layered,
    rho_bpsk,
    rho_x,
    rho_z,
    shannon_capacity,
    snr_to_amplitude,
    taylor_capacity,
    taylor_rate_1d,
    to_db,
)

__version__ = "0.1.0"

__all__ = [
    "Bit", "WeightPair", "NoiseSpec", "SymbolFrame", "RatePoint", "SimReport",
    "weights_from_ratio",
    "Demod1DResult", "Demod2DResult", "encode_1d", "demod_1d", "encode_2d",
    "demod_2d", "encode_bpsk", "demod_bpsk", "encode_qpsk", "demod_qpsk",
    "NoiseStream", "awgn_real", "awgn_complex",
    "IntegralSpec", "ConvergenceError", "integrate", "plogp",
    "LOG2_E", "gaussian_entropy", "mixture_pdf", "layered_pdf", "bpsk_rate",
    "received_entropy_bpsk", "received_entropy_layered",
    "rate_z", "rate_x", "rate_1d", "rate_2d", "exact_mi_1d", "shannon_capacity",
    "taylor_capacity", "rho_bpsk", "rho_z", "rho_x", "taylor_rate_1d",
    "rate_diff", "snr_to_amplitude", "bpsk_rate_at_snr", "qpsk_rate_at_snr",
    "ebn0_1d", "ebn0_2d", "to_db", "rate_derivative_at_zero", "RateBreakdown",
    "rate_breakdown",
    "SimConfig", "SimReport", "EntropyEstimate", "DECISION_FEEDBACK",
    "GENIE_AIDED", "qfunc", "ber_predictions_1d", "simulate_1d", "simulate_2d",
    "empirical_entropy", "sample_frames",
]
