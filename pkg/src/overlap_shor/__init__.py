"""Overlapped-repetition Shor codes: construction, verification, decoding, simulation."""

from .builder import (
    StabilizerCode,
    asymptotic_rate,
    build,
    build_double_overlap,
    build_inner_overlap,
    build_outer_overlap,
    build_shor,
    predicted_parameters,
    rate_ratio_vs_shor,
    weight_census,
)
from .classical import build_overlapped, build_repetition, encode, min_distance
from .decoder import (
    build_grouped,
    build_lookup,
    correctability_census,
    decode,
    extract_syndrome,
    noerror_gain,
)
from .pauli import PauliOperator, commutes, format_pauli, parse_pauli, product, weight
from .simulator import NoiseModel, gain_scan, run_monte_carlo
from .verifier import check_valid, classify_error, compute_distance, degeneracy_classes

__version__ = "0.1.0"
