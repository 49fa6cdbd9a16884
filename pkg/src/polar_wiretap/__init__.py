"""Nested polar codes for the degraded binary erasure wiretap channel."""

from .codec import DecodeResult, EncodingRecord, block_error_rate, decode_bob, encode_secret
from .construction import (
    RateTargeted,
    Threshold,
    WiretapCodeConfig,
    assign_frozen_vector,
    load_config,
    save_config,
    secrecy_capacity,
    select_index_sets,
)
from .exceptions import CapacityError, DegradednessError, InfeasibleRateError
from .gf2 import column_submatrix, parity_check_from_generator, rank, rref
from .polar import (
    ERASED,
    BecChannel,
    bhattacharyya_bec,
    bit_reversal_permutation,
    generator_matrix,
    polar_encode,
    sc_decode_bec,
    transmit_bec,
)
from .secrecy import (
    HOMOGENEOUS,
    PAPER_LITERAL,
    EquivocationReport,
    NestedCodeMatrices,
    brute_force_equivocation,
    build_nested_matrices,
    equivocation_given_erasures,
    leakage_sweep,
)

__version__ = "0.1.0"
