"""Shifted and threshold matroids: classification, witnesses, recognition, census."""

from .census import census, ratio_series, threshold_count_formula
from .errors import (
    ContractViolationError,
    DegenerateInputError,
    InvalidArgumentError,
    InvariantViolationError,
    NotAMatroidError,
    ResourceLimitError,
    ShiftmatError,
    UnsupportedError,
    VerificationFailedError,
)
from .poset import (
    BlockDecomposition,
    SubsetWord,
    Word,
    block_decomposition,
    componentwise_leq,
    matching_witness,
    sorted_concat,
)
from .recognition import ExplicitMatroid, canonicalize, is_shifted, validate_bases, vicinal_preorder
from .shifted import DefiningBasis, circuits, count_bases, dual, enumerate_bases, is_basis
from .threshold import (
    NonThresholdCertificate,
    ThresholdClassification,
    WeightFunction,
    certificate,
    classify,
    synthesize_weights,
    verify_certificate,
    verify_weights,
)

__version__ = "0.1.0"
