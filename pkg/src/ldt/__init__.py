"""Zero-error point location in hyperplane arrangements.

A hidden point is examined only through sign queries: the sign of one
hyperplane's inner product, or the sign of the difference of two. The
solver recovers the full sign pattern with far fewer queries than
labeling everything, and the decision problems built on top (k-SUM,
subset sum, sumset sorting, linear degeneracy testing, zero triangles)
read their answers off that pattern.
"""

from .geometry import Rational, Sign, SignVector, Vector, inner_product, sign_of
from .inference import (
    CellDescription,
    InconsistentSampleError,
    InferenceOutcome,
    SortedSample,
    build_sorted_sample,
    cell_from_sample,
    infer_set,
    infer_sign,
    structural_infer,
)
from .lp import HomogeneousSystem, cone_member, feasible, interior_witness
from .oracle import HiddenPointOracle, QueryLedger, StrictModeViolation
from .problems import (
    Encoding,
    InconsistentPatternError,
    InstanceFormatError,
    SizeCapError,
    encode_ksum,
    encode_kldt,
    encode_sort_sumset,
    encode_subset_sum,
    encode_zero_triangles,
    extract_answer,
)
from .prng import SplitMix64
from .solver import SolveConfig, SolveReport, SolverStalledError, decide, solve

__all__ = [
    "CellDescription",
    "Encoding",
    "HiddenPointOracle",
    "HomogeneousSystem",
    "InconsistentPatternError",
    "InconsistentSampleError",
    "InferenceOutcome",
    "InstanceFormatError",
    "QueryLedger",
    "Rational",
    "Sign",
    "SignVector",
    "SizeCapError",
    "SolveConfig",
    "SolveReport",
    "SolverStalledError",
    "SortedSample",
    "SplitMix64",
    "StrictModeViolation",
    "Vector",
    "build_sorted_sample",
    "cell_from_sample",
    "cone_member",
    "decide",
    "encode_ksum",
    "encode_kldt",
    "encode_sort_sumset",
    "encode_subset_sum",
    "encode_zero_triangles",
    "extract_answer",
    "feasible",
    "infer_set",
    "infer_sign",
    "inner_product",
    "interior_witness",
    "sign_of",
    "solve",
    "structural_infer",
]

__version__ = "0.1.0"
