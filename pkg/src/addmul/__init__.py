"""Complexity of integers written with a repeated base literal, + and *."""

from .classify2 import (
    ClassifiedForm,
    FormA,
    FormB,
    FormC,
    FormD,
    Pow2Decomposition,
    PurePower,
    TwoPowers,
    classify_m_plus_1,
    classify_m_plus_2,
    decompose_pow2,
    refined_lower_bound_2,
)
from .engine import (
    BuildConfig,
    CapacityExceededError,
    ComplexityTable,
    InvalidConfigError,
    NotMultipleOfBaseError,
    OutOfRangeError,
    RangeExceededError,
    TableFormatError,
    build_table,
    complexity,
    complexity_search,
    defect_histogram,
    digit_expression,
    load_table,
    lower_bound,
    reachable_sets_oracle,
    save_table,
    upper_bound_digits,
    witness,
)
from .tree import (
    Add,
    Expr,
    LEAF,
    Leaf,
    Mul,
    ValueOverflowError,
    evaluate,
    leaf_count,
    map_leaves,
    normalize_ones_runs,
    to_text,
)

__version__ = "0.1.0"
