"""Ordinal-tree duality and the query machinery built on it.

The package provides explicit ordinal trees, the dual / reversed /
reversed-dual constructions, BP and DFUDS parenthesis codecs connected by
the mirror identity, rank/select bitvectors, 2D-Min-Heaps with
interchangeable range-minimum engines, and minimum-length interval query
solvers, all validated against brute-force oracles.
"""

from .bitseq import BitSeq
from .codec import NodeParenMap, bp_decode, bp_encode, dfuds_decode, dfuds_encode, mirror, mirror_string
from .duality import (
    DualityCertificate,
    dual,
    dual_certified,
    dual_of_reversed,
    dual_parent,
    is_quasi_subtree,
    join,
    join_all,
    primal_dual_ancestor,
    reverse,
    reversed_dual,
    root_prepend,
)
from .errors import (
    ContractError,
    DualtreeError,
    NotFoundError,
    ParseError,
    RangeError,
    ValidationError,
)
from .minheap import MinHeapIndex, build_minheap, reversal_dual_check
from .mliq import IntervalSet, build_intervals, mliq_bruteforce, mliq_naive, mliq_weighted
from .parens import ParenSeq
from .rmq import ENGINES, OpCounters, pda_fast, range_min_index, rmq_ancestor, rmq_checked, rmq_direct, rmq_scan
from .tree import OrdinalTree

__version__ = "0.1.0"

__all__ = [
    "BitSeq",
    "ParenSeq",
    "OrdinalTree",
    "NodeParenMap",
    "DualityCertificate",
    "MinHeapIndex",
    "IntervalSet",
    "OpCounters",
    "ENGINES",
    "bp_encode",
    "bp_decode",
    "dfuds_encode",
    "dfuds_decode",
    "mirror",
    "mirror_string",
    "dual",
    "dual_certified",
    "dual_parent",
    "dual_of_reversed",
    "reverse",
    "reversed_dual",
    "primal_dual_ancestor",
    "join",
    "join_all",
    "root_prepend",
    "is_quasi_subtree",
    "build_minheap",
    "reversal_dual_check",
    "build_intervals",
    "mliq_naive",
    "mliq_weighted",
    "mliq_bruteforce",
    "range_min_index",
    "rmq_checked",
    "rmq_direct",
    "rmq_ancestor",
    "rmq_scan",
    "pda_fast",
    "DualtreeError",
    "RangeError",
    "NotFoundError",
    "ContractError",
    "ValidationError",
    "ParseError",
    "__version__",
]
