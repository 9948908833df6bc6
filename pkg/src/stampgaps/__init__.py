"""Gap structure of stamp bases.

Core objects and the two independent classifiers are re-exported here;
the HTTP service lives in `stampgaps.service` and the command line in
`stampgaps.cli`.
"""

from .analysis import (
    GapAnalysis,
    GapClass,
    Violation,
    check_conjecture,
    classify_A,
    compute_h0,
    make_violation,
)
from .core import ReachTable, Representation, StampSet
from .enumeration import admissible_max, enumerate_sets
from .propagation import classify_B
from .scanner import ScanJob, ScanResult, ScanSummary, partition, run_partitioned, scan
from .verification import theorem_suite, verify_analysis

__version__ = "0.1.0"

__all__ = [
    "GapAnalysis",
    "GapClass",
    "ReachTable",
    "Representation",
    "ScanJob",
    "ScanResult",
    "ScanSummary",
    "StampSet",
    "Violation",
    "admissible_max",
    "check_conjecture",
    "classify_A",
    "classify_B",
    "compute_h0",
    "enumerate_sets",
    "make_violation",
    "partition",
    "run_partitioned",
    "scan",
    "theorem_suite",
    "verify_analysis",
    "__version__",
]
