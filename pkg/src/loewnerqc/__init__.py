"""Loewner chains, univalence criteria and Becker quasiconformal extensions.

The package turns the chain machinery of geometric function theory into
runnable checks: explicit chains with closed-form transition fields, grid
sweeps of the classical criteria with computed minimal dilatation bounds,
Becker's extension with two independent Beltrami-coefficient routes, and a
one-sided univalence falsifier.
"""

from .chains import (
    BazilevicIntegralChain,
    ChainReport,
    ConvexCombinationChain,
    ExponentialChain,
    LoewnerChain,
    NormalizedFrame,
    SheilSmallChain,
    SpirallikeStandardChain,
    eval_chain,
    make_chain,
    normalize_chain,
    verify_chain,
)
from .criteria import (
    CriterionReport,
    GridSpec,
    convex_combination,
    evaluate_criterion,
)
from .disks import DiskSpec, disk_params, membership, min_k
from .extension import (
    BeltramiSample,
    DilatationReport,
    becker_extend,
    beltrami_closed,
    beltrami_fd,
    dilatation_report,
)
from .functions import (
    AnalyticFunction,
    HalfPlane,
    Identity,
    Koebe,
    Polynomial,
    SeriesBacked,
    SpiralKoebe,
    bazilevic_construct,
)
from .oracle import (
    UnivalenceVerdict,
    injectivity_falsifier,
    univalence_scan,
    winding_count,
)
from .series import PowerSeries

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunction",
    "BazilevicIntegralChain",
    "BeltramiSample",
    "ChainReport",
    "ConvexCombinationChain",
    "CriterionReport",
    "DilatationReport",
    "DiskSpec",
    "ExponentialChain",
    "GridSpec",
    "HalfPlane",
    "Identity",
    "Koebe",
    "LoewnerChain",
    "NormalizedFrame",
    "Polynomial",
    "PowerSeries",
    "SeriesBacked",
    "SheilSmallChain",
    "SpiralKoebe",
    "SpirallikeStandardChain",
    "UnivalenceVerdict",
    "bazilevic_construct",
    "becker_extend",
    "beltrami_closed",
    "beltrami_fd",
    "convex_combination",
    "dilatation_report",
    "disk_params",
    "eval_chain",
    "evaluate_criterion",
    "injectivity_falsifier",
    "make_chain",
    "membership",
    "min_k",
    "normalize_chain",
    "univalence_scan",
    "verify_chain",
    "winding_count",
]
