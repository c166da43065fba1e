"""Exact-arithmetic certification of hyperbolicity hypotheses on blown-up planes."""

__version__ = "0.1.0"

from .lattice import (  # noqa: F401
    BlownPoint,
    Component,
    ConfigError,
    DivisorClass,
    SurfaceConfig,
    canonical_class,
    chi,
    exceptional_class,
    intersect,
    strict_transform,
)
from .positivity import (  # noqa: F401
    Verdict,
    WeightedBoundary,
    ample_class_sufficient,
    ample_sufficient,
    boundary_class,
    orbifold_canonical_big,
)
from .quadext import (  # noqa: F401
    CrossFieldError,
    NoPositiveRootError,
    NoRealRootError,
    QuadExt,
    compare_cross,
    min_root_quadratic,
    rational_above,
    rational_below,
)
from .certifier import (  # noqa: F401
    Certificate,
    build_report,
    certify,
    filtration_inequality,
    truncation_root,
    volume_ratio_lower,
    weight_slack,
)
