"""Exact extreme-ray enumeration for cones with per-group support constraints,
with a triangulation front end producing normal-surface matching equations."""

from .cone_problem import (
    EnumerationProblem,
    admissible,
    mcmullen_bound,
    parse_cone,
    parse_rays,
    write_cone,
    write_rays,
)
from .dd_engine import Ray, RayInner, RunConfig, RunStats, recover, run
from .oracle import OracleLimit, brute_force_filtered, brute_force_rays
from .ordering import (
    OrderingStrategy,
    choose_dynamic,
    order_static,
    parse_strategy,
    position_vector,
    strategy_label,
)
from .triangulation import (
    Skeleton,
    Triangulation,
    compute_skeleton,
    parse_triangulation,
    standard_matching_equations,
    twisted_layered_loop,
    write_triangulation,
)
from .zeroset import ZeroSet, zeroset_of

__version__ = "0.1.0"

__all__ = [
    "EnumerationProblem",
    "OracleLimit",
    "OrderingStrategy",
    "Ray",
    "RayInner",
    "RunConfig",
    "RunStats",
    "Skeleton",
    "Triangulation",
    "ZeroSet",
    "__version__",
    "admissible",
    "brute_force_filtered",
    "brute_force_rays",
    "choose_dynamic",
    "compute_skeleton",
    "mcmullen_bound",
    "order_static",
    "parse_cone",
    "parse_rays",
    "parse_strategy",
    "parse_triangulation",
    "position_vector",
    "recover",
    "run",
    "standard_matching_equations",
    "strategy_label",
    "twisted_layered_loop",
    "write_cone",
    "write_rays",
    "write_triangulation",
    "zeroset_of",
]
