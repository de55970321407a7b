"""Decreasing minimization on M-convex sets, with exact certificates."""

from .core import (
    ConsistencyError,
    DecminError,
    EnumerationError,
    GroundSet,
    GroundSetTooLarge,
    InfeasibleError,
)
from .setfn import SetFunction, from_json, from_table, lovasz_ext
from .mconvex import contains, enumerate_points, greedy_vertex
from .decmin import decmin_local_search

__all__ = [
    "ConsistencyError",
    "DecminError",
    "EnumerationError",
    "GroundSet",
    "GroundSetTooLarge",
    "InfeasibleError",
    "SetFunction",
    "contains",
    "decmin_local_search",
    "enumerate_points",
    "from_json",
    "from_table",
    "greedy_vertex",
    "lovasz_ext",
]

__version__ = "0.1.0"
