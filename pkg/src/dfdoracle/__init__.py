"""Exact discrete Fréchet distance oracles for curves, geometric trees and local graphs."""

from .curve_oracle import CurveOracle, FeasibilityOutcome
from .geometry import Annulus, Disk, GeometricGraph, delaunay, dist
from .graph_oracle import LocalGraphOracle, SegmentQuery
from .range_tree import CanonicalRangeTree, RangeRef
from .stats import QueryStats
from .tree_oracle import TreeOracle

__all__ = [
    "Annulus",
    "CanonicalRangeTree",
    "CurveOracle",
    "Disk",
    "FeasibilityOutcome",
    "GeometricGraph",
    "LocalGraphOracle",
    "QueryStats",
    "RangeRef",
    "SegmentQuery",
    "TreeOracle",
    "delaunay",
    "dist",
]
