"""Shortest vertex-disjoint paths between terminals on two faces of a planar digraph."""

from .errors import (
    BadParams,
    FormatError,
    GraphError,
    Infeasible,
    InstanceError,
    OrderInfeasible,
    TooLarge,
    TwoFaceError,
)
from .formats import generate_grid_instance, read_instance, read_solution, write_instance, write_solution
from .oracle import brute_force_optimum, mu_table, verify_solution
from .planar import Arc, FaceRef, Instance, PlanarGraph, build_dual, build_embedding, validate_instance
from .rotation import solve
from .solution import Solution

__all__ = [
    "Arc",
    "BadParams",
    "FaceRef",
    "FormatError",
    "GraphError",
    "Infeasible",
    "Instance",
    "InstanceError",
    "OrderInfeasible",
    "PlanarGraph",
    "Solution",
    "TooLarge",
    "TwoFaceError",
    "brute_force_optimum",
    "build_dual",
    "build_embedding",
    "generate_grid_instance",
    "mu_table",
    "read_instance",
    "read_solution",
    "solve",
    "validate_instance",
    "verify_solution",
    "write_instance",
    "write_solution",
]
