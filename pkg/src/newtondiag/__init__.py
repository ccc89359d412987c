"""Exact tools for Newton diagrams of polynomials constant on a hyperplane."""

from .polynomial import (
    ClassReport,
    NotDivisible,
    Polynomial,
    class_membership,
    divide_by_s,
    homogenize_and_flip,
    p_degree_and_count,
)
from .diagram import NewtonDiagram, diagram_of, nodes, node_count, realize, weighted_surface_count_2d
from .grammar import format_polynomial, parse_map, parse_polynomial
from .constructions import dkr_sharp_2d, faran3, faran_cubics, filledsharp_search, sharp_extend, whitney
from .bounds import bound_table, collapse_to_two_vars, filled_observation_check, pullback_compose, verify_bound
from .quadrics import MonomialMap, map_of_positive_polynomial, real_polynomial_of_map, verify_quadric_map
from .enumeration import decomposability_oracle, exhaustive_bound_verify

__all__ = [
    "ClassReport",
    "MonomialMap",
    "NewtonDiagram",
    "NotDivisible",
    "Polynomial",
    "bound_table",
    "class_membership",
    "collapse_to_two_vars",
    "decomposability_oracle",
    "diagram_of",
    "divide_by_s",
    "dkr_sharp_2d",
    "exhaustive_bound_verify",
    "faran3",
    "faran_cubics",
    "filled_observation_check",
    "filledsharp_search",
    "format_polynomial",
    "homogenize_and_flip",
    "map_of_positive_polynomial",
    "node_count",
    "nodes",
    "p_degree_and_count",
    "parse_map",
    "parse_polynomial",
    "pullback_compose",
    "real_polynomial_of_map",
    "realize",
    "sharp_extend",
    "verify_bound",
    "verify_quadric_map",
    "weighted_surface_count_2d",
    "whitney",
]
