"""Birational maps of projective spaces: degree growth, blow-up lattices and explicit families."""
__version__ = "0.1.0"

from birdyn.degrees import DegreeSequence, degree_sequence, delta_estimate
from birdyn.kernels import BACKEND
from birdyn.lattice import (OrbitData, PullbackMatrix, chi_polynomial, coxeter_element, cremona_pullback,
                            delta1_from_lattice, is_isometry, orbit_data_pullback, quadratic_family_data)
from birdyn.monomial import exterior_power, monomial_degrees, monomial_map
from birdyn.projective import (INDETERMINATE, HomogeneousMap, ProjectivePoint, compose, compose_reduce, cremona,
                               cremona_product, evaluate, iterate, jacobian_det, reduce_map)

__all__ = [
    "__version__", "BACKEND",
    "DegreeSequence", "degree_sequence", "delta_estimate",
    "OrbitData", "PullbackMatrix", "chi_polynomial", "coxeter_element", "cremona_pullback",
    "delta1_from_lattice", "is_isometry", "orbit_data_pullback", "quadratic_family_data",
    "exterior_power", "monomial_degrees", "monomial_map",
    "INDETERMINATE", "HomogeneousMap", "ProjectivePoint", "compose", "compose_reduce", "cremona",
    "cremona_product", "evaluate", "iterate", "jacobian_det", "reduce_map",
]
