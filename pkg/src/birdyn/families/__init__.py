from birdyn.families.bck import BCKParams, FiberPoint, bck_inverse, bck_map, bck_orbit_landing, bck_params, solve_constraint
from birdyn.families.orbits import HitIndeterminacy, LandedOn, OrbitTrace, Regular
from birdyn.families.periodic import conjugate, fa_inverse, fa_map, iterate_until_identity, lyness8a, lyness8b, period12, verify_period
from birdyn.families.planar import LinearFractionalParams, exact_vn_parameters, lf_map, vn_check, vn_search
from birdyn.families.probe import HyperbolicityProbe, cohom_hyperbolicity_probe, derive_inverse
from birdyn.families.pseudo import BDKCandidate, bdk_candidate, bdk_matrix, exact_candidate, lj_map, pseudo_auto_certify

__all__ = [
    "BCKParams", "FiberPoint", "bck_inverse", "bck_map", "bck_orbit_landing", "bck_params", "solve_constraint",
    "HitIndeterminacy", "LandedOn", "OrbitTrace", "Regular",
    "conjugate", "fa_inverse", "fa_map", "iterate_until_identity", "lyness8a", "lyness8b", "period12", "verify_period",
    "LinearFractionalParams", "exact_vn_parameters", "lf_map", "vn_check", "vn_search",
    "HyperbolicityProbe", "cohom_hyperbolicity_probe", "derive_inverse",
    "BDKCandidate", "bdk_candidate", "bdk_matrix", "exact_candidate", "lj_map", "pseudo_auto_certify",
]
