import random
from fractions import Fraction

import pytest

from birdyn import degree_sequence, delta_estimate
from birdyn.algebra.fields import FieldElement
from birdyn.errors import CertificationFailure, InvalidParameterError, NoConvergence
from birdyn.families.pseudo import (bdk_candidate, bdk_matrix, bdk_orbit_data, exact_candidate, lj_map,
                                    pseudo_auto_certify)
from birdyn.lattice import OrbitData, coxeter_element, delta1_from_lattice, orbit_data_pullback
from birdyn.projective import cremona


@pytest.fixture(scope="module")
def cand27():
    return bdk_candidate(2, 7)


def test_identity_lands_immediately():
    data = pseudo_auto_certify([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert data == OrbitData(2, (1, 1, 1), (0, 1, 2))


def test_random_matrices_do_not_land():
    rng = random.Random(11)
    for _ in range(20):
        L = [[Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(3)] for _ in range(3)]
        with pytest.raises(CertificationFailure) as err:
            pseudo_auto_certify(L, max_steps=12)
        assert err.value.reason in ("no_landing", "on_exceptional")


def test_exceptional_hit_is_reported():
    with pytest.raises(CertificationFailure) as err:
        pseudo_auto_certify([[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    assert err.value.reason == "on_exceptional" and err.value.step == 0


def test_shape_and_singularity_checks():
    with pytest.raises(InvalidParameterError):
        pseudo_auto_certify([[1, 0], [0, 1]], k=2)
    with pytest.raises(InvalidParameterError):
        pseudo_auto_certify([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]])


def test_bdk_shape():
    L = bdk_matrix([Fraction(1, 2), Fraction(3)])
    assert L == [[0, 0, 1], [Fraction(1, 2), 0, Fraction(1, 2)], [0, 3, -2]]
    assert bdk_orbit_data(2, 7) == OrbitData(2, (1, 1, 8), (1, 2, 0))


def test_bdk_k2_n7(cand27):
    assert cand27.orbit_data == bdk_orbit_data(2, 7)
    assert cand27.orbit_data.is_cyclic()
    assert cand27.residual < 1e-10
    assert cand27.delta == pytest.approx(1.17628081826, abs=1e-9)
    # frozen from the first certified seed
    assert cand27.beta == pytest.approx((0.332095534416983, 1.3371554206197747), abs=1e-9)


def test_bdk_k3_small():
    cand = bdk_candidate(3, 5)
    assert cand.orbit_data == bdk_orbit_data(3, 5)
    # the lattice degree is the Coxeter spectral radius of W(4, 2, 9)
    assert cand.delta == pytest.approx(coxeter_element(4, 2, 9).spectral_radius(), abs=1e-9)


def test_bdk_without_solution():
    with pytest.raises(NoConvergence):
        bdk_candidate(2, 7, grid=(50.0,), max_iter=5)
    with pytest.raises(InvalidParameterError):
        bdk_candidate(1, 3)


def test_exact_candidate(cand27):
    L, vals = exact_candidate(cand27)
    assert all(isinstance(v, FieldElement) for v in vals)
    assert pseudo_auto_certify(L) == cand27.orbit_data
    assert [complex(v).real for v in vals] == pytest.approx(list(cand27.beta), abs=1e-12)


def test_degree_growth_matches_lattice(cand27):
    L, _ = exact_candidate(cand27)
    f = lj_map(L)
    est = delta_estimate(degree_sequence(f, 20))
    assert est == pytest.approx(delta1_from_lattice(orbit_data_pullback(cand27.orbit_data)), abs=0.02)


def test_lj_map_of_identity_is_cremona():
    assert lj_map([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == cremona(2)
