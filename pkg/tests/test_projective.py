import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birdyn.algebra.multipoly import MultiPoly, parse_poly
from birdyn.errors import DimensionError, InconclusiveError
from birdyn.families import lf_map
from birdyn.families.planar import LinearFractionalParams
from birdyn.projective import (INDETERMINATE, NOT_CONTRACTED, HomogeneousMap, ProjectivePoint, ambient_vars, compose,
                               compose_reduce, contracts_to, cremona, cremona_product, evaluate, jacobian_det,
                               linear_factors, reduce_map)

X3 = ("x0", "x1", "x2")


def P(text, vars=X3):
    return parse_poly(text, vars)


def test_point_canonical_form():
    p = ProjectivePoint([2, 4, -6])
    assert p.coords == (1, 2, -3)
    assert p == ProjectivePoint([Fraction(1, 2), 1, Fraction(-3, 2)])
    q = ProjectivePoint([0j, 2j, 0])
    assert q.coords[1] == pytest.approx(1.0)


def test_point_mixed_promotes_to_float():
    p = ProjectivePoint([1, 0.5, Fraction(1, 3)])
    assert not p.exact


def test_point_dimension_check():
    with pytest.raises(DimensionError):
        ProjectivePoint([1, 2, 3], (3,))


def test_cremona_formulas():
    assert [str(c) for c in cremona(2).components] == ["x1*x2", "x0*x2", "x0*x1"]
    assert [str(c) for c in cremona(3).components] == ["x1*x2*x3", "x0*x2*x3", "x0*x1*x3", "x0*x1*x2"]
    J1 = cremona(1)
    assert J1.degree == 1 and [str(c) for c in J1.components] == ["x1", "x0"]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_cremona_involution(k):
    assert compose_reduce(cremona(k), cremona(k)).is_identity()


def test_evaluate_examples():
    J = cremona(2)
    assert evaluate(J, ProjectivePoint([1, 1, 1])) == ProjectivePoint([1, 1, 1])
    assert evaluate(J, ProjectivePoint.vertex(0, 2)) is INDETERMINATE
    params = LinearFractionalParams(Fraction(2, 3), Fraction(5, 7))
    q = ProjectivePoint([1, -params.a, 0])
    assert evaluate(lf_map(params), q) is not INDETERMINATE


def test_compose_with_identity():
    f = lf_map(LinearFractionalParams(Fraction(2, 3), Fraction(5, 7)))
    assert compose_reduce(f, HomogeneousMap.identity(2)) == f


def test_cremona_product_small_case():
    J = cremona_product(1, 2)
    # (x, y) -> (1/x, x/y) in bihomogeneous coordinates
    assert [[str(c) for c in b] for b in J.blocks] == [["x1", "x0"], ["x0*y1", "x1*y0"]]
    ones = ProjectivePoint([1, 1, 1, 1], (1, 1))
    assert evaluate(J, ones) == ones


def test_cremona_product_square_formula():
    # the printed formula squares to x -> x, y -> y / x^2 coordinatewise, not to the identity
    J = cremona_product(2, 2)
    sq = compose_reduce(J, J)
    vals = [Fraction(v) for v in (1, 2, 3, 5, 7, 11)]
    img = evaluate(sq, ProjectivePoint(vals, (2, 2)))
    x, y = vals[:3], vals[3:]
    assert img == ProjectivePoint(x + [yi / xi ** 2 for xi, yi in zip(x, y)], (2, 2))
    # y_i / x_i^2 over a common denominator: y_i * prod_{j != i} x_j^2
    assert sq.multidegree == [[1, 0], [4, 1]]


def test_jacobian_of_lf_map():
    a, b = Fraction(2, 3), Fraction(5, 7)
    jd = jacobian_det(lf_map(LinearFractionalParams(a, b)))
    expected = P("x0") * (P("x0") * b + P("x1")) * (P("x0") * a + P("x2")) * 2
    assert jd == expected or jd == -expected


def test_jacobian_of_linear_and_cremona():
    L = HomogeneousMap.linear([[1, 2, 0], [0, 1, 0], [3, 0, 2]])
    assert jacobian_det(L).is_constant() and jacobian_det(L).constant_value() == 2
    jd = jacobian_det(cremona(2))
    assert jd.normalize() == P("x0*x1*x2")


def test_jacobian_chain_rule_for_unreduced_composition():
    f = lf_map(LinearFractionalParams(Fraction(1, 2), Fraction(3, 4)))
    g = HomogeneousMap.from_strings(["x0^2", "x1^2 - x0*x2", "x1*x2"])
    lhs = jacobian_det(compose(f, g))
    rhs = jacobian_det(f).substitute(list(g.components)) * jacobian_det(g)
    assert lhs == rhs


def test_linear_factors_examples():
    a, b = Fraction(2, 3), Fraction(5, 7)
    p = P("x0") * (P("x0") * b + P("x1")) * (P("x0") * a + P("x2")) * 2
    facs, rest = linear_factors(p)
    assert sorted(str(f.normalize()) for f in facs) == sorted(
        str(f.normalize()) for f in [P("x0"), P("x0") * b + P("x1"), P("x0") * a + P("x2")])
    assert rest.is_constant()
    facs, rest = linear_factors(P("x0^2*x1"))
    assert sorted(map(str, facs)) == ["x0", "x0", "x1"]
    conic = P("x0*x2 - x1^2")
    facs, rest = linear_factors(conic)
    assert facs == [] and rest == conic


def test_contraction_chain_of_lf_map():
    a, b = Fraction(2, 3), Fraction(5, 7)
    f = lf_map(LinearFractionalParams(a, b))
    x0, x1, x2 = (MultiPoly.var(i, ambient_vars(2)) for i in range(3))
    assert contracts_to(f, x0 * b + x1) == ProjectivePoint.vertex(2, 2)
    assert contracts_to(f, x0) == ProjectivePoint.vertex(1, 2)
    assert contracts_to(f, x0 * a + x2) == ProjectivePoint([1, -a, 0])


def test_identity_contracts_nothing():
    f = HomogeneousMap.identity(2)
    assert contracts_to(f, MultiPoly.var(1, ambient_vars(2))) is NOT_CONTRACTED


def test_contracts_to_inconclusive():
    # every point of x0 = 0 is indeterminate for this map
    f = HomogeneousMap.from_strings(["x0*x1", "x0*x2", "x0^2"])
    with pytest.raises(InconclusiveError):
        contracts_to(f, MultiPoly.var(0, ambient_vars(2)))


@pytest.mark.parametrize("samples", [4, 8, 16])
def test_contracts_to_stable_under_sampling(samples):
    f = lf_map(LinearFractionalParams(Fraction(2, 3), Fraction(5, 7)))
    x0, x1 = MultiPoly.var(0, ambient_vars(2)), MultiPoly.var(1, ambient_vars(2))
    assert contracts_to(f, x0 * Fraction(5, 7) + x1, samples=samples) == ProjectivePoint.vertex(2, 2)


def test_reduce_map_reports_gcd():
    sq = compose(cremona(2), cremona(2))
    red, gcds = reduce_map(sq)
    assert red.is_identity()
    assert gcds[0].normalize() == P("x0*x1*x2")


def _random_quadratic_map(rng):
    comps = []
    for _ in range(3):
        terms = [f"{rng.randint(-3, 3)}*x{i}*x{j}" for i in range(3) for j in range(i, 3) if rng.random() < 0.5]
        comps.append(" + ".join(terms) or "x0^2")
    return HomogeneousMap.from_strings(comps)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_composition_submultiplicative(seed):
    rng = random.Random(seed)
    f, g = _random_quadratic_map(rng), _random_quadratic_map(rng)
    try:
        h = compose_reduce(f, g)
    except Exception:
        return  # degenerate composition
    assert h.degree <= f.degree * g.degree


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_evaluate_composition_compatibility(seed):
    rng = random.Random(seed)
    f = lf_map(LinearFractionalParams(Fraction(rng.randint(1, 9), 7), Fraction(rng.randint(1, 9), 5)))
    g = lf_map(LinearFractionalParams(Fraction(rng.randint(1, 9), 3), Fraction(-rng.randint(1, 9), 2)))
    p = ProjectivePoint([rng.randint(1, 50) for _ in range(3)])
    gp = evaluate(g, p)
    if gp is INDETERMINATE:
        return
    fgp = evaluate(f, gp)
    if fgp is INDETERMINATE:
        return
    direct = evaluate(compose_reduce(f, g), p)
    assert direct == fgp


def test_map_json_round_trip():
    f = lf_map(LinearFractionalParams(Fraction(2, 3), Fraction(5, 7)))
    assert HomogeneousMap.from_json(f.to_json()) == f
