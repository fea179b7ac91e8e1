from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from birdyn.algebra.fields import NumberField, cyclotomic, zeta
from birdyn.algebra.matrix import IntMatrix, char_poly, field_inverse, poly_at_matrix, spectral_radius
from birdyn.algebra.multipoly import MultiPoly, divides, parse_poly, poly_gcd
from birdyn.algebra.roots import largest_real_root, roots
from birdyn.algebra.unipoly import UniPoly, strip_cyclotomic
from birdyn.errors import DimensionError, FieldError, IncompatibleFieldError, UndefinedRootsError
from birdyn.lattice import chi_polynomial, cremona_pullback, orbit_data_pullback, quadratic_family_data

X3 = ("x0", "x1", "x2")


def P(text, vars=X3):
    return parse_poly(text, vars)


# rationals and cyclotomic fields


def test_fraction_is_normalized():
    q = Fraction(6, -4)
    assert (q.numerator, q.denominator) == (-3, 2)


def test_zeta6_relations():
    z = zeta(6)
    assert z ** 6 == 1
    assert z ** 3 == -1
    assert z ** 2 != 1 and z != 1


def test_eta_cube_is_minus_one():
    eta = zeta(6)
    assert eta * eta * eta == -1
    assert (-zeta(3)) ** 3 == -1


def test_zeta3_embedding_matches_numeric_root():
    assert abs(complex(zeta(3)) - complex(np.exp(2j * np.pi / 3))) < 1e-15


def test_cyclotomic_support_is_limited():
    for m in (1, 3, 4, 6):
        assert cyclotomic(m).degree == {1: 1, 3: 2, 4: 2, 6: 2}[m]
    with pytest.raises(FieldError):
        cyclotomic(5)


def test_field_inverse_and_division():
    z = zeta(6)
    w = 3 + 2 * z
    assert w * w.inverse() == 1
    assert (w / w) == 1


def test_mixed_fields_rejected():
    with pytest.raises(IncompatibleFieldError):
        _ = zeta(3) + zeta(4)


def test_cyclotomic_literals_in_parser():
    p = parse_poly("w*x0 + z6*x1", ("x0", "x1"))
    coeffs = sorted(p.terms.values(), key=str)
    assert zeta(3) in coeffs and zeta(6) in coeffs


# multivariate gcd


def test_gcd_common_monomial():
    assert poly_gcd(P("x0*x1"), P("x0*x2")) == P("x0")


def test_gcd_of_cremona_square_components():
    # components of J o J on P^2 before reduction
    a = P("x0*x1*x2*x1*x2")
    b = P("x0*x1*x2*x0*x2")
    g = poly_gcd(a, b)
    assert divides(g, a) and divides(g, b)
    assert g == P("x0*x1*x2^2")


def test_gcd_with_zero_is_normalized_input():
    p = P("3*x0^2 + 6*x1*x2")
    g = poly_gcd(p, MultiPoly.zero(X3))
    assert g == p.normalize()
    assert g.leading_coefficient() == 1


def test_gcd_matches_sympy_oracle():
    a = P("(x0 + 2*x1 - x2)^2 * (x0*x1 - 3*x2^2)")
    b = P("(x0 + 2*x1 - x2) * (x1^2 + x0*x2) * (x0*x1 - 3*x2^2)")
    s0, s1, s2 = sympy.symbols("x0 x1 x2")
    ref = sympy.gcd(sympy.expand((s0 + 2 * s1 - s2) ** 2 * (s0 * s1 - 3 * s2 ** 2)),
                    sympy.expand((s0 + 2 * s1 - s2) * (s1 ** 2 + s0 * s2) * (s0 * s1 - 3 * s2 ** 2)))
    g = poly_gcd(a, b)
    assert g.total_degree() == sympy.Poly(ref, s0, s1, s2).total_degree() == 3
    assert divides(P("(x0 + 2*x1 - x2) * (x0*x1 - 3*x2^2)"), g)


def test_gcd_over_cyclotomic_field():
    a = P("(x0 - w*x1) * (x1 + x2)")
    b = P("(x0 - w*x1) * (x1 - x2)")
    assert poly_gcd(a, b) == P("x0 - w*x1").normalize()


monomials = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), min_size=1, max_size=4)


def _homog(terms, deg):
    p = MultiPoly.zero(X3)
    for i, j, c in terms:
        if i + j <= deg and c:
            p = p + MultiPoly.monomial((deg - i - j, i, j), X3, c)
    return p


@settings(max_examples=40, deadline=None)
@given(monomials, monomials, monomials)
def test_gcd_divisible_by_common_factor(ta, tb, tc):
    a, b, c = _homog(ta, 2), _homog(tb, 2), _homog(tc, 1)
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    g = poly_gcd(a * c, b * c)
    assert divides(c, g)
    assert g.is_homogeneous()


# characteristic polynomials


def test_char_poly_identity():
    assert char_poly(IntMatrix.identity(2)) == UniPoly([1, -2, 1])


def test_char_poly_cremona_pullback_roots_are_signs():
    chi = char_poly(cremona_pullback(2).matrix)
    assert all(abs(abs(z) - 1) < 1e-9 and abs(z.imag) < 1e-9 for z in roots(chi))
    # (J*)^2 = I forces chi | (t^2 - 1)^4
    r = UniPoly([-1, 0, 1]) ** 4
    assert r % chi == UniPoly([])


def test_char_poly_n7_is_chi7():
    assert char_poly(orbit_data_pullback(quadratic_family_data(7)).matrix) == chi_polynomial(7)


def test_char_poly_non_square():
    with pytest.raises(DimensionError):
        char_poly(IntMatrix([[1, 2, 3], [4, 5, 6]]))


def test_char_poly_against_sympy_oracle():
    rng = np.random.default_rng(7)
    t = sympy.Symbol("t")
    for n in (3, 5, 7):
        m = rng.integers(-4, 5, size=(n, n)).tolist()
        ref = sympy.Matrix(m).charpoly(t).all_coeffs()[::-1]
        assert [int(c) for c in char_poly(IntMatrix(m)).coeffs] == [int(c) for c in ref]


small_square = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=40, deadline=None)
@given(small_square)
def test_cayley_hamilton(rows):
    m = IntMatrix(rows)
    z = poly_at_matrix(char_poly(m), m)
    assert all(x == 0 for r in z.tolist() for x in r)


def test_field_inverse_over_cyclotomic():
    z = zeta(3)
    m = [[1, z, 0], [0, 1, 2], [z, 0, 1]]
    inv = field_inverse(m)
    prod = [[sum(m[i][k] * inv[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert all(prod[i][j] == int(i == j) for i in range(3) for j in range(3))
    with pytest.raises(ZeroDivisionError):
        field_inverse([[1, 2], [2, 4]])


# roots and spectral radius


def test_roots_t2_minus_1():
    rs = roots(UniPoly([-1, 0, 1]))
    assert sorted(z.real for z in rs) == pytest.approx([-1.0, 1.0], abs=1e-12)


def test_plastic_number():
    assert largest_real_root(UniPoly([-1, -1, 0, 1])) == pytest.approx(1.3247, abs=5e-4)


def test_chi7_largest_root():
    assert largest_real_root(chi_polynomial(7)) == pytest.approx(1.17628, abs=5e-5)


def test_roots_of_zero_polynomial():
    with pytest.raises(UndefinedRootsError):
        roots(UniPoly([]))


def test_roots_sorted_by_modulus_and_multiplicity():
    p = UniPoly.from_roots_int([2, 2, -3, 1])
    rs = roots(p)
    assert [round(z.real) for z in rs] == [-3, 2, 2, 1]


def test_roots_match_numpy_oracle():
    p = chi_polynomial(9)
    ours = sorted(roots(p), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    ref = sorted(np.roots([float(c) for c in reversed(p.coeffs)]), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    assert np.allclose(ours, ref, atol=1e-8)


int_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=9).filter(lambda c: c[-1] != 0)


@settings(max_examples=60, deadline=None)
@given(int_polys)
def test_vieta_relations(coeffs):
    p = UniPoly(coeffs)
    rs = roots(p)
    n = p.degree
    lead = float(coeffs[-1])
    scale = max(1.0, max(abs(z) for z in rs)) ** n
    assert abs(sum(rs) + coeffs[-2] / lead) <= 1e-6 * scale
    assert abs(np.prod(rs) - (-1) ** n * coeffs[0] / lead) <= 1e-6 * scale


def test_spectral_radius_examples():
    assert spectral_radius(IntMatrix.identity(3)) == pytest.approx(1.0)
    assert spectral_radius(IntMatrix([[1, 1], [1, 0]])) == pytest.approx((1 + 5 ** 0.5) / 2, abs=1e-12)
    assert spectral_radius(orbit_data_pullback(quadratic_family_data(7)).matrix) == pytest.approx(1.17628, abs=5e-5)


@settings(max_examples=40, deadline=None)
@given(small_square)
def test_spectral_radius_transpose(rows):
    m = IntMatrix(rows)
    assert spectral_radius(m.T) == pytest.approx(spectral_radius(m), rel=1e-7, abs=1e-7)


def test_spectral_radius_matches_power_iteration():
    m = IntMatrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    v = np.ones(3)
    a = np.array(m.tolist(), dtype=float)
    for _ in range(500):
        v = a @ v
        v /= np.linalg.norm(v)
    assert spectral_radius(m) == pytest.approx(float(v @ a @ v), rel=1e-10)


def test_strip_cyclotomic_leaves_lehmer_factor():
    rest = strip_cyclotomic(chi_polynomial(7))
    assert rest.degree == 10
    assert largest_real_root(rest) == pytest.approx(1.17628, abs=5e-5)


def test_number_field_reduction():
    K = NumberField([-2, 0, 1], name="r", embedding=2 ** 0.5)
    r = K.gen
    assert r * r == 2
    assert complex(r + 1) == pytest.approx(2 ** 0.5 + 1)
