"""Monomial maps x -> x^A and their intermediate dynamical degrees.

Two independent routes give delta_l: the spectral radius of the l-th exterior
power of A, and the product of the l largest eigenvalue moduli of A.  Both
go through exact characteristic polynomials and a squarefree split before
root finding; a dense floating eigensolver loses half its digits on the
Jordan blocks that unimodular A often has.  ``monomial_degrees`` returns the
first and insists that the second agrees.
"""
from __future__ import annotations

from itertools import combinations

from birdyn.algebra.matrix import IntMatrix, char_poly, spectral_radius
from birdyn.algebra.multipoly import MultiPoly
from birdyn.algebra.roots import roots
from birdyn.errors import DimensionError, InconclusiveError, NonDominantError, ValidationError
from birdyn.projective import HomogeneousMap, ambient_vars


def exponent_matrix(A):
    """Coerce A (rows of ints, or IntMatrix) to a square IntMatrix."""
    m = A if isinstance(A, IntMatrix) else IntMatrix(A)
    if m.rows != m.cols:
        raise DimensionError(f"exponent matrix is {m.rows}x{m.cols}, not square")
    if any(not isinstance(x, int) for r in m.tolist() for x in r):
        raise ValidationError("exponent matrix entries must be integers")
    return m


def exterior_power(A, l):
    """Matrix of l x l minors, rows and columns indexed by sorted subsets in lexicographic order."""
    m = exponent_matrix(A)
    k = m.rows
    if not 1 <= l <= k:
        raise DimensionError(f"exterior power needs 1 <= l <= {k}, got {l}")
    subsets = list(combinations(range(k), l))
    data = m.tolist()
    rows = []
    for I in subsets:
        rows.append([IntMatrix([[data[i][j] for j in J] for i in I]).det() for J in subsets])
    return IntMatrix(rows)


def _eigen_products(m):
    ev = sorted((abs(z) for z in roots(char_poly(m))), reverse=True)
    out = [1.0]
    for v in ev:
        out.append(out[-1] * v)
    return out


def monomial_degrees(A, tol=1e-9):
    """[delta_0, ..., delta_k] for the monomial map of A.

    Raises InconclusiveError if the two routes disagree by more than ``tol``
    (relative to max(1, delta_l)).
    """
    m = exponent_matrix(A)
    k = m.rows
    out = [1.0]
    for l in range(1, k + 1):
        if l == k:
            out.append(float(abs(m.det())))
        else:
            out.append(float(spectral_radius(exterior_power(m, l))))
    check = _eigen_products(m)
    for l, (a, b) in enumerate(zip(out, check)):
        if abs(a - b) > tol * max(1.0, a):
            raise InconclusiveError(f"delta_{l}: exterior power gives {a!r}, eigenvalue product gives {b!r}")
    return out


def monomial_map(A):
    """x^A on the torus, homogenized to P^k with x_i = X_i / X_0.

    Every component is a Laurent monomial of total degree 0; all of them are
    multiplied by the smallest monomial that clears negative exponents, so
    the result has no common monomial factor.
    """
    m = exponent_matrix(A)
    if m.det() == 0:
        raise NonDominantError("det A = 0: the monomial map is not dominant")
    k = m.rows
    exps = [[0] * (k + 1)]
    for row in m.tolist():
        exps.append([-sum(row)] + list(row))
    shift = [-min(e[v] for e in exps) for v in range(k + 1)]
    vars = ambient_vars(k)
    comps = [MultiPoly.monomial(tuple(e[v] + shift[v] for v in range(k + 1)), vars) for e in exps]
    return HomogeneousMap(comps, source=(k,), vars=vars)
