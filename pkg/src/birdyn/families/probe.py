"""Estimates of the first two dynamical degrees of a birational map of P^3."""
from __future__ import annotations

from dataclasses import dataclass

from birdyn.algebra.matrix import field_inverse
from birdyn.degrees import degree_sequence, delta_estimate
from birdyn.errors import MissingInverseError
from birdyn.projective import HomogeneousMap, compose_reduce, cremona


@dataclass
class HyperbolicityProbe:
    delta1_est: float
    delta2_est: float
    degrees: list
    inverse_degrees: list

    @property
    def difference(self):
        return abs(self.delta1_est - self.delta2_est)

    def to_json(self):
        return {"delta1_est": self.delta1_est, "delta2_est": self.delta2_est,
                "degrees": self.degrees, "inverse_degrees": self.inverse_degrees}


def _linear_matrix(g):
    if g.degree != 1:
        return None
    n = len(g.vars)
    rows = []
    for comp in g.components:
        row = [0] * n
        for e, c in comp.terms.items():
            row[e.index(1)] = c
        rows.append(row)
    return rows


def derive_inverse(f):
    """Inverse of a map of the shape L o J or J o L, or of a linear map.

    f o J = L o J o J = L is linear when f = L o J, and then f^-1 = J o L^-1;
    the J o L case is symmetric.  Raises MissingInverseError otherwise.
    """
    if not f.is_self_map() or f.is_product():
        raise MissingInverseError("inverse derivation needs a self-map of a single P^k")
    k = f.k[0] if isinstance(f.k, tuple) else f.k
    lin = _linear_matrix(f)
    if lin is not None:
        return HomogeneousMap.linear(field_inverse(lin))
    J = cremona(k)
    left = compose_reduce(f, J)
    L = _linear_matrix(left)
    if L is not None:
        return compose_reduce(J, HomogeneousMap.linear(field_inverse(L)))
    right = compose_reduce(J, f)
    L = _linear_matrix(right)
    if L is not None:
        return compose_reduce(HomogeneousMap.linear(field_inverse(L)), J)
    raise MissingInverseError("no inverse supplied and f is not of the form L o J or J o L")


def cohom_hyperbolicity_probe(f, n, inverse=None):
    """delta_1 from deg f^j and delta_2 as delta_1 of the inverse, j <= n."""
    if inverse is None:
        inverse = derive_inverse(f)
    d1 = degree_sequence(f, n)
    d2 = degree_sequence(inverse, n)
    return HyperbolicityProbe(delta_estimate(d1), delta_estimate(d2), d1.scalars(), d2.scalars())
