"""Cubic maps f = L o J of P^3 with the parameter constraint n a^2 + (n+1) a c + n c^2 = 0.

L has rows (0 0 0 1), (1 0 0 a), (0 1 0 0), (0 0 1 c), so

    f = [x0 x1 x2 : x1 x2 x3 + a x0 x1 x2 : x0 x2 x3 : x0 x1 x3 + c x0 x1 x2].

The hyperplanes x0, x1, x2 and x3 = 0 are contracted to e1, e2, e3 and
p = [1 : a : 0 : c].  On the space with e1 and e3 blown up, the orbit of p
runs through the fibres over those vertices and, under the constraint, lands
on e0 after 4n steps.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from birdyn.algebra.fields import FieldElement, NumberField, coerce_coeff, is_exact
from birdyn.algebra.matrix import field_inverse
from birdyn.algebra.multipoly import MultiPoly
from birdyn.errors import InvalidParameterError
from birdyn.families.orbits import HitIndeterminacy, LandedOn, OrbitTrace, Regular
from birdyn.projective import HomogeneousMap, ProjectivePoint, ambient_vars, compose_reduce, cremona

BLOWN_UP = (1, 3)


def constraint_value(a, c, n):
    return n * a * a + (n + 1) * a * c + n * c * c


@dataclass(frozen=True)
class BCKParams:
    """Parameters (a, c, n); ``check=False`` skips the constraint (perturbation experiments)."""

    a: object
    c: object
    n: int
    tol: float = 1e-9
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "a", coerce_coeff(self.a))
        object.__setattr__(self, "c", coerce_coeff(self.c))
        if self.n < 2:
            raise InvalidParameterError("n must be >= 2")
        if self.check:
            v = constraint_value(self.a, self.c, self.n)
            bad = (v != 0) if self.exact else abs(complex(v)) > self.tol * max(1.0, abs(complex(self.c)) ** 2)
            if bad:
                raise InvalidParameterError(f"constraint n a^2 + (n+1) a c + n c^2 = 0 fails: value {complex(v)}")

    @property
    def exact(self):
        return is_exact(self.a) and is_exact(self.c)

    def to_json(self):
        return {"a": [complex(self.a).real, complex(self.a).imag], "c": [complex(self.c).real, complex(self.c).imag],
                "n": self.n, "exact": self.exact}


def solve_constraint(n, c=1, branch=1, shift=0):
    """Root a of n a^2 + (n+1) a c + n c^2 = shift for rational c, as an exact field element.

    ``branch`` picks the root with positive (+1) or negative (-1) imaginary
    part.  A nonzero rational ``shift`` perturbs the constraint.
    """
    c = Fraction(c)
    shift = Fraction(shift)
    if c == 0:
        raise InvalidParameterError("c must be nonzero")
    m = [c * c - shift / n, Fraction(n + 1, n) * c, Fraction(1)]
    B, C = complex(m[1]), complex(m[0])
    disc = B * B - 4 * C
    root = (-B + branch * (disc ** 0.5 if disc.real >= 0 and disc.imag == 0 else 1j * abs(disc) ** 0.5)) / 2
    if disc.real >= 0 and disc.imag == 0:
        raise InvalidParameterError("the constraint has real roots here; use float parameters")
    field = NumberField(m, name="a", embedding=root)
    return field.gen


def bck_params(n, c=1, branch=1, shift=0, exact=True):
    a = solve_constraint(n, c, branch, shift)
    if not exact:
        a, c = complex(a), complex(c)
    return BCKParams(a, coerce_coeff(c) if exact else c, n, check=(shift == 0))


def linear_part(params):
    a, c = params.a, params.c
    return [[0, 0, 0, 1], [1, 0, 0, a], [0, 1, 0, 0], [0, 0, 1, c]]


def bck_map(params):
    vars = ambient_vars(3)
    x = [MultiPoly.var(i, vars) for i in range(4)]
    t = x[0] * x[1] * x[2]
    comps = [t, x[1] * x[2] * x[3] + t * params.a, x[0] * x[2] * x[3], x[0] * x[1] * x[3] + t * params.c]
    return HomogeneousMap(comps, source=(3,), vars=vars)


def bck_inverse(params):
    """J o L^-1."""
    Linv = HomogeneousMap.linear(field_inverse(linear_part(params)))
    return compose_reduce(cremona(3), Linv)


def special_point(params):
    return ProjectivePoint([1, params.a, 0, params.c], (3,))


# germ propagation through the blow-ups of e1 and e3


@dataclass(frozen=True)
class FiberPoint:
    """A point of the exceptional divisor over vertex ``vertex``: a tangent direction."""

    vertex: int
    direction: tuple

    def to_json(self):
        return {"vertex": self.vertex, "direction": [_enc(c) for c in self.direction]}


def _enc(c):
    if isinstance(c, (Fraction, FieldElement)):
        return str(c)
    c = complex(c)
    return [c.real, c.imag]


def _series_mul(s, t):
    out = [0] * (len(s) + len(t) - 1)
    for i, x in enumerate(s):
        if x == 0:
            continue
        for j, y in enumerate(t):
            out[i + j] = out[i + j] + x * y
    return out


def _germ_image(f, base, direction):
    """Coefficients (by order in eps) of f(base + eps * direction), per component."""
    n = len(base)
    maxdeg = f.degree
    powers = []
    for i in range(n):
        pw = [[1]]
        lin = [base[i], direction[i]]
        for _ in range(maxdeg):
            pw.append(_series_mul(pw[-1], lin))
        powers.append(pw)
    out = []
    for comp in f.components:
        acc = [0] * (maxdeg + 1)
        for e, coef in comp.terms.items():
            s = [coef]
            for i, k in enumerate(e):
                if k:
                    s = _series_mul(s, powers[i][k])
            for j, v in enumerate(s):
                acc[j] = acc[j] + v
        out.append(acc)
    return out


def _is_zero(v, exact, scale, tol):
    return v == 0 if exact else abs(complex(v)) <= tol * scale


def _normalize(vec, exact):
    if exact:
        lead = next(v for v in vec if v != 0)
        inv = Fraction(1) / lead
        return tuple(v * inv for v in vec)
    vec = [complex(v) for v in vec]
    big = max(vec, key=abs)
    return tuple(v / big for v in vec)


def _state_point(state):
    kind, data = state
    if kind == "pt":
        return ProjectivePoint(list(data), (3,))
    return FiberPoint(data[0], data[1])


def propagate(f, start, steps, target=0, blown_up=BLOWN_UP, tol=1e-9, seed=7):
    """Follow ``start`` through ``steps`` iterations on P^3 blown up at the given vertices.

    Returns an OrbitTrace that stops at the first landing on vertex ``target``
    or at the first point where the lifted map is undefined.
    """
    rng = random.Random(seed)
    exact = all(is_exact(c) for c in start) and f.is_exact()
    state = ("pt", _normalize(list(start), exact))
    points = [_state_point(state)]
    notes = []
    tvec = tuple(int(i == target) for i in range(4))
    for step in range(1, steps + 1):
        kind, data = state
        if kind == "pt":
            base = list(data)
            v = [Fraction(rng.randint(1, 97)) if exact else complex(rng.uniform(0.5, 1.5)) for _ in base]
        else:
            l, u = data
            base = [Fraction(int(i == l)) for i in range(4)]
            v = list(u)
        series = _germ_image(f, base, v)
        orders = len(series[0])
        scale = 1.0 if exact else max(abs(complex(x)) for s in series for x in s) or 1.0
        vecs = [[series[i][k] for i in range(4)] for k in range(orders)]
        nonzero = [k for k in range(orders) if not all(_is_zero(x, exact, scale, tol) for x in vecs[k])]
        if not nonzero or (kind == "pt" and nonzero[0] > 0):
            notes.append(f"step {step}: lifted map undefined at the current point")
            return OrbitTrace(points, HitIndeterminacy(step), None, notes)
        m0 = nonzero[0]
        y0 = [x if not _is_zero(x, exact, scale, tol) else 0 for x in vecs[m0]]
        support = [i for i in range(4) if y0[i] != 0]
        if len(support) == 1 and support[0] in blown_up:
            l = support[0]
            w = None
            for k in range(m0 + 1, orders):
                cand = [0 if i == l or _is_zero(vecs[k][i], exact, scale, tol) else vecs[k][i] for i in range(4)]
                if any(x != 0 for x in cand):
                    w = cand
                    break
            if w is None:
                notes.append(f"step {step}: no tangent direction at e{l}")
                return OrbitTrace(points, HitIndeterminacy(step), None, notes)
            state = ("E", (l, _normalize(w, exact)))
            notes.append(f"step {step}: enters the fibre over e{l}")
        else:
            state = ("pt", _normalize(y0, exact))
        pt = _state_point(state)
        points.append(pt)
        if state[0] == "pt":
            if exact:
                hit = state[1] == tvec
                res = 0.0 if hit else pt.distance(ProjectivePoint(list(tvec), (3,)))
            else:
                res = pt.distance(ProjectivePoint(list(tvec), (3,)))
                hit = res < tol
            if hit:
                return OrbitTrace(points, LandedOn(f"e{target}", step), res, notes)
    last = points[-1]
    res = last.distance(ProjectivePoint(list(tvec), (3,))) if isinstance(last, ProjectivePoint) else 1.0
    return OrbitTrace(points, Regular(), res, notes)


def bck_orbit_landing(params, tol=1e-9, extra_steps=0):
    """Orbit of p on the blow-up at e1, e3; expected to land on e0 at step 4n."""
    f = bck_map(params)
    start = [1, params.a, 0, params.c]
    return propagate(f, start, 4 * params.n + extra_steps, target=0, tol=tol)
