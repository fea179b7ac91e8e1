"""The quadratic family f_{a,b}(x, y) = (y, (y + a)/(x + b)) on P^2 and its V_N parameters.

Homogeneous form: [x0 (b x0 + x1) : x2 (b x0 + x1) : x0 (a x0 + x2)].  The
three exceptional lines are x0 = 0, b x0 + x1 = 0 and a x0 + x2 = 0; the last
one is contracted to q = [1 : -a : 0], and p = [1 : -b : -a] is the
indeterminate point outside the coordinate vertices.  (a, b) is in V_N when
the orbit of q reaches p after N steps.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from birdyn.algebra.fields import FieldElement, coerce_coeff, is_exact
from birdyn.algebra.multipoly import MultiPoly
from birdyn.algebra.recognize import mp_value, newton_mp, real_field, recognize_in_field
from birdyn.algebra.unipoly import strip_cyclotomic
from birdyn.errors import InvalidParameterError, NoConvergence
from birdyn.families.orbits import HitIndeterminacy, LandedOn, OrbitTrace, Regular
from birdyn.lattice import chi_polynomial
from birdyn.projective import INDETERMINATE, HomogeneousMap, ProjectivePoint, ambient_vars, evaluate

FD_STEP = 1e-7
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class LinearFractionalParams:
    a: object
    b: object

    def __post_init__(self):
        for name in ("a", "b"):
            v = coerce_coeff(getattr(self, name))
            if not is_exact(v) and not cmath.isfinite(complex(v)):
                raise InvalidParameterError(f"parameter {name} must be finite")
            if isinstance(v, complex) and v.imag == 0:
                v = v.real
            object.__setattr__(self, name, v)

    @property
    def exact(self):
        return is_exact(self.a) and is_exact(self.b)

    def numeric(self):
        return complex(self.a), complex(self.b)

    def to_json(self):
        def enc(v):
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, FieldElement):
                return {"field": [str(c) for c in v.field.minpoly], "coeffs": [str(c) for c in v.coeffs],
                        "value": complex(v).real}
            v = complex(v)
            return v.real if v.imag == 0 else [v.real, v.imag]

        return {"a": enc(self.a), "b": enc(self.b)}


def lf_map(params):
    a, b = params.a, params.b
    vars = ambient_vars(2)
    x0, x1, x2 = (MultiPoly.var(i, vars) for i in range(3))
    beta = x0 * b + x1
    return HomogeneousMap([x0 * beta, x2 * beta, x0 * (x0 * a + x2)], source=(2,), vars=vars)


def lf_affine(params, x, y):
    """The affine action (x, y) -> (y, (y + a) / (x + b))."""
    return y, (y + params.a) / (x + params.b)


def exceptional_lines(params):
    """Linear forms of the exceptional lines, keyed by label."""
    vars = ambient_vars(2)
    x0, x1, x2 = (MultiPoly.var(i, vars) for i in range(3))
    return {"sigma0": x0, "sigma_beta": x0 * params.b + x1, "sigma_gamma": x0 * params.a + x2}


def start_point(params):
    return ProjectivePoint([1, -params.a, 0], (2,))


def target_point(params):
    return ProjectivePoint([1, -params.b, -params.a], (2,))


def indeterminacy_points(params):
    return [ProjectivePoint.vertex(1, 2), ProjectivePoint.vertex(2, 2), target_point(params)]


def _on_lines(params, pt, tol):
    out = []
    for label, form in exceptional_lines(params).items():
        v = form.evaluate(pt.coords)
        if (v == 0) if pt.exact else abs(complex(v)) < tol:
            out.append(label)
    return out


def vn_check(params, N, tol=DEFAULT_TOL):
    """Does f^N(q) equal p?  Returns (verdict, OrbitTrace)."""
    if N < 1:
        raise InvalidParameterError("N must be >= 1")
    f = lf_map(params)
    x = start_point(params)
    target = target_point(params)
    points = [x]
    notes = []
    for step in range(1, N + 1):
        # f^(step-1) q must not be indeterminate
        y = evaluate(f, x, tol=1e-14)
        if y is INDETERMINATE:
            trace = OrbitTrace(points, HitIndeterminacy(step - 1), None, notes)
            return False, trace
        for label in _on_lines(params, y, tol):
            notes.append(f"point {step} lies on {label}")
        points.append(y)
        x = y
    exact = x.exact and target.exact
    residual = 0.0 if (exact and x == target) else x.distance(target)
    hit = (x == target) if exact else residual < tol
    terminal = LandedOn("p", N) if hit else Regular()
    return hit, OrbitTrace(points, terminal, residual, notes)


def _orbit_residual(a, b, N):
    """Affine coordinates of f^N(q) - p, in plain complex arithmetic."""
    x0, x1, x2 = 1.0 + 0j, -a, 0j
    for _ in range(N):
        beta = b * x0 + x1
        y0, y1, y2 = x0 * beta, x2 * beta, x0 * (a * x0 + x2)
        s = max(abs(y0), abs(y1), abs(y2))
        if s == 0 or not math.isfinite(s):
            return None
        x0, x1, x2 = y0 / s, y1 / s, y2 / s
        if max(abs(x0), abs(x1), abs(x2)) < 1e-300:
            return None
    if abs(x0) < 1e-14:
        return None
    return np.array([x1 / x0 + b, x2 / x0 + a])


def vn_search(N, seed, tol=1e-11, max_iter=60):
    """Damped Newton for (a, b) in V_N from ``seed``; raises NoConvergence."""
    if tol <= 0:
        raise InvalidParameterError("tol must be positive")
    z = np.array([complex(seed[0]), complex(seed[1])])
    real_seed = all(abs(complex(s).imag) == 0 for s in seed)
    history = []

    def G(v):
        return _orbit_residual(v[0], v[1], N)

    g = G(z)
    if g is None:
        raise NoConvergence("orbit is indeterminate at the seed", {"seed": [str(s) for s in seed]})
    for it in range(max_iter):
        ng = float(np.linalg.norm(g))
        history.append(ng)
        if ng <= tol:
            a, b = complex(z[0]), complex(z[1])
            if real_seed:
                a, b = a.real, b.real
            return LinearFractionalParams(a, b)
        J = np.empty((2, 2), dtype=complex)
        for j in range(2):
            e = np.zeros(2, dtype=complex)
            e[j] = FD_STEP
            gp, gm = G(z + e), G(z - e)
            if gp is None or gm is None:
                raise NoConvergence("indeterminacy along the orbit near the iterate",
                                    {"iteration": it, "a": str(z[0]), "b": str(z[1])})
            J[:, j] = (gp - gm) / (2 * FD_STEP)
        if not np.all(np.isfinite(J)) or np.linalg.cond(J) > 1e13:
            raise NoConvergence("singular Jacobian", {"iteration": it, "residuals": history})
        d = np.linalg.solve(J, -g)
        lam = 1.0
        accepted = False
        while lam >= 1.0 / 1024:
            zn = z + lam * d
            gn = G(zn)
            if gn is not None and np.linalg.norm(gn) < (1 - 0.25 * lam) * ng:
                z, g = zn, gn
                accepted = True
                break
            lam /= 2
        if not accepted:
            raise NoConvergence("line search failed to reduce the residual",
                                {"iteration": it, "residual": ng, "a": str(z[0]), "b": str(z[1])})
        if real_seed:
            z = z.real.astype(complex)
            g = G(z)
            if g is None:
                raise NoConvergence("indeterminacy along the orbit", {"iteration": it})
        if np.max(np.abs(z)) > 1e8:
            raise NoConvergence("diverged", {"iteration": it, "residuals": history})
    raise NoConvergence("max_iter reached", {"residuals": history, "a": str(z[0]), "b": str(z[1])})


# exact V_N parameters


def _orbit_residual_mp(N):
    def G(v):
        a, b = v
        x0, x1, x2 = mpmath.mpf(1), -a, mpmath.mpf(0)
        for _ in range(N):
            beta = b * x0 + x1
            x0, x1, x2 = x0 * beta, x2 * beta, x0 * (a * x0 + x2)
            s = max(abs(x0), abs(x1), abs(x2))
            x0, x1, x2 = x0 / s, x1 / s, x2 / s
        return [x1 / x0 + b, x2 / x0 + a]

    return G


def salem_field(N, dps=60):
    """Q(delta) for the largest root delta of the non-cyclotomic factor of chi_N."""
    rest = strip_cyclotomic(chi_polynomial(N)).monic()
    from birdyn.algebra.roots import largest_real_root

    d = largest_real_root(rest)
    return real_field(list(rest.coeffs), d, name="d", dps=dps)


def refine_vn(params, N, dps=120):
    """High-precision (a, b) of the V_N point near ``params`` (real parameters)."""
    a, b = params.numeric()
    if abs(a.imag) > 1e-12 or abs(b.imag) > 1e-12:
        raise InvalidParameterError("refinement is implemented for real parameters")
    with mpmath.workdps(dps):
        return newton_mp(_orbit_residual_mp(N), [mpmath.mpf(a.real), mpmath.mpf(b.real)], dps=dps)


def exact_vn_parameters(params, N, dps=150):
    """Recognize a real V_N point in Q(delta) and confirm it by an exact orbit check.

    Returns exact LinearFractionalParams; raises NoConvergence if recognition
    or the exact check fails.
    """
    field = salem_field(N, dps=dps)
    hp = refine_vn(params, N, dps=dps)
    with mpmath.workdps(dps):
        vals = [recognize_in_field(x, field, dps=dps) for x in hp]
    if any(v is None for v in vals):
        raise NoConvergence("no relation over Q(delta) found", {"N": N})
    exact = LinearFractionalParams(*vals)
    ok, trace = vn_check(exact, N)
    if not ok:
        raise NoConvergence("recognized parameters fail the exact orbit check", {"terminal": trace.terminal.to_json()})
    # agreement with the high-precision values guards against a spurious relation
    for v, x in zip(vals, hp):
        if abs(mp_value(v, 50) - x) > mpmath.mpf(10) ** -40:
            raise NoConvergence("recognized value disagrees with the refined root", {})
    return exact
