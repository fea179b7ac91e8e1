"""Certification of L o J maps whose exceptional images land on vertices, and BDK-shaped candidates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from birdyn.algebra.fields import is_exact
from birdyn.algebra.recognize import newton_mp, real_field, recognize_in_field
from birdyn.algebra.roots import largest_real_root
from birdyn.algebra.unipoly import strip_cyclotomic
from birdyn.errors import CertificationFailure, InvalidParameterError, NoConvergence
from birdyn.lattice import OrbitData, delta1_from_lattice, orbit_data_pullback
from birdyn.projective import HomogeneousMap, compose_reduce, cremona

DEFAULT_GRID = (-2.0, -1.0, -0.5, 0.5, 1.5, 2.0, 3.0)
FD_STEP = 1e-7


def _step(L, x, exact):
    one = Fraction(1) if exact else 1.0
    inv = [one / v for v in x]
    return [sum(L[i][j] * inv[j] for j in range(len(x))) for i in range(len(x))]


def _canonical(x, exact):
    if exact:
        lead = next(v for v in x if v != 0)
        inv = Fraction(1) / lead
        return [v * inv for v in x]
    x = [complex(v) for v in x]
    big = max(abs(v) for v in x)
    return [v / big for v in x]


def pseudo_auto_certify(L, k=None, max_steps=50, tol=1e-9):
    """Orbit data (lengths, sigma) realized by f = L o J, or CertificationFailure.

    The orbit of each column L_j is followed until it is a coordinate vertex.
    Lengths count points, so a column that already is a vertex has length 1.
    An orbit point with a zero coordinate lies on an exceptional hyperplane
    of J, which fails the certification.
    """
    rows = [list(r) for r in (L.tolist() if hasattr(L, "tolist") else L)]
    n = len(rows)
    if k is None:
        k = n - 1
    if n != k + 1 or any(len(r) != n for r in rows):
        raise InvalidParameterError(f"L must be {k + 1}x{k + 1}")
    exact = all(is_exact(v) for r in rows for v in r)
    if not exact:
        rows = [[complex(v) for v in r] for r in rows]
        if abs(np.linalg.det(np.array(rows))) < tol:
            raise InvalidParameterError("L is singular")
    lengths, sigma = [], []
    for j in range(n):
        x = _canonical([rows[i][j] for i in range(n)], exact)
        for s in range(max_steps):
            if exact:
                support = [i for i, v in enumerate(x) if v != 0]
            else:
                support = [i for i, v in enumerate(x) if abs(v) >= tol]
            if len(support) == 1:
                lengths.append(s + 1)
                sigma.append(support[0])
                break
            if len(support) < n:
                raise CertificationFailure("on_exceptional", j, s)
            x = _canonical(_step(rows, x, exact), exact)
        else:
            raise CertificationFailure("no_landing", j, max_steps)
    if sorted(sigma) != list(range(n)):
        raise CertificationFailure("not_permutation", None, None)
    return OrbitData(k, tuple(lengths), tuple(sigma))


def bdk_matrix(beta):
    """Companion-shaped L: L[0][k] = 1 and row i+1 = beta_i e_i + (1 - beta_i) e_k."""
    k = len(beta)
    exact = all(is_exact(b) for b in beta)
    zero = 0 if exact else 0j
    L = [[zero] * (k + 1) for _ in range(k + 1)]
    L[0][k] = 1 if exact else 1 + 0j
    for i, b in enumerate(beta):
        L[i + 1][i] = b
        L[i + 1][k] = 1 - b
    return L


def bdk_orbit_data(k, n):
    """Lengths (1, ..., 1, n + 1) with the cyclic sigma (1, 2, ..., k, 0)."""
    return OrbitData(k, (1,) * k + (n + 1,), tuple(range(1, k + 1)) + (0,))


def _residual(beta, n):
    """X_1..X_k / X_0 after n steps from the last column; zero when it lands on e0."""
    L = np.array(bdk_matrix(list(beta)), dtype=complex)
    x = L[:, -1].copy()
    with np.errstate(all="ignore"):
        for _ in range(n):
            x = L @ (1 / x)
            x = x / x[np.argmax(np.abs(x))]
        if not np.all(np.isfinite(x)) or abs(x[0]) < 1e-14:
            return None
        return x[1:] / x[0]


def _newton(beta0, n, tol, max_iter):
    beta = np.array(beta0, dtype=complex)
    g = _residual(beta, n)
    if g is None:
        return None
    for _ in range(max_iter):
        ng = np.linalg.norm(g)
        if ng < tol:
            return beta, float(ng)
        J = np.empty((len(g), len(beta)), dtype=complex)
        for j in range(len(beta)):
            e = np.zeros(len(beta))
            e[j] = FD_STEP
            gp, gm = _residual(beta + e, n), _residual(beta - e, n)
            if gp is None or gm is None:
                return None
            J[:, j] = (gp - gm) / (2 * FD_STEP)
        try:
            d = np.linalg.solve(J, g)
        except np.linalg.LinAlgError:
            return None
        lam = 1.0
        while lam > 1e-4:
            nb = beta - lam * d
            gn = _residual(nb, n)
            if gn is not None and np.linalg.norm(gn) < ng:
                break
            lam /= 2
        else:
            return None
        beta, g = nb, gn
    return None


@dataclass
class BDKCandidate:
    L: list
    beta: tuple
    orbit_data: OrbitData
    delta: float
    residual: float

    def to_json(self):
        return {
            "beta": [[complex(b).real, complex(b).imag] for b in self.beta],
            "orbit_data": self.orbit_data.to_json(),
            "delta": self.delta,
            "residual": self.residual,
        }


def _solve_seed(args):
    seed, k, n, tol, max_iter = args
    res = _newton(seed, n, tol, max_iter)
    if res is None:
        return None
    beta, r = res
    return [complex(b) for b in beta], r


def bdk_candidate(k, n, tol=1e-10, grid=DEFAULT_GRID, max_iter=100, workers=None):
    """Numerically solved companion-shaped L realizing the cyclic orbit data (1, ..., 1, n + 1).

    Seeds run over ``grid``^k in a fixed order; the first solution that
    certifies with the expected orbit data is returned.  ``workers`` > 1
    spreads the seeds over a process pool.
    """
    if k < 2 or n < 1:
        raise InvalidParameterError("need k >= 2 and n >= 1")
    target = bdk_orbit_data(k, n)
    delta = delta1_from_lattice(orbit_data_pullback(target))
    seeds = [tuple(s) for s in itertools.product(grid, repeat=k)]
    jobs = [(s, k, n, tol, max_iter) for s in seeds]
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_seed, jobs, chunksize=4))
    else:
        results = map(_solve_seed, jobs)
    tried = 0
    for res in results:
        tried += 1
        if res is None:
            continue
        beta, r = res
        beta = [b.real if abs(b.imag) < 1e-12 else b for b in beta]
        L = bdk_matrix(beta)
        try:
            data = pseudo_auto_certify(L, k, max_steps=n + 5, tol=1e-7)
        except CertificationFailure:
            continue
        if data == target:
            return BDKCandidate(L, tuple(beta), data, delta, r)
    raise NoConvergence("no seed produced a certified candidate", {"k": k, "n": n, "seeds": tried})


def delta_field(data, dps=60):
    """Q(delta) for the largest root of the non-cyclotomic part of the pullback's char poly."""
    chi = orbit_data_pullback(data).char_poly()
    rest = strip_cyclotomic(chi).monic()
    return real_field(list(rest.coeffs), largest_real_root(rest), name="d", dps=dps)


def exact_candidate(cand, dps=150):
    """Recognize the beta of a real candidate in Q(delta) and certify the exact L."""
    if any(isinstance(b, complex) for b in cand.beta):
        raise InvalidParameterError("exact recognition needs real beta")
    k = len(cand.beta)
    n = cand.orbit_data.lengths[-1] - 1

    def G(beta):
        # mpf entries; bdk_matrix would coerce them to complex
        x = [mpmath.mpf(1)] + [1 - b for b in beta]
        for _ in range(n):
            inv = [1 / v for v in x]
            x = [inv[k]] + [beta[i] * inv[i] + (1 - beta[i]) * inv[k] for i in range(k)]
            s = max(abs(v) for v in x)
            x = [v / s for v in x]
        return [v / x[0] for v in x[1:]]

    field = delta_field(cand.orbit_data, dps=dps)
    with mpmath.workdps(dps):
        hp = newton_mp(G, [mpmath.mpf(b) for b in cand.beta], dps=dps)
        vals = [recognize_in_field(x, field, dps=dps) for x in hp]
    if any(v is None for v in vals):
        raise NoConvergence("beta not recognized over Q(delta)", {})
    L = bdk_matrix(vals)
    data = pseudo_auto_certify(L, k, max_steps=n + 5)
    if data != cand.orbit_data:
        raise NoConvergence("exact L does not certify", {"found": data.to_json()})
    return L, tuple(vals)


def lj_map(L):
    """L o J as a reduced homogeneous map."""
    k = len(L) - 1
    return compose_reduce(HomogeneousMap.linear(L), cremona(k))
