"""Modular gcd of homogeneous polynomials over Q or a number field.

The inputs are restricted to many random lines ``P0 + t v`` through one fixed
integer point ``P0`` over F_p.  On a lucky line the monic univariate gcd is
``G(P0 + t v) / G(v)``; its constant term gives ``G(v) / G(P0)``, so the
values of ``G / G(P0)`` at the directions ``v`` can be interpolated into the
coefficients of ``G``.  Every complete embedding of the coefficient field into
F_p is used, primes are combined by CRT, and rational reconstruction gives a
candidate over the field.

The candidate is accepted only after exact division of every input.  Its
degree equals the smallest gcd degree seen on a line where some input keeps
full degree, and that is an upper bound for the true gcd degree, so exact
division is also a proof of maximality.  Any failure returns ``None`` and the
caller falls back to the PRS gcd.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from birdyn import kernels
from birdyn.algebra.fields import FieldElement, common_field
from birdyn.algebra.modp import PRIME_CEILING, integral_minpoly, is_prime

MAX_PRIMES = 40
EXTRA_LINES = 6
CHUNK = 1 << 21


def _splitting_primes(field, start=PRIME_CEILING):
    """Primes (descending) with a full set of distinct roots of the field's minimal polynomial."""
    d = 1 if field is None else field.degree
    m = None if field is None else integral_minpoly(field)
    n = start
    while n > 1000:
        n -= 1
        if not is_prime(n):
            continue
        if field is None:
            yield n, [None]
            continue
        if m[-1] % n == 0 or any(c.denominator % n == 0 for c in field.minpoly):
            continue
        rs = kernels.roots([c % n for c in m], n)
        if len(rs) == d:
            yield n, rs


def _fp(c, p, r):
    if isinstance(c, int):
        return c % p
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise ZeroDivisionError
        return c.numerator * pow(c.denominator, p - 2, p) % p
    acc = 0
    for a in reversed(c.coeffs):
        acc = (acc * r + _fp(a, p, r)) % p
    return acc


def _mulmod(a, b, p):
    """Elementwise a*b mod p for int64 arrays with entries below 2^31."""
    return (a * b) % p


def _matvec_mod(M, c, p):
    """(M @ c) mod p without int64 overflow: split c into 16-bit halves."""
    lo = c & 0xFFFF
    hi = c >> 16
    r_lo = (M @ lo) % p
    r_hi = (M @ hi) % p
    return (r_lo + (r_hi * 65536) % p) % p


def _restrict(polys_fp, degs, P0, dirs, p):
    """Coefficient lists of each input restricted to each line P0 + t v."""
    n = len(P0)
    D = max(degs)
    ts = np.arange(D + 1, dtype=np.int64)
    L = len(dirs)
    V = np.array(dirs, dtype=np.int64)
    base = np.array(P0, dtype=np.int64)
    # points[l, s, i] = P0_i + t_s v_i
    pts = (base[None, None, :] + (ts[None, :, None] * V[:, None, :]) % p) % p
    pts = pts.reshape(L * (D + 1), n)
    pows = []
    for i in range(n):
        tab = np.ones((pts.shape[0], D + 1), dtype=np.int64)
        for k in range(1, D + 1):
            tab[:, k] = _mulmod(tab[:, k - 1], pts[:, i], p)
        pows.append(tab)
    # inverse Vandermonde on the nodes 0..D, mod p
    vinv = _inv_vandermonde(list(range(D + 1)), p)
    out = [[None] * len(polys_fp) for _ in range(L)]
    for pi, (E, c) in enumerate(polys_fp):
        T = E.shape[0]
        vals = np.zeros(pts.shape[0], dtype=np.int64)
        step = max(1, CHUNK // max(T, 1))
        for s in range(0, pts.shape[0], step):
            sl = slice(s, s + step)
            mono = np.ones((min(step, pts.shape[0] - s), T), dtype=np.int64)
            for i in range(n):
                mono = _mulmod(mono, pows[i][sl][:, E[:, i]], p)
            vals[sl] = _matvec_mod(mono, c, p)
        vals = vals.reshape(L, D + 1)
        # coefficients[l] = vinv @ vals[l]
        coef = _matvec_mod_batch(vinv, vals, p)
        for l in range(L):
            row = coef[l].tolist()
            while row and row[-1] == 0:
                row.pop()
            out[l][pi] = row
    return out


def _matvec_mod_batch(M, X, p):
    """Rows of X mapped by M (i.e. X @ M.T) mod p, overflow safe."""
    lo = X & 0xFFFF
    hi = X >> 16
    r_lo = (lo @ M.T) % p
    r_hi = (hi @ M.T) % p
    return (r_lo + (r_hi * 65536) % p) % p


def _inv_vandermonde(nodes, p):
    n = len(nodes)
    A = [[pow(x, j, p) for j in range(n)] for x in nodes]
    inv = _solve_mod(np.array(A, dtype=np.int64), np.eye(n, dtype=np.int64), p)
    return inv


def _solve_mod(A, B, p):
    """Solve A X = B mod p for square or tall A of full column rank; None if singular or inconsistent."""
    A = A % p
    B = B % p
    if B.ndim == 1:
        B = B[:, None]
    rows, cols = A.shape
    M = np.concatenate([A, B], axis=1)
    r = 0
    for c in range(cols):
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            return None
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        f = M[:, c].copy()
        f[r] = 0
        M = (M - (f[:, None] * M[r][None, :]) % p) % p
        r += 1
    if rows > cols and np.any(M[cols:, cols:]):
        return None
    X = M[:cols, cols:]
    return X


def _ratrec(u, m):
    """Rational a/b = u mod m with |a|, |b| <= sqrt(m/2), or None."""
    u %= m
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, u
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    from math import gcd

    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _grlex(e):
    return (sum(e), e)


def modular_gcd(polys, seed=0xC0FFEE, max_primes=MAX_PRIMES):
    """gcd of homogeneous exact polynomials normalized to leading coefficient 1, or None."""
    from birdyn.algebra.multipoly import MultiPoly, exact_divide

    if not polys or any(not q.is_homogeneous() for q in polys):
        return None
    field = common_field([c for q in polys for c in q.terms.values()])
    if field is complex:
        return None
    vars = polys[0].vars
    n = len(vars)
    degs = [q.total_degree() for q in polys]
    d = 1 if field is None else field.degree
    rng = random.Random(seed)
    P0 = [rng.randint(1, 10 ** 6) for _ in range(n)]
    exps_all = [list(q.terms) for q in polys]
    E_arrs = [np.array(ex, dtype=np.int64).reshape(len(ex), n) for ex in exps_all]

    e_deg = None
    monos = None
    lead = None
    acc = None  # acc[m][s] residue, modulus
    modulus = 1
    previous = None
    used = 0
    for p, roots in _splitting_primes(field):
        if used >= max_primes:
            return None
        try:
            per_root = []
            for r in roots:
                cs = [np.array([_fp(c, p, r) for c in q.terms.values()], dtype=np.int64) for q in polys]
                per_root.append(list(zip(E_arrs, cs)))
        except ZeroDivisionError:
            continue
        used += 1
        images = []
        ok = True
        for polys_fp in per_root:
            res = _interpolate_one(polys_fp, degs, P0, p, rng, e_deg, n)
            if res is None:
                ok = False
                break
            e_here, monos_here, vec = res
            if e_deg is None:
                e_deg, monos = e_here, monos_here
            elif e_here != e_deg:
                if e_here < e_deg:
                    # earlier primes were unlucky
                    e_deg, monos, acc, modulus, lead, previous = e_here, monos_here, None, 1, None, None
                    images = []
                else:
                    ok = False
                    break
            images.append(vec)
        if not ok:
            continue
        if e_deg == 0:
            return MultiPoly.const(1, vars)
        # leading monomial: largest grlex monomial nonzero in some embedding
        nz = [i for i in range(len(monos)) if any(v[i] for v in images)]
        lm = max(nz, key=lambda i: _grlex(monos[i]))
        if lead is None:
            lead = lm
        elif lm != lead:
            if _grlex(monos[lm]) > _grlex(monos[lead]):
                acc, modulus, lead, previous = None, 1, lm, None
            else:
                continue
        if any(v[lead] == 0 for v in images):
            continue
        normed = [[x * pow(v[lead], p - 2, p) % p for x in v] for v in images]
        # power-basis coordinates from the d embeddings
        if d == 1:
            coords = [[row] for row in normed[0]]
        else:
            Vm = np.array([[pow(r, s, p) for s in range(d)] for r in roots], dtype=np.int64)
            Y = np.array(normed, dtype=np.int64)  # d x M
            X = _solve_mod(Vm, Y, p)  # d x M, rows are powers
            if X is None:
                continue
            coords = X.T.tolist()
        if acc is None:
            acc = coords
            modulus = p
        else:
            inv = pow(modulus, -1, p)
            acc = [
                [a + modulus * ((b - a) * inv % p) for a, b in zip(ra, rb)]
                for ra, rb in zip(acc, coords)
            ]
            modulus *= p
        recon = []
        fail = False
        for row in acc:
            rr = []
            for u in row:
                q = _ratrec(u, modulus)
                if q is None:
                    fail = True
                    break
                rr.append(q)
            if fail:
                break
            recon.append(rr)
        if fail:
            continue
        if recon != previous:
            previous = recon
            continue
        terms = {}
        for mono, row in zip(monos, recon):
            if any(row):
                terms[mono] = row[0] if field is None else FieldElement(field, row)
        cand = MultiPoly._raw(vars, terms)
        if all(exact_divide(q, cand) is not None for q in polys):
            return cand.normalize()
        previous = None
    return None


def _interpolate_one(polys_fp, degs, P0, p, rng, e_known, n):
    """Coefficients of G / G(P0) over F_p on the degree-e monomials, or None."""
    # probe lines for the gcd degree
    probe = [[rng.randrange(1, p) for _ in range(n)] for _ in range(3)]
    restricted = _restrict(polys_fp, degs, P0, probe, p)
    e = None
    for line in restricted:
        full = any(len(r) - 1 == dg for r, dg in zip(line, degs))
        if not full:
            continue
        g = _line_gcd(line, p)
        if g is None:
            return None
        ge = len(g) - 1
        e = ge if e is None else min(e, ge)
    if e is None:
        return None
    if e == 0:
        return 0, [], []
    monos = sorted(
        (tuple(sum(1 for x in c if x == i) for i in range(n)) for c in combinations_with_replacement(range(n), e)),
        key=_grlex,
    )
    M = len(monos)
    need = M + EXTRA_LINES
    rows, rhs = [], []
    tries = 0
    while len(rows) < need and tries < 4:
        tries += 1
        dirs = [[rng.randrange(1, p) for _ in range(n)] for _ in range(need - len(rows) + 4)]
        for v, line in zip(dirs, _restrict(polys_fp, degs, P0, dirs, p)):
            if not any(len(r) - 1 == dg for r, dg in zip(line, degs)):
                continue
            g = _line_gcd(line, p)
            if g is None or len(g) - 1 != e or g[0] == 0:
                continue
            rows.append([_monoval(v, m, p) for m in monos])
            rhs.append(pow(g[0], p - 2, p))
    if len(rows) < M:
        return None
    X = _solve_mod(np.array(rows, dtype=np.int64), np.array(rhs, dtype=np.int64), p)
    if X is None:
        return None
    return e, monos, X[:, 0].tolist()


def _monoval(v, m, p):
    out = 1
    for x, k in zip(v, m):
        if k:
            out = out * pow(x, k, p) % p
    return out


def _line_gcd(line, p):
    nz = [r for r in line if r]
    if not nz:
        return None
    g = nz[0]
    for r in nz[1:]:
        if len(g) == 1:
            break
        g = kernels.gcd(g, r, p)
    return kernels.monic(g, p)
