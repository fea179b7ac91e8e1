"""Degree sequences of iterates and estimates of their growth rate.

Two routes compute deg(f^n) for the reduced iterates:

* ``method="symbolic"`` composes and strips gcds with exact multivariate
  arithmetic.  It is exact but the iterates grow exponentially.
* ``method="line"`` (the default) follows the restriction of the iterates to
  a random line over a large prime field.  Each step composes univariate
  polynomials, removes their gcd and the common zero at infinity, which
  reproduces the degree of the reduced iterate unless the line or the prime
  is special.  Two independent (prime, line) pairs are run and the larger
  value is kept; both are lower bounds for the true degree.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from birdyn import kernels
from birdyn.algebra.fields import FieldElement
from birdyn.algebra.modp import find_context
from birdyn.errors import DegenerateMapError, FieldError, ValidationError
from birdyn.projective import block_slices, compose_reduce, reduce_map


@dataclass
class DegreeSequence:
    """Degrees d_1..d_n of the reduced iterates (multidegree matrices for products)."""

    values: list
    truncated: bool = False
    method: str = "line"
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    @property
    def is_product(self):
        return bool(self.values) and isinstance(self.values[0], list)

    def scalars(self):
        """Degrees as numbers; for products, the largest entry of each matrix."""
        if self.is_product:
            return [max(max(r) for r in m) for m in self.values]
        return list(self.values)

    def ratios(self):
        s = self.scalars()
        return [s[i] / s[i - 1] for i in range(1, len(s))]

    def check_submultiplicative(self):
        s = self.scalars()
        n = len(s)
        for a in range(1, n + 1):
            for b in range(1, n + 1 - a):
                if s[a + b - 1] > s[a - 1] * s[b - 1]:
                    return False
        return True


# mod-p line method


def _map_fields(f):
    fields = set()
    for c in f.components:
        for v in c.terms.values():
            if isinstance(v, FieldElement):
                fields.add(v.field)
            elif isinstance(v, (float, complex)):
                raise FieldError("degree sequences need exact coefficients")
    return fields


def _fp_map(f, ctx):
    out = []
    for b in f.blocks:
        out.append([[(e, ctx.fp(c)) for e, c in comp.terms.items() if ctx.fp(c)] for comp in b])
    return out


def _line_run(f, n, ctx, seed, line_block, deadline):
    p = ctx.p
    rng = random.Random(seed)
    fblocks = _fp_map(f, ctx)
    src = [list(sl) for sl in block_slices(f.source)]
    md = f.multidegree
    # state: per source block, list of univariate polys and a formal degree
    curve = []
    formal = []
    for bi, sl in enumerate(src):
        if bi == line_block:
            curve.append([kernels.add([rng.randrange(1, p)], [0, rng.randrange(1, p)], p) for _ in sl])
            formal.append(1)
        else:
            curve.append([[rng.randrange(1, p)] for _ in sl])
            formal.append(0)
    history = []
    for step in range(n):
        if deadline is not None and time.monotonic() > deadline:
            return history, True
        flat = [c for blk in curve for c in blk]
        powers = [dict() for _ in flat]

        def power(i, k):
            d = powers[i]
            if k not in d:
                if k == 1:
                    d[k] = flat[i]
                elif k - 1 in d:
                    d[k] = kernels.mul(d[k - 1], flat[i], p)
                else:
                    d[k] = kernels.mul(power(i, k // 2), power(i, k - k // 2), p)
            return d[k]

        new_curve = []
        new_formal = []
        for bi, comps in enumerate(fblocks):
            D = sum(md[bi][j] * formal[j] for j in range(len(src)))
            vals = []
            for terms in comps:
                acc = []
                for e, c in terms:
                    t = [c]
                    for i, x in enumerate(e):
                        if x:
                            t = kernels.mul(t, power(i, x), p)
                    acc = kernels.add(acc, t, p)
                vals.append(acc)
            nz = [v for v in vals if v]
            if not nz:
                raise DegenerateMapError(f"block {bi} vanishes on the test line at step {step + 1}")
            g = nz[0]
            for v in nz[1:]:
                if len(g) == 1:
                    break
                g = kernels.gcd(g, v, p)
            if len(g) > 1:
                vals = [kernels.exact_div(v, g, p) if v else [] for v in vals]
            dg = len(g) - 1
            at_inf = min(D - dg - (len(v) - 1) for v in vals if v)
            new_curve.append(vals)
            new_formal.append(D - dg - at_inf)
        curve = new_curve
        formal = new_formal
        history.append(list(formal))
    return history, False


def _line_degrees(f, n, runs, seed, deadline):
    fields = _map_fields(f)
    nb = len(f.source)
    best = None
    truncated = False
    primes = []
    for r in range(runs):
        ctx = find_context(fields, skip=r)
        primes.append(ctx.p)
        cols = []
        length = n
        for j in range(nb):
            hist, trunc = _line_run(f, n, ctx, seed + 7919 * r + 104729 * j, j, deadline)
            truncated = truncated or trunc
            length = min(length, len(hist))
            cols.append(hist)
        # mats[step][i][j]
        mats = [[[cols[j][s][i] for j in range(nb)] for i in range(len(f.blocks))] for s in range(length)]
        if best is None:
            best = mats
        else:
            m = min(len(best), len(mats))
            best = [[[max(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(best[s], mats[s])] for s in range(m)]
    return best, truncated, primes


def degree_sequence(f, n, method="line", runs=2, seed=20240607, time_budget=None):
    """Degrees of the reduced iterates f^1..f^n.

    ``time_budget`` (seconds) stops early and flags the result truncated.
    Product-space maps yield multidegree matrices ``[i][j]``.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    if not f.is_self_map():
        raise ValidationError("degree sequences need a self-map")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    product = f.is_product()
    if method == "symbolic":
        values = []
        g = None
        truncated = False
        for _ in range(n):
            if deadline is not None and time.monotonic() > deadline:
                truncated = True
                break
            g = reduce_map(f)[0] if g is None else compose_reduce(f, g)
            values.append(g.multidegree if product else g.degree)
        return DegreeSequence(values, truncated, "symbolic")
    if method != "line":
        raise ValueError(f"unknown method {method!r}")
    mats, truncated, primes = _line_degrees(f, n, runs, seed, deadline)
    values = mats if product else [m[0][0] for m in mats]
    return DegreeSequence(values, truncated, "line", {"primes": primes})


# growth estimate


def _fit_exponential(s):
    """Least-squares fit of s_n ~ A lam^n + C over the tail; returns lam."""
    s = np.asarray(s, dtype=float)
    idx = np.arange(len(s), dtype=float)
    half = len(s) // 2
    ys = s[half:]
    xs = idx[half:]
    if len(ys) < 3:
        return None

    def resid(lam):
        A = np.stack([lam ** xs, np.ones_like(xs)], axis=1)
        coef, *_ = np.linalg.lstsq(A, ys, rcond=None)
        return float(np.sum((A @ coef - ys) ** 2)), coef

    grid = np.linspace(1.0005, 3.0, 4000)
    vals = [resid(l)[0] for l in grid]
    i = int(np.argmin(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    # golden-section refinement of the bracketing cell
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    for _ in range(60):
        if resid(c)[0] < resid(d)[0]:
            b = d
        else:
            a = c
        c, d = b - g * (b - a), a + g * (b - a)
    lam = (a + b) / 2
    if resid(lam)[1][0] <= 0:
        return None
    return lam


def delta_estimate(seq):
    """Growth rate lim d_n^(1/n) estimated from a finite degree sequence.

    The tail is fitted by A lam^n + C (a constant offset is the typical shape
    of degree sequences of birational maps), and the estimate is capped by the
    Fekete bound min_n d_n^(1/n), which submultiplicativity makes an upper
    bound for the limit.  Bounded sequences give exactly 1.0.  For product
    spaces the entrywise maximum of the multidegree matrices is used.
    """
    if not isinstance(seq, DegreeSequence):
        seq = DegreeSequence(list(seq))
    s = seq.scalars()
    if len(s) < 4:
        raise ValidationError("delta_estimate needs at least 4 terms")
    if all(v == 1 for v in s):
        return 1.0
    fekete = min(v ** (1.0 / (i + 1)) for i, v in enumerate(s))
    if fekete <= 1.0:
        return 1.0
    full = [1] + list(s)
    # bounded tail: no growth at all
    tail = full[len(full) // 2:]
    if max(tail) <= max(full[: len(full) // 2]):
        return 1.0
    lam = _fit_exponential(full)
    if lam is None:
        w = max(1, len(s) // 4)
        lam = (s[-1] / s[-1 - w]) ** (1.0 / w)
    return float(max(1.0, min(lam, fekete)))
