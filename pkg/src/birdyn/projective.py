"""Points and rational maps of P^k and of products (P^k1) x ... x (P^kd).

Maps are stored by homogeneous components, one block of components per
factor of the target.  Composition substitutes symbolically and then strips
the blockwise gcd, so reduced iterates come out in lowest degree.
"""
from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

from birdyn.algebra.fields import FieldElement, coerce_coeff, common_field
from birdyn.algebra.multipoly import MultiPoly, exact_divide, gcd_many, parse_poly
from birdyn.algebra.roots import roots as uni_roots
from birdyn.algebra.unipoly import UniPoly
from birdyn.errors import (
    DimensionError,
    FieldError,
    InconclusiveError,
    ParseError,
    ValidationError,
)

BLOCK_PREFIXES = ("x", "y", "u", "v", "s", "r")
FLOAT_ZERO_TOL = 1e-12


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __bool__(self):
        return False


INDETERMINATE = _Marker("Indeterminate")
NOT_CONTRACTED = _Marker("NotContracted")


def _normalize_ambient(ambient, ncoords=None):
    if ambient is None:
        if ncoords is None:
            raise DimensionError("ambient dimension needed")
        return (ncoords - 1,)
    if isinstance(ambient, int):
        return (ambient,)
    amb = tuple(int(k) for k in ambient)
    if not amb or any(k < 1 for k in amb):
        raise DimensionError(f"invalid ambient {ambient!r}")
    return amb


def block_slices(ambient):
    out = []
    start = 0
    for k in ambient:
        out.append(range(start, start + k + 1))
        start += k + 1
    return out


def ambient_vars(ambient):
    """Variable names: x0..xk for one factor, then y, u, v, s, r blocks."""
    ambient = _normalize_ambient(ambient)
    if len(ambient) > len(BLOCK_PREFIXES):
        raise DimensionError(f"at most {len(BLOCK_PREFIXES)} factors supported")
    names = []
    for b, k in enumerate(ambient):
        names.extend(f"{BLOCK_PREFIXES[b]}{i}" for i in range(k + 1))
    return tuple(names)


def _is_exact(c):
    return isinstance(c, (int, Fraction, FieldElement))


class ProjectivePoint:
    """A point of a product of projective spaces, stored in canonical form.

    Exact points have first nonzero coordinate 1 in each block.  Float points
    have unit norm per block with the first non-negligible coordinate real
    and positive.
    """

    __slots__ = ("coords", "ambient", "exact")

    def __init__(self, coords, ambient=None):
        coords = [coerce_coeff(c) for c in coords]
        self.ambient = _normalize_ambient(ambient, len(coords))
        if sum(k + 1 for k in self.ambient) != len(coords):
            raise DimensionError(f"{len(coords)} coordinates do not fit ambient {self.ambient}")
        exact = all(_is_exact(c) for c in coords)
        if exact:
            common_field(coords)
        else:
            coords = [complex(c) for c in coords]
        out = []
        for sl in block_slices(self.ambient):
            block = [coords[i] for i in sl]
            out.extend(_canonical_block(block, exact))
        self.coords = tuple(out)
        self.exact = exact

    @classmethod
    def vertex(cls, i, k):
        return cls([1 if j == i else 0 for j in range(k + 1)], (k,))

    def blocks(self):
        return [tuple(self.coords[i] for i in sl) for sl in block_slices(self.ambient)]

    def to_complex(self):
        if not self.exact:
            return self
        return ProjectivePoint([complex(c) for c in self.coords], self.ambient)

    def complex_coords(self):
        return [complex(c) for c in self.coords]

    def distance(self, other):
        """Largest per-block Fubini-Study sine distance (0 means equal)."""
        if self.ambient != other.ambient:
            raise DimensionError("ambient mismatch")
        worst = 0.0
        a = self.complex_coords()
        b = other.complex_coords()
        for sl in block_slices(self.ambient):
            u = [a[i] for i in sl]
            v = [b[i] for i in sl]
            nu = math.sqrt(sum(abs(x) ** 2 for x in u))
            nv = math.sqrt(sum(abs(x) ** 2 for x in v))
            inner = abs(sum(x.conjugate() * y for x, y in zip(u, v))) / (nu * nv)
            worst = max(worst, math.sqrt(max(0.0, 1.0 - min(1.0, inner) ** 2)))
        return worst

    def is_close(self, other, tol=1e-9):
        if self.exact and other.exact:
            return self == other
        return self.distance(other) < tol

    def affine(self, index=0):
        """Affine chart coordinates dividing by coordinate ``index`` (single factor)."""
        if len(self.ambient) != 1:
            raise DimensionError("affine chart needs a single factor")
        d = self.coords[index]
        if d == 0:
            return None
        return tuple(c / d for i, c in enumerate(self.coords) if i != index)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if self.ambient != other.ambient:
            return False
        if self.exact and other.exact:
            return self.coords == other.coords
        return self.distance(other) < 1e-12

    def __hash__(self):
        if self.exact:
            return hash((self.ambient, self.coords))
        return hash(self.ambient)

    def __repr__(self):
        return "[" + " : ".join(_fmt(c) for c in self.coords) + "]"

    def to_json(self):
        return [_coord_json(c) for c in self.coords]


def _fmt(c):
    if isinstance(c, complex):
        if abs(c.imag) < 1e-15:
            return f"{c.real:.10g}"
        return f"{c.real:.10g}{c.imag:+.10g}j"
    return str(c)


def _coord_json(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else int(c)
    if isinstance(c, FieldElement):
        return str(c)
    c = complex(c)
    return [c.real, c.imag]


def _canonical_block(block, exact):
    if exact:
        lead = next((c for c in block if c != 0), None)
        if lead is None:
            raise ValidationError("a projective point needs a nonzero coordinate in every block")
        if lead == 1:
            return block
        inv = 1 / lead
        return [c * inv if c != 0 else Fraction(0) for c in block]
    norm = math.sqrt(sum(abs(c) ** 2 for c in block))
    if norm == 0 or not math.isfinite(norm):
        raise ValidationError("a projective point needs a finite nonzero coordinate in every block")
    big = max(abs(c) for c in block)
    lead = next(c for c in block if abs(c) > 1e-9 * big)
    phase = lead / abs(lead)
    return [c / (norm * phase) for c in block]


class HomogeneousMap:
    """Rational map given by blocks of (multi-)homogeneous components.

    ``blocks[i]`` lists the components of target factor i.  All components
    share ``vars``, the source coordinates.  A single-factor map may be given
    as a flat list of components.
    """

    def __init__(self, blocks, source=None, vars=None, check=True):
        if blocks and isinstance(blocks[0], MultiPoly):
            blocks = [list(blocks)]
        self.blocks = tuple(tuple(b) for b in blocks)
        if not self.blocks or any(not b for b in self.blocks):
            raise DimensionError("a map needs at least one component per block")
        v = self.blocks[0][0].vars if vars is None else tuple(vars)
        self.vars = v
        if source is None:
            source = tuple(len(b) - 1 for b in self.blocks) if len(v) == sum(len(b) for b in self.blocks) \
                else (len(v) - 1,)
        self.source = _normalize_ambient(source)
        self.target = tuple(len(b) - 1 for b in self.blocks)
        if sum(k + 1 for k in self.source) != len(v):
            raise DimensionError(f"source {self.source} does not match {len(v)} variables")
        for b in self.blocks:
            for c in b:
                if c.vars != v:
                    raise DimensionError("all components must share one variable set")
        self._source_slices = block_slices(self.source)
        self._reduced = None
        self._numeric = None
        if check:
            self._check_homogeneous()

    # construction
    @classmethod
    def from_strings(cls, components, ambient=None, params=None):
        """Parse component strings; ``components`` is a flat list or a list of blocks."""
        if components and isinstance(components[0], str):
            components = [components]
        if ambient is None:
            ambient = [len(b) - 1 for b in components]
        ambient = _normalize_ambient(ambient)
        vars = ambient_vars(ambient)
        blocks = [[parse_poly(s, vars, params) for s in b] for b in components]
        return cls(blocks, source=ambient, vars=vars)

    @classmethod
    def from_json(cls, data, params=None):
        if isinstance(data, str):
            import json

            data = json.loads(data)
        if "components" not in data:
            raise ParseError("map literal needs a 'components' field")
        comps = data["components"]
        ambient = data.get("ambient")
        return cls.from_strings(comps, ambient, params)

    def to_json(self):
        comps = [[str(c) for c in b] for b in self.blocks]
        return {"ambient": list(self.target), "components": comps}

    @classmethod
    def identity(cls, ambient):
        ambient = _normalize_ambient(ambient)
        vars = ambient_vars(ambient)
        blocks = [[MultiPoly.var(i, vars) for i in sl] for sl in block_slices(ambient)]
        return cls(blocks, source=ambient, vars=vars)

    @classmethod
    def linear(cls, matrix, ambient=None):
        """The projective linear map x -> M x (single factor)."""
        n = len(matrix)
        ambient = _normalize_ambient(ambient if ambient is not None else n - 1)
        vars = ambient_vars(ambient)
        comps = [MultiPoly.linear([coerce_coeff(c) for c in row], vars) for row in matrix]
        return cls(comps, source=ambient, vars=vars)

    def _check_homogeneous(self):
        src_blocks = [list(sl) for sl in self._source_slices]
        for bi, b in enumerate(self.blocks):
            degs = None
            for c in b:
                if c.is_zero():
                    continue
                if not c.is_multihomogeneous(src_blocks):
                    raise ValidationError(f"component {c} is not homogeneous in each factor")
                e = next(iter(c.terms))
                d = tuple(sum(e[i] for i in sl) for sl in src_blocks)
                if degs is None:
                    degs = d
                elif d != degs:
                    raise ValidationError(f"block {bi} components have different degrees")
            if degs is None:
                raise ValidationError(f"block {bi} is identically zero")

    # queries
    @property
    def components(self):
        return [c for b in self.blocks for c in b]

    @property
    def k(self):
        return self.target[0] if len(self.target) == 1 else None

    def is_product(self):
        return len(self.source) > 1 or len(self.target) > 1

    def is_self_map(self):
        return self.source == self.target

    @property
    def multidegree(self):
        """Matrix [i][j]: degree of block i's components in source factor j."""
        out = []
        for b in self.blocks:
            c = next(c for c in b if not c.is_zero())
            out.append([c.block_degree(list(sl)) for sl in self._source_slices])
        return out

    @property
    def degree(self):
        if self.is_product():
            return self.multidegree
        return next(c for c in self.blocks[0] if not c.is_zero()).total_degree()

    def field(self):
        return common_field([v for c in self.components for v in c.terms.values()])

    def is_exact(self):
        return self.field() is not complex

    def is_reduced(self):
        if self._reduced is None:
            if not self.is_exact():
                raise FieldError("reducedness needs exact coefficients")
            self._reduced = all(gcd_many(list(b)).is_constant() for b in self.blocks)
        return self._reduced

    def is_identity(self):
        if self.source != self.target:
            return False
        for sl, b in zip(self._source_slices, self.blocks):
            scale = None
            for i, c in zip(sl, b):
                if len(c.terms) != 1:
                    return False
                (e, v), = c.terms.items()
                if e != tuple(int(j == i) for j in range(len(self.vars))):
                    return False
                if scale is None:
                    scale = v
                elif v != scale:
                    return False
        return True

    def equal_up_to_scale(self, other):
        if self.vars != other.vars or len(self.blocks) != len(other.blocks):
            return False
        for b1, b2 in zip(self.blocks, other.blocks):
            if len(b1) != len(b2):
                return False
            ref = next(((c1, c2) for c1, c2 in zip(b1, b2) if not c1.is_zero()), None)
            c1, c2 = ref
            e = c1.leading_exponent()
            if e not in c2.terms:
                return False
            lam = c2.terms[e] / c1.terms[e]
            if any(x * lam != y for x, y in zip(b1, b2)):
                return False
        return True

    def numeric(self):
        """Copy with complex float coefficients (cached)."""
        if self._numeric is None:
            self._numeric = HomogeneousMap(
                [[c.to_complex() for c in b] for b in self.blocks], self.source, self.vars, check=False
            )
        return self._numeric

    def __call__(self, point, tol=FLOAT_ZERO_TOL):
        return evaluate(self, point, tol)

    def __eq__(self, other):
        return isinstance(other, HomogeneousMap) and self.vars == other.vars and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.vars, self.blocks))

    def __repr__(self):
        inner = " | ".join(" : ".join(str(c) for c in b) for b in self.blocks)
        return f"HomogeneousMap([{inner}])"


# constructors for the standard involutions


def cremona(k):
    """The standard degree-k Cremona involution of P^k."""
    if k < 1:
        raise DimensionError("k must be >= 1")
    vars = ambient_vars(k)
    comps = []
    for j in range(k + 1):
        e = tuple(0 if i == j else 1 for i in range(k + 1))
        comps.append(MultiPoly.monomial(e, vars))
    return HomogeneousMap(comps, source=(k,), vars=vars)


def cremona_product(k, d):
    """(x, y1, ..., y_{d-1}) -> (1/x, x/y1, ..., x/y_{d-1}) on (P^k)^d, coordinatewise."""
    if k < 1 or d < 2:
        raise DimensionError("need k >= 1 and d >= 2")
    ambient = (k,) * d
    vars = ambient_vars(ambient)
    sl = block_slices(ambient)
    n = len(vars)
    blocks = []
    first = []
    for j in range(k + 1):
        e = [0] * n
        for i in sl[0]:
            if i != sl[0][j]:
                e[i] = 1
        first.append(MultiPoly.monomial(e, vars))
    blocks.append(first)
    for m in range(1, d):
        blk = []
        for j in range(k + 1):
            e = [0] * n
            e[sl[0][j]] = 1
            for i in sl[m]:
                if i != sl[m][j]:
                    e[i] = 1
            blk.append(MultiPoly.monomial(e, vars))
        blocks.append(blk)
    return HomogeneousMap(blocks, source=ambient, vars=vars)


# evaluation


def evaluate(f, p, tol=FLOAT_ZERO_TOL):
    """Image of ``p``, or ``INDETERMINATE`` when some block of components all vanish."""
    if not isinstance(p, ProjectivePoint):
        p = ProjectivePoint(p, f.source)
    if p.ambient != f.source:
        raise DimensionError(f"point lives in {p.ambient}, map source is {f.source}")
    exact = p.exact and f.is_exact()
    if exact:
        vals = [[c.evaluate(p.coords) for c in b] for b in f.blocks]
        for bv in vals:
            if all(v == 0 for v in bv):
                return INDETERMINATE
        return ProjectivePoint([v for b in vals for v in b], f.target)
    g = f.numeric()
    x = p.complex_coords()
    vals = []
    for b in g.blocks:
        bv = [c.evaluate(x) for c in b]
        scale = max(sum(abs(v) for v in c.terms.values()) for c in b)
        if max(abs(v) for v in bv) <= tol * max(scale, 1e-300):
            return INDETERMINATE
        if not all(cmath.isfinite(v) for v in bv):
            return INDETERMINATE
        vals.extend(bv)
    return ProjectivePoint(vals, f.target)


# composition


def compose(f, g):
    """Unreduced f o g (substitute g's components for f's variables)."""
    if f.source != g.target:
        raise DimensionError(f"cannot compose: source {f.source} vs target {g.target}")
    subs = g.components
    blocks = [[c.substitute(subs, g.vars) for c in b] for b in f.blocks]
    return HomogeneousMap(blocks, source=g.source, vars=g.vars, check=False)


def reduce_map(f):
    """Divide every block by the gcd of its components; returns (map, gcds)."""
    if not f.is_exact():
        raise FieldError("gcd stripping needs exact coefficients")
    new_blocks = []
    gcds = []
    for b in f.blocks:
        nz = [c for c in b if not c.is_zero()]
        if not nz:
            from birdyn.errors import DegenerateMapError

            raise DegenerateMapError("a block of components vanishes identically")
        g = gcd_many(nz)
        gcds.append(g)
        if g.is_constant():
            new_blocks.append(list(b))
        else:
            new_blocks.append([exact_divide(c, g) for c in b])
    out = HomogeneousMap(new_blocks, source=f.source, vars=f.vars, check=False)
    out._reduced = True
    return out, gcds


def compose_reduce(f, g):
    """f o g with the blockwise gcd of the components removed."""
    return reduce_map(compose(f, g))[0]


def iterate(f, n):
    """Reduced n-th iterate, composing one step at a time."""
    if not f.is_self_map():
        raise DimensionError("iterates need a self-map")
    out = reduce_map(f)[0]
    for _ in range(n - 1):
        out = compose_reduce(f, out)
    return out


# differential data


def _det(matrix):
    n = len(matrix)
    memo = {}

    def minor(row, cols):
        if row == n:
            return None
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = None
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                continue
            a = matrix[row][j]
            if not a.is_zero():
                rest = minor(row + 1, cols | (1 << j))
                term = a if rest is None else a * rest
                if sign < 0:
                    term = -term
                total = term if total is None else total + term
            sign = -sign
        if total is None:
            total = MultiPoly.zero(matrix[0][0].vars)
        memo[key] = total
        return total

    return minor(0, 0)


def jacobian_det(f):
    """Determinant of the matrix of partial derivatives of the components."""
    if f.is_product():
        raise DimensionError("jacobian_det needs a single-factor map")
    comps = f.blocks[0]
    if len(comps) != len(f.vars):
        raise DimensionError("jacobian_det needs a self-map")
    matrix = [[c.diff(j) for j in range(len(f.vars))] for c in comps]
    return _det(matrix)


# linear factors


def _univariate_field_roots(coeffs, field):
    """Roots lying in the coefficient field of a univariate polynomial (low first)."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) < 2:
        return []
    zeros = []
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
        zeros = [Fraction(0)]
    if len(coeffs) < 2:
        return zeros

    def ev(x):
        acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    found = list(zeros)
    if field is None:
        approx = uni_roots(UniPoly(coeffs).primitive(), 1e-14)
    else:
        # complex embedding of the coefficients
        import numpy as np

        approx = list(np.roots([complex(c) for c in reversed(coeffs)]))
    for z in approx:
        cands = []
        if field is None:
            if abs(z.imag) < 1e-7 * max(1.0, abs(z)):
                cands.append(Fraction(z.real).limit_denominator(10 ** 9))
        elif field.degree == 2 and field.embedding is not None and abs(field.embedding.imag) > 1e-12:
            theta = field.embedding
            b1 = z.imag / theta.imag
            b0 = z.real - b1 * theta.real
            cands.append(field([Fraction(b0).limit_denominator(10 ** 9), Fraction(b1).limit_denominator(10 ** 9)]))
        elif abs(z.imag) < 1e-7 * max(1.0, abs(z)):
            cands.append(Fraction(z.real).limit_denominator(10 ** 9))
        for c in cands:
            if ev(c) == 0 and c not in found:
                found.append(c)
    return found


def linear_factors(p):
    """Linear factors of a homogeneous polynomial, with multiplicity.

    Returns ``(factors, cofactor)``.  Candidate forms are read off from the
    roots of ``p`` restricted to the coordinate lines through pairs of
    vertices; each candidate is confirmed by exact division.  Factors are
    normalized with first nonzero coefficient 1.
    """
    if not p.is_homogeneous():
        raise ValidationError("linear_factors needs a homogeneous polynomial")
    from itertools import product

    vars = p.vars
    n = len(vars)
    field = common_field(p.terms.values())
    if field is complex:
        raise FieldError("linear_factors needs exact coefficients")
    factors = []
    rest = p
    # monomial factors first
    mono = rest.monomial_content()
    for i, m in enumerate(mono):
        factors.extend([MultiPoly.var(i, vars)] * m)
    if any(mono):
        rest = rest.shift_down(mono)
    progress = True
    while progress and rest.total_degree() >= 1:
        progress = False
        for piv in range(n):
            if rest.total_degree() < 1:
                break
            options = []
            for j in range(n):
                if j == piv:
                    options.append(None)
                    continue
                if j < piv:
                    options.append([Fraction(0)])
                    continue
                q = _restrict_to_line(rest, piv, j)
                if q is None:
                    options = None
                    break
                rts = _univariate_field_roots(q, field)
                options.append([Fraction(0)] + [-1 / t for t in rts if t != 0])
            if options is None:
                continue
            choices = [o if o is not None else [Fraction(1)] for o in options]
            for combo in product(*choices):
                if all(c == 0 for i, c in enumerate(combo) if i != piv):
                    continue
                form = MultiPoly.linear(list(combo), vars)
                while rest.total_degree() >= 1:
                    q = exact_divide(rest, form)
                    if q is None:
                        break
                    factors.append(form)
                    rest = q
                    progress = True
    return factors, rest


def _restrict_to_line(p, i, j):
    """Coefficients (low first) of p(e_i + t e_j), or None if it vanishes."""
    d = p.total_degree()
    out = [Fraction(0)] * (d + 1)
    any_term = False
    for e, c in p.terms.items():
        if all(x == 0 for idx, x in enumerate(e) if idx not in (i, j)):
            out[e[j]] = out[e[j]] + c
            any_term = True
    if not any_term or all(c == 0 for c in out):
        return None
    return out


# contraction


def contracts_to(f, hyperplane, samples=8, seed=12345, tol=1e-9):
    """Common image of ``samples`` random points of a hyperplane, or NOT_CONTRACTED.

    The hyperplane is parameterized by all coordinates except a pivot, drawn
    from a fixed integer range with a deterministic seed.
    """
    if f.is_product():
        raise DimensionError("contracts_to needs a single-factor map")
    if not hyperplane.is_homogeneous() or hyperplane.total_degree() != 1:
        raise ValidationError("hyperplane must be a linear form")
    if hyperplane.vars != f.vars:
        hyperplane = hyperplane.rename(f.vars) if hyperplane.nvars == len(f.vars) else None
        if hyperplane is None:
            raise DimensionError("hyperplane variables do not match the map")
    n = len(f.vars)
    coeffs = [Fraction(0)] * n
    for e, c in hyperplane.terms.items():
        coeffs[e.index(1)] = c
    piv = next(i for i, c in enumerate(coeffs) if c != 0)
    rng = random.Random(seed)
    images = []
    for _ in range(samples * 4):
        if len(images) >= samples:
            break
        x = [Fraction(rng.randint(-50, 50)) for _ in range(n)]
        x[piv] = Fraction(0)
        s = sum((c * xi for c, xi in zip(coeffs, x)), Fraction(0))
        x[piv] = -s / coeffs[piv]
        if all(v == 0 for v in x):
            continue
        img = evaluate(f, ProjectivePoint(x, f.source))
        if img is INDETERMINATE:
            continue
        images.append(img)
    if not images:
        raise InconclusiveError("every sample point was indeterminate")
    first = images[0]
    if all(im.is_close(first, tol) for im in images[1:]):
        return first
    return NOT_CONTRACTED
