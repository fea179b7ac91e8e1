"""Sparse multivariate polynomials over Q, a small number field, or complex floats.

Terms live in a dict mapping exponent tuples to nonzero coefficients.  The
term order is graded lexicographic in the declared variable order, so
``x0`` outranks ``x1`` among terms of equal total degree.
"""
from __future__ import annotations

import ast
import heapq
from fractions import Fraction

from birdyn.algebra.fields import FieldElement, coerce_coeff, common_field, zeta
from birdyn.errors import FieldError, IncompatibleFieldError, ParseError

# packing base for exponent vectors while multiplying
_SHIFT = 16
_MASK = (1 << _SHIFT) - 1


def _is_zero(c):
    return c == 0


def _pack(e):
    v = 0
    for x in e:
        v = (v << _SHIFT) | x
    return v


def _unpack(v, n):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = v & _MASK
        v >>= _SHIFT
    return tuple(out)


def grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    """Immutable polynomial in the ordered variables ``vars``."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                c = coerce_coeff(c)
                if not _is_zero(c):
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        obj = object.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # construction helpers
    @classmethod
    def zero(cls, vars):
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, c, vars):
        vars = tuple(vars)
        c = coerce_coeff(c)
        return cls._raw(vars, {} if _is_zero(c) else {(0,) * len(vars): c})

    @classmethod
    def var(cls, name_or_index, vars):
        vars = tuple(vars)
        i = name_or_index if isinstance(name_or_index, int) else vars.index(name_or_index)
        e = [0] * len(vars)
        e[i] = 1
        return cls._raw(vars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps, vars, c=1):
        return cls(vars, {tuple(exps): c})

    @classmethod
    def linear(cls, coeffs, vars):
        n = len(vars)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(vars, terms)

    @classmethod
    def parse(cls, text, vars=None):
        return parse_poly(text, vars)

    # basic queries
    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def block_degree(self, idxs):
        """Max total degree in the variables at positions ``idxs``."""
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idxs) for e in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def is_multihomogeneous(self, blocks):
        if not self.terms:
            return True
        return all(len({sum(e[i] for i in b) for e in self.terms}) == 1 for b in blocks)

    def variables_used(self):
        used = [False] * self.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return [i for i, u in enumerate(used) if u]

    def field(self):
        return common_field(self.terms.values())

    def is_exact(self):
        return common_field(self.terms.values()) is not complex

    def leading_exponent(self):
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self):
        if not self.terms:
            return Fraction(0)
        return self.terms[self.leading_exponent()]

    def normalize(self):
        """Scale so the grlex leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        inv = 1 / lc
        return MultiPoly._raw(self.vars, {e: c * inv for e, c in self.terms.items()})

    # arithmetic
    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(other, self.vars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if _is_zero(s):
                    del out[e]
                else:
                    out[e] = s
        return MultiPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = coerce_coeff(other)
            if _is_zero(c):
                return MultiPoly.zero(self.vars)
            return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.vars)
        n = self.nvars
        a = [(_pack(e), c) for e, c in self.terms.items()]
        b = [(_pack(e), c) for e, c in other.terms.items()]
        if len(a) > len(b):
            a, b = b, a
        acc = {}
        get = acc.get
        for ea, ca in a:
            for eb, cb in b:
                k = ea + eb
                v = get(k)
                acc[k] = ca * cb if v is None else v + ca * cb
        out = {_unpack(k, n): c for k, c in acc.items() if not _is_zero(c)}
        return MultiPoly._raw(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            q = exact_divide(self, other)
            if q is None:
                raise ArithmeticError("polynomial division is not exact")
            return q
        return self * (1 / coerce_coeff(other))

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative int")
        result = MultiPoly.const(1, self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == MultiPoly.const(other, self.vars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # evaluation and substitution
    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        # cache powers per variable
        pw = [dict() for _ in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    p = pw[i].get(x)
                    if p is None:
                        p = point[i] ** x
                        pw[i][x] = p
                    t = t * p
            total = total + t
        return total

    def substitute(self, polys, vars=None):
        """Compose: replace variable i by ``polys[i]`` (all sharing one variable set)."""
        if len(polys) != self.nvars:
            raise ValueError("need one polynomial per variable")
        target = tuple(vars) if vars is not None else polys[0].vars
        pw = [dict() for _ in polys]

        def power(i, x):
            p = pw[i].get(x)
            if p is None:
                if x == 1:
                    p = polys[i]
                elif x - 1 in pw[i]:
                    p = pw[i][x - 1] * polys[i]
                else:
                    p = polys[i] ** x
                pw[i][x] = p
            return p

        acc = {}
        for e, c in sorted(self.terms.items(), key=lambda t: grlex_key(t[0])):
            t = None
            for i, x in enumerate(e):
                if x:
                    t = power(i, x) if t is None else t * power(i, x)
            if t is None:
                t = MultiPoly.const(c, target)
            else:
                t = t * c
            for ee, cc in t.terms.items():
                v = acc.get(ee)
                acc[ee] = cc if v is None else v + cc
        return MultiPoly._raw(target, {e: c for e, c in acc.items() if not _is_zero(c)})

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.vars, out)

    def map_coeffs(self, fn):
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def to_complex(self):
        return MultiPoly._raw(self.vars, {e: complex(c) for e, c in self.terms.items()})

    def rename(self, vars):
        if len(vars) != self.nvars:
            raise ValueError("rename needs the same number of variables")
        return MultiPoly._raw(tuple(vars), dict(self.terms))

    def embed(self, vars, positions):
        """Re-express in a larger variable set; variable i goes to ``positions[i]``."""
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in enumerate(e):
                ne[positions[i]] += x
            out[tuple(ne)] = c
        return MultiPoly._raw(tuple(vars), out)

    def monomial_content(self):
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def shift_down(self, m):
        return MultiPoly._raw(self.vars, {tuple(a - b for a, b in zip(e, m)): c for e, c in self.terms.items()})

    def shift_up(self, m):
        return MultiPoly._raw(self.vars, {tuple(a + b for a, b in zip(e, m)): c for e, c in self.terms.items()})

    # formatting
    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def __str__(self):
        return format_poly(self)


def _coeff_str(c):
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, FieldElement):
        return str(c)
    if isinstance(c, complex):
        if c.imag == 0:
            return repr(c.real)
        return f"({c.real!r}{c.imag:+}*i)"
    return repr(c)


def format_poly(p):
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[e]
        mon = "*".join(v if x == 1 else f"{v}^{x}" for v, x in zip(p.vars, e) if x)
        neg = False
        if isinstance(c, Fraction) and c < 0:
            neg, c = True, -c
        cs = _coeff_str(c)
        if not mon:
            body = cs
        elif c == 1:
            body = mon
        else:
            body = f"{cs}*{mon}"
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def exact_divide(a, b):
    """Return ``a / b`` if ``b`` divides ``a`` exactly, else ``None``."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return MultiPoly.zero(a.vars)
    lb = b.leading_exponent()
    lcb = b.terms[lb]
    inv = 1 / lcb
    if a.total_degree() < b.total_degree():
        return None
    btail = [(e, c) for e, c in b.terms.items() if e != lb]
    rem = dict(a.terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    q = {}
    while rem:
        while True:
            negd, nege = heapq.heappop(heap)
            e = tuple(-x for x in nege)
            if e in rem:
                break
        c = rem.pop(e)
        # remove duplicates of this key from the heap lazily
        diff = tuple(x - y for x, y in zip(e, lb))
        if any(x < 0 for x in diff):
            return None
        qc = c * inv
        q[diff] = qc
        for eb, cb in btail:
            k = tuple(x + y for x, y in zip(diff, eb))
            v = rem.get(k)
            if v is None:
                rem[k] = -qc * cb
                heapq.heappush(heap, (-sum(k), tuple(-x for x in k)))
            else:
                s = v - qc * cb
                if _is_zero(s):
                    del rem[k]
                else:
                    rem[k] = s
    return MultiPoly._raw(a.vars, q)


def divides(b, a):
    return exact_divide(a, b) is not None


# greatest common divisors


def _require_exact(*polys):
    field = None
    for p in polys:
        f = p.field()
        if f is complex:
            raise FieldError("gcd needs exact coefficients")
        if f is not None:
            if field is not None and f != field:
                raise IncompatibleFieldError(f"cannot combine {field} with {f}")
            field = f
    return field


def _coeffs_in(p, v):
    """Split ``p`` as a polynomial in variable ``v``: {degree: coefficient poly}."""
    out = {}
    for e, c in p.terms.items():
        d = e[v]
        ne = e[:v] + (0,) + e[v + 1:]
        out.setdefault(d, {})[ne] = c
    return {d: MultiPoly._raw(p.vars, t) for d, t in out.items()}


def _deg_in(p, v):
    return max((e[v] for e in p.terms), default=-1)


def _content_in(p, v):
    coeffs = sorted(_coeffs_in(p, v).values(), key=lambda q: len(q.terms))
    g = coeffs[0].normalize()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _gcd_rec(g, c)
    if g.is_constant():
        return MultiPoly.const(1, p.vars)
    return g


def _pp_in(p, v):
    c = _content_in(p, v)
    if not c.is_constant():
        p = exact_divide(p, c)
    return p.normalize()


def _prem(a, b, v):
    """Pseudo-remainder of ``a`` by ``b`` in variable ``v``."""
    db = _deg_in(b, v)
    cb = _coeffs_in(b, v)
    lcb = cb[db]
    r = a
    da = _deg_in(r, v)
    while not r.is_zero() and da >= db:
        cr = _coeffs_in(r, v)
        lcr = cr[da]
        e = [0] * r.nvars
        e[v] = da - db
        shift = MultiPoly.monomial(e, r.vars)
        r = r * lcb - b * lcr * shift
        da = _deg_in(r, v)
    return r


def _gcd_rec(a, b):
    if a.is_zero():
        return b.normalize()
    if b.is_zero():
        return a.normalize()
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(1, a.vars)
    ma, mb = a.monomial_content(), b.monomial_content()
    mono = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(ma):
        a = a.shift_down(ma)
    if any(mb):
        b = b.shift_down(mb)
    g = _gcd_nomono(a, b)
    if any(mono):
        g = g.shift_up(mono)
    return g.normalize()


def _gcd_nomono(a, b):
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(1, a.vars)
    ua, ub = set(a.variables_used()), set(b.variables_used())
    common = ua & ub
    if not common:
        # a variable occurring in only one input forces the gcd into its content
        pass
    # main variable: one occurring in both with the smallest combined degree
    cand = common or (ua | ub)
    v = min(cand, key=lambda i: (_deg_in(a, i) + _deg_in(b, i), i))
    if v not in ua:
        return _gcd_rec(_content_in(b, v), a)
    if v not in ub:
        return _gcd_rec(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    c = _gcd_rec(ca, cb)
    pa = a if ca.is_constant() else exact_divide(a, ca)
    pb = b if cb.is_constant() else exact_divide(b, cb)
    pa, pb = pa.normalize(), pb.normalize()
    if _deg_in(pa, v) < _deg_in(pb, v):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if r.is_zero():
            g = pb
            break
        if _deg_in(r, v) == 0:
            g = MultiPoly.const(1, a.vars)
            break
        pa, pb = pb, _pp_in(r, v)
    g = _pp_in(g, v) if not g.is_constant() else g
    return (c * g).normalize()


def _dehomogenize(p, i):
    out = {}
    for e, c in p.terms.items():
        ne = e[:i] + (0,) + e[i + 1:]
        v = out.get(ne)
        out[ne] = c if v is None else v + c
    return MultiPoly._raw(p.vars, {e: c for e, c in out.items() if not _is_zero(c)})


def _homogenize(p, i):
    d = p.total_degree()
    out = {}
    for e, c in p.terms.items():
        ne = list(e)
        ne[i] = d - sum(e)
        out[tuple(ne)] = c
    return MultiPoly._raw(p.vars, out)


def poly_gcd(a, b):
    """Greatest common divisor normalized to grlex leading coefficient 1.

    Homogeneous inputs are dehomogenized in one variable first (after the
    common monomial factor is pulled out), which saves one recursion level.
    """
    if not isinstance(a, MultiPoly) or not isinstance(b, MultiPoly):
        raise TypeError("poly_gcd takes two MultiPoly values")
    a._check(b)
    _require_exact(a, b)
    if a.is_zero() or b.is_zero():
        return _gcd_rec(a, b)
    ma, mb = a.monomial_content(), b.monomial_content()
    mono = tuple(min(x, y) for x, y in zip(ma, mb))
    a0, b0 = a.shift_down(ma), b.shift_down(mb)
    if a0.is_constant() or b0.is_constant():
        return MultiPoly.monomial(mono, a.vars).normalize()
    if a.nvars > 1 and a0.is_homogeneous() and b0.is_homogeneous():
        used = set(a0.variables_used()) & set(b0.variables_used())
        i = min(used) if used else 0
        g = _gcd_rec(_dehomogenize(a0, i), _dehomogenize(b0, i))
        g = _homogenize(g, i) if not g.is_constant() else MultiPoly.const(1, a.vars)
    else:
        g = _gcd_rec(a0, b0)
    if any(mono):
        g = g.shift_up(mono)
    return g.normalize()


# the PRS route stays reachable for cross-checks
MODULAR_GCD = True


def gcd_many(polys, rng=None):
    """gcd of a list of polynomials.

    Two random integer combinations are reduced first and the candidate is then
    confirmed by exact division of every input, so the answer is deterministic
    even though the shortcut is randomized.
    """
    import random

    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of nothing but zeros")
    if len(polys) == 1:
        return polys[0].normalize()
    _require_exact(*polys)
    vars = polys[0].vars
    mono = polys[0].monomial_content()
    for p in polys[1:]:
        mono = tuple(min(x, y) for x, y in zip(mono, p.monomial_content()))
    polys = [p.shift_down(mono) for p in polys] if any(mono) else polys
    # quick exit: a constant or coprime pair
    if any(p.is_constant() for p in polys):
        return MultiPoly.monomial(mono, vars).normalize()
    rng = rng or random.Random(0x5EED)
    homog = all(p.is_homogeneous() for p in polys)
    degs = {p.total_degree() for p in polys}
    g = None
    if homog and MODULAR_GCD and max(degs) >= 3 and polys[0].nvars > 1:
        from birdyn.algebra.modgcd import modular_gcd

        g = modular_gcd(polys)
    if g is None and len(polys) > 2 and homog and len(degs) == 1:
        for _ in range(3):
            c1 = sum((p * rng.randint(1, 97) for p in polys[1:]), polys[0] * 0)
            c1 = polys[0] + c1
            c2 = sum((p * rng.randint(1, 97) for p in polys), polys[0] * 0)
            cand = poly_gcd(c1, c2)
            if all(divides(cand, p) for p in polys):
                g = cand
                break
    if g is None:
        polys = sorted(polys, key=lambda p: len(p.terms))
        g = polys[0].normalize()
        for p in polys[1:]:
            if g.is_constant():
                break
            g = poly_gcd(g, p)
    if any(mono):
        g = g.shift_up(mono)
    return g.normalize()


# text syntax

_LITERALS = {"w": 3, "z6": 6, "i": 4}


def default_vars(k, prefix="x"):
    return tuple(f"{prefix}{i}" for i in range(k + 1))


def infer_vars(texts):
    import re

    names = set()
    for t in texts:
        names.update(re.findall(r"\b([a-vx-y][0-9]+)\b", t))
    groups = {}
    for n in names:
        groups.setdefault(n[0], set()).add(int(n[1:]))
    out = []
    for prefix in sorted(groups, key=lambda p: (p != "x", p)):
        top = max(groups[prefix])
        out.extend(f"{prefix}{i}" for i in range(top + 1))
    return tuple(out)


def parse_poly(text, vars=None, params=None):
    """Parse ``"x1*x2 - 3/2*x0^2"`` style text.

    ``w``, ``z6`` and ``i`` denote primitive cube, sixth and fourth roots of
    unity.  ``params`` maps extra names to coefficient values.
    """
    if vars is None:
        vars = infer_vars([text])
    vars = tuple(vars)
    params = dict(params or {})
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise ParseError(f"unsupported literal {node.value!r} in {text!r}")
            v = node.value
            return MultiPoly.const(Fraction(v) if isinstance(v, int) else v, vars)
        if isinstance(node, ast.Name):
            name = node.id
            if name in vars:
                return MultiPoly.var(name, vars)
            if name in params:
                return MultiPoly.const(params[name], vars)
            if name in _LITERALS:
                return MultiPoly.const(zeta(_LITERALS[name]), vars)
            raise ParseError(f"unknown name {name!r} in {text!r}")
        if isinstance(node, ast.UnaryOp):
            val = walk(node.operand)
            if isinstance(node.op, ast.USub):
                return -val
            if isinstance(node.op, ast.UAdd):
                return val
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ParseError(f"division by a non-constant in {text!r}")
                return left * (1 / right.constant_value())
            if isinstance(node.op, ast.Pow):
                if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                    raise ParseError(f"exponents must be integer literals in {text!r}")
                return left ** node.right.value
        raise ParseError(f"unsupported syntax {ast.dump(node)[:40]} in {text!r}")

    return walk(tree)
