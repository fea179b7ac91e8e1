"""Builtin maps addressable by name from the command line."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from birdyn.errors import ParseError
from birdyn.families import bck_map, bck_params, fa_map, lf_map, lyness8a, lyness8b, period12
from birdyn.families.planar import LinearFractionalParams


def parse_number(text):
    """'3', '-1/2' -> Fraction; '0.25', '1e-3' -> float; '1+2j' -> complex."""
    s = str(text).strip().replace(" ", "")
    if not s:
        raise ParseError("empty number")
    # decimal literals are measurements, not exact rationals
    if not any(ch in s.lower() for ch in ".ej"):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            pass
    try:
        return float(s)
    except ValueError:
        pass
    try:
        return complex(s)
    except ValueError:
        raise ParseError(f"not a number: {text!r}") from None


@dataclass(frozen=True)
class Builtin:
    name: str
    build: Callable
    params: tuple
    period: int | None
    summary: str


def _lf(a=Fraction(2, 3), b=Fraction(5, 7)):
    return lf_map(LinearFractionalParams(a, b))


def _bck(n=2, c=1):
    return bck_map(bck_params(int(n), c=c))


def _fa(a=1):
    return fa_map(a)


BUILTINS = {
    "lyness8a": Builtin("lyness8a", lyness8a, (), 8, "(x,y,z) -> (y, z, (1+y+z)/x)"),
    "lyness8b": Builtin("lyness8b", lyness8b, (), 8, "(x,y,z) -> (y, z, (-1-y+z)/x)"),
    "period12": Builtin("period12", period12, (), 12, "(x,y,z) -> (y, z, (1 + e^2 x + e y + z)/x), e = zeta_6"),
    "fa": Builtin("fa", _fa, ("a",), None, "(x,y,z) -> (y, z, (a + w y + z)/x), w = zeta_3"),
    "bck": Builtin("bck", _bck, ("n", "c"), None, "cubic L o J on P^3 under the (a, c, n) constraint"),
    "lf": Builtin("lf", _lf, ("a", "b"), None, "(x,y) -> (y, (y+a)/(x+b))"),
}
ALIASES = {"lyness8": "lyness8a"}


def lookup(name):
    key = ALIASES.get(name, name)
    if key not in BUILTINS:
        raise ParseError(f"unknown builtin {name!r}; known: {', '.join(sorted(BUILTINS))}")
    return BUILTINS[key]


def build(name, params=None):
    """Instantiate a builtin with parameters given as {name: value-string}."""
    entry = lookup(name)
    kwargs = {}
    for k, v in (params or {}).items():
        if k not in entry.params:
            raise ParseError(f"builtin {entry.name!r} has no parameter {k!r}")
        kwargs[k] = parse_number(v) if isinstance(v, str) else v
    return entry.build(**kwargs)
