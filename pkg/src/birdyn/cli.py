"""Command-line front end.

Every subcommand writes one structured document (JSON by default) and exits
with 0 on success, 2 when the identity it checks does not hold, and 1 on
usage or input errors.  ``--inject-fault`` perturbs the object under test so
the failure path can be exercised on purpose.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from birdyn import __version__
from birdyn.errors import BirdynError, CertificationFailure, NoConvergence, ParseError
from birdyn.registry import BUILTINS, build, parse_number

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2
SCHEMA_VERSION = 1
TOL_ENV = "BIRDYN_TOL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed verification here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    subcommand: str
    args: dict
    output: str | None = None
    fmt: str = "json"
    tol: float = 1e-9
    inject_fault: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.fmt not in ("json", "csv", "table"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if not self.tol > 0:
            raise UsageError("tolerance must be positive")


# input helpers


def _int_list(text, name):
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--{name}: expected comma-separated integers, got {text!r}") from None


def _json_arg(text, name):
    if text is None:
        return None
    src = text
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                src = fh.read()
        except OSError as exc:
            raise UsageError(f"--{name}: cannot read {text[1:]}: {exc.strerror}") from None
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{name}: invalid JSON ({exc.msg} at position {exc.pos})") from None


def _params(pairs):
    out = {}
    for p in pairs or []:
        if "=" not in p:
            raise UsageError(f"--param expects name=value, got {p!r}")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _num(text, name):
    try:
        return parse_number(text)
    except ParseError:
        raise UsageError(f"--{name}: not a number: {text!r}") from None


def _load_map(args):
    from birdyn.projective import HomogeneousMap

    if getattr(args, "builtin", None):
        try:
            return build(args.builtin, _params(args.param)), args.builtin
        except ParseError as exc:
            raise UsageError(f"--builtin: {exc}") from None
    data = _json_arg(getattr(args, "map", None), "map")
    if data is None:
        raise UsageError("give --builtin NAME or --map JSON")
    try:
        return HomogeneousMap.from_json(data), "user"
    except ParseError as exc:
        raise UsageError(f"--map: {exc}") from None


def _enc(c):
    if isinstance(c, bool) or c is None:
        return c
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else int(c)
    if isinstance(c, float):
        return c
    if isinstance(c, complex):
        return c.real if c.imag == 0 else [c.real, c.imag]
    return str(c)


def _perturb(f):
    """D o f with D = diag(1, ..., 1, 2): breaks periodicity and involutions."""
    from birdyn.projective import HomogeneousMap, compose_reduce

    n = len(f.vars)
    D = [[(2 if i == j == n - 1 else int(i == j)) for j in range(n)] for i in range(n)]
    return compose_reduce(HomogeneousMap.linear(D), f)


# subcommands; each returns (status, document, table rows or None, csv text or None)


def cmd_degseq(cfg):
    from birdyn.degrees import degree_sequence, delta_estimate

    a = cfg.args
    if a.n < 1:
        raise UsageError("--n must be positive")
    f, name = _load_map(a)
    seq = degree_sequence(f, a.n, method=a.method, time_budget=a.time_budget)
    est = delta_estimate(seq)
    doc = {"map": name, "n": a.n, "method": seq.method, "degrees": seq.values, "truncated": seq.truncated,
           "delta_estimate": est, "exact": False}
    rows = [("n", "degree")] + [(i + 1, d) for i, d in enumerate(seq.scalars())] + [("delta_est", f"{est:.6f}")]
    return EXIT_OK, doc, rows, None


def _orbit_data(a):
    from birdyn.errors import ValidationError
    from birdyn.lattice import OrbitData

    if a.k is None or a.lengths is None or a.sigma is None:
        raise UsageError("orbit data needs --k, --lengths and --sigma")
    try:
        return OrbitData(a.k, tuple(_int_list(a.lengths, "lengths")), tuple(_int_list(a.sigma, "sigma")))
    except ValidationError as exc:
        raise UsageError(f"orbit data: {exc}") from None


def cmd_charpoly(cfg):
    from birdyn.algebra.roots import roots
    from birdyn.lattice import OrbitData, chi_polynomial, orbit_data_pullback

    a = cfg.args
    data = _orbit_data(a)
    if cfg.inject_fault:
        data = OrbitData(data.k, data.lengths[:-1] + (data.lengths[-1] + 1,), data.sigma)
    m = orbit_data_pullback(data)
    chi = m.char_poly()
    rts = roots(chi, tol=min(cfg.tol, 1e-12))
    largest = max(abs(z) for z in rts)
    doc = {"orbit_data": data.to_json(), "char_poly": [_enc(c) for c in chi.coeffs], "largest_root": largest,
           "tolerance": cfg.tol, "exact": True}
    if a.matrix:
        doc["matrix"] = m.tolist()
        doc["labels"] = list(m.labels)
    status = EXIT_OK
    if a.expect_chi is not None:
        ok = chi == chi_polynomial(a.expect_chi)
        doc["expected_chi_N"] = a.expect_chi
        doc["matches_expected"] = ok
        status = EXIT_OK if ok else EXIT_FAILED
    rows = [("field", "value"), ("char_poly (low first)", " ".join(str(_enc(c)) for c in chi.coeffs)),
            ("largest_root", f"{largest:.10f}")]
    return status, doc, rows, None


def cmd_delta(cfg):
    a = cfg.args
    if a.monomial is not None:
        from birdyn.monomial import monomial_degrees

        A = _json_arg(a.monomial, "monomial")
        if not isinstance(A, list) or not all(isinstance(r, list) for r in A):
            raise UsageError("--monomial: expected a JSON array of integer rows")
        try:
            degs = monomial_degrees(A, tol=cfg.tol)
        except (BirdynError, ValueError) as exc:
            raise UsageError(f"--monomial: {exc}") from None
        doc = {"route": "monomial", "matrix": A, "degrees": degs, "tolerance": cfg.tol, "exact": False}
        rows = [("l", "delta_l")] + [(i, f"{d:.10f}") for i, d in enumerate(degs)]
        return EXIT_OK, doc, rows, None
    if a.coxeter is not None:
        return _coxeter([*_int_list(a.coxeter, "coxeter")], cfg)
    from birdyn.lattice import delta1_from_lattice, orbit_data_pullback

    data = _orbit_data(a)
    d = delta1_from_lattice(orbit_data_pullback(data))
    doc = {"route": "lattice", "orbit_data": data.to_json(), "delta1": d, "tolerance": cfg.tol, "exact": False}
    return EXIT_OK, doc, [("field", "value"), ("delta1", f"{d:.10f}")], None


def cmd_cremona(cfg):
    from birdyn.lattice import cremona_pullback
    from birdyn.projective import compose_reduce, cremona

    k = cfg.args.k
    if k < 1:
        raise UsageError("--k must be >= 1")
    J = cremona(k)
    other = _perturb(J) if cfg.inject_fault else J
    map_ok = compose_reduce(J, other).is_identity()
    doc = {"k": k, "map": J.to_json(), "map_involution": map_ok, "exact": True}
    ok = map_ok
    if k >= 2:
        P = cremona_pullback(k)
        lat_ok = (P @ P).matrix.is_identity()
        doc.update({"pullback": P.tolist(), "labels": list(P.labels), "pullback_involution": lat_ok})
        ok = ok and lat_ok
    rows = [("check", "holds"), ("J o J = id", map_ok)]
    if k >= 2:
        rows.append(("(J*)^2 = I", doc["pullback_involution"]))
    return (EXIT_OK if ok else EXIT_FAILED), doc, rows, None


def _vn_row(p):
    return {"a": _enc(p.a), "b": _enc(p.b)}


def _grid_seed(args):
    from birdyn.families.planar import vn_check, vn_search

    N, seed, tol = args
    try:
        p = vn_search(N, seed, tol=1e-11)
    except NoConvergence:
        return None
    ok, _ = vn_check(p, N, tol=tol)
    return (complex(p.a).real, complex(p.b).real) if ok else None


def cmd_vn(cfg):
    from birdyn.families.planar import LinearFractionalParams, vn_check, vn_search

    a = cfg.args
    if a.N < 1:
        raise UsageError("--N must be >= 1")
    modes = [m for m in ("check", "search", "search_grid") if getattr(a, m)]
    if len(modes) != 1:
        raise UsageError("choose exactly one of --check, --search, --search-grid")
    mode = modes[0]
    if mode == "check":
        if a.a is None or a.b is None:
            raise UsageError("--check needs --a and --b")
        pa, pb = _num(a.a, "a"), _num(a.b, "b")
        if cfg.inject_fault:
            pa = pa + Fraction(1, 1000) if not isinstance(pa, (float, complex)) else pa + 1e-3
        params = LinearFractionalParams(pa, pb)
        ok, trace = vn_check(params, a.N, tol=cfg.tol)
        doc = {"mode": "check", "N": a.N, "params": _vn_row(params), "in_VN": ok, "trace": trace.to_json(),
               "tolerance": cfg.tol, "exact": params.exact}
        rows = [("field", "value"), ("in V_N", ok), ("terminal", trace.terminal.tag),
                ("residual", trace.residual)]
        return (EXIT_OK if ok else EXIT_FAILED), doc, rows, None
    if mode == "search":
        seed = tuple(complex(_num(s, "seed")) for s in a.seed.split(","))
        if len(seed) != 2:
            raise UsageError("--seed expects a,b")
        seed = tuple(s.real if s.imag == 0 else s for s in seed)
        try:
            p = vn_search(a.N, seed, tol=a.search_tol, max_iter=a.max_iter)
        except NoConvergence as exc:
            doc = {"mode": "search", "N": a.N, "converged": False, "reason": str(exc),
                   "diagnostic": {k: _enc(v) if not isinstance(v, list) else [_enc(x) for x in v]
                                  for k, v in exc.diagnostic.items()}, "tolerance": a.search_tol, "exact": False}
            return EXIT_FAILED, doc, [("converged", False), ("reason", str(exc))], None
        if cfg.inject_fault:
            p = LinearFractionalParams(p.a + 1e-3, p.b)
        ok, trace = vn_check(p, a.N, tol=cfg.tol)
        doc = {"mode": "search", "N": a.N, "converged": True, "params": _vn_row(p), "verified": ok,
               "residual": trace.residual, "tolerance": a.search_tol, "check_tolerance": cfg.tol, "exact": False}
        rows = [("field", "value"), ("a", _enc(p.a)), ("b", _enc(p.b)), ("verified", ok)]
        return (EXIT_OK if ok else EXIT_FAILED), doc, rows, None
    # grid search: independent seeds over a worker pool
    try:
        ax, bx = a.search_grid.split(",")
        (a0, a1, na), (b0, b1, nb) = ([float(x) for x in s.split(":")] for s in (ax, bx))
    except ValueError:
        raise UsageError("--search-grid expects a0:a1:na,b0:b1:nb") from None
    import numpy as np

    seeds = [(x, y) for x in np.linspace(a0, a1, int(na)) for y in np.linspace(b0, b1, int(nb))]
    jobs = [(a.N, (float(x), float(y)), cfg.tol) for x, y in seeds]
    if a.workers and a.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=a.workers) as pool:
            results = list(pool.map(_grid_seed, jobs, chunksize=8))
    else:
        results = [_grid_seed(j) for j in jobs]
    found = []
    for r in results:
        if r is not None and not any(abs(r[0] - s[0]) + abs(r[1] - s[1]) < 1e-7 for s in found):
            found.append(r)
    found.sort()
    doc = {"mode": "search_grid", "N": a.N, "seeds": len(seeds), "solutions": [list(s) for s in found],
           "tolerance": cfg.tol, "exact": False}
    rows = [("a", "b")] + [(f"{s[0]:.10f}", f"{s[1]:.10f}") for s in found]
    return (EXIT_OK if found else EXIT_FAILED), doc, rows, None


def cmd_period(cfg):
    from birdyn.families.periodic import iterate_until_identity
    from birdyn.registry import lookup

    a = cfg.args
    f, name = _load_map(a)
    expect = a.expect
    if expect is None and a.builtin:
        expect = lookup(a.builtin).period
    limit = a.max if a.max is not None else (expect if expect else 24)
    if limit < 1:
        raise UsageError("--max must be positive")
    if cfg.inject_fault:
        f = _perturb(f)
    n = iterate_until_identity(f, limit)
    ok = n is not None and (expect is None or n == expect)
    doc = {"map": name, "period": n, "expected": expect, "searched_up_to": limit, "verified": ok, "exact": True}
    msg = f"period = {n}, verified" if ok else (f"period = {n}, expected {expect}" if n else
                                              f"no period <= {limit}")
    doc["message"] = msg
    return (EXIT_OK if ok else EXIT_FAILED), doc, [("result", msg)], None


def cmd_bck(cfg):
    from birdyn.families.bck import bck_map, bck_orbit_landing, bck_params
    from birdyn.families.probe import cohom_hyperbolicity_probe

    a = cfg.args
    if a.n < 2:
        raise UsageError("--n must be >= 2")
    shift = _num(a.shift, "shift")
    if cfg.inject_fault and shift == 0:
        shift = Fraction(1, 1000)
    try:
        params = bck_params(a.n, c=_num(a.c, "c"), shift=shift, exact=not a.numeric)
    except BirdynError as exc:
        raise UsageError(f"bck parameters: {exc}") from None
    trace = bck_orbit_landing(params, tol=cfg.tol)
    want = 4 * a.n
    landed = trace.landed("e0") and trace.terminal.step == want
    doc = {"params": params.to_json(), "a_exact": str(params.a) if params.exact else None, "shift": _enc(shift),
           "landing": trace.terminal.to_json(), "expected_step": want, "residual": trace.residual,
           "landed": landed, "tolerance": cfg.tol, "exact": params.exact}
    rows = [("field", "value"), ("terminal", trace.terminal.tag), ("expected step", want),
            ("residual", trace.residual)]
    if a.probe_n:
        probe = cohom_hyperbolicity_probe(bck_map(params), a.probe_n)
        doc["probe"] = probe.to_json() | {"difference": probe.difference, "n": a.probe_n}
        rows += [("delta1_est", f"{probe.delta1_est:.6f}"), ("delta2_est", f"{probe.delta2_est:.6f}")]
    return (EXIT_OK if landed else EXIT_FAILED), doc, rows, None


def cmd_certify(cfg):
    from birdyn.families.pseudo import bdk_candidate, exact_candidate, pseudo_auto_certify
    from birdyn.lattice import delta1_from_lattice, orbit_data_pullback

    a = cfg.args
    if (a.L is None) == (a.bdk is None):
        raise UsageError("give exactly one of --L or --bdk k,n")
    doc = {"tolerance": cfg.tol}
    if a.bdk is not None:
        kn = _int_list(a.bdk, "bdk")
        if len(kn) != 2:
            raise UsageError("--bdk expects k,n")
        try:
            cand = bdk_candidate(kn[0], kn[1], workers=a.multistart)
        except NoConvergence as exc:
            doc.update({"certified": False, "reason": str(exc), "exact": False})
            return EXIT_FAILED, doc, [("certified", False)], None
        L = cand.L
        doc["beta"] = [_enc(complex(b)) for b in cand.beta]
        doc["newton_residual"] = cand.residual
        if a.exact:
            L, vals = exact_candidate(cand)
            doc["beta_exact"] = [str(v) for v in vals]
    else:
        M = _json_arg(a.L, "L")
        if not isinstance(M, list) or not all(isinstance(r, list) for r in M):
            raise UsageError("--L: expected a JSON array of rows")
        L = [[_num(str(x), "L") for x in r] for r in M]
    if cfg.inject_fault:
        L = [list(r) for r in L]
        L[0][0] = L[0][0] + Fraction(1, 7) if not isinstance(L[0][0], (float, complex)) else L[0][0] + 1 / 7
    exact = all(not isinstance(x, (float, complex)) for r in L for x in r)
    doc["exact"] = exact
    try:
        data = pseudo_auto_certify(L, tol=cfg.tol)
    except CertificationFailure as exc:
        doc.update({"certified": False, "reason": exc.reason, "orbit": exc.orbit, "step": exc.step})
        return EXIT_FAILED, doc, [("certified", False), ("reason", exc.reason)], None
    except BirdynError as exc:
        raise UsageError(f"--L: {exc}") from None
    d = delta1_from_lattice(orbit_data_pullback(data))
    doc.update({"certified": True, "orbit_data": data.to_json(), "cyclic": data.is_cyclic(), "delta1": d})
    rows = [("field", "value"), ("lengths", data.lengths), ("sigma", data.sigma), ("delta1", f"{d:.10f}")]
    return EXIT_OK, doc, rows, None


def _coxeter(pqr, cfg):
    from birdyn.lattice import coxeter_element, delta1_from_lattice

    if len(pqr) != 3:
        raise UsageError("Coxeter data needs p, q, r")
    try:
        m = coxeter_element(*pqr)
    except BirdynError as exc:
        raise UsageError(f"coxeter: {exc}") from None
    d = delta1_from_lattice(m)
    chi = m.char_poly()
    doc = {"p": pqr[0], "q": pqr[1], "r": pqr[2], "size": m.size, "char_poly": [_enc(c) for c in chi.coeffs],
           "spectral_radius": d, "tolerance": cfg.tol, "exact": False}
    return EXIT_OK, doc, [("field", "value"), ("size", m.size), ("spectral_radius", f"{d:.10f}")], None


def cmd_coxeter(cfg):
    a = cfg.args
    return _coxeter([a.p, a.q, a.r], cfg)


def cmd_plot_real(cfg):
    from birdyn.families.planar import LinearFractionalParams
    from birdyn.real_dynamics import Polyline, iterate_segment, length_growth_report, polar_csv

    a = cfg.args
    if a.n < 2:
        raise UsageError("--n must be >= 2")
    pa, pb = float(_num(a.a, "a")), float(_num(a.b, "b"))
    start = tuple(float(x) for x in a.start.split(","))
    end = tuple(float(x) for x in a.end.split(","))
    if len(start) != 2 or len(end) != 2:
        raise UsageError("--start/--end expect x,y")
    pls = iterate_segment(LinearFractionalParams(pa, pb), Polyline.segment(start, end), a.n,
                          max_vertices=a.max_vertices, chord_tol=a.chord_tol)
    rep = length_growth_report(pls, window=a.window)
    doc = {"params": {"a": pa, "b": pb}, "n": len(pls) - 1, "window": a.window,
           "rows": [{"n": n, "length": L, "ratio": r} for n, L, r in rep],
           "truncated": any(p.truncated for p in pls), "chord_tolerance": a.chord_tol, "exact": False}
    table = [("n", "length", "ratio")] + [(n, f"{L:.6f}", "" if r is None else f"{r:.6f}") for n, L, r in rep]
    return EXIT_OK, doc, table, polar_csv(pls)


COMMANDS = {
    "degseq": cmd_degseq, "charpoly": cmd_charpoly, "delta": cmd_delta, "cremona": cmd_cremona,
    "vn": cmd_vn, "period": cmd_period, "bck": cmd_bck, "certify": cmd_certify,
    "coxeter": cmd_coxeter, "plot-real": cmd_plot_real,
}


def build_parser():
    p = _Parser(prog="birdyn", description="Birational dynamics computations.")
    p.add_argument("--version", action="version", version=f"birdyn {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "table"), default="json")
    common.add_argument("--output", "-o", help="write to this path instead of stdout")
    common.add_argument("--tol", type=float, help=f"numerical tolerance (default ${TOL_ENV} or 1e-9)")
    common.add_argument("--inject-fault", action="store_true", help="perturb the object under test")
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    def maparg(s):
        s.add_argument("--builtin", help=f"one of {', '.join(sorted(BUILTINS))} (alias lyness8)")
        s.add_argument("--map", help="map literal as JSON, or @path")
        s.add_argument("--param", action="append", help="builtin parameter name=value")

    def orbitargs(s):
        s.add_argument("--k", type=int)
        s.add_argument("--lengths")
        s.add_argument("--sigma")

    s = sub.add_parser("degseq", parents=[common], help="degree sequence and growth estimate")
    maparg(s)
    s.add_argument("--n", type=int, default=12)
    s.add_argument("--method", choices=("line", "symbolic"), default="line")
    s.add_argument("--time-budget", type=float)

    s = sub.add_parser("charpoly", parents=[common], help="orbit data -> pullback -> characteristic polynomial")
    orbitargs(s)
    s.add_argument("--matrix", action="store_true", help="include the pullback matrix")
    s.add_argument("--expect-chi", type=int, metavar="N", help="verify against t^(N+1)(t^3-t-1)+t^3+t^2-1")

    s = sub.add_parser("delta", parents=[common], help="dynamical degrees by the lattice or monomial route")
    orbitargs(s)
    s.add_argument("--monomial", help="exponent matrix as JSON rows")
    s.add_argument("--coxeter", help="p,q,r")

    s = sub.add_parser("cremona", parents=[common], help="the Cremona involution and its pullback")
    s.add_argument("--k", type=int, default=2)

    s = sub.add_parser("vn", parents=[common], help="V_N membership and parameter search")
    s.add_argument("--N", type=int, default=7)
    s.add_argument("--check", action="store_true")
    s.add_argument("--search", action="store_true")
    s.add_argument("--search-grid", metavar="a0:a1:na,b0:b1:nb")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--seed", default="-0.5,-0.42")
    s.add_argument("--search-tol", type=float, default=1e-11)
    s.add_argument("--max-iter", type=int, default=60)
    s.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("period", parents=[common], help="verify the period of a map")
    maparg(s)
    s.add_argument("--max", type=int, help="largest iterate to try")
    s.add_argument("--expect", type=int)

    s = sub.add_parser("bck", parents=[common], help="constrained cubic family: landing and degree probe")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--c", default="1")
    s.add_argument("--shift", default="0", help="perturb the constraint's right-hand side")
    s.add_argument("--numeric", action="store_true", help="use float parameters")
    s.add_argument("--probe-n", type=int, default=0)

    s = sub.add_parser("certify", parents=[common], help="orbit data of L o J")
    s.add_argument("--L", help="matrix as JSON rows (entries numbers or strings like '1/2')")
    s.add_argument("--bdk", help="k,n: solve for a companion-shaped L first")
    s.add_argument("--exact", action="store_true", help="recognize the solved L exactly before certifying")
    s.add_argument("--multistart", type=int, default=1, help="worker processes for the seed sweep")

    s = sub.add_parser("coxeter", parents=[common], help="W(p,q,r) Coxeter element spectral data")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--r", type=int, required=True)

    s = sub.add_parser("plot-real", parents=[common], help="real segment images: length growth and polar CSV")
    s.add_argument("--a", default="-0.4994965097426472")
    s.add_argument("--b", default="-0.4157606867667049")
    s.add_argument("--n", type=int, default=20)
    s.add_argument("--start", default="0,-1")
    s.add_argument("--end", default="0,1")
    s.add_argument("--chord-tol", type=float, default=5e-3)
    s.add_argument("--max-vertices", type=int, default=400_000)
    s.add_argument("--window", type=int, default=6)
    return p


def config_from_args(argv):
    ns = build_parser().parse_args(argv)
    tol = ns.tol
    if tol is None:
        env = os.environ.get(TOL_ENV)
        try:
            tol = float(env) if env else 1e-9
        except ValueError:
            raise UsageError(f"${TOL_ENV}: not a number: {env!r}") from None
    return RunConfig(ns.subcommand, ns, ns.output, ns.fmt, tol, ns.inject_fault)


def _render(cfg, doc, rows, csv_text):
    if cfg.fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=_enc) + "\n"
    if cfg.fmt == "csv":
        if csv_text is not None:
            return csv_text
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in rows or []:
            w.writerow(r)
        return buf.getvalue()
    width = max((len(str(r[0])) for r in rows or []), default=0)
    return "".join("  ".join([str(r[0]).ljust(width)] + [str(x) for x in r[1:]]) + "\n" for r in rows or [])


def run(cfg):
    """Execute one subcommand; returns the exit status and writes the rendered result."""
    doc_status, doc, rows, csv_text = COMMANDS[cfg.subcommand](cfg)
    doc = {"schema": f"birdyn/{cfg.subcommand}/v{SCHEMA_VERSION}", "subcommand": cfg.subcommand, **doc}
    text = _render(cfg, doc, rows, csv_text)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return doc_status


def main(argv=None):
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except BirdynError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
