"""Real slices of f_{a,b}: images of a segment, their projective length, and polar plot data.

Points are kept as unit vectors in R^3 (homogeneous coordinates of RP^2), so
crossing the pole line x = -b is continuous and no coordinate is ever
infinite.  The affine point (x, y) sits at (1, x, y) / sqrt(1 + r^2), which is
the embedding whose polar angle from (1, 0, 0) is rho = arctan(r).  Distances
are chordal on that sphere, modulo the antipodal identification.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from birdyn.errors import InvalidParameterError, NoConvergence, ValidationError

DEFAULT_CHORD_TOL = 5e-3
DEFAULT_MAX_VERTICES = 400_000
MIN_PARAM_GAP = 1e-13
# |x0| below this (on the unit sphere) counts as the line at infinity
INFINITY_EPS = 1e-12


def _unit(v):
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    return v / n


def _lift(xy):
    xy = np.asarray(xy, dtype=float)
    return _unit(np.column_stack([np.ones(len(xy)), xy[:, 0], xy[:, 1]]))


def chordal(u, v):
    """Chordal distance on RP^2 between unit vectors (rows), antipodes identified."""
    return np.minimum(np.linalg.norm(u - v, axis=-1), np.linalg.norm(u + v, axis=-1))


@dataclass
class Polyline:
    """An ordered curve in RP^2; ``breaks[i]`` marks a pen-up between vertex i-1 and i."""

    points: np.ndarray
    params: np.ndarray
    breaks: np.ndarray
    truncated: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if not np.all(np.isfinite(self.points)):
            raise ValidationError("polyline vertices must be finite")

    @classmethod
    def segment(cls, start=(0.0, -1.0), end=(0.0, 1.0), samples=64):
        t = np.linspace(0.0, 1.0, samples + 1)
        xy = np.outer(1 - t, start) + np.outer(t, end)
        return cls(_lift(xy), t, np.zeros(len(t), dtype=bool))

    def __len__(self):
        return len(self.points)

    @property
    def vertices(self):
        """Affine (x, y) of the vertices off the line at infinity."""
        p = self.points
        finite = np.abs(p[:, 0]) > INFINITY_EPS
        return p[finite, 1:] / p[finite, :1]

    @property
    def length(self):
        if len(self.points) < 2:
            return 0.0
        d = chordal(self.points[:-1], self.points[1:])
        # unresolved jumps (indeterminacy) are not curve length
        d = np.where(self.breaks[1:] & (d > self.meta.get("chord_tol", DEFAULT_CHORD_TOL)), 0.0, d)
        return float(d.sum())


def real_lf_step(a, b):
    """Homogeneous real f_{a,b} on rows of unit vectors."""
    a, b = float(a), float(b)

    def step(p):
        x0, x1, x2 = p[:, 0], p[:, 1], p[:, 2]
        beta = b * x0 + x1
        return np.column_stack([x0 * beta, x2 * beta, x0 * (a * x0 + x2)])

    return step


def linear_step(matrix):
    """A 3x3 real matrix acting on homogeneous coordinates (control experiments)."""
    m = np.asarray(matrix, dtype=float)
    if m.shape != (3, 3):
        raise InvalidParameterError("linear control map must be 3x3")
    return lambda p: p @ m.T


def rotation_step(angle):
    c, s = math.cos(angle), math.sin(angle)
    return linear_step([[1, 0, 0], [0, c, -s], [0, s, c]])


def _resolve(params_or_step):
    if callable(params_or_step):
        return params_or_step
    a, b = params_or_step.numeric()
    if abs(a.imag) > 0 or abs(b.imag) > 0:
        raise InvalidParameterError("real dynamics needs real parameters")
    return real_lf_step(a.real, b.real)


def _apply(step, p, times):
    for _ in range(times):
        p = step(p)
        n = np.linalg.norm(p, axis=-1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            p = np.where(n > 0, p / np.where(n > 0, n, 1.0), 0.0)
    return p


def _align(points):
    """Flip signs so consecutive unit vectors point the same way."""
    out = points.copy()
    for i in range(1, len(out)):
        if np.dot(out[i], out[i - 1]) < 0:
            out[i] = -out[i]
    return out


def _refine(step, start_fn, n, params, points, tol, budget):
    """Insert parameter midpoints, a whole sweep at a time, until every chord is below ``tol``."""
    ts, ps = np.asarray(params, dtype=float), np.asarray(points, dtype=float)
    stuck = np.zeros(len(ts), dtype=bool)
    truncated = False
    while True:
        alive = np.any(ps != 0, axis=1)
        d = chordal(ps[:-1], ps[1:])
        want = (d > tol) & alive[:-1] & alive[1:] & ~stuck[1:]
        tiny = want & (np.diff(ts) < MIN_PARAM_GAP)
        stuck[1:] |= tiny
        want &= ~tiny
        idx = np.nonzero(want)[0]
        if len(idx) == 0:
            break
        room = budget - len(ts)
        if room <= 0:
            truncated = True
            stuck[1:] |= want
            break
        if len(idx) > room:
            truncated = True
            stuck[idx[room:] + 1] = True
            idx = idx[:room]
        tm = 0.5 * (ts[idx] + ts[idx + 1])
        pm = _apply(step, start_fn(tm), n)
        ts = np.insert(ts, idx + 1, tm)
        ps = np.insert(ps, idx + 1, pm, axis=0)
        stuck = np.insert(stuck, idx + 1, False)
    return ts, ps, stuck, truncated


def iterate_segment(params, segment=None, n=10, max_vertices=DEFAULT_MAX_VERTICES, chord_tol=DEFAULT_CHORD_TOL):
    """[L, f L, ..., f^n L] with adaptive refinement of each image.

    ``params`` is a real LinearFractionalParams or a step callable on
    homogeneous rows.  ``segment`` must be a straight Polyline.segment (its
    parametrization is reused for refinement); default is the y-axis from
    (0, -1) to (0, 1).  Every image vertex is f^j of a point of L computed
    from scratch, so refinement never compounds interpolation error.
    """
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    if chord_tol <= 0 or max_vertices < 2:
        raise InvalidParameterError("chord_tol must be positive and max_vertices >= 2")
    step = _resolve(params)
    seg = segment if segment is not None else Polyline.segment()
    p0, p1 = seg.points[0], seg.points[-1]
    if seg.params[0] != 0 or seg.params[-1] != 1:
        raise ValidationError("segment must be parametrized over [0, 1]")

    # straight chord in homogeneous coordinates; equals the affine segment up to reparametrization
    def start_fn(t):
        return _unit(np.outer(1 - t, p0) + np.outer(t, p1 if np.dot(p0, p1) >= 0 else -p1))

    out = [seg]
    ts, ps = seg.params, seg.points
    for j in range(1, n + 1):
        img = _apply(step, ps, 1)
        ts, ps, unresolved, truncated = _refine(step, start_fn, j, ts, img, chord_tol, max_vertices)
        ps = _align(ps)
        good = np.any(ps != 0, axis=1)
        ts, ps, unresolved = ts[good], ps[good], unresolved[good]
        sign = np.sign(ps[:, 0])
        pole = np.zeros(len(ps), dtype=bool)
        pole[1:] = (sign[1:] * sign[:-1]) < 0
        breaks = pole | unresolved
        out.append(Polyline(ps, ts, breaks, truncated, {"iterate": j, "chord_tol": chord_tol}))
        if truncated:
            break
    return out


def length_growth_report(polylines, window=1):
    """Rows (n, length, ratio); ratio is (L_n / L_{n-window})^(1/window), None for n < window."""
    if len(polylines) < 3:
        raise InvalidParameterError("need at least 3 polylines")
    if window < 1:
        raise InvalidParameterError("window must be >= 1")
    lengths = [p.length if isinstance(p, Polyline) else float(p) for p in polylines]
    rows = []
    for i, L in enumerate(lengths):
        if i < window or lengths[i - window] <= 0:
            rows.append((i, L, None))
        else:
            rows.append((i, L, (L / lengths[i - window]) ** (1.0 / window)))
    return rows


@dataclass(frozen=True)
class PolarPlotPoint:
    rho: float
    theta: float


def to_polar(points):
    """(rho, theta) = (arctan |v|, atan2(v_y, v_x) in [0, 2 pi)).

    Accepts affine 2-vectors or homogeneous unit 3-vectors; the latter reach
    rho = pi/2 on the line at infinity.
    """
    out = []
    for v in points:
        v = [float(c) for c in v]
        if len(v) == 2:
            r = math.hypot(v[0], v[1])
            rho = math.atan(r) if math.isfinite(r) else math.pi / 2
            x, y = v
        elif len(v) == 3:
            s = -1.0 if v[0] < 0 else 1.0
            x, y = s * v[1], s * v[2]
            rho = math.atan2(math.hypot(x, y), abs(v[0]))
        else:
            raise ValidationError("points must have 2 or 3 coordinates")
        theta = math.atan2(y, x) if (x or y) else 0.0
        if theta < 0:
            theta += 2 * math.pi
        if theta >= 2 * math.pi:
            theta = 0.0
        out.append(PolarPlotPoint(rho, theta))
    return out


def polar_csv(polylines, iterates=None):
    """CSV with columns iterate, theta, rho, break."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["iterate", "theta", "rho", "break"])
    for j, pl in enumerate(polylines):
        if iterates is not None and j not in iterates:
            continue
        for pt, brk in zip(to_polar(pl.points), pl.breaks):
            w.writerow([j, f"{pt.theta:.10g}", f"{pt.rho:.10g}", int(bool(brk))])
    return buf.getvalue()


def fixed_points(params, seeds=None, tol=1e-12, max_iter=50):
    """Real affine fixed points of (x, y) -> (y, (y + a)/(x + b)) by Newton from ``seeds``."""
    a, b = (z.real for z in params.numeric())
    seeds = seeds if seeds is not None else [(s, s) for s in np.linspace(-3, 3, 13)]
    found = []
    for sx, sy in seeds:
        v = np.array([sx, sy], dtype=float)
        for _ in range(max_iter):
            x, y = v
            if abs(x + b) < 1e-14:
                break
            F = np.array([y - x, (y + a) / (x + b) - y])
            if np.linalg.norm(F) < tol:
                if not any(np.linalg.norm(v - w) < 1e-8 for w in found):
                    found.append(v.copy())
                break
            J = np.array([[-1.0, 1.0], [-(y + a) / (x + b) ** 2, 1.0 / (x + b) - 1.0]])
            try:
                v = v - np.linalg.solve(J, F)
            except np.linalg.LinAlgError:
                break
    if not found and seeds:
        raise NoConvergence("no fixed point found from the seeds", {"seeds": len(seeds)})
    return [tuple(float(c) for c in w) for w in sorted(found, key=lambda w: (w[0], w[1]))]
