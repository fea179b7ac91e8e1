import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birdyn.errors import InvalidParameterError, NoConvergence, ValidationError
from birdyn.families.planar import LinearFractionalParams
from birdyn.real_dynamics import (Polyline, chordal, fixed_points, iterate_segment, length_growth_report,
                                  polar_csv, rotation_step, to_polar)

V7 = LinearFractionalParams(-0.4994965097426472, -0.4157606867667049)
LEHMER = 1.17628081826


@pytest.fixture(scope="module")
def v7_run():
    return iterate_segment(V7, n=28)


def test_zero_iterates_return_the_segment():
    seg = Polyline.segment()
    out = iterate_segment(V7, seg, n=0)
    assert len(out) == 1 and out[0] is seg


def test_rotation_preserves_length():
    out = iterate_segment(rotation_step(0.7), n=6)
    lengths = [p.length for p in out]
    assert max(lengths) - min(lengths) < 1e-4
    assert lengths[-1] == pytest.approx(math.pi / 2, abs=1e-5)


def test_length_report_on_synthetic_lengths():
    rows = length_growth_report([1.0, 2.0, 4.0, 8.0])
    assert rows[0] == (0, 1.0, None)
    assert [r[2] for r in rows[1:]] == [2.0, 2.0, 2.0]
    rows = length_growth_report([1.0, 1.0, 4.0, 4.0, 16.0], window=2)
    assert rows[1][2] is None and rows[2][2] == pytest.approx(2.0) and rows[4][2] == pytest.approx(2.0)


def test_length_report_validation():
    with pytest.raises(InvalidParameterError):
        length_growth_report([1.0, 2.0])
    with pytest.raises(InvalidParameterError):
        length_growth_report([1.0, 2.0, 3.0], window=0)


def test_to_polar_cases():
    origin, = to_polar([(0.0, 0.0)])
    assert origin == (origin.__class__(0.0, 0.0))
    pt, = to_polar([(1.0, 0.0)])
    assert pt.rho == pytest.approx(math.pi / 4) and pt.theta == 0.0
    pt, = to_polar([(0.0, -2.0)])
    assert pt.theta == pytest.approx(3 * math.pi / 2)
    inf, = to_polar([(0.0, 0.0, 1.0)])
    assert inf.rho == pytest.approx(math.pi / 2)
    # antipodal homogeneous vectors are the same point
    a, b = to_polar([(0.6, 0.0, 0.8), (-0.6, 0.0, -0.8)])
    assert a == b
    with pytest.raises(ValidationError):
        to_polar([(1.0,)])


@settings(max_examples=60, deadline=None)
@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_polar_ranges(x, y):
    pt, = to_polar([(x, y)])
    assert 0 <= pt.rho <= math.pi / 2 and 0 <= pt.theta < 2 * math.pi


def test_chordal_identifies_antipodes():
    u = np.array([[1.0, 0.0, 0.0]])
    assert chordal(u, -u)[0] == 0.0
    assert chordal(u, np.array([[0.0, 1.0, 0.0]]))[0] == pytest.approx(math.sqrt(2))


def test_output_is_finite(v7_run):
    for pl in v7_run:
        assert np.all(np.isfinite(pl.points))
        assert np.all(np.isfinite(pl.vertices))
        assert not pl.truncated


def test_refinement_stability():
    coarse = iterate_segment(V7, n=10, chord_tol=5e-3)
    fine = iterate_segment(V7, n=10, chord_tol=2.5e-3)
    for a, b in zip(coarse, fine):
        assert abs(a.length - b.length) <= 0.01 * b.length


def test_windowed_growth_settles_near_lehmer(v7_run):
    rows = length_growth_report(v7_run, window=6)
    tail = [r[2] for r in rows[-5:]]
    assert np.std(tail) < 0.02
    assert all(abs(r - LEHMER) < 0.03 for r in tail)


def test_polar_csv_columns(v7_run):
    text = polar_csv(v7_run[:3])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["iterate", "theta", "rho", "break"]
    assert {r[0] for r in rows[1:]} == {"0", "1", "2"}
    assert all(r[3] in ("0", "1") for r in rows[1:])
    only = polar_csv(v7_run[:3], iterates={2})
    assert {r[0] for r in list(csv.reader(io.StringIO(only)))[1:]} == {"2"}


def test_fixed_points():
    pts = fixed_points(V7)
    assert len(pts) == 2
    for x, y in pts:
        assert x == pytest.approx(y, abs=1e-12)
        assert (y + V7.a) / (x + V7.b) == pytest.approx(y, abs=1e-10)
    with pytest.raises(NoConvergence):
        fixed_points(V7, seeds=[(-V7.b.real, 0.0)])


def test_parameter_validation():
    with pytest.raises(InvalidParameterError):
        iterate_segment(LinearFractionalParams(1j, 0), n=2)
    with pytest.raises(InvalidParameterError):
        iterate_segment(V7, n=-1)
    with pytest.raises(InvalidParameterError):
        iterate_segment(V7, n=2, chord_tol=0)
    with pytest.raises(ValidationError):
        Polyline(np.array([[np.nan, 0.0, 1.0]]), np.array([0.0]), np.array([False]))


def test_vertex_budget_truncates():
    out = iterate_segment(V7, n=20, max_vertices=500)
    assert out[-1].truncated and len(out) < 21
