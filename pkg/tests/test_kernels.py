import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birdyn import _kernels_py, kernels

P = 2_147_483_629  # prime below 2^31
BACKENDS = kernels.backends()


def test_compiled_backend_is_selected():
    # the build ships the extension; the fallback is exercised by the parity tests
    assert "cython" in BACKENDS
    assert kernels.BACKEND in ("cython", "python")


def test_fallback_env_flag(monkeypatch):
    import importlib

    monkeypatch.setenv("BIRDYN_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("BIRDYN_PURE_PYTHON")
        importlib.reload(kernels)


polys = st.lists(st.integers(0, P - 1), max_size=40).map(_kernels_py.trim)
nonzero = polys.filter(bool)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@settings(max_examples=60, deadline=None)
@given(a=polys, b=polys)
def test_mul_add_parity(name, a, b):
    impl = BACKENDS[name]
    assert impl.mul(list(a), list(b), P) == _kernels_py.mul(list(a), list(b), P)
    assert impl.add(list(a), list(b), P) == _kernels_py.add(list(a), list(b), P)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@settings(max_examples=60, deadline=None)
@given(a=polys, b=nonzero)
def test_divmod_parity_and_identity(name, a, b):
    impl = BACKENDS[name]
    q, r = impl.divmod_(list(a), list(b), P)
    assert (q, r) == _kernels_py.divmod_(list(a), list(b), P)
    assert len(r) < len(b)
    assert _kernels_py.add(_kernels_py.mul(q, list(b), P), r, P) == list(a)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@settings(max_examples=40, deadline=None)
@given(a=nonzero, b=nonzero, c=nonzero)
def test_gcd_parity(name, a, b, c):
    impl = BACKENDS[name]
    ac, bc = _kernels_py.mul(a, c, P), _kernels_py.mul(b, c, P)
    g = impl.gcd(ac, bc, P)
    assert g == _kernels_py.gcd(ac, bc, P)
    # c divides both, so it divides the gcd; the gcd divides both inputs
    assert not _kernels_py.rem(g, list(c), P)
    assert not _kernels_py.rem(list(ac), g, P) and not _kernels_py.rem(list(bc), g, P)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_roots_parity(name):
    impl = BACKENDS[name]
    rts = [3, 17, 12345, P - 2]
    f = [1]
    for r in rts:
        f = _kernels_py.mul(f, [(-r) % P, 1], P)
    f = _kernels_py.mul(f, [1, 0, 1], P)  # x^2 + 1 has no roots when p = 3 mod 4
    assert impl.roots(list(f), P) == _kernels_py.roots(list(f), P)
    expected = sorted(rts) if P % 4 == 3 else None
    if expected is not None:
        assert impl.roots(list(f), P) == expected


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_powmod_parity(name):
    impl = BACKENDS[name]
    mod = [5, 0, 3, 1]
    assert impl.powmod([1, 2], 10 ** 6 + 3, list(mod), P) == _kernels_py.powmod([1, 2], 10 ** 6 + 3, list(mod), P)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_exact_div_rejects_remainder(name):
    with pytest.raises(ArithmeticError):
        BACKENDS[name].exact_div([1, 0, 1], [1, 1], P)
    with pytest.raises(ZeroDivisionError):
        BACKENDS[name].divmod_([1, 1], [], P)
