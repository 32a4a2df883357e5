import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neronzeta import kernels
from neronzeta.kernels import _pykernels

try:
    from neronzeta.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

small = st.lists(st.integers(-1000, 1000), min_size=1, max_size=30)
unit_series = st.tuples(st.sampled_from([1, -1]), st.lists(st.integers(-5, 5), max_size=15)).map(
    lambda x: [x[0]] + x[1]
)
monic = st.lists(st.integers(-5, 5), max_size=6).map(lambda c: c + [1])


def naive_convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@given(small, small)
def test_convolve_matches_schoolbook(a, b):
    assert _pykernels.convolve(a, b) == naive_convolve(a, b)


@given(small, small, st.integers(1, 40))
def test_convolve_trunc_is_prefix(a, b, n):
    full = naive_convolve(a, b) + [0] * n
    assert _pykernels.convolve_trunc(a, b, n) == full[:n]


@given(unit_series, st.integers(1, 30))
def test_inverse_series(a, n):
    inv = _pykernels.inverse_series(a, n)
    prod = _pykernels.convolve_trunc(a, inv, n)
    assert prod == [1] + [0] * (n - 1)


def test_inverse_series_requires_unit():
    with pytest.raises(ValueError):
        _pykernels.inverse_series([2, 1], 5)


@given(small, monic)
def test_divmod_monic_reconstructs(a, m):
    q, r = _pykernels.divmod_monic(a, m)
    assert len(r) <= len(m) - 1
    back = naive_convolve(q, m) if q else [0]
    back = back + [0] * (len(a) - len(back))
    r = r + [0] * (len(back) - len(r))
    assert [x + y for x, y in zip(back, r)][: len(a)] == a + [0] * (len(back) - len(a))


# Bounded so that no intermediate value can leave int64: inverse coefficients
# stay below 16**12 and quotients below 1000 * 10**12.
bounded_unit = st.tuples(st.sampled_from([1, -1]), st.lists(st.integers(-3, 3), max_size=5)).map(
    lambda x: [x[0]] + x[1]
)
bounded_monic = st.lists(st.integers(-3, 3), max_size=3).map(lambda c: c + [1])
bounded_dividend = st.lists(st.integers(-1000, 1000), min_size=1, max_size=12)


@needs_ext
@settings(max_examples=300)
@given(small, small, st.integers(1, 40), bounded_unit, st.integers(1, 12), bounded_dividend, bounded_monic)
def test_backends_agree(a, b, n, u, k, c, m):
    assert _ckernels.convolve(a, b) == _pykernels.convolve(a, b)
    assert _ckernels.convolve_trunc(a, b, n) == _pykernels.convolve_trunc(a, b, n)
    assert _ckernels.inverse_series(u, k) == _pykernels.inverse_series(u, k)
    assert _ckernels.divmod_monic(c, m) == _pykernels.divmod_monic(c, m)


@needs_ext
@given(unit_series, st.integers(1, 30))
def test_dispatch_is_exact_past_int64(u, n):
    assert kernels.inverse_series(u, n) == _pykernels.inverse_series(u, n)


@needs_ext
def test_overflow_falls_back_to_exact():
    big = [2**62, 2**62]
    with pytest.raises(OverflowError):
        _ckernels.convolve(big, big)
    assert kernels.convolve(big, big) == _pykernels.convolve(big, big)
    huge = [10**30, 1]
    assert kernels.convolve(huge, [1, 1]) == [10**30, 10**30 + 1, 1]


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    forced = bool(os.environ.get("NERONZETA_PURE_PYTHON"))
    assert (kernels.BACKEND == "cython") == (_ckernels is not None and not forced)
