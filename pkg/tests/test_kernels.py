from __future__ import annotations

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupoid_music import _pykernels, kernels

BACKENDS = kernels.available_backends()

perm = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


def test_backend_reported():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
@settings(max_examples=200)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(
    st.permutations(list(range(n))).map(tuple), st.permutations(list(range(n))).map(tuple))))
def test_compose_and_inverse_agree(pq):
    p, q = pq
    c = BACKENDS["cython"]
    assert tuple(c.compose(p, q)) == _pykernels.compose(p, q)
    assert tuple(c.inverse(p)) == _pykernels.inverse(p)
    assert _pykernels.compose(p, _pykernels.inverse(p)) == tuple(range(len(p)))


@given(perm)
def test_python_element_order_brute_force(p):
    ident = tuple(range(len(p)))
    x, k = p, 1
    while x != ident:
        x, k = _pykernels.compose(x, p), k + 1
    assert _pykernels.element_orders([p]) == [k]


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
@pytest.mark.parametrize("gens, degree", [
    ([(1, 2, 0, 3), (1, 0, 2, 3)], 4),
    ([tuple(list(range(1, 7)) + [0]), (1, 0, 2, 3, 4, 5, 6)], 7),
    ([(0, 1, 2)], 3),
])
def test_closure_agrees(gens, degree):
    py = _pykernels.closure(gens, degree, 10 ** 5)
    cy = BACKENDS["cython"].closure(gens, degree, 10 ** 5)
    assert [tuple(p) for p in cy[0]] == py[0]
    assert list(cy[1]) == py[1] and list(cy[2]) == py[2]
    assert list(BACKENDS["cython"].element_orders(cy[0])) == _pykernels.element_orders(py[0])
    small = _pykernels.closure(gens, degree, 3)
    assert (BACKENDS["cython"].closure(gens, degree, 3) is None) == (small is None)


def test_pure_python_fallback_selected_by_environment():
    env = dict(os.environ, GROUPOID_MUSIC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from groupoid_music import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
