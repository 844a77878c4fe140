from __future__ import annotations

from itertools import product

import pytest

from groupoid_music.errors import DeskScaleExceeded
from groupoid_music.group_extensions import (CyclicExtension, actions, carry_cocycles, classify,
                                             enumerate_group_extensions, is_cocycle, isomorphic,
                                             normalized_cocycles)

SMALL = [(n, m) for n in range(1, 13) for m in range(1, 5) if n * m <= 48]


def test_z3_by_z12_gives_two_abelian_groups():
    classes = enumerate_group_extensions(12, 3)
    assert [c.invariant_factors for c in classes] == [(3, 12), (36,)]
    assert enumerate_group_extensions(12, 3, "trivial") == classes


def test_z2_by_z12_has_dihedral_class():
    classes = enumerate_group_extensions(12, 2)
    assert len(classes) == 8
    ab = [c.invariant_factors for c in classes if c.abelian]
    assert ab == [(2, 12), (24,)]
    nonab = [c for c in classes if not c.abelian]
    assert sorted(c.involutions for c in nonab) == [1, 1, 1, 5, 7, 13]
    (d24,) = [c for c in nonab if c.involutions == 13]
    assert d24.witness.k == 11
    assert d24.describe()["order"] == 24


def test_trivial_extension_count():
    assert [c.invariant_factors for c in enumerate_group_extensions(1, 5)] == [(5,)]
    assert [c.invariant_factors for c in enumerate_group_extensions(5, 1)] == [(5,)]


# extensions of Z_m by a normal cyclic Z_n, counted by hand from the lists of
# groups of order n*m (e.g. (8, 2): Z16, Z8xZ2, D16, Q16, SD16, M16; (7, 3):
# Z21 and one Frobenius group, the actions k = 2 and k = 4 giving isomorphic groups)
KNOWN = {(2, 2): 2, (3, 2): 2, (4, 2): 4, (2, 4): 2, (6, 2): 4, (8, 2): 6, (5, 4): 3,
         (3, 3): 2, (7, 3): 2}


@pytest.mark.parametrize("nm, count", sorted(KNOWN.items()))
def test_known_class_counts(nm, count):
    assert len(enumerate_group_extensions(*nm)) == count


def test_desk_scale_and_arguments():
    with pytest.raises(DeskScaleExceeded):
        enumerate_group_extensions(4097, 1)
    with pytest.raises(ValueError):
        enumerate_group_extensions(0, 3)
    with pytest.raises(ValueError):
        enumerate_group_extensions(4, 3, "bogus")


@pytest.mark.parametrize("n, m", [(12, 3), (9, 2), (8, 4), (7, 3)])
def test_extension_group_axioms(n, m):
    for k in actions(n, m):
        for f in list(carry_cocycles(n, m, k))[:3]:
            G = CyclicExtension(n, m, k, f)
            N = G.order
            assert all(G.mul(0, x) == x == G.mul(x, 0) for x in range(N))
            for x, y, z in product(range(0, N, max(1, N // 9)), repeat=3):
                assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
            for x in range(N):
                assert any(G.mul(x, y) == 0 for y in range(N))


@pytest.mark.parametrize("n, m", [(4, 3), (3, 3), (2, 4), (6, 2)])
def test_normalized_cocycles_match_brute_force(n, m):
    for k in actions(n, m):
        cells = [(i, j) for i in range(1, m) for j in range(1, m)]
        brute = set()
        for values in product(range(n), repeat=len(cells)):
            f = [[0] * m for _ in range(m)]
            for (i, j), v in zip(cells, values):
                f[i][j] = v
            if is_cocycle(f, k, n, m):
                brute.add(tuple(map(tuple, f)))
        assert set(normalized_cocycles(n, m, k)) == brute


@pytest.mark.parametrize("n, m", SMALL)
def test_carry_representatives_cover_all_classes(n, m):
    ex = enumerate_group_extensions(n, m, exhaustive=True)
    carry = enumerate_group_extensions(n, m, exhaustive=False)
    assert [c.key for c in ex] == [c.key for c in carry]


@pytest.mark.parametrize("n, m", SMALL)
def test_classes_are_exact_isomorphism_classes_up_to_order_48(n, m):
    """Every extension is isomorphic to exactly one class witness."""
    classes = enumerate_group_extensions(n, m)
    for k in actions(n, m):
        for f in normalized_cocycles(n, m, k):
            G = CyclicExtension(n, m, k, f)
            hist = classify(G).order_histogram
            # a differing histogram already rules out an isomorphism
            candidates = [c.witness for c in classes if c.order_histogram == hist]
            assert sum(isomorphic(W, G) for W in candidates) == 1


def test_histogram_alone_merges_two_groups_of_order_32():
    a = CyclicExtension(8, 4, 3, ((0,) * 4,) * 4)
    b = CyclicExtension(8, 4, 7, ((0,) * 4,) * 4)
    assert classify(a).order_histogram == classify(b).order_histogram
    assert not isomorphic(a, b)
    same = [c for c in enumerate_group_extensions(8, 4)
            if c.order_histogram == classify(a).order_histogram]
    assert [c.variant for c in same] == [0, 1]
