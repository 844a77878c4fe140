from __future__ import annotations

import math
from itertools import permutations

import pytest

from groupoid_music.errors import ClosureBudgetExceeded
from groupoid_music.groups import (analyze_group, block_kernel, closure_of_perms,
                                   cyclic_certificate, dihedral_certificate, generate_group,
                                   preserves_blocks, symmetric_group_table_matches,
                                   wreath_certificate)
from groupoid_music.packaged import permutation_rep

sympy_groups = pytest.importorskip("sympy.combinatorics")

CASES = [
    ("mab", ["T1", "VL"]),
    ("mab", ["T1", "VL'"]),
    ("mab", ["I_Malpha", "I_Mbeta", "I_alphabeta"]),
    ("mab", ["I_Malpha", "I_Mbeta", "I_alphabeta", "T_M"]),
    ("mab", ["T_M", "T_alpha", "T_beta"]),
    ("mab", ["VL", "I_Malpha"]),
    ("mm", ["T1", "I0"]),
    ("mm", ["T_M", "I0"]),
    ("mm", ["T_M", "T_m"]),
]


@pytest.mark.parametrize("preset, names", CASES)
def test_closure_order_matches_sympy(request, preset, names):
    inst = request.getfixturevalue(preset)
    G = generate_group(inst.action, [inst.operator(n) for n in names], names)
    perms = [sympy_groups.Permutation(list(p)) for p in G.generators]
    S = sympy_groups.PermutationGroup(perms)
    assert G.order == S.order()
    assert analyze_group(G)["abelian"] == S.is_abelian
    assert len(set(G.elements)) == G.order


def test_words_reproduce_elements(mab):
    names = ["T1", "VL"]
    A = mab.action
    G = generate_group(A, [mab.operator(n) for n in names], names)
    gens = dict(zip(names, G.generators))
    for p in G.elements[:50]:
        x = G.identity
        for w in G.word(p):
            x = tuple(gens[w][i] for i in x)
        assert x == p
    assert G.word(G.identity) == ()
    assert G.word(gens["VL"]) == ("VL",)


def test_budget():
    gens = [tuple([1, 0] + list(range(2, 8))), tuple(list(range(1, 8)) + [0])]
    assert closure_of_perms(gens, 8).order == math.factorial(8)
    with pytest.raises(ClosureBudgetExceeded):
        closure_of_perms(gens, 8, budget=1000)


def test_analyze_wreath_report(mab):
    names = ["I_Malpha", "I_Mbeta", "I_alphabeta", "T_M"]
    G = generate_group(mab.action, [mab.operator(n) for n in names], names)
    info = analyze_group(G)
    assert info["type_partition_preserved"]
    assert info["kernel"] == {"order": 1728, "abelian": True, "invariant_factors": [12, 12, 12]}
    assert info["quotient"] == {"order": 6, "abelian": False}
    assert sum(info["element_orders"].values()) == 10368
    assert len(block_kernel(G)) == 1728


def test_certificates_reject_wrong_groups(mab, mm):
    Z = generate_group(mab.action, [mab.operator("T1"), mab.operator("VL")])
    assert cyclic_certificate(Z)
    assert not dihedral_certificate(Z)
    cert = wreath_certificate(Z, 12, 3)
    assert not cert and cert.failed == "order"
    K = generate_group(mab.action, [mab.operator(n) for n in ("T_M", "T_alpha", "T_beta")])
    assert not wreath_certificate(K, 12, 3)
    D = generate_group(mm.action, [mm.operator("T1"), mm.operator("I0")])
    assert dihedral_certificate(D).ok
    assert not cyclic_certificate(D)
    assert not wreath_certificate(D, 12, 2)
    assert not symmetric_group_table_matches(D)


def test_wreath_on_two_blocks_of_two():
    # Z2 wr S2 is D8 on {0,1} | {2,3}; the Klein subgroup swapping both
    # blocks at once is too small
    gens = [(1, 0, 2, 3), (2, 3, 0, 1)]
    G = closure_of_perms(gens, 4, block_size=2)
    assert G.order == 8
    assert wreath_certificate(G, 2, 2).ok
    H = closure_of_perms([(1, 0, 3, 2), (2, 3, 0, 1)], 4, block_size=2)
    assert H.order == 4
    assert not wreath_certificate(H, 2, 2)


def test_symmetric_table_on_brute_force_s3():
    # S3 acting on 3 blocks of size 1
    gens = [(1, 0, 2), (0, 2, 1)]
    G = closure_of_perms(gens, 3, block_size=1)
    assert G.order == 6
    assert set(G.elements) == set(permutations(range(3)))
    assert symmetric_group_table_matches(G)


def test_zero_shift_inversions_permute_blocks_only(mab):
    from groupoid_music.packaged import zero_shift_inversion
    E, A = mab.extension, mab.action
    p = permutation_rep(A, zero_shift_inversion(E, "M", "alpha"))
    assert [p[i] for i in range(12)] == list(range(12, 24))
    assert [p[i] for i in range(24, 36)] == list(range(24, 36))
    G = closure_of_perms([p], 36, 12)
    assert preserves_blocks(G)
