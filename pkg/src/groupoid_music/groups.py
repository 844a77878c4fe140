"""Closure of packaged operators as permutation groups on chords, and
structure certificates (cyclic, dihedral, wreath product)."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Sequence

from . import kernels
from .actions import RepresentableAction
from .errors import ClosureBudgetExceeded, NotAbelian
from .modular import invariant_factors_from_orders
from .packaged import PackagedOperator, permutation_rep, zero_shift_inversion

CLOSURE_BUDGET = 10 ** 6

Perm = tuple[int, ...]


@dataclass(eq=False)
class GeneratedGroup:
    """A permutation group on the m*n chords of an action.

    ``elements`` are in breadth-first order from the identity; ``words`` give
    for each element the shortest generator word (ties broken by generator
    order), read left to right as the order in which the permutations apply.
    """

    action: RepresentableAction | None
    degree: int
    block_size: int
    generators: tuple[Perm, ...]
    names: tuple[str, ...]
    elements: list[Perm]
    parent: list[int]
    via: list[int]
    _index: dict = field(default_factory=dict, repr=False)
    _orders: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {p: i for i, p in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return self.elements[0]

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    def word(self, p) -> tuple[str, ...]:
        k = self._index[tuple(p)]
        out = []
        while k > 0:
            out.append(self.names[self.via[k]])
            k = self.parent[k]
        return tuple(reversed(out))

    @property
    def words(self) -> dict[Perm, tuple[str, ...]]:
        return {p: self.word(p) for p in self.elements}

    def element_orders(self) -> list[int]:
        if self._orders is None:
            self._orders = kernels.element_orders(self.elements)
        return self._orders

    @property
    def blocks(self) -> int:
        return self.degree // self.block_size

    def block_image(self, p: Perm) -> tuple[int, ...]:
        b = self.block_size
        return tuple(p[i * b] // b for i in range(self.blocks))


def closure_of_perms(perms: Sequence[Perm], degree: int, block_size: int | None = None,
                     names: Sequence[str] | None = None, action=None,
                     budget: int = CLOSURE_BUDGET) -> GeneratedGroup:
    perms = tuple(tuple(int(x) for x in p) for p in perms)
    names = tuple(names) if names is not None else tuple(f"g{i}" for i in range(len(perms)))
    result = kernels.closure(list(perms), degree, budget)
    if result is None:
        raise ClosureBudgetExceeded(f"closure exceeds {budget} elements")
    elements, parent, via = result
    return GeneratedGroup(action, degree, block_size or degree, perms, names,
                          elements, parent, via)


def generate_group(A: RepresentableAction, gens: Sequence[PackagedOperator],
                   names: Sequence[str] | None = None,
                   budget: int = CLOSURE_BUDGET) -> GeneratedGroup:
    perms = [permutation_rep(A, O) for O in gens]
    return closure_of_perms(perms, len(A.chords()), A.n, names, A, budget)


def _commute(p: Perm, q: Perm) -> bool:
    return kernels.compose(p, q) == kernels.compose(q, p)


def is_abelian(gens: Sequence[Perm]) -> bool:
    return all(_commute(p, q) for i, p in enumerate(gens) for q in gens[i + 1:])


def _subgroup_generators(elements: Sequence[Perm], degree: int) -> list[Perm]:
    """A small generating set found greedily."""
    target = len(elements)
    gens: list[Perm] = []
    span = {tuple(range(degree))}
    for p in elements:
        if p in span:
            continue
        gens.append(p)
        span = set(kernels.closure(gens, degree, target)[0])
        if len(span) == target:
            break
    return gens


def preserves_blocks(G: GeneratedGroup) -> bool:
    b = G.block_size
    for p in G.generators:
        for blk in range(G.blocks):
            images = {p[i] // b for i in range(blk * b, (blk + 1) * b)}
            if len(images) != 1:
                return False
    return True


def block_kernel(G: GeneratedGroup) -> list[Perm]:
    ident = tuple(range(G.blocks))
    return [p for p in G.elements if G.block_image(p) == ident]


def _abelian_invariants(elements: list[Perm], degree: int):
    gens = _subgroup_generators(elements, degree)
    if not is_abelian(gens):
        return False, None
    try:
        return True, invariant_factors_from_orders(kernels.element_orders(elements))
    except NotAbelian:
        return False, None


def analyze_group(G: GeneratedGroup) -> dict:
    orders = G.element_orders()
    abelian = is_abelian(G.generators)
    report = {
        "order": G.order,
        "abelian": abelian,
        "cyclic": G.order in orders,
        "invariant_factors": list(invariant_factors_from_orders(orders)) if abelian else None,
        "element_orders": {str(o): c for o, c in sorted(Counter(orders).items())},
    }
    blocks_ok = G.blocks > 1 and preserves_blocks(G)
    report["type_partition_preserved"] = blocks_ok
    if blocks_ok:
        kernel = block_kernel(G)
        k_ab, k_inv = _abelian_invariants(kernel, G.degree)
        images = [G.block_image(p) for p in G.generators]
        q_ab = all(_compose_small(a, b) == _compose_small(b, a) for a in images for b in images)
        report["kernel"] = {"order": len(kernel), "abelian": k_ab,
                            "invariant_factors": list(k_inv) if k_ab else None}
        report["quotient"] = {"order": G.order // len(kernel), "abelian": q_ab}
    return report


def _compose_small(p, q):
    return tuple(q[i] for i in p)


def cyclic_certificate(G: GeneratedGroup) -> bool:
    return G.order in G.element_orders()


@dataclass
class Certificate:
    ok: bool
    clauses: dict = field(default_factory=dict)
    failed: str | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"ok": self.ok, "failed": self.failed, "clauses": self.clauses, **self.detail}


def dihedral_certificate(G: GeneratedGroup) -> Certificate:
    """|G| = 2k with <t> of order k and an involution r outside it inverting t."""
    if G.order % 2:
        return Certificate(False, {"even_order": False}, "even_order")
    k = G.order // 2
    orders = G.element_orders()
    ident = G.identity
    for ti, t in enumerate(G.elements):
        if orders[ti] != k:
            continue
        cyc = {ident}
        x = t
        while x != ident:
            cyc.add(x)
            x = kernels.compose(x, t)
        t_inv = kernels.inverse(t)
        for ri, r in enumerate(G.elements):
            if orders[ri] != 2 or r in cyc:
                continue
            if kernels.compose(kernels.compose(r, t), r) == t_inv:
                return Certificate(True, {"even_order": True, "cyclic_index_2": True,
                                          "inverting_involution": True},
                                   detail={"k": k, "rotation": G.word(t), "reflection": G.word(r)})
        return Certificate(False, {"even_order": True, "cyclic_index_2": True,
                                   "inverting_involution": False}, "inverting_involution")
    return Certificate(False, {"even_order": True, "cyclic_index_2": False}, "cyclic_index_2")


def _complement_from_zero_shift(G: GeneratedGroup, m: int):
    A = G.action
    if A is None or len(A.extension.objects) != m:
        return None
    E = A.extension
    objs = E.objects
    try:
        ops = [zero_shift_inversion(E, objs[i], objs[j]) for i in range(m) for j in range(i + 1, m)]
    except (IndexError, ValueError):
        return None
    perms = [permutation_rep(A, O) for O in ops]
    if not all(p in G for p in perms):
        return None
    return perms


def _complement_by_search(G: GeneratedGroup, m: int, limit: int = 200_000):
    """Lift the adjacent block transpositions to involutions of G."""
    orders = G.element_orders()
    candidates = []
    for i in range(m - 1):
        tau = list(range(m))
        tau[i], tau[i + 1] = tau[i + 1], tau[i]
        tau = tuple(tau)
        cands = [p for p, o in zip(G.elements, orders) if o == 2 and G.block_image(p) == tau]
        if not cands:
            return None
        candidates.append(cands)
    tried = 0
    for choice in product(*candidates):
        tried += 1
        if tried > limit:
            return None
        res = kernels.closure(list(choice), G.degree, math.factorial(m))
        if res is not None and len(res[0]) == math.factorial(m):
            return list(choice)
    return None


def wreath_certificate(G: GeneratedGroup, n: int, m: int) -> Certificate:
    """Certify G = Z_n wr S_m acting on m blocks of n chords."""
    clauses: dict = {}

    def fail(name, **detail):
        clauses[name] = False
        return Certificate(False, clauses, name, detail)

    expected = n ** m * math.factorial(m)
    if G.order != expected:
        return fail("order", order=G.order, expected=expected)
    clauses["order"] = True
    if G.blocks != m or G.block_size != n or not preserves_blocks(G):
        return fail("block_system")
    clauses["block_system"] = True
    kernel = block_kernel(G)
    ab, inv = _abelian_invariants(kernel, G.degree)
    if not ab or tuple(inv) != (n,) * m:
        return fail("kernel", kernel_order=len(kernel), invariant_factors=inv)
    clauses["kernel"] = True
    image = {G.block_image(p) for p in G.elements}
    if len(image) != math.factorial(m):
        return fail("block_action_full", image_order=len(image))
    clauses["block_action_full"] = True

    source = "zero_shift_inversions"
    gens = _complement_from_zero_shift(G, m)
    K = None
    if gens is not None:
        K = kernels.closure(gens, G.degree, math.factorial(m))
    if K is None or len(K[0]) != math.factorial(m):
        source = "search"
        gens = _complement_by_search(G, m)
        K = kernels.closure(gens, G.degree, math.factorial(m)) if gens is not None else None
    if K is None:
        return fail("complement")
    K_elems = K[0]
    kernel_set = set(kernel)
    trivial_meet = [p for p in K_elems if p in kernel_set] == [G.identity]
    if not trivial_meet or len(kernel) * len(K_elems) != G.order:
        return fail("complement")
    clauses["complement"] = True

    # N must be the permutation module of K: conjugates of one single-block
    # element of order n generate it
    b = G.block_size
    orders = G.element_orders()
    order_of = dict(zip(G.elements, orders))
    base = None
    for p in kernel:
        if order_of[p] == n and all(p[i] == i for i in range(b, G.degree)):
            base = p
            break
    if base is None:
        return fail("permutation_module")
    conj = {kernels.compose(kernels.compose(kernels.inverse(k), base), k) for k in K_elems}
    span = kernels.closure(list(conj), G.degree, len(kernel))
    if span is None or len(span[0]) != len(kernel):
        return fail("permutation_module")
    clauses["permutation_module"] = True
    return Certificate(True, clauses, None, {"complement_source": source,
                                             "kernel_order": len(kernel)})


def symmetric_group_table_matches(G: GeneratedGroup) -> bool:
    """True iff the block action is an isomorphism onto S_m."""
    m = G.blocks
    if G.order != math.factorial(m):
        return False
    image = {}
    for p in G.elements:
        image[p] = G.block_image(p)
    if len(set(image.values())) != G.order:
        return False
    if set(image.values()) != set(permutations(range(m))):
        return False
    for p in G.elements:
        for q in G.elements:
            if image[kernels.compose(p, q)] != _compose_small(image[p], image[q]):
                return False
    return True
