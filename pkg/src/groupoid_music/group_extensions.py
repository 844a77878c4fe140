"""Enumeration of group extensions 1 -> Z_n -> G -> Z_m -> 1 up to isomorphism.

G lives on Z_n x Z_m, encoded as a + n*i, with product

    (a, i)(b, j) = (a + k**i * b + f(i, j), i + j)

for a unit k with k**m == 1 (mod n) and a normalized 2-cocycle f.
"""

from __future__ import annotations

import math
from functools import cached_property
from collections import Counter
from dataclasses import dataclass, replace
from itertools import product

from .errors import DeskScaleExceeded
from .modular import invariant_factors_from_orders

DESK_SCALE = 4096
# above this many candidate cochains the enumerator switches to
# carry-cocycle representatives (complete up to cohomology for cyclic Z_m)
EXHAUSTIVE_LIMIT = 200_000
# nonabelian groups sharing an element-order histogram are told apart by an
# exact isomorphism search up to this order (the histogram alone merges e.g.
# two semidirect products Z_8 x| Z_4 of order 32)
ISOMORPHISM_LIMIT = 128


@dataclass(frozen=True)
class CyclicExtension:
    n: int
    m: int
    k: int
    cocycle: tuple[tuple[int, ...], ...]  # f[i][j]

    @property
    def order(self) -> int:
        return self.n * self.m

    @cached_property
    def _kpow(self) -> tuple[int, ...]:
        return tuple(pow(self.k, i, self.n) for i in range(self.m))

    def mul(self, x: int, y: int) -> int:
        n, m = self.n, self.m
        i, a = divmod(x, n)
        j, b = divmod(y, n)
        return (a + self._kpow[i] * b + self.cocycle[i][j]) % n + n * ((i + j) % m)

    @cached_property
    def table(self) -> list[list[int]]:
        """Full multiplication table, row x holding x * y."""
        return [[self.mul(x, y) for y in range(self.order)] for x in range(self.order)]

    def power(self, x: int, e: int) -> int:
        result, base = 0, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def element_order(self, x: int) -> int:
        n, m = self.n, self.m
        i = x // n
        d = m // math.gcd(i, m)
        c = self.power(x, d) % n
        return d * (n // math.gcd(c, n))

    @cached_property
    def _orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(x) for x in range(self.order))

    def element_orders(self) -> list[int]:
        return list(self._orders)

    @property
    def abelian(self) -> bool:
        # generated by (1, 0) and (0, 1); these commute iff k == 1
        b = self.n % self.order
        return self.mul(1 % self.order, b) == self.mul(b, 1 % self.order)


@dataclass(frozen=True)
class ExtensionClass:
    order: int
    abelian: bool
    invariant_factors: tuple[int, ...] | None
    order_histogram: tuple[tuple[int, int], ...]
    witness: CyclicExtension
    variant: int = 0  # separates non-isomorphic groups with the same histogram

    @property
    def key(self):
        return (self.order, self.abelian,
                self.invariant_factors if self.abelian else self.order_histogram, self.variant)

    @property
    def involutions(self) -> int:
        return dict(self.order_histogram).get(2, 0)

    def describe(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "invariant_factors": list(self.invariant_factors) if self.abelian else None,
            "element_orders": {str(o): c for o, c in self.order_histogram},
            "involutions": self.involutions,
            "witness": {"action": self.witness.k,
                        "cocycle": [list(r) for r in self.witness.cocycle]},
        }


def actions(n: int, m: int) -> list[int]:
    """Multipliers k with k**m == 1 mod n: homomorphisms Z_m -> Aut(Z_n)."""
    if n == 1:
        return [0]
    return [k for k in range(1, n) if math.gcd(k, n) == 1 and pow(k, m, n) == 1 % n]


def is_cocycle(f, k: int, n: int, m: int) -> bool:
    for a in range(m):
        ka = pow(k, a, n)
        for b in range(m):
            for c in range(m):
                lhs = ka * f[b][c] + f[a][(b + c) % m]
                rhs = f[a][b] + f[(a + b) % m][c]
                if (lhs - rhs) % n:
                    return False
    return True


def normalized_cocycles(n: int, m: int, k: int):
    """Every normalized cocycle Z_m x Z_m -> Z_n for the action x -> k x.

    Depth-first over the free entries f(i, j), i, j >= 1, pruning as soon as
    a cocycle identity with all four entries assigned fails.
    """
    cells = [(i, j) for i in range(1, m) for j in range(1, m)]
    pos = {c: t for t, c in enumerate(cells)}
    # identities to check once the cell with index t is assigned
    checks: list[list[tuple[int, int, int]]] = [[] for _ in cells]
    for a, b, c in product(range(m), repeat=3):
        used = [(b, c), (a, (b + c) % m), (a, b), ((a + b) % m, c)]
        idx = [pos[u] for u in used if u in pos]
        # identities touching only boundary entries hold automatically
        if idx:
            checks[max(idx)].append((a, b, c))
    powers = [pow(k, a, n) for a in range(m)]
    f = [[0] * m for _ in range(m)]

    def ok(t):
        for a, b, c in checks[t]:
            if (powers[a] * f[b][c] + f[a][(b + c) % m] - f[a][b] - f[(a + b) % m][c]) % n:
                return False
        return True

    def rec(t):
        if t == len(cells):
            yield tuple(tuple(r) for r in f)
            return
        i, j = cells[t]
        for v in range(n):
            f[i][j] = v
            if ok(t):
                yield from rec(t + 1)
        f[i][j] = 0

    yield from rec(0)


def carry_cocycles(n: int, m: int, k: int):
    """f_a(i, j) = a if i + j >= m else 0, for a fixed by k."""
    for a in range(n):
        if (k * a - a) % n:
            continue
        f = tuple(tuple(a if i + j >= m else 0 for j in range(m)) for i in range(m))
        yield f


def classify(ext: CyclicExtension) -> ExtensionClass:
    orders = ext.element_orders()
    hist = tuple(sorted(Counter(orders).items()))
    ab = ext.abelian
    return ExtensionClass(
        order=ext.order,
        abelian=ab,
        invariant_factors=invariant_factors_from_orders(orders) if ab else None,
        order_histogram=hist,
        witness=ext,
    )


def enumerate_group_extensions(n: int, m: int, action_filter: str | None = None,
                               exhaustive: bool | None = None) -> list[ExtensionClass]:
    """Isomorphism classes of extensions of Z_m by Z_n (Z_n normal).

    ``action_filter='trivial'`` keeps only the trivial action. ``exhaustive``
    forces (True) or forbids (False) full cocycle enumeration; by default it
    is used whenever the candidate count is small enough.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if n * m > DESK_SCALE:
        raise DeskScaleExceeded(f"n*m = {n * m} exceeds {DESK_SCALE}")
    if exhaustive is None:
        exhaustive = n ** (m - 1) * n <= EXHAUSTIVE_LIMIT
    ks = actions(n, m)
    if action_filter == "trivial":
        ks = [k for k in ks if k == 1 % n]
    elif action_filter is not None:
        raise ValueError(f"unknown action filter {action_filter!r}")
    exact = n * m <= ISOMORPHISM_LIMIT
    buckets: dict = {}

    def add(ext: CyclicExtension, split: bool) -> None:
        c = classify(ext)
        key = c.key
        bucket = buckets.setdefault(key, [])
        if not bucket:
            bucket.append(c)
        elif split and not c.abelian and not any(isomorphic(r.witness, ext) for r in bucket):
            bucket.append(replace(c, variant=len(bucket)))

    # carry cocycles meet every cohomology class, so they fix the exact classes
    for k in ks:
        for f in carry_cocycles(n, m, k):
            add(CyclicExtension(n, m, k, f), exact)
    if exhaustive:
        # every other cocycle is cohomologous to a carry cocycle; the full pass
        # confirms that no new histogram turns up
        for k in ks:
            for f in normalized_cocycles(n, m, k):
                add(CyclicExtension(n, m, k, f), False)
    return sorted((c for b in buckets.values() for c in b), key=_sort_key)


def _sort_key(c: ExtensionClass):
    return (not c.abelian, c.invariant_factors or (), c.order_histogram, c.variant)


def isomorphic(g1: CyclicExtension, g2: CyclicExtension) -> bool:
    """Exact isomorphism test by searching images of the generators (1,0), (0,1).

    g1 is presented by a = (1,0), b = (0,1) with a^n = 1, b^m = a^c and
    b a = a^e b; a pair (x, y) of g2 satisfying the same relations is tried
    as the image of (a, b).
    """
    if g1.order != g2.order:
        return False
    N = g1.order
    a, b = 1 % g1.n, g1.n % N
    oa, ob = g1.element_order(a), g1.element_order(b)
    o2 = g2.element_orders()
    if sorted(o2) != sorted(g1.element_orders()):
        return False
    a_pows = [g1.power(a, t) for t in range(g1.n)]
    c = a_pows.index(g1.power(b, g1.m))
    ba = g1.mul(b, a)
    e = next(t for t in range(g1.n) if g1.mul(a_pows[t], b) == ba)
    xs = [x for x in range(N) if o2[x] == oa]
    ys = [y for y in range(N) if o2[y] == ob]
    for x in xs:
        x_pows = [g2.power(x, t) for t in range(g1.n)]
        for y in ys:
            if g2.power(y, g1.m) != x_pows[c] or g2.mul(y, x) != g2.mul(x_pows[e], y):
                continue
            if _extends(g1, g2, a, b, x, y):
                return True
    return False


def _extends(g1, g2, a, b, x, y) -> bool:
    # g1 is typically a class witness compared many times, so only its table is cached
    t1, mul2 = g1.table, g2.mul
    image = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            iu = image[u]
            for gen, img in ((a, x), (b, y)):
                v = t1[u][gen]
                w = mul2(iu, img)
                if v in image:
                    if image[v] != w:
                        return False
                else:
                    image[v] = w
                    nxt.append(v)
        frontier = nxt
    # image(u * gen) == image(u) * image(gen) held for every u and both
    # generators, so the map is a homomorphism; bijective iff injective
    return len(set(image.values())) == g1.order
