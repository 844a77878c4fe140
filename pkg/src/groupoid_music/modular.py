"""Arithmetic in Z_n: residues, unit multipliers, linear congruences and
invariant factors of finite abelian groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .errors import NotAbelian


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._other(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._other(other), self.modulus)

    def __rsub__(self, other):
        return Residue(self._other(other) - self.value, self.modulus)

    def __mul__(self, other):
        return Residue(self.value * self._other(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __int__(self):
        return self.value

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


@dataclass(frozen=True, order=True)
class AutMultiplier:
    """The automorphism x -> k*x of Z_n (k a unit mod n)."""

    k: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        k = self.k % self.modulus
        if math.gcd(k, self.modulus) != 1:
            raise ValueError(f"{self.k} is not a unit mod {self.modulus}")
        object.__setattr__(self, "k", k)

    def __call__(self, x):
        if isinstance(x, Residue):
            return x * self.k
        return (self.k * x) % self.modulus

    def __mul__(self, other: AutMultiplier) -> AutMultiplier:
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")
        return AutMultiplier(self.k * other.k, self.modulus)

    def inverse(self) -> AutMultiplier:
        return AutMultiplier(pow(self.k, -1, self.modulus) if self.modulus > 1 else 0,
                             self.modulus)

    def order(self) -> int:
        r, x = 1, self.k
        while x % self.modulus != 1 % self.modulus:
            x = (x * self.k) % self.modulus
            r += 1
        return r


def unit_group(n: int) -> tuple[AutMultiplier, ...]:
    """Units of Z_n in increasing order; for n=1 the single trivial multiplier."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (AutMultiplier(0, 1),)
    return tuple(AutMultiplier(k, n) for k in range(1, n) if math.gcd(k, n) == 1)


def inverse_mod(k: int, n: int) -> int:
    if n == 1:
        return 0
    return pow(k % n, -1, n)


def solve_mod_linear(coefficient: int, rhs: Residue) -> frozenset[Residue]:
    """All x with coefficient*x == rhs (mod n). Empty when unsolvable."""
    n = rhs.modulus
    a = coefficient % n
    g = math.gcd(a, n)
    if rhs.value % g:
        return frozenset()
    step = n // g
    x0 = (inverse_mod(a // g, step) * (rhs.value // g)) % step
    return frozenset(Residue(x0 + t * step, n) for t in range(g))


def smith_normal_form(a: Sequence[Sequence[int]]):
    """Integer Smith normal form with transforms.

    Returns (u, d, v) with u @ a @ v == d, u and v unimodular, d diagonal
    (stored as an r x c list of lists).
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(map(int, row)) for row in a]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(m, i, j):
        m[i], m[j] = m[j], m[i]

    def swap_cols(m, i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]

    def add_row(m, src, dst, k):
        # row[dst] += k * row[src]
        rs, rd = m[src], m[dst]
        for j in range(len(rd)):
            rd[j] += k * rs[j]

    def add_col(m, src, dst, k):
        for row in m:
            row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] and (best is None or abs(d[i][j]) < best):
                    best, pivot = abs(d[i][j]), (i, j)
        if pivot is None:
            break
        i, j = pivot
        swap_rows(d, t, i)
        swap_rows(u, t, i)
        swap_cols(d, t, j)
        swap_cols(v, t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, rows):
                q = d[i][t] // d[t][t]
                if q:
                    add_row(d, t, i, -q)
                    add_row(u, t, i, -q)
                if d[i][t]:
                    swap_rows(d, t, i)
                    swap_rows(u, t, i)
                    done = False
            for j in range(t + 1, cols):
                q = d[t][j] // d[t][t]
                if q:
                    add_col(d, t, j, -q)
                    add_col(v, t, j, -q)
                if d[t][j]:
                    swap_cols(d, t, j)
                    swap_cols(v, t, j)
                    done = False
            if done:
                # enforce divisibility of the remaining block
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if d[i][j] % d[t][t]:
                            add_row(d, i, t, 1)
                            add_row(u, i, t, 1)
                            done = False
                            break
                    if not done:
                        break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def solve_linear_system_mod(a: Sequence[Sequence[int]], b: Sequence[int], n: int):
    """One solution x of a @ x == b (mod n), or None when inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    u, d, v = smith_normal_form(a)
    ub = [sum(u[i][k] * b[k] for k in range(rows)) % n for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di == 0:
            if ub[i] % n:
                return None
            continue
        sols = solve_mod_linear(di, Residue(ub[i], n))
        if not sols:
            return None
        y[i] = min(sols).value
    return [sum(v[j][k] * y[k] for k in range(cols)) % n for j in range(cols)]


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _closure(gens, op, identity):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = op(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def element_order(x, op, identity) -> int:
    k, y = 1, x
    while y != identity:
        y = op(y, x)
        k += 1
    return k


def invariant_factors(elements: Iterable[Hashable], op: Callable,
                      identity: Hashable | None = None) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a finite abelian group.

    The group is given by its elements and a composition function. The
    p-primary parts are read off from the counts of elements whose order
    divides p**k, which determine every cyclic factor.
    """
    elements = list(elements)
    if identity is None:
        identity = next(e for e in elements if op(e, e) == e)
    order = len(elements)
    if order == 1:
        return ()

    # greedy generating set, commutativity is checked on it
    gens: list = []
    span = {identity}
    for x in elements:
        if x not in span:
            for g in gens:
                if op(g, x) != op(x, g):
                    raise NotAbelian(f"elements {g!r} and {x!r} do not commute")
            gens.append(x)
            span = _closure(gens, op, identity)
            if len(span) == order:
                break

    return invariant_factors_from_orders([element_order(x, op, identity) for x in elements])


def invariant_factors_from_orders(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of an abelian group given the orders of all its elements.

    For each prime p, the number of elements with order dividing p**k is
    p**(sum of min(k, e_i)) over the exponents e_i of the cyclic p-factors.
    """
    order = len(orders)
    primary: dict[int, list[int]] = {}
    for p in _prime_factors(order):
        ranks = []  # ranks[k-1] = number of cyclic p-factors with exponent >= k
        prev_log = 0
        k = 1
        while True:
            count = sum(1 for o in orders if (p ** k) % o == 0)
            log = round(math.log(count, p))
            if p ** log != count:
                raise NotAbelian(f"{count} elements of order dividing {p}^{k} is not a power of {p}")
            if log == prev_log:
                break
            ranks.append(log - prev_log)
            prev_log = log
            k += 1
        primary[p] = [sum(1 for r in ranks if r > i) for i in range(ranks[0] if ranks else 0)]

    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in primary.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    factors.sort()
    if math.prod(factors) != order:
        raise NotAbelian("element-order statistics inconsistent with an abelian group")
    return tuple(factors)


def cyclic_product_orders(factors: Sequence[int]) -> list[int]:
    """Sorted element orders of Z_{d1} x ... x Z_{dr} (brute force)."""
    out = [1]
    for d in factors:
        out = [math.lcm(o, d // math.gcd(a, d)) for o in out for a in range(d)]
    return sorted(out)
