"""Category extensions 1 -> Z -> G -> H -> 1 with abelian cyclic fibres.

Morphisms of G are pairs (z, h) with z a shift in the fibre Z_n at t(h).
Composition follows

    (z2, h2) . (z1, h1) = (z2 + phi(h2) * z1 + zeta(h2, h1), h2 . h1)

written additively since every fibre is Z_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .errors import IncompatibleComposition, InvalidAction, InvalidCocycle
from .groupoid import Groupoid, HMorphism, validate
from .modular import inverse_mod, solve_linear_system_mod


@dataclass(frozen=True)
class BaseCategory:
    """Disjoint union of copies of Z_n, one per object."""

    objects: tuple[str, ...]
    order: int

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        if self.order < 1:
            raise ValueError("fibre order must be positive")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate objects in base category")

    def morphisms(self):
        return [ZMorphism(x, p) for x in self.objects for p in range(self.order)]


@dataclass(frozen=True, order=True)
class ZMorphism:
    object: str
    shift: int


@dataclass(frozen=True)
class ActionFunctor:
    """Multiplier phi(h): the fibre at s(h) -> the fibre at t(h), x -> k*x."""

    multipliers: Mapping[str, int]
    n: int

    def __call__(self, h: HMorphism) -> int:
        return self.multipliers[h.id] % self.n

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.multipliers.items()))))


@dataclass(frozen=True)
class TwoCocycle:
    """zeta(h2, h1) in the fibre at t(h2); missing entries are 0."""

    values: Mapping[tuple[str, str], int]
    n: int

    def __call__(self, h2: HMorphism, h1: HMorphism) -> int:
        return self.values.get((h2.id, h1.id), 0) % self.n

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.values.items()))))

    @classmethod
    def zero(cls, n: int) -> TwoCocycle:
        return cls({}, n)


@dataclass(frozen=True, order=True)
class GMorphism:
    z: int
    h: HMorphism

    @property
    def src(self) -> str:
        return self.h.src

    @property
    def dst(self) -> str:
        return self.h.dst

    def __str__(self):
        return f"({self.z}, {self.h.id})"


def trivial_action(H: Groupoid, n: int) -> ActionFunctor:
    return ActionFunctor({h.id: 1 for h in H.morphisms}, n)


def check_action_functor(H: Groupoid, phi: ActionFunctor) -> list[str]:
    report = []
    n = phi.n
    for h in H.morphisms:
        if h.id not in phi.multipliers:
            report.append(f"phi undefined on {h}")
        elif math.gcd(phi.multipliers[h.id] % n, n) != 1:
            report.append(f"phi({h}) = {phi.multipliers[h.id]} is not a unit mod {n}")
    if report:
        return report
    for x in H.objects:
        e = H.identity[x]
        if phi(e) != 1 % n:
            report.append(f"phi(id_{x}) = {phi(e)} != 1")
    for h2, h1 in H.compatible_pairs():
        lhs = phi(H.compose(h2, h1))
        rhs = phi(h2) * phi(h1) % n
        if lhs != rhs:
            report.append(
                f"functoriality: phi({h2})*phi({h1}) = {phi(h2)}*{phi(h1)} = {rhs} "
                f"!= phi({H.compose(h2, h1)}) = {lhs} (mod {n})")
    return report


def check_cocycle(H: Groupoid, phi: ActionFunctor, zeta: TwoCocycle) -> list[str]:
    """Cocycle identity on every compatible triple (h3, h2, h1)."""
    n = zeta.n
    report = []
    for h3, h2, h1 in H.compatible_triples():
        h21 = H.compose(h2, h1)
        h32 = H.compose(h3, h2)
        lhs = (phi(h3) * zeta(h2, h1) + zeta(h3, h21)) % n
        rhs = (zeta(h3, h2) + zeta(h32, h1)) % n
        if lhs != rhs:
            report.append(f"cocycle: ({h3}, {h2}, {h1}) gives {lhs} != {rhs} (mod {n})")
    return report


def normalization_report(H: Groupoid, zeta: TwoCocycle) -> list[str]:
    report = []
    for h in H.morphisms:
        if zeta(h, H.identity[h.src]):
            report.append(f"normalization: zeta({h}, id_{h.src}) != 0")
        if zeta(H.identity[h.dst], h):
            report.append(f"normalization: zeta(id_{h.dst}, {h}) != 0")
    return report


@dataclass(frozen=True, eq=False)
class ExtensionCategory:
    base: BaseCategory
    shape: Groupoid
    phi: ActionFunctor
    zeta: TwoCocycle
    _morphisms: tuple = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return self.base.order

    @property
    def objects(self) -> tuple[str, ...]:
        return self.shape.objects

    @property
    def morphisms(self) -> tuple[GMorphism, ...]:
        if not self._morphisms:
            object.__setattr__(self, "_morphisms", tuple(
                GMorphism(z, h) for h in self.shape.morphisms for z in range(self.n)))
        return self._morphisms

    def h(self, label: str) -> HMorphism:
        return self.shape[label]

    def identity(self, x: str) -> GMorphism:
        return GMorphism(0, self.shape.identity[x])

    def morphism(self, z: int, h: HMorphism | str) -> GMorphism:
        if isinstance(h, str):
            h = self.shape[h]
        return GMorphism(z % self.n, h)

    def compose(self, g2: GMorphism, g1: GMorphism) -> GMorphism:
        return g_compose(self, g2, g1)

    def inverse(self, g: GMorphism) -> GMorphism:
        return g_inverse(self, g)

    def hom(self, x: str, y: str) -> list[GMorphism]:
        return [g for g in self.morphisms if g.src == x and g.dst == y]


def build_extension(base: BaseCategory, H: Groupoid, phi: ActionFunctor,
                    zeta: TwoCocycle | None = None) -> ExtensionCategory:
    if zeta is None:
        zeta = TwoCocycle.zero(base.order)
    if set(base.objects) != set(H.objects) or len(base.objects) != len(H.objects):
        raise ValueError("base category and shape groupoid must have the same objects")
    if phi.n != base.order or zeta.n != base.order:
        raise ValueError("action and cocycle must use the fibre order of the base")
    shape_report = validate(H)
    if shape_report:
        raise ValueError("shape is not a groupoid: " + "; ".join(shape_report[:3]))
    report = check_action_functor(H, phi)
    if report:
        raise InvalidAction(report)
    report = normalization_report(H, zeta) + check_cocycle(H, phi, zeta)
    if report:
        raise InvalidCocycle(report)
    return ExtensionCategory(base, H, phi, zeta)


def g_compose(E: ExtensionCategory, g2: GMorphism, g1: GMorphism) -> GMorphism:
    if g1.dst != g2.src:
        raise IncompatibleComposition(f"cannot compose {g2} . {g1}: t(g1) = {g1.dst} != s(g2) = {g2.src}")
    h = E.shape.compose(g2.h, g1.h)
    z = g2.z + E.phi(g2.h) * g1.z + E.zeta(g2.h, g1.h)
    return GMorphism(z % E.n, h)


def g_inverse(E: ExtensionCategory, g: GMorphism) -> GMorphism:
    hi = E.shape.inverse(g.h)
    z = -(E.phi(hi) * g.z + E.zeta(hi, g.h))
    return GMorphism(z % E.n, hi)


@dataclass(frozen=True)
class ExtensionWitness:
    include: Callable[[ZMorphism], GMorphism]
    project: Callable[[GMorphism], HMorphism]


def canonical_witness(E: ExtensionCategory) -> ExtensionWitness:
    return ExtensionWitness(
        include=lambda zm: GMorphism(zm.shift % E.n, E.shape.identity[zm.object]),
        project=lambda g: g.h,
    )


def verify_extension_axioms(E: ExtensionCategory, W: ExtensionWitness | None = None,
                            morphisms: Iterable[GMorphism] | None = None) -> list[str]:
    """Check the three extension conditions exhaustively.

    ``morphisms`` overrides the morphism set of G, e.g. to audit a
    hand-built category against the same composition law.
    """
    if W is None:
        W = canonical_witness(E)
    G = list(E.morphisms if morphisms is None else morphisms)
    gset = set(G)
    H = E.shape
    n = E.n
    report = []

    g_objects = {x for g in G for x in (g.src, g.dst)}
    if not (len(E.base.objects) == len(H.objects) == len(g_objects)):
        report.append(f"condition 1: object counts Z={len(E.base.objects)}, "
                      f"G={len(g_objects)}, H={len(H.objects)} differ")

    images = {}
    for zm in E.base.morphisms():
        g = W.include(zm)
        if g not in gset:
            report.append(f"condition 2: I({zm}) = {g} is not a morphism of G")
        if g in images:
            report.append(f"condition 2: I not injective, I({zm}) = I({images[g]})")
        images[g] = zm
        if g.src != zm.object or g.dst != zm.object:
            report.append(f"condition 2: I({zm}) has wrong endpoints")
    for x in E.base.objects:
        if W.include(ZMorphism(x, 0)) != E.identity(x):
            report.append(f"condition 2: I does not preserve the identity of {x}")
        for p in range(n):
            for q in range(n):
                lhs = W.include(ZMorphism(x, (p + q) % n))
                rhs = E.compose(W.include(ZMorphism(x, p)), W.include(ZMorphism(x, q)))
                if lhs != rhs:
                    report.append(f"condition 2: I not a functor at {x}: {p}+{q}")

    hit = set()
    for g in G:
        hit.add(W.project(g))
    for h in H.morphisms:
        if h not in hit:
            report.append(f"condition 2: P not surjective, {h} not hit")
    for x in H.objects:
        e = E.identity(x)
        if e in gset and W.project(e) != H.identity[x]:
            report.append(f"condition 2: P does not preserve the identity of {x}")
    for g2 in G:
        for g1 in G:
            if g1.dst != g2.src:
                continue
            c = E.compose(g2, g1)
            if W.project(c) != H.compose(W.project(g2), W.project(g1)):
                report.append(f"condition 2: P not a functor on {g2} . {g1}")

    # condition 3: P(g1) = P(g2) iff exactly one z with g2 = I(z) . g1
    for g1 in G:
        hits: dict[GMorphism, int] = {}
        for p in range(n):
            c = E.compose(W.include(ZMorphism(g1.dst, p)), g1)
            if c not in gset:
                report.append(f"condition 3: I(z^{p}_{g1.dst}) . {g1} = {c} is not a morphism of G")
                continue
            hits[c] = hits.get(c, 0) + 1
        for g2 in G:
            same = W.project(g1) == W.project(g2)
            count = hits.get(g2, 0)
            if same and count != 1:
                report.append(f"condition 3: {count} shifts z with {g2} = I(z) . {g1} (need exactly 1)")
            elif not same and count:
                report.append(f"condition 3: {g2} = I(z) . {g1} although P differs")
    return report


def coboundary_of(H: Groupoid, phi: ActionFunctor, cochain: Mapping[str, int]) -> TwoCocycle:
    """zeta(h2, h1) = c(h2) + phi(h2) c(h1) - c(h2 . h1)."""
    n = phi.n
    values = {}
    for h2, h1 in H.compatible_pairs():
        v = (cochain.get(h2.id, 0) + phi(h2) * cochain.get(h1.id, 0)
             - cochain.get(H.compose(h2, h1).id, 0)) % n
        if v:
            values[(h2.id, h1.id)] = v
    return TwoCocycle(values, n)


def cohomologous(H: Groupoid, phi: ActionFunctor, zeta1: TwoCocycle,
                 zeta2: TwoCocycle) -> dict[str, int] | None:
    """A 1-cochain c with zeta2 - zeta1 = coboundary(c), or None."""
    n = phi.n
    index = {h.id: i for i, h in enumerate(H.morphisms)}
    rows, rhs = [], []
    for h2, h1 in H.compatible_pairs():
        row = [0] * len(index)
        row[index[h2.id]] += 1
        row[index[h1.id]] += phi(h2)
        row[index[H.compose(h2, h1).id]] -= 1
        rows.append(row)
        rhs.append((zeta2(h2, h1) - zeta1(h2, h1)) % n)
    sol = solve_linear_system_mod(rows, rhs, n)
    if sol is None:
        return None
    return {h.id: sol[index[h.id]] for h in H.morphisms}


def cocycles_cohomologous(E1: ExtensionCategory, E2: ExtensionCategory) -> dict[str, int] | None:
    if E1.shape is not E2.shape and E1.shape.morphisms != E2.shape.morphisms:
        raise ValueError("extensions must share the shape groupoid")
    if E1.n != E2.n or dict(E1.phi.multipliers) != dict(E2.phi.multipliers):
        raise ValueError("extensions must share the base and the action")
    return cohomologous(E1.shape, E1.phi, E1.zeta, E2.zeta)


def action_from_generators(H: Groupoid, n: int, generators: Mapping[str, int]) -> ActionFunctor:
    """Extend multipliers given on some morphisms of a pair groupoid.

    Each non-identity h:X->Y gets phi(h:R->Y) * phi(h:R->X)^-1 relative to the
    first object R; ``generators`` must fix phi on every h:R->Y.
    """
    root = H.objects[0]
    to_root = {root: 1}
    for y in H.objects[1:]:
        h = H.hom(root, y)[0]
        to_root[y] = generators[h.id] % n
    mult = {}
    for h in H.morphisms:
        mult[h.id] = to_root[h.dst] * inverse_mod(to_root[h.src], n) % n
    return ActionFunctor(mult, n)
