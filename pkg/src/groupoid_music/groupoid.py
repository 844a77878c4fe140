"""Finite groupoids stored as explicit composition tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import DuplicateObject, IncompatibleComposition


@dataclass(frozen=True, order=True)
class HMorphism:
    id: str
    src: str
    dst: str

    def __str__(self):
        return self.id


def pair_label(x: str, y: str) -> str:
    return f"id:{x}" if x == y else f"h:{x}->{y}"


@dataclass(frozen=True, eq=False)
class Groupoid:
    """A finite groupoid.

    ``table`` maps (g2.id, g1.id) to the id of g2 . g1 and is defined exactly
    on pairs with t(g1) == s(g2).
    """

    objects: tuple[str, ...]
    morphisms: tuple[HMorphism, ...]
    identity: Mapping[str, HMorphism]
    table: Mapping[tuple[str, str], str]
    inverses: Mapping[str, str]
    _by_id: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {h.id: h for h in self.morphisms})

    def __getitem__(self, label: str) -> HMorphism:
        return self._by_id[label]

    def __contains__(self, h) -> bool:
        return isinstance(h, HMorphism) and self._by_id.get(h.id) == h

    def hom(self, x: str, y: str) -> list[HMorphism]:
        return [h for h in self.morphisms if h.src == x and h.dst == y]

    def compose(self, g2: HMorphism, g1: HMorphism) -> HMorphism:
        return compose(self, g2, g1)

    def inverse(self, h: HMorphism) -> HMorphism:
        return self._by_id[self.inverses[h.id]]

    def compatible_pairs(self):
        for g2, g1 in product(self.morphisms, repeat=2):
            if g1.dst == g2.src:
                yield g2, g1

    def compatible_triples(self):
        for g3, g2, g1 in product(self.morphisms, repeat=3):
            if g1.dst == g2.src and g2.dst == g3.src:
                yield g3, g2, g1


def compose(G: Groupoid, g2: HMorphism, g1: HMorphism) -> HMorphism:
    """g2 . g1 (apply g1 first)."""
    if g1.dst != g2.src:
        raise IncompatibleComposition(f"cannot compose {g2} . {g1}: t({g1}) = {g1.dst} != {g2.src}")
    try:
        return G[G.table[(g2.id, g1.id)]]
    except KeyError:
        raise IncompatibleComposition(f"composite {g2} . {g1} missing from table") from None


def validate(G: Groupoid) -> list[str]:
    """Every violated groupoid axiom instance; empty means valid."""
    report = []
    ids = {h.id for h in G.morphisms}
    if len(ids) != len(G.morphisms):
        report.append("duplicate morphism labels")
    if len(set(G.objects)) != len(G.objects):
        report.append("duplicate objects")
    for h in G.morphisms:
        if h.src not in G.objects or h.dst not in G.objects:
            report.append(f"{h}: endpoint outside object set")
    for x in G.objects:
        e = G.identity.get(x)
        if e is None or e.id not in ids:
            report.append(f"identity: object {x} has no identity")
        elif e.src != x or e.dst != x:
            report.append(f"identity: {e} is not an endomorphism of {x}")

    def comp(g2, g1):
        return G.table.get((g2.id, g1.id))

    for g2, g1 in product(G.morphisms, repeat=2):
        c = comp(g2, g1)
        if g1.dst == g2.src:
            if c is None or c not in ids:
                report.append(f"closure: {g2} . {g1} undefined")
            elif (G[c].src, G[c].dst) != (g1.src, g2.dst):
                report.append(f"closure: {g2} . {g1} = {c} has wrong endpoints")
        elif c is not None:
            report.append(f"closure: {g2} . {g1} defined on incompatible pair")
    if report:
        return report

    for h in G.morphisms:
        left = G.identity.get(h.dst)
        right = G.identity.get(h.src)
        if left is not None and comp(left, h) != h.id:
            report.append(f"identity law: id_{h.dst} . {h} != {h}")
        if right is not None and comp(h, right) != h.id:
            report.append(f"identity law: {h} . id_{h.src} != {h}")
    for g3, g2, g1 in G.compatible_triples():
        a = comp(G[comp(g3, g2)], g1)
        b = comp(g3, G[comp(g2, g1)])
        if a != b:
            report.append(f"associativity: ({g3} . {g2}) . {g1} = {a} but {g3} . ({g2} . {g1}) = {b}")
    for h in G.morphisms:
        inv = G.inverses.get(h.id)
        if inv is None or inv not in ids:
            report.append(f"inverse: {h} has no inverse")
            continue
        hi = G[inv]
        if hi.src != h.dst or hi.dst != h.src:
            report.append(f"inverse: {hi} has wrong endpoints for {h}")
            continue
        if comp(hi, h) != G.identity[h.src].id:
            report.append(f"inverse: {hi} . {h} != id_{h.src}")
        if comp(h, hi) != G.identity[h.dst].id:
            report.append(f"inverse: {h} . {hi} != id_{h.dst}")
    return report


def pair_groupoid(objects: Sequence[str]) -> Groupoid:
    """One morphism h:X->Y per ordered pair, with h:X->X the identity."""
    objects = tuple(objects)
    if not objects:
        raise ValueError("a groupoid needs at least one object")
    seen = set()
    for x in objects:
        if not x:
            raise ValueError("object names must be non-empty")
        if x in seen:
            raise DuplicateObject(f"object {x!r} repeated")
        seen.add(x)
    morphs = {(x, y): HMorphism(pair_label(x, y), x, y) for x in objects for y in objects}
    table = {}
    for x, y, z in product(objects, repeat=3):
        table[(morphs[y, z].id, morphs[x, y].id)] = morphs[x, z].id
    return Groupoid(
        objects=objects,
        morphisms=tuple(morphs[x, y] for x in objects for y in objects),
        identity={x: morphs[x, x] for x in objects},
        table=table,
        inverses={morphs[x, y].id: morphs[y, x].id for x in objects for y in objects},
    )


def cyclic_groupoid(m: int, obj: str = "*") -> Groupoid:
    """The cyclic group Z_m viewed as a one-object groupoid; morphism 'k' is k mod m."""
    if m < 1:
        raise ValueError("m must be positive")
    morphs = [HMorphism(f"{obj}^{k}" if k else f"id:{obj}", obj, obj) for k in range(m)]
    table = {(morphs[a].id, morphs[b].id): morphs[(a + b) % m].id
             for a in range(m) for b in range(m)}
    return Groupoid(
        objects=(obj,),
        morphisms=tuple(morphs),
        identity={obj: morphs[0]},
        table=table,
        inverses={morphs[a].id: morphs[-a % m].id for a in range(m)},
    )


def from_table(objects: Iterable[str], morphisms: Iterable[HMorphism],
               identity: Mapping[str, HMorphism], table: Mapping[tuple[str, str], str],
               inverses: Mapping[str, str]) -> Groupoid:
    """Build an arbitrary groupoid from raw data; call validate() on the result."""
    return Groupoid(tuple(objects), tuple(morphisms), dict(identity), dict(table), dict(inverses))
