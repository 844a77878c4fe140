"""Packaged operators: one extension morphism per object, with the induced
object map a permutation. They compose into groups acting on all chords."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .actions import RepresentableAction, interval
from .chords import Chord
from .errors import NotAPackaging
from .extension import ExtensionCategory, GMorphism


@dataclass(frozen=True, order=True)
class PackagedOperator:
    morphisms: tuple[GMorphism, ...]  # sorted, one per source object

    def by_source(self) -> dict[str, GMorphism]:
        return {g.src: g for g in self.morphisms}

    def by_target(self) -> dict[str, GMorphism]:
        return {g.dst: g for g in self.morphisms}

    def object_map(self) -> dict[str, str]:
        return {g.src: g.dst for g in self.morphisms}

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.morphisms) + "}"


def package(E: ExtensionCategory, morphisms: Iterable[GMorphism]) -> PackagedOperator:
    morphisms = list(morphisms)
    srcs: dict[str, int] = {}
    dsts: dict[str, int] = {}
    for g in morphisms:
        if g.h not in E.shape or not 0 <= g.z < E.n:
            raise NotAPackaging(f"{g} is not a morphism of the extension")
        srcs[g.src] = srcs.get(g.src, 0) + 1
        dsts[g.dst] = dsts.get(g.dst, 0) + 1
    bad_src = [x for x in E.objects if srcs.get(x, 0) != 1]
    bad_dst = [x for x in E.objects if dsts.get(x, 0) != 1]
    if bad_src:
        raise NotAPackaging(f"objects {bad_src} do not occur exactly once as a source", bad_src)
    if bad_dst:
        raise NotAPackaging(f"objects {bad_dst} do not occur exactly once as a target", bad_dst)
    order = {x: i for i, x in enumerate(E.objects)}
    return PackagedOperator(tuple(sorted(morphisms, key=lambda g: order[g.src])))


def identity_packaged(E: ExtensionCategory) -> PackagedOperator:
    return package(E, [E.identity(x) for x in E.objects])


def compose_packaged(E: ExtensionCategory, O1: PackagedOperator, O2: PackagedOperator) -> PackagedOperator:
    """O1 . O2: every composite g1 . g2 with s(g1) == t(g2)."""
    first = O1.by_source()
    return package(E, [E.compose(first[g2.dst], g2) for g2 in O2.morphisms])


def inverse_packaged(E: ExtensionCategory, O: PackagedOperator) -> PackagedOperator:
    return package(E, [E.inverse(g) for g in O.morphisms])


def power_packaged(E: ExtensionCategory, O: PackagedOperator, k: int) -> PackagedOperator:
    if k < 0:
        O, k = inverse_packaged(E, O), -k
    out = identity_packaged(E)
    for _ in range(k):
        out = compose_packaged(E, out, O)
    return out


def transposition(E: ExtensionCategory, x: str, shift: int = 1) -> PackagedOperator:
    """{z_X^shift, id_Y for Y != X}."""
    return package(E, [E.morphism(shift if y == x else 0, E.shape.identity[y]) for y in E.objects])


def zero_shift_inversion(E: ExtensionCategory, x: str, y: str) -> PackagedOperator:
    """{(0, h:X->Y), (0, h:Y->X), id_Z}; needs a pair groupoid shape."""
    out = []
    for z in E.objects:
        if z == x:
            out.append(GMorphism(0, E.shape.hom(x, y)[0]))
        elif z == y:
            out.append(GMorphism(0, E.shape.hom(y, x)[0]))
        else:
            out.append(E.identity(z))
    return package(E, out)


RootLaw = Mapping[str, tuple[str, int]]


def compile_root_law(A: RepresentableAction, law: RootLaw) -> PackagedOperator:
    """The bundle sending 0_X to (shift)_Y for every entry X -> (Y, shift).

    Types missing from ``law`` are fixed. Under contravariant actions the
    result realizes n_X -> (n + shift)_Y at every root.
    """
    E = A.extension
    full = {x: (x, 0) for x in E.objects}
    full.update({x: (y, int(s) % A.n) for x, (y, s) in law.items()})
    targets = [y for y, _ in full.values()]
    if sorted(targets) != sorted(E.objects):
        dup = sorted({y for y in targets if targets.count(y) != 1} | (set(E.objects) - set(targets)))
        raise NotAPackaging(f"root law object map is not a permutation (offending: {dup})", dup)
    return package(E, [interval(A, Chord(0, x), Chord(s, y)) for x, (y, s) in full.items()])


def act_packaged(A: RepresentableAction, O: PackagedOperator, c: Chord) -> Chord:
    table = O.by_target() if A.contravariant else O.by_source()
    return A.act(table[c.type], c)


def permutation_rep(A: RepresentableAction, O: PackagedOperator) -> tuple[int, ...]:
    """Images of the chords in canonical order (types in order, roots ascending).

    Contravariant: rep(O1 . O2) applies rep(O1) first; covariant: rep(O2) first.
    """
    chords = A.chords()
    index = {c: i for i, c in enumerate(chords)}
    table = O.by_target() if A.contravariant else O.by_source()
    return tuple(index[A.act(table[c.type], c)] for c in chords)
