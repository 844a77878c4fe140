"""Partial actions of an extension category on chords via representable functors.

Contravariant (Hom(-, M)): the chord n_X is the morphism (n, h:X->M) and a
morphism g acts by precomposition, c -> c . g.
Covariant (Hom(M, -)): n_X is (n, h:M->X) and g acts by postcomposition,
c -> g . c.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chords import Chord, ChordRegistry
from .errors import NotRepresented, PartialityViolation, UnknownType
from .extension import ExtensionCategory, GMorphism
from .groupoid import HMorphism

CONTRAVARIANT = "contravariant"
COVARIANT = "covariant"


@dataclass(frozen=True, eq=False)
class RepresentableAction:
    extension: ExtensionCategory
    registry: ChordRegistry
    base_object: str | None = None
    variance: str = CONTRAVARIANT

    def __post_init__(self):
        E = self.extension
        if self.base_object is None:
            object.__setattr__(self, "base_object", E.objects[0])
        if self.base_object not in E.objects:
            raise UnknownType(f"base object {self.base_object!r} is not an object of the extension")
        if self.variance not in (CONTRAVARIANT, COVARIANT):
            raise ValueError(f"variance must be {CONTRAVARIANT!r} or {COVARIANT!r}")
        if self.registry.n != E.n:
            raise ValueError("chord registry and extension use different moduli")
        for t in self.registry.types:
            if t not in E.objects:
                raise UnknownType(f"chord type {t!r} is not an object of the extension")
        links = {}
        for x in self.registry.types:
            src, dst = (x, self.base_object) if self.contravariant else (self.base_object, x)
            hs = E.shape.hom(src, dst)
            if len(hs) != 1:
                raise ValueError(f"need exactly one shape morphism {src}->{dst}, found {len(hs)}")
            links[x] = hs[0]
        object.__setattr__(self, "_links", links)

    @property
    def contravariant(self) -> bool:
        return self.variance == CONTRAVARIANT

    @property
    def n(self) -> int:
        return self.extension.n

    def link(self, x: str) -> HMorphism:
        try:
            return self._links[x]
        except KeyError:
            raise UnknownType(f"unknown chord type {x!r}") from None

    def chords(self) -> list[Chord]:
        return self.registry.chords()

    def chord_to_morphism(self, c: Chord) -> GMorphism:
        return chord_to_morphism(self, c)

    def morphism_to_chord(self, g: GMorphism) -> Chord:
        return morphism_to_chord(self, g)

    def act(self, g: GMorphism, c: Chord) -> Chord:
        return act(self, g, c)

    def domain_type(self, g: GMorphism) -> str:
        """The chord type g can act on."""
        return g.dst if self.contravariant else g.src

    def image_type(self, g: GMorphism) -> str:
        return g.src if self.contravariant else g.dst


def chord_to_morphism(A: RepresentableAction, c: Chord) -> GMorphism:
    return GMorphism(c.root % A.n, A.link(c.type))


def morphism_to_chord(A: RepresentableAction, g: GMorphism) -> Chord:
    if A.contravariant:
        x, end = g.src, g.dst
    else:
        x, end = g.dst, g.src
    if end != A.base_object or x not in A.registry.classes or A.link(x) != g.h:
        raise NotRepresented(f"{g} is not in the represented family at {A.base_object}")
    return Chord(g.z, x)


def act(A: RepresentableAction, g: GMorphism, c: Chord) -> Chord:
    if A.domain_type(g) != c.type:
        raise PartialityViolation(f"{g} does not act on chords of type {c.type}")
    m = chord_to_morphism(A, c)
    E = A.extension
    return morphism_to_chord(A, E.compose(m, g) if A.contravariant else E.compose(g, m))


def interval(A: RepresentableAction, c1: Chord, c2: Chord) -> GMorphism:
    """The unique g with act(A, g, c1) == c2."""
    E = A.extension
    m1, m2 = chord_to_morphism(A, c1), chord_to_morphism(A, c2)
    if A.contravariant:
        return E.compose(E.inverse(m1), m2)
    return E.compose(m2, E.inverse(m1))


def orbit(A: RepresentableAction, gens: Iterable[GMorphism], c: Chord) -> set[Chord]:
    gens = list(gens)
    seen = {c}
    frontier = [c]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                if A.domain_type(g) != x.type:
                    continue
                y = act(A, g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen
