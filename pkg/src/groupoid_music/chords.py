"""Set classes, chords n_t, voicings and affine voicing maps mod n."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NotEquivariant, ParseError, UnknownType


@dataclass(frozen=True)
class SetClass:
    name: str
    offsets: tuple[int, ...]
    n: int = 12

    def __post_init__(self):
        offs = tuple(int(o) % self.n for o in self.offsets)
        object.__setattr__(self, "offsets", offs)
        if not offs or offs[0] != 0:
            raise ValueError(f"set class {self.name}: offsets must start at 0")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError(f"set class {self.name}: offsets must be strictly increasing")

    @property
    def cardinality(self) -> int:
        return len(self.offsets)


@dataclass(frozen=True, order=True)
class Chord:
    root: int
    type: str

    def __str__(self):
        return f"{self.root}{self.type}"


_CHORD_RE = re.compile(r"^\s*(\d+)([^\d\s].*?)\s*$")


def parse_chord(text: str, n: int | None = None) -> Chord:
    m = _CHORD_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse chord {text!r}; expected <root><type>, e.g. 0M")
    root = int(m.group(1))
    if n is not None and root >= n:
        raise ParseError(f"root {root} out of range [0, {n})")
    return Chord(root, m.group(2))


class ChordRegistry:
    """The registered set classes of one instance, in declaration order."""

    def __init__(self, set_classes: Iterable[SetClass], n: int):
        self.n = n
        self.classes: dict[str, SetClass] = {}
        for sc in set_classes:
            if sc.n != n:
                raise ValueError(f"set class {sc.name} uses modulus {sc.n}, expected {n}")
            if sc.name in self.classes:
                raise ValueError(f"set class {sc.name} registered twice")
            self.classes[sc.name] = sc

    @classmethod
    def from_offsets(cls, offsets: Mapping[str, Sequence[int]], n: int = 12) -> ChordRegistry:
        return cls([SetClass(name, tuple(o), n) for name, o in offsets.items()], n)

    @property
    def types(self) -> list[str]:
        return list(self.classes)

    def __getitem__(self, name: str) -> SetClass:
        try:
            return self.classes[name]
        except KeyError:
            raise UnknownType(f"unknown chord type {name!r}") from None

    def chords(self) -> list[Chord]:
        """All chords, type-major then root-ascending."""
        return [Chord(r, t) for t in self.classes for r in range(self.n)]

    def chord(self, text: str) -> Chord:
        c = parse_chord(text, self.n)
        self[c.type]
        return c

    def realize(self, chord: Chord) -> frozenset[int]:
        sc = self[chord.type]
        return frozenset((chord.root + o) % self.n for o in sc.offsets)

    def classify(self, pcs: Iterable[int]) -> frozenset[Chord]:
        pcs = frozenset(p % self.n for p in pcs)
        found = set()
        for sc in self.classes.values():
            if sc.cardinality != len(pcs):
                continue
            for r in range(self.n):
                if frozenset((r + o) % self.n for o in sc.offsets) == pcs:
                    found.add(Chord(r, sc.name))
        return frozenset(found)

    def canonical_voicing(self, chord: Chord) -> tuple[int, ...]:
        sc = self[chord.type]
        return tuple((chord.root + o) % self.n for o in sc.offsets)


@dataclass(frozen=True)
class AffineMap:
    """v -> matrix @ v + constant, componentwise mod n."""

    matrix: tuple[tuple[int, ...], ...]
    constant: tuple[int, ...]
    n: int = 12

    def __post_init__(self):
        k = len(self.matrix)
        if any(len(row) != k for row in self.matrix) or len(self.constant) != k:
            raise DimensionMismatch("affine map must be square with a matching constant")
        object.__setattr__(self, "matrix",
                           tuple(tuple(x % self.n for x in row) for row in self.matrix))
        object.__setattr__(self, "constant", tuple(c % self.n for c in self.constant))

    @property
    def arity(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return apply_affine(self, v)

    @classmethod
    def identity(cls, k: int = 3, n: int = 12) -> AffineMap:
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), (0,) * k, n)


def apply_affine(f: AffineMap, v: Sequence[int]) -> tuple[int, ...]:
    if len(v) != f.arity:
        raise DimensionMismatch(f"voicing of length {len(v)} given to a map of arity {f.arity}")
    return tuple((sum(a * x for a, x in zip(row, v)) + c) % f.n
                 for row, c in zip(f.matrix, f.constant))


def check_equivariance(f: AffineMap) -> bool:
    """True iff f commutes with adding a constant to every coordinate."""
    return all(sum(row) % f.n == 1 % f.n for row in f.matrix)


@dataclass(frozen=True)
class RootLaw:
    """type -> (target type, root shift) as extracted from a voicing map."""

    entries: Mapping[str, tuple[str, int]]
    unclassified: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.unclassified


def root_law_of(f: AffineMap, registry: ChordRegistry) -> RootLaw:
    if not check_equivariance(f):
        raise NotEquivariant("a matrix row does not sum to 1; root laws are ill-defined")
    entries: dict[str, tuple[str, int]] = {}
    unclassified = []
    for t in registry.types:
        if registry[t].cardinality != f.arity:
            unclassified.append(t)
            continue
        image = registry.classify(f(registry.canonical_voicing(Chord(0, t))))
        if len(image) != 1:
            unclassified.append(t)
            continue
        (c,) = image
        # confirm the law at every root, not only at 0
        for r in range(registry.n):
            got = registry.classify(f(registry.canonical_voicing(Chord(r, t))))
            if got != {Chord((c.root + r) % registry.n, c.type)}:
                raise NotEquivariant(f"root law for {t} breaks at root {r}")
        entries[t] = (c.type, c.root)
    return RootLaw(entries, tuple(unclassified))


_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([a-z]?)")


def parse_affine(text: str, n: int = 12, variables: str = "xyz") -> AffineMap:
    """Parse 'z+2,x-1,y-2' style literals into an affine map over ``variables``."""
    parts = [p.strip() for p in text.split(",")]
    k = len(variables)
    if len(parts) != k:
        raise ParseError(f"expected {k} comma-separated expressions, got {len(parts)}")
    matrix, constant = [], []
    for expr in parts:
        row = [0] * k
        const = 0
        s = expr.replace(" ", "")
        if not s:
            raise ParseError("empty expression")
        pos = 0
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse {expr!r} at {s[pos:]!r}")
            sign, coef, var = m.groups()
            if not coef and not var:
                raise ParseError(f"dangling sign in {expr!r}")
            value = int(coef) if coef else 1
            if sign == "-":
                value = -value
            if var:
                if var not in variables:
                    raise ParseError(f"unknown variable {var!r} in {expr!r}")
                row[variables.index(var)] += value
            else:
                const += value
            pos = m.end()
            if pos < len(s) and s[pos] not in "+-":
                raise ParseError(f"expected + or - in {expr!r} at {s[pos:]!r}")
        matrix.append(tuple(row))
        constant.append(const)
    return AffineMap(tuple(matrix), tuple(constant), n)


def format_affine(f: AffineMap, variables: str = "xyz") -> str:
    out = []
    for row, c in zip(f.matrix, f.constant):
        terms = []
        for a, v in zip(row, variables):
            a = a if a <= f.n // 2 else a - f.n
            if a == 1:
                terms.append(f"+{v}")
            elif a == -1:
                terms.append(f"-{v}")
            elif a:
                terms.append(f"{a:+d}{v}")
        if c:
            terms.append(f"{c:+d}")
        out.append("".join(terms).lstrip("+") or "0")
    return ",".join(out)


# voicing maps as printed for the M / alpha / beta family
VOICING_FORMULAS = {
    "VL": "z+2,x-1,y-2",
    "VL'": "z+4,x+1,y",
    "I_Malpha": "x,2x-3-y,2x-3-z",
    "I_Mbeta": "2z+4-y,2z+4-x,z",
    "I_alphabeta": "2y-1-z,y,2y-1-x",
}
