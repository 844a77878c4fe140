from __future__ import annotations

import pytest

from groupoid_music.actions import (RepresentableAction, act, chord_to_morphism, interval,
                                    morphism_to_chord, orbit)
from groupoid_music.chords import Chord, ChordRegistry
from groupoid_music.errors import NotRepresented, PartialityViolation, UnknownType


def test_chord_morphism_correspondence(mab, mm):
    A = mab.action
    assert chord_to_morphism(A, Chord(3, "beta")) == mab.extension.morphism(3, "h:beta->M")
    assert chord_to_morphism(A, Chord(5, "M")) == mab.extension.morphism(5, "id:M")
    B = mm.action
    assert chord_to_morphism(B, Chord(3, "m")) == mm.extension.morphism(3, "h:M->m")
    for inst in (mab, mm):
        A = inst.action
        for c in A.chords():
            assert morphism_to_chord(A, chord_to_morphism(A, c)) == c
    with pytest.raises(NotRepresented):
        morphism_to_chord(mab.action, mab.extension.morphism(0, "h:M->beta"))
    with pytest.raises(UnknownType):
        chord_to_morphism(mab.action, Chord(0, "gamma"))


def test_partiality(mab):
    g = mab.extension.morphism(2, "h:beta->M")
    assert act(mab.action, g, Chord(0, "M")) == Chord(2, "beta")
    for t in ("alpha", "beta"):
        with pytest.raises(PartialityViolation):
            act(mab.action, g, Chord(0, t))


def test_contextual_root_shift(mab):
    # the composition law written out for the beta/M shapes
    E, A = mab.extension, mab.action
    # direct formula: n_M = (n, id_M); (n, id_M) . (z, h:beta->M) = (n + z, h:beta->M)
    for n in range(12):
        for z in range(12):
            assert act(A, E.morphism(z, "h:beta->M"), Chord(n, "M")) == Chord((n + z) % 12, "beta")
    # and back: (n, h:beta->M) . (z, h:M->beta) = (n + 5z, id_M)
    for n in range(12):
        for z in range(12):
            assert act(A, E.morphism(z, "h:M->beta"), Chord(n, "beta")) == Chord((n + 5 * z) % 12, "M")


def test_covariant_action_formula(mm):
    # Mm: n_X = (n, h:M->X) and g acts on the left
    E, A = mm.extension, mm.action
    for n in range(12):
        for z in range(12):
            assert act(A, E.morphism(z, "h:M->m"), Chord(n, "M")) == Chord((z + 11 * n) % 12, "m")
            assert act(A, E.morphism(z, "id:m"), Chord(n, "m")) == Chord((z + n) % 12, "m")


def test_interval_examples(mab):
    A, E = mab.action, mab.extension
    assert interval(A, Chord(0, "M"), Chord(2, "beta")) == E.morphism(2, "h:beta->M")
    assert interval(A, Chord(5, "alpha"), Chord(5, "alpha")) == E.identity("alpha")
    g = interval(A, Chord(0, "alpha"), Chord(7, "beta"))
    assert act(A, g, Chord(0, "alpha")) == Chord(7, "beta")


def test_orbits(mab):
    A, E = mab.action, mab.extension
    assert orbit(A, [E.morphism(1, "id:M")], Chord(0, "M")) == {Chord(r, "M") for r in range(12)}
    gens = [E.morphism(0, "h:alpha->M"), E.morphism(0, "h:M->alpha")]
    got = orbit(A, gens, Chord(0, "M"))
    assert got == {Chord(0, "M"), Chord(0, "alpha")}
    # one morphism per shape plus a loop reaches every chord
    assert len(orbit(A, gens + [E.morphism(1, "id:M"), E.morphism(0, "h:beta->M")], Chord(0, "M"))) == 36


def test_construction_errors(mab):
    E = mab.extension
    reg = ChordRegistry.from_offsets({"M": [0, 4, 7]})
    with pytest.raises(UnknownType):
        RepresentableAction(E, reg, "gamma")
    with pytest.raises(ValueError):
        RepresentableAction(E, reg, "M", "sideways")
    with pytest.raises(ValueError):
        RepresentableAction(E, ChordRegistry.from_offsets({"M": [0, 4, 7]}, 7), "M")
    with pytest.raises(UnknownType):
        RepresentableAction(E, ChordRegistry.from_offsets({"Q": [0, 1]}), "M")
