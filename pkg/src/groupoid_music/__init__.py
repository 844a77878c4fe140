"""Groupoid extensions of cyclic groups, partial chord actions and the
permutation groups generated by packaged operators."""

from __future__ import annotations

from .actions import RepresentableAction, act, chord_to_morphism, interval, morphism_to_chord, orbit
from .chords import AffineMap, Chord, ChordRegistry, SetClass, parse_affine, parse_chord, root_law_of
from .errors import (GroupoidMusicError, NotAbelian, IncompatibleComposition, DuplicateObject,
                     InvalidAction, InvalidCocycle, DeskScaleExceeded, UnknownType,
                     DimensionMismatch, NotEquivariant, NotRepresented, PartialityViolation,
                     NotAPackaging, ClosureBudgetExceeded, ParseError, ValidationError)
from .extension import (ActionFunctor, BaseCategory, ExtensionCategory, GMorphism, TwoCocycle,
                        build_extension, cohomologous, verify_extension_axioms)
from .group_extensions import enumerate_group_extensions
from .groupoid import Groupoid, HMorphism, pair_groupoid
from .groups import (analyze_group, cyclic_certificate, dihedral_certificate, generate_group,
                     symmetric_group_table_matches, wreath_certificate)
from .instance import PRESETS, build_instance, load_instance, verify_instance
from .modular import AutMultiplier, Residue, invariant_factors, unit_group
from .packaged import (PackagedOperator, compile_root_law, compose_packaged, package,
                       permutation_rep, transposition, zero_shift_inversion)

__version__ = "0.1.0"
