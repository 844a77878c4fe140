"""Instance files (JSON), presets, and the verification suite run by ``verify``."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Any

from .actions import RepresentableAction, interval
from .chords import Chord, ChordRegistry, parse_affine, root_law_of
from .errors import (GroupoidMusicError, InvalidAction, InvalidCocycle, NotAPackaging,
                     NotEquivariant, ParseError, ValidationError)
from .extension import (ActionFunctor, BaseCategory, ExtensionCategory, TwoCocycle,
                        build_extension, canonical_witness, check_action_functor,
                        check_cocycle, normalization_report, verify_extension_axioms)
from .groupoid import Groupoid, pair_groupoid, pair_label, validate
from .modular import unit_group
from .packaged import (PackagedOperator, compile_root_law, compose_packaged,
                       identity_packaged, power_packaged)

PRESETS = ("MAlphaBeta", "Mm")


@dataclass
class InstanceSpec:
    n: int
    objects: list[str]
    set_classes: dict[str, list[int]]
    phi: dict[str, int]
    zeta: dict[str, int] = field(default_factory=dict)
    base_object: str | None = None
    variance: str = "contravariant"
    operators: dict[str, list[dict]] = field(default_factory=dict)
    voicings: dict[str, str] = field(default_factory=dict)
    relations: list[str] = field(default_factory=list)
    name: str = "instance"

    @classmethod
    def from_dict(cls, data: dict) -> InstanceSpec:
        try:
            spec = cls(
                n=int(data["n"]),
                objects=[str(x) for x in data["objects"]],
                set_classes={k: [int(o) for o in v] for k, v in data["set_classes"].items()},
                phi={k: int(v) for k, v in data.get("phi", {}).items()},
                zeta={k: int(v) for k, v in data.get("zeta", {}).items()},
                base_object=data.get("base_object"),
                variance=data.get("variance", "contravariant"),
                operators={k: [dict(e) for e in v] for k, v in data.get("operators", {}).items()},
                voicings=dict(data.get("voicings", {})),
                relations=list(data.get("relations", [])),
                name=data.get("name", "instance"),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"malformed instance: {exc!r}") from exc
        return spec

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "objects": list(self.objects),
            "set_classes": {k: list(v) for k, v in self.set_classes.items()},
            "phi": dict(self.phi),
            "zeta": dict(self.zeta),
            "base_object": self.base_object,
            "variance": self.variance,
            "operators": {k: [dict(e) for e in v] for k, v in self.operators.items()},
            "voicings": dict(self.voicings),
            "relations": list(self.relations),
        }


@dataclass(eq=False)
class Instance:
    spec: InstanceSpec
    extension: ExtensionCategory
    action: RepresentableAction
    operators: dict[str, PackagedOperator]
    laws: dict[str, dict[str, tuple[str, int]]]

    @property
    def registry(self) -> ChordRegistry:
        return self.action.registry

    def operator(self, name: str) -> PackagedOperator:
        try:
            return self.operators[name]
        except KeyError:
            raise ValidationError(f"unknown operator {name!r}; known: {sorted(self.operators)}") from None


def _shape_label(H: Groupoid, key: str) -> str:
    key = key.strip()
    if key in H._by_id:
        return key
    if "->" in key:
        x, y = (s.strip() for s in key.split("->", 1))
        label = pair_label(x, y)
        if label in H._by_id:
            return label
    raise ParseError(f"unknown shape morphism {key!r}")


def _law(spec: InstanceSpec, name: str) -> dict[str, tuple[str, int]]:
    law = {}
    for entry in spec.operators[name]:
        try:
            x, y, s = entry["from"], entry["to"], int(entry.get("shift", 0))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"operator {name}: bad entry {entry!r}") from exc
        if x in law:
            raise ValidationError(f"operator {name}: {x} appears twice as a source")
        law[x] = (y, s % spec.n)
    return law


def build_instance(spec: InstanceSpec) -> Instance:
    n = spec.n
    if n < 1:
        raise ValidationError("n must be positive")
    try:
        H = pair_groupoid(spec.objects)
    except (ValueError, GroupoidMusicError) as exc:
        raise ValidationError(str(exc)) from exc
    for name in list(spec.set_classes) + [spec.base_object or spec.objects[0]]:
        if name not in spec.objects:
            raise ValidationError(f"{name!r} is not a declared object")
    mult = {h.id: 1 for h in H.morphisms}
    for key, k in spec.phi.items():
        mult[_shape_label(H, key)] = k % n
    missing = [h.id for h in H.morphisms if h.src != h.dst
               and not any(_shape_label(H, key) == h.id for key in spec.phi)]
    if missing:
        raise ValidationError(f"phi missing for {missing}", [f"phi undefined on {m}" for m in missing])
    phi = ActionFunctor(mult, n)
    values = {}
    for key, v in spec.zeta.items():
        if "|" not in key:
            raise ParseError(f"zeta key {key!r} must be 'h2|h1'")
        a, b = key.split("|", 1)
        values[(_shape_label(H, a), _shape_label(H, b))] = v % n
    zeta = TwoCocycle(values, n)
    try:
        E = build_extension(BaseCategory(tuple(spec.objects), n), H, phi, zeta)
    except InvalidAction as exc:
        raise ValidationError("action functor is not functorial", exc.report) from exc
    except InvalidCocycle as exc:
        raise ValidationError("zeta is not a normalized 2-cocycle", exc.report) from exc
    try:
        registry = ChordRegistry.from_offsets(spec.set_classes, n)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    if set(registry.types) != set(spec.objects):
        raise ValidationError("every object needs a set class")
    A = RepresentableAction(E, registry, spec.base_object, spec.variance)
    operators, laws = {}, {}
    for name in spec.operators:
        for entry in spec.operators[name]:
            for key in ("from", "to"):
                if entry.get(key) not in spec.objects:
                    raise ValidationError(f"operator {name}: unknown object {entry.get(key)!r}")
        laws[name] = _law(spec, name)
        try:
            operators[name] = compile_root_law(A, laws[name])
        except NotAPackaging as exc:
            raise ValidationError(f"operator {name}: {exc}") from exc
    return Instance(spec, E, A, operators, laws)


def preset_spec(name: str) -> InstanceSpec:
    if name not in PRESETS:
        raise ParseError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    text = resources.files("groupoid_music").joinpath("presets", f"{name}.json").read_text("utf-8")
    return InstanceSpec.from_dict(json.loads(text))


def load_spec(source: str | Path) -> InstanceSpec:
    if str(source) in PRESETS:
        return preset_spec(str(source))
    try:
        data = json.loads(Path(source).read_text("utf-8"))
    except FileNotFoundError as exc:
        raise ParseError(f"no such instance file or preset: {source}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON: {exc}") from exc
    return InstanceSpec.from_dict(data)


def load_instance(source: str | Path) -> Instance:
    return build_instance(load_spec(source))


# relations such as "VL^3 = T1^-1" or "I_a*I_b*I_a = I_b*I_a*I_b"
_FACTOR_RE = re.compile(r"^(.+?)(?:\^(-?\d+))?$")


def evaluate_word(inst: Instance, word: str, overrides: dict | None = None) -> PackagedOperator:
    E = inst.extension
    ops = dict(inst.operators)
    if overrides:
        ops.update(overrides)
    out = identity_packaged(E)
    for token in word.split("*"):
        token = token.strip()
        m = _FACTOR_RE.match(token)
        if not token or not m:
            raise ParseError(f"bad factor {token!r} in {word!r}")
        name, power = m.group(1).strip(), int(m.group(2) or 1)
        if name == "id":
            continue
        if name not in ops:
            raise ParseError(f"unknown operator {name!r} in {word!r}")
        out = compose_packaged(E, out, power_packaged(E, ops[name], power))
    return out


def check_relation(inst: Instance, relation: str, overrides: dict | None = None) -> bool:
    if relation.count("=") != 1:
        raise ParseError(f"relation {relation!r} needs exactly one '='")
    lhs, rhs = relation.split("=")
    return evaluate_word(inst, lhs, overrides) == evaluate_word(inst, rhs, overrides)


def _relation_names(relation: str) -> set[str]:
    names = set()
    for side in relation.split("="):
        for token in side.split("*"):
            m = _FACTOR_RE.match(token.strip())
            if m:
                names.add(m.group(1).strip())
    return names


def compare_laws(declared: dict[str, tuple[str, int]], derived, types) -> list[dict]:
    """Rows where a voicing-derived root law disagrees with a declared one."""
    rows = []
    for t in types:
        want = declared.get(t, (t, 0))
        if t in derived.entries:
            got = derived.entries[t]
            if got != want:
                rows.append({"type": t, "declared": list(want), "formula": list(got)})
        elif want != (t, 0):
            rows.append({"type": t, "declared": list(want), "formula": None})
    return rows


def _check(name: str, problems: list, **extra) -> dict:
    out = {"name": name, "passed": not problems}
    if problems:
        out["counterexamples"] = [str(p) for p in problems[:10]]
        out["violations"] = len(problems)
    out.update(extra)
    return out


def verify_instance(inst: Instance) -> dict:
    """Run every structural check on a built instance; deterministic output."""
    E, A = inst.extension, inst.action
    checks = []
    warnings = []
    checks.append(_check("groupoid axioms", validate(E.shape)))
    checks.append(_check("action functoriality", check_action_functor(E.shape, E.phi)))
    checks.append(_check("2-cocycle condition",
                         normalization_report(E.shape, E.zeta) + check_cocycle(E.shape, E.phi, E.zeta)))
    checks.append(_check("extension axioms (unique transposition)",
                         verify_extension_axioms(E, canonical_witness(E))))

    problems = []
    for c in A.chords():
        g = A.chord_to_morphism(c)
        if A.morphism_to_chord(g) != c:
            problems.append(f"{c} -> {g} -> {A.morphism_to_chord(g)}")
    for x in A.registry.types:
        for z in range(E.n):
            g = E.morphism(z, A.link(x))
            if A.chord_to_morphism(A.morphism_to_chord(g)) != g:
                problems.append(f"{g} does not round-trip")
    checks.append(_check("chord/morphism bijection", problems))

    problems = []
    chords = A.chords()
    for c1 in chords:
        for c2 in chords:
            g = interval(A, c1, c2)
            if A.act(g, c1) != c2:
                problems.append(f"interval({c1}, {c2}) = {g} misses")
    checks.append(_check("intervals", problems))

    for name in sorted(inst.spec.voicings):
        text = inst.spec.voicings[name]
        try:
            f = parse_affine(text, E.n)
            law = root_law_of(f, A.registry)
        except (ParseError, NotEquivariant) as exc:
            checks.append(_check(f"voicing {name}", [str(exc)]))
            continue
        declared = inst.laws.get(name)
        if declared is None:
            continue
        rows = compare_laws(declared, law, A.registry.types)
        if not rows:
            checks.append(_check(f"root law {name} matches voicing {text}", []))
            continue
        warning = {"operator": name, "voicing": text, "mismatched_rows": rows}
        # re-evaluate relations with the formula-derived law substituted
        formula_law = {t: v for t, v in law.entries.items()}
        try:
            alt = compile_root_law(A, formula_law)
        except NotAPackaging:
            alt = None
        outcomes = []
        for rel in inst.spec.relations:
            if name in _relation_names(rel):
                outcomes.append({
                    "relation": rel,
                    "declared_law": check_relation(inst, rel),
                    "formula_law": None if alt is None else check_relation(inst, rel, {name: alt}),
                })
        warning["relations"] = outcomes
        warnings.append(warning)

    for rel in inst.spec.relations:
        ok = check_relation(inst, rel)
        checks.append(_check(f"relation {rel}", [] if ok else [f"{rel} fails"]))

    passed = all(c["passed"] for c in checks)
    return {"instance": inst.spec.name, "passed": passed, "checks": checks, "warnings": warnings}


def worked_example_actions(n: int = 12) -> list[dict[str, int]]:
    """All unit-valued functorial actions on the M/alpha/beta pair groupoid
    that reproduce the four partial actions of the preset, with zeta = 0.

    The checks: (0, h:alpha->M) sends n_M to n_alpha, (0, h:M->alpha) sends
    n_alpha to n_M, (2, h:beta->M) sends n_M to (n+2)_beta and (2, h:M->beta)
    sends n_beta to (n-2)_M, at every root.
    """
    objects = ("M", "alpha", "beta")
    H = pair_groupoid(objects)
    registry = ChordRegistry.from_offsets({"M": [0, 4, 7], "alpha": [0, 2, 5], "beta": [0, 4, 5]}, n)
    moving = [h for h in H.morphisms if h.src != h.dst]
    units = [u.k for u in unit_group(n)]
    found = []
    for values in product(units, repeat=len(moving)):
        mult = {h.id: 1 for h in H.morphisms}
        mult.update({h.id: v for h, v in zip(moving, values)})
        phi = ActionFunctor(mult, n)
        if check_action_functor(H, phi):
            continue
        E = build_extension(BaseCategory(objects, n), H, phi)
        A = RepresentableAction(E, registry, "M", "contravariant")
        cases = [
            (E.morphism(0, "h:alpha->M"), "M", 0, "alpha"),
            (E.morphism(0, "h:M->alpha"), "alpha", 0, "M"),
            (E.morphism(2, "h:beta->M"), "M", 2, "beta"),
            (E.morphism(2, "h:M->beta"), "beta", -2, "M"),
        ]
        if all(A.act(g, Chord(r, src)) == Chord((r + d) % n, dst)
               for g, src, d, dst in cases for r in range(n)):
            found.append({h.id: v for h, v in zip(moving, values)})
    return found
