"""``groupoid-music`` command line.

Exit codes: 0 on success, 1 on errors or failed checks, 2 when an operator
is applied to a chord outside its domain.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from .actions import interval
from .chords import parse_affine, root_law_of
from .errors import GroupoidMusicError, PartialityViolation
from .extension import GMorphism
from .group_extensions import enumerate_group_extensions
from .groups import (analyze_group, cyclic_certificate, dihedral_certificate, generate_group,
                     wreath_certificate)
from .instance import Instance, compare_laws, load_instance, verify_instance
from .packaged import act_packaged, permutation_rep

EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2

_MORPHISM_RE = re.compile(r"^\s*\(\s*(-?\d+)\s*,\s*([^)]+?)\s*\)\s*$")


def parse_morphism(inst: Instance, text: str) -> GMorphism:
    """'(2,h:beta->M)' or '(0, id:alpha)'; 'beta->M' is accepted for the shape part."""
    m = _MORPHISM_RE.match(text)
    if not m:
        raise GroupoidMusicError(f"cannot parse morphism {text!r}; expected (z, h:X->Y)")
    z, label = int(m.group(1)), m.group(2).replace(" ", "")
    E = inst.extension
    if label not in E.shape._by_id and "->" in label and not label.startswith("h:"):
        label = "h:" + label
    if label not in E.shape._by_id:
        raise GroupoidMusicError(f"unknown shape morphism {label!r}")
    return E.morphism(z, label)


def _ops(text: str | None) -> list[str]:
    if not text:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


def _emit(args, report: dict, text: str) -> None:
    if args.json:
        if not args.timing:
            report = {k: v for k, v in report.items() if k != "timing"}
        out = json.dumps(report, indent=2, sort_keys=True)
    else:
        out = text
    if getattr(args, "out", None) and args.command != "export-dot":
        Path(args.out).write_text(out + "\n", "utf-8")
    else:
        print(out)


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    start = time.perf_counter()
    report = verify_instance(inst)
    report["timing"] = {"seconds": round(time.perf_counter() - start, 4)}
    lines = [f"instance {report['instance']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for c in report["checks"]:
        lines.append(f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']}")
        for ce in c.get("counterexamples", []):
            lines.append(f"      {ce}")
    for w in report["warnings"]:
        lines.append(f"  [warning] {w['operator']}: declared root law differs from voicing {w['voicing']}")
        for row in w["mismatched_rows"]:
            lines.append(f"      {row['type']}: declared {tuple(row['declared'])}, formula "
                         f"{tuple(row['formula']) if row['formula'] else None}")
        for rel in w.get("relations", []):
            lines.append(f"      {rel['relation']}: declared law {rel['declared_law']}, "
                         f"formula law {rel['formula_law']}")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if report["passed"] else EXIT_ERROR


def cmd_act(args) -> int:
    inst = load_instance(args.instance)
    chord = inst.registry.chord(args.chord)
    if bool(args.op) == bool(args.morphism):
        raise GroupoidMusicError("give exactly one of --op or --morphism")
    A = inst.action
    if args.op:
        image = act_packaged(A, inst.operator(args.op), chord)
        what = args.op
    else:
        g = parse_morphism(inst, args.morphism)
        image = A.act(g, chord)
        what = str(g)
    _emit(args, {"operator": what, "chord": str(chord), "image": str(image)}, str(image))
    return EXIT_OK


def cmd_interval(args) -> int:
    inst = load_instance(args.instance)
    c1, c2 = (inst.registry.chord(c) for c in args.chords)
    g = interval(inst.action, c1, c2)
    _emit(args, {"from": str(c1), "to": str(c2), "morphism": str(g),
                 "shift": g.z, "shape": g.h.id}, str(g))
    return EXIT_OK


def closure_report(inst: Instance, names: list[str]) -> dict:
    A = inst.action
    ops = [inst.operator(name) for name in names]
    start = time.perf_counter()
    G = generate_group(A, ops, names)
    report = {"instance": inst.spec.name, "generators": names, **analyze_group(G)}
    certs = {"cyclic": cyclic_certificate(G)}
    if report["order"] % 2 == 0 and report["order"] <= 4096:
        certs["dihedral"] = dihedral_certificate(G).as_dict()
    m = len(A.registry.types)
    if m > 1 and report.get("type_partition_preserved"):
        certs[f"wreath({A.n},{m})"] = wreath_certificate(G, A.n, m).as_dict()
    report["certificates"] = certs
    report["timing"] = {"seconds": round(time.perf_counter() - start, 4)}
    return report


def cmd_closure(args) -> int:
    inst = load_instance(args.instance)
    names = _ops(args.ops)
    if not names:
        raise GroupoidMusicError("--ops needs at least one operator")
    report = closure_report(inst, names)
    lines = [f"<{', '.join(names)}>: order {report['order']}, "
             f"{'abelian' if report['abelian'] else 'nonabelian'}"]
    if report["invariant_factors"]:
        lines.append(f"  invariant factors {tuple(report['invariant_factors'])}")
    for k, v in report["certificates"].items():
        ok = v if isinstance(v, bool) else v["ok"]
        lines.append(f"  {k} certificate: {ok}")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    start = time.perf_counter()
    classes = enumerate_group_extensions(args.n, args.m, "trivial" if args.trivial_action else None)
    report = {"n": args.n, "m": args.m, "action_filter": "trivial" if args.trivial_action else None,
              "classes": [c.describe() for c in classes],
              "timing": {"seconds": round(time.perf_counter() - start, 4)}}
    lines = [f"extensions of Z_{args.m} by Z_{args.n}: {len(classes)} class(es)"]
    for c in classes:
        if c.abelian:
            lines.append(f"  abelian {tuple(c.invariant_factors)}")
        else:
            lines.append(f"  nonabelian order {c.order}, {c.involutions} involutions")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def dot_graph(inst: Instance, names: list[str]) -> str:
    A = inst.action
    chords = A.chords()
    lines = ["digraph chords {"]
    for c in chords:
        lines.append(f'  "{c}";')
    for name in names:
        perm = permutation_rep(A, inst.operator(name))
        for i, c in enumerate(chords):
            label = name.replace('"', '\\"')
            lines.append(f'  "{c}" -> "{chords[perm[i]]}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    inst = load_instance(args.instance)
    text = dot_graph(inst, _ops(args.ops))
    if args.out:
        Path(args.out).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check_voicing(args) -> int:
    inst = load_instance(args.instance)
    reg = inst.registry
    f = parse_affine(args.map, reg.n)
    law = root_law_of(f, reg)
    report = {"map": args.map, "equivariant": True,
              "root_law": {t: list(v) for t, v in law.entries.items()},
              "unclassified": list(law.unclassified)}
    lines = [f"map {args.map}: equivariant"]
    for t, (t2, s) in law.entries.items():
        lines.append(f"  {t} -> ({t2}, {s})")
    for t in law.unclassified:
        lines.append(f"  {t}: image is not a registered chord")
    candidates = [args.name] if args.name else sorted(
        name for name, text in inst.spec.voicings.items()
        if parse_affine(text, reg.n) == f)
    comparisons = {}
    for name in candidates:
        if name not in inst.laws:
            raise GroupoidMusicError(f"no declared operator {name!r}")
        rows = compare_laws(inst.laws[name], law, reg.types)
        comparisons[name] = {"matches": not rows, "mismatched_rows": rows}
        lines.append(f"  declared {name}: {'matches' if not rows else 'MISMATCH'}")
        for row in rows:
            lines.append(f"    {row['type']}: declared {tuple(row['declared'])}, formula "
                         f"{tuple(row['formula']) if row['formula'] else None}")
    report["declared"] = comparisons
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", default="MAlphaBeta", help="preset name or JSON instance file")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in JSON")
    common.add_argument("--out", help="write the report to this path")

    parser = argparse.ArgumentParser(prog="groupoid-music", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the structural checks on an instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("act", parents=[common], help="apply an operator or morphism to a chord")
    p.add_argument("--op", help="named packaged operator")
    p.add_argument("--morphism", help="morphism literal, e.g. '(2, h:beta->M)'")
    p.add_argument("--chord", required=True)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("interval", parents=[common], help="the morphism carrying one chord to another")
    p.add_argument("chords", nargs=2)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("closure", parents=[common], help="group generated by packaged operators")
    p.add_argument("--ops", required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("enumerate-extensions", parents=[common],
                       help="isomorphism classes of extensions of Z_m by Z_n")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--trivial-action", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("export-dot", parents=[common], help="chord network as a DOT graph")
    p.add_argument("--ops", default="")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("check-voicing", parents=[common], help="root law of an affine voicing map")
    p.add_argument("--map", required=True)
    p.add_argument("--name", help="declared operator to compare against")
    p.set_defaults(func=cmd_check_voicing)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PartialityViolation as exc:
        print(f"partiality: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    except (GroupoidMusicError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
