"""Command line front end.

Exit status: 0 when every check passes, 1 on an axiom or verification
failure (the report says which), 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys

from . import fileformat
from .actions import ActionFamily, SplitExtension, check_split_extension, semidirect, verify_derived_action
from .covering import characteristic_subobject, classify_covers, construct_cover, lift_operations
from .equivalence import delta, eta, iso_delta_eta, iso_eta_delta
from .groupoid import FiniteGroupoid, GroupoidMorphism, check_groupoid, check_groupoid_morphism, is_covering_morphism
from .internal import InternalGroupoid, check_internal_groupoid, check_internal_morphism
from .omega import OmegaGroup, check_omega_group, enumerate_subobjects
from .report import Report, StructureError, VerificationError, witness_limit
from .terms import check_identity
from .xmod import CrossedModule, XModMorphism, check_crossed_module, check_xmod_morphism

KIND_NAMES = {
    OmegaGroup: "omega_group",
    ActionFamily: "action",
    SplitExtension: "split_extension",
    CrossedModule: "crossed_module",
    FiniteGroupoid: "groupoid",
    InternalGroupoid: "internal_groupoid",
    XModMorphism: "xmod_morphism",
    GroupoidMorphism: "groupoid_morphism",
}


class Output:
    """Collects summary fields and reports, rendered in either format."""

    def __init__(self, fmt, command):
        self.fmt = fmt
        self.lines = [f"command={command}"] if fmt == "machine" else []

    def field(self, key, value):
        if self.fmt == "machine":
            self.lines.append(f"{key}={value}")
        else:
            self.lines.append(f"{key}: {value}")

    def record(self, tag, /, **fields):
        if self.fmt == "machine":
            self.lines.append(tag + "".join(f" {k}={v}" for k, v in fields.items()))
        else:
            self.lines.append(f"{tag}: " + ", ".join(f"{k}={v}" for k, v in fields.items()))

    def report(self, report: Report):
        self.lines.append(report.render(self.fmt))

    def text(self):
        return "\n".join(self.lines) + "\n"


def _members(values) -> str:
    return ",".join(str(v) for v in values)


def _omega_components(obj):
    """Named groups with operations inside a structure, for --identities."""
    if isinstance(obj, OmegaGroup):
        return [("structure", obj)]
    if isinstance(obj, ActionFamily):
        return [("actor", obj.actor), ("acted", obj.acted)]
    if isinstance(obj, SplitExtension):
        return [("A", obj.A), ("E", obj.E), ("B", obj.B)]
    if isinstance(obj, CrossedModule):
        return [("A", obj.A), ("B", obj.B)]
    if isinstance(obj, InternalGroupoid):
        return [("morphisms", obj.morphism_omega), ("objects", obj.object_omega)]
    if isinstance(obj, XModMorphism):
        return [(f"source.{n}", G) for n, G in _omega_components(obj.source)] + [
            (f"target.{n}", G) for n, G in _omega_components(obj.target)
        ]
    if isinstance(obj, GroupoidMorphism):
        return [(f"source.{n}", G) for n, G in _omega_components(obj.source)] + [
            (f"target.{n}", G) for n, G in _omega_components(obj.target)
        ]
    return []


def check_structure(obj) -> Report:
    if isinstance(obj, OmegaGroup):
        return check_omega_group(obj)
    if isinstance(obj, ActionFamily):
        return verify_derived_action(obj.actor, obj.acted, obj)
    if isinstance(obj, SplitExtension):
        return check_split_extension(obj)
    if isinstance(obj, CrossedModule):
        return check_crossed_module(obj)
    if isinstance(obj, FiniteGroupoid):
        return check_groupoid(obj)
    if isinstance(obj, InternalGroupoid):
        return check_internal_groupoid(obj)
    if isinstance(obj, XModMorphism):
        report = Report("xmod_morphism")
        report.extend(check_crossed_module(obj.source), "source")
        report.extend(check_crossed_module(obj.target), "target")
        return check_xmod_morphism(obj, report)
    report = Report("groupoid_morphism")
    report.extend(check_structure(obj.source), "source")
    report.extend(check_structure(obj.target), "target")
    if isinstance(obj.source, InternalGroupoid) and isinstance(obj.target, InternalGroupoid):
        return check_internal_morphism(obj, report)
    return check_groupoid_morphism(obj, report)


def _expect(obj, *types):
    if not isinstance(obj, types):
        names = " or ".join(KIND_NAMES[t] for t in types)
        raise StructureError(f"expected a {names} file, got {KIND_NAMES[type(obj)]}")
    return obj


def _emit_structure(obj, args, out: Output):
    """Write a produced structure to --output, or to stdout (report then goes to stderr)."""
    text = fileformat.serialize(obj)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.field("output", args.output)
        return False
    sys.stdout.write(text)
    return True


def cmd_check(args, out):
    obj = fileformat.load(args.file)
    out.field("kind", KIND_NAMES[type(obj)])
    report = check_structure(obj)
    for ident in args.extra_identities:
        for name, G in _omega_components(obj):
            report.extend(check_identity(G, ident), name)
    out.report(report)
    return 0 if report.ok else 1, False


def cmd_semidirect(args, out):
    B = _expect(fileformat.load(args.B), OmegaGroup)
    A = _expect(fileformat.load(args.A), OmegaGroup)
    act = _expect(fileformat.load(args.action), ActionFamily)
    if act.actor != B or act.acted != A:
        raise StructureError("the action file's actor/acted do not match the given B and A")
    E = semidirect(B, A, act)
    report = verify_derived_action(B, A, act)
    out.field("order", E.order)
    out.report(report)
    to_stdout = _emit_structure(E, args, out)
    return 0 if report.ok else 1, to_stdout


def cmd_delta(args, out):
    G = _expect(fileformat.load(args.file), InternalGroupoid)
    X = delta(G)
    out.record("crossed_module", A=X.A.order, B=X.B.order, alpha=_members(X.alpha.map))
    out.report(check_crossed_module(X))
    return 0, _emit_structure(X, args, out)


def cmd_eta(args, out):
    X = _expect(fileformat.load(args.file), CrossedModule)
    G = eta(X)
    out.record("internal_groupoid", objects=G.gpd.n_objects, morphisms=G.gpd.n_morphisms)
    out.report(check_internal_groupoid(G))
    return 0, _emit_structure(G, args, out)


def cmd_roundtrip(args, out):
    obj = _expect(fileformat.load(args.file), CrossedModule, InternalGroupoid)
    witness = iso_delta_eta(obj) if isinstance(obj, CrossedModule) else iso_eta_delta(obj)
    for level, (fwd, back) in witness.levels.items():
        out.record("level", name=level, forward=_members(fwd), backward=_members(back))
    out.report(witness.report)
    return 0 if witness.ok else 1, False


def _parse_members(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise StructureError(f"--subobject expects comma-separated integers, got {text!r}") from None


def cmd_cover(args, out):
    base = _expect(fileformat.load(args.file), InternalGroupoid, FiniteGroupoid)
    S = _parse_members(args.subobject)
    if isinstance(base, InternalGroupoid):
        built = lift_operations(base, S)
        report = check_internal_morphism(built.p)
    else:
        built = construct_cover(base, S)
        report = check_groupoid_morphism(built.p)
    cover = built.cover.gpd if isinstance(built.cover, InternalGroupoid) else built.cover
    report.extend(is_covering_morphism(built.p)[1])
    out.record(
        "cover",
        objects=cover.n_objects,
        morphisms=cover.n_morphisms,
        characteristic=_members(characteristic_subobject(built)),
    )
    out.report(report)
    return 0 if report.ok else 1, _emit_structure(built.p, args, out)


def cmd_classify(args, out):
    G = _expect(fileformat.load(args.file), InternalGroupoid)
    for entry in classify_covers(G):
        cover = entry.cover.cover
        g = cover.gpd if isinstance(cover, InternalGroupoid) else cover
        out.record(
            "subgroup",
            members=_members(entry.S),
            liftable="yes" if entry.liftable else "no",
            objects=g.n_objects,
            morphisms=g.n_morphisms,
        )
    return 0, False


def cmd_subobjects(args, out):
    G = _expect(fileformat.load(args.file), OmegaGroup)
    subs = enumerate_subobjects(G)
    for sub in subs:
        out.record("subobject", size=len(sub), members=_members(sub.members))
    out.field("count", len(subs))
    return 0, False


COMMANDS = {
    "check": cmd_check,
    "semidirect": cmd_semidirect,
    "delta": cmd_delta,
    "eta": cmd_eta,
    "roundtrip": cmd_roundtrip,
    "cover": cmd_cover,
    "classify": cmd_classify,
    "subobjects": cmd_subobjects,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default=argparse.SUPPRESS)
    common.add_argument("--identities", metavar="FILE", default=argparse.SUPPRESS,
                        help="extra identities, one 'lhs = rhs' per line")
    common.add_argument("--max-witnesses", type=int, metavar="K", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="omegagroups", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    add("check", "check every law of a structure file").add_argument("file")
    p = add("semidirect", "build B ⋉ A and verify the action")
    p.add_argument("B")
    p.add_argument("A")
    p.add_argument("action")
    p.add_argument("-o", "--output")
    p = add("delta", "crossed module of an internal groupoid")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p = add("eta", "internal groupoid of a crossed module")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    add("roundtrip", "verify the canonical round-trip isomorphism").add_argument("file")
    p = add("cover", "covering groupoid of a vertex subobject")
    p.add_argument("file")
    p.add_argument("--subobject", required=True, metavar="LIST")
    p.add_argument("-o", "--output")
    add("classify", "all vertex subgroups and whether operations lift").add_argument("file")
    add("subobjects", "all subobjects of a group with operations").add_argument("file")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse: usage errors and unknown commands exit 2, --help exits 0
        return exc.code if isinstance(exc.code, int) else 2
    fmt = getattr(args, "format", "human")
    k = getattr(args, "max_witnesses", None)
    out = Output(fmt, args.command)
    to_stdout = False
    try:
        args.extra_identities = []
        if getattr(args, "identities", None):
            with open(args.identities, encoding="utf-8") as fh:
                args.extra_identities = fileformat.parse_identities_file(fh.read())
        with witness_limit(k if k is not None else Report().max_witnesses):
            code, to_stdout = COMMANDS[args.command](args, out)
    except StructureError as exc:
        out.field("error", f"structure: {exc}")
        code = 2
    except OSError as exc:
        out.field("error", f"io: {exc}")
        code = 2
    except VerificationError as exc:
        out.field("error", f"verification: {exc}")
        out.report(exc.report)
        code = 1
    if fmt == "machine":
        out.field("exit", code)
    stream = sys.stderr if to_stdout else sys.stdout
    stream.write(out.text())
    return code


if __name__ == "__main__":
    sys.exit(main())
