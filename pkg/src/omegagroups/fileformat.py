"""Canonical text format for every structure kind.

A structure file is one JSON object tagged with ``"kind"``.  Only
integers, strings, lists and objects occur.  `serialize` writes a fixed
key order, operations sorted by name, one table row per line, so
``serialize(parse(text)) == text`` for any canonical file.  Parsing does
range and shape validation only; axioms are left to the checkers.
See FORMAT.md for one worked example per kind.
"""

from __future__ import annotations

import json

import numpy as np

from .actions import ActionFamily, SplitExtension
from .groupoid import FiniteGroupoid, GroupoidMorphism
from .internal import InternalGroupoid
from .omega import OmegaGroup, OmegaMorphism, Signature
from .report import StructureError
from .terms import Identity, check_term, parse_identity
from .xmod import CrossedModule, XModMorphism

KINDS = (
    "omega_group",
    "action",
    "split_extension",
    "crossed_module",
    "groupoid",
    "internal_groupoid",
    "xmod_morphism",
    "groupoid_morphism",
)


# ---------------------------------------------------------------- writing


def _is_int_list(v):
    return isinstance(v, list) and all(isinstance(x, int) for x in v)


def _dump(value, indent=0) -> str:
    pad = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent + 2)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if _is_int_list(value) or all(isinstance(x, str) for x in value):
            return "[" + ", ".join(json.dumps(x) for x in value) + "]"
        rows = [pad + _dump(v, indent + 2) for v in value]
        return "[\n" + ",\n".join(rows) + "\n" + " " * indent + "]"
    return json.dumps(value)


def _rows(table) -> list:
    return np.asarray(table).tolist()


def _omega_record(G: OmegaGroup) -> dict:
    sig = G.signature
    return {
        "kind": "omega_group",
        "signature": {"label": sig.label, "binary": list(sig.binary), "unary": list(sig.unary)},
        "order": G.order,
        "add": _rows(G.add),
        "neg": _rows(G.neg),
        "binary": {k: _rows(G.binary[k]) for k in sig.binary},
        "unary": {k: _rows(G.unary[k]) for k in sig.unary},
        "identities": [
            {"vars": list(i.variables), "lhs": str(i.lhs), "rhs": str(i.rhs)} for i in G.identities
        ],
    }


def _action_tables(act: ActionFamily) -> dict:
    return {
        "dot": _rows(act.dot),
        "left": {k: _rows(act.left[k]) for k in sorted(act.left)},
        "right": {k: _rows(act.right[k]) for k in sorted(act.right)},
    }


def _groupoid_record(g: FiniteGroupoid) -> dict:
    return {
        "kind": "groupoid",
        "objects": g.n_objects,
        "morphisms": g.n_morphisms,
        "d0": _rows(g.d0),
        "d1": _rows(g.d1),
        "identity": _rows(g.identity),
        "inverse": _rows(g.inverse),
        "compose": [[a, b, c] for (a, b), c in sorted(g.comp.items())],
    }


def _record(obj) -> dict:
    if isinstance(obj, OmegaGroup):
        return _omega_record(obj)
    if isinstance(obj, ActionFamily):
        return {"kind": "action", "actor": _omega_record(obj.actor), "acted": _omega_record(obj.acted), **_action_tables(obj)}
    if isinstance(obj, SplitExtension):
        return {
            "kind": "split_extension",
            "A": _omega_record(obj.A),
            "E": _omega_record(obj.E),
            "B": _omega_record(obj.B),
            "inclusion": _rows(obj.inclusion.map),
            "projection": _rows(obj.projection.map),
            "section": _rows(obj.section.map),
        }
    if isinstance(obj, CrossedModule):
        return {
            "kind": "crossed_module",
            "A": _omega_record(obj.A),
            "B": _omega_record(obj.B),
            "alpha": _rows(obj.alpha.map),
            "action": _action_tables(obj.act),
        }
    if isinstance(obj, FiniteGroupoid):
        return _groupoid_record(obj)
    if isinstance(obj, InternalGroupoid):
        return {
            "kind": "internal_groupoid",
            "groupoid": _groupoid_record(obj.gpd),
            "morphism_group": _omega_record(obj.morphism_omega),
            "object_group": _omega_record(obj.object_omega),
        }
    if isinstance(obj, XModMorphism):
        return {
            "kind": "xmod_morphism",
            "source": _record(obj.source),
            "target": _record(obj.target),
            "f1": _rows(obj.f1),
            "f2": _rows(obj.f2),
        }
    if isinstance(obj, GroupoidMorphism):
        return {
            "kind": "groupoid_morphism",
            "source": _record(obj.source),
            "target": _record(obj.target),
            "object_map": _rows(obj.object_map),
            "morphism_map": _rows(obj.morphism_map),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj) -> str:
    return _dump(_record(obj)) + "\n"


def dump(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(obj))


# ---------------------------------------------------------------- reading


def _field(rec, key, where):
    if key not in rec:
        raise StructureError(f"{where}: missing field {key!r}")
    return rec[key]


def _exact_keys(rec, keys, where):
    if not isinstance(rec, dict):
        raise StructureError(f"{where}: expected an object")
    extra = sorted(set(rec) - set(keys))
    if extra:
        raise StructureError(f"{where}: unknown field(s) {extra}")
    for k in keys:
        _field(rec, k, where)


def _ints(value, where):
    """Reject anything but (nested lists of) plain integers."""
    if isinstance(value, bool) or not isinstance(value, (int, list)):
        raise StructureError(f"{where}: expected integers, got {json.dumps(value)[:40]}")
    if isinstance(value, list):
        for v in value:
            _ints(v, where)
    return value


def _names(value, where):
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise StructureError(f"{where}: expected a list of names")
    return value


def _tables(rec, names, where):
    if not isinstance(rec, dict):
        raise StructureError(f"{where}: expected an object of tables")
    if sorted(rec) != sorted(names):
        raise StructureError(f"{where}: tables {sorted(rec)} do not match signature {sorted(names)}")
    return {k: _ints(v, f"{where}.{k}") for k, v in rec.items()}


def _kind(rec, expected, where):
    if not isinstance(rec, dict):
        raise StructureError(f"{where}: expected an object")
    kind = rec.get("kind")
    if kind not in expected:
        raise StructureError(f"{where}: kind {kind!r} where {' or '.join(expected)} expected")
    return kind


def _parse_omega(rec, where) -> OmegaGroup:
    keys = ("kind", "signature", "order", "add", "neg", "binary", "unary", "identities")
    _exact_keys(rec, keys, where)
    _kind(rec, ("omega_group",), where)
    sig_rec = rec["signature"]
    _exact_keys(sig_rec, ("label", "binary", "unary"), f"{where}.signature")
    if not isinstance(sig_rec["label"], str):
        raise StructureError(f"{where}.signature.label: expected a string")
    sig = Signature(
        tuple(_names(sig_rec["binary"], f"{where}.signature.binary")),
        tuple(_names(sig_rec["unary"], f"{where}.signature.unary")),
        sig_rec["label"],
    )
    order = _ints(rec["order"], f"{where}.order")
    if not isinstance(order, int) or order < 1:
        raise StructureError(f"{where}.order: must be a positive integer")
    add = _ints(rec["add"], f"{where}.add")
    if len(add) != order:
        raise StructureError(f"{where}.add: {len(add)} rows for order {order}")
    identities = []
    if not isinstance(rec["identities"], list):
        raise StructureError(f"{where}.identities: expected a list")
    for n, ident in enumerate(rec["identities"]):
        w = f"{where}.identities[{n}]"
        _exact_keys(ident, ("vars", "lhs", "rhs"), w)
        variables = _names(ident["vars"], f"{w}.vars")
        if not isinstance(ident["lhs"], str) or not isinstance(ident["rhs"], str):
            raise StructureError(f"{w}: terms must be strings")
        identities.append(parse_identity(f"{ident['lhs']} = {ident['rhs']}", variables))
    G = OmegaGroup(
        sig,
        add,
        _ints(rec["neg"], f"{where}.neg"),
        _tables(rec["binary"], sig.binary, f"{where}.binary"),
        _tables(rec["unary"], sig.unary, f"{where}.unary"),
        identities,
    )
    for ident in identities:
        check_term(G, ident.lhs)
        check_term(G, ident.rhs)
    return G


def _parse_action_tables(rec, B, A, where) -> ActionFamily:
    ops = A.signature.binary
    return ActionFamily(
        B,
        A,
        _ints(_field(rec, "dot", where), f"{where}.dot"),
        _tables(_field(rec, "left", where), ops, f"{where}.left"),
        _tables(_field(rec, "right", where), ops, f"{where}.right"),
    )


def _parse_groupoid(rec, where) -> FiniteGroupoid:
    keys = ("kind", "objects", "morphisms", "d0", "d1", "identity", "inverse", "compose")
    _exact_keys(rec, keys, where)
    _kind(rec, ("groupoid",), where)
    n_obj = _ints(rec["objects"], f"{where}.objects")
    n_mor = _ints(rec["morphisms"], f"{where}.morphisms")
    if not isinstance(n_obj, int) or not isinstance(n_mor, int):
        raise StructureError(f"{where}: object and morphism counts must be integers")
    d0 = _ints(rec["d0"], f"{where}.d0")
    if len(d0) != n_mor:
        raise StructureError(f"{where}.d0: {len(d0)} entries for {n_mor} morphisms")
    comp = {}
    for n, triple in enumerate(_ints(rec["compose"], f"{where}.compose")):
        if not isinstance(triple, list) or len(triple) != 3:
            raise StructureError(f"{where}.compose[{n}]: expected [a, b, a∘b]")
        a, b, c = triple
        if (a, b) in comp:
            raise StructureError(f"{where}.compose[{n}]: pair ({a}, {b}) given twice")
        comp[(a, b)] = c
    return FiniteGroupoid(
        n_obj,
        d0,
        _ints(rec["d1"], f"{where}.d1"),
        _ints(rec["identity"], f"{where}.identity"),
        _ints(rec["inverse"], f"{where}.inverse"),
        comp,
    )


def _parse_internal(rec, where) -> InternalGroupoid:
    _exact_keys(rec, ("kind", "groupoid", "morphism_group", "object_group"), where)
    return InternalGroupoid(
        _parse_groupoid(rec["groupoid"], f"{where}.groupoid"),
        _parse_omega(rec["morphism_group"], f"{where}.morphism_group"),
        _parse_omega(rec["object_group"], f"{where}.object_group"),
    )


def _parse_xmod(rec, where) -> CrossedModule:
    _exact_keys(rec, ("kind", "A", "B", "alpha", "action"), where)
    A = _parse_omega(rec["A"], f"{where}.A")
    B = _parse_omega(rec["B"], f"{where}.B")
    _exact_keys(rec["action"], ("dot", "left", "right"), f"{where}.action")
    act = _parse_action_tables(rec["action"], B, A, f"{where}.action")
    return CrossedModule(A, B, OmegaMorphism(A, B, _ints(rec["alpha"], f"{where}.alpha")), act)


def _parse_record(rec, where="$"):
    kind = _kind(rec, KINDS, where)
    if kind == "omega_group":
        return _parse_omega(rec, where)
    if kind == "action":
        _exact_keys(rec, ("kind", "actor", "acted", "dot", "left", "right"), where)
        B = _parse_omega(rec["actor"], f"{where}.actor")
        A = _parse_omega(rec["acted"], f"{where}.acted")
        return _parse_action_tables(rec, B, A, where)
    if kind == "split_extension":
        keys = ("kind", "A", "E", "B", "inclusion", "projection", "section")
        _exact_keys(rec, keys, where)
        A, E, B = (_parse_omega(rec[k], f"{where}.{k}") for k in "AEB")
        return SplitExtension.from_maps(
            A,
            E,
            B,
            _ints(rec["inclusion"], f"{where}.inclusion"),
            _ints(rec["projection"], f"{where}.projection"),
            _ints(rec["section"], f"{where}.section"),
        )
    if kind == "crossed_module":
        return _parse_xmod(rec, where)
    if kind == "groupoid":
        return _parse_groupoid(rec, where)
    if kind == "internal_groupoid":
        return _parse_internal(rec, where)
    if kind == "xmod_morphism":
        _exact_keys(rec, ("kind", "source", "target", "f1", "f2"), where)
        _kind(rec["source"], ("crossed_module",), f"{where}.source")
        _kind(rec["target"], ("crossed_module",), f"{where}.target")
        return XModMorphism(
            _parse_xmod(rec["source"], f"{where}.source"),
            _parse_xmod(rec["target"], f"{where}.target"),
            _ints(rec["f1"], f"{where}.f1"),
            _ints(rec["f2"], f"{where}.f2"),
        )
    # groupoid_morphism
    _exact_keys(rec, ("kind", "source", "target", "object_map", "morphism_map"), where)
    ends = []
    for side in ("source", "target"):
        k = _kind(rec[side], ("groupoid", "internal_groupoid"), f"{where}.{side}")
        parse_end = _parse_groupoid if k == "groupoid" else _parse_internal
        ends.append(parse_end(rec[side], f"{where}.{side}"))
    return GroupoidMorphism(
        ends[0],
        ends[1],
        _ints(rec["object_map"], f"{where}.object_map"),
        _ints(rec["morphism_map"], f"{where}.morphism_map"),
    )


def parse(text: str):
    try:
        rec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureError(f"syntax error: {exc.msg}", exc.lineno, exc.colno) from None
    return _parse_record(rec)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def parse_identities_file(text: str) -> list[Identity]:
    """One identity per line, ``lhs = rhs``; blank lines and ``#`` comments skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_identity(line))
        except StructureError as exc:
            raise StructureError(str(exc), lineno, 1) from None
    return out
