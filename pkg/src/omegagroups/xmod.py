"""Crossed modules, their morphisms and covers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import ActionFamily, trivial_action, verify_derived_action
from .omega import (
    OmegaGroup,
    OmegaMorphism,
    _require_same_signature,
    _table,
    check_morphism,
    restrict,
    trivial_group,
    zero_morphism,
)
from .report import Report, StructureError, VerificationError


@dataclass(eq=False)
class CrossedModule:
    A: OmegaGroup
    B: OmegaGroup
    alpha: OmegaMorphism
    act: ActionFamily

    def __post_init__(self):
        _require_same_signature(self.A, self.B)
        if self.alpha.source.order != self.A.order or self.alpha.target.order != self.B.order:
            raise StructureError("boundary map does not go from A to B")
        if self.act.actor.order != self.B.order or self.act.acted.order != self.A.order:
            raise StructureError("action is not an action of B on A")

    @classmethod
    def from_tables(cls, A, B, alpha, dot, left=None, right=None):
        return cls(A, B, OmegaMorphism(A, B, alpha), ActionFamily(B, A, dot, left or {}, right or {}))

    def __eq__(self, other):
        if not isinstance(other, CrossedModule):
            return NotImplemented
        return (
            self.A == other.A
            and self.B == other.B
            and np.array_equal(self.alpha.map, other.alpha.map)
            and self.act == other.act
        )

    __hash__ = None

    def __repr__(self):
        return f"CrossedModule(|A|={self.A.order}, |B|={self.B.order})"


def check_crossed_module(X: CrossedModule, report: Report | None = None) -> Report:
    """Boundary a morphism, action a derived action, then CM1-CM4."""
    report = report if report is not None else Report("crossed_module")
    A, B, act = X.A, X.B, X.act
    al = X.alpha.map
    report.extend(check_morphism(X.alpha), "alpha")
    report.extend(verify_derived_action(B, A, act), "action")

    a = np.arange(A.order)
    b = np.arange(B.order)
    bb, aa = b[:, None], a[None, :]
    x, y = a[:, None], a[None, :]

    # CM1: α(b·a) = b + α(a) - b
    lhs = al[act.dot[bb, aa]]
    rhs = B.add[B.add[bb, al[aa]], B.neg[bb]]
    report.add_many("cm1", "boundary_equivariant", np.argwhere(lhs != rhs))
    # CM2: α(a)·a' = a + a' - a
    lhs = act.dot[al[x], y]
    rhs = A.add[A.add[x, y], A.neg[x]]
    report.add_many("cm2", "peiffer", np.argwhere(lhs != rhs))
    for k, T in A.binary.items():
        # CM3: α(a)⋆a' = a⋆a', and for the dual a'⋆α(a) = a'⋆a
        report.add_many("cm3", f"boundary_product[{k}]", np.argwhere(act.left[k][al[x], y] != T[x, y]))
        report.add_many("cm3", f"boundary_product[{k}°]", np.argwhere(act.right[k][y, al[x]] != T[y, x]))
        # CM4: α(b⋆a) = b⋆α(a) and α(a⋆b) = α(a)⋆b
        TB = B.binary[k]
        report.add_many("cm4", f"boundary_left[{k}]", np.argwhere(al[act.left[k][bb, aa]] != TB[bb, al[aa]]))
        lhs = al[act.right[k][x, b[None, :]]]
        report.add_many("cm4", f"boundary_right[{k}]", np.argwhere(lhs != TB[al[x], b[None, :]]))
    return report


def require_crossed_module(X: CrossedModule, what="input") -> CrossedModule:
    report = check_crossed_module(X)
    if not report.ok:
        raise VerificationError(f"{what} is not a crossed module", report)
    return X


@dataclass(eq=False)
class XModMorphism:
    source: CrossedModule
    target: CrossedModule
    f1: np.ndarray
    f2: np.ndarray

    def __post_init__(self):
        self.f1 = _table(self.f1, (self.source.A.order,), self.target.A.order, "f1")
        self.f2 = _table(self.f2, (self.source.B.order,), self.target.B.order, "f2")

    def then(self, other: XModMorphism) -> XModMorphism:
        """Apply self, then other."""
        return XModMorphism(self.source, other.target, other.f1[self.f1], other.f2[self.f2])


def identity_xmod_morphism(X: CrossedModule) -> XModMorphism:
    return XModMorphism(X, X, np.arange(X.A.order), np.arange(X.B.order))


def check_xmod_morphism(m: XModMorphism, report: Report | None = None) -> Report:
    S, T = m.source, m.target
    _require_same_signature(S.A, T.A)
    report = report if report is not None else Report("xmod_morphism")
    f1, f2 = m.f1, m.f2
    report.extend(check_morphism(OmegaMorphism(S.A, T.A, f1)), "f1")
    report.extend(check_morphism(OmegaMorphism(S.B, T.B, f2)), "f2")

    a = np.arange(S.A.order)
    b = np.arange(S.B.order)
    bb, aa = b[:, None], a[None, :]
    report.add_many("conditions", "boundary_square", np.argwhere(f2[S.alpha.map] != T.alpha.map[f1])[:, :1])
    lhs = f1[S.act.dot[bb, aa]]
    rhs = T.act.dot[f2[bb], f1[aa]]
    report.add_many("conditions", "dot_equivariant", np.argwhere(lhs != rhs))
    for k in S.act.left:
        lhs = f1[S.act.left[k][bb, aa]]
        rhs = T.act.left[k][f2[bb], f1[aa]]
        report.add_many("conditions", f"star_equivariant[{k}]", np.argwhere(lhs != rhs))
        lhs = f1[S.act.right[k][a[:, None], b[None, :]]]
        rhs = T.act.right[k][f1[a[:, None]], f2[b[None, :]]]
        report.add_many("conditions", f"star_equivariant[{k}°]", np.argwhere(lhs != rhs))
    return report


def is_cover(m: XModMorphism) -> tuple[bool, Report]:
    """A valid morphism whose A-component is bijective."""
    base = check_xmod_morphism(m)
    if not base.ok:
        raise VerificationError("not a crossed-module morphism", base)
    report = Report("xmod_cover")
    images = m.f1.tolist()
    if m.source.A.order != m.target.A.order or len(set(images)) != len(images):
        report.add("cover", "f1_bijective", (), f"|A|={m.source.A.order}, |A'|={m.target.A.order}, image size {len(set(images))}")
    return report.ok, report


def trivial_crossed_module(signature) -> CrossedModule:
    T = trivial_group(signature)
    return CrossedModule(T, T, zero_morphism(T, T), trivial_action(T, T))


def zero_boundary(A: OmegaGroup, B: OmegaGroup, act: ActionFamily | None = None) -> CrossedModule:
    return CrossedModule(A, B, zero_morphism(A, B), act if act is not None else trivial_action(B, A))


def inclusion_crossed_module(B: OmegaGroup, members) -> CrossedModule:
    """A sub-structure A of B with α the inclusion, acted on by conjugation and products in B.

    A must be normal and an ideal for every named operation, otherwise
    the pulled-back action is undefined.
    """
    A, inc = restrict(B, members)
    al = inc.map
    back = -np.ones(B.order, dtype=np.int64)
    back[al] = np.arange(A.order)

    def pull(values, what):
        out = back[values]
        if (out < 0).any():
            raise VerificationError(f"{what} leaves the sub-structure {list(al)}")
        return out

    b, a = np.arange(B.order)[:, None], al[None, :]
    dot = pull(B.conj(b, a), "conjugation")
    left = {k: pull(T[b, a], k) for k, T in B.binary.items()}
    right = {k: pull(T[al[:, None], np.arange(B.order)[None, :]], k) for k, T in B.binary.items()}
    return CrossedModule(A, B, inc, ActionFamily(B, A, dot, left, right))
