"""Split extensions, derived actions and the semidirect product B ⋉ A.

A family of actions of B on A is a derived action exactly when the
semidirect product built from it is again a group with operations;
`verify_derived_action` tests that and also re-derives the actions
from the evident split extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .omega import (
    OmegaGroup,
    OmegaMorphism,
    _require_same_signature,
    _table,
    check_morphism,
    check_omega_group,
)
from .report import Report, StructureError, VerificationError


@dataclass(eq=False)
class ActionFamily:
    """b·a in `dot`; for each named ⋆, b⋆a in `left[⋆]` and a⋆b in `right[⋆]`."""

    actor: OmegaGroup
    acted: OmegaGroup
    dot: np.ndarray
    left: dict = field(default_factory=dict)
    right: dict = field(default_factory=dict)

    def __post_init__(self):
        B, A = self.actor, self.acted
        _require_same_signature(B, A)
        ops = list(A.signature.binary)
        if sorted(self.left) != ops or sorted(self.right) != ops:
            raise StructureError(f"action tables {sorted(self.left)}/{sorted(self.right)} do not match {ops}")
        self.dot = _table(self.dot, (B.order, A.order), A.order, "dot action")
        self.left = {k: _table(self.left[k], (B.order, A.order), A.order, f"left action {k}") for k in ops}
        self.right = {k: _table(self.right[k], (A.order, B.order), A.order, f"right action {k}") for k in ops}

    def __eq__(self, other):
        if not isinstance(other, ActionFamily):
            return NotImplemented
        return (
            self.actor == other.actor
            and self.acted == other.acted
            and np.array_equal(self.dot, other.dot)
            and all(np.array_equal(self.left[k], other.left[k]) for k in self.left)
            and all(np.array_equal(self.right[k], other.right[k]) for k in self.right)
        )

    __hash__ = None


def trivial_action(B: OmegaGroup, A: OmegaGroup) -> ActionFamily:
    """b·a = a and every b⋆a, a⋆b = 0."""
    ops = A.signature.binary
    return ActionFamily(
        B,
        A,
        np.tile(np.arange(A.order), (B.order, 1)),
        {k: np.zeros((B.order, A.order), dtype=np.int64) for k in ops},
        {k: np.zeros((A.order, B.order), dtype=np.int64) for k in ops},
    )


@dataclass(eq=False)
class SplitExtension:
    """0 -> A -ı-> E -p-> B -> 0 with a section s of p."""

    A: OmegaGroup
    E: OmegaGroup
    B: OmegaGroup
    inclusion: OmegaMorphism
    projection: OmegaMorphism
    section: OmegaMorphism

    @classmethod
    def from_maps(cls, A, E, B, inclusion, projection, section):
        return cls(
            A,
            E,
            B,
            OmegaMorphism(A, E, inclusion),
            OmegaMorphism(E, B, projection),
            OmegaMorphism(B, E, section),
        )


def check_split_extension(X: SplitExtension, report: Report | None = None) -> Report:
    """Objects valid, ı/p/s morphisms, p onto, ı injective with image = ker p, p∘s = id."""
    for G in (X.E, X.B):
        _require_same_signature(X.A, G)
    report = report if report is not None else Report("split_extension")
    report.extend(check_omega_group(X.A), "A")
    report.extend(check_omega_group(X.E), "E")
    report.extend(check_omega_group(X.B), "B")
    report.extend(check_morphism(X.inclusion), "inclusion")
    report.extend(check_morphism(X.projection), "projection")
    report.extend(check_morphism(X.section), "section")

    i, p, s = X.inclusion.map, X.projection.map, X.section.map
    missed = sorted(set(range(X.B.order)) - set(p.tolist()))
    for b in missed:
        report.add("exactness", "projection_surjective", (b,))
    seen: dict[int, int] = {}
    for a, e in enumerate(i.tolist()):
        if e in seen:
            report.add("exactness", "inclusion_injective", (seen[e], a))
        seen.setdefault(e, a)
    kernel = set(np.flatnonzero(p == 0).tolist())
    image = set(i.tolist())
    for e in sorted(kernel - image):
        report.add("exactness", "kernel_in_image", (e,))
    for e in sorted(image - kernel):
        report.add("exactness", "image_in_kernel", (e,))
    report.add_many("exactness", "section_splits", np.argwhere(p[s] != np.arange(X.B.order)))
    return report


def _derive(X: SplitExtension, report: Report) -> ActionFamily | None:
    """Compute the derived actions inside E, recording values that leave image(ı)."""
    A, E, B = X.A, X.E, X.B
    i, s = X.inclusion.map, X.section.map
    back = -np.ones(E.order, dtype=np.int64)
    back[i[::-1]] = np.arange(A.order)[::-1]

    def pull(values, law):
        out = back[values]
        bad = np.argwhere(out < 0)
        report.add_many("round_trip", f"escapes_image[{law}]", bad)
        return np.where(out < 0, 0, out)

    sb, ia = s[:, None], i[None, :]
    dot = pull(E.add[E.add[sb, ia], E.neg[sb]], "dot")
    left = {k: pull(T[sb, ia], k) for k, T in E.binary.items()}
    right = {k: pull(T[i[:, None], s[None, :]], f"{k}°") for k, T in E.binary.items()}
    return ActionFamily(B, A, dot, left, right)


def derived_actions_from_split_extension(X: SplitExtension) -> ActionFamily:
    """b·a = s(b)+a-s(b), b⋆a = s(b)⋆a and a⋆b = a⋆s(b), pulled back along ı."""
    report = check_split_extension(X)
    if not report.ok:
        raise VerificationError("not a split extension", report)
    act = _derive(X, report)
    if not report.ok:
        raise VerificationError("derived action leaves the kernel", report)
    return act


def semidirect(B: OmegaGroup, A: OmegaGroup, act: ActionFamily) -> OmegaGroup:
    """B ⋉ A on pairs (b, a) encoded b*|A| + a.

    (b,a) + (b',a') = (b+b', a + b·a')
    (b,a) ⋆ (b',a') = (b⋆b', a⋆a' + b⋆a' + a⋆b')
    ω(b,a) = (ω b, ω a)
    Negation solves x + y = 0 in the table; the action is not assumed valid.
    """
    _require_same_signature(B, A)
    if act.dot.shape != (B.order, A.order):
        raise StructureError("action tables do not fit the given groups")
    m = A.order
    idx = np.arange(B.order * m)
    b, a = idx // m, idx % m
    b1, b2 = b[:, None], b[None, :]
    a1, a2 = a[:, None], a[None, :]

    add = B.add[b1, b2] * m + A.add[a1, act.dot[b1, a2]]
    solved = add == 0
    neg = np.where(solved.any(axis=1), solved.argmax(axis=1), 0)
    binary = {}
    for k in A.signature.binary:
        second = A.add[A.add[A.binary[k][a1, a2], act.left[k][b1, a2]], act.right[k][a1, b2]]
        binary[k] = B.binary[k][b1, b2] * m + second
    unary = {k: B.unary[k][b] * m + A.unary[k][a] for k in A.signature.unary}
    return OmegaGroup(A.signature, add, neg, binary, unary)


def semidirect_extension(B: OmegaGroup, A: OmegaGroup, act: ActionFamily) -> SplitExtension:
    """0 -> A -> B ⋉ A -> B -> 0 with ı(a)=(0,a), p(b,a)=b, s(b)=(b,0)."""
    E = semidirect(B, A, act)
    m = A.order
    return SplitExtension.from_maps(
        A,
        E,
        B,
        np.arange(m),
        np.arange(E.order) // m,
        np.arange(B.order) * m,
    )


def verify_derived_action(B: OmegaGroup, A: OmegaGroup, act: ActionFamily) -> Report:
    """Accepts iff the induced extension is a split extension of groups with
    operations and re-deriving its actions gives back `act` exactly."""
    report = Report("derived_action")
    X = semidirect_extension(B, A, act)
    check_split_extension(X, report)
    derived = _derive(X, report)
    report.add_many("round_trip", "dot", np.argwhere(derived.dot != act.dot))
    for k in act.left:
        report.add_many("round_trip", f"left[{k}]", np.argwhere(derived.left[k] != act.left[k]))
        report.add_many("round_trip", f"right[{k}]", np.argwhere(derived.right[k] != act.right[k]))
    return report
