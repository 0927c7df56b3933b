"""Covers of a connected groupoid built from a subgroup S of the vertex group at 0.

Objects of the cover are the cosets S∘a for a in the star at 0 (two
representatives agree when a'∘a⁻¹ ∈ S); a morphism is a pair (S∘a, g)
with g leaving the object d1(a).  When the base is an internal groupoid
and S is a subobject of its vertex structure, all operations lift
coset-wise and the projection becomes an internal covering morphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groupoid import (
    FiniteGroupoid,
    GroupoidMorphism,
    connected_components,
    is_covering_morphism,
    star,
    underlying,
)
from .internal import (
    InternalGroupoid,
    check_internal_groupoid,
    check_internal_morphism,
    require_internal,
    vertex_omega_group,
)
from .omega import OmegaGroup, enumerate_subobjects, is_subobject
from .report import Report, StructureError, VerificationError


@dataclass(frozen=True)
class Coset:
    representative: int
    members: frozenset


@dataclass(eq=False)
class ConstructedCover:
    base: object
    S: tuple
    cosets: list
    cover: object
    p: GroupoidMorphism
    coset_of: dict = field(default_factory=dict, repr=False)
    pairs: list = field(default_factory=list, repr=False)

    @property
    def index(self) -> dict:
        """(coset, base morphism) -> cover morphism."""
        return {pair: k for k, pair in enumerate(self.pairs)}


@dataclass(eq=False)
class CoverClass:
    S: tuple
    liftable: bool
    cover: ConstructedCover


def _check_subgroup(g: FiniteGroupoid, S) -> Report:
    report = Report("vertex_subgroup")
    loops = set(g.vertex_group(0))
    for s in S:
        if s not in loops:
            report.add("subgroup", "loop_at_zero", (s,))
    if not report.ok:
        return report
    if int(g.identity[0]) not in S:
        report.add("subgroup", "contains_identity", (int(g.identity[0]),))
    for s in S:
        if int(g.inverse[s]) not in S:
            report.add("subgroup", "closed_inverse", (s,))
        for t in S:
            if g.compose(s, t) not in S:
                report.add("subgroup", "closed_composition", (s, t))
    return report


def _require_connected(G):
    classes = connected_components(G)
    if len(classes) != 1:
        report = Report("connected")
        report.add("base", "connected", tuple(c[0] for c in classes), f"{len(classes)} components")
        raise VerificationError("the base groupoid must be connected", report)


def construct_cover(G, S) -> ConstructedCover:
    """The covering groupoid of cosets of S over the star at 0, with its projection."""
    g = underlying(G)
    S = tuple(sorted({int(s) for s in S}))
    if any(not 0 <= s < g.n_morphisms for s in S):
        raise StructureError(f"subgroup members {S} outside 0..{g.n_morphisms - 1}")
    _require_connected(g)
    report = _check_subgroup(g, S)
    if not report.ok:
        raise VerificationError(f"{list(S)} is not a subgroup of the vertex group at 0", report)

    C = g.comp_table
    star0 = star(g, 0)
    coset_of: dict[int, int] = {}
    cosets: list[Coset] = []
    for a in star0:
        if a in coset_of:
            continue
        members = frozenset(int(C[s, a]) for s in S)
        rep = min(members)
        for x in members:
            coset_of[x] = len(cosets)
        cosets.append(Coset(rep, members))
    reps = [c.representative for c in cosets]

    pairs = [(i, h) for i, r in enumerate(reps) for h in star(g, int(g.d1[r]))]
    index = {pair: k for k, pair in enumerate(pairs)}
    d0 = [i for i, _ in pairs]
    d1 = [coset_of[int(C[reps[i], h])] for i, h in pairs]
    identity = [index[(i, int(g.identity[g.d1[r]]))] for i, r in enumerate(reps)]
    inverse = [index[(coset_of[int(C[reps[i], h])], int(g.inverse[h]))] for i, h in pairs]

    def compose(x, y):
        (i, h), (_, k) = pairs[x], pairs[y]
        return index[(i, int(C[h, k]))]

    cover = FiniteGroupoid.from_compose(len(cosets), d0, d1, identity, inverse, compose)
    p = GroupoidMorphism(
        cover,
        g,
        [int(g.d1[r]) for r in reps],
        [h for _, h in pairs],
    )
    covering, cov_report = is_covering_morphism(p)
    if not covering:
        raise VerificationError("constructed projection is not a covering morphism", cov_report)
    return ConstructedCover(G, S, cosets, cover, p, coset_of, pairs)


def lift_operations(G: InternalGroupoid, S, require_subobject=True) -> ConstructedCover:
    """Lift every operation of G to the cover determined by S.

    With `require_subobject` (the default) S is rejected up front unless it
    is a subobject of the vertex structure; otherwise the construction is
    attempted and fails at the brute-force well-definedness check.
    """
    require_internal(G, "base")
    _require_connected(G)
    M, g = G.morphism_omega, G.gpd
    V, inc = vertex_omega_group(G)
    S = tuple(sorted({int(s) for s in S}))
    position = {int(x): i for i, x in enumerate(inc.map)}
    if any(s not in position for s in S):
        report = Report("vertex_subobject")
        for s in S:
            if s not in position:
                report.add("subobject", "loop_at_zero", (s,))
        raise VerificationError(f"{list(S)} are not all loops at 0", report)
    if require_subobject:
        ok, report = is_subobject(V, [position[s] for s in S])
        if not ok:
            raise VerificationError(f"{list(S)} is not a subobject of the vertex structure", report)

    built = construct_cover(G, S)
    coset_of, pairs = built.coset_of, built.pairs
    reps = np.array([c.representative for c in built.cosets])
    members = [sorted(c.members) for c in built.cosets]
    k = len(reps)

    report = Report("lift_well_defined")
    binary = {"+": M.add, **M.binary}
    unary = {"-": M.neg, **M.unary}
    obj_binary, obj_unary = {}, {}
    for name, T in binary.items():
        table = np.zeros((k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                target = coset_of[int(T[reps[i], reps[j]])]
                table[i, j] = target
                for a in members[i]:
                    for b in members[j]:
                        if coset_of[int(T[a, b])] != target:
                            report.add("well_defined", f"binary[{name}]", (a, b), f"vs representatives ({reps[i]}, {reps[j]})")
        obj_binary[name] = table
    for name, U in unary.items():
        table = np.zeros(k, dtype=np.int64)
        for i in range(k):
            target = coset_of[int(U[reps[i]])]
            table[i] = target
            for a in members[i]:
                if coset_of[int(U[a])] != target:
                    report.add("well_defined", f"unary[{name}]", (a,), f"vs representative {reps[i]}")
        obj_unary[name] = table
    if not report.ok:
        raise VerificationError("lifted operations are not well defined", report)

    n = len(pairs)
    first = np.array([i for i, _ in pairs])
    second = np.array([h for _, h in pairs])
    x, y = np.arange(n)[:, None], np.arange(n)[None, :]

    dense = -np.ones((k, g.n_morphisms), dtype=np.int64)
    dense[first, second] = np.arange(n)

    def lookup(cos, mor, what):
        out = dense[cos, mor]
        if (out < 0).any():
            pos = tuple(int(i) for i in np.argwhere(out < 0)[0])
            raise VerificationError(f"lifted {what} leaves the cover at {pos}")
        return out

    mor_binary = {
        name: lookup(obj_binary[name][first[x], first[y]], T[second[x], second[y]], name)
        for name, T in binary.items()
    }
    mor_unary = {name: lookup(obj_unary[name][first], U[second], name) for name, U in unary.items()}

    sig = M.signature
    objects = OmegaGroup(
        sig,
        obj_binary["+"],
        obj_unary["-"],
        {k_: obj_binary[k_] for k_ in sig.binary},
        {k_: obj_unary[k_] for k_ in sig.unary},
    )
    morphisms = OmegaGroup(
        sig,
        mor_binary["+"],
        mor_unary["-"],
        {k_: mor_binary[k_] for k_ in sig.binary},
        {k_: mor_unary[k_] for k_ in sig.unary},
    )
    cover = InternalGroupoid(built.cover, morphisms, objects)
    report = check_internal_groupoid(cover)
    if not report.ok:
        raise VerificationError("lifted cover is not an internal groupoid", report)
    p = GroupoidMorphism(cover, G, built.p.object_map, built.p.morphism_map)
    report = check_internal_morphism(p)
    if not report.ok:
        raise VerificationError("projection does not preserve the operations", report)
    covering, cov_report = is_covering_morphism(p)
    if not covering:
        raise VerificationError("projection is not a covering morphism", cov_report)
    return ConstructedCover(G, S, built.cosets, cover, p, coset_of, pairs)


def characteristic_subobject(c: ConstructedCover) -> tuple:
    """Image under p of the loops at object 0 of the cover."""
    g = underlying(c.cover)
    loops = g.vertex_group(0)
    return tuple(sorted({int(c.p.morphism_map[a]) for a in loops}))


def classify_covers(G: InternalGroupoid) -> list[CoverClass]:
    """Every subgroup of the vertex group at 0, whether it is a subobject,
    and the lifted (or merely groupoid) cover it determines."""
    require_internal(G)
    V, inc = vertex_omega_group(G)
    out = []
    for sub in enumerate_subobjects(V.reduct()):
        S = tuple(int(inc.map[i]) for i in sub.members)
        liftable, _ = is_subobject(V, sub.members)
        cover = lift_operations(G, S) if liftable else construct_cover(G.gpd, S)
        out.append(CoverClass(S, liftable, cover))
    return out
