"""Finite groupoids, their morphisms, stars and covering morphisms.

Composition is written ``a∘b`` for "a then b" and is defined exactly
when ``d1(a) == d0(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .report import Report, StructureError, VerificationError


def _vector(data, length, bound, what):
    arr = np.array(data, dtype=np.int64).reshape(-1)
    if arr.shape != (length,):
        raise StructureError(f"{what}: expected length {length}, got {arr.shape[0]}")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        i = int(np.argwhere((arr < 0) | (arr >= bound))[0][0])
        raise StructureError(f"{what}: entry {int(arr[i])} at index {i} out of range 0..{bound - 1}")
    arr.flags.writeable = False
    return arr


class FiniteGroupoid:
    """Objects 0..n_objects-1, morphisms 0..n_morphisms-1.

    `comp` maps every composable pair (a, b) to a∘b; a missing or extra
    pair is a structural error, not an axiom failure.
    """

    def __init__(self, n_objects, d0, d1, identity, inverse, comp):
        if n_objects < 1:
            raise StructureError("a groupoid needs at least one object")
        d0 = np.asarray(d0)
        m = d0.shape[0] if d0.ndim == 1 else -1
        if m < 1:
            raise StructureError("d0 must be a non-empty list")
        self.n_objects = int(n_objects)
        self.n_morphisms = m
        self.d0 = _vector(d0, m, n_objects, "d0")
        self.d1 = _vector(d1, m, n_objects, "d1")
        self.identity = _vector(identity, n_objects, m, "identity")
        self.inverse = _vector(inverse, m, m, "inverse")
        dense = -np.ones((m, m), dtype=np.int64)
        for (a, b), c in dict(comp).items():
            a, b, c = int(a), int(b), int(c)
            if not (0 <= a < m and 0 <= b < m):
                raise StructureError(f"composition key ({a}, {b}) out of range")
            if not 0 <= c < m:
                raise StructureError(f"composition ({a}, {b}) -> {c} out of range")
            if self.d1[a] != self.d0[b]:
                raise StructureError(f"composition given for non-composable pair ({a}, {b})")
            dense[a, b] = c
        composable = self.d1[:, None] == self.d0[None, :]
        missing = np.argwhere(composable & (dense < 0))
        if missing.size:
            a, b = missing[0]
            raise StructureError(f"composition undefined on composable pair ({a}, {b})")
        dense.flags.writeable = False
        self.comp_table = dense

    @classmethod
    def from_compose(cls, n_objects, d0, d1, identity, inverse, compose):
        """Build `comp` by calling compose(a, b) on every composable pair."""
        comp = {}
        for a in range(len(d0)):
            for b in range(len(d0)):
                if d1[a] == d0[b]:
                    comp[a, b] = compose(a, b)
        return cls(n_objects, d0, d1, identity, inverse, comp)

    @cached_property
    def composable_pairs(self) -> np.ndarray:
        return np.argwhere(self.comp_table >= 0)

    @property
    def comp(self) -> dict:
        return {(int(a), int(b)): int(self.comp_table[a, b]) for a, b in self.composable_pairs}

    def compose(self, a, b) -> int:
        c = self.comp_table[a, b]
        if c < 0:
            raise StructureError(f"morphisms {a} and {b} are not composable")
        return int(c)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (
            self.n_objects == other.n_objects
            and all(
                np.array_equal(getattr(self, k), getattr(other, k))
                for k in ("d0", "d1", "identity", "inverse", "comp_table")
            )
        )

    __hash__ = None

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.n_objects}, morphisms={self.n_morphisms})"

    def hom(self, x, y) -> list[int]:
        return [int(a) for a in np.flatnonzero((self.d0 == x) & (self.d1 == y))]

    def vertex_group(self, x=0) -> list[int]:
        return self.hom(x, x)


def check_groupoid(G: FiniteGroupoid, report: Report | None = None) -> Report:
    report = report if report is not None else Report("groupoid")
    C, d0, d1, eps, inv = G.comp_table, G.d0, G.d1, G.identity, G.inverse
    objs = np.arange(G.n_objects)
    a = np.arange(G.n_morphisms)

    report.add_many("groupoid", "d0_identity", np.argwhere(d0[eps] != objs))
    report.add_many("groupoid", "d1_identity", np.argwhere(d1[eps] != objs))
    ok_eps = (d0[eps] == objs) & (d1[eps] == objs)

    # neutrality, only where the identities sit on the right objects
    left = eps[d0[a]]
    usable = ok_eps[d0[a]]
    report.add_many("groupoid", "left_neutral", np.argwhere(usable & (C[left, a] != a)))
    right = eps[d1[a]]
    usable = ok_eps[d1[a]]
    report.add_many("groupoid", "right_neutral", np.argwhere(usable & (C[a, right] != a)))

    pairs = G.composable_pairs
    if len(pairs):
        x, y = pairs[:, 0], pairs[:, 1]
        xy = C[x, y]
        report.add_many("groupoid", "source_of_composite", pairs[d0[xy] != d0[x]])
        report.add_many("groupoid", "target_of_composite", pairs[d1[xy] != d1[y]])
        # (x∘y)∘z = x∘(y∘z) for every z after y
        ends = d1[y]
        triples = []
        for obj in range(G.n_objects):
            zs = np.flatnonzero(d0 == obj)
            sel = np.flatnonzero(ends == obj)
            if sel.size and zs.size:
                triples.append(
                    np.column_stack(
                        [np.repeat(x[sel], zs.size), np.repeat(y[sel], zs.size), np.tile(zs, sel.size)]
                    )
                )
        if triples:
            t = np.concatenate(triples)
            p, q, r = t[:, 0], t[:, 1], t[:, 2]
            # -1 marks an outer composite that is undefined
            lhs, rhs = C[C[p, q], r], C[p, C[q, r]]
            bad = (lhs != rhs) | (lhs < 0)
            report.add_many("groupoid", "associativity", t[bad])

    ai = inv[a]
    fwd = d1[a] == d0[ai]
    bwd = d1[ai] == d0[a]
    report.add_many("groupoid", "inverse_endpoints", np.argwhere(~(fwd & bwd)))
    both = np.flatnonzero(fwd & bwd)
    report.add_many(
        "groupoid", "right_inverse", both[C[both, ai[both]] != eps[d0[both]]][:, None]
    )
    report.add_many(
        "groupoid", "left_inverse", both[C[ai[both], both] != eps[d1[both]]][:, None]
    )
    return report


def star(G: FiniteGroupoid, x) -> list[int]:
    return [int(a) for a in np.flatnonzero(G.d0 == x)]


@dataclass(eq=False)
class GroupoidMorphism:
    """f0 on objects, f on morphisms."""

    source: object
    target: object
    object_map: np.ndarray
    morphism_map: np.ndarray

    def __post_init__(self):
        s, t = underlying(self.source), underlying(self.target)
        self.object_map = _vector(self.object_map, s.n_objects, t.n_objects, "object map")
        self.morphism_map = _vector(self.morphism_map, s.n_morphisms, t.n_morphisms, "morphism map")

    def then(self, other: GroupoidMorphism) -> GroupoidMorphism:
        """Apply self, then other."""
        return GroupoidMorphism(
            self.source,
            other.target,
            other.object_map[self.object_map],
            other.morphism_map[self.morphism_map],
        )


def underlying(G) -> FiniteGroupoid:
    """The plain groupoid of a FiniteGroupoid or an InternalGroupoid."""
    return getattr(G, "gpd", G)


def identity_groupoid_morphism(G) -> GroupoidMorphism:
    g = underlying(G)
    return GroupoidMorphism(G, G, np.arange(g.n_objects), np.arange(g.n_morphisms))


def check_groupoid_morphism(f: GroupoidMorphism, report: Report | None = None) -> Report:
    report = report if report is not None else Report("groupoid_morphism")
    S, T = underlying(f.source), underlying(f.target)
    f0, f1 = f.object_map, f.morphism_map
    report.add_many("groupoid_morphism", "commutes_d0", np.argwhere(T.d0[f1] != f0[S.d0]))
    report.add_many("groupoid_morphism", "commutes_d1", np.argwhere(T.d1[f1] != f0[S.d1]))
    report.add_many(
        "groupoid_morphism", "commutes_identity", np.argwhere(f1[S.identity] != T.identity[f0])
    )
    pairs = S.composable_pairs
    if len(pairs):
        a, b = pairs[:, 0], pairs[:, 1]
        image = T.comp_table[f1[a], f1[b]]
        bad = image != f1[S.comp_table[a, b]]
        report.add_many("groupoid_morphism", "preserves_composition", pairs[bad])
    return report


def is_covering_morphism(f: GroupoidMorphism) -> tuple[bool, Report]:
    """Star-bijectivity at every source object."""
    base = check_groupoid_morphism(f)
    if not base.ok:
        raise VerificationError("not a groupoid morphism", base)
    report = Report("covering_morphism")
    S, T = underlying(f.source), underlying(f.target)
    for x in range(S.n_objects):
        images = f.morphism_map[S.d0 == x]
        target_star = int(np.count_nonzero(T.d0 == f.object_map[x]))
        distinct = len(set(images.tolist()))
        if distinct != len(images):
            report.add("covering", "star_injective", (x,), f"{len(images)} morphisms hit {distinct} images")
        elif distinct != target_star:
            report.add("covering", "star_surjective", (x,), f"star size {len(images)} vs {target_star}")
    return report.ok, report


def connected_components(G) -> list[list[int]]:
    """Classes of objects joined by some morphism, each sorted, ordered by least member."""
    g = underlying(G)
    graph = coo_matrix(
        (np.ones(g.n_morphisms), (g.d0, g.d1)), shape=(g.n_objects, g.n_objects)
    )
    _, labels = _cc(graph, directed=True, connection="weak")
    classes: dict[int, list[int]] = {}
    for obj, lab in enumerate(labels):
        classes.setdefault(int(lab), []).append(obj)
    return sorted(classes.values())


def codiscrete(n: int) -> FiniteGroupoid:
    """One morphism x -> y for every ordered pair; morphism (x, y) is index x*n + y."""
    d0 = [i // n for i in range(n * n)]
    d1 = [i % n for i in range(n * n)]
    return FiniteGroupoid.from_compose(
        n,
        d0,
        d1,
        [x * n + x for x in range(n)],
        [(i % n) * n + i // n for i in range(n * n)],
        lambda a, b: d0[a] * n + d1[b],
    )


def discrete(n: int) -> FiniteGroupoid:
    return FiniteGroupoid.from_compose(n, range(n), range(n), range(n), range(n), lambda a, b: a)


def disjoint_union(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    m, n = G.n_morphisms, G.n_objects
    comp = dict(G.comp)
    comp.update({(a + m, b + m): c + m for (a, b), c in H.comp.items()})
    return FiniteGroupoid(
        n + H.n_objects,
        np.concatenate([G.d0, H.d0 + n]),
        np.concatenate([G.d1, H.d1 + n]),
        np.concatenate([G.identity, H.identity + m]),
        np.concatenate([G.inverse, H.inverse + m]),
        comp,
    )
