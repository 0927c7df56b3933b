"""Internal groupoids in a category of groups with operations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groupoid import FiniteGroupoid, GroupoidMorphism, check_groupoid, check_groupoid_morphism
from .omega import (
    OmegaGroup,
    OmegaMorphism,
    Subobject,
    _require_same_signature,
    direct_product,
    trivial_group,
    check_morphism,
    check_omega_group,
)
from .report import Report, StructureError, VerificationError

# bound on quadruples (pairs of composable pairs) evaluated at once
_BLOCK = 1 << 22


@dataclass(eq=False)
class InternalGroupoid:
    gpd: FiniteGroupoid
    morphism_omega: OmegaGroup
    object_omega: OmegaGroup

    def __post_init__(self):
        _require_same_signature(self.morphism_omega, self.object_omega)
        if self.morphism_omega.order != self.gpd.n_morphisms:
            raise StructureError(
                f"morphism structure has order {self.morphism_omega.order}, groupoid has {self.gpd.n_morphisms} morphisms"
            )
        if self.object_omega.order != self.gpd.n_objects:
            raise StructureError(
                f"object structure has order {self.object_omega.order}, groupoid has {self.gpd.n_objects} objects"
            )
        if self.gpd.identity[0] != 0:
            raise StructureError(f"identity at the zero object must be morphism 0, got {int(self.gpd.identity[0])}")

    def __eq__(self, other):
        if not isinstance(other, InternalGroupoid):
            return NotImplemented
        return (
            self.gpd == other.gpd
            and self.morphism_omega == other.morphism_omega
            and self.object_omega == other.object_omega
        )

    __hash__ = None

    def __repr__(self):
        return f"InternalGroupoid(objects={self.gpd.n_objects}, morphisms={self.gpd.n_morphisms})"

    @property
    def signature(self):
        return self.morphism_omega.signature

    def source_map(self) -> OmegaMorphism:
        return OmegaMorphism(self.morphism_omega, self.object_omega, self.gpd.d0)

    def target_map(self) -> OmegaMorphism:
        return OmegaMorphism(self.morphism_omega, self.object_omega, self.gpd.d1)

    def identity_map(self) -> OmegaMorphism:
        return OmegaMorphism(self.object_omega, self.morphism_omega, self.gpd.identity)


def _pair_blocks(pairs):
    k = len(pairs)
    step = max(1, _BLOCK // max(k, 1))
    for start in range(0, k, step):
        yield pairs[start : start + step]


def _check_interchange(G: InternalGroupoid, report: Report):
    M, g = G.morphism_omega, G.gpd
    C, d0, d1 = g.comp_table, g.d0, g.d1
    pairs = g.composable_pairs
    ops = [("+", M.add)] + [(k, T) for k, T in M.binary.items()]
    for name, T in ops:
        for block in _pair_blocks(pairs):
            a, c = block[:, 0][:, None], block[:, 1][:, None]
            b, d = pairs[:, 0][None, :], pairs[:, 1][None, :]
            top, bottom = T[a, b], T[c, d]
            defined = d1[top] == d0[bottom]
            if not defined.all():
                i, j = np.nonzero(~defined)
                rows = np.column_stack([a[i, 0], b[0, j], c[i, 0], d[0, j]])
                report.add_many("interchange", f"composable_closure[{name}]", rows)
            lhs = C[top, bottom]
            rhs = T[C[a, c], C[b, d]]
            i, j = np.nonzero(defined & (lhs != rhs))
            if i.size:
                rows = np.column_stack([a[i, 0], b[0, j], c[i, 0], d[0, j]])
                report.add_many("interchange", f"interchange[{name}]", rows)

    a, c = pairs[:, 0], pairs[:, 1]
    for name, U in [("-", M.neg)] + list(M.unary.items()):
        defined = d1[U[a]] == d0[U[c]]
        report.add_many("interchange", f"composable_closure[{name}]", pairs[~defined])
        bad = defined & (C[U[a], U[c]] != U[C[a, c]])
        report.add_many("interchange", f"interchange[{name}]", pairs[bad])


def check_internal_groupoid(G: InternalGroupoid, report: Report | None = None) -> Report:
    """Groupoid laws, both structures valid, d0/d1/ε structure-preserving,
    composition structure-preserving (interchange) for every operation,
    and a⁻¹ = ε d1(a) - a + ε d0(a)."""
    report = report if report is not None else Report("internal_groupoid")
    report.extend(check_groupoid(G.gpd))
    report.extend(check_omega_group(G.morphism_omega), "morphisms")
    report.extend(check_omega_group(G.object_omega), "objects")
    report.extend(check_morphism(G.source_map()), "d0")
    report.extend(check_morphism(G.target_map()), "d1")
    report.extend(check_morphism(G.identity_map()), "identity")
    _check_interchange(G, report)

    M, g = G.morphism_omega, G.gpd
    eps_d0, eps_d1 = g.identity[g.d0], g.identity[g.d1]
    formula = M.add[M.add[eps_d1, M.neg], eps_d0]
    report.add_many("inverse", "inverse_formula", np.argwhere(g.inverse != formula))
    return report


def require_internal(G: InternalGroupoid, what="input") -> InternalGroupoid:
    report = check_internal_groupoid(G)
    if not report.ok:
        raise VerificationError(f"{what} is not an internal groupoid", report)
    return G


def kernel_of_source(G: InternalGroupoid) -> tuple[OmegaGroup, OmegaMorphism]:
    """{a : d0(a) = 0}, re-indexed ascending, with its inclusion."""
    return Subobject(G.morphism_omega, tuple(np.flatnonzero(G.gpd.d0 == 0))).as_omega_group()


def vertex_omega_group(G: InternalGroupoid) -> tuple[OmegaGroup, OmegaMorphism]:
    """Loops at the zero object, re-indexed ascending, with its inclusion."""
    loops = np.flatnonzero((G.gpd.d0 == 0) & (G.gpd.d1 == 0))
    return Subobject(G.morphism_omega, tuple(loops)).as_omega_group()


def check_internal_morphism(f: GroupoidMorphism, report: Report | None = None) -> Report:
    S, T = f.source, f.target
    if not (isinstance(S, InternalGroupoid) and isinstance(T, InternalGroupoid)):
        raise StructureError("internal morphism needs internal groupoids at both ends")
    report = report if report is not None else Report("internal_morphism")
    report.extend(check_groupoid_morphism(f))
    report.extend(check_morphism(OmegaMorphism(S.morphism_omega, T.morphism_omega, f.morphism_map)), "morphisms")
    report.extend(check_morphism(OmegaMorphism(S.object_omega, T.object_omega, f.object_map)), "objects")
    return report


def one_object(G: OmegaGroup) -> InternalGroupoid:
    """G as a groupoid with a single object and composition +.

    An internal groupoid only when G is abelian with zero products.
    """
    n = G.order
    gpd = FiniteGroupoid(
        1,
        np.zeros(n, dtype=np.int64),
        np.zeros(n, dtype=np.int64),
        [0],
        G.neg,
        {(a, b): int(G.add[a, b]) for a in range(n) for b in range(n)},
    )
    return InternalGroupoid(gpd, G, trivial_group(G.signature))


def pair_groupoid(G: OmegaGroup) -> InternalGroupoid:
    """Objects G, one morphism (x, y): x -> y for each pair, componentwise structure."""
    n = G.order
    M = direct_product(G, G)
    idx = np.arange(n * n)
    x, y = idx // n, idx % n
    gpd = FiniteGroupoid.from_compose(
        n, x, y, np.arange(n) * (n + 1), y * n + x, lambda a, b: int(x[a] * n + y[b])
    )
    return InternalGroupoid(gpd, M, G)
