"""The functors between internal groupoids and crossed modules.

delta: internal groupoid -> crossed module (kernel of d0, objects, d1)
eta:   crossed module -> internal groupoid on B ⋉ A

plus the canonical isomorphisms for both round trips and the action of
both functors on covering morphisms / covers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .actions import ActionFamily, semidirect
from .groupoid import FiniteGroupoid, GroupoidMorphism, is_covering_morphism
from .internal import (
    InternalGroupoid,
    check_internal_groupoid,
    check_internal_morphism,
    kernel_of_source,
    require_internal,
)
from .omega import OmegaMorphism
from .report import Report, VerificationError
from .xmod import (
    CrossedModule,
    XModMorphism,
    check_crossed_module,
    check_xmod_morphism,
    is_cover,
    require_crossed_module,
)


@dataclass
class IsoWitness:
    """forward/backward maps per level ("A", "B" or "morphisms", "objects")."""

    source: object
    target: object
    levels: dict = field(default_factory=dict)
    report: Report = field(default_factory=lambda: Report("iso_witness"))

    @property
    def ok(self):
        return self.report.ok


def _index_of(values, table):
    """Position of each value in `table`; -1 where absent."""
    pos = -np.ones(int(max(table.max(initial=0), values.max(initial=0))) + 1, dtype=np.int64)
    pos[table] = np.arange(len(table))
    return pos[values]


def delta(G: InternalGroupoid) -> CrossedModule:
    require_internal(G)
    M, g = G.morphism_omega, G.gpd
    A, inc = kernel_of_source(G)
    incl = inc.map
    B = G.object_omega
    eps = g.identity
    eb, ia = eps[:, None], incl[None, :]
    dot = _index_of(M.conj(eb, ia), incl)
    left = {k: _index_of(T[eb, ia], incl) for k, T in M.binary.items()}
    right = {k: _index_of(T[incl[:, None], eps[None, :]], incl) for k, T in M.binary.items()}
    X = CrossedModule(A, B, OmegaMorphism(A, B, g.d1[incl]), ActionFamily(B, A, dot, left, right))
    report = check_crossed_module(X)
    if not report.ok:
        raise VerificationError("delta produced an invalid crossed module", report)
    return X


def eta(X: CrossedModule) -> InternalGroupoid:
    require_crossed_module(X)
    A, B, al = X.A, X.B, X.alpha.map
    m = A.order
    M = semidirect(B, A, X.act)
    idx = np.arange(M.order)
    b, a = idx // m, idx % m
    d1 = B.add[al[a], b]

    def compose(x, y):
        # (b,a)∘(b1,a1) = (b, a1 + a), defined when b1 = α(a) + b
        return int(b[x] * m + A.add[a[y], a[x]])

    gpd = FiniteGroupoid.from_compose(
        B.order,
        b,
        d1,
        np.arange(B.order) * m,
        d1 * m + A.neg[a],
        compose,
    )
    G = InternalGroupoid(gpd, M, B)
    report = check_internal_groupoid(G)
    if not report.ok:
        raise VerificationError("eta produced an invalid internal groupoid", report)
    return G


def _xmod_iso_report(X, Y, fwd1, fwd2, back1, back2) -> Report:
    report = Report("iso_delta_eta")
    forward = XModMorphism(X, Y, fwd1, fwd2)
    backward = XModMorphism(Y, X, back1, back2)
    report.extend(check_xmod_morphism(forward), "forward")
    report.extend(check_xmod_morphism(backward), "backward")
    report.add_many("composite", "A_round_trip", np.argwhere(back1[fwd1] != np.arange(X.A.order)))
    report.add_many("composite", "A_round_trip_back", np.argwhere(fwd1[back1] != np.arange(Y.A.order)))
    report.add_many("composite", "B_round_trip", np.argwhere(back2[fwd2] != np.arange(X.B.order)))
    report.add_many("composite", "B_round_trip_back", np.argwhere(fwd2[back2] != np.arange(Y.B.order)))
    return report


def iso_delta_eta(X: CrossedModule) -> IsoWitness:
    """X ≅ delta(eta(X)) via a ↦ (0, a) and the identity on B."""
    G = eta(X)
    Y = delta(G)
    _, inc = kernel_of_source(G)
    m = X.A.order
    fwd1 = _index_of(np.arange(m), inc.map)  # (0, a) has index a in B ⋉ A
    back1 = inc.map % m
    ident = np.arange(X.B.order)
    if (fwd1 < 0).any() or Y.A.order != m:
        report = Report("iso_delta_eta")
        report.add("witness", "kernel_shape", (Y.A.order, m))
        return IsoWitness(X, Y, {}, report)
    report = _xmod_iso_report(X, Y, fwd1, ident, back1, ident)
    return IsoWitness(X, Y, {"A": (fwd1, back1), "B": (ident, ident)}, report)


def iso_eta_delta(G: InternalGroupoid) -> IsoWitness:
    """G ≅ eta(delta(G)) via g ↦ (d0 g, g - ε d0 g), identity on objects."""
    X = delta(G)
    H = eta(X)
    M, g = G.morphism_omega, G.gpd
    _, inc = kernel_of_source(G)
    m = X.A.order
    base = g.identity[g.d0]
    kernel_part = _index_of(M.sub(np.arange(M.order), base), inc.map)
    fwd = g.d0 * m + kernel_part
    idx = np.arange(H.gpd.n_morphisms)
    # (b, a) = (0, a) + (b, 0)
    back = M.add[inc.map[idx % m], g.identity[idx // m]]
    ident = np.arange(g.n_objects)

    report = Report("iso_eta_delta")
    if (kernel_part < 0).any():
        report.add_many("witness", "kernel_part", np.argwhere(kernel_part < 0))
        return IsoWitness(G, H, {}, report)
    report.extend(check_internal_morphism(GroupoidMorphism(G, H, ident, fwd)), "forward")
    report.extend(check_internal_morphism(GroupoidMorphism(H, G, ident, back)), "backward")
    report.add_many("composite", "morphism_round_trip", np.argwhere(back[fwd] != np.arange(M.order)))
    report.add_many("composite", "morphism_round_trip_back", np.argwhere(fwd[back] != idx))
    return IsoWitness(G, H, {"morphisms": (fwd, back), "objects": (ident, ident)}, report)


def delta_on_covering(f: GroupoidMorphism) -> tuple[XModMorphism, bool, Report]:
    """(restriction of f to the kernels of d0, f on objects), with the cover verdict."""
    report = check_internal_morphism(f)
    if not report.ok:
        raise VerificationError("not a morphism of internal groupoids", report)
    covering, cov_report = is_covering_morphism(f)
    if not covering:
        raise VerificationError("not a covering morphism", cov_report)
    X, Y = delta(f.source), delta(f.target)
    _, inc_s = kernel_of_source(f.source)
    _, inc_t = kernel_of_source(f.target)
    f1 = _index_of(f.morphism_map[inc_s.map], inc_t.map)
    m = XModMorphism(X, Y, f1, f.object_map)
    verdict, cover_report = is_cover(m)
    return m, verdict, cover_report


def eta_on_cover(m: XModMorphism) -> GroupoidMorphism:
    """(b, a) ↦ (f2 b, f1 a) between the internal groupoids of source and target."""
    ok, report = is_cover(m)
    if not ok:
        raise VerificationError("not a cover of crossed modules", report)
    H, G = eta(m.source), eta(m.target)
    ms, mt = m.source.A.order, m.target.A.order
    idx = np.arange(H.gpd.n_morphisms)
    f = GroupoidMorphism(H, G, m.f2, m.f2[idx // ms] * mt + m.f1[idx % ms])
    report = check_internal_morphism(f)
    if not report.ok:
        raise VerificationError("induced map is not an internal morphism", report)
    covering, cov_report = is_covering_morphism(f)
    if not covering:
        raise VerificationError("induced map is not a covering morphism", cov_report)
    return f
