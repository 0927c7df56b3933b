"""Finite groups with operations: tables, axiom checks, morphisms, subobjects."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .report import Report, StructureError, VerificationError
from .terms import check_identity

RESERVED = {"+", "-", "0"}
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Signature:
    """Named extra operations.  Duals of binary ops are implicit.

    Names are kept sorted, which is also the canonical serialization order.
    """

    binary: tuple = ()
    unary: tuple = ()
    label: str = ""

    def __post_init__(self):
        names = list(self.binary) + list(self.unary)
        for name in names:
            if name in RESERVED or not _NAME.match(name):
                raise StructureError(f"illegal operation name {name!r}")
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate operation names in {names}")
        object.__setattr__(self, "binary", tuple(sorted(self.binary)))
        object.__setattr__(self, "unary", tuple(sorted(self.unary)))

    def same_operations(self, other: Signature) -> bool:
        return self.binary == other.binary and self.unary == other.unary

    def reduct(self) -> Signature:
        return Signature(label="groups")


GROUPS = Signature(label="groups")


def _table(data, shape, n, what):
    try:
        arr = np.array(data, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"{what}: not an integer table ({exc})") from None
    if arr.shape != shape:
        raise StructureError(f"{what}: expected shape {shape}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = tuple(int(i) for i in np.argwhere((arr < 0) | (arr >= n))[0])
        raise StructureError(f"{what}: entry {int(arr[bad])} at index {bad} out of range 0..{n - 1}")
    arr.flags.writeable = False
    return arr


class OmegaGroup:
    """A group on 0..n-1 (0 the identity) with extra operation tables.

    Construction validates shapes and ranges only; the axioms are
    checked by `check_omega_group`.
    """

    def __init__(self, signature: Signature, add, neg, binary=None, unary=None, identities=()):
        n = len(add) if hasattr(add, "__len__") else 0
        add_arr = _table(add, (n, n), max(n, 1), "add")
        if add_arr.ndim != 2 or add_arr.shape[0] < 1:
            raise StructureError(f"add: expected a non-empty square table, got shape {add_arr.shape}")
        self.signature = signature
        self.order = n
        self.add = _table(add, (n, n), n, "add")
        self.neg = _table(neg, (n,), n, "neg")
        binary = dict(binary or {})
        unary = dict(unary or {})
        if sorted(binary) != list(signature.binary):
            raise StructureError(f"binary tables {sorted(binary)} do not match signature {list(signature.binary)}")
        if sorted(unary) != list(signature.unary):
            raise StructureError(f"unary tables {sorted(unary)} do not match signature {list(signature.unary)}")
        self.binary = {k: _table(binary[k], (n, n), n, f"binary {k}") for k in signature.binary}
        self.unary = {k: _table(unary[k], (n,), n, f"unary {k}") for k in signature.unary}
        self.identities = tuple(identities)

    @classmethod
    def from_functions(cls, signature, n, add, neg, binary=None, unary=None, identities=()):
        """Tabulate Python callables on range(n)."""
        r = range(n)
        return cls(
            signature,
            [[add(a, b) for b in r] for a in r],
            [neg(a) for a in r],
            {k: [[f(a, b) for b in r] for a in r] for k, f in (binary or {}).items()},
            {k: [f(a) for a in r] for k, f in (unary or {}).items()},
            identities,
        )

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, OmegaGroup):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.order == other.order
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.neg, other.neg)
            and all(np.array_equal(self.binary[k], other.binary[k]) for k in self.binary)
            and all(np.array_equal(self.unary[k], other.unary[k]) for k in self.unary)
            and [str(i) for i in self.identities] == [str(i) for i in other.identities]
        )

    __hash__ = None

    def __repr__(self):
        return f"OmegaGroup(order={self.order}, signature={self.signature})"

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def conj(self, b, a):
        """b + a - b."""
        return self.add[self.add[b, a], self.neg[b]]

    def with_identities(self, identities) -> OmegaGroup:
        return OmegaGroup(self.signature, self.add, self.neg, self.binary, self.unary, identities)

    def reduct(self) -> OmegaGroup:
        """The underlying plain group."""
        return OmegaGroup(GROUPS, self.add, self.neg)


def trivial_group(signature: Signature = GROUPS) -> OmegaGroup:
    return OmegaGroup(
        signature,
        [[0]],
        [0],
        {k: [[0]] for k in signature.binary},
        {k: [0] for k in signature.unary},
    )


def direct_product(G: OmegaGroup, H: OmegaGroup) -> OmegaGroup:
    """Componentwise structure on G x H, (g, h) encoded as g*|H| + h."""
    if not G.signature.same_operations(H.signature):
        raise StructureError("direct product of structures with different signatures")
    m = H.order
    g = np.arange(G.order * m) // m
    h = np.arange(G.order * m) % m

    def pair(x, y):
        return x * m + y

    return OmegaGroup(
        G.signature,
        pair(G.add[g[:, None], g[None, :]], H.add[h[:, None], h[None, :]]),
        pair(G.neg[g], H.neg[h]),
        {k: pair(G.binary[k][g[:, None], g[None, :]], H.binary[k][h[:, None], h[None, :]]) for k in G.binary},
        {k: pair(G.unary[k][g], H.unary[k][h]) for k in G.unary},
    )


def check_omega_group(G: OmegaGroup, report: Report | None = None) -> Report:
    """Group laws, distributivity of every named op (both argument orders),
    and compatibility of the unary ops, each with witnesses."""
    report = report if report is not None else Report("omega_group")
    n = G.order
    A, N = G.add, G.neg
    a = np.arange(n)
    x, y = a[:, None], a[None, :]
    i, j, k = a[:, None, None], a[None, :, None], a[None, None, :]

    bad = A[A[i, j], k] != A[i, A[j, k]]
    report.add_many("group", "add_associativity", np.argwhere(bad))
    report.add_many("group", "add_left_identity", np.argwhere(A[0, a] != a))
    report.add_many("group", "add_right_identity", np.argwhere(A[a, 0] != a))
    report.add_many("group", "add_left_inverse", np.argwhere(A[N[a], a] != 0))
    report.add_many("group", "add_right_inverse", np.argwhere(A[a, N[a]] != 0))

    for name, T in G.binary.items():
        # a*(b+c) = a*b + a*c, and the same for the dual: (b+c)*a = b*a + c*a
        bad = T[i, A[j, k]] != A[T[i, j], T[i, k]]
        report.add_many("axiom_c", f"distributive[{name}]", np.argwhere(bad))
        bad = T[A[j, k], i] != A[T[j, i], T[k, i]]
        report.add_many("axiom_c", f"distributive[{name}°]", np.argwhere(bad))

    for w, U in G.unary.items():
        report.add_many("axiom_d", f"additive[{w}]", np.argwhere(U[A[x, y]] != A[U[x], U[y]]))
        for name, T in G.binary.items():
            report.add_many("axiom_d", f"compatible[{w},{name}]", np.argwhere(T[U[x], y] != U[T[x, y]]))
            report.add_many("axiom_d", f"compatible[{w},{name}°]", np.argwhere(T[y, U[x]] != U[T[y, x]]))

    for ident in G.identities:
        check_identity(G, ident, report)
    return report


@dataclass(eq=False)
class OmegaMorphism:
    source: OmegaGroup
    target: OmegaGroup
    map: np.ndarray

    def __post_init__(self):
        _require_same_signature(self.source, self.target)
        self.map = _table(self.map, (self.source.order,), self.target.order, "morphism map")

    def __call__(self, a):
        return self.map[a]

    def then(self, other: OmegaMorphism) -> OmegaMorphism:
        """Apply self, then other."""
        return OmegaMorphism(self.source, other.target, other.map[self.map])

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.map.tolist())) == self.source.order


def identity_morphism(G: OmegaGroup) -> OmegaMorphism:
    return OmegaMorphism(G, G, np.arange(G.order))


def zero_morphism(G: OmegaGroup, H: OmegaGroup) -> OmegaMorphism:
    return OmegaMorphism(G, H, np.zeros(G.order, dtype=np.int64))


def _require_same_signature(S: OmegaGroup, T: OmegaGroup):
    if not S.signature.same_operations(T.signature):
        raise StructureError(f"signature mismatch: {S.signature} vs {T.signature}")


def check_morphism(f: OmegaMorphism, report: Report | None = None) -> Report:
    S, T, m = f.source, f.target, f.map
    _require_same_signature(S, T)
    report = report if report is not None else Report("omega_morphism")
    a = np.arange(S.order)
    x, y = a[:, None], a[None, :]
    if m[0] != 0:
        report.add("morphism", "zero", (0,), f"f(0)={int(m[0])}")
    report.add_many("morphism", "add", np.argwhere(m[S.add[x, y]] != T.add[m[x], m[y]]))
    report.add_many("morphism", "neg", np.argwhere(m[S.neg[a]] != T.neg[m[a]]))
    for name in S.binary:
        bad = m[S.binary[name][x, y]] != T.binary[name][m[x], m[y]]
        report.add_many("morphism", f"binary[{name}]", np.argwhere(bad))
    for w in S.unary:
        report.add_many("morphism", f"unary[{w}]", np.argwhere(m[S.unary[w][a]] != T.unary[w][m[a]]))
    return report


@dataclass(frozen=True, eq=False)
class Subobject:
    parent: OmegaGroup
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(int(m) for m in set(self.members))))

    def __eq__(self, other):
        return isinstance(other, Subobject) and self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return int(x) in self.members

    def as_omega_group(self) -> tuple[OmegaGroup, OmegaMorphism]:
        """Re-index the members ascending as a standalone structure, with its inclusion."""
        return restrict(self.parent, self.members)


def restrict(G: OmegaGroup, members) -> tuple[OmegaGroup, OmegaMorphism]:
    members = sorted(int(m) for m in set(members))
    if not members or members[0] != 0:
        raise StructureError("a subobject must contain 0")
    index = -np.ones(G.order, dtype=np.int64)
    index[members] = np.arange(len(members))
    ms = np.array(members)
    x, y = ms[:, None], ms[None, :]

    def reindex(t, what):
        t = index[t]
        if (t < 0).any():
            raise VerificationError(f"{what} leaves the subset {members}")
        return t

    H = OmegaGroup(
        G.signature,
        reindex(G.add[x, y], "addition"),
        reindex(G.neg[ms], "negation"),
        {k: reindex(T[x, y], k) for k, T in G.binary.items()},
        {k: reindex(U[ms], k) for k, U in G.unary.items()},
        G.identities,
    )
    return H, OmegaMorphism(H, G, ms)


def is_subobject(G: OmegaGroup, members) -> tuple[bool, Report]:
    """Closure under +, -, both orders of every binary op, every unary op.

    The report carries the first violation found.
    """
    members = set(int(m) for m in members)
    report = Report("subobject")
    for m in members:
        if not 0 <= m < G.order:
            raise StructureError(f"element {m} outside the carrier 0..{G.order - 1}")
    if 0 not in members:
        report.add("subobject", "contains_zero", (0,))
        return False, report
    ms = sorted(members)
    inside = np.zeros(G.order, dtype=bool)
    inside[ms] = True
    arr = np.array(ms)
    x, y = arr[:, None], arr[None, :]
    checks = [("add", G.add[x, y], 2), ("neg", G.neg[arr], 1)]
    checks += [(f"binary[{k}]", T[x, y], 2) for k, T in G.binary.items()]
    checks += [(f"unary[{k}]", U[arr], 1) for k, U in G.unary.items()]
    for law, values, arity in checks:
        escaped = np.argwhere(~inside[values])
        if escaped.size:
            idx = tuple(escaped[0])
            witness = tuple(arr[i] for i in idx)
            report.add("subobject", f"closed[{law}]", witness, f"result {int(values[idx])} escapes")
            return False, report
    return True, report


def closure(G: OmegaGroup, generators) -> frozenset:
    """Smallest subobject containing `generators`."""
    members = {0} | {int(g) for g in generators}
    frontier = set(members)
    while frontier:
        new = set()
        for a in frontier:
            new.add(int(G.neg[a]))
            for w in G.unary.values():
                new.add(int(w[a]))
            for b in members:
                new.add(int(G.add[a, b]))
                new.add(int(G.add[b, a]))
                for T in G.binary.values():
                    new.add(int(T[a, b]))
                    new.add(int(T[b, a]))
        frontier = new - members
        members |= frontier
    return frozenset(members)


def enumerate_subobjects(G: OmegaGroup) -> list[Subobject]:
    """All subobjects, ascending by size then by member list."""
    found = {frozenset({0}) if G.order == 1 else closure(G, ())}
    queue = list(found)
    while queue:
        H = queue.pop()
        for g in range(G.order):
            if g not in H:
                K = closure(G, H | {g})
                if K not in found:
                    found.add(K)
                    queue.append(K)
    return [Subobject(G, tuple(s)) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


def kernel_image(f: OmegaMorphism) -> tuple[Subobject, Subobject]:
    report = check_morphism(f)
    if not report.ok:
        raise VerificationError("kernel_image needs a valid morphism", report)
    kernel = Subobject(f.source, tuple(np.flatnonzero(f.map == 0)))
    image = Subobject(f.target, tuple(set(f.map.tolist())))
    return kernel, image


def element_order(G: OmegaGroup, a: int) -> int:
    k, x = 1, a
    while x != 0:
        x = int(G.add[x, a])
        k += 1
    return k


def find_isomorphism(G: OmegaGroup, H: OmegaGroup) -> OmegaMorphism | None:
    """Brute-force search for an isomorphism G -> H (sensible for order <= 16).

    Maps a generating set of the additive group element by element and
    extends along sums; candidates are filtered by element order.
    """
    if G.order != H.order or not G.signature.same_operations(H.signature):
        return None
    gens = []
    span = frozenset({0})
    for a in range(G.order):
        if a not in span:
            gens.append(a)
            span = closure(G.reduct(), gens)
    g_ord = [element_order(G, a) for a in range(G.order)]
    h_ord = [element_order(H, b) for b in range(H.order)]
    if sorted(g_ord) != sorted(h_ord):
        return None

    def extend(assign):
        m = dict(assign)
        frontier = list(m)
        while frontier:
            a = frontier.pop()
            for g in gens:
                c, d = int(G.add[a, g]), int(H.add[m[a], m[g]])
                if c in m:
                    if m[c] != d:
                        return None
                else:
                    m[c] = d
                    frontier.append(c)
        return m

    for images in itertools.product(*[[b for b in range(H.order) if h_ord[b] == g_ord[g]] for g in gens]):
        if len(set(images)) != len(images):
            continue
        m = extend({0: 0, **dict(zip(gens, images))})
        if m is None or len(m) != G.order or len(set(m.values())) != G.order:
            continue
        f = OmegaMorphism(G, H, [m[a] for a in range(G.order)])
        if check_morphism(f).ok:
            return f
    return None


def require_valid(G: OmegaGroup, what="structure"):
    report = check_omega_group(G)
    if not report.ok:
        raise VerificationError(f"{what} is not a group with operations", report)
    return G
