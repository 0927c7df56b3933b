"""Small example structures used by the tests, the fixtures and the CLI."""

from __future__ import annotations

import numpy as np

from .actions import ActionFamily
from .internal import InternalGroupoid, one_object, pair_groupoid
from .omega import GROUPS, OmegaGroup, Signature


def gen_cyclic_group(n: int) -> OmegaGroup:
    return OmegaGroup.from_functions(GROUPS, n, lambda a, b: (a + b) % n, lambda a: -a % n)


def gen_cyclic_ring(n: int) -> OmegaGroup:
    """Z/n with ring multiplication `mul`."""
    return OmegaGroup.from_functions(
        Signature(("mul",), label="rings"),
        n,
        lambda a, b: (a + b) % n,
        lambda a: -a % n,
        binary={"mul": lambda a, b: a * b % n},
    )


def gen_zero_ring(n: int) -> OmegaGroup:
    """Z/n with the zero multiplication."""
    return OmegaGroup.from_functions(
        Signature(("mul",), label="rings"),
        n,
        lambda a, b: (a + b) % n,
        lambda a: -a % n,
        binary={"mul": lambda a, b: 0},
    )


def gen_module(m: int, n: int) -> OmegaGroup:
    """Z/n with one unary op `s<r>`: a ↦ r·a mod n for each scalar r in Z/m."""
    return OmegaGroup.from_functions(
        Signature(unary=tuple(f"s{r}" for r in range(m)), label=f"modules/Z{m}"),
        n,
        lambda a, b: (a + b) % n,
        lambda a: -a % n,
        unary={f"s{r}": (lambda a, r=r: r * a % n) for r in range(m)},
    )


def gen_dihedral(n: int) -> OmegaGroup:
    """Symmetries of the n-gon: r^k is k, s·r^k is n + k.  gen_dihedral(3) is S3."""

    def split(x):
        return divmod(x, n)

    def add(x, y):
        fx, kx = split(x)
        fy, ky = split(y)
        # s^f r^k · s^g r^l = s^(f+g) r^((-1)^g k + l)
        return ((fx + fy) % 2) * n + ((-1) ** fy * kx + ky) % n

    def neg(x):
        f, k = split(x)
        return x if f else (-k) % n

    return OmegaGroup.from_functions(GROUPS, 2 * n, add, neg)


# GF(4) = {0, 1, x, x+1} encoded 0..3 with addition XOR
_GF4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def gen_f4_space() -> OmegaGroup:
    """GF(4) as a one-dimensional vector space over itself (scalars as unary ops)."""
    return OmegaGroup.from_functions(
        Signature(unary=("s0", "s1", "s2", "s3"), label="vector spaces/F4"),
        4,
        lambda a, b: a ^ b,
        lambda a: a,
        unary={f"s{r}": (lambda a, r=r: _GF4_MUL[r][a]) for r in range(4)},
    )


def gen_pair_groupoid(G: OmegaGroup) -> InternalGroupoid:
    return pair_groupoid(G)


def gen_one_object(G: OmegaGroup) -> InternalGroupoid:
    return one_object(G)


def inversion_action(B: OmegaGroup, A: OmegaGroup) -> ActionFamily:
    """b acts on A as a ↦ -a when b is odd in B = Z/2k, trivially otherwise; products zero."""
    odd = np.arange(B.order) % 2 == 1
    dot = np.where(odd[:, None], A.neg[None, :], np.arange(A.order)[None, :])
    zeros = {k: np.zeros((B.order, A.order), dtype=np.int64) for k in A.signature.binary}
    zeros_r = {k: np.zeros((A.order, B.order), dtype=np.int64) for k in A.signature.binary}
    return ActionFamily(B, A, dot, zeros, zeros_r)


def gen_s3() -> OmegaGroup:
    return gen_dihedral(3)
