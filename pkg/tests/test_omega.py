import numpy as np
import pytest

import oracle
from corpus import omega_groups
from omegagroups import StructureError
from omegagroups.generators import gen_cyclic_group, gen_cyclic_ring, gen_dihedral, gen_f4_space, gen_module
from omegagroups.omega import (
    GROUPS,
    OmegaGroup,
    OmegaMorphism,
    Signature,
    check_morphism,
    check_omega_group,
    closure,
    direct_product,
    element_order,
    enumerate_subobjects,
    find_isomorphism,
    identity_morphism,
    is_subobject,
    kernel_image,
    restrict,
    trivial_group,
    zero_morphism,
)


def test_z6_ring_valid():
    assert check_omega_group(gen_cyclic_ring(6)).ok


def test_sum_as_product_breaks_distributivity():
    sig = Signature(("s",))
    G = OmegaGroup.from_functions(sig, 2, lambda a, b: (a + b) % 2, lambda a: a, binary={"s": lambda a, b: (a + b) % 2})
    r = check_omega_group(G)
    assert not r.ok
    v = r.first("distributive[s]")
    assert v.witness == (1, 0, 0)


def test_trivial_structure_valid():
    sig = Signature(("mul",), ("w",))
    G = OmegaGroup(sig, [[0]], [0], {"mul": [[0]]}, {"w": [0]})
    assert check_omega_group(G).ok


@pytest.mark.parametrize("name", sorted(omega_groups()))
def test_generators_agree_with_oracle(name):
    G = omega_groups()[name]
    assert check_omega_group(G).ok == oracle.is_omega_group(*oracle.tables(G))


def test_bad_inverse_reported():
    Z4 = gen_cyclic_group(4)
    G = OmegaGroup(GROUPS, Z4.add, [0, 2, 1, 3])
    r = check_omega_group(G)
    assert not r.ok and r.failed("add_left_inverse")


def test_compatibility_failure():
    # ω(a) = a on Z2 ring is fine; ω = constant 1 is not additive
    sig = Signature(("mul",), ("w",))
    R = gen_cyclic_ring(2)
    G = OmegaGroup(sig, R.add, R.neg, {"mul": R.binary["mul"]}, {"w": [1, 1]})
    r = check_omega_group(G)
    assert r.failed("additive[w]")


def test_signature_rejects_reserved_names():
    with pytest.raises(StructureError):
        Signature(("+",))
    with pytest.raises(StructureError):
        Signature(("mul",), ("mul",))


def test_table_range_error():
    with pytest.raises(StructureError, match="out of range"):
        OmegaGroup(GROUPS, [[0, 1], [1, 9]], [0, 1])


def test_tables_read_only():
    G = gen_cyclic_group(3)
    with pytest.raises(ValueError):
        G.add[0, 0] = 1


def test_doubling_map_not_multiplicative():
    R = gen_cyclic_ring(4)
    r = check_morphism(OmegaMorphism(R, R, [0, 2, 0, 2]))
    assert r.first("binary[mul]").witness == (1, 1)
    assert not r.failed("add")


def test_identity_and_zero_morphisms():
    R = gen_cyclic_ring(4)
    assert check_morphism(identity_morphism(R)).ok
    assert check_morphism(zero_morphism(R, R)).ok


def test_morphism_signature_mismatch():
    with pytest.raises(StructureError):
        OmegaMorphism(gen_cyclic_ring(2), gen_cyclic_group(2), [0, 1])


def test_is_subobject_examples():
    R = gen_cyclic_ring(4)
    assert is_subobject(R, [0, 2])[0]
    ok, report = is_subobject(R, [0, 1])
    assert not ok and report.failed("closed[add]")
    assert is_subobject(gen_dihedral(4), [0])[0]


def test_f4_line_not_a_subspace():
    ok, report = is_subobject(gen_f4_space(), [0, 1])
    assert not ok
    assert any(law.startswith("closed[unary[s") for _, law in report.laws())


@pytest.mark.parametrize(
    "G, expected",
    [
        (gen_cyclic_ring(4), [(0,), (0, 2), (0, 1, 2, 3)]),
        (gen_cyclic_ring(6), [(0,), (0, 3), (0, 2, 4), (0, 1, 2, 3, 4, 5)]),
        (trivial_group(), [(0,)]),
    ],
)
def test_enumerate_subobjects_examples(G, expected):
    assert [s.members for s in enumerate_subobjects(G)] == expected


@pytest.mark.parametrize("name", sorted(omega_groups()))
def test_enumerate_subobjects_matches_subset_scan(name):
    G = omega_groups()[name]
    got = sorted(s.members for s in enumerate_subobjects(G))
    assert got == sorted(oracle.subobjects(*oracle.tables(G)))


def test_kernel_image_examples():
    R4, R2 = gen_cyclic_ring(4), gen_cyclic_ring(2)
    ker, im = kernel_image(OmegaMorphism(R4, R2, [0, 1, 0, 1]))
    assert ker.members == (0, 2) and im.members == (0, 1)
    ker, im = kernel_image(zero_morphism(R4, R4))
    assert ker.members == (0, 1, 2, 3) and im.members == (0,)
    Z6 = gen_cyclic_ring(6)
    ker, im = kernel_image(identity_morphism(Z6))
    assert ker.members == (0,) and len(im) == 6


def test_restrict_gives_valid_structure():
    H, inc = restrict(gen_cyclic_ring(6), [0, 2, 4])
    assert H.order == 3 and check_omega_group(H).ok and check_morphism(inc).ok
    assert list(inc.map) == [0, 2, 4]


def test_closure():
    assert closure(gen_cyclic_group(6), [2]) == frozenset({0, 2, 4})
    assert closure(gen_f4_space(), [1]) == frozenset(range(4))


def test_direct_product_valid():
    P = direct_product(gen_cyclic_ring(2), gen_cyclic_ring(3))
    assert P.order == 6 and check_omega_group(P).ok
    assert find_isomorphism(P, gen_cyclic_ring(6)) is not None


def test_element_orders_of_dihedral():
    D = gen_dihedral(4)
    assert sorted(element_order(D, a) for a in range(8)) == oracle.element_orders(D.add.tolist())


def test_find_isomorphism_negative():
    assert find_isomorphism(gen_cyclic_group(6), gen_dihedral(3)) is None
    f = find_isomorphism(gen_dihedral(3), gen_dihedral(3))
    assert f is not None and check_morphism(f).ok


def test_module_generator():
    M = gen_module(3, 6)
    assert M.signature.unary == ("s0", "s1", "s2")
    assert list(M.unary["s2"]) == [0, 2, 4, 0, 2, 4]
    assert check_omega_group(M).ok


def test_equality():
    assert gen_cyclic_ring(4) == gen_cyclic_ring(4)
    assert gen_cyclic_ring(4) != gen_cyclic_group(4)
    assert not np.array_equal(gen_cyclic_ring(4).binary["mul"], np.zeros((4, 4)))
