import numpy as np
import pytest

import oracle
from corpus import action_candidates
from omegagroups import StructureError
from omegagroups.actions import (
    ActionFamily,
    SplitExtension,
    check_split_extension,
    derived_actions_from_split_extension,
    semidirect,
    semidirect_extension,
    trivial_action,
    verify_derived_action,
)
from omegagroups.generators import gen_cyclic_group, gen_cyclic_ring, gen_dihedral, gen_module, inversion_action
from omegagroups.omega import check_omega_group, direct_product, find_isomorphism, restrict, trivial_group

Z2, Z3, Z4 = gen_cyclic_group(2), gen_cyclic_group(3), gen_cyclic_group(4)


def test_s3_as_split_extension():
    X = semidirect_extension(Z2, Z3, inversion_action(Z2, Z3))
    assert check_split_extension(X).ok
    act = derived_actions_from_split_extension(X)
    assert act.dot.tolist() == [[0, 1, 2], [0, 2, 1]]


def test_section_not_additive():
    A, inc = restrict(Z4, [0, 2])
    X = SplitExtension.from_maps(A, Z4, Z2, inc.map, [0, 1, 0, 1], [0, 1])
    r = check_split_extension(X)
    assert r.failed("add") and r.first("add").section == "section.morphism"


def test_identity_extension():
    G = gen_dihedral(3)
    T = trivial_group()
    X = SplitExtension.from_maps(G, G, T, range(6), [0] * 6, [0])
    assert check_split_extension(X).ok


def test_direct_product_extension_has_trivial_actions():
    R2 = gen_cyclic_ring(2)
    X = SplitExtension.from_maps(R2, direct_product(R2, R2), R2, [0, 1], [0, 0, 1, 1], [0, 2])
    act = derived_actions_from_split_extension(X)
    assert act == trivial_action(R2, R2)
    assert not act.left["mul"].any() and not act.right["mul"].any()


def test_semidirect_inversion_is_s3():
    E = semidirect(Z2, Z3, inversion_action(Z2, Z3))
    assert E.order == 6
    assert not np.array_equal(E.add, E.add.T)
    assert oracle.element_orders(E.add.tolist()) == [1, 2, 2, 2, 3, 3]
    assert find_isomorphism(E, gen_dihedral(3)) is not None


def test_trivial_semidirect_formula():
    E = semidirect(Z2, Z3, trivial_action(Z2, Z3))
    assert E.add[1 * 3 + 2, 1 * 3 + 1] == 0
    assert E == direct_product(Z2, Z3)


def test_trivial_factor():
    T = trivial_group()
    assert find_isomorphism(semidirect(T, Z4, trivial_action(T, Z4)), Z4) is not None
    assert find_isomorphism(semidirect(Z4, T, trivial_action(Z4, T)), Z4) is not None


def test_inversion_action_verifies():
    assert verify_derived_action(Z2, Z3, inversion_action(Z2, Z3)).ok


def test_translation_is_not_an_action():
    bad = ActionFamily(Z2, Z3, [[0, 1, 2], [1, 2, 0]], {}, {})
    r = verify_derived_action(Z2, Z3, bad)
    assert not r.ok
    assert any(sec == "E.group" for sec, _ in r.laws())


def test_trivial_action_on_abelian_pair():
    R = gen_cyclic_ring(4)
    assert verify_derived_action(R, R, trivial_action(R, R)).ok


def test_module_semidirect_componentwise_scalars():
    M = gen_module(2, 2)
    E = semidirect(M, M, trivial_action(M, M))
    assert check_omega_group(E).ok
    assert E.unary["s1"].tolist() == [0, 1, 2, 3]
    assert E.unary["s0"].tolist() == [0, 0, 0, 0]


def test_action_table_mismatch():
    with pytest.raises(StructureError):
        ActionFamily(gen_cyclic_ring(2), gen_cyclic_ring(2), [[0, 1], [0, 1]], {}, {})
    with pytest.raises(StructureError):
        ActionFamily(Z2, Z3, [[0, 1, 5], [0, 1, 2]], {}, {})


@pytest.mark.parametrize("i", range(0, 90, 7))
def test_semidirect_tables_match_oracle(i):
    act = action_candidates()[i]
    B, A = act.actor, act.acted
    E = semidirect(B, A, act)
    add, neg, binary, unary = oracle.semidirect(
        oracle.tables(B), oracle.tables(A), act.dot.tolist(),
        {k: v.tolist() for k, v in act.left.items()},
        {k: v.tolist() for k, v in act.right.items()},
    )
    assert E.add.tolist() == add
    assert E.neg.tolist() == neg
    assert {k: v.tolist() for k, v in E.unary.items()} == unary
    assert {k: v.tolist() for k, v in E.binary.items()} == binary
