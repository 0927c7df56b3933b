import numpy as np
import pytest

from corpus import crossed_modules
from omegagroups.generators import gen_cyclic_group, gen_cyclic_ring, gen_dihedral, inversion_action
from omegagroups.omega import trivial_group
from omegagroups.xmod import (
    XModMorphism,
    check_crossed_module,
    check_xmod_morphism,
    identity_xmod_morphism,
    inclusion_crossed_module,
    is_cover,
    trivial_crossed_module,
    zero_boundary,
)

Z2, Z3 = gen_cyclic_group(2), gen_cyclic_group(3)


def inversion():
    return zero_boundary(Z3, Z2, inversion_action(Z2, Z3))


def test_inversion_crossed_module():
    assert check_crossed_module(inversion()).ok


def test_ideal_inclusion():
    X = inclusion_crossed_module(gen_cyclic_ring(4), [0, 2])
    assert check_crossed_module(X).ok
    assert X.act.dot.tolist() == [[0, 1]] * 4
    # b⋆a is the product in Z4, pulled back to {0, 2}
    assert X.act.left["mul"].tolist() == [[0, 0], [0, 1], [0, 0], [0, 1]]


def test_nonabelian_with_zero_boundary_fails_peiffer():
    r = check_crossed_module(zero_boundary(gen_dihedral(3), trivial_group()))
    assert r.laws() == [("cm2", "peiffer")]
    a, b = r.first().witness
    S3 = gen_dihedral(3)
    assert S3.add[a, b] != S3.add[b, a]


@pytest.mark.parametrize("name", sorted(crossed_modules()))
def test_corpus_valid(name):
    assert check_crossed_module(crossed_modules()[name]).ok


def test_identity_morphism_and_cover():
    X = inversion()
    m = identity_xmod_morphism(X)
    assert check_xmod_morphism(m).ok
    assert is_cover(m)[0]


def test_equivariance_failure():
    m = XModMorphism(inversion(), zero_boundary(Z3, Z2), np.arange(3), np.arange(2))
    r = check_xmod_morphism(m)
    assert r.first("dot_equivariant").witness == (1, 1)


def test_zero_morphism_to_trivial():
    T = trivial_crossed_module(Z2.signature)
    assert check_xmod_morphism(XModMorphism(inversion(), T, [0, 0, 0], [0, 0])).ok


def test_zero_f1_not_cover():
    X = inversion()
    ok, r = is_cover(XModMorphism(X, X, [0, 0, 0], [0, 1]))
    assert not ok and r.failed("f1_bijective")
