import numpy as np
import pytest

from corpus import crossed_modules, internal_groupoids
from omegagroups.covering import lift_operations
from omegagroups.equivalence import (
    delta,
    delta_on_covering,
    eta,
    eta_on_cover,
    iso_delta_eta,
    iso_eta_delta,
)
from omegagroups.generators import gen_cyclic_group, gen_cyclic_ring, gen_one_object, gen_pair_groupoid, inversion_action
from omegagroups.groupoid import GroupoidMorphism, identity_groupoid_morphism, is_covering_morphism
from omegagroups.internal import check_internal_morphism
from omegagroups.report import VerificationError
from omegagroups.xmod import (
    XModMorphism,
    identity_xmod_morphism,
    inclusion_crossed_module,
    trivial_crossed_module,
    zero_boundary,
)

Z2, Z3, Z4 = gen_cyclic_group(2), gen_cyclic_group(3), gen_cyclic_group(4)
C4 = gen_one_object(Z4)


def inversion():
    return zero_boundary(Z3, Z2, inversion_action(Z2, Z3))


def test_delta_of_eta_inversion():
    X = delta(eta(inversion()))
    assert X.A.order == 3 and X.B == Z2
    assert not X.alpha.map.any()
    assert X.act.dot.tolist() == [[0, 1, 2], [0, 2, 1]]


def test_delta_one_object():
    X = delta(C4)
    assert X.A == Z4 and X.B.order == 1
    assert X.act.dot.tolist() == [[0, 1, 2, 3]]


def test_delta_pair_groupoid_alpha_iso():
    X = delta(gen_pair_groupoid(Z2))
    assert X.A.order == 2 and X.alpha.is_bijective()


def test_eta_inversion_shape():
    G = eta(inversion())
    assert G.gpd.n_objects == 2 and G.gpd.n_morphisms == 6
    assert np.array_equal(G.gpd.d0, G.gpd.d1)
    assert [len(G.gpd.vertex_group(x)) for x in range(2)] == [3, 3]


def test_eta_of_identity_is_pair_groupoid():
    G = eta(inclusion_crossed_module(Z2, [0, 1]))
    P = gen_pair_groupoid(Z2)
    assert G.gpd.d1.tolist() == [0, 1, 1, 0]  # d1(b, a) = a + b
    # (b, a) ↦ (b, a + b)
    f = GroupoidMorphism(G, P, [0, 1], [0, 1, 3, 2])
    assert check_internal_morphism(f).ok


def test_eta_trivial():
    G = eta(trivial_crossed_module(Z2.signature))
    assert G.gpd.n_objects == 1 and G.gpd.n_morphisms == 1


@pytest.mark.parametrize("name", sorted(crossed_modules()))
def test_iso_delta_eta(name):
    w = iso_delta_eta(crossed_modules()[name])
    assert w.ok, w.report.render()
    fwd, back = w.levels["B"]
    assert fwd.tolist() == back.tolist() == list(range(len(fwd)))


@pytest.mark.parametrize("name", sorted(internal_groupoids()))
def test_iso_eta_delta(name):
    w = iso_eta_delta(internal_groupoids()[name])
    assert w.ok, w.report.render()


def test_delta_rejects_invalid():
    with pytest.raises(VerificationError):
        delta(gen_one_object(gen_cyclic_ring(4)))


def test_eta_rejects_invalid():
    from omegagroups.generators import gen_dihedral
    from omegagroups.omega import trivial_group

    with pytest.raises(VerificationError):
        eta(zero_boundary(gen_dihedral(3), trivial_group()))


@pytest.mark.parametrize("S", [[0], [0, 2], [0, 1, 2, 3]])
def test_delta_on_c4_covers(S):
    c = lift_operations(C4, S)
    m, verdict, report = delta_on_covering(c.p)
    assert verdict and report.ok
    assert m.f1.tolist() == list(range(4))  # star at 0 maps bijectively
    f = eta_on_cover(m)
    assert check_internal_morphism(f).ok and is_covering_morphism(f)[0]


def test_delta_on_identity_covering():
    G = eta(inversion())
    m, verdict, _ = delta_on_covering(identity_groupoid_morphism(G))
    assert verdict
    assert m.f1.tolist() == [0, 1, 2] and m.f2.tolist() == [0, 1]


def test_eta_on_identity_cover():
    f = eta_on_cover(identity_xmod_morphism(inversion()))
    assert f.morphism_map.tolist() == list(range(6))


def test_eta_on_ideal_cover():
    # ({0,2} = {0,2}) → ({0,2} ⊂ Z4): identity on A, inclusion on B
    from omegagroups.omega import restrict

    R = gen_cyclic_ring(4)
    sub, _ = restrict(R, [0, 2])
    X = inclusion_crossed_module(sub, [0, 1])
    Y = inclusion_crossed_module(R, [0, 2])
    f = eta_on_cover(XModMorphism(X, Y, [0, 1], [0, 2]))
    assert check_internal_morphism(f).ok and is_covering_morphism(f)[0]
    assert f.object_map.tolist() == [0, 2]
