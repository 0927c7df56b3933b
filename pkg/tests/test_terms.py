import pytest

from omegagroups import StructureError
from omegagroups.generators import gen_cyclic_group, gen_cyclic_ring, gen_dihedral
from omegagroups.terms import (
    App,
    Var,
    Zero,
    check_identity,
    check_term,
    eval_term,
    parse_identity,
    parse_term,
    variables_of,
)

R4 = gen_cyclic_ring(4)


def test_eval_examples():
    assert eval_term(R4, parse_term("(mul a (+ b c))"), {"a": 2, "b": 1, "c": 1}) == 0
    assert eval_term(R4, parse_term("0"), {}) == 0
    assert eval_term(R4, parse_term("(- a)"), {"a": 3}) == 1
    assert eval_term(R4, parse_term("(- a b)"), {"a": 1, "b": 3}) == 2


def test_parse_shapes():
    t = parse_term("(mul a (+ b 0))")
    assert t == App("mul", (Var("a"), App("+", (Var("b"), Zero()))))
    assert variables_of(t) == ["a", "b"]
    assert str(t) == "(mul a (+ b 0))"


@pytest.mark.parametrize("text", ["(mul a", "a b", "()", "(+ a b))", "", "(1x a)"])
def test_parse_errors(text):
    with pytest.raises(StructureError):
        parse_term(text)


def test_unknown_operation_rejected():
    with pytest.raises(StructureError):
        check_term(gen_cyclic_group(3), parse_term("(mul a b)"))
    with pytest.raises(StructureError):
        check_term(R4, parse_term("(mul a)"))


def test_commutativity_holds_in_z4_ring():
    assert check_identity(R4, parse_identity("(mul a b) = (mul b a)")).ok


def test_commutativity_fails_in_s3():
    S3 = gen_dihedral(3)
    r = check_identity(S3, parse_identity("(+ a b) = (+ b a)"))
    assert not r.ok
    a, b = r.first().witness
    assert S3.add[a, b] != S3.add[b, a]
    assert r.counts[("identities", "(+ a b) = (+ b a)")] == 18


def test_trivial_identity():
    assert check_identity(gen_dihedral(4), parse_identity("x = x")).ok


def test_identity_with_explicit_variables():
    ident = parse_identity("(mul a a) = a", variables=("a", "z"))
    assert ident.variables == ("a", "z")
    r = check_identity(gen_cyclic_ring(2), ident)
    assert r.ok


def test_vectorised_eval():
    import numpy as np

    out = eval_term(R4, parse_term("(+ a a)"), {"a": np.arange(4)})
    assert list(out) == [0, 2, 0, 2]
