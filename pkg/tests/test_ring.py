import random

import pytest

from closurelab.field import QQ, prime_field
from closurelab.orders import DEGREVLEX
from closurelab.poly import ContextError, DomainError, PolyRing
from closurelab.ring import (ParameterSequence, make_quotient_ring,
                             presented_subring)


def test_dimensions(kxy, xyuv, segre):
    assert kxy.dim == 2
    assert xyuv.dim == 3
    assert segre.dim == 2


def test_inhomogeneous_relations_rejected():
    amb = PolyRing(("x", "y"), QQ, DEGREVLEX)
    with pytest.raises(DomainError):
        make_quotient_ring(amb, [amb.parse("x^2 + y")])


def test_normal_form_canonical_equality(segre):
    assert segre.elem("b^2") == segre.elem("a*c")
    assert segre.elem("b^2 - a*c").is_zero()
    assert segre.elem("a + b") != segre.elem("a")


def test_elem_arithmetic_random(segre):
    rng = random.Random(5)
    vars_ = segre.gens()
    for _ in range(30):
        x, y, z = (rng.choice(vars_) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z


def test_elem_context_error(kxy, segre):
    with pytest.raises(ContextError):
        kxy.elem("x") + segre.elem("a")


def test_partial_sop_checks(kxy, segre, veronese4):
    assert kxy.is_partial_sop([kxy.elem("x"), kxy.elem("y")])
    assert veronese4.is_partial_sop([veronese4.elem("a"), veronese4.elem("d")])
    # R/(a,b) = k[c] has dimension 1, not 0
    assert not segre.is_partial_sop([segre.elem("a"), segre.elem("b")])
    assert segre.is_partial_sop([segre.elem("a"), segre.elem("c")])


def test_partial_sop_rejects_degenerate_inputs(kxy):
    assert not kxy.is_partial_sop([kxy.zero()])
    assert not kxy.is_partial_sop([kxy.one()])
    assert not kxy.is_partial_sop([kxy.elem("x + x^2")])


def test_parameter_sequence_verification(veronese4):
    seq = ParameterSequence.verified(veronese4, ["a", "d"])
    assert seq.verified_partial_sop
    assert [str(x) for x in seq] == ["a", "d"]
    with pytest.raises(DomainError):
        ParameterSequence.verified(veronese4, ["a", "b", "c"])


def test_nzd_drops_dimension_by_one(segre, xyuv):
    for ring, elem in ((segre, "a"), (segre, "b + c"), (xyuv, "x + y")):
        assert ring.dim_modulo([ring.elem(elem)]) == ring.dim - 1


def test_presented_subring_veronese2():
    T = PolyRing(("x", "y"), QQ, DEGREVLEX)
    R = presented_subring([T.parse("x^2"), T.parse("x*y"), T.parse("y^2")])
    assert R.ambient.weights == (2, 2, 2)
    assert [str(g) for g in R.ideal_basis] == ["b^2 - a*c"]
    assert R.dim == 2
    assert R.domain_status == "subring-of-domain"


def test_presented_subring_single_variable():
    T = PolyRing(("x",), QQ, DEGREVLEX)
    R = presented_subring([T.parse("x")])
    assert R.ideal_basis == []
    assert R.ambient.weights == (1,)
    assert R.dim == 1


def test_presented_subring_veronese4(veronese4):
    assert veronese4.ambient.weights == (4, 4, 4, 4)
    assert veronese4.dim == 2
    sp = veronese4.presentation
    T = sp.target
    # substitution oracle: all relations vanish under the monomial map
    assert sp.to_subring(T.parse("x^6*y^2")) is not None
    assert str(sp.to_subring(T.parse("x^6*y^2"))) == "b^2"
    assert sp.to_subring(T.parse("x^2*y^2")) is None  # not in the subring
    assert sp.to_subring(T.parse("x^5*y^3")) is not None  # = bc = ad


def test_descriptor_fields(segre):
    d = segre.descriptor()
    assert d["vars"] == ["a", "b", "c"]
    assert d["dim"] == 2
    assert d["relations"] == ["b^2 - a*c"]
    assert d["domain"] == "assumed"


def test_prime_field_quotient():
    amb = PolyRing(("a", "b", "c"), prime_field(5), DEGREVLEX)
    R = make_quotient_ring(amb, [amb.parse("a*c - b^2")])
    assert R.dim == 2
    assert R.elem("b^2") == R.elem("a*c")
    assert R.elem("5*a").is_zero()
