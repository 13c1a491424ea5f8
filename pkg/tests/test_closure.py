"""Closure operations: membership, computation, checkers, phantom, obstruction."""

import random

import pytest

from closurelab.poly import DomainError
from closurelab.modules import (FPModule, ModuleMap, Submodule, free_module,
                                ideal_as_module, ideal_submodule,
                                quotient_module, residue_field,
                                ring_as_module, scaled_gens)
from closurelab.closure import (ClosureOp, ModuleClosure,
                                MonomialIntegralClosure, PhantomInstance,
                                TrivialClosure, UnsupportedQueryError,
                                check_colon_capturing, check_faithfulness,
                                check_functoriality,
                                check_generalized_colon_capturing,
                                check_semi_residuality, closure_of_ideal,
                                dietz_obstruction, direct_sum_closure,
                                ideal_member, intersect_closures,
                                is_trivial_on_sample, newton_polyhedron_member,
                                phantom_test)
from closurelab.sampling import sample_ideals


# --- membership examples -------------------------------------------------------------


def test_square_subring_membership(segre):
    M = ideal_as_module(segre, ["a", "b"])
    clM = ModuleClosure(M, "cl_M")
    out = ideal_member(clM, segre, "a*c", ["a^2", "a*b", "b*c", "c^2"],
                       want_certificate=True)
    assert out.holds
    assert out.certificate is not None
    assert len(out.certificate) == M.ngens


def test_s2_closure_membership(veronese4, s2_module):
    clS = ModuleClosure(s2_module, "cl_S")
    assert ideal_member(clS, veronese4, "b^2", ["a"]).holds
    assert ideal_member(clS, veronese4, "c^2", ["d"]).holds
    assert not ideal_member(clS, veronese4, "b", ["a"]).holds


def test_trivial_membership(kxy):
    triv = TrivialClosure()
    assert not ideal_member(triv, kxy, "x", ["x^2", "y^2"]).holds
    assert ideal_member(triv, kxy, "x^2 + y^2", ["x^2", "y^2"]).holds


def test_integral_closure_membership(kxy):
    ic = MonomialIntegralClosure()
    assert ideal_member(ic, kxy, "x*y", ["x^2", "y^2"]).holds
    assert not ideal_member(ic, kxy, "x", ["x^2", "y^2"]).holds


def test_integral_closure_rejects_bad_inputs(kxy, segre):
    ic = MonomialIntegralClosure()
    with pytest.raises(UnsupportedQueryError):
        ideal_member(ic, kxy, "x", ["x + y"])
    with pytest.raises(UnsupportedQueryError):
        ideal_member(ic, segre, "a", ["b"])


def test_newton_polyhedron_halves():
    assert newton_polyhedron_member((1, 1), [(2, 0), (0, 2)])
    assert not newton_polyhedron_member((1, 0), [(2, 0), (0, 2)])
    assert newton_polyhedron_member((3, 1), [(2, 0), (0, 2)])
    assert newton_polyhedron_member((2, 2), [(4, 0), (0, 3)])


# --- closure computation ----------------------------------------------------------------


def test_square_subring_closures_coincide(segre):
    M = ideal_as_module(segre, ["a", "b"])
    clM = ModuleClosure(M, "cl_M")
    I = ["a^2", "a*b", "b*c", "c^2"]
    CI = closure_of_ideal(clM, segre, I)
    CJ = closure_of_ideal(clM, segre, I + ["a*c"])
    assert CI.same_as(CJ)
    assert CI.contains(ring_as_module(segre).vec(["a*c"]))
    assert {str(g.component(0)) for g in CI.gens} == \
        {"a^2", "a*b", "a*c", "b*c", "c^2"}


def test_trivial_closure_is_identity(kxy):
    N = ideal_submodule(kxy, ["x^2", "x*y"])
    assert TrivialClosure().closure(N).same_as(N)


def test_xyuv_closure_contains_xu(xyuv):
    M = ideal_as_module(xyuv, ["x", "u"])
    clM = ModuleClosure(M, "cl_M")
    C = closure_of_ideal(clM, xyuv, ["x^2", "u^2"])
    assert C.contains(ring_as_module(xyuv).vec(["x*u"]))


def test_integral_closure_compute(kxy):
    C = closure_of_ideal(MonomialIntegralClosure(), kxy, ["x^2", "y^2"])
    assert {str(g.component(0)) for g in C.gens} == {"x^2", "x*y", "y^2"}


def test_closure_extension_and_idempotence(segre):
    M = ideal_as_module(segre, ["a", "b"])
    clM = ModuleClosure(M)
    N = ideal_submodule(segre, ["a^2", "b*c"])
    C = clM.closure(N)
    assert C.contains_submodule(N)
    assert clM.closure(C).same_as(C)


# --- intersections and direct sums -----------------------------------------------------------


def test_direct_sum_closure_equals_intersection(segre):
    rng = random.Random(99)
    from closurelab.sampling import random_ideal_gens
    for _ in range(5):
        S = ideal_as_module(segre, random_ideal_gens(segre, rng, 2, 2))
        T = ideal_as_module(segre, random_ideal_gens(segre, rng, 2, 2))
        N = ideal_submodule(segre, random_ideal_gens(segre, rng, 2, 2))
        assert direct_sum_closure(S, T).closure(N).same_as(
            intersect_closures(ModuleClosure(S), ModuleClosure(T)).closure(N))


def test_free_summand_makes_intersection_trivial(segre):
    # cl_{R + S} = cl_R cap cl_S and cl_R is trivial on ideals of a domain
    S = ideal_as_module(segre, ["a", "b"])
    R1 = ring_as_module(segre)
    both = direct_sum_closure(R1, S)
    N = ideal_submodule(segre, ["a^2", "a*b", "b*c", "c^2"])
    assert both.closure(N).same_as(N)
    inter = intersect_closures(TrivialClosure(), ModuleClosure(S))
    assert inter.closure(N).same_as(N)


def test_intersection_idempotent(segre):
    S = ideal_as_module(segre, ["a", "b"])
    cl = ModuleClosure(S)
    N = ideal_submodule(segre, ["a^2", "a*b", "b*c", "c^2"])
    assert intersect_closures(cl, cl).closure(N).same_as(cl.closure(N))


def test_module_closure_rejects_zero_module(segre):
    Z = quotient_module(segre, ["1"])
    with pytest.raises(DomainError):
        ModuleClosure(Z)


# --- axiom checkers ---------------------------------------------------------------------------


def test_faithfulness_of_s2_closure(veronese4, s2_module):
    assert check_faithfulness(ModuleClosure(s2_module), veronese4).holds


def test_faithfulness_of_integral_closure(kxy):
    assert check_faithfulness(MonomialIntegralClosure(), kxy).holds


def test_functoriality_instance(segre):
    M = ideal_as_module(segre, ["a", "b"])
    clM = ModuleClosure(M)
    R1 = ring_as_module(segre)
    RJ = quotient_module(segre, ["a"])
    f = ModuleMap(R1, RJ, [["1"]], check=False)
    N = ideal_submodule(segre, ["a^2", "a*b", "b*c", "c^2"])
    assert check_functoriality(clM, f, N).holds


def test_semi_residuality_instance(segre):
    M = ideal_as_module(segre, ["a", "b"])
    clM = ModuleClosure(M)
    N = closure_of_ideal(clM, segre, ["a^2", "a*b", "b*c", "c^2"])
    out = check_semi_residuality(clM, N)
    assert out.holds and not out.note


def test_semi_residuality_vacuous_when_not_closed(segre):
    M = ideal_as_module(segre, ["a", "b"])
    clM = ModuleClosure(M)
    N = ideal_submodule(segre, ["a^2", "a*b", "b*c", "c^2"])  # not closed
    out = check_semi_residuality(clM, N)
    assert out.holds and "vacuous" in out.note


def test_closure_bound_by_n_plus_mm(veronese4, s2_module):
    # faithful module closure: N^cl inside N + mM
    clS = ModuleClosure(s2_module)
    N = ideal_submodule(veronese4, ["a"])
    C = clS.closure(N)
    R1 = ring_as_module(veronese4)
    bound = N.sum(Submodule(R1, tuple(
        scaled_gens(R1, veronese4.maximal_ideal_gens()))))
    for g in C.gens:
        assert bound.contains(g)


# --- colon capturing -----------------------------------------------------------------------------


def test_plain_colon_capturing(kxy, veronese4, s2_module):
    assert check_colon_capturing(TrivialClosure(), kxy, ["x", "y"],
                                 "plain").holds
    out = check_colon_capturing(TrivialClosure(), veronese4, ["a", "d"],
                                "plain")
    assert not out.holds and str(out.witness) == "b^2"
    assert check_colon_capturing(ModuleClosure(s2_module), veronese4,
                                 ["a", "d"], "plain").holds


def test_strong_colon_capturing_variants(veronese4, s2_module):
    clS = ModuleClosure(s2_module)
    assert check_colon_capturing(clS, veronese4, ["a", "d"], "strongB").holds
    for t in (1, 2, 3):
        for a in range(t):
            assert check_colon_capturing(clS, veronese4, ["a", "d"],
                                         "strongA", t=t, a=a).holds


def test_colon_capturing_rejects_non_sop(segre):
    with pytest.raises(DomainError):
        check_colon_capturing(TrivialClosure(), segre, ["a", "b"], "plain")


def test_strong_a_validates_exponents(veronese4, s2_module):
    with pytest.raises(DomainError):
        check_colon_capturing(ModuleClosure(s2_module), veronese4,
                              ["a", "d"], "strongA", t=1, a=1)


# --- generalized colon capturing --------------------------------------------------------------------


def test_gcc_canonical_regular_case(kxy):
    assert check_generalized_colon_capturing(TrivialClosure(), kxy,
                                             ["x", "y"]).holds


def test_gcc_veronese_s2(veronese4, s2_module):
    assert check_generalized_colon_capturing(ModuleClosure(s2_module),
                                             veronese4, ["a", "d"]).holds


class EverythingOnRankTwo(ClosureOp):
    """Negative control: identity on rank-one covers, everything elsewhere.

    Deliberately not a closure operation; the checkers must catch it.
    """

    name = "broken-rank2"

    def member(self, u, N):
        from closurelab.closure import MembershipOutcome
        if N.module.ngens == 1:
            return MembershipOutcome(N.contains(u))
        return MembershipOutcome(True)

    def closure(self, N):
        if N.module.ngens == 1:
            return Submodule(N.module, N.gens)
        return N.module.full_submodule()


class PrincipalBlowup(ClosureOp):
    """Negative control: principal submodules close to everything."""

    name = "broken-principal"

    def member(self, u, N):
        from closurelab.closure import MembershipOutcome
        if len(N.gens) <= 1:
            return MembershipOutcome(True)
        return MembershipOutcome(N.contains(u))

    def closure(self, N):
        if len(N.gens) <= 1:
            return N.module.full_submodule()
        return Submodule(N.module, N.gens)


def test_functoriality_detects_rank_two_blowup(kxy):
    # projection R^2 -> R sends the fake closure of 0 (everything) outside
    # the closure of 0 in R (which is 0)
    R2 = free_module(kxy, (0, 0))
    R1 = ring_as_module(kxy)
    f = ModuleMap(R2, R1, [["1"], ["0"]], check=False)
    out = check_functoriality(EverythingOnRankTwo(), f, R2.zero_submodule())
    assert not out.holds


def test_gcc_detects_broken_closure(kxyz):
    # canonical instance over k[x,y,z], J = (x,y), v = z: (Rv)^cl blows up
    # to everything, but (Jv)^cl = (xz, yz) stays put and misses ker f
    out = check_generalized_colon_capturing(
        PrincipalBlowup(), kxyz, ["x", "y", "z"])
    assert not out.holds
    assert out.witness is not None


def test_gcc_validates_preconditions(kxy):
    R1 = ring_as_module(kxy)
    RJ = quotient_module(kxy, ["x"])
    f = ModuleMap(R1, RJ, [["1"]], check=False)
    with pytest.raises(DomainError):
        check_generalized_colon_capturing(
            TrivialClosure(), kxy, ["x", "y"], M=R1, f=f, v=R1.vec(["x"]))


# --- phantom extensions ----------------------------------------------------------------------------


def test_split_extension_is_phantom(segre):
    inst = PhantomInstance.from_module(free_module(segre, (0, 2)))
    assert phantom_test(TrivialClosure(), inst).holds


def test_parameter_modification_phantom(veronese4, s2_module):
    Mp = FPModule(veronese4, (0, 4), [["b^2", "a"]])
    inst = PhantomInstance.from_module(Mp)
    assert phantom_test(ModuleClosure(s2_module), inst).holds
    assert not phantom_test(TrivialClosure(), inst).holds


def test_top_row_already_in_span_is_phantom(kxy):
    # relation column (x, x): top row x lies in the span of row 2
    M = FPModule(kxy, (0, 0), [["x", "x"]])
    inst = PhantomInstance.from_module(M)
    assert phantom_test(TrivialClosure(), inst).holds


# --- obstruction and triviality --------------------------------------------------------------------


def test_dietz_obstruction_values(kxy):
    assert dietz_obstruction(MonomialIntegralClosure(), kxy,
                             ["x", "y"], 3) == 1
    assert dietz_obstruction(TrivialClosure(), kxy, ["x", "y"], 3) is None


def test_obstruction_in_three_variables(kxyz):
    assert dietz_obstruction(MonomialIntegralClosure(), kxyz,
                             ["x", "y", "z"], 2) == 1


def test_trivial_on_sample_free_closure(segre):
    sample = sample_ideals(segre, 10, seed=42)
    free_cl = ModuleClosure(free_module(segre, (0, 1)))
    assert is_trivial_on_sample(free_cl, sample).holds


def test_nontrivial_closure_detected(segre):
    M = ideal_as_module(segre, ["a", "b"])
    clM = ModuleClosure(M)
    special = ideal_submodule(segre, ["a^2", "a*b", "b*c", "c^2"])
    out = is_trivial_on_sample(clM, [special])
    assert not out.holds
    _N, g = out.witness
    assert str(g.component(0)) == "a*c"


def test_syz2_closure_nontrivial_on_quadric(segre):
    Z = residue_field(segre).syzygy(2)
    cl = ModuleClosure(Z)
    special = ideal_submodule(segre, ["a^2", "a*b", "b*c", "c^2"])
    out = is_trivial_on_sample(cl, [special])
    assert not out.holds


def test_obstruction_absent_for_s2_closure(veronese4, s2_module):
    # exhaustive check t <= 3: the S2-module closure shows no obstruction,
    # as expected for the closure of a maximal Cohen-Macaulay module
    clS = ModuleClosure(s2_module)
    assert dietz_obstruction(clS, veronese4, ["a", "d"], 3) is None


def test_obstruction_absent_for_trivial_on_regular(kxyz):
    assert dietz_obstruction(TrivialClosure(), kxyz,
                             ["x", "y", "z"], 3) is None


def test_cubic_cone_height_one_example():
    # R = k[x,y,z]/(x^3+y^3+z^3): (x, y+z) is a height-one prime of depth 1
    # with x(y+z) outside (x, y+z)^2, so the products I(x,u) and J(x,u)
    # agree for I = (x^2, u^2), J = (x^2, xu, u^2), u = y+z, and the module
    # closure of (x, u) identifies the two ideals.
    from closurelab.field import QQ
    from closurelab.orders import DEGREVLEX
    from closurelab.poly import PolyRing
    from closurelab.ring import make_quotient_ring
    amb = PolyRing(("x", "y", "z"), QQ, DEGREVLEX)
    R = make_quotient_ring(amb, [amb.parse("x^3 + y^3 + z^3")])
    assert R.dim == 2
    M = ideal_as_module(R, ["x", "y + z"])
    # xu is genuinely outside (x^2, u^2)
    I = ideal_submodule(R, ["x^2", "y^2 + 2*y*z + z^2"])
    assert not I.contains(ring_as_module(R).vec(["x*y + x*z"]))
    clM = ModuleClosure(M)
    CI = clM.closure(I)
    assert CI.contains(ring_as_module(R).vec(["x*y + x*z"]))
    J = ideal_submodule(R, ["x^2", "x*y + x*z", "y^2 + 2*y*z + z^2"])
    assert CI.same_as(clM.closure(J))


def test_module_closure_inside_integral_closure_on_monomial_ideals(kxy):
    # ideal-module closures over a domain land inside integral closure:
    # every generator of I^cl_S must pass the Newton-polyhedron test
    import random
    from closurelab.sampling import sample_monomial_ideals, random_ideal_gens
    rng = random.Random(314)
    samples = sample_monomial_ideals(kxy, 8, seed=314)
    for N in samples:
        betas = [next(iter(g.component(0).terms)) for g in N.gens]
        S = ideal_as_module(kxy, random_ideal_gens(kxy, rng, 2, 2))
        closed = ModuleClosure(S).closure(N)
        for g in closed.gens:
            for (_c, exps) in g.terms:
                assert newton_polyhedron_member(exps, betas), \
                    (g, [str(x.component(0)) for x in N.gens])


def test_zero_submodule_closure_torsion_free(segre):
    # torsion-free S: the closure of 0 in R stays 0
    S = ideal_as_module(segre, ["a", "b"])
    R1 = ring_as_module(segre)
    assert ModuleClosure(S).closure(R1.zero_submodule()).same_as(
        R1.zero_submodule())


def test_zero_submodule_closure_with_torsion(segre):
    # S = R/(a) has torsion: the closure of 0 in R becomes (a)
    S = quotient_module(segre, ["a"])
    R1 = ring_as_module(segre)
    closed = ModuleClosure(S).closure(R1.zero_submodule())
    assert closed.same_as(ideal_submodule(segre, ["a"]))


def test_full_closures_under_s2(veronese4, s2_module):
    clS = ModuleClosure(s2_module)
    expect = {
        ("a",): {"a", "b^2"},
        ("d",): {"c^2", "d"},
        ("a", "d"): {"a", "b^2", "c^2", "d"},
    }
    for gens, want in expect.items():
        C = closure_of_ideal(clS, veronese4, list(gens))
        assert {str(g.component(0)) for g in C.gens} == want
