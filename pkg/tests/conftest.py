import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from closurelab.field import QQ, prime_field
from closurelab.orders import DEGREVLEX, wdegrevlex
from closurelab.poly import PolyRing
from closurelab.ring import make_quotient_ring, presented_subring
from closurelab.modules import FPModule


@pytest.fixture(scope="session")
def kxy():
    return make_quotient_ring(PolyRing(("x", "y"), QQ, DEGREVLEX), [])


@pytest.fixture(scope="session")
def kxyz():
    return make_quotient_ring(PolyRing(("x", "y", "z"), QQ, DEGREVLEX), [])


@pytest.fixture(scope="session")
def kxy_f5():
    return make_quotient_ring(PolyRing(("x", "y"), prime_field(5),
                                       DEGREVLEX), [])


@pytest.fixture(scope="session")
def segre():
    """k[a,b,c]/(ac - b^2) with weights (2,2,2): presents k[[x^2,xy,y^2]]."""
    amb = PolyRing(("a", "b", "c"), QQ, wdegrevlex((2, 2, 2)))
    return make_quotient_ring(amb, [amb.parse("a*c - b^2")])


@pytest.fixture(scope="session")
def xyuv():
    amb = PolyRing(("x", "y", "u", "v"), QQ, DEGREVLEX)
    return make_quotient_ring(amb, [amb.parse("x*y - u*v")])


@pytest.fixture(scope="session")
def veronese4():
    target = PolyRing(("x", "y"), QQ, DEGREVLEX)
    return presented_subring(
        [target.parse("x^4"), target.parse("x^3*y"), target.parse("x*y^3"),
         target.parse("y^4")], names=("a", "b", "c", "d"),
        target_ring=target)


@pytest.fixture(scope="session")
def s2_module(veronese4):
    sp = veronese4.presentation
    gens = [sp.target.one(), sp.target.parse("x^2*y^2")]
    return FPModule(veronese4, (0, 4), sp.module_relation_columns(gens))
