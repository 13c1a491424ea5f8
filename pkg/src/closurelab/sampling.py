"""Seeded random instances for property suites and triviality sampling.

Everything is driven by an explicit random.Random so identical seeds give
identical instances.
"""

from __future__ import annotations

import random

from .gb import Vec
from .linalg import monomials_of_wdeg
from .modules import FPModule, ideal_submodule, ring_as_module
from .ring import QuotientRing


def random_homogeneous_elem(ring: QuotientRing, deg: int, rng: random.Random,
                            max_terms=2):
    """A nonzero homogeneous normal form of the given degree, or None."""
    monos = monomials_of_wdeg(ring.ambient, deg)
    if not monos:
        return None
    fld = ring.ambient.field
    for _attempt in range(8):
        nterms = rng.randint(1, max_terms)
        terms = {}
        for _ in range(nterms):
            m = rng.choice(monos)
            c = rng.randint(1, 3) * rng.choice((1, -1))
            terms[m] = fld.from_int(c)
        from .poly import Polynomial
        p = ring.nf(Polynomial(ring.ambient, dict(terms)))
        if not p.is_zero():
            return ring.elem(p)
    return None


def achievable_degrees(ring: QuotientRing, lo=1, hi=6):
    return [d for d in range(lo, hi + 1)
            if monomials_of_wdeg(ring.ambient, d)]


def random_ideal_gens(ring: QuotientRing, rng: random.Random, max_gens=3,
                      max_deg=4):
    degs = achievable_degrees(ring, 1, max_deg)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        e = random_homogeneous_elem(ring, rng.choice(degs), rng)
        if e is not None:
            gens.append(e)
    if not gens:
        gens = [ring.gens()[0]]
    return gens


def sample_ideals(ring: QuotientRing, count: int, seed: int,
                  max_gens=3, max_deg=4):
    """Deterministic list of ideal submodules of R."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(ideal_submodule(ring, random_ideal_gens(ring, rng,
                                                           max_gens, max_deg)))
    return out


def sample_monomial_ideals(ring: QuotientRing, count: int, seed: int,
                           max_gens=3, max_deg=4):
    """Deterministic monomial ideals (for the integral-closure operation)."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        gens = []
        for _g in range(rng.randint(1, max_gens)):
            d = rng.choice(achievable_degrees(ring, 1, max_deg))
            monos = monomials_of_wdeg(ring.ambient, d)
            m = rng.choice(monos)
            gens.append(ring.elem(ring.ambient.monomial(m)))
        out.append(ideal_submodule(ring, gens))
    return out


def random_submodule_pair(M: FPModule, rng: random.Random, max_deg=4,
                          max_gens=2):
    """A random submodule N of M with small homogeneous generators."""
    degs = achievable_degrees(M.ring, 0, max_deg)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        j = rng.randrange(M.ngens)
        shift = M.gen_degrees[j]
        cand = [d for d in degs if d - shift >= 0]
        if not cand:
            continue
        e = random_homogeneous_elem(M.ring, rng.choice(cand) - shift, rng)
        if e is None:
            continue
        gens.append(Vec(M.ring.ambient, M.ngens,
                        {(j, m): c for m, c in e.poly.terms.items()}))
    return M.submodule(gens)


def random_small_module(ring: QuotientRing, rng: random.Random, max_deg=3):
    """R, R/I, R^2, or an ideal-as-module style quotient; small and graded."""
    choice = rng.randrange(3)
    if choice == 0:
        return ring_as_module(ring)
    if choice == 1:
        from .modules import quotient_module
        return quotient_module(ring, random_ideal_gens(ring, rng, 2, max_deg))
    from .modules import free_module
    F = free_module(ring, (0, rng.randint(0, 1)))
    N = random_submodule_pair(F, rng, max_deg, 1)
    return F.quotient_by(N)
