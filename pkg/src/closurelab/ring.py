"""Graded quotient rings R = P/I, their elements, and monomial subrings.

"Local" is modeled as graded-local: the maximal ideal m is generated by the
classes of the variables, all of positive weight.  Krull dimension comes
from the leading-term ideal of the reduced defining Groebner basis (the
standard flat-degeneration argument makes this exact for global orders).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .field import QQ
from .orders import top_key, elim_key, wdegrevlex
from .poly import ContextError, DomainError, PolyRing, Polynomial
from .gb import (Vec, buchberger, eliminate_vars, groebner_module,
                 kernel_of_ring_map, syzygy_module, _strip_vars)


class QuotientRing:
    """P/I for a homogeneous ideal I, elements held as normal forms."""

    def __init__(self, ambient: PolyRing, ideal_gens, domain_status="assumed",
                 presentation=None):
        self.ambient = ambient
        gens = [self._coerce_poly(g) for g in ideal_gens]
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if not g.is_homogeneous():
                raise DomainError(f"inhomogeneous relation: {g}")
        cols = [Vec.from_polys([g]) for g in gens]
        self.ideal_basis = [v.component(0) for v in
                            buchberger(cols, 1, top_key(ambient.key), ambient)]
        self._gb = groebner_module([Vec.from_polys([g]) for g in self.ideal_basis],
                                   1, top_key(ambient.key), ambient) \
            if self.ideal_basis else None
        self.domain_status = domain_status
        self.presentation = presentation
        self._dim = None

    def _coerce_poly(self, g) -> Polynomial:
        if isinstance(g, str):
            return self.ambient.parse(g)
        if isinstance(g, RingElem):
            return g.poly
        if not isinstance(g, Polynomial):
            raise TypeError(f"cannot use {g!r} as a ring relation")
        if g.ring != self.ambient:
            raise ContextError("relation from a different ambient ring")
        return g

    # -- element handling ---------------------------------------------------

    def nf(self, poly: Polynomial) -> Polynomial:
        if poly.ring != self.ambient:
            raise ContextError("polynomial from a different ambient ring")
        if self._gb is None:
            return poly
        return self._gb.normal_form(Vec.from_polys([poly])).component(0)

    def elem(self, x) -> "RingElem":
        if isinstance(x, RingElem):
            if x.ring is not self and x.ring != self:
                raise ContextError("element of a different ring")
            return x
        if isinstance(x, str):
            return RingElem(self, self.nf(self.ambient.parse(x)))
        if isinstance(x, int):
            return RingElem(self, self.ambient.const(x))
        if isinstance(x, Polynomial):
            return RingElem(self, self.nf(x))
        raise TypeError(f"cannot coerce {x!r} into the ring")

    def zero(self):
        return RingElem(self, self.ambient.zero())

    def one(self):
        return RingElem(self, self.ambient.one())

    def var(self, name):
        return self.elem(self.ambient.var(name))

    def gens(self):
        return [self.elem(v) for v in self.ambient.gens()]

    def maximal_ideal_gens(self):
        return self.gens()

    @property
    def is_polynomial_ring(self):
        return not self.ideal_basis

    def __eq__(self, other):
        return (isinstance(other, QuotientRing)
                and self.ambient == other.ambient
                and self.ideal_basis == other.ideal_basis)

    def __hash__(self):
        return hash((self.ambient, tuple(hash(g) for g in self.ideal_basis)))

    def __repr__(self):
        if self.is_polynomial_ring:
            return f"{self.ambient!r}"
        rels = ", ".join(str(g) for g in self.ideal_basis)
        return f"{self.ambient!r} / ({rels})"

    # -- dimension ----------------------------------------------------------

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = _dim_from_leads(
                [g.leading_monomial() for g in self.ideal_basis],
                self.ambient.nvars)
        return self._dim

    def dim_modulo(self, elems) -> int:
        """Krull dimension of R/(elems)."""
        extra = [self.elem(x).poly for x in elems]
        cols = [Vec.from_polys([g]) for g in self.ideal_basis + extra
                if not g.is_zero()]
        if not cols:
            return self.ambient.nvars
        gb = buchberger(cols, 1, top_key(self.ambient.key), self.ambient)
        return _dim_from_leads([v.component(0).leading_monomial() for v in gb],
                               self.ambient.nvars)

    def is_partial_sop(self, elems) -> bool:
        elems = [self.elem(x) for x in elems]
        for x in elems:
            if x.is_zero() or not x.poly.is_homogeneous() or x.degree() <= 0:
                return False
        return self.dim_modulo(elems) == self.dim - len(elems)

    def descriptor(self) -> dict:
        return {
            "vars": list(self.ambient.names),
            "weights": list(self.ambient.weights),
            "field": repr(self.ambient.field),
            "order": self.ambient.order.describe(),
            "relations": [str(g) for g in self.ideal_basis],
            "dim": self.dim,
            "domain": self.domain_status,
        }


def _dim_from_leads(leads, nvars) -> int:
    if any(all(e == 0 for e in m) for m in leads):
        return -1  # unit ideal
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            sset = set(subset)
            if all(not sup <= sset for sup in supports):
                return size
    return 0


class RingElem:
    """Element of a quotient ring, stored as its normal form."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: QuotientRing, poly: Polynomial):
        self.ring = ring
        self.poly = poly

    def is_zero(self):
        return self.poly.is_zero()

    def __bool__(self):
        return bool(self.poly)

    def degree(self):
        return self.poly.wdeg()

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise ContextError("elements of different rings")
            return other
        return self.ring.elem(other)

    def __add__(self, other):
        other = self._coerce(other)
        return RingElem(self.ring, self.ring.nf(self.poly + other.poly))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, -self.poly)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        return RingElem(self.ring, self.ring.nf(self.poly * other.poly))

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, RingElem):
            try:
                other = self.ring.elem(other)
            except (TypeError, ContextError):
                return NotImplemented
        return self.ring == other.ring and self.poly == other.poly

    def __hash__(self):
        return hash((id(self.ring), self.poly))

    def __str__(self):
        return str(self.poly)

    __repr__ = __str__


@dataclass
class ParameterSequence:
    """Elements asserted to be a partial system of parameters."""

    elems: tuple
    verified_partial_sop: bool = False

    @classmethod
    def verified(cls, ring: QuotientRing, elems):
        elems = tuple(ring.elem(x) for x in elems)
        if not ring.is_partial_sop(elems):
            raise DomainError(
                "not a partial system of parameters: (%s)"
                % ", ".join(str(x) for x in elems))
        return cls(elems, True)

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]


# --- monomial subrings -------------------------------------------------------


_AUTO_NAMES = "abcdefghijklmnopqrst"


class SubringPresentation:
    """Provenance of a ring presented as a monomial subring of k[x_1..x_m].

    Keeps the combined "graph" ring (target variables dominant, presentation
    variables below) whose elimination Groebner basis rewrites subring
    elements into presentation variables.
    """

    def __init__(self, target: PolyRing, images, pres_ring: PolyRing):
        self.target = target
        self.images = list(images)
        self.pres_ring = pres_ring
        fld = target.field
        degs = tuple(f.wdeg() for f in self.images)
        self.big = PolyRing(target.names + pres_ring.names, fld,
                            wdegrevlex(target.weights + degs))
        zero_tail = (0,) * pres_ring.nvars
        self._lift_cache = zero_tail
        graph = []
        for i, f in enumerate(self.images):
            e = [0] * self.big.nvars
            e[target.nvars + i] = 1
            graph.append(Polynomial(self.big, {tuple(e): fld.one})
                         - self.lift_target(f))
        self.graph_polys = graph
        key = top_key(elim_key(target.nvars))
        self._graph_gb = groebner_module(
            [Vec.from_polys([g]) for g in graph], 1, key, self.big)

    def lift_target(self, f: Polynomial) -> Polynomial:
        tail = (0,) * self.pres_ring.nvars
        return Polynomial(self.big, {m + tail: c for m, c in f.terms.items()})

    def to_subring(self, f: Polynomial):
        """Express a target-ring element in presentation variables.

        Returns the presentation-ring polynomial, or None if the element
        does not lie in the subring.
        """
        if f.ring != self.target:
            raise ContextError("element not in the target ring")
        nf = self._graph_gb.normal_form(Vec.from_polys([self.lift_target(f)]))
        p = nf.component(0)
        if any(any(m[:self.target.nvars]) for m in p.terms):
            return None
        return _strip_vars(p, self.pres_ring, self.target.nvars)

    def module_relation_columns(self, module_gens):
        """Presentation of the R-module generated inside k[x] by module_gens.

        module_gens are homogeneous target-ring elements; the result is the
        list of relation columns (vectors over the presentation ambient)
        among them with coefficients in the subring.
        """
        gens = list(module_gens)
        t = len(gens)
        n_t = self.target.nvars
        cols = [Vec.from_polys([self.lift_target(g)]) for g in gens]
        cols += [Vec.from_polys([g]) for g in self.graph_polys]
        syz = syzygy_module(cols, 1, self.big)
        proj = [sv.take_components(0, t) for sv in syz]
        proj = [v for v in proj if not v.is_zero()]
        if not proj:
            return []
        kept = eliminate_vars(proj, t, n_t, self.big)
        out = []
        for v in kept:
            terms = {}
            for (j, m), c in v.terms.items():
                terms[(j, m[n_t:])] = c
            out.append(Vec(self.pres_ring, t, terms))
        return out


def presented_subring(images, names=None, field=QQ, target_ring=None):
    """Quotient ring presenting the monomial subring k[images] of k[x].

    images: monomials (strings or polynomials) in a common target polynomial
    ring; grading weights are the degrees of the images.  The resulting ring
    is a domain by construction.
    """
    if target_ring is None:
        if not images or not isinstance(images[0], Polynomial):
            raise ValueError("need polynomial images or an explicit target ring")
        target_ring = images[0].ring
    imgs = [target_ring.parse(f) if isinstance(f, str) else f for f in images]
    if names is None:
        names = []
        pool = iter(n for n in _AUTO_NAMES if n not in target_ring.names)
        for _ in imgs:
            names.append(next(pool))
    names = tuple(names)
    gens, pres_ring = kernel_of_ring_map(imgs, names)
    presentation = SubringPresentation(target_ring, imgs, pres_ring)
    return QuotientRing(pres_ring, gens, domain_status="subring-of-domain",
                        presentation=presentation)


def make_quotient_ring(ambient: PolyRing, ideal_gens,
                       domain_status=None) -> QuotientRing:
    gens = list(ideal_gens)
    if domain_status is None:
        domain_status = "polynomial-ring" if not gens else "assumed"
    return QuotientRing(ambient, gens, domain_status=domain_status)
