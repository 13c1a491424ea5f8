"""Finite-stage module modifications and their traces.

A parameter modification kills a bad relation x_{k+1} u = x_1 u_1 + .. +
x_k u_k by passing to (M + R f_1 + .. + R f_k) / R(u + x_1 f_1 + .. +
x_k f_k); a containment modification forces an element v of G^cl into the
image of G against a chosen x in M.  Only finite chains are built; each
stage records its map and enough data to replay it.

The quotient presentations written here are complete: for both
constructions the kernel of the new free cover is generated by the old
relations together with the displayed new columns, so stage modules can be
fed directly to the phantom-extension test.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .closure import ClosureOp, PhantomInstance, phantom_test
from .gb import Vec
from .modules import (FPModule, ModuleMap, Submodule, ring_as_module,
                      scaled_gens)
from .poly import ContextError, DomainError
from .ring import ParameterSequence, QuotientRing


@dataclass
class BadRelation:
    """x_{k+1} u = x_1 u_1 + .. + x_k u_k in M, with u outside (x_1..x_k)M."""

    module: FPModule
    xs: ParameterSequence       # x_1 .. x_{k+1}
    u: Vec
    us: tuple                   # u_1 .. u_k, vectors in the cover of M

    def __post_init__(self):
        M = self.module
        elems = list(self.xs.elems)
        if len(self.us) != len(elems) - 1:
            raise DomainError("need one u_i per x_i (i <= k)")
        lhs = self.u.scale(elems[-1].poly)
        for x, ui in zip(elems[:-1], self.us):
            lhs = lhs - ui.scale(x.poly)
        if not M.element_is_zero(lhs):
            raise DomainError("the stated relation does not hold in M")
        span = Submodule(M, tuple(scaled_gens(M, elems[:-1])))
        if span.contains(self.u):
            raise DomainError("u lies in (x_1..x_k)M: not a bad relation")

    @property
    def k(self):
        return len(self.xs) - 1

    def descriptor(self):
        return {
            "kind": "parameter",
            "xs": [str(x) for x in self.xs],
            "u": [str(p) for p in self.u.to_polys()],
            "us": [[str(p) for p in ui.to_polys()] for ui in self.us],
        }


def parameter_modification(M: FPModule, rel: BadRelation):
    """The parameter module modification of M along rel.

    Returns (M', inclusion M -> M').  M' adds generators f_1..f_k and the
    single relation u + x_1 f_1 + .. + x_k f_k.
    """
    if rel.module != M:
        raise ContextError("relation belongs to a different module")
    ring = M.ring
    elems = list(rel.xs.elems)
    k = rel.k
    deg_u = rel.u.degree(M.gen_degrees)
    new_degrees = M.gen_degrees + tuple(deg_u - x.degree() for x in elems[:-1])
    n = M.ngens
    total = n + k
    col = rel.u.pad(total)
    for i, x in enumerate(elems[:-1]):
        col = col + Vec(ring.ambient, total,
                        {(n + i, m): c for m, c in x.poly.terms.items()})
    rels = [c.pad(total) for c in M.relations] + [col]
    M2 = FPModule(ring, new_degrees, rels, normalize=False)
    incl = ModuleMap(M, M2, [Vec.unit(ring.ambient, total, j)
                             for j in range(n)])
    return M2, incl


def containment_modification(M: FPModule, cl: ClosureOp, G: Submodule,
                             v: Vec, x=None):
    """Containment module modification of M relative to x, forcing v x into
    the image of G.

    G is a submodule of a free module R^s with generators e_1..e_k;
    v must lie in G^cl minus G (both verified against cl).  Returns
    (M', inclusion).  M' adds generators f_1..f_k and one relation per
    coordinate of R^s:  v_i x + e_{1i} f_1 + .. + e_{ki} f_k.
    """
    F = G.module
    if F.relations:
        raise DomainError("G must sit inside a free module")
    ring = M.ring
    if F.ring != ring:
        raise ContextError("G lives over a different ring")
    v = v if isinstance(v, Vec) else F.vec(v)
    if G.contains(v):
        raise DomainError("v already lies in G")
    if not cl.member(v, G).holds:
        raise DomainError("v is not in the closure of G")
    if x is None:
        x = M.gen(0)
    x = x if isinstance(x, Vec) else M.vec(x)
    s = F.ngens
    gens_e = list(G.gens)
    k = len(gens_e)
    n = M.ngens
    total = n + k
    deg_v = v.degree(F.gen_degrees)
    deg_x = x.degree(M.gen_degrees)
    new_degrees = M.gen_degrees + tuple(
        deg_v + deg_x - e.degree(F.gen_degrees) for e in gens_e)
    cols = []
    for i in range(s):
        col = x.scale(v.component(i)).pad(total)
        for l, e in enumerate(gens_e):
            coeff = e.component(i)
            if coeff:
                col = col + Vec(ring.ambient, total,
                                {(n + l, m): c for m, c in coeff.terms.items()})
        cols.append(col)
    rels = [c.pad(total) for c in M.relations] + cols
    M2 = FPModule(ring, new_degrees, rels, normalize=False)
    incl = ModuleMap(M, M2, [Vec.unit(ring.ambient, total, j)
                             for j in range(n)])
    return M2, incl


def find_bad_relation(M: FPModule, xs, degree_bound=None, pick=0):
    """Search for a bad relation on M against the partial s.o.p. xs.

    Scans the colon ((x_1..x_{i-1})M : x_i) at the first index where the
    sequence fails to be regular, taking witnesses by increasing degree with
    a deterministic tie-break; `pick` rotates among the eligible witnesses.
    Returns None when xs is regular on M (up to the degree bound).
    """
    ring = M.ring
    if not isinstance(xs, ParameterSequence):
        xs = ParameterSequence.verified(ring, xs)
    elems = list(xs.elems)
    prev: list = []
    for i, x in enumerate(elems):
        N = Submodule(M, tuple(prev))
        colon = N.colon_elem(x)
        witnesses = []
        for g in sorted(colon.gens,
                        key=lambda w: (w.degree(M.gen_degrees), str(w))):
            if degree_bound is not None and g.degree(M.gen_degrees) > degree_bound:
                continue
            if not N.contains(g):
                witnesses.append(g)
        if witnesses:
            u = witnesses[pick % len(witnesses)]
            w = u.scale(x.poly)
            cert = N.certificate(w)
            us = []
            for l in range(i):
                acc = Vec.zero(ring.ambient, M.ngens)
                for j in range(M.ngens):
                    c = cert[l * M.ngens + j]
                    if not c.is_zero():
                        acc = acc + M.gen(j).scale(c.poly)
                us.append(acc)
            seq = ParameterSequence(tuple(elems[:i + 1]),
                                    xs.verified_partial_sop)
            return BadRelation(M, seq, u, tuple(us))
        prev.extend(scaled_gens(M, [x]))
    return None


@dataclass
class Stage:
    module: FPModule
    kind: str                    # "start" | "parameter" | "containment"
    descriptor: dict
    map_from_prev: ModuleMap | None = None
    flags: dict = field(default_factory=dict)


class ModificationTrace:
    """Immutable chain R = M_0 -> M_1 -> ... of module modifications."""

    def __init__(self, ring: QuotientRing, stages):
        self.ring = ring
        self.stages = tuple(stages)

    @classmethod
    def start(cls, ring: QuotientRing) -> "ModificationTrace":
        M0 = ring_as_module(ring)
        return cls(ring, (Stage(M0, "start", {"kind": "start"}),))

    @property
    def current(self) -> FPModule:
        return self.stages[-1].module

    def __len__(self):
        return len(self.stages)

    def _phantom_flags(self, cl, before, after):
        if cl is None:
            return {}
        return {
            "closure": cl.describe(),
            "phantom_before": bool(phantom_test(
                cl, PhantomInstance.from_module(before)).holds)
            if before.relations else True,
            "phantom_after": bool(phantom_test(
                cl, PhantomInstance.from_module(after)).holds),
        }

    def extend_parameter(self, rel: BadRelation,
                         cl: ClosureOp = None) -> "ModificationTrace":
        M = self.current
        M2, incl = parameter_modification(M, rel)
        flags = self._phantom_flags(cl, M, M2)
        stage = Stage(M2, "parameter", rel.descriptor(), incl, flags)
        return ModificationTrace(self.ring, self.stages + (stage,))

    def extend_containment(self, cl: ClosureOp, G: Submodule, v, x=None
                           ) -> "ModificationTrace":
        M = self.current
        M2, incl = containment_modification(M, cl, G, v, x)
        v = v if isinstance(v, Vec) else G.module.vec(v)
        desc = {
            "kind": "containment",
            "G": G.descriptor(),
            "v": [str(p) for p in v.to_polys()],
        }
        flags = self._phantom_flags(cl, M, M2)
        stage = Stage(M2, "containment", desc, incl, flags)
        return ModificationTrace(self.ring, self.stages + (stage,))

    def image_of_one(self) -> Vec:
        """Image of 1 under the composite R -> M_t (the first generator)."""
        return self.current.gen(0)

    def image_of_one_in_m(self) -> bool:
        """Exact test: does the image of 1 lie in m * (final stage)?"""
        M = self.current
        mM = Submodule(M, tuple(scaled_gens(M, self.ring.maximal_ideal_gens())))
        return mM.contains(self.image_of_one())

    def descriptor(self) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "stages": [
                {
                    "kind": st.kind,
                    "step": st.descriptor,
                    "module": st.module.descriptor(),
                    "flags": st.flags,
                }
                for st in self.stages
            ],
            "image_of_one_in_m": self.image_of_one_in_m(),
        }


def parameter_chain(ring: QuotientRing, cl: ClosureOp, xs, steps: int,
                    degree_bound=None, policy="by-degree") -> ModificationTrace:
    """Run up to `steps` parameter modifications from R along xs.

    policy "by-degree" always takes the least witness; "round-robin"
    rotates among the eligible witnesses from step to step.
    """
    if policy not in ("by-degree", "round-robin"):
        raise DomainError(f"unknown policy {policy!r}")
    seq = xs if isinstance(xs, ParameterSequence) else \
        ParameterSequence.verified(ring, xs)
    trace = ModificationTrace.start(ring)
    for step in range(steps):
        pick = step if policy == "round-robin" else 0
        rel = find_bad_relation(trace.current, seq, degree_bound, pick=pick)
        if rel is None:
            break
        trace = trace.extend_parameter(rel, cl=cl)
    return trace
