"""Closure operations on submodules as first-class values.

Supported kinds: the trivial closure, module closures cl_S for a finitely
presented S, finite intersections, and integral closure of monomial ideals
(Newton-polyhedron test).  A module closure decides u in N^cl_M by checking,
for every generator s_i of S, that s_i (x) u lies in the image of
S (x) N -> S (x) M.

Lemma (generators suffice): if s_i (x) u lies in the image for every
generator s_i of S, then s (x) u does for every s in S.  Proof: write
s = sum r_i s_i; then s (x) u = sum r_i (s_i (x) u) stays in the image,
which is a submodule.  This finiteness is what makes the membership
decidable.

The full closure N^cl_M is computed exactly as the kernel of
M -> (+)_i (S (x) M)/im(S (x) N), never by a degree-bounded search.

The axiom checkers are instance-level falsifiers: they verify a stated
inclusion on the given data and report {holds-on-instance} or
{fails-with-witness}; they never claim a proof over all modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gb import Vec
from .modules import (FPModule, ModuleMap, Submodule, direct_sum,
                      free_module, ideal_submodule, quotient_module,
                      r_preimage, ring_as_module, tensor, tensor_elem)
from .poly import ContextError, DomainError
from .ring import ParameterSequence, QuotientRing


class UnsupportedQueryError(ValueError):
    pass


@dataclass
class MembershipOutcome:
    holds: bool
    certificate: object = None

    def __bool__(self):
        return self.holds


@dataclass
class CheckOutcome:
    holds: bool
    witness: object = None
    note: str = ""
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


class ClosureOp:
    """Base interface: membership of one element, and the full closure.

    Certificates are computed only on request: they need an extended
    Groebner run, which the yes/no answer does not.
    """

    name = "closure"

    def member(self, u, N: Submodule,
               want_certificate=False) -> MembershipOutcome:
        raise NotImplementedError

    def closure(self, N: Submodule) -> Submodule:
        raise NotImplementedError

    def describe(self) -> str:
        return self.name

    def _coerce_elem(self, u, N: Submodule) -> Vec:
        return u if isinstance(u, Vec) else N.module.vec(u)


class TrivialClosure(ClosureOp):
    name = "trivial"

    def member(self, u, N, want_certificate=False):
        u = self._coerce_elem(u, N)
        if not N.contains(u):
            return MembershipOutcome(False)
        if not want_certificate:
            return MembershipOutcome(True)
        cert = N.certificate(u)
        return MembershipOutcome(True, [str(c) for c in cert] if cert else None)

    def closure(self, N):
        return Submodule(N.module, N.gens).minimalized()


class ModuleClosure(ClosureOp):
    """cl_S for a nonzero finitely presented module S."""

    def __init__(self, S: FPModule, label=None):
        if S.is_zero_module():
            raise DomainError("module closure needs a nonzero module")
        self.S = S
        self.name = label or "cl_S"

    def describe(self):
        return f"module_closure({self.name})"

    def _image_context(self, N: Submodule):
        M = N.module
        if M.ring != self.S.ring:
            raise ContextError("closure module over a different ring")
        T = tensor(self.S, M)
        image_cols = [tensor_elem(self.S, M, p, nq)
                      for p in range(self.S.ngens) for nq in N.gens]
        return T, T.submodule(image_cols)

    def member(self, u, N, want_certificate=False):
        u = self._coerce_elem(u, N)
        T, image = self._image_context(N)
        certs = []
        for i in range(self.S.ngens):
            v = tensor_elem(self.S, N.module, i, u)
            if not image.contains(v):
                return MembershipOutcome(False)
            if want_certificate:
                cert = image.certificate(v)
                certs.append([str(c) for c in cert] if cert else None)
        return MembershipOutcome(True, certs if want_certificate else None)

    def closure(self, N):
        M = N.module
        if M.ring != self.S.ring:
            raise ContextError("closure module over a different ring")
        g, n = self.S.ngens, M.ngens
        T = tensor(self.S, M)
        q_rels = list(T.relations)
        q_rels += [tensor_elem(self.S, M, p, nq)
                   for p in range(g) for nq in N.gens]
        total = g * (g * n)
        amb = M.ring.ambient
        target = []
        for i in range(g):
            target += [c.pad(total, offset=i * g * n) for c in q_rels]
        map_cols = []
        for j in range(n):
            acc = Vec.zero(amb, total)
            for i in range(g):
                acc = acc + Vec.unit(amb, total, i * g * n + i * n + j)
            map_cols.append(acc)
        gens = r_preimage(M.ring, map_cols, target, total)
        return Submodule(M, tuple(gens)).minimalized()


class IntersectionClosure(ClosureOp):
    def __init__(self, parts, label=None):
        parts = list(parts)
        if not parts:
            raise DomainError("empty intersection")
        self.parts = parts
        self.name = label or ("intersect(" +
                              ", ".join(p.describe() for p in parts) + ")")

    def describe(self):
        return self.name

    def member(self, u, N, want_certificate=False):
        certs = []
        for part in self.parts:
            out = part.member(u, N, want_certificate)
            if not out.holds:
                return MembershipOutcome(False)
            certs.append(out.certificate)
        return MembershipOutcome(True, certs if want_certificate else None)

    def closure(self, N):
        result = None
        for part in self.parts:
            c = part.closure(N)
            result = c if result is None else result.intersect(c)
        return result.minimalized()


def intersect_closures(*parts) -> IntersectionClosure:
    return IntersectionClosure(list(parts))


def direct_sum_closure(S: FPModule, T: FPModule) -> ModuleClosure:
    return ModuleClosure(direct_sum(S, T), label="cl_(S+T)")


# --- integral closure of monomial ideals -------------------------------------


def _fm_feasible(rows, nvars):
    """Fourier-Motzkin feasibility of {x : row . x <= rhs}, exact rationals.

    rows: list of (coeff tuple, rhs).  Returns True iff feasible.
    """
    rows = [([Fraction(c) for c in cs], Fraction(b)) for cs, b in rows]
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for cs, b in rows:
            c = cs[var]
            if c > 0:
                pos.append((cs, b))
            elif c < 0:
                neg.append((cs, b))
            else:
                rest.append((cs, b))
        new = rest
        for cp, bp in pos:
            for cn, bn in neg:
                f_p, f_n = -cn[var], cp[var]
                cs = [f_p * x + f_n * y for x, y in zip(cp, cn)]
                new.append((cs, f_p * bp + f_n * bn))
        seen = set()
        rows = []
        for cs, b in new:
            scale = None
            for c in cs:
                if c != 0:
                    scale = abs(c)
                    break
            if scale is None:
                if b < 0:
                    return False
                continue
            key = (tuple(c / scale for c in cs), b / scale)
            if key not in seen:
                seen.add(key)
                rows.append((list(key[0]), key[1]))
    return all(b >= 0 for _cs, b in rows)


def newton_polyhedron_member(alpha, betas) -> bool:
    """Is alpha in conv(betas) + nonnegative orthant?  Exact rational LP."""
    betas = [tuple(b) for b in betas]
    if not betas:
        return False
    t = len(betas)
    n = len(alpha)
    rows = []
    for q in range(t):
        row = [Fraction(0)] * t
        row[q] = Fraction(-1)
        rows.append((row, Fraction(0)))          # lambda_q >= 0
    rows.append(([Fraction(1)] * t, Fraction(1)))   # sum <= 1
    rows.append(([Fraction(-1)] * t, Fraction(-1)))  # sum >= 1
    for i in range(n):
        rows.append(([Fraction(b[i]) for b in betas], Fraction(alpha[i])))
    return _fm_feasible(rows, t)


def _monomial_exponents(N: Submodule):
    ring = N.ring
    if not ring.is_polynomial_ring:
        raise UnsupportedQueryError(
            "integral closure is supported over polynomial rings only")
    if N.module.ngens != 1 or N.module.relations:
        raise UnsupportedQueryError(
            "integral closure applies to ideals in the rank-one free module")
    betas = []
    for g in N.gens:
        p = g.component(0)
        if len(p.terms) != 1:
            raise UnsupportedQueryError(
                f"non-monomial ideal generator {p}")
        betas.append(next(iter(p.terms)))
    return betas


class MonomialIntegralClosure(ClosureOp):
    """Integral closure of monomial ideals via the Newton polyhedron."""

    name = "integral_closure"

    def member(self, u, N, want_certificate=False):
        betas = _monomial_exponents(N)
        u = self._coerce_elem(u, N)
        for (comp, exps) in u.terms:
            assert comp == 0
            if not newton_polyhedron_member(exps, betas):
                return MembershipOutcome(False)
        return MembershipOutcome(True)

    def closure(self, N):
        betas = _monomial_exponents(N)
        M = N.module
        if not betas:
            return M.zero_submodule()
        n = len(betas[0])
        box = [max(b[i] for b in betas) for i in range(n)]
        points = []

        def rec(i, acc):
            if i == n:
                points.append(tuple(acc))
                return
            for e in range(box[i] + 1):
                rec(i + 1, acc + [e])

        rec(0, [])
        inside = [p for p in points if newton_polyhedron_member(p, betas)]
        minimal = []
        for p in sorted(inside, key=lambda q: (sum(q), q)):
            if not any(all(x <= y for x, y in zip(m, p)) for m in minimal):
                minimal.append(p)
        amb = M.ring.ambient
        gens = [Vec(amb, 1, {(0, m): amb.field.one}) for m in minimal]
        return Submodule(M, tuple(gens)).minimalized()


# --- convenience ---------------------------------------------------------------


def closure_of_ideal(cl: ClosureOp, ring: QuotientRing, gens) -> Submodule:
    return cl.closure(ideal_submodule(ring, gens))


def ideal_member(cl: ClosureOp, ring: QuotientRing, elem, gens,
                 want_certificate=False):
    N = ideal_submodule(ring, gens)
    u = ring_as_module(ring).vec([elem])
    return cl.member(u, N, want_certificate)


# --- axiom and colon-capturing checkers -----------------------------------------


def check_faithfulness(cl: ClosureOp, ring: QuotientRing) -> CheckOutcome:
    """m is closed in R."""
    m = ideal_submodule(ring, ring.maximal_ideal_gens())
    closed = cl.closure(m)
    for g in closed.gens:
        if not m.contains(g):
            return CheckOutcome(False, witness=str(g.component(0)))
    return CheckOutcome(True)


def check_functoriality(cl: ClosureOp, f: ModuleMap, N: Submodule) -> CheckOutcome:
    """f(N^cl_M) is contained in f(N)^cl_W on this instance."""
    if N.module != f.source:
        raise ContextError("N must live in the source of f")
    closedN = cl.closure(N)
    fN = f.target.submodule([f.apply(g) for g in N.gens])
    for g in closedN.gens:
        if not cl.member(f.apply(g), fN).holds:
            return CheckOutcome(False, witness=str(g))
    return CheckOutcome(True)


def check_semi_residuality(cl: ClosureOp, N: Submodule) -> CheckOutcome:
    """If N is closed in M then 0 is closed in M/N (on this instance)."""
    closedN = cl.closure(N)
    if not all(N.contains(g) for g in closedN.gens):
        return CheckOutcome(True, note="vacuous: N is not closed in M")
    Q = N.module.quotient_by(N)
    zero_closure = cl.closure(Q.zero_submodule())
    for g in zero_closure.gens:
        if not Q.element_is_zero(g):
            return CheckOutcome(False, witness=str(g))
    return CheckOutcome(True)


def _require_sop(ring: QuotientRing, xs) -> ParameterSequence:
    if isinstance(xs, ParameterSequence):
        if not xs.verified_partial_sop:
            raise DomainError("parameter sequence was not verified")
        return xs
    return ParameterSequence.verified(ring, xs)


def check_colon_capturing(cl: ClosureOp, ring: QuotientRing, xs,
                          variant="plain", t=None, a=None) -> CheckOutcome:
    """Colon-capturing instance checks.

    plain:    (x_1..x_k) : x_{k+1}        inside (x_1..x_k)^cl
    strongA:  (x_1^t, x_2..x_k)^cl : x_1^a inside (x_1^{t-a}, x_2..x_k)^cl
    strongB:  (x_1..x_k)^cl : x_{k+1}      inside (x_1..x_k)^cl
    """
    seq = _require_sop(ring, xs)
    elems = list(seq.elems)
    if variant == "plain":
        if len(elems) < 1:
            raise DomainError("need at least one parameter")
        J = ideal_submodule(ring, elems[:-1])
        colon = J.colon_elem(elems[-1])
        closed = cl.closure(J)
        for g in colon.gens:
            if not closed.contains(g):
                return CheckOutcome(False, witness=str(g.component(0)))
        return CheckOutcome(True)
    if variant == "strongB":
        if len(elems) < 1:
            raise DomainError("need at least one parameter")
        closed = cl.closure(ideal_submodule(ring, elems[:-1]))
        colon = closed.colon_elem(elems[-1])
        for g in colon.gens:
            if not closed.contains(g):
                return CheckOutcome(False, witness=str(g.component(0)))
        return CheckOutcome(True)
    if variant == "strongA":
        if t is None or a is None or not (0 <= a < t):
            raise DomainError("strongA needs exponents 0 <= a < t")
        x1 = elems[0]
        rest = elems[1:]
        lhs = cl.closure(ideal_submodule(ring, [x1 ** t] + rest))
        colon = lhs.colon_elem(x1 ** a)
        rhs = ideal_submodule(ring, [x1 ** (t - a)] + rest)
        closed_rhs = cl.closure(rhs)
        for g in colon.gens:
            if not closed_rhs.contains(g):
                return CheckOutcome(False, witness=str(g.component(0)))
        return CheckOutcome(True)
    raise DomainError(f"unknown colon-capturing variant {variant!r}")


def check_generalized_colon_capturing(cl: ClosureOp, ring: QuotientRing, xs,
                                      M: FPModule = None, f: ModuleMap = None,
                                      v=None) -> CheckOutcome:
    """(Rv)^cl_M intersect ker f inside (Jv)^cl_M, J = (x_1..x_k).

    Defaults build the canonical instance M = R, f the quotient map onto
    R/J, v = x_{k+1}.
    """
    seq = _require_sop(ring, xs)
    elems = list(seq.elems)
    if len(elems) < 2:
        raise DomainError("need a partial s.o.p. x_1..x_{k+1} with k >= 1")
    J = elems[:-1]
    xk1 = elems[-1]
    RJ = quotient_module(ring, J)
    if M is None:
        M = ring_as_module(ring)
    if f is None:
        if M.ngens != 1:
            raise DomainError("default quotient map needs M = R")
        f = ModuleMap(M, RJ, [[ring.one()]], check=False)
    if v is None:
        v = M.vec([xk1])
    v = v if isinstance(v, Vec) else M.vec(v)
    if not f.is_surjective():
        raise DomainError("f must be surjective onto R/J")
    fv = f.apply(v)
    expected = RJ.vec([xk1])
    if not RJ.elements_equal(fv, expected):
        raise DomainError("f(v) must equal x_{k+1} modulo J")
    Rv = M.submodule([v])
    closure_Rv = cl.closure(Rv)
    inter = closure_Rv.intersect(f.kernel())
    Jv = M.submodule([v.scale(x.poly) for x in (ring.elem(y) for y in J)])
    for g in inter.gens:
        if not cl.member(g, Jv).holds:
            return CheckOutcome(False, witness=str(g))
    return CheckOutcome(True)


# --- phantom extensions ---------------------------------------------------------


class PhantomInstance:
    """Presentation data for an injection alpha: R -> M, e_1 = alpha(1).

    rows is the n x m matrix (b_ij) whose columns are the relations of M on
    generators e_1..e_n.  The extension is cl-phantom iff the top row lies
    in the cl-closure, inside R^m, of the span of the remaining rows.
    """

    def __init__(self, ring: QuotientRing, rows, col_degrees=None):
        self.ring = ring
        self.rows = [[ring.elem(x) for x in row] for row in rows]
        self.m = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.m:
                raise DomainError("ragged phantom matrix")
        self.col_degrees = col_degrees

    @classmethod
    def from_module(cls, M: FPModule):
        """Instance for alpha: R -> M sending 1 to the first generator."""
        n = M.ngens
        rows = [[M.ring.elem(col.component(i)) for col in M.relations]
                for i in range(n)]
        degs = [col.degree(M.gen_degrees) for col in M.relations]
        return cls(M.ring, rows, col_degrees=degs)

    def free_cover(self) -> FPModule:
        if self.col_degrees is not None:
            shifts = tuple(-d for d in self.col_degrees)
        else:
            if any(x.is_zero() for x in self.rows[0]):
                raise DomainError("column degrees required when the top row "
                                  "has zero entries")
            shifts = tuple(-x.degree() for x in self.rows[0])
        return free_module(self.ring, shifts)


def phantom_test(cl: ClosureOp, inst: PhantomInstance,
                 want_certificate=False) -> CheckOutcome:
    if inst.m == 0:
        return CheckOutcome(True, note="no relations: split extension")
    F = inst.free_cover()
    top = F.vec(inst.rows[0])
    span = F.submodule([row for row in inst.rows[1:]])
    out = cl.member(top, span, want_certificate=want_certificate)
    return CheckOutcome(bool(out.holds), data={"certificate": out.certificate})


# --- obstructions and triviality -------------------------------------------------


def dietz_obstruction(cl: ClosureOp, ring: QuotientRing, xs, t_max,
                      t_min=0):
    """Smallest t <= t_max with (x_1..x_k)^t in (x_1^{t+1},..,x_k^{t+1})^cl.

    A returned t certifies that cl fails strong colon-capturing version A
    on a faithful closure, hence cannot be a Dietz closure.
    """
    seq = _require_sop(ring, xs)
    elems = list(seq.elems)
    if not elems:
        raise DomainError("need parameters")
    R1 = ring_as_module(ring)
    for t in range(t_min, t_max + 1):
        prod = ring.one()
        for x in elems:
            prod = prod * (x ** t)
        N = R1.submodule([[x ** (t + 1)] for x in elems])
        if cl.member(R1.vec([prod]), N).holds:
            return t
    return None


def is_trivial_on_sample(cl: ClosureOp, sample) -> CheckOutcome:
    """closure_compute(N) == N for every N in the sample; witness otherwise."""
    for N in sample:
        closed = cl.closure(N)
        for g in closed.gens:
            if not N.contains(g):
                return CheckOutcome(False, witness=(N, g),
                                    note=f"nontrivial at {g}")
    return CheckOutcome(True)
