"""Groebner-basis kernel for submodules of free modules P^s.

Everything here works over an ambient polynomial ring P; quotient-ring
computations are assembled by callers that append defining-ideal columns.
The engine is Buchberger's algorithm with the normal pair-selection
strategy, the product criterion (applied only where it is valid for
modules) and the chain criterion.  Output bases are reduced, monic and
canonically sorted, hence unique for a given module and order.

Extended runs augment each input column with a unit shadow component and
run the same algorithm under a block order that keeps shadows below real
terms.  One extended run yields, simultaneously: a Groebner basis of the
column span, an expression of every basis element in the input columns
(membership certificates), and generators of the full syzygy module (the
basis elements whose real part vanished).

All functions are pure over immutable inputs; S-pair processing is
sequential, so outputs are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .field import Rationals
from .orders import elim_key, top_key, wdegrevlex
from .poly import (ContextError, PolyRing, Polynomial, mono_div, mono_divides,
                   mono_gcd_is_one, mono_lcm, mono_mul)


class Vec:
    """Element of a free module P^ncomps, as a {(comp, exps): coeff} map."""

    __slots__ = ("ring", "ncomps", "terms")

    def __init__(self, ring: PolyRing, ncomps: int, terms: dict):
        self.ring = ring
        self.ncomps = ncomps
        self.terms = terms

    @classmethod
    def zero(cls, ring, ncomps):
        return cls(ring, ncomps, {})

    @classmethod
    def from_polys(cls, polys):
        polys = list(polys)
        ring = polys[0].ring
        terms = {}
        for i, p in enumerate(polys):
            if p.ring != ring:
                raise ContextError("mixed rings in vector")
            for m, c in p.terms.items():
                terms[(i, m)] = c
        return cls(ring, len(polys), terms)

    @classmethod
    def unit(cls, ring, ncomps, comp):
        return cls(ring, ncomps, {(comp, (0,) * ring.nvars): ring.field.one})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Vec) and self.ring == other.ring
                and self.ncomps == other.ncomps and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, self.ncomps, frozenset(self.terms.items())))

    def component(self, i) -> Polynomial:
        return Polynomial(self.ring,
                          {m: c for (j, m), c in self.terms.items() if j == i})

    def to_polys(self):
        return [self.component(i) for i in range(self.ncomps)]

    def support(self):
        return sorted({j for (j, _m) in self.terms})

    def __add__(self, other):
        fld = self.ring.field
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = fld.add(terms.get(k, fld.zero), c)
            if s == fld.zero:
                terms.pop(k, None)
            else:
                terms[k] = s
        return Vec(self.ring, self.ncomps, terms)

    def __neg__(self):
        fld = self.ring.field
        return Vec(self.ring, self.ncomps,
                   {k: fld.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, poly: Polynomial) -> "Vec":
        """Multiply by a ring element."""
        fld = self.ring.field
        terms: dict = {}
        for (j, m1), c1 in self.terms.items():
            for m2, c2 in poly.terms.items():
                k = (j, mono_mul(m1, m2))
                s = fld.add(terms.get(k, fld.zero), fld.mul(c1, c2))
                if s == fld.zero:
                    terms.pop(k, None)
                else:
                    terms[k] = s
        return Vec(self.ring, self.ncomps, terms)

    def term_mul(self, coeff, exps) -> "Vec":
        fld = self.ring.field
        return Vec(self.ring, self.ncomps,
                   {(j, mono_mul(m, exps)): fld.mul(c, coeff)
                    for (j, m), c in self.terms.items()})

    def leading(self, keyfn):
        if not self.terms:
            raise ValueError("leading term of zero vector")
        comp, exps = max(self.terms, key=lambda t: keyfn(t[0], t[1]))
        return comp, exps, self.terms[(comp, exps)]

    def pad(self, ncomps, offset=0) -> "Vec":
        """Reembed into P^ncomps, shifting components by offset."""
        return Vec(self.ring, ncomps,
                   {(j + offset, m): c for (j, m), c in self.terms.items()})

    def take_components(self, lo, hi) -> "Vec":
        return Vec(self.ring, hi - lo,
                   {(j - lo, m): c for (j, m), c in self.terms.items()
                    if lo <= j < hi})

    def has_vars_below(self, n_elim) -> bool:
        return any(any(e for e in m[:n_elim]) for (_j, m) in self.terms)

    def degree(self, shifts=None) -> int:
        """Weighted degree, assuming homogeneity; shifts indexed by component."""
        if not self.terms:
            return -1
        degs = set()
        for (j, m) in self.terms:
            d = self.ring.wdeg(m) + (shifts[j] if shifts else 0)
            degs.add(d)
        return max(degs)

    def is_homogeneous(self, shifts=None) -> bool:
        degs = {self.ring.wdeg(m) + (shifts[j] if shifts else 0)
                for (j, m) in self.terms}
        return len(degs) <= 1

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.to_polys()) + ")"

    __repr__ = __str__


# --- division ----------------------------------------------------------------


def _reduce_terms(terms, basis, keyfn, fld, quots=None, keycache=None):
    """Fully reduce a term dict against basis elements, in place.

    basis: list of (comp, exps, inv_lc, body_terms).  Returns the remainder
    term dict.  If quots is a list of dicts, records the multipliers applied
    to each basis element.
    """
    kc = keycache if keycache is not None else {}
    rem = {}
    while terms:
        best = None
        bestkey = None
        for t in terms:
            k = kc.get(t)
            if k is None:
                k = keyfn(t[0], t[1])
                kc[t] = k
            if bestkey is None or k > bestkey:
                bestkey = k
                best = t
        comp, exps = best
        coeff = terms[best]
        hit = -1
        for idx, (bc, be, _inv, _body) in enumerate(basis):
            if bc == comp and mono_divides(be, exps):
                hit = idx
                break
        if hit < 0:
            rem[best] = coeff
            del terms[best]
            continue
        _bc, be, inv_lc, body = basis[hit]
        q = mono_div(exps, be)
        factor = fld.mul(coeff, inv_lc)
        if quots is not None:
            qd = quots[hit]
            s = fld.add(qd.get(q, fld.zero), factor)
            if s == fld.zero:
                qd.pop(q, None)
            else:
                qd[q] = s
        for (j, m), c in body.items():
            k2 = (j, mono_mul(m, q))
            s = fld.sub(terms.get(k2, fld.zero), fld.mul(c, factor))
            if s == fld.zero:
                terms.pop(k2, None)
            else:
                terms[k2] = s
    return rem


def _make_monic(terms, keyfn, fld):
    comp, exps = max(terms, key=lambda t: keyfn(t[0], t[1]))
    lc = terms[(comp, exps)]
    if lc != fld.one:
        inv = fld.inv(lc)
        for k in terms:
            terms[k] = fld.mul(terms[k], inv)
    return comp, exps


def _normalize(terms, keyfn, fld):
    """Scale a term dict for stable arithmetic; returns (comp, exps, inv_lc).

    Over the rationals, clear denominators and divide out the integer
    content so coefficients stay small integers; over finite fields, make
    the vector monic.
    """
    comp, exps = max(terms, key=lambda t: keyfn(t[0], t[1]))
    if isinstance(fld, Rationals):
        num_gcd = 0
        den_lcm = 1
        for c in terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        scale = Fraction(den_lcm, num_gcd)
        if terms[(comp, exps)] < 0:
            scale = -scale
        if scale != 1:
            for k in terms:
                terms[k] = terms[k] * scale
    else:
        _make_monic(terms, keyfn, fld)
    return comp, exps, fld.inv(terms[(comp, exps)])


# --- Buchberger -----------------------------------------------------------


class GroebnerBasis:
    """Reduced Groebner basis of a span of columns in P^ncomps."""

    def __init__(self, ring, ncomps, keyfn, elements):
        self.ring = ring
        self.ncomps = ncomps
        self.keyfn = keyfn
        self.elements = elements  # list of Vec, monic, sorted by lead desc
        one = ring.field.one
        self._basis_data = [(v.leading(keyfn)[0], v.leading(keyfn)[1], one,
                             v.terms) for v in elements]
        self._keycache: dict = {}

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def normal_form(self, v: Vec) -> Vec:
        terms = dict(v.terms)
        rem = _reduce_terms(terms, self._basis_data, self.keyfn,
                            self.ring.field, keycache=self._keycache)
        return Vec(self.ring, self.ncomps, rem)

    def contains(self, v: Vec) -> bool:
        return self.normal_form(v).is_zero()

    def reduce_with_quotients(self, v: Vec):
        """Return (remainder, quotients); v == sum q_i * g_i + remainder."""
        quots = [dict() for _ in self.elements]
        terms = dict(v.terms)
        rem = _reduce_terms(terms, self._basis_data, self.keyfn,
                            self.ring.field, quots=quots,
                            keycache=self._keycache)
        return (Vec(self.ring, self.ncomps, rem),
                [Polynomial(self.ring, q) for q in quots])

    def leading_terms(self):
        return [(c, e) for (c, e, _inv, _b) in self._basis_data]


def _single_component(terms):
    comps = {j for (j, _m) in terms}
    return len(comps) == 1


def buchberger(cols, ncomps, keyfn, ring=None) -> list:
    """Reduced Groebner basis (list of Vec) of the span of cols in P^ncomps."""
    cols = [c for c in cols if not c.is_zero()]
    if not cols:
        return []
    ring = ring or cols[0].ring
    fld = ring.field
    keycache: dict = {}

    basis = []        # (comp, exps, inv_lc, body terms), content-normalized
    singles = []      # support in a single component?
    pending = set()   # pending pair indices
    queue = []        # (sortkey, i, j)

    def push_pairs(new_idx):
        nc, ne, _inv, _b = basis[new_idx]
        for i in range(new_idx):
            ic, ie, _iv, _bi = basis[i]
            if ic != nc:
                continue
            lcm = mono_lcm(ie, ne)
            queue.append((keyfn(nc, lcm), i, new_idx))
            pending.add((i, new_idx))

    def add_element(terms):
        comp, exps, inv_lc = _normalize(terms, keyfn, fld)
        basis.append((comp, exps, inv_lc, terms))
        singles.append(_single_component(terms))
        push_pairs(len(basis) - 1)

    for col in cols:
        terms = dict(col.terms)
        rem = _reduce_terms(terms, basis, keyfn, fld, keycache=keycache)
        if rem:
            add_element(rem)

    import heapq
    heapq.heapify(queue)
    while queue:
        _key, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        ci, ei, inv_i, bi = basis[i]
        cj, ej, inv_j, bj = basis[j]
        lcm = mono_lcm(ei, ej)
        # product criterion: valid for module elements only when both live
        # entirely in the shared leading component
        if singles[i] and singles[j] and mono_gcd_is_one(ei, ej):
            continue
        # chain criterion
        skip = False
        for k, (ck, ek, _ik, _bk) in enumerate(basis):
            if k == i or k == j or ck != ci:
                continue
            if mono_divides(ek, lcm):
                pi = (i, k) if i < k else (k, i)
                pj = (j, k) if j < k else (k, j)
                if pi not in pending and pj not in pending:
                    skip = True
                    break
        if skip:
            continue
        # S-vector: scale both sides to cancel the leading term exactly
        qi, qj = mono_div(lcm, ei), mono_div(lcm, ej)
        terms: dict = {}
        for (cm, m), c in bi.items():
            terms[(cm, mono_mul(m, qi))] = fld.mul(c, inv_i)
        for (cm, m), c in bj.items():
            k2 = (cm, mono_mul(m, qj))
            s = fld.sub(terms.get(k2, fld.zero), fld.mul(c, inv_j))
            if s == fld.zero:
                terms.pop(k2, None)
            else:
                terms[k2] = s
        rem = _reduce_terms(terms, basis, keyfn, fld, keycache=keycache)
        if rem:
            add_element(rem)

    # minimalize: drop elements whose lead is divisible by another's lead
    keep = []
    for i, (ci, ei, _ii, _bi) in enumerate(basis):
        dominated = False
        for j, (cj, ej, _ij, _bj) in enumerate(basis):
            if i == j or cj != ci:
                continue
            if mono_divides(ej, ei) and (ej != ei or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)

    # interreduce tails (leading terms never change, so passes converge fast)
    reduced = {i: dict(basis[i][3]) for i in keep}
    changed = True
    while changed:
        changed = False
        for i in keep:
            others = [basis[j][:3] + (reduced[j],) for j in keep if j != i]
            terms = dict(reduced[i])
            rem = _reduce_terms(terms, others, keyfn, fld, keycache=keycache)
            if rem != reduced[i]:
                reduced[i] = rem
                changed = True

    out = []
    for i in keep:
        terms = reduced[i]
        if not terms:
            continue
        _make_monic(terms, keyfn, fld)
        out.append(Vec(ring, ncomps, terms))
    out.sort(key=lambda v: keyfn(*v.leading(keyfn)[:2]), reverse=True)
    return out


def groebner_module(cols, ncomps, keyfn=None, ring=None) -> GroebnerBasis:
    cols = list(cols)
    if ring is None:
        if not cols:
            raise ValueError("need a ring for an empty generating set")
        ring = cols[0].ring
    if keyfn is None:
        keyfn = top_key(ring.key)
    return GroebnerBasis(ring, ncomps, keyfn,
                         buchberger(cols, ncomps, keyfn, ring))


# --- extended runs: certificates and syzygies -------------------------------


class ExtendedBasis:
    """Augmented Groebner data for a column span.

    Provides membership with certificates over the original columns and
    generators of the syzygy module of the columns.
    """

    def __init__(self, ring, s, t, keyfn, gb_elements, syzygy_vecs):
        self.ring = ring
        self.s = s
        self.t = t
        self.keyfn = keyfn
        self.elements = gb_elements      # augmented Vecs, real part nonzero
        self.syzygies = syzygy_vecs      # Vecs in P^t
        one = ring.field.one
        self._basis_data = [(v.leading(keyfn)[0], v.leading(keyfn)[1], one,
                             v.terms) for v in gb_elements + self._syz_aug()]
        self._keycache: dict = {}

    def _syz_aug(self):
        return [s.pad(self.s + self.t, self.s) for s in self.syzygies]

    def reduce(self, v: Vec):
        """Return (real remainder, certificate) for v in P^s.

        When the remainder is zero, certificate is a list of t polynomials
        with v == sum certificate[q] * column_q.
        """
        terms = dict(v.pad(self.s + self.t).terms)
        rem = _reduce_terms(terms, self._basis_data, self.keyfn,
                            self.ring.field, keycache=self._keycache)
        full = Vec(self.ring, self.s + self.t, rem)
        real = full.take_components(0, self.s)
        if not real.is_zero():
            return real, None
        shadow = -full.take_components(self.s, self.s + self.t)
        return real, shadow.to_polys()

    def contains(self, v: Vec) -> bool:
        return self.reduce(v)[0].is_zero()


def extended_groebner(cols, ncomps, keyfn=None, ring=None) -> ExtendedBasis:
    cols = list(cols)
    if ring is None:
        ring = cols[0].ring
    s, t = ncomps, len(cols)
    if keyfn is None:
        keyfn = top_key(ring.key)
    ringkey = ring.key

    def augkey(comp, exps):
        if comp < s:
            return (1,) + keyfn(comp, exps)
        return (0, ringkey(exps), -comp)

    aug = [col.pad(s + t) + Vec.unit(ring, s + t, s + i)
           for i, col in enumerate(cols)]
    gb = buchberger(aug, s + t, augkey, ring)
    elements, syz = [], []
    for g in gb:
        if g.take_components(0, s).is_zero():
            syz.append(g.take_components(s, s + t))
        else:
            elements.append(g)
    return ExtendedBasis(ring, s, t, augkey, elements, syz)


def syzygy_module(cols, ncomps, ring=None) -> list:
    """Generators of {(f_1..f_t): sum f_q * cols_q == 0} in P^t."""
    if not cols:
        return []
    return extended_groebner(cols, ncomps, ring=ring).syzygies


def intersect_spans(cols_a, cols_b, ncomps, ring=None) -> list:
    """Generators of the intersection of the two column spans in P^ncomps."""
    cols_a, cols_b = list(cols_a), list(cols_b)
    if ring is None:
        ring = (cols_a + cols_b)[0].ring
    syz = syzygy_module(cols_a + cols_b, ncomps, ring)
    na = len(cols_a)
    out = []
    for sv in syz:
        acc = Vec.zero(ring, ncomps)
        for q in range(na):
            p = sv.component(q)
            if p:
                acc = acc + cols_a[q].scale(p)
        if acc:
            out.append(acc)
    return out


def preimage_span(map_cols, target_cols, ncomps, ring=None) -> list:
    """Generators of {u in P^n : sum u_i map_cols_i in span(target_cols)}.

    n = len(map_cols); the returned vectors live in P^n.
    """
    map_cols, target_cols = list(map_cols), list(target_cols)
    if ring is None:
        ring = (map_cols + target_cols)[0].ring
    n = len(map_cols)
    syz = syzygy_module(map_cols + target_cols, ncomps, ring)
    return [sv.take_components(0, n) for sv in syz
            if not sv.take_components(0, n).is_zero()]


# --- elimination and toric kernels -----------------------------------------


def eliminate_vars(cols, ncomps, n_elim, ring=None) -> list:
    """Intersection of span(cols) with the submodule over the last variables.

    Runs a Groebner computation under a block order with the first n_elim
    variables dominant and keeps the basis vectors free of them.
    """
    cols = list(cols)
    if ring is None:
        ring = cols[0].ring
    keyfn = top_key(elim_key(n_elim))
    gb = buchberger(cols, ncomps, keyfn, ring)
    return [g for g in gb if not g.has_vars_below(n_elim)]


class UnsupportedInputError(ValueError):
    pass


def _strip_vars(poly: Polynomial, target: PolyRing, n_drop: int) -> Polynomial:
    terms = {}
    for m, c in poly.terms.items():
        assert not any(m[:n_drop])
        terms[m[n_drop:]] = c
    return Polynomial(target, terms)


def kernel_of_ring_map(images, pres_names, pres_ring=None):
    """Kernel of k[pres_names] -> target, name_i -> images[i] (monomials).

    images are monomials (single terms, coefficient 1) of positive degree in
    a common target ring.  Returns (generators, presentation ring); the
    generators are a reduced Groebner basis of the toric kernel under the
    presentation ring's own order.
    """
    images = list(images)
    if not images:
        raise UnsupportedInputError("no images given")
    target = images[0].ring
    fld = target.field
    for f in images:
        if f.ring != target:
            raise ContextError("images from different rings")
        if len(f.terms) != 1 or list(f.terms.values())[0] != fld.one:
            raise UnsupportedInputError(
                "only monomial images are supported (got %s)" % f)
        if f.wdeg() <= 0:
            raise UnsupportedInputError("images must have positive degree")
    pres_names = tuple(pres_names)
    if len(pres_names) != len(images):
        raise ValueError("one presentation name per image")
    if set(pres_names) & set(target.names):
        raise ValueError("presentation names must avoid target names")
    degs = tuple(f.wdeg() for f in images)
    if pres_ring is None:
        pres_ring = PolyRing(pres_names, fld, wdegrevlex(degs))

    n_t = target.nvars
    big = PolyRing(target.names + pres_names, fld,
                   wdegrevlex(target.weights + degs))
    zero_tail = (0,) * len(pres_names)

    def lift_target(f: Polynomial) -> Polynomial:
        return Polynomial(big, {m + zero_tail: c for m, c in f.terms.items()})

    graph = []
    for i, f in enumerate(images):
        e = [0] * big.nvars
        e[n_t + i] = 1
        graph.append(Polynomial(big, {tuple(e): fld.one}) - lift_target(f))

    kept = eliminate_vars([Vec.from_polys([g]) for g in graph], 1, n_t, big)
    gens = [_strip_vars(v.component(0), pres_ring, n_t) for v in kept]
    if not gens:
        return [], pres_ring
    gb = buchberger([Vec.from_polys([g]) for g in gens], 1,
                    top_key(pres_ring.key), pres_ring)
    return [v.component(0) for v in gb], pres_ring
