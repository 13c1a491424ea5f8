"""Finitely presented graded modules over a quotient ring.

An FPModule is (generator degrees, relation columns); a Submodule is a set
of generating vectors inside the free cover of its ambient module.  All
membership questions reduce to Groebner computations over the ambient
polynomial ring with the defining ideal appended on every component, so a
single engine answers ideal membership, module membership, colons, kernels
and syzygies uniformly.
"""

from __future__ import annotations

import threading

from .gb import ExtendedBasis, Vec, buchberger, extended_groebner, groebner_module
from .linalg import component_terms, graded_span_dim
from .orders import block_key, top_key
from .poly import ContextError, DomainError
from .ring import QuotientRing


# --- quotient-ring module primitives ----------------------------------------


def ideal_columns(ring: QuotientRing, ncomps: int):
    cols = []
    for g in ring.ideal_basis:
        for j in range(ncomps):
            cols.append(Vec(ring.ambient, ncomps,
                            {(j, m): c for m, c in g.terms.items()}))
    return cols


def r_span_basis(ring: QuotientRing, cols, ncomps):
    """Groebner basis of the R-span of cols (ideal columns appended)."""
    return groebner_module(list(cols) + ideal_columns(ring, ncomps),
                           ncomps, ring=ring.ambient)


def r_extended_basis(ring: QuotientRing, cols, ncomps) -> ExtendedBasis:
    return extended_groebner(list(cols) + ideal_columns(ring, ncomps),
                             ncomps, ring=ring.ambient)


def r_syzygies(ring: QuotientRing, cols, ncomps):
    """Generators over R of the syzygy module of cols in R^ncomps."""
    cols = list(cols)
    ext = r_extended_basis(ring, cols, ncomps)
    t = len(cols)
    out = []
    seen = set()
    for sv in ext.syzygies:
        v = nf_vec(ring, sv.take_components(0, t))
        if v.is_zero():
            continue
        v = _monic_vec(ring, v)
        key = frozenset(v.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def r_preimage(ring: QuotientRing, map_cols, target_cols, ncomps):
    """Generators of {u in R^n : sum u_i map_cols_i in R-span(target_cols)}.

    Computed by component elimination: Groebner basis of the span of
    (map_col_j + e_j, target cols, ideal columns) under a block order with
    the first ncomps components dominant; basis vectors supported entirely
    on the tag block are the preimage generators.
    """
    map_cols, target_cols = list(map_cols), list(target_cols)
    n = len(map_cols)
    big = ncomps + n
    amb = ring.ambient
    cols = [mc.pad(big) + Vec.unit(amb, big, ncomps + j)
            for j, mc in enumerate(map_cols)]
    cols += [t.pad(big) for t in target_cols]
    cols += [ic.pad(big) for ic in ideal_columns(ring, ncomps)]
    cols += [ic.pad(big, offset=ncomps) for ic in ideal_columns(ring, n)]
    gb = buchberger(cols, big, block_key(amb.key, ncomps), amb)
    out = []
    seen = set()
    for g in gb:
        if not g.take_components(0, ncomps).is_zero():
            continue
        v = nf_vec(ring, g.take_components(ncomps, big))
        if v.is_zero():
            continue
        v = _monic_vec(ring, v)
        key = frozenset(v.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def nf_vec(ring: QuotientRing, v: Vec) -> Vec:
    if ring.is_polynomial_ring:
        return v
    return Vec.from_polys([ring.nf(p) for p in v.to_polys()]) \
        if v.ncomps else v


def _monic_vec(ring: QuotientRing, v: Vec) -> Vec:
    if v.is_zero():
        return v
    _c, _e, lc = v.leading(top_key(ring.ambient.key))
    return v.term_mul(ring.ambient.field.inv(lc), (0,) * ring.ambient.nvars)


# --- finitely presented modules ----------------------------------------------


class FPModule:
    """Graded module given by generator degrees and relation columns."""

    def __init__(self, ring: QuotientRing, gen_degrees, relations=(),
                 normalize=True):
        self.ring = ring
        self.gen_degrees = tuple(gen_degrees)
        rels = []
        for col in relations:
            col = self._coerce_col(col)
            if normalize:
                col = nf_vec(ring, col)
            if col.is_zero():
                continue
            if not col.is_homogeneous(self.gen_degrees):
                raise DomainError(f"inhomogeneous relation column {col}")
            rels.append(col)
        self.relations = tuple(rels)
        self._memo: dict = {}
        self._lock = threading.Lock()

    # -- plumbing -------------------------------------------------------------

    @property
    def ngens(self):
        return len(self.gen_degrees)

    def __eq__(self, other):
        return (isinstance(other, FPModule) and self.ring == other.ring
                and self.gen_degrees == other.gen_degrees
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.ring, self.gen_degrees, self.relations))

    def _coerce_col(self, col) -> Vec:
        if isinstance(col, Vec):
            if col.ncomps != self.ngens:
                raise ContextError("relation column of wrong length")
            return col
        entries = [self.ring.elem(x).poly for x in col]
        if len(entries) != self.ngens:
            raise ContextError("relation column of wrong length")
        return Vec.from_polys(entries) if entries else Vec.zero(
            self.ring.ambient, 0)

    def vec(self, entries) -> Vec:
        """Build a cover vector from ring elements / strings / polynomials."""
        return self._coerce_col(entries)

    def gen(self, i) -> Vec:
        return Vec.unit(self.ring.ambient, self.ngens, i)

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def relation_basis(self):
        """Groebner basis of the relation span (the zero submodule)."""
        return self._cached("relgb", lambda: r_span_basis(
            self.ring, self.relations, self.ngens))

    def _cached(self, name, thunk):
        with self._lock:
            if name not in self._memo:
                self._memo[name] = thunk()
            return self._memo[name]

    def element_is_zero(self, v: Vec) -> bool:
        if self.ngens == 0:
            return True
        return self.relation_basis().contains(v)

    def elements_equal(self, v, w) -> bool:
        return self.element_is_zero(v - w)

    def is_zero_module(self) -> bool:
        return all(self.element_is_zero(self.gen(i)) for i in range(self.ngens))

    def degree_of(self, v: Vec) -> int:
        return v.degree(self.gen_degrees)

    def graded_dim(self, d: int) -> int:
        """k-dimension of the degree-d piece."""
        terms = component_terms(self.ring.ambient, self.gen_degrees, d)
        cols = list(self.relations) + ideal_columns(self.ring, self.ngens)
        return len(terms) - graded_span_dim(cols, self.gen_degrees, d,
                                            self.ring.ambient)

    # -- submodules ------------------------------------------------------------

    def submodule(self, gens) -> "Submodule":
        vecs = []
        for g in gens:
            v = g if isinstance(g, Vec) else self.vec(g)
            v = nf_vec(self.ring, v)
            if not v.is_homogeneous(self.gen_degrees):
                raise DomainError(f"inhomogeneous generator {v}")
            if not v.is_zero():
                vecs.append(v)
        return Submodule(self, tuple(vecs))

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, ())

    def full_submodule(self) -> "Submodule":
        return Submodule(self, tuple(self.gens()))

    def quotient_by(self, sub: "Submodule") -> "FPModule":
        if sub.module != self:
            raise ContextError("submodule of a different module")
        return FPModule(self.ring, self.gen_degrees,
                        self.relations + sub.gens, normalize=False)

    # -- presentation-level operations ----------------------------------------

    def minimal_presentation(self) -> "FPModule":
        return self._cached("minpres", lambda: _minimal_presentation(self))

    def resolution(self, length: int):
        """Minimal graded free resolution data up to homological degree length.

        Returns a list [(degrees_0, []), (degrees_1, cols_1), ...] where
        cols_i are the columns of the i-th differential F_i -> F_{i-1},
        written in the cover of F_{i-1}.
        """
        with self._lock:
            steps = self._memo.setdefault("resolution", [])
            if not steps:
                mp = _minimal_presentation(self)
                self._memo["minpres"] = mp
                steps.append((mp.gen_degrees, ()))
                if mp.ngens:
                    cols = _minimalize_columns(self.ring, list(mp.relations),
                                               mp.gen_degrees)
                    steps.append((tuple(c.degree(mp.gen_degrees) for c in cols),
                                  tuple(cols)))
            while len(steps) <= length:
                prev_degrees, prev_cols = steps[-1]
                if not prev_cols:
                    steps.append(((), ()))
                    continue
                shifts = steps[-2][0] if len(steps) >= 2 else None
                syz = r_syzygies(self.ring, list(prev_cols), len(shifts))
                syz = _minimalize_columns(self.ring, syz, prev_degrees)
                steps.append((tuple(c.degree(prev_degrees) for c in syz),
                              tuple(syz)))
            return steps[:length + 1]

    def syzygy(self, d: int) -> "FPModule":
        """The d-th syzygy module of the minimal resolution."""
        if d == 0:
            return self.minimal_presentation()
        steps = self.resolution(d + 1)
        degrees_d = steps[d][0]
        rel_cols = steps[d + 1][1] if d + 1 < len(steps) else ()
        return FPModule(self.ring, degrees_d, rel_cols, normalize=False)

    def betti_numbers(self, length: int):
        return [len(step[0]) for step in self.resolution(length)]

    def presentation_strings(self):
        return [[str(self.ring.nf(col.component(i))) for i in range(self.ngens)]
                for col in self.relations]

    def descriptor(self) -> dict:
        return {
            "ngens": self.ngens,
            "gen_degrees": list(self.gen_degrees),
            "relations": self.presentation_strings(),
        }

    def same_presentation(self, other: "FPModule", degree_shift=0) -> bool:
        """Presentation-level module equality: minimal presentations with
        matched degree data have equal relation-span Groebner bases.

        degree_shift compares self against other with all of other's
        generator degrees lowered by that amount (graded twist).
        """
        if self.ring != other.ring:
            return False
        a, b = self.minimal_presentation(), other.minimal_presentation()
        if sorted(a.gen_degrees) != sorted(d - degree_shift
                                           for d in b.gen_degrees):
            return False
        pa = _degree_sorted(a)
        pb = _degree_sorted(b)
        gba = [v.terms for v in pa.relation_basis()]
        gbb = [v.terms for v in pb.relation_basis()]
        return gba == gbb

    def __repr__(self):
        return (f"FPModule(ngens={self.ngens}, degrees={self.gen_degrees}, "
                f"{len(self.relations)} relations)")


def _degree_sorted(M: FPModule) -> FPModule:
    order = sorted(range(M.ngens), key=lambda i: (M.gen_degrees[i], i))
    pos = {old: new for new, old in enumerate(order)}
    degrees = tuple(M.gen_degrees[i] for i in order)
    rels = [Vec(M.ring.ambient, M.ngens,
                {(pos[j], m): c for (j, m), c in col.terms.items()})
            for col in M.relations]
    return FPModule(M.ring, degrees, rels, normalize=False)


class Submodule:
    """Submodule of an FPModule, generated by vectors in its free cover."""

    def __init__(self, module: FPModule, gens):
        self.module = module
        self.gens = tuple(gens)
        self._memo: dict = {}

    @property
    def ring(self):
        return self.module.ring

    def _span(self):
        if "span" not in self._memo:
            cols = list(self.gens) + list(self.module.relations)
            self._memo["span"] = r_span_basis(self.ring, cols,
                                              self.module.ngens)
        return self._memo["span"]

    def _ext(self) -> ExtendedBasis:
        if "ext" not in self._memo:
            cols = list(self.gens) + list(self.module.relations)
            self._memo["ext"] = r_extended_basis(self.ring, cols,
                                                 self.module.ngens)
        return self._memo["ext"]

    def contains(self, v) -> bool:
        v = v if isinstance(v, Vec) else self.module.vec(v)
        if self.module.ngens == 0:
            return True
        return self._span().contains(v)

    def certificate(self, v):
        """Coefficients over the submodule generators, or None.

        For a member v, returns ring elements (c_1..c_t) with
        v == sum c_q * gens_q modulo the ambient module's relations.
        """
        v = v if isinstance(v, Vec) else self.module.vec(v)
        rem, coeffs = self._ext().reduce(v)
        if not rem.is_zero():
            return None
        return [self.ring.elem(c) for c in coeffs[:len(self.gens)]]

    def contains_submodule(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.gens)

    def same_as(self, other: "Submodule") -> bool:
        return self.contains_submodule(other) and other.contains_submodule(self)

    def sum(self, other: "Submodule") -> "Submodule":
        return Submodule(self.module, self.gens + other.gens)

    def intersect(self, other: "Submodule") -> "Submodule":
        """Intersection, as the preimage of span(A) + span(B) under the
        diagonal u -> (u, u)."""
        if other.module != self.module:
            raise ContextError("submodules of different modules")
        n = self.module.ngens
        amb = self.ring.ambient
        rels = list(self.module.relations)
        target = [a.pad(2 * n) for a in list(self.gens) + rels]
        target += [b.pad(2 * n, offset=n)
                   for b in list(other.gens) + rels]
        diag = [Vec.unit(amb, 2 * n, j) + Vec.unit(amb, 2 * n, n + j)
                for j in range(n)]
        gens = r_preimage(self.ring, diag, target, 2 * n)
        return Submodule(self.module, tuple(gens)).minimalized()

    def colon_elem(self, x) -> "Submodule":
        """(self :_M x) = {m in M : x m in self}."""
        x = self.ring.elem(x)
        n = self.module.ngens
        map_cols = [Vec(self.ring.ambient, n,
                        {(j, m): c for m, c in x.poly.terms.items()})
                    for j in range(n)]
        target = list(self.gens) + list(self.module.relations)
        gens = r_preimage(self.ring, map_cols, target, n)
        return Submodule(self.module, tuple(gens)).minimalized()

    def colon_ideal(self, xs) -> "Submodule":
        out = None
        for x in xs:
            c = self.colon_elem(x)
            out = c if out is None else out.intersect(c)
        if out is None:
            raise DomainError("colon by the empty ideal")
        return out

    def minimalized(self) -> "Submodule":
        """Prune the generating set to a minimal one (deterministically)."""
        gens = [nf_vec(self.ring, g) for g in self.gens]
        gens = [_monic_vec(self.ring, g) for g in gens if not g.is_zero()]
        seen = set()
        uniq = []
        for g in gens:
            key = frozenset(g.terms.items())
            if key not in seen:
                seen.add(key)
                uniq.append(g)
        uniq.sort(key=lambda g: (g.degree(self.module.gen_degrees), str(g)))
        kept = list(uniq)
        i = 0
        while i < len(kept):
            candidate = kept[i]
            others = kept[:i] + kept[i + 1:]
            span = r_span_basis(self.ring,
                                others + list(self.module.relations),
                                self.module.ngens)
            if span.contains(candidate):
                kept.pop(i)
            else:
                i += 1
        return Submodule(self.module, tuple(kept))

    def gens_as_ring_elems(self):
        if self.module.ngens != 1:
            raise DomainError("not a rank-one cover")
        return [self.ring.elem(g.component(0)) for g in self.gens]

    def descriptor(self):
        return [[str(self.ring.nf(g.component(i)))
                 for i in range(self.module.ngens)] for g in self.gens]

    def __repr__(self):
        return f"Submodule({len(self.gens)} gens of {self.module!r})"


class ModuleMap:
    """Map of FPModules given by images of the source generators."""

    def __init__(self, source: FPModule, target: FPModule, cols, check=True):
        self.source = source
        self.target = target
        if source.ring != target.ring:
            raise ContextError("map between modules over different rings")
        self.cols = tuple(target.vec(c) if not isinstance(c, Vec) else c
                          for c in cols)
        if len(self.cols) != source.ngens:
            raise ContextError("one image per source generator required")
        if check:
            zero = target.submodule(())
            for r in source.relations:
                if not zero.contains(self.apply(r)):
                    raise DomainError(
                        f"map not well defined: relation {r} maps to a "
                        f"nonzero element")

    def apply(self, v) -> Vec:
        v = v if isinstance(v, Vec) else self.source.vec(v)
        acc = Vec.zero(self.target.ring.ambient, self.target.ngens)
        for i in range(self.source.ngens):
            p = v.component(i)
            if p:
                acc = acc + self.cols[i].scale(p)
        return nf_vec(self.target.ring, acc)

    def image(self) -> Submodule:
        return self.target.submodule(self.cols)

    def kernel(self) -> Submodule:
        n = self.source.ngens
        if n == 0:
            return self.source.zero_submodule()
        target_cols = list(self.target.relations)
        gens = r_preimage(self.source.ring, list(self.cols), target_cols,
                          self.target.ngens) if self.target.ngens else \
            [Vec.unit(self.source.ring.ambient, n, i) for i in range(n)]
        return Submodule(self.source, tuple(gens)).minimalized()

    def is_surjective(self) -> bool:
        im = self.image()
        return all(im.contains(self.target.gen(i))
                   for i in range(self.target.ngens))

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other (other first)."""
        if other.target != self.source:
            raise ContextError("maps not composable")
        return ModuleMap(other.source, self.target,
                         [self.apply(c) for c in other.cols], check=False)

    @classmethod
    def identity(cls, M: FPModule):
        return cls(M, M, M.gens(), check=False)


# --- constructors -------------------------------------------------------------


def free_module(ring: QuotientRing, degrees) -> FPModule:
    return FPModule(ring, tuple(degrees), ())


def ring_as_module(ring: QuotientRing) -> FPModule:
    return free_module(ring, (0,))


def quotient_module(ring: QuotientRing, ideal_gens) -> FPModule:
    gens = [ring.elem(g) for g in ideal_gens]
    cols = [Vec.from_polys([g.poly]) for g in gens if not g.is_zero()]
    return FPModule(ring, (0,), cols)


def residue_field(ring: QuotientRing) -> FPModule:
    return quotient_module(ring, ring.maximal_ideal_gens())


def ideal_as_module(ring: QuotientRing, gens) -> FPModule:
    """The ideal (gens) presented as a module: one generator per given gen,
    relations the full syzygy module of the generators."""
    elems = [ring.elem(g) for g in gens]
    if any(e.is_zero() for e in elems):
        raise DomainError("zero ideal generator")
    cols = [Vec.from_polys([e.poly]) for e in elems]
    syz = r_syzygies(ring, cols, 1)
    degrees = tuple(e.degree() for e in elems)
    return FPModule(ring, degrees, syz, normalize=False)


def ideal_submodule(ring: QuotientRing, gens) -> Submodule:
    """The ideal (gens) as a submodule of the rank-one free module."""
    R1 = ring_as_module(ring)
    return R1.submodule([[g] for g in gens])


def direct_sum(A: FPModule, B: FPModule) -> FPModule:
    if A.ring != B.ring:
        raise ContextError("modules over different rings")
    degrees = A.gen_degrees + B.gen_degrees
    n = len(degrees)
    rels = [col.pad(n) for col in A.relations]
    rels += [col.pad(n, offset=A.ngens) for col in B.relations]
    return FPModule(A.ring, degrees, rels, normalize=False)


def tensor(A: FPModule, B: FPModule) -> FPModule:
    """A (x) B by the standard presentation: generators a_i (x) b_j and
    relations rel(A) (x) gen(B) plus gen(A) (x) rel(B)."""
    if A.ring != B.ring:
        raise ContextError("modules over different rings")
    nb = B.ngens
    n = A.ngens * nb

    def idx(i, j):
        return i * nb + j

    degrees = tuple(A.gen_degrees[i] + B.gen_degrees[j]
                    for i in range(A.ngens) for j in range(nb))
    rels = []
    for col in A.relations:
        for j in range(nb):
            rels.append(Vec(A.ring.ambient, n,
                            {(idx(i, j), m): c
                             for (i, m), c in col.terms.items()}))
    for col in B.relations:
        for i in range(A.ngens):
            rels.append(Vec(A.ring.ambient, n,
                            {(idx(i, j), m): c
                             for (j, m), c in col.terms.items()}))
    return FPModule(A.ring, degrees, rels, normalize=False)


def tensor_elem(A: FPModule, B: FPModule, i: int, v: Vec) -> Vec:
    """gen_i(A) (x) v as a vector in the cover of tensor(A, B)."""
    nb = B.ngens
    n = A.ngens * nb
    return Vec(A.ring.ambient, n,
               {(i * nb + j, m): c for (j, m), c in v.terms.items()})


# --- minimal presentations -----------------------------------------------------


def _minimal_presentation(M: FPModule) -> FPModule:
    ring = M.ring
    degrees = list(M.gen_degrees)
    cols = [dict(c.terms) for c in M.relations]

    def find_unit():
        for cj, col in enumerate(cols):
            for (i, m), c in col.items():
                if not any(m):
                    return cj, i, c
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        cj, row, c = hit
        fld = ring.ambient.field
        inv = fld.inv(c)
        pivot = Vec(ring.ambient, len(degrees), dict(cols[cj]))
        new_cols = []
        for k, col in enumerate(cols):
            if k == cj:
                continue
            v = Vec(ring.ambient, len(degrees), dict(col))
            entry = v.component(row)
            if entry:
                v = v - pivot.scale(entry.scalar_mul(inv))
            new_cols.append(v)
        # drop the generator `row`
        keep = [i for i in range(len(degrees)) if i != row]
        remap = {old: new for new, old in enumerate(keep)}
        degrees = [degrees[i] for i in keep]
        cols = []
        for v in new_cols:
            v = nf_vec(ring, v)
            terms = {(remap[i], m): c for (i, m), c in v.terms.items()
                     if i != row}
            if terms:
                cols.append(terms)

    rel_vecs = [Vec(ring.ambient, len(degrees), t) for t in cols]
    rel_vecs = _minimalize_columns(ring, rel_vecs, tuple(degrees))
    return FPModule(ring, tuple(degrees), rel_vecs, normalize=False)


def _minimalize_columns(ring: QuotientRing, cols, shifts):
    """Minimal generating set of the span of cols (graded Nakayama, greedy)."""
    cols = [nf_vec(ring, c) for c in cols]
    cols = [_monic_vec(ring, c) for c in cols if not c.is_zero()]
    seen = set()
    uniq = []
    for c in cols:
        key = frozenset(c.terms.items())
        if key not in seen:
            seen.add(key)
            uniq.append(c)
    uniq.sort(key=lambda g: (g.degree(shifts), str(g)))
    ncomps = len(shifts)
    kept = list(uniq)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        span = r_span_basis(ring, others, ncomps)
        if span.contains(kept[i]):
            kept.pop(i)
        else:
            i += 1
    return kept


# --- regular sequences ----------------------------------------------------------


def graded_kernel_dim(ring: QuotientRing, cols, ncomps, col_degrees, d,
                      target_shifts=None) -> int:
    """dim_k of the degree-d kernel of the map R^t -> R^ncomps given by cols.

    Pure linear algebra: coefficient vectors whose image lands in the
    defining-ideal span, modulo vectors that are themselves ideal multiples.
    target_shifts are the generator degrees of the target free module.
    """
    from .linalg import monomials_of_wdeg, residual, row_reduce, span_rows, \
        vec_coords
    amb = ring.ambient
    fld = amb.field
    uterms = []
    for q, dq in enumerate(col_degrees):
        for m in monomials_of_wdeg(amb, d - dq):
            uterms.append((q, m))
    if not uterms:
        return 0
    shifts = tuple(target_shifts) if target_shifts else (0,) * ncomps
    rows_t, terms_t = span_rows(ideal_columns(ring, ncomps), shifts, d, amb)
    rref, pivots = row_reduce(rows_t, fld) if rows_t else ([], [])
    matrix = []
    for (q, m) in uterms:
        img = cols[q].term_mul(fld.one, m)
        coords = vec_coords(img, terms_t, fld)
        matrix.append(residual(rref, pivots, coords, fld))
    rank = len(row_reduce(matrix, fld)[0]) if matrix and matrix[0] else 0
    valid = len(uterms) - rank
    rows_i, _t = span_rows(ideal_columns(ring, len(cols)), col_degrees, d, amb)
    base = len(row_reduce(rows_i, fld)[0]) if rows_i else 0
    return valid - base


def verify_resolution(M: FPModule, length: int, bound=None) -> bool:
    """Degreewise exactness check of the minimal resolution of M.

    At every homological degree 1 <= i < length and every internal degree up
    to the bound (default: max generator degree + 6), the kernel of d_i must
    have the same dimension as the image of d_{i+1}.  The image always sits
    inside the kernel (composites vanish), so dimension equality is
    equality.
    """
    steps = M.resolution(length)
    all_degrees = [d for degs, _c in steps for d in degs]
    if bound is None:
        bound = (max(all_degrees) if all_degrees else 0) + 6
    ring = M.ring
    for i in range(1, length):
        degrees_prev = steps[i - 1][0]
        cols_i = steps[i][1]
        degrees_i = steps[i][0]
        cols_next = steps[i + 1][1] if i + 1 < len(steps) else ()
        if not cols_i:
            if any(cols_next):
                return False
            continue
        for d in range(0, bound + 1):
            ker = graded_kernel_dim(ring, list(cols_i), len(degrees_prev),
                                    degrees_i, d, target_shifts=degrees_prev)
            if cols_next:
                from .linalg import row_reduce, span_rows
                amb = ring.ambient
                rows, _t = span_rows(list(cols_next) +
                                     ideal_columns(ring, len(degrees_i)),
                                     degrees_i, d, amb)
                full = len(row_reduce(rows, amb.field)[0]) if rows else 0
                rows_i2, _t2 = span_rows(ideal_columns(ring, len(degrees_i)),
                                         degrees_i, d, amb)
                base = len(row_reduce(rows_i2, amb.field)[0]) if rows_i2 else 0
                im = full - base
            else:
                im = 0
            if ker != im:
                return False
    return True


class RegularSequenceResult:
    def __init__(self, ok, fail_index=None, witness=None, note=""):
        self.ok = ok
        self.fail_index = fail_index
        self.witness = witness
        self.note = note

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "RegularSequenceResult(ok)"
        return (f"RegularSequenceResult(fail at {self.fail_index}, "
                f"witness={self.witness}, {self.note})")


def scaled_gens(M: FPModule, elems):
    """Generators x * e_j of (elems) M inside the cover of M."""
    out = []
    for x in elems:
        x = M.ring.elem(x)
        for j in range(M.ngens):
            out.append(Vec(M.ring.ambient, M.ngens,
                           {(j, m): c for m, c in x.poly.terms.items()}))
    return out


def is_regular_sequence(xs, M: FPModule) -> RegularSequenceResult:
    """Check that xs is a regular sequence on M; witness on failure.

    For each i the colon ((x_1..x_{i-1})M :_M x_i) must equal
    (x_1..x_{i-1})M, and M/(xs)M must be nonzero.
    """
    elems = [M.ring.elem(x) for x in xs]
    prev: list = []
    for i, x in enumerate(elems):
        N = Submodule(M, tuple(prev))
        colon = N.colon_elem(x)
        for g in sorted(colon.gens,
                        key=lambda v: (v.degree(M.gen_degrees), str(v))):
            if not N.contains(g):
                return RegularSequenceResult(
                    False, i, g,
                    note=f"({x}) times witness lies in the previous span")
        prev.extend(scaled_gens(M, [x]))
    full = Submodule(M, tuple(prev))
    if all(full.contains(M.gen(j)) for j in range(M.ngens)):
        return RegularSequenceResult(False, len(elems), None,
                                     note="M equals (xs)M")
    return RegularSequenceResult(True)


def annihilates(M: FPModule, x) -> bool:
    x = M.ring.elem(x)
    return all(M.element_is_zero(v) for v in scaled_gens(M, [x]))
