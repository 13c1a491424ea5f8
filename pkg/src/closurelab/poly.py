"""Exact multivariate polynomial arithmetic over QQ or GF(p).

Polynomials are immutable term maps {exponent tuple: nonzero coefficient}
attached to a PolyRing (variable names, grading weights, coefficient field,
monomial order).  Monomials are plain exponent tuples.
"""

from __future__ import annotations

from .field import QQ, FieldError
from .orders import DEGREVLEX, MonomialOrder


class ContextError(ValueError):
    """Operands live in different ambient rings."""


class DomainError(ValueError):
    """Operation undefined for this input (e.g. leading term of 0)."""


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd_is_one(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class PolyRing:
    """Ambient polynomial ring: names, grading weights, field, order."""

    def __init__(self, names, field=QQ, order: MonomialOrder = DEGREVLEX,
                 weights=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.order = order
        if weights is None:
            if order.kind == "wdegrevlex":
                weights = order.weights
            else:
                weights = (1,) * len(self.names)
        self.weights = tuple(weights)
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per variable required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        self.nvars = len(self.names)
        self.key = order.key()
        self._index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.field == other.field and self.order == other.order
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.names, self.weights, self.field, self.order))

    def __repr__(self):
        return (f"PolyRing({','.join(self.names)}; {self.field!r}; "
                f"{self.order.describe()})")

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def const(self, c) -> "Polynomial":
        c = self.field.from_int(c) if isinstance(c, int) else c
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=None) -> "Polynomial":
        coeff = self.field.one if coeff is None else coeff
        if coeff == self.field.zero:
            return self.zero()
        return Polynomial(self, {tuple(exps): coeff})

    def wdeg(self, exps) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms  # never mutated after construction

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ContextError("polynomials from different rings")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        fld = self.ring.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.add(terms.get(m, fld.zero), c)
            if s == fld.zero:
                terms.pop(m, None)
            else:
                terms[m] = s
        return Polynomial(self.ring, terms)

    def __neg__(self):
        fld = self.ring.field
        return Polynomial(self.ring, {m: fld.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        fld = self.ring.field
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = fld.add(terms.get(m, fld.zero), fld.mul(c1, c2))
                if s == fld.zero:
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return Polynomial(self.ring, terms)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scalar_mul(self, c):
        fld = self.ring.field
        if isinstance(c, int):
            c = fld.from_int(c)
        if c == fld.zero:
            return self.ring.zero()
        return Polynomial(self.ring, {m: fld.mul(c, co) for m, co in self.terms.items()})

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        _, lc = self.leading_term()
        return self.scalar_mul(self.ring.field.inv(lc))

    # -- structure -----------------------------------------------------------

    def leading_term(self, key=None):
        """Return (monomial, coefficient) maximal under the active order."""
        if not self.terms:
            raise DomainError("leading term of the zero polynomial")
        key = key or self.ring.key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, key=None):
        return self.leading_term(key)[0]

    def wdeg(self) -> int:
        """Weighted degree (maximum over terms); zero polynomial -> -1."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(m) for m in self.terms)

    def is_homogeneous(self, weights=None) -> bool:
        if not self.terms:
            return True
        weights = self.ring.weights if weights is None else tuple(weights)
        degs = {sum(w * e for w, e in zip(weights, m)) for m in self.terms}
        return len(degs) == 1

    def sorted_terms(self, key=None):
        key = key or self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def constant_value(self):
        """Coefficient of the constant monomial (field zero if absent)."""
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    # -- printing ------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<{format_polynomial(self)}>"


# --- printing --------------------------------------------------------------


def _format_monomial(ring: PolyRing, exps) -> str:
    parts = []
    for name, e in zip(ring.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    fld = f.ring.field
    out = []
    for m, c in f.sorted_terms():
        mono = _format_monomial(f.ring, m)
        cs = fld.fmt(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if mono and cs == "1":
            body = mono
        elif mono:
            body = f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# --- parsing -----------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int, line: int = 1,
                 col: int | None = None):
        self.pos = pos
        self.line = line
        self.col = pos + 1 if col is None else col
        super().__init__(f"{message} (column {self.col})")
        self.bare_message = message
        self.text = text


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize_poly(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
        elif ch in "+-*^()/":
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", text, i)
    toks.append(_Tok("end", None, n))
    return toks


class _PolyParser:
    """Recursive descent for `coeff*mon +/- ...` with optional `*`.

    Grammar: expr := term (('+'|'-') term)* ; term := factor (['*'] factor)* ;
    factor := INT ['/' INT] | NAME ['^' INT] | '(' expr ')' | '-' factor.
    """

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = _tokenize_poly(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.take()
        if t.kind != kind:
            found = "end of input" if t.kind == "end" else repr(t.value)
            raise ParseError(f"expected {kind!r}, found {found}",
                             self.text, t.pos)
        return t

    def parse(self) -> Polynomial:
        f = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.value!r}", self.text, t.pos)
        return f

    def expr(self) -> Polynomial:
        t = self.peek()
        if t.kind == "-":
            self.take()
            f = -self.term()
        else:
            f = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while True:
            t = self.peek()
            if t.kind == "*":
                self.take()
                f = f * self.factor()
            elif t.kind in ("name", "int", "("):
                f = f * self.factor()
            else:
                return f

    def factor(self) -> Polynomial:
        t = self.take()
        if t.kind == "int":
            num = t.value
            if self.peek().kind == "/":
                self.take()
                den = self.expect("int").value
                if den == 0:
                    raise ParseError("zero denominator", self.text, t.pos)
                try:
                    c = self.ring.field.from_fraction(num, den)
                except FieldError as exc:
                    raise ParseError(str(exc), self.text, t.pos) from exc
                base = self.ring.const(c)
            else:
                base = self.ring.const(num)
        elif t.kind == "name":
            if t.value not in self.ring._index:
                raise ParseError(f"unknown variable {t.value!r}", self.text, t.pos)
            base = self.ring.var(t.value)
        elif t.kind == "(":
            base = self.expr()
            self.expect(")")
        elif t.kind == "-":
            return -self.factor()
        else:
            found = "end of input" if t.kind == "end" else repr(t.value)
            raise ParseError(f"unexpected {found}", self.text, t.pos)
        if self.peek().kind == "^":
            self.take()
            e = self.expect("int").value
            base = base ** e
        return base


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    return _PolyParser(ring, text).parse()
