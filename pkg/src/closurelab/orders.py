"""Monomial orders on exponent vectors and their extensions to free modules.

An order is exposed as a key function mapping an exponent tuple to a tuple
that compares the way the order does (bigger key = bigger monomial).  For
degrevlex the key is (degree, negated reversed exponents): ties in degree
are broken so that the monomial whose last nonzero exponent difference is
negative wins.
"""

from __future__ import annotations

from dataclasses import dataclass


def lex_key(exps):
    return exps


def degrevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def make_wdegrevlex_key(weights):
    w = tuple(weights)

    def key(exps):
        return (sum(wi * ei for wi, ei in zip(w, exps)),
                tuple(-e for e in reversed(exps)))

    return key


@dataclass(frozen=True)
class MonomialOrder:
    """One of lex, degrevlex, or weighted degrevlex (positive weights)."""

    kind: str  # "lex" | "degrevlex" | "wdegrevlex"
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "wdegrevlex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "wdegrevlex":
            if not self.weights or any(w <= 0 for w in self.weights):
                raise ValueError("wdegrevlex needs positive weights")

    def key(self):
        if self.kind == "lex":
            return lex_key
        if self.kind == "degrevlex":
            return degrevlex_key
        return make_wdegrevlex_key(self.weights)

    def describe(self) -> str:
        if self.kind == "wdegrevlex":
            return "wdegrevlex[" + ",".join(str(w) for w in self.weights) + "]"
        return self.kind


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def wdegrevlex(weights) -> MonomialOrder:
    return MonomialOrder("wdegrevlex", tuple(weights))


# --- module orders: keys on (component, exponents) pairs ------------------
#
# TOP (term over position) compares the ring monomials first and breaks ties
# by position, earlier components winning.  POT puts the position first, so
# with POT every term in component i beats every term in component j > i;
# that makes POT the component-elimination order used for syzygy and
# intersection computations.


def top_key(ring_key):
    def key(comp, exps):
        return (ring_key(exps), -comp)

    return key


def pot_key(ring_key):
    def key(comp, exps):
        return (-comp, ring_key(exps))

    return key


def block_key(ring_key, nreal):
    """TOP order with components >= nreal strictly below the rest.

    Used for extended Groebner runs: the first nreal components hold the
    actual module element, the remaining ones carry bookkeeping that must
    never outrank a real term.
    """

    def key(comp, exps):
        if comp < nreal:
            return (1, ring_key(exps), -comp)
        return (0, ring_key(exps), -comp)

    return key


def elim_key(n_elim):
    """Ring order eliminating the first n_elim variables (block degrevlex)."""

    def key(exps):
        head, tail = exps[:n_elim], exps[n_elim:]
        return (degrevlex_key(head), degrevlex_key(tail))

    return key
