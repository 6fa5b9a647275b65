"""Exact-coefficient polynomials on the Lyndon-Shirshov term basis.

Elements of the free operated Lie algebra are finite rational combinations
of LS terms.  The bracket straightens arbitrary products back into the
basis via antisymmetry and the Jacobi identity; the operator is linear and
opaque (no operator identity is imposed at the free level).
"""

from __future__ import annotations

import functools
from fractions import Fraction

from . import words
from .errors import PreconditionError
from .words import (EQUAL, GREATER, LESS, Alphabet, Leaf, NTerm, NWord,
                    OpNode, Pair, cmp_lex, cmp_wt, psi)

Scalar = Fraction


class Poly:
    """Finite mapping from LS terms to nonzero rational coefficients."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet: Alphabet, terms=None):
        self.alphabet = alphabet
        pruned = {}
        if terms:
            for t, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    pruned[t] = c
        self._terms = pruned

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "Poly":
        return cls(alphabet)

    @classmethod
    def term(cls, alphabet: Alphabet, t: NTerm, coeff=1) -> "Poly":
        if not words.is_ls_term(t, alphabet):
            raise PreconditionError(f"{term_to_text(t)} is not an LS term")
        return cls(alphabet, {t: Fraction(coeff)})

    @classmethod
    def letter(cls, alphabet: Alphabet, name: str, coeff=1) -> "Poly":
        alphabet.rank(name)
        return cls(alphabet, {Leaf(name): Fraction(coeff)})

    # -- mapping access ----------------------------------------------------

    def items(self):
        return self._terms.items()

    def coeff(self, t: NTerm) -> Fraction:
        return self._terms.get(t, Fraction(0))

    def support(self):
        return self._terms.keys()

    def support_words(self):
        return [psi(t) for t in self._terms]

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.alphabet == other.alphabet
                and self._terms == other._terms)

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        out = dict(self._terms)
        for t, c in other._terms.items():
            s = out.get(t, Fraction(0)) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return Poly(self.alphabet, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.alphabet, {t: -c for t, c in self._terms.items()})

    def __rmul__(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.alphabet)
        return Poly(self.alphabet, {t: c * v for t, v in self._terms.items()})

    def __mul__(self, c) -> "Poly":
        return self.__rmul__(c)

    def _check_compatible(self, other: "Poly"):
        if self.alphabet != other.alphabet:
            raise PreconditionError("polynomials live over different alphabets")

    # -- leading data ------------------------------------------------------

    def leading_term(self) -> tuple[NTerm, Fraction]:
        if not self._terms:
            raise PreconditionError("zero polynomial has no leading term")
        best = None
        for t in self._terms:
            if best is None or cmp_wt(psi(t), psi(best), self.alphabet) == GREATER:
                best = t
        return best, self._terms[best]

    def leading(self) -> tuple[NWord, Fraction]:
        t, c = self.leading_term()
        return psi(t), c

    def leading_word(self) -> NWord:
        return self.leading()[0]

    def leading_coeff(self) -> Fraction:
        return self.leading()[1]

    def is_monic(self) -> bool:
        return bool(self._terms) and self.leading_coeff() == 1

    def make_monic(self) -> "Poly":
        _, c = self.leading()
        return (Fraction(1) / c) * self

    def sorted_terms(self):
        """Terms in descending leading-word order (deterministic print order)."""
        key = words.wt_sort_key(self.alphabet)
        return sorted(self._terms.items(), key=lambda tc: key(psi(tc[0])), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def scale(c, p: Poly) -> Poly:
    return Fraction(c) * p


def leading(p: Poly) -> tuple[NWord, Fraction]:
    return p.leading()


def make_monic(p: Poly) -> Poly:
    return p.make_monic()


# ---------------------------------------------------------------------------
# bracket and operator


def _merge(acc: dict, items, factor: Fraction):
    for t, c in items:
        s = acc.get(t, Fraction(0)) + factor * c
        if s:
            acc[t] = s
        else:
            acc.pop(t, None)


@functools.lru_cache(maxsize=None)
def _bracket_basis(a: NTerm, b: NTerm, alphabet: Alphabet) -> tuple:
    """Bracket of two basis terms, straightened; returned as item pairs.

    Orientation by antisymmetry, then either the pair is already an LS
    term or the Jacobi identity [[a1,a2],b] = [[a1,b],a2] + [a1,[a2,b]]
    pushes the right factor inward until the standard-factorization
    condition holds.
    """
    wa, wb = psi(a), psi(b)
    c = cmp_lex(wa, wb, alphabet)
    if c == EQUAL:
        return ()
    if c == LESS:
        return tuple((t, -v) for t, v in _bracket_basis(b, a, alphabet))
    if not isinstance(a, Pair) or cmp_lex(psi(a.right), wb, alphabet) != GREATER:
        return ((Pair(a, b), Fraction(1)),)
    acc: dict = {}
    inner = _bracket_basis(a.left, b, alphabet)
    for t, v in inner:
        _merge(acc, _bracket_basis(t, a.right, alphabet), v)
    inner = _bracket_basis(a.right, b, alphabet)
    for t, v in inner:
        _merge(acc, _bracket_basis(a.left, t, alphabet), v)
    return tuple(acc.items())


def bracket(p: Poly, q: Poly) -> Poly:
    """Lie bracket, bilinear, with the result in the LS basis."""
    p._check_compatible(q)
    acc: dict = {}
    for ta, ca in p.items():
        for tb, cb in q.items():
            _merge(acc, _bracket_basis(ta, tb, p.alphabet), ca * cb)
    return Poly(p.alphabet, acc)


def apply_op(p: Poly) -> Poly:
    """The operator, extended linearly; maps a basis term T to N(T)."""
    return Poly(p.alphabet, {OpNode(t): c for t, c in p.items()})


def rewrite_to_basis(t: NTerm, alphabet: Alphabet) -> Poly:
    """Straighten an arbitrary bracketed term into the LS basis."""
    if isinstance(t, Leaf):
        return Poly.letter(alphabet, t.name)
    if isinstance(t, OpNode):
        return apply_op(rewrite_to_basis(t.body, alphabet))
    if isinstance(t, Pair):
        return bracket(rewrite_to_basis(t.left, alphabet),
                       rewrite_to_basis(t.right, alphabet))
    raise PreconditionError(f"cannot rewrite {t!r}")


# ---------------------------------------------------------------------------
# text form


def term_to_text(t: NTerm) -> str:
    """Canonical bracket notation, e.g. ``[x,[x,y]]`` or ``N([x,y])``."""
    if isinstance(t, Leaf):
        return t.name
    if isinstance(t, OpNode):
        return f"N({term_to_text(t.body)})"
    if isinstance(t, Pair):
        return f"[{term_to_text(t.left)},{term_to_text(t.right)}]"
    return "*"


def format_poly(p: Poly) -> str:
    """Deterministic text form: descending terms, rational coefficients."""
    if p.is_zero():
        return "0"
    chunks = []
    for i, (t, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = term_to_text(t) if mag == 1 else f"{mag}*{term_to_text(t)}"
        if i == 0:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)
