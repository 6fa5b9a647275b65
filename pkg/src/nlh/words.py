"""Alphabets, operated words and terms, orderings, and Lyndon-Shirshov machinery.

Words are sequences of primes; a prime is either a letter or a single
application of the unary operator N to a word.  Terms are the bracketed
(non-associative) counterparts.  All orderings follow the "empty word
greatest" lexicographic convention, so a proper prefix compares greater
than its extensions.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import AlphabetError, NotLyndonError, PreconditionError

LESS, EQUAL, GREATER = -1, 0, 1

#: Known strategies for comparing a letter against an operator prime.
PRIME_ORDERS = ("erased-lex", "degree-first")

RESERVED_SYMBOLS = ("N", "*")


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of symbols, listed greatest first."""

    letters: tuple[str, ...]
    prime_order: str = "erased-lex"

    def __post_init__(self):
        if not self.letters:
            raise AlphabetError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise AlphabetError(f"duplicate symbols in alphabet: {self.letters}")
        for sym in self.letters:
            if sym in RESERVED_SYMBOLS:
                raise AlphabetError(f"symbol {sym!r} is reserved")
        if self.prime_order not in PRIME_ORDERS:
            raise AlphabetError(f"unknown prime order {self.prime_order!r}")

    def rank(self, symbol: str) -> int:
        """Position of ``symbol``; smaller rank means greater symbol."""
        try:
            return self.letters.index(symbol)
        except ValueError:
            raise AlphabetError(f"symbol {symbol!r} not in alphabet {self.letters}") from None

    def cmp_letters(self, a: str, b: str) -> int:
        ra, rb = self.rank(a), self.rank(b)
        if ra == rb:
            return EQUAL
        return GREATER if ra < rb else LESS

    def restrict(self, letters) -> "Alphabet":
        """Sub-alphabet keeping this alphabet's order and prime strategy."""
        kept = tuple(s for s in self.letters if s in set(letters))
        if len(kept) != len(set(letters)):
            missing = set(letters) - set(self.letters)
            raise AlphabetError(f"symbols {sorted(missing)} not in alphabet")
        return Alphabet(kept, self.prime_order)


@dataclass(frozen=True)
class Letter:
    name: str

    def __repr__(self):
        return f"Letter({self.name})"


@dataclass(frozen=True)
class Op:
    body: "NWord"

    def __repr__(self):
        return f"Op({self.body!r})"


Prime = Letter | Op


@dataclass(frozen=True)
class NWord:
    """Associative operated word: a nonempty sequence of primes."""

    primes: tuple[Prime, ...]

    def __post_init__(self):
        if not self.primes:
            raise ValueError("word must have at least one prime")

    def __repr__(self):
        return f"NWord({word_to_text(self)!r})"


def letter_word(name: str) -> NWord:
    return NWord((Letter(name),))


def op_word(u: NWord) -> NWord:
    """The single-prime word N(u)."""
    return NWord((Op(u),))


def concat(*words: NWord) -> NWord:
    primes = ()
    for w in words:
        primes = primes + w.primes
    return NWord(primes)


def bre(u: NWord) -> int:
    """Breadth: number of primes."""
    return len(u.primes)


@functools.lru_cache(maxsize=None)
def _prime_deg(p: Prime) -> int:
    if isinstance(p, Letter):
        return 1
    return 1 + deg(p.body)


@functools.lru_cache(maxsize=None)
def deg(u: NWord) -> int:
    """Degree: total number of letter occurrences plus operator applications."""
    return sum(_prime_deg(p) for p in u.primes)


@functools.lru_cache(maxsize=None)
def _prime_dep(p: Prime) -> int:
    if isinstance(p, Letter):
        return 0
    return 1 + dep(p.body)


def dep(u: NWord) -> int:
    """Depth: nesting level of operator applications."""
    return max(_prime_dep(p) for p in u.primes)


def wt(u: NWord) -> tuple[int, int, tuple[Prime, ...]]:
    """Weight tuple (degree, breadth, primes) driving the word order."""
    return (deg(u), bre(u), u.primes)


@functools.lru_cache(maxsize=None)
def _erasure(p: Prime) -> tuple[str, ...]:
    """Letter sequence left after erasing all operator applications."""
    if isinstance(p, Letter):
        return (p.name,)
    out = ()
    for q in p.body.primes:
        out = out + _erasure(q)
    return out


@functools.lru_cache(maxsize=None)
def _op_count(p: Prime) -> int:
    if isinstance(p, Letter):
        return 0
    return 1 + sum(_op_count(q) for q in p.body.primes)


def _cmp_letter_seq(a: tuple[str, ...], b: tuple[str, ...], alphabet: Alphabet) -> int:
    for x, y in zip(a, b):
        c = alphabet.cmp_letters(x, y)
        if c != EQUAL:
            return c
    if len(a) == len(b):
        return EQUAL
    # a proper prefix is greater than its extensions
    return GREATER if len(a) < len(b) else LESS


@functools.lru_cache(maxsize=None)
def prime_cmp(p: Prime, q: Prime, alphabet: Alphabet) -> int:
    """Total order on primes.

    Default strategy compares operator-erased letter sequences first, then
    the operator count, then (both operator primes) the bodies as words.
    Under it a letter x sits above N(y) exactly when x is above y, and
    N(x) sits directly above x.  The "degree-first" strategy instead lets
    the prime degree dominate, so every operator prime beats every letter.
    """
    if p == q:
        return EQUAL
    if alphabet.prime_order == "degree-first":
        dp, dq = _prime_deg(p), _prime_deg(q)
        if dp != dq:
            return GREATER if dp > dq else LESS
    c = _cmp_letter_seq(_erasure(p), _erasure(q), alphabet)
    if c != EQUAL:
        return c
    np_, nq = _op_count(p), _op_count(q)
    if np_ != nq:
        return GREATER if np_ > nq else LESS
    # equal erasure and operator count forces two operator primes
    return cmp_lex(p.body, q.body, alphabet)


@functools.lru_cache(maxsize=None)
def cmp_lex(u: NWord, v: NWord, alphabet: Alphabet) -> int:
    """Lexicographic order on words, a proper prefix being greater."""
    for p, q in zip(u.primes, v.primes):
        c = prime_cmp(p, q, alphabet)
        if c != EQUAL:
            return c
    if bre(u) == bre(v):
        return EQUAL
    return GREATER if bre(u) < bre(v) else LESS


def cmp_deglex(u: NWord, v: NWord, alphabet: Alphabet) -> int:
    """Degree first, then lexicographic."""
    du, dv = deg(u), deg(v)
    if du != dv:
        return GREATER if du > dv else LESS
    return cmp_lex(u, v, alphabet)


@functools.lru_cache(maxsize=None)
def cmp_wt(u: NWord, v: NWord, alphabet: Alphabet) -> int:
    """Weight order: degree, then breadth, then primes left to right."""
    du, dv = deg(u), deg(v)
    if du != dv:
        return GREATER if du > dv else LESS
    bu, bv = bre(u), bre(v)
    if bu != bv:
        return GREATER if bu > bv else LESS
    for p, q in zip(u.primes, v.primes):
        c = prime_cmp(p, q, alphabet)
        if c != EQUAL:
            return c
    return EQUAL


def wt_sort_key(alphabet: Alphabet):
    """Sort key realizing cmp_wt, for deterministic orderings."""
    return functools.cmp_to_key(lambda a, b: cmp_wt(a, b, alphabet))


@functools.lru_cache(maxsize=None)
def is_ls_word(u: NWord, alphabet: Alphabet) -> bool:
    """Lyndon-Shirshov test: strictly greater than every proper rotation,
    with every operator body recursively Lyndon-Shirshov."""
    for p in u.primes:
        if isinstance(p, Op) and not is_ls_word(p.body, alphabet):
            return False
    n = bre(u)
    if n == 1:
        return True
    for i in range(1, n):
        rot = NWord(u.primes[i:] + u.primes[:i])
        if cmp_lex(u, rot, alphabet) != GREATER:
            return False
    return True


@functools.lru_cache(maxsize=None)
def ls_factorize(u: NWord, alphabet: Alphabet) -> tuple[NWord, NWord]:
    """Standard factorization u = p.q with q the longest proper LS suffix."""
    if not is_ls_word(u, alphabet):
        raise NotLyndonError(f"{word_to_text(u)} is not a Lyndon-Shirshov word")
    n = bre(u)
    if n < 2:
        raise NotLyndonError(f"{word_to_text(u)} has a single prime; nothing to factor")
    for length in range(n - 1, 0, -1):
        q = NWord(u.primes[n - length:])
        if is_ls_word(q, alphabet):
            p = NWord(u.primes[: n - length])
            return p, q
    raise AssertionError("unreachable: the last prime is always an LS suffix")


@dataclass(frozen=True)
class Leaf:
    name: str

    def __repr__(self):
        return f"Leaf({self.name})"


@dataclass(frozen=True)
class OpNode:
    body: "NTerm"

    def __repr__(self):
        return f"OpNode({self.body!r})"


@dataclass(frozen=True)
class Pair:
    left: "NTerm"
    right: "NTerm"

    def __repr__(self):
        return f"Pair({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Hole:
    """Placeholder leaf used while building relative bracketings."""


NTerm = Leaf | OpNode | Pair
HOLE = Hole()


@functools.lru_cache(maxsize=None)
def psi(t: NTerm) -> NWord:
    """Bracket-forgetting map from terms to associative words."""
    if isinstance(t, Leaf):
        return letter_word(t.name)
    if isinstance(t, OpNode):
        return op_word(psi(t.body))
    if isinstance(t, Pair):
        return concat(psi(t.left), psi(t.right))
    raise PreconditionError("cannot erase a term containing a hole")


@functools.lru_cache(maxsize=None)
def shirshov_bracket(u: NWord, alphabet: Alphabet) -> NTerm:
    """The unique bracketing of a Lyndon-Shirshov word that is an LS term."""
    if not is_ls_word(u, alphabet):
        raise NotLyndonError(f"{word_to_text(u)} is not a Lyndon-Shirshov word")
    if bre(u) == 1:
        p = u.primes[0]
        if isinstance(p, Letter):
            return Leaf(p.name)
        return OpNode(shirshov_bracket(p.body, alphabet))
    left, right = ls_factorize(u, alphabet)
    return Pair(shirshov_bracket(left, alphabet), shirshov_bracket(right, alphabet))


@functools.lru_cache(maxsize=None)
def is_ls_term(t: NTerm, alphabet: Alphabet) -> bool:
    """Check the three structural Lyndon-Shirshov term conditions."""
    if isinstance(t, Leaf):
        try:
            alphabet.rank(t.name)
        except AlphabetError:
            return False
        return True
    if isinstance(t, OpNode):
        return is_ls_term(t.body, alphabet)
    if isinstance(t, Pair):
        if not (is_ls_term(t.left, alphabet) and is_ls_term(t.right, alphabet)):
            return False
        if not is_ls_word(psi(t), alphabet):
            return False
        if isinstance(t.left, Pair):
            if cmp_lex(psi(t.left.right), psi(t.right), alphabet) == GREATER:
                return False
        return True
    return False


def _ls_words_over_primes(prime_pool, max_deg: int, alphabet: Alphabet) -> set[NWord]:
    """All LS words of degree <= max_deg whose primes come from the pool.

    Uses the closure property: a multi-prime word is LS exactly when it
    splits as u.v with u, v LS and u lexicographically greater.
    """
    by_deg: dict[int, set[NWord]] = {d: set() for d in range(1, max_deg + 1)}
    for p in prime_pool:
        d = _prime_deg(p)
        if d <= max_deg:
            by_deg[d].add(NWord((p,)))
    for d in range(2, max_deg + 1):
        for d1 in range(1, d):
            for u in by_deg[d1]:
                for v in by_deg[d - d1]:
                    if cmp_lex(u, v, alphabet) == GREATER:
                        by_deg[d].add(concat(u, v))
    out: set[NWord] = set()
    for words in by_deg.values():
        out |= words
    return out


def enumerate_ls_nwords(alphabet: Alphabet, max_deg: int, allow_ops: bool = False) -> list[NWord]:
    """All Lyndon-Shirshov (operated, when allow_ops) words of degree <= max_deg.

    Returned in descending weight order.  The operator raises degree by
    one, so the stratified construction reaches a fixed point.
    """
    if max_deg < 1:
        raise PreconditionError("max_deg must be at least 1")
    letters = [Letter(s) for s in alphabet.letters]
    current = _ls_words_over_primes(letters, max_deg, alphabet)
    if allow_ops:
        while True:
            pool = list(letters) + [Op(w) for w in current if deg(w) + 1 <= max_deg]
            nxt = _ls_words_over_primes(pool, max_deg, alphabet)
            if nxt == current:
                break
            current = nxt
    return sorted(current, key=wt_sort_key(alphabet), reverse=True)


def unique_decomposition(u: NWord, alphabet: Alphabet) -> list[NWord]:
    """Factor a word into LS factors that weakly increase lexicographically.

    Duval's algorithm run with the comparisons flipped to match the
    prefix-greatest convention; the factorization is unique.
    """
    s = u.primes
    n = len(s)
    out = []
    k = 0
    while k < n:
        i, j = k, k + 1
        while j < n and prime_cmp(s[i], s[j], alphabet) != LESS:
            if prime_cmp(s[i], s[j], alphabet) == GREATER:
                i = k
            else:
                i += 1
            j += 1
        while k <= i:
            out.append(NWord(s[k:k + j - i]))
            k += j - i
    return out


# ---------------------------------------------------------------------------
# occurrences and relative bracketing


def find_occurrences(u: NWord, v: NWord) -> list[tuple[tuple[int, ...], int, int]]:
    """All occurrences of v in u as a contiguous prime run at one nesting level.

    Each occurrence is (path, start, end): path descends through operator
    primes by index, and u-at-path.primes[start:end] equals v.primes.
    Ordered outermost first, then left to right.
    """
    out = []
    k = len(v.primes)
    for i in range(len(u.primes) - k + 1):
        if u.primes[i:i + k] == v.primes:
            out.append(((), i, i + k))
    for idx, p in enumerate(u.primes):
        if isinstance(p, Op):
            for path, i, j in find_occurrences(p.body, v):
                out.append(((idx,) + path, i, j))
    return out


def subword_at(u: NWord, occ) -> NWord:
    path, i, j = occ
    cur = u
    for idx in path:
        p = cur.primes[idx]
        if not isinstance(p, Op):
            raise PreconditionError("occurrence path descends into a letter")
        cur = p.body
    if not (0 <= i < j <= len(cur.primes)):
        raise PreconditionError(f"occurrence span {(i, j)} out of range")
    return NWord(cur.primes[i:j])


def _prime_term(p: Prime, alphabet: Alphabet) -> NTerm:
    if isinstance(p, Letter):
        return Leaf(p.name)
    return OpNode(shirshov_bracket(p.body, alphabet))


def _fold_left(atoms: list[NTerm]) -> NTerm:
    t = atoms[0]
    for a in atoms[1:]:
        t = Pair(t, a)
    return t


def _all_bracketings(atoms: tuple[NTerm, ...]):
    if len(atoms) == 1:
        yield atoms[0]
        return
    for split in range(1, len(atoms)):
        for left in _all_bracketings(atoms[:split]):
            for right in _all_bracketings(atoms[split:]):
                yield Pair(left, right)


def fill_hole(t: NTerm, replacement: NTerm) -> NTerm:
    if isinstance(t, Hole):
        return replacement
    if isinstance(t, OpNode):
        return OpNode(fill_hole(t.body, replacement))
    if isinstance(t, Pair):
        return Pair(fill_hole(t.left, replacement), fill_hole(t.right, replacement))
    return t


def _expansion_ok(skeleton: NTerm, u: NWord, v: NWord, alphabet: Alphabet) -> bool:
    """Check the relative-bracketing contract: plugging [v] into the hole
    expands to [u] plus strictly smaller words, with leading coefficient 1."""
    from . import freealg  # deferred: freealg sits above this module

    candidate = fill_hole(skeleton, shirshov_bracket(v, alphabet))
    poly = freealg.rewrite_to_basis(candidate, alphabet)
    if poly.is_zero():
        return False
    lead, coeff = poly.leading()
    return lead == u and coeff == 1


@functools.lru_cache(maxsize=None)
def bracket_with_hole(u: NWord, occ, alphabet: Alphabet) -> NTerm:
    """A bracketing of u isolating the LS subword at occ behind a hole.

    The returned term contains exactly one Hole leaf standing for the
    bracketed occurrence; filling it with the standard bracketing of the
    subword expands to [u] plus strictly smaller words.
    """
    if not is_ls_word(u, alphabet):
        raise NotLyndonError(f"{word_to_text(u)} is not a Lyndon-Shirshov word")
    v = subword_at(u, occ)
    if not is_ls_word(v, alphabet):
        raise NotLyndonError(f"occurrence {word_to_text(v)} is not a Lyndon-Shirshov word")
    skeleton = _hole_skeleton(u, occ, alphabet)
    if not _expansion_ok(skeleton, u, v, alphabet):
        raise NotLyndonError(
            f"no bracketing of {word_to_text(u)} isolates {word_to_text(v)} "
            f"at {occ} with the required leading word"
        )
    return skeleton


def _hole_skeleton(u: NWord, occ, alphabet: Alphabet) -> NTerm:
    path, i, j = occ
    if path:
        # descend into the operator prime holding the occurrence
        return _skeleton_prime_replaced(u, path[0], (path[1:], i, j), alphabet)
    return _toplevel_skeleton(u, i, j, alphabet)


def _skeleton_prime_replaced(u: NWord, idx: int, inner_occ, alphabet: Alphabet) -> NTerm:
    """Standard bracketing of u with prime idx's body bracketed around the
    inner occurrence instead of the standard way."""
    def build(word: NWord, offset: int) -> NTerm:
        if bre(word) == 1:
            p = word.primes[0]
            if offset == idx:
                body = _hole_skeleton(p.body, inner_occ, alphabet)
                return OpNode(body)
            return _prime_term(p, alphabet)
        left, right = ls_factorize(word, alphabet)
        return Pair(build(left, offset), build(right, offset + bre(left)))

    return build(u, 0)


def _toplevel_skeleton(u: NWord, i: int, j: int, alphabet: Alphabet) -> NTerm:
    n = bre(u)
    if i == 0 and j == n:
        return HOLE
    left, right = ls_factorize(u, alphabet)
    m = bre(left)
    if j <= m:
        return Pair(_toplevel_skeleton(left, i, j, alphabet),
                    shirshov_bracket(right, alphabet))
    if i >= m:
        return Pair(shirshov_bracket(left, alphabet),
                    _toplevel_skeleton(right, i - m, j - m, alphabet))
    # the occurrence straddles the standard split: search bracketings of
    # (prefix primes, hole, suffix primes) for one meeting the contract
    v = NWord(u.primes[i:j])
    atoms = tuple(
        [_prime_term(p, alphabet) for p in u.primes[:i]]
        + [HOLE]
        + [_prime_term(p, alphabet) for p in u.primes[j:]]
    )
    for candidate in _all_bracketings(atoms):
        if _expansion_ok(candidate, u, v, alphabet):
            return candidate
    raise NotLyndonError(
        f"no bracketing of {word_to_text(u)} isolates positions {i}:{j}"
    )


def relative_bracket(u: NWord, occ, alphabet: Alphabet) -> NTerm:
    """Bracketing of u around an occurrence of an LS subword.

    The expansion of the result in the free algebra has leading word u
    with coefficient one, and the standard bracketing of the occurrence
    appears verbatim as a subterm.
    """
    v = subword_at(u, occ)
    skeleton = bracket_with_hole(u, occ, alphabet)
    return fill_hole(skeleton, shirshov_bracket(v, alphabet))


# ---------------------------------------------------------------------------
# canonical text form


def word_to_text(u: NWord) -> str:
    """Serialize to the canonical dotted form, e.g. ``x.N(x.y).y``."""
    return ".".join(_prime_text(p) for p in u.primes)


def _prime_text(p: Prime) -> str:
    if isinstance(p, Letter):
        return p.name
    return f"N({word_to_text(p.body)})"


def word_from_text(text: str, alphabet: Alphabet | None = None) -> NWord:
    """Parse the canonical dotted form back into a word (exact round trip)."""
    s = text.strip()
    if not s:
        raise AlphabetError("empty word text")
    primes, pos = _parse_primes(s, 0)
    if pos != len(s):
        raise AlphabetError(f"trailing characters in word text: {s[pos:]!r}")
    word = NWord(tuple(primes))
    if alphabet is not None:
        _check_symbols(word, alphabet)
    return word


def _parse_primes(s: str, pos: int):
    primes = []
    while True:
        prime, pos = _parse_prime(s, pos)
        primes.append(prime)
        if pos < len(s) and s[pos] == ".":
            pos += 1
            continue
        return primes, pos


def _parse_prime(s: str, pos: int):
    if s.startswith("N(", pos):
        body, pos = _parse_primes(s, pos + 2)
        if pos >= len(s) or s[pos] != ")":
            raise AlphabetError(f"unbalanced N( in word text at {pos}")
        return Op(NWord(tuple(body))), pos + 1
    start = pos
    while pos < len(s) and (s[pos].isalnum() or s[pos] == "_"):
        pos += 1
    if pos == start:
        raise AlphabetError(f"expected a symbol in word text at {start}")
    return Letter(s[start:pos]), pos


def _check_symbols(u: NWord, alphabet: Alphabet):
    for p in u.primes:
        if isinstance(p, Letter):
            alphabet.rank(p.name)
        else:
            _check_symbols(p.body, alphabet)
