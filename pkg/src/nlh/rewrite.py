"""Reduction modulo monic relation sets and the composition-diamond engine.

Star words carry a single placeholder; substituting a monic polynomial at
its leading-word occurrence yields a special normal s-word whose leading
word is the ambient word with coefficient one.  Reduction repeatedly
subtracts such s-words; intersection and inclusion compositions plus
bounded triviality checking give the Groebner-Shirshov verdict, and the
irreducible words form the quotient basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import words
from .errors import (NotLyndonError, OrderingConflictError, PreconditionError,
                     StepBudgetError)
from .freealg import Poly, apply_op, bracket, format_poly
from .words import (LESS, Alphabet, Hole, Letter, NTerm, NWord, Op, Pair,
                    bre, cmp_wt, deg, find_occurrences, is_ls_word, psi,
                    shirshov_bracket, word_to_text)

STAR_SYMBOL = "*"
STAR = Letter(STAR_SYMBOL)

DEFAULT_MAX_STEPS = 20000

STRATEGIES = ("greatest-first", "leftmost-first")


def star_count(u: NWord) -> int:
    total = 0
    for p in u.primes:
        if isinstance(p, Letter):
            total += p.name == STAR_SYMBOL
        else:
            total += star_count(p.body)
    return total


def is_star_word(u: NWord) -> bool:
    """A word over the alphabet extended by the placeholder, used once."""
    return star_count(u) == 1


def star_occurrence(u: NWord):
    """Position (path, index) of the single placeholder."""
    for i, p in enumerate(u.primes):
        if p == STAR:
            return ((), i)
        if isinstance(p, Op) and star_count(p.body):
            path, idx = star_occurrence(p.body)
            return ((i,) + path, idx)
    raise PreconditionError(f"{word_to_text(u)} has no placeholder")


def splice(pi: NWord, filler: NWord) -> tuple[NWord, tuple]:
    """Replace the placeholder with the filler's primes.

    Returns the spliced word together with the occurrence the filler
    occupies in it.
    """
    if not is_star_word(pi):
        raise PreconditionError(f"{word_to_text(pi)} must contain exactly one placeholder")
    path, idx = star_occurrence(pi)
    spliced = _splice_at(pi, path, idx, filler)
    return spliced, (path, idx, idx + bre(filler))


def _splice_at(u: NWord, path, idx, filler: NWord) -> NWord:
    if not path:
        return NWord(u.primes[:idx] + filler.primes + u.primes[idx + 1:])
    head = path[0]
    inner = _splice_at(u.primes[head].body, path[1:], idx, filler)
    return NWord(u.primes[:head] + (Op(inner),) + u.primes[head + 1:])


def occurrence_to_star(u: NWord, occ) -> NWord:
    """Replace the occurrence span with the placeholder prime."""
    path, i, j = occ
    words.subword_at(u, occ)  # validates the span
    return _collapse(u, path, i, j)


def _collapse(u: NWord, path, i, j) -> NWord:
    if not path:
        return NWord(u.primes[:i] + (STAR,) + u.primes[j:])
    head = path[0]
    inner = _collapse(u.primes[head].body, path[1:], i, j)
    return NWord(u.primes[:head] + (Op(inner),) + u.primes[head + 1:])


def _plug(skeleton: NTerm, p: Poly) -> Poly:
    """Multilinear expansion of a term skeleton with its hole set to p."""
    if isinstance(skeleton, Hole):
        return p
    if isinstance(skeleton, words.Leaf):
        return Poly.letter(p.alphabet, skeleton.name)
    if isinstance(skeleton, words.OpNode):
        return apply_op(_plug(skeleton.body, p))
    return bracket(_plug(skeleton.left, p), _plug(skeleton.right, p))


def star_substitute(pi: NWord, s: Poly) -> Poly:
    """Substitute a polynomial for the placeholder and straighten.

    The ambient word is bracketed by folding primes from the left at each
    nesting level, so ``x.*`` acts as the composition [x, *].
    """
    if s.is_zero():
        raise PreconditionError("cannot substitute the zero polynomial")
    skeleton = _left_fold_skeleton(pi, s.alphabet)
    return _plug(skeleton, s)


def _left_fold_skeleton(u: NWord, alphabet: Alphabet) -> NTerm:
    atoms = []
    for p in u.primes:
        if p == STAR:
            atoms.append(words.HOLE)
        elif isinstance(p, Letter):
            atoms.append(words.Leaf(p.name))
        else:
            atoms.append(words.OpNode(_left_fold_skeleton(p.body, alphabet)))
    t = atoms[0]
    for a in atoms[1:]:
        t = Pair(t, a)
    return t


def special_normal_sword(pi: NWord, f: Poly) -> Poly:
    """The s-word at pi bracketed so its leading word is pi at f's lead.

    Requires f monic and the spliced word Lyndon-Shirshov; the result has
    that word as its leading word with coefficient one, and equals a
    combination of s-words in f.
    """
    if f.is_zero() or not f.is_monic():
        raise PreconditionError("special normal s-words need a monic polynomial")
    alphabet = f.alphabet
    fbar = f.leading_word()
    ambient, occ = splice(pi, fbar)
    if not is_ls_word(ambient, alphabet):
        raise NotLyndonError(
            f"{word_to_text(ambient)} is not a Lyndon-Shirshov word")
    skeleton = words.bracket_with_hole(ambient, occ, alphabet)
    result = _plug(skeleton, f)
    lead, coeff = result.leading()
    if lead != ambient or coeff != 1:
        raise OrderingConflictError(
            f"s-word at {word_to_text(ambient)} has leading word "
            f"{word_to_text(lead)} with coefficient {coeff}; the prime order "
            f"does not support this relation set")
    return result


# ---------------------------------------------------------------------------
# relation sets


class RelationSet:
    """Named sequence of monic polynomials with LS leading words.

    May be empty (the free case) when the alphabet is supplied directly.
    """

    def __init__(self, items, alphabet: Alphabet | None = None):
        self._items = []
        for name, poly in items:
            if poly.is_zero():
                raise PreconditionError(f"relation {name} is zero")
            if not poly.is_monic():
                raise PreconditionError(f"relation {name} is not monic")
            if not is_ls_word(poly.leading_word(), poly.alphabet):
                raise PreconditionError(
                    f"relation {name} has a non-Lyndon-Shirshov leading word")
            self._items.append((name, poly))
        if self._items:
            alphabet = self._items[0][1].alphabet
        elif alphabet is None:
            raise PreconditionError("an empty relation set needs an alphabet")
        self.alphabet = alphabet
        for name, poly in self._items:
            if poly.alphabet != self.alphabet:
                raise PreconditionError(f"relation {name} uses a different alphabet")

    def __iter__(self):
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def names(self):
        return [name for name, _ in self._items]

    def get(self, name: str) -> Poly:
        for n, poly in self._items:
            if n == name:
                return poly
        raise KeyError(name)

    def leading_words(self):
        return [(name, poly.leading_word()) for name, poly in self._items]


# ---------------------------------------------------------------------------
# reduction


@dataclass
class ReductionStep:
    """One subtraction r -= coeff * [pi|_s]; the certificate re-expands to
    exactly the difference between input and normal form."""

    word: NWord
    pi: NWord
    relation: str
    coeff: Fraction
    sword: Poly


def _reducible_targets(p: Poly, relations: RelationSet):
    """Support words containing some relation's leading word, with the
    witnessing occurrences."""
    targets = []
    for t in p.support():
        word = psi(t)
        hits = []
        for name, rel in relations:
            for occ in find_occurrences(word, rel.leading_word()):
                hits.append((name, occ))
        if hits:
            targets.append((word, t, hits))
    return targets


def reduce_with_certificate(p: Poly, relations: RelationSet,
                            max_steps: int = DEFAULT_MAX_STEPS,
                            strategy: str = "greatest-first"):
    """Fully reduce p modulo the relations; return (normal form, steps).

    Each step eliminates one reducible support word by subtracting the
    matching special normal s-word.  The greatest-first strategy attacks
    the weight-greatest reducible word with the first relation and
    occurrence; leftmost-first attacks the weight-least word with the last
    occurrence and relation, exercising a genuinely different path.
    """
    if strategy not in STRATEGIES:
        raise PreconditionError(f"unknown strategy {strategy!r}")
    alphabet = p.alphabet
    r = p
    steps: list[ReductionStep] = []
    while True:
        targets = _reducible_targets(r, relations)
        if not targets:
            return r, steps
        if len(steps) >= max_steps:
            raise StepBudgetError(
                f"reduction exceeded {max_steps} steps; the relation set is "
                f"suspected non-terminating")
        key = words.wt_sort_key(alphabet)
        targets.sort(key=lambda item: key(item[0]))
        if strategy == "greatest-first":
            word, term, hits = targets[-1]
            name, occ = hits[0]
        else:
            word, term, hits = targets[0]
            name, occ = hits[-1]
        rel = relations.get(name)
        coeff = r.coeff(term)
        pi = occurrence_to_star(word, occ)
        sword = special_normal_sword(pi, rel)
        r = r - coeff * sword
        steps.append(ReductionStep(word, pi, name, coeff, sword))


def reduce(p: Poly, relations: RelationSet,
           max_steps: int = DEFAULT_MAX_STEPS,
           strategy: str = "greatest-first") -> Poly:
    """Normal form of p modulo the relations."""
    r, _ = reduce_with_certificate(p, relations, max_steps, strategy)
    return r


def is_reduced(p: Poly, relations: RelationSet) -> bool:
    return not _reducible_targets(p, relations)


def is_trivial_mod(h: Poly, relations: RelationSet, w: NWord,
                   max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """Bounded reduction test for triviality below the ambiguity word.

    Every support word of h must already sit strictly below w; reduction
    then only ever touches smaller words, so reaching zero produces a
    representation by s-words below w.
    """
    alphabet = h.alphabet
    for word in h.support_words():
        if cmp_wt(word, w, alphabet) != LESS:
            raise PreconditionError(
                f"support word {word_to_text(word)} is not below "
                f"{word_to_text(w)}")
    r, steps = reduce_with_certificate(h, relations, max_steps)
    for step in steps:
        assert cmp_wt(step.word, w, alphabet) == LESS
    return r.is_zero()


# ---------------------------------------------------------------------------
# compositions


def intersection_compositions(f: Poly, g: Poly):
    """Proper leading-word overlaps: f's suffix matches g's prefix.

    Yields (w, h) per overlap; containments are inclusion compositions and
    are not reported here.
    """
    alphabet = f.alphabet
    fbar, gbar = f.leading_word(), g.leading_word()
    out = []
    for k in range(1, min(bre(fbar), bre(gbar))):
        if fbar.primes[-k:] != gbar.primes[:k]:
            continue
        w = NWord(fbar.primes + gbar.primes[k:])
        if not bre(w) < bre(fbar) + bre(gbar):
            continue
        if not is_ls_word(w, alphabet):
            raise OrderingConflictError(
                f"overlap {word_to_text(w)} is not a Lyndon-Shirshov word")
        pi_f = NWord((STAR,) + gbar.primes[k:])
        pi_g = NWord(fbar.primes[:-k] + (STAR,))
        h = special_normal_sword(pi_f, f) - special_normal_sword(pi_g, g)
        out.append((w, h))
    return out


def inclusion_compositions(f: Poly, g: Poly):
    """Occurrences of g's leading word inside f's, including under the
    operator.  The full self-occurrence of a relation in itself is skipped
    as identically zero."""
    fbar, gbar = f.leading_word(), g.leading_word()
    out = []
    for occ in find_occurrences(fbar, gbar):
        pi = occurrence_to_star(fbar, occ)
        if f == g and pi == NWord((STAR,)):
            continue
        h = f - special_normal_sword(pi, g)
        out.append((fbar, h))
    return out


@dataclass
class CompositionRecord:
    kind: str
    left: str
    right: str
    word: NWord
    residual: Poly | None
    trivial: bool
    steps: int
    status: str = "ok"
    note: str = ""

    def to_dict(self):
        return {
            "kind": self.kind,
            "left": self.left,
            "right": self.right,
            "word": word_to_text(self.word),
            "residual": format_poly(self.residual) if self.residual is not None else None,
            "trivial": self.trivial,
            "steps": self.steps,
            "status": self.status,
            "note": self.note,
        }


@dataclass
class GsbReport:
    relations: list
    max_deg: int
    records: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(rec.trivial and rec.status == "ok" for rec in self.records)

    def to_dict(self):
        return {
            "verdict": "pass" if self.verdict else "fail",
            "max_deg": self.max_deg,
            "relations": [
                {"name": name, "leading": word_to_text(lead)}
                for name, lead in self.relations
            ],
            "compositions": [rec.to_dict() for rec in self.records],
        }


def gsb_check(relations: RelationSet, max_deg: int = 6,
              max_steps: int = DEFAULT_MAX_STEPS) -> GsbReport:
    """Check every composition with ambiguity word up to max_deg.

    The degree bound caps the evidence gathered; it is recorded in the
    report.  The verdict passes exactly when every residual is zero.
    """
    report = GsbReport(relations=relations.leading_words(), max_deg=max_deg)
    for name_f, f in relations:
        for name_g, g in relations:
            found = []
            for w, h in intersection_compositions(f, g):
                found.append(("intersection", w, h))
            for w, h in inclusion_compositions(f, g):
                found.append(("inclusion", w, h))
            for kind, w, h in found:
                if deg(w) > max_deg:
                    continue
                record = CompositionRecord(kind, name_f, name_g, w,
                                           None, False, 0)
                try:
                    r, steps = reduce_with_certificate(h, relations, max_steps)
                    record.residual = r
                    record.trivial = r.is_zero()
                    record.steps = len(steps)
                except StepBudgetError as exc:
                    record.status = "step-budget"
                    record.note = str(exc)
                except OrderingConflictError as exc:
                    record.status = "ordering-conflict"
                    record.note = str(exc)
                report.records.append(record)
    report.records.sort(key=lambda rec: (rec.kind, rec.left, rec.right,
                                         word_to_text(rec.word)))
    return report


# ---------------------------------------------------------------------------
# irreducible words


def irreducible(word: NWord, relations: RelationSet) -> bool:
    return not any(
        find_occurrences(word, lead) for _, lead in relations.leading_words())


def irr_basis(relations: RelationSet | None, alphabet: Alphabet,
              max_deg: int, allow_ops: bool = True) -> list[NTerm]:
    """Lyndon-Shirshov words free of every leading word, bracketed.

    With a Groebner-Shirshov relation set these are a linear basis of the
    quotient; returned in descending weight order.
    """
    out = []
    for word in words.enumerate_ls_nwords(alphabet, max_deg, allow_ops):
        if relations is None or irreducible(word, relations):
            out.append(shirshov_bracket(word, alphabet))
    return out
