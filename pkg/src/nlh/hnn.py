"""Finite-dimensional Nijenhuis Lie algebras given by structure constants:
validation of all coordinate identities, generation of the extension
relation families, and the executable normal-form and embedding checks.

An algebra is described by an ordered basis X, bracket constants for each
descending pair of basis letters, the operator matrix, a distinguished
subalgebra basis Y, and a derivation given on Y.  Adjoining a fresh top
letter t acting on the subalgebra through the derivation yields a monic
relation set whose reduction behaviour realizes the normal-form and
embedding statements at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import rewrite, words
from .errors import OrderingConflictError, PreconditionError, SpecInvalidError
from .freealg import Poly, apply_op, bracket, format_poly
from .rewrite import RelationSet, GsbReport
from .words import Alphabet, NWord, word_to_text

T_SYMBOL = "t"

Coord = dict  # symbol -> Fraction, zero entries omitted


def _czip(*coords):
    keys = set()
    for c in coords:
        keys |= c.keys()
    return sorted(keys)


def coord_add(a: Coord, b: Coord) -> Coord:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, Fraction(0)) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def coord_scale(c, a: Coord) -> Coord:
    c = Fraction(c)
    if c == 0:
        return {}
    return {k: c * v for k, v in a.items()}


def coord_sub(a: Coord, b: Coord) -> Coord:
    return coord_add(a, coord_scale(-1, b))


def coord_text(a: Coord, letters) -> str:
    if not a:
        return "0"
    chunks = []
    for k in letters:
        if k in a:
            chunks.append(f"{a[k]}*{k}")
    return " + ".join(chunks)


class DerivationDomainError(PreconditionError):
    """The derivation was evaluated at a vector outside the subalgebra span."""

    def __init__(self, symbol):
        super().__init__(
            f"derivation is only given on the subalgebra; needed at {symbol!r}")
        self.symbol = symbol


@dataclass(frozen=True)
class AlgebraSpec:
    """Structure constants of a finite-dimensional operated Lie algebra.

    ``alpha`` holds bracket coordinates keyed by descending letter pairs,
    ``nij`` the operator columns, ``sub`` the subalgebra basis letters and
    ``der`` the derivation columns on the subalgebra.
    """

    letters: tuple[str, ...]
    alpha: dict
    nij: dict
    sub: tuple[str, ...]
    der: dict
    name: str = ""

    def __post_init__(self):
        alphabet = Alphabet(self.letters)
        if T_SYMBOL in self.letters:
            raise PreconditionError(f"{T_SYMBOL!r} is reserved for the extension letter")
        for (x, y), coord in self.alpha.items():
            if alphabet.cmp_letters(x, y) != words.GREATER:
                raise PreconditionError(
                    f"bracket constants must be keyed by descending pairs, got ({x},{y})")
            for v in coord:
                alphabet.rank(v)
        for x, coord in self.nij.items():
            alphabet.rank(x)
            for v in coord:
                alphabet.rank(v)
        for a in self.sub:
            alphabet.rank(a)
        for a, coord in self.der.items():
            if a not in self.sub:
                raise PreconditionError(
                    f"derivation given at {a!r} outside the subalgebra basis")
            for v in coord:
                alphabet.rank(v)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.letters)

    # -- coordinate evaluation -------------------------------------------

    def bracket_letters(self, x: str, y: str) -> Coord:
        """[x, y] in coordinates, using antisymmetry for ascending pairs."""
        c = self.alphabet.cmp_letters(x, y)
        if c == words.EQUAL:
            return {}
        if c == words.GREATER:
            return dict(self.alpha.get((x, y), {}))
        return coord_scale(-1, self.alpha.get((y, x), {}))

    def bracket_vec(self, u: Coord, v: Coord) -> Coord:
        out: Coord = {}
        for x, cx in u.items():
            for y, cy in v.items():
                out = coord_add(out, coord_scale(cx * cy, self.bracket_letters(x, y)))
        return out

    def n_letter(self, x: str) -> Coord:
        return dict(self.nij.get(x, {}))

    def n_vec(self, u: Coord) -> Coord:
        out: Coord = {}
        for x, cx in u.items():
            out = coord_add(out, coord_scale(cx, self.n_letter(x)))
        return out

    def d_letter(self, a: str) -> Coord:
        if a not in self.sub:
            raise DerivationDomainError(a)
        return dict(self.der.get(a, {}))

    def d_vec(self, u: Coord) -> Coord:
        out: Coord = {}
        for a, ca in u.items():
            out = coord_add(out, coord_scale(ca, self.d_letter(a)))
        return out

    def in_sub_span(self, u: Coord) -> bool:
        return all(k in self.sub for k in u)

    def descending_pairs(self):
        for i, x in enumerate(self.letters):
            for y in self.letters[i + 1:]:
                yield x, y

    def descending_triples(self):
        n = len(self.letters)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    yield self.letters[i], self.letters[j], self.letters[k]

    def sub_pairs(self):
        subs = [s for s in self.letters if s in self.sub]
        for i, a in enumerate(subs):
            for b in subs[i + 1:]:
                yield a, b


# ---------------------------------------------------------------------------
# validators


@dataclass
class ValidationItem:
    ok: bool
    context: str
    detail: str = ""

    def to_dict(self):
        return {"ok": self.ok, "context": self.context, "detail": self.detail}


@dataclass
class ValidationReport:
    check: str
    items: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def violations(self):
        return [item for item in self.items if not item.ok]

    def add(self, ok: bool, context: str, detail: str = ""):
        self.items.append(ValidationItem(ok, context, detail))

    def to_dict(self):
        return {
            "check": self.check,
            "ok": self.ok,
            "violations": [item.to_dict() for item in self.violations()],
            "checked": len(self.items),
        }


def validate_lie(spec: AlgebraSpec) -> ValidationReport:
    """Jacobi identity on every descending basis triple, in coordinates."""
    report = ValidationReport("lie")
    for x, y, z in spec.descending_triples():
        total = coord_add(
            coord_add(
                spec.bracket_vec(spec.bracket_letters(x, y), {z: Fraction(1)}),
                spec.bracket_vec(spec.bracket_letters(y, z), {x: Fraction(1)})),
            spec.bracket_vec(spec.bracket_letters(z, x), {y: Fraction(1)}))
        report.add(not total, f"jacobi({x},{y},{z})",
                   "" if not total else f"residual {coord_text(total, spec.letters)}")
    if not any(True for _ in spec.descending_triples()):
        report.add(True, "jacobi(vacuous)")
    return report


def validate_nijenhuis(spec: AlgebraSpec) -> ValidationReport:
    """[N(x),N(y)] = N([N(x),y] + [x,N(y)] - N([x,y])) on basis pairs."""
    report = ValidationReport("nijenhuis")
    for x, y in spec.descending_pairs():
        xs, ys = {x: Fraction(1)}, {y: Fraction(1)}
        lhs = spec.bracket_vec(spec.n_vec(xs), spec.n_vec(ys))
        inner = coord_sub(
            coord_add(spec.bracket_vec(spec.n_vec(xs), ys),
                      spec.bracket_vec(xs, spec.n_vec(ys))),
            spec.n_vec(spec.bracket_letters(x, y)))
        rhs = spec.n_vec(inner)
        diff = coord_sub(lhs, rhs)
        report.add(not diff, f"nijenhuis({x},{y})",
                   "" if not diff else f"residual {coord_text(diff, spec.letters)}")
    if not report.items:
        report.add(True, "nijenhuis(vacuous)")
    return report


def validate_subalgebra(spec: AlgebraSpec) -> ValidationReport:
    """Bracket closure of the subalgebra and its operator invariance."""
    report = ValidationReport("subalgebra")
    for a, b in spec.sub_pairs():
        coord = spec.bracket_letters(a, b)
        ok = spec.in_sub_span(coord)
        report.add(ok, f"bracket-closure({a},{b})",
                   "" if ok else f"[{a},{b}] = {coord_text(coord, spec.letters)} leaves the span")
    for a in spec.sub:
        coord = spec.n_letter(a)
        ok = spec.in_sub_span(coord)
        report.add(ok, f"operator-closure({a})",
                   "" if ok else f"N({a}) = {coord_text(coord, spec.letters)} leaves the span")
    if not report.items:
        report.add(True, "subalgebra(vacuous)")
    return report


def _derivation_identity(report, spec, context, lhs_fn, rhs_fn):
    try:
        diff = coord_sub(lhs_fn(), rhs_fn())
    except DerivationDomainError as exc:
        report.add(False, context, str(exc))
        return
    report.add(not diff, context,
               "" if not diff else f"residual {coord_text(diff, spec.letters)}")


def validate_derivation(spec: AlgebraSpec) -> ValidationReport:
    """Leibniz rule on subalgebra pairs, the same rule on operator images,
    and commutation with the operator, all in coordinates.

    Evaluating the derivation outside the subalgebra span is reported as
    its own diagnostic rather than a numeric mismatch.
    """
    report = ValidationReport("derivation")
    for a, b in spec.sub_pairs():
        av, bv = {a: Fraction(1)}, {b: Fraction(1)}
        _derivation_identity(
            report, spec, f"leibniz({a},{b})",
            lambda a=a, b=b: spec.d_vec(spec.bracket_letters(a, b)),
            lambda av=av, bv=bv: coord_add(
                spec.bracket_vec(spec.d_vec(av), bv),
                spec.bracket_vec(av, spec.d_vec(bv))))
        _derivation_identity(
            report, spec, f"leibniz-op({a},{b})",
            lambda av=av, bv=bv: spec.d_vec(
                spec.bracket_vec(spec.n_vec(av), spec.n_vec(bv))),
            lambda av=av, bv=bv: coord_add(
                spec.bracket_vec(spec.d_vec(spec.n_vec(av)), spec.n_vec(bv)),
                spec.bracket_vec(spec.n_vec(av), spec.d_vec(spec.n_vec(bv)))))
    for a in spec.sub:
        av = {a: Fraction(1)}
        _derivation_identity(
            report, spec, f"operator-commute({a})",
            lambda av=av: spec.d_vec(spec.n_vec(av)),
            lambda av=av: spec.n_vec(spec.d_vec(av)))
    if not report.items:
        report.add(True, "derivation(vacuous)")
    return report


def validate_all(spec: AlgebraSpec) -> list[ValidationReport]:
    return [validate_lie(spec), validate_nijenhuis(spec),
            validate_subalgebra(spec), validate_derivation(spec)]


# ---------------------------------------------------------------------------
# relation families


@dataclass
class HnnPresentation:
    spec: AlgebraSpec
    alphabet: Alphabet
    relations: RelationSet
    include_nt: bool

    def strict_relations(self) -> RelationSet:
        """Relation families on the base letters and t only, without the
        extension letter's own operator value."""
        return RelationSet([(n, p) for n, p in self.relations if n != "nt"],
                           alphabet=self.alphabet)

    def to_dict(self):
        return {
            "alphabet": list(self.alphabet.letters),
            "include_nt": self.include_nt,
            "relations": [
                {"name": name, "poly": format_poly(poly),
                 "leading": word_to_text(poly.leading_word())}
                for name, poly in self.relations
            ],
        }


def _coord_poly(alphabet: Alphabet, coord: Coord) -> Poly:
    p = Poly.zero(alphabet)
    for sym in alphabet.letters:
        if sym in coord:
            p = p + coord[sym] * Poly.letter(alphabet, sym)
    return p


def _expect_leading(name: str, poly: Poly, expected: NWord):
    got = poly.leading_word()
    if got != expected:
        raise OrderingConflictError(
            f"relation {name} has leading word {word_to_text(got)}, "
            f"expected {word_to_text(expected)}; check the basis order")


def build_relations(spec: AlgebraSpec, include_nt: bool = True) -> HnnPresentation:
    """Emit the five relation families of the extension, each monic.

    Brackets of descending letter pairs, of a letter with an operator
    wrap, and of two operator wraps reduce to their structure-constant
    values; the extension letter t acts on the subalgebra through the
    derivation, directly and through the operator.  With include_nt the
    operator's value on t itself is pinned to t.
    """
    reports = validate_all(spec)
    bad = [r for r in reports if not r.ok]
    if bad:
        raise SpecInvalidError(
            "structure constants failed validation: "
            + ", ".join(r.check for r in bad), reports)
    alphabet = Alphabet((T_SYMBOL,) + spec.letters)
    t = Poly.letter(alphabet, T_SYMBOL)
    lett = {s: Poly.letter(alphabet, s) for s in spec.letters}
    nwrap = {s: apply_op(lett[s]) for s in spec.letters}
    t_word = words.letter_word(T_SYMBOL)

    items = []
    for x, y in spec.descending_pairs():
        poly = bracket(lett[x], lett[y]) - _coord_poly(alphabet, spec.bracket_letters(x, y))
        _expect_leading(f"f({x},{y})", poly,
                        words.concat(words.letter_word(x), words.letter_word(y)))
        items.append((f"f({x},{y})", poly.make_monic()))
    for x, y in spec.descending_pairs():
        tail = spec.bracket_vec({x: Fraction(1)}, spec.n_letter(y))
        poly = bracket(lett[x], nwrap[y]) - _coord_poly(alphabet, tail)
        _expect_leading(f"fN({x},{y})", poly,
                        words.concat(words.letter_word(x), words.op_word(words.letter_word(y))))
        items.append((f"fN({x},{y})", poly.make_monic()))
    for x, y in spec.descending_pairs():
        tail = spec.bracket_vec(spec.n_letter(x), spec.n_letter(y))
        poly = bracket(nwrap[x], nwrap[y]) - _coord_poly(alphabet, tail)
        _expect_leading(f"hN({x},{y})", poly,
                        words.concat(words.op_word(words.letter_word(x)),
                                     words.op_word(words.letter_word(y))))
        items.append((f"hN({x},{y})", poly.make_monic()))
    for a in spec.letters:
        if a not in spec.sub:
            continue
        poly = bracket(t, lett[a]) - _coord_poly(alphabet, spec.d_letter(a))
        _expect_leading(f"g({a})", poly,
                        words.concat(t_word, words.letter_word(a)))
        items.append((f"g({a})", poly.make_monic()))
    for a in spec.letters:
        if a not in spec.sub:
            continue
        tail = spec.d_vec(spec.n_letter(a))
        poly = bracket(t, nwrap[a]) - _coord_poly(alphabet, tail)
        _expect_leading(f"gN({a})", poly,
                        words.concat(t_word, words.op_word(words.letter_word(a))))
        items.append((f"gN({a})", poly.make_monic()))
    if include_nt:
        poly = apply_op(t) - t
        _expect_leading("nt", poly, words.op_word(t_word))
        items.append(("nt", poly.make_monic()))
    return HnnPresentation(spec, alphabet, RelationSet(items, alphabet=alphabet),
                           include_nt)


# ---------------------------------------------------------------------------
# the executable statements


def hnn_gsb_check(pres: HnnPresentation, max_deg: int = 6) -> GsbReport:
    """Composition check of the generated relation set."""
    return rewrite.gsb_check(pres.relations, max_deg)


def normal_form(expr: Poly, pres: HnnPresentation,
                strategy: str = "greatest-first") -> Poly:
    """Reduce an element of the extension to its normal form."""
    return rewrite.reduce(expr, pres.relations, strategy=strategy)


@dataclass
class EmbeddingReport:
    entries: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(fixed for _, _, fixed in self.entries)

    def to_dict(self):
        return {
            "verdict": "pass" if self.verdict else "fail",
            "basis": [
                {"generator": g, "normal_form": nf, "fixed": fixed}
                for g, nf, fixed in self.entries
            ],
        }


def embedding_check(pres: HnnPresentation) -> EmbeddingReport:
    """Every base letter must be its own normal form, so the base algebra's
    coordinate space maps injectively onto part of the quotient basis."""
    report = EmbeddingReport()
    for sym in pres.spec.letters:
        p = Poly.letter(pres.alphabet, sym)
        nf = normal_form(p, pres)
        report.entries.append((sym, format_poly(nf), nf == p))
    return report


@dataclass
class FreeSubReport:
    generator: str
    max_deg: int
    checked: int = 0
    reducible: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.reducible

    def to_dict(self):
        return {
            "verdict": "pass" if self.verdict else "fail",
            "generator": self.generator,
            "max_deg": self.max_deg,
            "words_checked": self.checked,
            "reducible": list(self.reducible),
        }


def free_subalgebra_check(pres: HnnPresentation, gen: str,
                          max_deg: int) -> FreeSubReport:
    """All operated LS words on {t, gen} must be irreducible, witnessing
    that t, gen and N(gen) generate freely.

    Checked against the five relation families; the optional operator
    value on t is excluded, matching the word-pattern normal form.
    """
    pres.spec.alphabet.rank(gen)
    if gen in pres.spec.sub:
        raise PreconditionError(
            f"{gen!r} lies in the subalgebra; t.{gen} is reducible by design")
    relations = pres.strict_relations()
    sub_alphabet = pres.alphabet.restrict((T_SYMBOL, gen))
    report = FreeSubReport(gen, max_deg)
    for word in words.enumerate_ls_nwords(sub_alphabet, max_deg, allow_ops=True):
        report.checked += 1
        if not rewrite.irreducible(word, relations):
            report.reducible.append(word_to_text(word))
    return report


def family_lead_patterns(spec: AlgebraSpec) -> list[NWord]:
    """The two-prime leading-word patterns of the five relation families,
    used by the independent normal-form cross-check."""
    pats = []
    lw, ow = words.letter_word, words.op_word
    t_word = lw(T_SYMBOL)
    for x, y in spec.descending_pairs():
        pats.append(words.concat(lw(x), lw(y)))
        pats.append(words.concat(lw(x), ow(lw(y))))
        pats.append(words.concat(ow(lw(x)), ow(lw(y))))
    for a in spec.letters:
        if a in spec.sub:
            pats.append(words.concat(t_word, lw(a)))
            pats.append(words.concat(t_word, ow(lw(a))))
    return pats
