import random
from fractions import Fraction

import pytest

from nlh import freealg as F
from nlh import rewrite as R
from nlh import words as W
from nlh.errors import (NotLyndonError, OrderingConflictError,
                        PreconditionError, StepBudgetError)
from oracles import random_poly

A2 = W.Alphabet(("x", "y"))
A3 = W.Alphabet(("t", "x", "y"))


def lw(text, alphabet=A2):
    return W.word_from_text(text, alphabet)


def term(text, alphabet=A2):
    return F.Poly.term(alphabet, W.shirshov_bracket(lw(text, alphabet), alphabet))


@pytest.fixture
def f_xy():
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    return F.bracket(x, y) - y


@pytest.fixture
def rel_set(f_xy):
    return R.RelationSet([("f(x,y)", f_xy)])


def test_star_word_checks():
    pi = W.NWord((W.Letter("x"), R.STAR))
    assert R.is_star_word(pi)
    assert not R.is_star_word(lw("x.y"))
    assert R.star_occurrence(pi) == ((), 1)
    nested = W.op_word(W.NWord((R.STAR,)))
    assert R.star_occurrence(nested) == ((0,), 0)


def test_splice():
    pi = W.NWord((W.Letter("x"), R.STAR))
    spliced, occ = R.splice(pi, lw("x.y"))
    assert W.word_to_text(spliced) == "x.x.y"
    assert occ == ((), 1, 3)
    nested = W.NWord((W.Letter("x"), W.Op(W.NWord((R.STAR,)))))
    spliced, occ = R.splice(nested, lw("x.y"))
    assert W.word_to_text(spliced) == "x.N(x.y)"
    assert occ == ((1,), 0, 2)


def test_star_substitute_trivials(f_xy):
    star = W.NWord((R.STAR,))
    assert R.star_substitute(star, f_xy) == f_xy
    pi = W.NWord((W.Letter("x"), R.STAR))
    y = F.Poly.letter(A2, "y")
    assert R.star_substitute(pi, y) == term("x.y")
    x = F.Poly.letter(A2, "x")
    got = R.star_substitute(W.op_word(star), x + y)
    assert got == term("N(x)") + term("N(y)")


def test_snw_identity_and_leading(f_xy):
    star = W.NWord((R.STAR,))
    assert R.special_normal_sword(star, f_xy) == f_xy
    pi = W.NWord((W.Letter("x"), R.STAR))
    snw = R.special_normal_sword(pi, f_xy)
    lead, coeff = snw.leading()
    assert (W.word_to_text(lead), coeff) == ("x.x.y", 1)


def test_snw_with_top_letter():
    x, y, t = (F.Poly.letter(A3, s) for s in "xyt")
    f = F.bracket(x, y) - y
    pi = W.NWord((W.Letter("t"), R.STAR))
    snw = R.special_normal_sword(pi, f)
    assert W.word_to_text(snw.leading()[0]) == "t.x.y"
    assert snw.leading()[1] == 1


def test_snw_requires_monic(f_xy):
    with pytest.raises(PreconditionError):
        R.special_normal_sword(W.NWord((R.STAR,)), 2 * f_xy)


def test_snw_rejects_non_ls_ambient(f_xy):
    # y.* splices to y.x.y which is not Lyndon-Shirshov
    pi = W.NWord((W.Letter("y"), R.STAR))
    with pytest.raises(NotLyndonError):
        R.special_normal_sword(pi, f_xy)


def test_snw_surfaces_order_conflicts_under_operator():
    # a same-degree tail can outgrow the leading word once wrapped: N(N(x))
    # sits above N(x.y) in the erased-letter order, so the contract fails
    # loudly instead of producing a wrong reduction step
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    f = F.bracket(x, y) - term("N(x)")
    pi = W.op_word(W.NWord((R.STAR,)))
    with pytest.raises(OrderingConflictError):
        R.special_normal_sword(pi, f)


def test_snw_leading_law_many():
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    polys = [F.bracket(x, y) - y,
             term("x.x.y") - term("N(x)"),
             term("N(x.y)") - y]
    pis = [W.NWord((R.STAR,)),
           W.NWord((W.Letter("x"), R.STAR)),
           W.op_word(W.NWord((R.STAR,)))]
    for f in polys:
        for pi in pis:
            ambient, _ = R.splice(pi, f.leading_word())
            if not W.is_ls_word(ambient, A2):
                continue
            try:
                snw = R.special_normal_sword(pi, f)
            except OrderingConflictError:
                continue  # surfaced, not silently wrong
            lead, coeff = snw.leading()
            assert lead == ambient and coeff == 1


def test_relation_set_validation(f_xy):
    with pytest.raises(PreconditionError):
        R.RelationSet([])
    with pytest.raises(PreconditionError):
        R.RelationSet([("bad", 2 * f_xy)])
    with pytest.raises(PreconditionError):
        R.RelationSet([("zero", F.Poly.zero(A2))])


def test_reduce_examples(rel_set, f_xy):
    assert R.reduce(f_xy, rel_set).is_zero()
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    assert R.reduce(F.bracket(x, F.bracket(x, y)), rel_set) == y
    assert R.reduce(x, rel_set) == x


def test_reduce_under_operator(rel_set):
    # N([x,y]) holds the leading word only under the operator
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    p = F.apply_op(F.bracket(x, y))
    got = R.reduce(p, rel_set)
    assert got == F.apply_op(y)
    assert R.is_reduced(got, rel_set)


def test_reduce_certificate_reconstructs_difference(rel_set):
    rng = random.Random(21)
    pool = W.enumerate_ls_nwords(A2, 5, allow_ops=True)
    for _ in range(25):
        p = random_poly(rng, pool, A2)
        r, steps = R.reduce_with_certificate(p, rel_set)
        total = F.Poly.zero(A2)
        for step in steps:
            total = total + step.coeff * step.sword
        assert p - r == total
        assert R.is_reduced(r, rel_set)


def test_reduce_step_budget(rel_set):
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    p = F.bracket(x, F.bracket(x, y))
    with pytest.raises(StepBudgetError):
        R.reduce(p, rel_set, max_steps=1)


def test_is_trivial_mod(rel_set, f_xy):
    w = lw("x.x.y")
    zero = F.Poly.zero(A2)
    assert R.is_trivial_mod(zero, rel_set, w)
    y = F.Poly.letter(A2, "y")
    x = F.Poly.letter(A2, "x")
    assert R.is_trivial_mod(F.bracket(x, y) - y, rel_set, w)
    assert not R.is_trivial_mod(x, rel_set, w)
    with pytest.raises(PreconditionError):
        R.is_trivial_mod(term("x.x.y"), rel_set, lw("x.y"))


def test_intersection_compositions_enumeration(f_xy):
    # xy cannot overlap itself properly
    assert R.intersection_compositions(f_xy, f_xy) == []
    # t.y overlaps y.? : build over the three-letter alphabet
    t, x, y = (F.Poly.letter(A3, s) for s in "txy")
    g_x = F.bracket(t, x) - x
    f = F.bracket(x, y) - y
    got = R.intersection_compositions(g_x, f)
    assert len(got) == 1
    w, h = got[0]
    assert W.word_to_text(w) == "t.x.y"
    for word in h.support_words():
        assert W.cmp_wt(word, w, A3) == W.LESS
    # disjoint alphabets: no overlap
    assert R.intersection_compositions(f, g_x) == []


def test_inclusion_compositions(f_xy):
    # leading word under the operator: N(x.y) contains x.y
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    big = F.apply_op(F.bracket(x, y)) - x
    got = R.inclusion_compositions(big, f_xy)
    assert len(got) == 1
    w, h = got[0]
    assert W.word_to_text(w) == "N(x.y)"
    assert h == F.apply_op(y) - x
    # self inclusion at the identity star word is skipped
    assert R.inclusion_compositions(f_xy, f_xy) == []
    # shorter leading word cannot contain a longer one
    assert R.inclusion_compositions(f_xy, big) == []


def test_equal_leads_of_distinct_relations_compose():
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    f = F.bracket(x, y) - y
    g = F.bracket(x, y) - x
    got = R.inclusion_compositions(f, g)
    assert len(got) == 1
    _, h = got[0]
    assert h == x - y


def test_gsb_check_single_relation_passes(rel_set):
    report = R.gsb_check(rel_set, 6)
    assert report.verdict
    assert report.records == []
    assert report.to_dict()["verdict"] == "pass"


def test_gsb_check_finds_failure():
    # two relations rewriting the same word differently cannot be confluent
    x, y = F.Poly.letter(A2, "x"), F.Poly.letter(A2, "y")
    rels = R.RelationSet([
        ("f1", F.bracket(x, y) - y),
        ("f2", F.bracket(x, y) - x),
    ])
    report = R.gsb_check(rels, 6)
    assert not report.verdict
    bad = [rec for rec in report.records if not rec.trivial]
    assert bad and bad[0].residual == x - y or bad[0].residual == y - x


def test_gsb_check_respects_degree_bound():
    x, y = F.Poly.letter(A3, "x"), F.Poly.letter(A3, "y")
    t = F.Poly.letter(A3, "t")
    rels = R.RelationSet([
        ("g(x)", F.bracket(t, x) - x),
        ("f(x,y)", F.bracket(x, y) - y),
    ])
    full = R.gsb_check(rels, 6)
    assert any(W.word_to_text(rec.word) == "t.x.y" for rec in full.records)
    capped = R.gsb_check(rels, 2)
    assert capped.records == []
    assert capped.max_deg == 2


def test_irr_basis_examples(rel_set):
    got = R.irr_basis(rel_set, A2, 2, allow_ops=False)
    assert [F.term_to_text(t) for t in got] == ["x", "y"]
    everything = R.irr_basis(None, A2, 2, allow_ops=False)
    assert [F.term_to_text(t) for t in everything] == ["[x,y]", "x", "y"]
    with_ops = R.irr_basis(rel_set, A2, 3, allow_ops=True)
    words_out = [W.word_to_text(W.psi(t)) for t in with_ops]
    assert "x.y" not in words_out
    assert "N(x.y)" not in words_out  # nested occurrence excluded
    assert "N(x)" in words_out


def test_irr_consistency_with_reduce(rel_set):
    # irreducibles are fixed by reduction; everything reduces into their span
    irr_terms = set(R.irr_basis(rel_set, A2, 4, allow_ops=True))
    for t in irr_terms:
        p = F.Poly.term(A2, t)
        assert R.reduce(p, rel_set) == p
    for word in W.enumerate_ls_nwords(A2, 4, allow_ops=True):
        p = F.Poly.term(A2, W.shirshov_bracket(word, A2))
        reduced = R.reduce(p, rel_set)
        assert set(reduced.support()) <= irr_terms


def test_confluence_of_strategies(rel_set):
    rng = random.Random(31)
    pool = W.enumerate_ls_nwords(A2, 5, allow_ops=True)
    for _ in range(40):
        p = random_poly(rng, pool, A2)
        a = R.reduce(p, rel_set, strategy="greatest-first")
        b = R.reduce(p, rel_set, strategy="leftmost-first")
        assert a == b


def test_unknown_strategy_rejected(rel_set):
    x = F.Poly.letter(A2, "x")
    with pytest.raises(PreconditionError):
        R.reduce(x, rel_set, strategy="random")
