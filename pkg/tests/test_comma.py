import pytest
from hypothesis import given
from hypothesis import strategies as st

from twotopos.comma import (
    FLAVORS,
    comma,
    comma_over_base,
    mutilate,
    pasting_check,
    pseudo_pullback,
    strict_pullback,
    verify_lax_pullback,
)
from twotopos.core import chain, compose_functors, find_isomorphism, identity_functor, point, product, to_terminal
from twotopos.corpus import all_functors, cat, cospan_corpus, probe_family
from twotopos.errors import CospanMismatch


def count_triples(f, g, keep):
    B = f.cod
    return sum(
        1
        for a in f.dom.objects
        for c in g.dom.objects
        for h in B.hom(f.obj[a], g.obj[c])
        if keep(B, h)
    )


KEEP = {
    "lax": lambda B, h: True,
    "pseudo": lambda B, h: B.inverse(h) is not None,
    "strict": lambda B, h: h == B.identity[B.src[h]] and B.src[h] == B.tgt[h],
}


@pytest.mark.parametrize("flavor", FLAVORS)
def test_object_counts_match_a_direct_count(flavor):
    for f, g in cospan_corpus(20):
        sq = comma(f, g, flavor)
        assert len(sq.apex.objects) == count_triples(f, g, KEEP[flavor])


def test_arrow_category_of_two():
    two = chain(2)
    one = identity_functor(two)
    sq = comma(one, one)
    assert len(sq.apex.objects) == 3          # 0->0, 0->1, 1->1
    assert len(sq.apex.morphisms) == 6        # the arrow category of 2 is the 3-chain


def test_comma_of_points_in_a_chain():
    C = chain(3)
    assert len(comma(point(C, 0), point(C, 2)).apex.objects) == 1
    assert len(comma(point(C, 2), point(C, 0)).apex.objects) == 0


def test_strict_pullback_over_terminal_is_product():
    A, C = cat("par"), cat("2")
    sq = strict_pullback(to_terminal(A), to_terminal(C))
    assert find_isomorphism(sq.apex, product(A, C)) is not None


def test_pseudo_pullback_over_walking_iso():
    iso = cat("iso")
    p0 = point(iso, iso.objects[0])
    p1 = point(iso, iso.objects[1])
    assert len(pseudo_pullback(p0, p1).apex.objects) == 1
    assert len(strict_pullback(p0, p1).apex.objects) == 0


def test_cospan_mismatch():
    with pytest.raises(CospanMismatch):
        comma(identity_functor(chain(2)), identity_functor(chain(3)))


@pytest.mark.parametrize("flavor", FLAVORS)
def test_universal_property_on_a_few_cospans(flavor):
    for f, g in cospan_corpus(8, seed=3):
        rep = verify_lax_pullback(comma(f, g, flavor), probe_family("standard"))
        assert rep.ok, rep.failures()


def test_mutilated_square_fails():
    f = identity_functor(chain(2))
    sq = comma(f, f)
    rep = verify_lax_pullback(mutilate(sq), probe_family("tiny"))
    assert not rep.ok


def test_pasting_agrees_on_a_chain():
    C = chain(3)
    one = identity_functor(C)
    back = comma(one, one)
    for h in all_functors("2", "3"):
        res = pasting_check(back, h, probes=probe_family("tiny"))
        assert res.agree and res.composite_ok


def test_comma_over_base_keeps_identities():
    C = chain(2)
    one = identity_functor(C)
    beta = to_terminal(C)
    alpha = compose_functors(beta, one)
    sq, to_base = comma_over_base(one, one, alpha, beta, alpha)
    assert len(sq.apex.objects) == 3
    assert set(to_base.obj.values()) <= set(beta.cod.objects)


cospans = st.sampled_from(cospan_corpus(60))


@given(cospans, st.sampled_from(FLAVORS))
def test_projections_commute_up_to_the_cell(fg, flavor):
    f, g = fg
    sq = comma(f, g, flavor)
    B = f.cod
    for x in sq.apex.objects:
        h = sq.lam.comp[x]
        assert B.src[h] == f.obj[sq.p.obj[x]] and B.tgt[h] == g.obj[sq.q.obj[x]]
    for m in sq.apex.morphisms:
        s, t = sq.apex.src[m], sq.apex.tgt[m]
        lhs = B.comp[(sq.lam.comp[t], f.mor[sq.p.mor[m]])]
        rhs = B.comp[(g.mor[sq.q.mor[m]], sq.lam.comp[s])]
        assert lhs == rhs
