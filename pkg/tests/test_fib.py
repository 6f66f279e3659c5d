import pytest
from hypothesis import given
from hypothesis import strategies as st

from twotopos.comma import comma
from twotopos.core import chain, identity_functor, point, to_terminal
from twotopos.corpus import cat, cospan_corpus, functor_corpus
from twotopos.errors import NotAFibration
from twotopos.fib import (
    chevalley_check,
    choose_cleavage,
    closure_suite,
    is_cartesian,
    is_discrete_fibration,
    is_discrete_fibration_span,
    is_discrete_opfibration,
    is_fibration,
    is_opfibration,
    missing_lift,
    pullback_leg,
)


def arrow_projections(B):
    """``dom, cod: B^2 -> B``."""
    sq = comma(identity_functor(B), identity_functor(B))
    return sq.p, sq.q


def test_domain_projection_is_a_fibration():
    for name in ("2", "3", "square", "par", "Z2"):
        dom, cod = arrow_projections(cat(name))
        assert is_fibration(dom)
        assert is_opfibration(cod)
        assert choose_cleavage(dom).lifts


def test_codomain_projection_needs_pullbacks():
    # chains have pullbacks (meets); the parallel pair does not
    assert is_fibration(arrow_projections(cat("3"))[1])
    assert not is_fibration(arrow_projections(cat("par"))[1])


def test_inclusion_of_the_top_is_not_a_fibration():
    two = chain(2)
    top = point(two, 1)
    assert not is_fibration(top)
    assert missing_lift(top) is not None
    with pytest.raises(NotAFibration):
        choose_cleavage(top)
    # but the bottom point is: nothing maps into 0 except its identity
    assert is_fibration(point(two, 0))


def test_identities_are_cartesian():
    f = identity_functor(cat("square"))
    assert all(is_cartesian(f, m) is not None for m in f.dom.morphisms)


def test_over_the_terminal_category_cartesian_means_invertible():
    t = to_terminal(cat("2"))
    assert is_fibration(t)  # only identities need lifting
    assert [m for m in t.dom.morphisms if is_cartesian(t, m)] == list(t.dom.identity.values())


@pytest.mark.parametrize("f", functor_corpus(40), ids=lambda f: f"{f.dom.name}->{f.cod.name}")
def test_chevalley_agrees(f):
    ch = chevalley_check(f)
    assert ch.verdict == "agree"
    assert ch.adjoint_found == is_fibration(f)


def test_discrete_fibrations():
    C = cat("3")
    assert is_discrete_opfibration(identity_functor(C))
    assert is_discrete_fibration(point(C, 0))
    assert not is_discrete_opfibration(point(C, 0))
    assert is_discrete_opfibration(point(C, 2))


@given(st.sampled_from(cospan_corpus(50)))
def test_comma_spans_are_two_sided_discrete_fibrations(fg):
    f, g = fg
    sq = comma(f, g)
    cert = is_discrete_fibration_span(sq.p, sq.q)
    assert cert is not None
    assert is_fibration(sq.p) and is_opfibration(sq.q)


def test_closure_under_composition_and_pullback():
    fs = functor_corpus(40)
    fibs = [f for f in fs if is_fibration(f)]
    maps = functor_corpus(40, seed=9)
    rep = closure_suite(fibs, maps)
    assert rep.ok, rep.failures()
    assert sum(1 for c in rep.checks if "pullback" in c.id) >= 30


def test_pullback_of_a_fibration_is_a_fibration():
    q = arrow_projections(cat("3"))[0]
    for k in (point(cat("3"), 1), identity_functor(cat("3"))):
        assert is_fibration(pullback_leg(q, k))
