import pytest
from hypothesis import given
from hypothesis import strategies as st

from twotopos.core import (
    compose_functors,
    find_isomorphism,
    functors,
    identity_functor,
    identity_nat,
    is_iso_functor,
    point,
    product,
    representable,
    slice_category,
    to_terminal,
)
from twotopos.corpus import all_functors, cat, discrete_opfibration_corpus, functor_corpus
from twotopos.errors import BoundaryMismatch, CardinalityExceeded
from twotopos.omega import build_omega
from twotopos.span import (
    G,
    Span,
    as_span,
    associator,
    check_classifying,
    classify,
    constant_indexed,
    count_liftings,
    dfib_to_profunctor,
    dfib_transpose,
    dfib_untranspose,
    el,
    el_presheaf,
    fibre,
    hom_profunctor,
    identity_span,
    iso_over,
    left_unitor,
    map_adjunction,
    map_to_span,
    profunctor_to_dfib,
    right_unitor,
    span_compose,
    span_iso,
)


def test_composing_map_spans_composes_maps():
    for f in all_functors("2", "3"):
        for g in all_functors("3", "2"):
            S = span_compose(map_to_span(f), map_to_span(g))
            assert span_iso(S, map_to_span(compose_functors(g, f))) is not None


def test_boundary_mismatch():
    with pytest.raises(BoundaryMismatch):
        span_compose(identity_span(cat("2")), identity_span(cat("3")))


@pytest.mark.parametrize("name", ["2", "par", "span"])
def test_unitors_and_associator_are_isomorphisms(name):
    C = cat(name)
    S = Span(identity_functor(C), identity_functor(C))
    T = map_to_span(functors(C, cat("2"))[0])
    assert is_iso_functor(left_unitor(T)) and is_iso_functor(right_unitor(T))
    assert is_iso_functor(associator(S, S, T))


@pytest.mark.parametrize("f", functor_corpus(12, seed=4), ids=lambda f: f"{f.dom.name}->{f.cod.name}")
def test_maps_have_span_adjoints(f):
    assert map_adjunction(f).ok


@pytest.mark.parametrize("lam", [2, 3])
def test_classify_then_pull_back(lam):
    ctx = build_omega(lam)
    for name in ("1", "2", "par", "vee", "Z2"):
        for f in functors(cat(name), ctx.omega):
            assert classify(G(f, ctx.tau), ctx) == f


@pytest.mark.parametrize("lam", [2, 3])
def test_pull_back_then_classify(lam):
    ctx = build_omega(lam)
    for p in discrete_opfibration_corpus(max_fibre=lam):
        f = classify(p, ctx)
        # the value at each object is the fibre size
        assert all(f.obj[a] == len(fibre(p, a)) for a in p.cod.objects)
        assert iso_over(G(f, ctx.tau), p) is not None


def test_classify_refuses_large_fibres():
    # two points over one: a fibre of size 2 does not fit below lambda = 2
    with pytest.raises(CardinalityExceeded):
        classify(to_terminal(cat("disc2")), build_omega(2))


def test_tau_is_classifying_at_two():
    ctx = build_omega(2)
    rep = check_classifying(ctx.tau, [cat("1"), cat("2")])
    assert rep.ok, rep.failures()


def test_liftings_are_unique_for_tau():
    ctx = build_omega(3)
    f = point(ctx.omega, 2)
    assert count_liftings(ctx.tau, identity_nat(f)) == 1


@pytest.mark.parametrize("name", ["1", "2", "3", "par", "span", "cospan", "square", "vee", "wedge", "Z2", "idem"])
def test_elements_of_a_representable_form_the_slice(name):
    C = cat(name)
    for c in C.objects:
        p = el_presheaf(representable(C, c))
        assert find_isomorphism(p.dom, slice_category(C, c)) is not None


def test_grothendieck_of_a_constant_family_is_a_product():
    C, X = cat("2"), cat("par")
    p, _ = el(constant_indexed(C, X))
    assert find_isomorphism(p.dom, product(C, X)) is not None


@given(st.sampled_from(["1", "2", "3", "par", "span", "iso"]))
def test_hom_profunctor_round_trip(name):
    C = cat(name)
    P = hom_profunctor(C)
    assert P.validate().ok
    S = profunctor_to_dfib(P)
    # the two-sided elements of hom are the arrow category
    assert len(S.apex.objects) == len(C.morphisms)
    again = profunctor_to_dfib(dfib_to_profunctor(S))
    assert span_iso(as_span(S), as_span(again)) is not None


def test_transpose_round_trip():
    A, B = cat("2"), cat("par")
    AB = product(A, B)
    S = profunctor_to_dfib(hom_profunctor(AB))
    T = dfib_transpose(S, A, B)
    back = dfib_untranspose(T, B, AB)
    assert span_iso(as_span(S), as_span(back)) is not None
