import pytest

from twotopos.core import chain, compose_functors, functors, identity_functor, is_fully_faithful, point
from twotopos.corpus import cat, preorders_upto
from twotopos.errors import NotAdmissible
from twotopos.span import Span
from twotopos.yoneda import (
    B_f1,
    YonedaContext,
    admissible_via_enlargement,
    attribute_check,
    chi_comma_check,
    comma_span,
    composite_law,
    epsilon_matches_comma,
    ff_iff_chi_invertible,
    is_admissible,
    is_admissible_object,
    is_small,
    presheaf_adjunctions,
    verify_axioms,
    yoneda_corpus,
    yoneda_map,
    yoneda_restricts_to_identity,
    yoneda_self_extension,
)


@pytest.fixture(scope="module")
def ctx():
    return YonedaContext(2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_presheaves_on_a_chain(ctx, n):
    # truth-valued presheaves on a chain are down-closed subsets: n + 1 of them
    assert len(ctx.psh(chain(n)).category.objects) == n + 1


def test_presheaves_on_small_shapes(ctx):
    assert len(ctx.psh(cat("disc2")).category.objects) == 4
    # par^op -> {0,1}: the value at the source of both arrows must be 0 if the target is 0
    assert len(ctx.psh(cat("par")).category.objects) == 3


def test_admissibility_follows_hom_sizes(ctx):
    assert is_admissible_object(chain(3), ctx)
    assert not is_admissible_object(cat("par"), ctx)
    assert is_admissible_object(cat("par"), YonedaContext(3))
    with pytest.raises(NotAdmissible):
        B_f1(identity_functor(cat("par")), ctx)
    assert is_small(chain(2), ctx)


def test_admissibility_certificate_records_counts(ctx):
    f = point(chain(3), 1)
    cert = is_admissible(f, ctx)
    assert cert is not None
    assert sorted(cert.witness.values()) == [0, 1, 1]


@pytest.mark.parametrize("P", [P for P in preorders_upto(3) if P.objects], ids=lambda P: P.name)
def test_yoneda_map_is_fully_faithful(ctx, P):
    assert is_fully_faithful(yoneda_map(P, ctx))


@pytest.mark.parametrize("f", yoneda_corpus(2), ids=lambda f: f"{f.dom.name}->{f.cod.name}")
def test_chi_is_invertible_exactly_for_ff(ctx, f):
    assert ff_iff_chi_invertible(f, ctx)
    assert chi_comma_check(f, ctx)


def test_comma_spans_are_attributes(ctx):
    for f in functors(chain(2), chain(3)):
        assert attribute_check(comma_span(f), ctx)
    # the identity span of 2 is not a two-sided discrete fibration
    one = identity_functor(chain(2))
    assert not attribute_check(Span(one, one), ctx)


@pytest.mark.parametrize("name", ["1", "2", "3", "disc2", "vee"])
def test_epsilon_is_the_comma_of_yoneda(ctx, name):
    assert epsilon_matches_comma(cat(name), ctx)


def test_enlargement_matches_hom_counts():
    small, big = YonedaContext(2), YonedaContext(3)
    assert admissible_via_enlargement(identity_functor(cat("2")), small, big)
    assert not admissible_via_enlargement(identity_functor(cat("par")), small, big)
    with pytest.raises(ValueError):
        admissible_via_enlargement(identity_functor(cat("2")), big, small)


@pytest.mark.parametrize("P", [P for P in preorders_upto(2) if P.objects], ids=lambda P: P.name)
def test_self_extension_and_restriction(ctx, P):
    assert yoneda_self_extension(P, ctx)
    assert yoneda_restricts_to_identity(P, ctx)


def test_composite_law(ctx):
    for g in functors(chain(1), chain(2)):
        for f in functors(chain(2), chain(3)):
            assert composite_law(f, g, ctx)
    f = point(chain(2), 0)
    assert composite_law(identity_functor(chain(2)), f, ctx)
    assert composite_law(compose_functors(identity_functor(chain(2)), f), identity_functor(f.dom), ctx)


def test_presheaf_adjoint_triple(ctx):
    small = [P for P in preorders_upto(2) if P.objects]
    n = 0
    for A in small:
        for B in small:
            for f in functors(A, B):
                rep = presheaf_adjunctions(f, ctx)
                assert rep.ok, rep.failures()
                n += 1
    assert n > 20


def test_axioms_on_small_corpus(ctx):
    rep = verify_axioms(ctx, yoneda_corpus(2))
    assert rep.ok, rep.failures()
    assert sum(1 for c in rep.checks if c.id.startswith("axiom3*") and c.verdict == "pass") > 10
