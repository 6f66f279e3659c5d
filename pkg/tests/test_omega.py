import pytest
from hypothesis import given
from hypothesis import strategies as st

from twotopos.core import chain, functors, opposite, validate_category
from twotopos.fib import is_discrete_opfibration
from twotopos.corpus import cat, preorders_upto
from twotopos.errors import NotACosieve, NotAdmissible
from twotopos.kan import colimit_in, empty_diagram, initial_object
from twotopos.omega import (
    build_internal_poset_from_subobjects,
    build_omega,
    cc_report,
    classify_cosieve,
    comparison_is_iso,
    cosieve_bijection,
    cosieve_from_subset,
    cosieves,
    from_set_functor,
    hom_counts,
    implication_table,
    product_classifier,
    product_failure_witness,
    terminal_adjoint_check,
    to_set_functor,
    verify_context,
)


def up_sets(P):
    """Upward closed subsets, counted by brute force over all subsets."""
    objs = list(P.objects)
    n = 0
    for mask in range(1 << len(objs)):
        mem = {objs[i] for i in range(len(objs)) if mask >> i & 1}
        if all(b in mem for a in mem for b in objs if P.hom(a, b)):
            n += 1
    return n


@pytest.mark.parametrize("lam", [2, 3, 4])
def test_hom_sizes_are_powers(lam):
    ctx = build_omega(lam)
    assert validate_category(ctx.omega).ok
    # functions from an n-set to an m-set
    assert hom_counts(ctx) == {(n, m): m ** n for n in range(lam) for m in range(lam)}


@pytest.mark.parametrize("lam", [2, 3])
def test_context_verifies(lam):
    ctx = build_omega(lam)
    assert is_discrete_opfibration(ctx.tau)
    assert verify_context(ctx, [cat("1"), cat("2")]).ok


def test_pointed_objects():
    ctx = build_omega(4)
    # one pointed object per element of each set: 0 + 1 + 2 + 3
    assert len(ctx.omega_dot.objects) == 6


def test_two_valued_implication_is_classical():
    assert implication_table(build_omega(2)) == {(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 1}


def test_cartesian_closed_at_two():
    rep = cc_report(build_omega(2))
    assert rep.ok and len(rep.checks) == 5
    pc = product_classifier(build_omega(2))
    assert pc.m.obj == {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1}


def test_products_overflow_at_three():
    ctx = build_omega(3)
    assert product_failure_witness(ctx) == (2, 2)
    rep = cc_report(ctx)
    (bad,) = rep.failures()
    assert bad.id == "product-classifier" and bad.witness == [2, 2]
    # the terminal map still has its right adjoint
    assert terminal_adjoint_check(ctx).right.obj == {"*": 1}


def test_internal_poset_of_subobjects():
    P, compare = build_internal_poset_from_subobjects()
    assert P.check().ok
    assert P.leq == {("bot", "bot"), ("bot", "top"), ("top", "top")}
    assert comparison_is_iso(compare)


@pytest.mark.parametrize(
    "P",
    [P for P in preorders_upto(3)] + [cat(n) for n in ("4", "square", "vee", "wedge")],
    ids=lambda P: P.name or "empty",
)
def test_cosieves_are_up_sets(P):
    assert len(cosieves(P)) == up_sets(P)
    assert len(functors(P, build_omega(2).omega)) == up_sets(P)
    assert cosieve_bijection(P).ok


@pytest.mark.parametrize("name", ["par", "iso", "Z2"])
def test_cosieve_bijection_beyond_preorders(name):
    assert cosieve_bijection(cat(name)).ok


def test_non_cosieves_are_refused():
    C = chain(3)
    with pytest.raises(NotACosieve):
        cosieve_from_subset(C, {0})
    with pytest.raises(NotACosieve):
        classify_cosieve(cosieve_from_subset(C, {1, 2}), build_omega(3))
    F = classify_cosieve(cosieve_from_subset(C, {1, 2}))
    assert F.obj == {0: 0, 1: 1, 2: 1}


def test_control_nonempty_sets():
    # dropping the empty set loses the initial object
    ne = build_omega(3, min_size=1)
    assert initial_object(ne.omega) is None
    assert colimit_in(ne.omega, empty_diagram(ne.omega)) is None
    assert initial_object(build_omega(3).omega) == 0


def test_control_no_one_element_set():
    with pytest.raises(NotAdmissible):
        terminal_adjoint_check(build_omega(4, min_size=2))


@given(st.sampled_from(["2", "span", "par", "Z2", "vee"]), st.data())
def test_set_functor_round_trip(name, data):
    ctx = build_omega(3)
    F = data.draw(st.sampled_from(functors(cat(name), ctx.omega)))
    P = to_set_functor(F)
    assert P.validate().ok
    assert from_set_functor(P, ctx) == F


def test_presheaves_are_functors_on_the_opposite():
    ctx = build_omega(2)
    C = cat("span")
    assert len(functors(opposite(C), ctx.omega)) == up_sets(opposite(C))
