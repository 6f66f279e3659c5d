import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twotopos.core import (
    FinCategory,
    chain,
    compose_functors,
    constant_functor,
    discrete,
    find_adjunction,
    find_isomorphism,
    functor_category,
    functors,
    identity_functor,
    nattrans,
    opposite,
    point,
    preorder,
    product,
    representable,
    slice_category,
    terminal,
    to_terminal,
    validate_category,
    validate_functor,
    validate_nattrans,
)
from twotopos.corpus import cat, named_categories, preorders_upto
from twotopos.errors import CardinalityExceeded


def closed_preorder(n, pairs):
    """Transitive closure by hand, so the strategy never relies on the library."""
    rel = {(i, j) for i, j in pairs if i != j}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and a != d and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return preorder(range(n), sorted(rel))


preorders = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6).map(
        lambda ps: closed_preorder(n, ps)
    )
)


@pytest.mark.parametrize("name", sorted(named_categories()))
def test_named_categories_validate(name):
    C = cat(name)
    assert validate_category(C).ok
    assert opposite(opposite(C)) == C


def test_every_small_preorder_validates():
    ps = preorders_upto(3)
    # labelled-up-to-iso preorders on 0..3 points: 1, 1, 3, 9
    assert [sum(1 for P in ps if len(P.objects) == k) for k in range(4)] == [1, 1, 3, 9]
    assert all(validate_category(P).ok for P in ps)


@given(preorders)
def test_random_preorders_are_categories(P):
    assert validate_category(P).ok
    for (g, f), h in P.comp.items():
        assert P.src[h] == P.src[f] and P.tgt[h] == P.tgt[g]


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (2, 3), (3, 3), (3, 4), (4, 2)])
def test_monotone_map_count(n, m):
    # functors between chains are monotone maps; stars and bars counts them
    assert len(functors(chain(n), chain(m))) == comb(n + m - 1, n)


def test_functor_counts_by_hand():
    par = cat("par")
    for C in (cat("2"), cat("3"), cat("square"), cat("par")):
        want = sum(len(C.hom(a, b)) ** 2 for a in C.objects for b in C.objects)
        assert len(functors(par, C)) == want
    assert len(functors(cat("disc2"), cat("3"))) == 9
    assert len(functors(cat("Z2"), cat("Z2"))) == 2
    assert len(functors(cat("idem"), cat("idem"))) == 2
    assert len(functors(cat("Z2"), cat("idem"))) == 1  # s must go to a unit-squaring element: only e
    assert len(functors(cat("iso"), cat("2"))) == 2


def test_functors_validate_and_compose():
    for f in functors(cat("span"), cat("3")):
        assert validate_functor(f).ok
        assert compose_functors(identity_functor(f.cod), f) == f
        for g in functors(cat("3"), cat("2")):
            gf = compose_functors(g, f)
            assert validate_functor(gf).ok
            assert all(gf.obj[x] == g.obj[f.obj[x]] for x in f.dom.objects)


def test_nattrans_in_a_poset():
    C = chain(3)
    one = terminal()
    for a in C.objects:
        for b in C.objects:
            ts = nattrans(constant_functor(one, C, a), constant_functor(one, C, b))
            assert len(ts) == (1 if a <= b else 0)
            assert all(validate_nattrans(t).ok for t in ts)


def test_functor_category_of_chains():
    FC = functor_category(chain(2), chain(2))
    # three monotone maps, ordered pointwise: 3 identities + 2 + 1
    assert len(FC.category.objects) == 3
    assert len(FC.category.morphisms) == 6
    assert validate_category(FC.category).ok


def test_functor_category_cap():
    with pytest.raises(CardinalityExceeded):
        functor_category(chain(3), chain(4), cap=5)


def test_product_and_opposite_sizes():
    P = product(cat("par"), cat("2"))
    assert len(P.objects) == 4 and len(P.morphisms) == 4 * 3
    Op = opposite(cat("span"))
    assert isomorphic_sizes(Op, cat("cospan"))
    assert find_isomorphism(Op, cat("cospan")) is not None


def isomorphic_sizes(C: FinCategory, D: FinCategory) -> bool:
    return len(C.objects) == len(D.objects) and len(C.morphisms) == len(D.morphisms)


def test_adjoints_of_the_terminal_map():
    two = chain(2)
    t = to_terminal(two)
    top, bottom = point(two, 1), point(two, 0)
    assert find_adjunction(t, top) is not None       # t ⊣ top
    assert find_adjunction(t, bottom) is None
    assert find_adjunction(bottom, t) is not None    # bottom ⊣ t


def test_representables_and_slices():
    C = cat("square")
    for c in C.objects:
        R = representable(C, c)
        assert R.validate().ok
        for a in C.objects:
            assert len(R.sets[a]) == len(C.hom(a, c))
        assert len(slice_category(C, c).objects) == sum(len(C.hom(a, c)) for a in C.objects)


def test_discrete_has_only_identities():
    D = discrete("abc")
    assert len(D.morphisms) == 3 and D.is_discrete()
