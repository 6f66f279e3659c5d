import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twotopos.comma import comma
from twotopos.core import (
    FinFunctor,
    chain,
    constant_functor,
    discrete,
    functors,
    identity_functor,
    identity_nat,
    is_invertible,
    opposite,
    point,
    preorder,
    representable,
    terminal,
)
from twotopos.corpus import cat, extension_corpus, full_inclusions, preorders_upto
from twotopos.errors import NoColimit
from twotopos.kan import (
    ExtensionCell,
    colimit_finset,
    colimit_in,
    empty_diagram,
    initial_object,
    lan_pointwise,
    lan_set,
    limit_in,
    ran_pointwise,
    verify_col_rec,
    verify_colimit_finset,
    verify_left_extension,
    verify_left_lifting,
    verify_pointwise_left_extension,
    verify_right_extension,
    weighted_colimit,
)
from twotopos.omega import build_omega, from_set_functor, to_set_functor
from twotopos.yoneda import YonedaContext


def join(B, xs):
    ups = [b for b in B.objects if all(B.hom(x, b) for x in xs)]
    least = [b for b in ups if all(B.hom(b, u) for u in ups)]
    return least[0] if least else None


def meet(B, xs):
    downs = [b for b in B.objects if all(B.hom(b, x) for x in xs)]
    great = [b for b in downs if all(B.hom(d, b) for d in downs)]
    return great[0] if great else None


def test_colimits_and_limits_in_a_chain():
    C = chain(3)
    F = identity_functor(C)
    assert colimit_in(C, F).nadir == 2
    assert limit_in(C, F).nadir == 0
    assert initial_object(C) == 0
    assert colimit_in(C, empty_diagram(C)).nadir == 0


def test_no_coproduct_in_a_vee_of_incomparables():
    # a and b have two minimal upper bounds in this poset, so no join
    P = preorder(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")])
    F = constant_functor(terminal(), P, "a")
    assert colimit_in(P, F).nadir == "a"
    D = discrete([0, 1])
    pair = FinFunctor(D, P, {0: "a", 1: "b"}, {D.identity[0]: P.identity["a"], D.identity[1]: P.identity["b"]})
    assert colimit_in(P, pair) is None


@pytest.mark.parametrize("gf", extension_corpus(36), ids=lambda gf: f"{gf[0].dom.name}:{gf[0].cod.name}:{gf[1].cod.name}")
def test_lan_against_the_join_oracle(gf):
    g, f = gf
    h, cell = lan_pointwise(g, f)
    for c in g.cod.objects:
        xs = [f.obj[x[0]] for x in comma(g, point(g.cod, c)).apex.objects]
        assert h.obj[c] == join(f.cod, xs)
    assert verify_left_extension(cell)
    assert verify_pointwise_left_extension(cell)


@pytest.mark.parametrize("gf", extension_corpus(36), ids=lambda gf: f"{gf[0].dom.name}:{gf[0].cod.name}:{gf[1].cod.name}")
def test_ran_against_the_meet_oracle(gf):
    g, f = gf
    R, eps = ran_pointwise(g, f)
    for c in g.cod.objects:
        xs = [f.obj[x[2]] for x in comma(point(g.cod, c), g).apex.objects]
        assert R.obj[c] == meet(f.cod, xs)
    assert verify_right_extension(g, f, R, eps)


def test_lan_matches_the_set_level_formula():
    ctx = build_omega(4)
    rng = random.Random(1)
    agree = 0
    for a, c in [("span", "2"), ("par", "1"), ("2", "1"), ("vee", "2")]:
        A, C = cat(a), cat(c)
        Fs = functors(A, ctx.omega)
        rng.shuffle(Fs)
        for g in functors(A, C):
            for F in Fs[:10]:
                P = to_set_functor(F)
                assert from_set_functor(P, ctx) == F
                sizes = {x: len(r) for x, r in lan_set(g, P).items()}
                try:
                    h, _ = lan_pointwise(g, F)
                except NoColimit:
                    # only when some set-level value is too big for the context
                    assert any(v >= 4 for v in sizes.values())
                    continue
                assert sizes == dict(h.obj)
                agree += 1
    assert agree > 50


def test_lan_along_fully_faithful_is_invertible():
    rng = random.Random(5)
    for g in full_inclusions():
        f = rng.choice(functors(g.dom, cat("3")))
        _, cell = lan_pointwise(g, f)
        assert is_invertible(cell.phi)


def test_identity_cell_is_a_left_lifting_along_ff():
    C = chain(3)
    one = identity_functor(C)
    cell = ExtensionCell(one, one, one, identity_nat(one))
    assert verify_left_lifting(cell)
    assert verify_left_extension(cell)


def test_colimit_of_finite_sets():
    C = cat("span")
    for c in C.objects:
        R = representable(opposite(C), c)
        reps, legs = colimit_finset(R)
        # a representable copresheaf has a one-point colimit
        assert len(reps) == 1
        assert verify_colimit_finset(R, reps, legs)


@given(st.sampled_from([P for P in preorders_upto(2) if P.objects]), st.data())
def test_weighted_colimits_in_presheaves(C, data):
    ctx = YonedaContext(2)
    two = build_omega(2)
    D = data.draw(st.sampled_from([P for P in preorders_upto(2) if P.objects]))
    i = to_set_functor(data.draw(st.sampled_from(functors(opposite(C), two.omega))))
    f = data.draw(st.sampled_from(functors(C, ctx.psh(D).category)))
    wc = weighted_colimit(i, f)
    assert wc is not None and verify_col_rec(i, f, wc)


def test_representable_weight_picks_the_value():
    C = chain(2)
    ctx = YonedaContext(2)
    PC = ctx.psh(C).category
    for f in functors(C, PC):
        for c in C.objects:
            w = representable(C, c)
            wc = weighted_colimit(w, f)
            assert PC.hom(wc.col, f.obj[c]) and PC.hom(f.obj[c], wc.col)


def test_nonempty_sets_lack_an_initial_object():
    ne = build_omega(3, min_size=1)
    assert initial_object(ne.omega) is None
    assert colimit_in(ne.omega, empty_diagram(ne.omega)) is None
    # extending along the top point of 2 needs an initial object at the bottom
    with pytest.raises(NoColimit):
        lan_pointwise(point(chain(2), 1), constant_functor(terminal(), ne.omega, 1))
