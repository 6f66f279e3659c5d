"""Spans of finite categories, the Grothendieck correspondence, classification
along a discrete opfibration and the profunctor transpose.

Strict pullbacks are the composition of spans; their apex objects are
``(x, 1, y)`` triples and their arrows ``(src, alpha, gamma, tgt)`` quadruples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .comma import strict_pullback
from .core import (
    FinCategory,
    FinFunctor,
    NatTrans,
    SetFunctor,
    compose_functors,
    enumerate_functors,
    enumerate_nattrans,
    functors,
    identity_functor,
    opposite,
    pair_into,
    product,
    sort_ids,
    to_terminal,
)
from .errors import BoundaryMismatch, CardinalityExceeded, NoLift
from .fib import DiscreteFibrationSpan, is_discrete_fibration_span, is_discrete_opfibration
from .report import Report


@dataclass(frozen=True, eq=False)
class Span:
    left: FinFunctor   # E -> A
    right: FinFunctor  # E -> B

    def __post_init__(self):
        if self.left.dom != self.right.dom:
            raise BoundaryMismatch("span legs must share an apex")

    @property
    def apex(self) -> FinCategory:
        return self.left.dom

    @property
    def source(self) -> FinCategory:
        return self.left.cod

    @property
    def target(self) -> FinCategory:
        return self.right.cod


def identity_span(A: FinCategory) -> Span:
    I = identity_functor(A)
    return Span(I, I)


def map_to_span(f: FinFunctor) -> Span:
    """``(1_A, A, f)``."""
    return Span(identity_functor(f.dom), f)


def map_to_rev(f: FinFunctor) -> Span:
    """``(f, A, 1_A)``."""
    return Span(f, identity_functor(f.dom))


def span_reverse(S: Span) -> Span:
    return Span(S.right, S.left)


def span_compose(S1: Span, S2: Span) -> Span:
    """``S2 ∘ S1`` for ``S1: A -> B`` and ``S2: B -> C``, by strict pullback."""
    if S1.target != S2.source:
        raise BoundaryMismatch("middle boundaries differ")
    sq = strict_pullback(S1.right, S2.left)
    return Span(compose_functors(S1.left, sq.p), compose_functors(S2.right, sq.q))


def is_span_map(S: Span, T: Span, phi: FinFunctor) -> bool:
    return compose_functors(T.left, phi) == S.left and compose_functors(T.right, phi) == S.right


def span_maps(S: Span, T: Span, *, cap: int | None = None):
    """Every functor between apexes commuting with both legs."""
    E = S.apex
    over, mover = _leg_index(T)
    return enumerate_functors(
        E, T.apex,
        obj_cands={x: over.get((S.left.obj[x], S.right.obj[x]), []) for x in E.objects},
        mor_cands={m: mover.get((S.left.mor[m], S.right.mor[m]), []) for m in E.morphisms},
        cap=cap,
    )


def _leg_index(T: Span):
    idx = T.__dict__.get("_legidx")
    if idx is None:
        over: dict = {}
        for y in T.apex.objects:
            over.setdefault((T.left.obj[y], T.right.obj[y]), []).append(y)
        mover: dict = {}
        for n in T.apex.morphisms:
            mover.setdefault((T.left.mor[n], T.right.mor[n]), []).append(n)
        idx = (over, mover)
        object.__setattr__(T, "_legidx", idx)
    return idx


def span_iso(S: Span, T: Span, *, cap: int | None = None) -> FinFunctor | None:
    """An isomorphism of spans ``S -> T``, if one exists."""
    if len(S.apex.objects) != len(T.apex.objects) or len(S.apex.morphisms) != len(T.apex.morphisms):
        return None
    for phi in span_maps(S, T, cap=cap):
        if len(set(phi.obj.values())) == len(S.apex.objects) and len(set(phi.mor.values())) == len(S.apex.morphisms):
            return phi
    return None


# -- coherence maps ---------------------------------------------------------


def left_unitor(S: Span) -> FinFunctor:
    """``S ∘ 1_A -> S``."""
    C = span_compose(identity_span(S.source), S)
    E = C.apex
    return FinFunctor(E, S.apex, {x: x[2] for x in E.objects}, {m: m[2] for m in E.morphisms})


def right_unitor(S: Span) -> FinFunctor:
    """``1_B ∘ S -> S``."""
    C = span_compose(S, identity_span(S.target))
    E = C.apex
    return FinFunctor(E, S.apex, {x: x[0] for x in E.objects}, {m: m[1] for m in E.morphisms})


def associator(R: Span, S: Span, T: Span) -> FinFunctor:
    """``T∘(S∘R) -> (T∘S)∘R`` as an apex functor."""
    RS = span_compose(R, S)
    left = span_compose(RS, T)
    ST = span_compose(S, T)
    right = span_compose(R, ST)
    X = left.apex
    # projections of X = RS x_B T onto R.apex and ST.apex
    sq_rs = strict_pullback(R.right, S.left)
    sq_left = strict_pullback(RS.right, T.left)
    sq_st = strict_pullback(S.right, T.left)
    pr_rs, pr_t = sq_left.p, sq_left.q
    pr_r = compose_functors(sq_rs.p, pr_rs)
    pr_s = compose_functors(sq_rs.q, pr_rs)
    to_st = pair_into(pr_s, pr_t, sq_st.apex, S.right)
    sq_right = strict_pullback(R.right, ST.left)
    return pair_into(pr_r, to_st, sq_right.apex, R.right)


def whisker_span_map(phi: FinFunctor, S: Span, T: Span, U: Span, side: str) -> FinFunctor:
    """Whisker a span map ``phi: S -> T`` by ``U`` on ``side`` ("pre" or "post").

    ``pre`` gives ``S∘U -> T∘U`` (``U`` applied first), ``post`` gives
    ``U∘S -> U∘T``.
    """
    if side == "pre":
        src = strict_pullback(U.right, S.left)
        tgt = strict_pullback(U.right, T.left)
        return pair_into(src.p, compose_functors(phi, src.q), tgt.apex, U.right)
    src = strict_pullback(S.right, U.left)
    tgt = strict_pullback(T.right, U.left)
    return pair_into(compose_functors(phi, src.p), src.q, tgt.apex, T.right)


@dataclass
class SpanAdjunction:
    unit: FinFunctor
    counit: FinFunctor
    triangle_left: bool
    triangle_right: bool

    @property
    def ok(self) -> bool:
        return self.triangle_left and self.triangle_right


def map_adjunction(f: FinFunctor) -> SpanAdjunction:
    """Build and check ``f ⊣ rev f`` in the span bicategory."""
    A, B = f.dom, f.cod
    fs, rf = map_to_span(f), map_to_rev(f)
    one_A, one_B = identity_span(A), identity_span(B)
    K = span_compose(fs, rf)           # rev f ∘ f : A -> A
    sqK = strict_pullback(fs.right, rf.left)
    I = identity_functor(A)
    unit = pair_into(I, I, sqK.apex, fs.right)
    M = span_compose(rf, fs)           # f ∘ rev f : B -> B
    counit = FinFunctor(M.apex, B, {x: f.obj[x[0]] for x in M.apex.objects},
                        {m: f.mor[m[1]] for m in M.apex.morphisms})
    ok_u = is_span_map(one_A, K, unit)
    ok_c = is_span_map(M, one_B, counit)

    # f -> f∘1 -> f∘(rev f∘f) -> (f∘rev f)∘f -> 1∘f -> f
    inv_l = pair_into(fs.left, identity_functor(A), strict_pullback(one_A.right, fs.left).apex, one_A.right)
    s1 = whisker_span_map(unit, one_A, K, fs, "post")
    s2 = associator(fs, rf, fs)
    s3 = whisker_span_map(counit, M, one_B, fs, "pre")
    s4 = right_unitor(fs)
    tri1 = compose_functors(s4, compose_functors(s3, compose_functors(s2, compose_functors(s1, inv_l))))
    t1 = tri1 == identity_functor(A)

    # rev f -> 1∘rev f -> (rev f∘f)∘rev f -> rev f∘(f∘rev f) -> rev f∘1 -> rev f
    inv_r = pair_into(identity_functor(A), rf.right, strict_pullback(rf.right, one_A.left).apex, rf.right)
    r1 = whisker_span_map(unit, one_A, K, rf, "pre")
    r2 = _inverse_iso(associator(rf, fs, rf))
    r3 = whisker_span_map(counit, M, one_B, rf, "post")
    r4 = left_unitor(rf)
    tri2 = compose_functors(r4, compose_functors(r3, compose_functors(r2, compose_functors(r1, inv_r))))
    t2 = tri2 == identity_functor(A)
    return SpanAdjunction(unit, counit, ok_u and ok_c and t1, ok_u and ok_c and t2)


def _inverse_iso(F: FinFunctor) -> FinFunctor:
    return FinFunctor(F.cod, F.dom, {v: k for k, v in F.obj.items()}, {v: k for k, v in F.mor.items()})


# ---------------------------------------------------------------------------
# Grothendieck constructions


@dataclass(frozen=True, eq=False)
class IndexedCategory:
    """A strict functor ``X: C^op -> CAT``.

    ``reindex[beta]`` is ``X(beta): X(tgt beta) -> X(src beta)``.
    """

    base: FinCategory
    fibres: dict
    reindex: dict


def indexed_from_presheaf(P: SetFunctor) -> IndexedCategory:
    """View a set-valued presheaf (SetFunctor on ``C^op``) as discrete fibres."""
    from .core import discrete

    C = opposite(P.dom)
    fibres = {c: discrete(P.sets[c]) for c in C.objects}
    reindex = {}
    for b in C.morphisms:
        s, t = C.src[b], C.tgt[b]
        X_t, X_s = fibres[t], fibres[s]
        obj = {x: P.fmap[(b, x)] for x in P.sets[t]}
        reindex[b] = FinFunctor(X_t, X_s, obj, {X_t.identity[x]: X_s.identity[obj[x]] for x in X_t.objects})
    return IndexedCategory(C, fibres, reindex)


def constant_indexed(C: FinCategory, X: FinCategory) -> IndexedCategory:
    I = identity_functor(X)
    return IndexedCategory(C, {c: X for c in C.objects}, {b: I for b in C.morphisms})


def el(X: IndexedCategory) -> tuple[FinFunctor, dict]:
    """Category of elements of a contravariant CAT-valued functor.

    Returns the projection (a fibration) and its canonical cleavage, keyed by
    ``(beta, object)``.
    """
    C = X.base
    objs = [(x, c) for c in C.objects for x in X.fibres[c].objects]
    mors = []
    for (x1, c1) in objs:
        for (x2, c2) in objs:
            for b in C.hom(c1, c2):
                F = X.fibres[c1]
                target = X.reindex[b].obj[x2]
                for al in F.hom(x1, target):
                    mors.append((((x1, c1), al, b, (x2, c2)), (x1, c1), (x2, c2)))
    out: dict = {}
    for m, s, t in mors:
        out.setdefault(s, []).append(m)
    comp = {}
    for m1, s1, t1 in mors:
        _, a1, b1, _ = m1
        for m2 in out.get(t1, ()):
            _, a2, b2, t2 = m2
            c1 = s1[1]
            F1 = X.fibres[c1]
            a = F1.comp[(X.reindex[b1].mor[a2], a1)]
            comp[(m2, m1)] = (s1, a, C.comp[(b2, b1)], t2)
    ident = {(x, c): ((x, c), X.fibres[c].identity[x], C.identity[c], (x, c)) for x, c in objs}
    E = FinCategory(objs, mors, ident, comp, name="el")
    p = FinFunctor(E, C, {o: o[1] for o in objs}, {m: m[2] for m, _, _ in mors}, name="el-proj")
    cleavage = {}
    for (x2, c2) in objs:
        for b in C.morphisms:
            if C.tgt[b] != c2:
                continue
            c1 = C.src[b]
            y = X.reindex[b].obj[x2]
            cleavage[(b, (x2, c2))] = ((y, c1), X.fibres[c1].identity[y], b, (x2, c2))
    return p, cleavage


def el_copresheaf(P: SetFunctor) -> FinFunctor:
    """Covariant elements ``e(P) -> C``: a discrete opfibration."""
    C = P.dom
    objs = [(x, a) for a in C.objects for x in P.sets[a]]
    mors = []
    for (x1, a1) in objs:
        for al in C.morphisms:
            if C.src[al] == a1:
                x2 = P.fmap[(al, x1)]
                mors.append((((x1, a1), al, (x2, C.tgt[al])), (x1, a1), (x2, C.tgt[al])))
    comp = {}
    out: dict = {}
    for m, s, t in mors:
        out.setdefault(s, []).append(m)
    for m1, s1, t1 in mors:
        for m2 in out.get(t1, ()):
            comp[(m2, m1)] = (s1, C.comp[(m2[1], m1[1])], m2[2])
    ident = {o: (o, C.identity[o[1]], o) for o in objs}
    E = FinCategory(objs, mors, ident, comp, name="e")
    return FinFunctor(E, C, {o: o[1] for o in objs}, {m: m[1] for m, _, _ in mors}, name="e-proj")


def el_presheaf(P: SetFunctor) -> FinFunctor:
    """Contravariant elements of a presheaf: a discrete fibration over ``C``."""
    p, _ = el(indexed_from_presheaf(P))
    return p


# ---------------------------------------------------------------------------
# classification along tau


def fibre(p: FinFunctor, a) -> list:
    return sort_ids(x for x in p.dom.objects if p.obj[x] == a)


def _lift_table(p: FinFunctor) -> dict:
    table = p.__dict__.get("_lifts")
    if table is None:
        table = {}
        for m in p.dom.morphisms:
            table.setdefault((p.dom.src[m], p.mor[m]), []).append(m)
        object.__setattr__(p, "_lifts", table)
    return table


def opcartesian_lift(p: FinFunctor, u, e):
    """The unique arrow out of ``e`` over ``u`` (discrete opfibrations)."""
    hits = _lift_table(p).get((e, u), [])
    if len(hits) != 1:
        raise NoLift(f"{len(hits)} lifts of {u!r} at {e!r}")
    return hits[0]


def classify(p: FinFunctor, ctx) -> FinFunctor:
    """The functor ``A -> Ω`` whose pullback of ``τ`` recovers ``p``.

    Fibres are enumerated in identifier order, so ``classify(G(f)) == f``.
    """
    A, E = p.cod, p.dom
    Om = ctx.omega
    fib = {a: fibre(p, a) for a in A.objects}
    for a, xs in fib.items():
        if not Om.has_object(len(xs)):
            raise CardinalityExceeded(f"fibre over {a!r} has {len(xs)} elements, outside the context")
    obj = {a: len(fib[a]) for a in A.objects}
    mor = {}
    for u in A.morphisms:
        s, t = A.src[u], A.tgt[u]
        idx = {x: i for i, x in enumerate(fib[t])}
        images = tuple(idx[E.tgt[opcartesian_lift(p, u, x)]] for x in fib[s])
        mor[u] = (obj[s], obj[t], images)
    return FinFunctor(A, Om, obj, mor, name="classify")


def G(f: FinFunctor, tau: FinFunctor) -> FinFunctor:
    """Pull ``tau`` back along ``f``; the projection to ``dom(f)``."""
    return strict_pullback(f, tau).p


def iso_over(p: FinFunctor, q: FinFunctor) -> FinFunctor | None:
    """An isomorphism ``dom(p) -> dom(q)`` commuting with the projections."""
    if p.cod != q.cod:
        return None
    return span_iso(Span(to_terminal(p.dom), p), Span(to_terminal(q.dom), q))


def top_leg(f: FinFunctor, tau: FinFunctor) -> FinFunctor:
    return strict_pullback(f, tau).q


@dataclass
class Lifted2Cell:
    G_phi: FinFunctor      # e(f) -> e(g) over A
    phi_bar: NatTrans      # top_f => top_g ∘ G_phi


def lift_2cell(tau: FinFunctor, phi: NatTrans, *, squares=None) -> Lifted2Cell:
    """``G(phi)`` and the lifting ``phi_bar`` with ``tau phi_bar = phi G(f)``.

    ``squares`` optionally supplies the two pullback squares already built.
    """
    f, g = phi.dom, phi.cod
    if squares is None:
        sf, sg = strict_pullback(f, tau), strict_pullback(g, tau)
    else:
        sf, sg = squares
    Ef, Eg = sf.apex, sg.apex
    E = tau.dom
    obj, bar = {}, {}
    for x in Ef.objects:
        a, _, e = x
        lift = opcartesian_lift(tau, phi.comp[a], e)
        e2 = E.tgt[lift]
        y = (a, g.cod.identity[g.obj[a]], e2)
        if not Eg.has_object(y):
            raise NoLift(f"lift of {phi.comp[a]!r} leaves the pullback")
        obj[x] = y
        bar[x] = lift
    mor = {}
    for m in Ef.morphisms:
        x, al, _, x2 = m
        gal = g.mor[al]
        gam = opcartesian_lift(tau, gal, obj[x][2])
        mor[m] = (obj[x], al, gam, obj[x2])
        if mor[m] not in Eg.src:
            raise NoLift("lifted arrow is not in the pullback")
    Gphi = FinFunctor(Ef, Eg, obj, mor, name="G(phi)")
    phibar = NatTrans(sf.q, compose_functors(sg.q, Gphi), bar)
    return Lifted2Cell(Gphi, phibar)


def count_liftings(tau: FinFunctor, phi: NatTrans, *, cap: int | None = None) -> int:
    """Exhaustively count pairs ``(H, psi)`` satisfying both lifting equations."""
    f, g = phi.dom, phi.cod
    sf, sg = strict_pullback(f, tau), strict_pullback(g, tau)
    Sf = Span(to_terminal(sf.apex), sf.p)
    Sg = Span(to_terminal(sg.apex), sg.p)
    n = 0
    for H in span_maps(Sf, Sg, cap=cap):
        target = compose_functors(sg.q, H)

        def cands(x, target=target):
            return [m for m in tau.dom.hom(sf.q.obj[x], target.obj[x]) if tau.mor[m] == phi.comp[x[0]]]

        n += sum(1 for _ in enumerate_nattrans(sf.q, target, comp_cands=cands, cap=cap))
    return n


def check_classifying(tau: FinFunctor, probes, *, cap: int = 200_000) -> Report:
    """Full faithfulness of ``G_{tau,A}`` for each probe ``A``."""
    rep = Report()
    B = tau.cod
    rep.add("discrete-opfibration", is_discrete_opfibration(tau))
    for A in probes:
        cid = f"classifying:{A.name or len(A.objects)}"
        try:
            fs = functors(A, B, cap=cap)
            pb = {F.key: strict_pullback(F, tau) for F in fs}
            spans = {k: Span(to_terminal(sq.apex), sq.p) for k, sq in pb.items()}
            witness = None
            for f in fs:
                sf, Sf = pb[f.key], spans[f.key]
                for g in fs:
                    sg, Sg = pb[g.key], spans[g.key]
                    images = {}
                    for phi in enumerate_nattrans(f, g, cap=cap):
                        H = lift_2cell(tau, phi, squares=(sf, sg)).G_phi
                        if H.key in images:
                            witness = {"clause": "faithful", "f": f.key, "g": g.key}
                            break
                        images[H.key] = phi
                    if witness:
                        break
                    for H in span_maps(Sf, Sg, cap=cap):
                        if H.key not in images:
                            witness = {"clause": "full", "f": f.key, "g": g.key, "span_map": H.key}
                            break
                    if witness:
                        break
                if witness:
                    break
            rep.add(cid, witness is None, witness)
        except CardinalityExceeded as e:
            rep.add(cid, "inconclusive", str(e))
    return rep


# ---------------------------------------------------------------------------
# profunctors


@dataclass(frozen=True, eq=False)
class Profunctor:
    """``P: A^op x B -> FinSet`` with explicit actions.

    ``left[(u, b, x)]`` acts by ``u: a' -> a`` from ``P(a, b)`` to ``P(a', b)``;
    ``right[(v, a, x)]`` acts by ``v: b -> b'`` from ``P(a, b)`` to ``P(a, b')``.
    """

    A: FinCategory
    B: FinCategory
    sets: dict
    left: dict
    right: dict

    def validate(self) -> Report:
        rep = Report()
        A, B = self.A, self.B
        ok = True
        for (g, f), h in A.comp.items():  # contravariance: P(f) P(g) = P(g f)
            for b in B.objects:
                for x in self.sets[(A.tgt[g], b)]:
                    if self.left[(f, b, self.left[(g, b, x)])] != self.left[(h, b, x)]:
                        ok = False
        rep.add("left-functorial", ok)
        ok = True
        for (g, f), h in B.comp.items():
            for a in A.objects:
                for x in self.sets[(a, B.src[f])]:
                    if self.right[(g, a, self.right[(f, a, x)])] != self.right[(h, a, x)]:
                        ok = False
        rep.add("right-functorial", ok)
        ok = True
        for u in A.morphisms:
            for v in B.morphisms:
                a, b = A.tgt[u], B.src[v]
                for x in self.sets[(a, b)]:
                    one = self.right[(v, A.src[u], self.left[(u, b, x)])]
                    two = self.left[(u, B.tgt[v], self.right[(v, a, x)])]
                    if one != two:
                        ok = False
        rep.add("actions-commute", ok)
        return rep


def dfib_to_profunctor(S: DiscreteFibrationSpan) -> Profunctor:
    d, c = S.d, S.c
    E, A, B = d.dom, d.cod, c.cod
    sets = {(a, b): tuple(sort_ids(e for e in E.objects if d.obj[e] == a and c.obj[e] == b))
            for a in A.objects for b in B.objects}
    left, right = {}, {}
    for (u, e), m in S.left_lifts.items():
        left[(u, c.obj[e], e)] = E.src[m]
    for (v, e), m in S.right_lifts.items():
        right[(v, d.obj[e], e)] = E.tgt[m]
    return Profunctor(A, B, sets, left, right)


def profunctor_to_dfib(P: Profunctor) -> DiscreteFibrationSpan:
    """Two-sided elements: arrows ``(a1,x1,b1) -> (a2,x2,b2)`` are ``(alpha, beta)``
    with ``P(alpha, 1) x2 = P(1, beta) x1``."""
    A, B = P.A, P.B
    objs = [(a, x, b) for a in A.objects for b in B.objects for x in P.sets[(a, b)]]
    mors = []
    for o1 in objs:
        a1, x1, b1 = o1
        for o2 in objs:
            a2, x2, b2 = o2
            for al in A.hom(a1, a2):
                for be in B.hom(b1, b2):
                    if P.left[(al, b2, x2)] == P.right[(be, a1, x1)]:
                        mors.append(((o1, al, be, o2), o1, o2))
    out: dict = {}
    for m, s, t in mors:
        out.setdefault(s, []).append(m)
    comp = {}
    for m1, s1, t1 in mors:
        for m2 in out.get(t1, ()):
            comp[(m2, m1)] = (s1, A.comp[(m2[1], m1[1])], B.comp[(m2[2], m1[2])], m2[3])
    ident = {o: (o, A.identity[o[0]], B.identity[o[2]], o) for o in objs}
    E = FinCategory(objs, mors, ident, comp, name="el2")
    d = FinFunctor(E, A, {o: o[0] for o in objs}, {m: m[1] for m, _, _ in mors})
    c = FinFunctor(E, B, {o: o[2] for o in objs}, {m: m[2] for m, _, _ in mors})
    cert = is_discrete_fibration_span(d, c)
    if cert is None:
        raise NoLift("profunctor tables do not define a discrete fibration")
    return cert


def as_span(S: DiscreteFibrationSpan) -> Span:
    return Span(S.d, S.c)


def dfib_transpose(S: DiscreteFibrationSpan, A: FinCategory, B: FinCategory) -> DiscreteFibrationSpan:
    """``DFib(A x B, C) -> DFib(A, B^op x C)``; ``S.d`` must land in ``product(A, B)``."""
    P = dfib_to_profunctor(S)
    C = P.B
    Bop = opposite(B)
    R = product(Bop, C)
    sets = {(a, (b, c)): P.sets[((a, b), c)] for a in A.objects for b in B.objects for c in C.objects}
    left, right = {}, {}
    for u in A.morphisms:
        for b in B.objects:
            for c in C.objects:
                for x in P.sets[((A.tgt[u], b), c)]:
                    left[(u, (b, c), x)] = P.left[((u, B.identity[b]), c, x)]
    for (v, w) in R.morphisms:
        # v: b -> b' in B^op is v: b' -> b in B
        b, c = Bop.src[v], C.src[w]
        for a in A.objects:
            for x in P.sets[((a, b), c)]:
                y = P.left[((A.identity[a], v), c, x)]
                right[((v, w), a, x)] = P.right[(w, (a, B.src[v]), y)]
    return profunctor_to_dfib(Profunctor(A, R, sets, left, right))


def dfib_untranspose(S: DiscreteFibrationSpan, B: FinCategory, C: FinCategory) -> DiscreteFibrationSpan:
    """Inverse of :func:`dfib_transpose`; ``S.c`` must land in ``product(B^op, C)``."""
    P = dfib_to_profunctor(S)
    A = P.A
    Bop = opposite(B)
    AB = product(A, B)
    sets = {((a, b), c): P.sets[(a, (b, c))] for a in A.objects for b in B.objects for c in C.objects}
    left, right = {}, {}
    for (u, v) in AB.morphisms:
        # (u, v): (a', b') -> (a, b); acts P((a,b),c) -> P((a',b'),c)
        a, b = A.tgt[u], B.tgt[v]
        for c in C.objects:
            for x in P.sets[(a, (b, c))]:
                y = P.left[(u, (b, c), x)]
                # v: b' -> b in B is b -> b' in B^op, acting covariantly
                right_v = P.right[((v, C.identity[c]), A.src[u], y)]
                left[((u, v), c, x)] = right_v
    for w in C.morphisms:
        for a in A.objects:
            for b in B.objects:
                for x in P.sets[(a, (b, C.src[w]))]:
                    right[(w, (a, b), x)] = P.right[((Bop.identity[b], w), a, x)]
    return profunctor_to_dfib(Profunctor(AB, C, sets, left, right))


def hom_profunctor(A: FinCategory) -> Profunctor:
    sets = {(a, b): A.hom(a, b) for a in A.objects for b in A.objects}
    left, right = {}, {}
    for u in A.morphisms:
        for b in A.objects:
            for h in A.hom(A.tgt[u], b):
                left[(u, b, h)] = A.comp[(h, u)]
    for v in A.morphisms:
        for a in A.objects:
            for h in A.hom(a, A.src[v]):
                right[(v, a, h)] = A.comp[(v, h)]
    return Profunctor(A, A, sets, left, right)


__all__ = [
    "Span", "identity_span", "map_to_span", "map_to_rev", "span_reverse", "span_compose",
    "span_maps", "span_iso", "is_span_map", "left_unitor", "right_unitor", "associator",
    "whisker_span_map", "map_adjunction", "SpanAdjunction", "IndexedCategory",
    "indexed_from_presheaf", "constant_indexed", "el", "el_copresheaf", "el_presheaf",
    "fibre", "opcartesian_lift", "classify", "G", "iso_over", "top_leg", "lift_2cell",
    "Lifted2Cell", "count_liftings", "check_classifying", "Profunctor", "dfib_to_profunctor",
    "profunctor_to_dfib", "as_span", "dfib_transpose", "dfib_untranspose", "hom_profunctor",
]
