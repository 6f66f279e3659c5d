"""Colimits, Kan extensions and liftings, and weighted colimits.

Cells follow one convention throughout: ``phi: f => h g`` where
``f: A -> B``, ``g: A -> C`` and ``h: C -> B``. For an extension ``h`` is the
unknown; for a lifting ``g`` is.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FinCategory,
    FinFunctor,
    NatTrans,
    SetFunctor,
    compose_functors,
    constant_functor,
    enumerate_functors,
    enumerate_nattrans,
    identity_functor,
    opposite,
    opposite_functor,
    point,
    set_nattrans,
    sort_ids,
    vcompose,
    whisker_left,
    whisker_right,
)
from .errors import CardinalityExceeded, NoColimit, NoLimit
from .report import INCONCLUSIVE, Report


@dataclass(frozen=True, eq=False)
class Cocone:
    diagram: FinFunctor
    nadir: object
    legs: dict  # diagram object -> morphism of the target


def cocones_at(F: FinFunctor, c, *, cap: int | None = None):
    J, D = F.dom, F.cod
    K = constant_functor(J, D, c)
    for al in enumerate_nattrans(F, K, cap=cap):
        yield Cocone(F, c, dict(al.comp))


def factorizations(cc: Cocone, other: Cocone) -> list:
    D = cc.diagram.cod
    J = cc.diagram.dom
    return [
        u for u in D.hom(cc.nadir, other.nadir)
        if all(D.comp[(u, cc.legs[j])] == other.legs[j] for j in J.objects)
    ]


def is_colimit(cc: Cocone, *, cap: int | None = None) -> bool:
    D = cc.diagram.cod
    for c in D.objects:
        for other in cocones_at(cc.diagram, c, cap=cap):
            if len(factorizations(cc, other)) != 1:
                return False
    return True


def colimit_in(D: FinCategory, F: FinFunctor, *, cap: int | None = None) -> Cocone | None:
    """A colimiting cocone for ``F`` in ``D`` or None, by exhaustive search."""
    if F.cod != D:
        raise ValueError("diagram must land in D")
    for c in D.objects:
        for cc in cocones_at(F, c, cap=cap):
            if is_colimit(cc, cap=cap):
                return cc
    return None


def limit_in(D: FinCategory, F: FinFunctor, *, cap: int | None = None) -> Cocone | None:
    """A limiting cone, legs running from the apex to the diagram."""
    cc = colimit_in(opposite(D), opposite_functor(F), cap=cap)
    if cc is None:
        return None
    return Cocone(F, cc.nadir, cc.legs)


def is_limit(cone: Cocone, *, cap: int | None = None) -> bool:
    F = cone.diagram
    return is_colimit(Cocone(opposite_functor(F), cone.nadir, cone.legs), cap=cap)


def empty_diagram(D: FinCategory) -> FinFunctor:
    from .core import empty_category

    return FinFunctor(empty_category(), D, {}, {})


def initial_object(D: FinCategory):
    cc = colimit_in(D, empty_diagram(D))
    return None if cc is None else cc.nadir


# ---------------------------------------------------------------------------
# colimits of finite sets


def colimit_finset(P: SetFunctor):
    """Connected components of the covariant elements of ``P``.

    Returns ``(representatives, legs)`` where ``legs[a][x]`` is the
    representative of ``(x, a)``; representatives are least by identifier.
    """
    C = P.dom
    parent: dict = {}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for a in C.objects:
        for x in P.sets[a]:
            parent[(x, a)] = (x, a)
    for m in C.morphisms:
        a, b = C.src[m], C.tgt[m]
        for x in P.sets[a]:
            ru, rv = find((x, a)), find((P.fmap[(m, x)], b))
            if ru != rv:
                parent[ru] = rv
    classes: dict = {}
    for node in parent:
        classes.setdefault(find(node), []).append(node)
    rep_of = {}
    for members in classes.values():
        least = sort_ids(members)[0]
        for node in members:
            rep_of[node] = least
    reps = tuple(sort_ids(set(rep_of.values())))
    legs = {a: {x: rep_of[(x, a)] for x in P.sets[a]} for a in C.objects}
    return reps, legs


def verify_colimit_finset(P: SetFunctor, reps, legs, max_target: int = 2) -> bool:
    """Cocones into a ``k``-element set correspond to functions out of the colimit."""
    from .core import constant_set_functor

    for k in range(1, max_target + 1):
        T = constant_set_functor(P.dom, range(k))
        cocones = list(set_nattrans(P, T))
        if len(cocones) != k ** len(reps):
            return False
        for cc in cocones:
            hits = 0
            import itertools

            for vals in itertools.product(range(k), repeat=len(reps)):
                u = dict(zip(reps, vals))
                if all(u[legs[a][x]] == cc[a][x] for a in P.dom.objects for x in P.sets[a]):
                    hits += 1
            if hits != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# extension cells


@dataclass(frozen=True, eq=False)
class ExtensionCell:
    f: FinFunctor
    g: FinFunctor
    h: FinFunctor
    phi: NatTrans

    def check_typing(self) -> bool:
        f, g, h = self.f, self.g, self.h
        return (
            f.dom == g.dom and h.dom == g.cod and h.cod == f.cod
            and self.phi.dom == f and self.phi.cod == compose_functors(h, g)
        )


def verify_left_extension(cell: ExtensionCell, *, cap: int | None = None) -> bool:
    """``Nat(h, k) -> Nat(f, k g)`` is a bijection for every ``k``."""
    f, g, h, phi = cell.f, cell.g, cell.h, cell.phi
    B = f.cod
    A = f.dom
    for k in enumerate_functors(g.cod, B, cap=cap):
        kg = compose_functors(k, g)
        targets = {al.key for al in enumerate_nattrans(f, kg, cap=cap)}
        seen = set()
        for s in enumerate_nattrans(h, k, cap=cap):
            comp = {a: B.comp[(s.comp[g.obj[a]], phi.comp[a])] for a in A.objects}
            key = NatTrans(f, kg, comp).key
            if key in seen or key not in targets:
                return False
            seen.add(key)
        if seen != targets:
            return False
    return True


def verify_left_lifting(cell: ExtensionCell, *, cap: int | None = None) -> bool:
    """``Nat(g, k) -> Nat(f, h k)`` is a bijection for every ``k``."""
    f, g, h, phi = cell.f, cell.g, cell.h, cell.phi
    B = f.cod
    A = f.dom
    for k in enumerate_functors(A, g.cod, cap=cap):
        hk = compose_functors(h, k)
        targets = {al.key for al in enumerate_nattrans(f, hk, cap=cap)}
        seen = set()
        for s in enumerate_nattrans(g, k, cap=cap):
            comp = {a: B.comp[(h.mor[s.comp[a]], phi.comp[a])] for a in A.objects}
            key = NatTrans(f, hk, comp).key
            if key in seen or key not in targets:
                return False
            seen.add(key)
        if seen != targets:
            return False
    return True


def whisker_cell_by(cell: ExtensionCell, x: FinFunctor) -> ExtensionCell:
    """Precompose every boundary with ``x: X -> A``."""
    return ExtensionCell(
        compose_functors(cell.f, x), compose_functors(cell.g, x), cell.h,
        whisker_right(cell.phi, x),
    )


def postcompose_cell(q: FinFunctor, cell: ExtensionCell) -> ExtensionCell:
    """``q phi: q f => (q h) g``."""
    return ExtensionCell(
        compose_functors(q, cell.f), cell.g, compose_functors(q, cell.h),
        NatTrans(compose_functors(q, cell.f), compose_functors(compose_functors(q, cell.h), cell.g),
                 {a: q.mor[c] for a, c in cell.phi.comp.items()}),
    )


def verify_absolute(cell: ExtensionCell, probes, kind: str = "lifting", *, cap: int = 100_000) -> Report:
    """Probe-bounded absoluteness.

    ``lifting``: every ``x: X -> A`` with ``X`` a probe keeps a left lifting.
    ``extension``: every ``q: B -> D`` with ``D`` a probe keeps a left extension.
    """
    rep = Report()
    for X in probes:
        cid = f"absolute-{kind}:{X.name or len(X.objects)}"
        try:
            ok, wit = True, None
            if kind == "lifting":
                for x in enumerate_functors(X, cell.f.dom, cap=cap):
                    if not verify_left_lifting(whisker_cell_by(cell, x), cap=cap):
                        ok, wit = False, {"x": x.key}
                        break
            else:
                for q in enumerate_functors(cell.f.cod, X, cap=cap):
                    if not verify_left_extension(postcompose_cell(q, cell), cap=cap):
                        ok, wit = False, {"q": q.key}
                        break
            rep.add(cid, ok, wit)
        except CardinalityExceeded as e:
            rep.add(cid, INCONCLUSIVE, str(e))
    return rep


def paste_extensions(first: ExtensionCell, second: ExtensionCell) -> ExtensionCell:
    """``phi: f => h g`` then ``psi: h => k j`` gives ``(psi g) phi: f => k (j g)``."""
    if second.f != first.h:
        raise ValueError("second cell must extend the first one's result")
    g, j = first.g, second.g
    psi_g = whisker_right(second.phi, g)
    comp = vcompose(psi_g, first.phi)
    jg = compose_functors(j, g)
    return ExtensionCell(first.f, jg, second.h,
                         NatTrans(first.f, compose_functors(second.h, jg), comp.comp))


# ---------------------------------------------------------------------------
# pointwise extensions


def _comma_at(g: FinFunctor, c):
    from .comma import comma

    return comma(g, point(g.cod, c))


def lan_pointwise(g: FinFunctor, f: FinFunctor, *, cap: int | None = None) -> tuple[FinFunctor, ExtensionCell]:
    """Lawvere's formula ``L(c) = colim(g/c -> A -> B)``."""
    A, C, B = g.dom, g.cod, f.cod
    cols, commas = {}, {}
    for c in C.objects:
        sq = _comma_at(g, c)
        diag = compose_functors(f, sq.p)
        cc = colimit_in(B, diag, cap=cap)
        if cc is None:
            raise NoColimit(f"no colimit for the diagram at {c!r}")
        cols[c], commas[c] = cc, sq
    obj = {c: cols[c].nadir for c in C.objects}
    mor = {}
    for u in C.morphisms:
        c, c2 = C.src[u], C.tgt[u]
        src, tgt = cols[c], cols[c2]
        shifted = Cocone(src.diagram, tgt.nadir, {
            (a, v, s): tgt.legs[(a, C.comp[(u, v)], s)] for (a, v, s) in commas[c].apex.objects
        })
        ws = factorizations(src, shifted)
        if len(ws) != 1:
            raise NoColimit(f"induced map along {u!r} is not unique")
        mor[u] = ws[0]
    h = FinFunctor(C, B, obj, mor, name="lan")
    phi = {a: cols[g.obj[a]].legs[(a, C.identity[g.obj[a]], "*")] for a in A.objects}
    cell = ExtensionCell(f, g, h, NatTrans(f, compose_functors(h, g), phi))
    return h, cell


def lan_set(g: FinFunctor, P: SetFunctor) -> dict:
    """Set-valued Lawvere formula: ``c |-> π0`` of the elements of ``P p`` over ``g/c``.

    Returns the component representatives per object of ``C``; used as an
    independent oracle for :func:`lan_pointwise` into a set-like target.
    """
    out = {}
    for c in g.cod.objects:
        sq = _comma_at(g, c)
        J = sq.apex
        sets = {j: P.sets[j[0]] for j in J.objects}
        fmap = {(m, x): P.fmap[(m[1], x)] for m in J.morphisms for x in sets[J.src[m]]}
        reps, _ = colimit_finset(SetFunctor(J, sets, fmap))
        out[c] = reps
    return out


def _unop_functor(F: FinFunctor) -> FinFunctor:
    return FinFunctor(opposite(F.dom), opposite(F.cod), dict(F.obj), dict(F.mor), name=F.name)


def ran_pointwise(g: FinFunctor, f: FinFunctor, *, cap: int | None = None) -> tuple[FinFunctor, NatTrans]:
    """Right extension by limits; returns ``R`` and ``eps: R g => f``."""
    try:
        h_op, cell = lan_pointwise(opposite_functor(g), opposite_functor(f), cap=cap)
    except NoColimit as e:
        raise NoLimit(str(e)) from None
    R = _unop_functor(h_op)
    eps = NatTrans(compose_functors(R, g), f, dict(cell.phi.comp))
    return R, eps


def verify_right_extension(g: FinFunctor, f: FinFunctor, R: FinFunctor, eps: NatTrans, *, cap=None) -> bool:
    """Dual check: ``eps: R g => f`` is a right extension of ``f`` along ``g``."""
    gop, fop, Rop = opposite_functor(g), opposite_functor(f), opposite_functor(R)
    cell = ExtensionCell(fop, gop, Rop, NatTrans(fop, compose_functors(Rop, gop), dict(eps.comp)))
    return verify_left_extension(cell, cap=cap)


def pointwise_cocone(cell: ExtensionCell, c, *, strict: bool = False) -> Cocone:
    """The cocone ``h(u) phi_a`` over ``g/c`` (or over the fibre when ``strict``)."""
    from .comma import strict_pullback

    f, g, h, phi = cell.f, cell.g, cell.h, cell.phi
    C, B = g.cod, f.cod
    sq = strict_pullback(g, point(C, c)) if strict else _comma_at(g, c)
    diag = compose_functors(f, sq.p)
    legs = {(a, u, s): B.comp[(h.mor[u], phi.comp[a])] for (a, u, s) in sq.apex.objects}
    return Cocone(diag, h.obj[c], legs)


def verify_pointwise_left_extension(cell: ExtensionCell, *, cap: int | None = None) -> bool:
    """Lawvere's condition at every object of ``C``."""
    return all(is_colimit(pointwise_cocone(cell, c), cap=cap) for c in cell.g.cod.objects)


def cofib_lex_agreement(cell: ExtensionCell, *, cap: int | None = None) -> bool:
    """For an opfibration ``g``: comma and fibre evaluations agree at every object."""
    return all(
        is_colimit(pointwise_cocone(cell, c), cap=cap) == is_colimit(pointwise_cocone(cell, c, strict=True), cap=cap)
        for c in cell.g.cod.objects
    )


# ---------------------------------------------------------------------------
# presheaf-level functors


def res(f: FinFunctor, PA, PB) -> FinFunctor:
    """Precomposition with ``f^op`` as a functor ``PSh B -> PSh A``."""
    fop = opposite_functor(f)
    obj, mor = {}, {}
    for k, F in PB.functors.items():
        obj[k] = compose_functors(F, fop).key
    for k, al in PB.transformations.items():
        mor[k] = whisker_right(al, fop).key
    return FinFunctor(PB.category, PA.category, obj, mor, name="res")


def lan_along(f: FinFunctor, yA: FinFunctor, yB: FinFunctor) -> tuple[FinFunctor, ExtensionCell]:
    """``lan_f`` as the pointwise left extension of ``y_B f`` along ``y_A``."""
    return lan_pointwise(yA, compose_functors(yB, f))


def ran_along(f: FinFunctor, PA, PB) -> FinFunctor:
    """``ran_f: PSh A -> PSh B`` by the limit formula ``ran_f(P) = Ran_{f^op} P``.

    On a transformation ``α: P => Q`` the induced map is the unique ``σ`` with
    ``ε_Q (σ f^op) = α ε_P``.
    """
    fop = opposite_functor(f)
    Om = PA.cod
    rans = {}
    for k, P in PA.functors.items():
        rans[k] = ran_pointwise(fop, P)
    obj = {k: PB.object_of(R) for k, (R, _) in rans.items()}
    mor = {}
    for k, al in PA.transformations.items():
        RP, eP = rans[al.dom.key]
        RQ, eQ = rans[al.cod.key]
        want = {a: Om.comp[(al.comp[a], eP.comp[a])] for a in fop.dom.objects}
        hits = [
            s for s in enumerate_nattrans(RP, RQ)
            if all(Om.comp[(eQ.comp[a], s.comp[fop.obj[a]])] == want[a] for a in fop.dom.objects)
        ]
        if len(hits) != 1:
            raise NoLimit(f"induced map along a transformation is not unique ({len(hits)})")
        mor[k] = PB.morphism_of(hits[0])
    return FinFunctor(PA.category, PB.category, obj, mor, name="ran")


# ---------------------------------------------------------------------------
# weighted colimits


@dataclass
class WeightedColimit:
    col: object
    eta: dict        # (x, c) -> leg f(c) -> col
    cocone: Cocone
    elements: FinFunctor


def weighted_colimit(i: SetFunctor, f: FinFunctor, *, cap: int | None = None) -> WeightedColimit | None:
    """``col(i, f)`` as the conical colimit of ``f p`` over the elements of ``i``.

    ``i`` is a presheaf on ``C = f.dom`` (a SetFunctor on ``opposite(C)``).
    Returns None when the target lacks the colimit.
    """
    from .span import el_presheaf

    p = el_presheaf(i)
    if p.cod != f.dom:
        p = FinFunctor(p.dom, f.dom, p.obj, p.mor)
    diag = compose_functors(f, p)
    cc = colimit_in(f.cod, diag, cap=cap)
    if cc is None:
        return None
    return WeightedColimit(cc.nadir, dict(cc.legs), cc, p)


def verify_col_rec(i: SetFunctor, f: FinFunctor, wc: WeightedColimit) -> bool:
    """``A(col, a) -> PSh C(i, A(f-, a))`` is a bijection for every ``a``."""
    from .core import make_set_functor

    A, C = f.cod, f.dom
    for a in A.objects:
        sets = {c: A.hom(f.obj[c], a) for c in C.objects}
        fmap = {}
        for m in C.morphisms:  # m: c -> c' acts A(fc', a) -> A(fc, a)
            for h in A.hom(f.obj[C.tgt[m]], a):
                fmap[(m, h)] = A.comp[(h, f.mor[m])]
        rep = SetFunctor(opposite(C), sets, fmap)
        targets = [{c: dict(fn) for c, fn in t.items()} for t in set_nattrans(i, rep)]
        keys = {tuple(sorted((c, tuple(sorted(fn.items(), key=repr))) for c, fn in t.items())) for t in map(_freeze, targets)}
        seen = set()
        for u in A.hom(wc.col, a):
            fam = {c: {x: A.comp[(u, wc.eta[(x, c)])] for x in i.sets[c]} for c in C.objects}
            k = tuple(sorted((c, tuple(sorted(fn.items(), key=repr))) for c, fn in _freeze(fam).items()))
            if k in seen or k not in keys:
                return False
            seen.add(k)
        if seen != keys:
            return False
    return True


def _freeze(fam):
    return {c: dict(fn) for c, fn in fam.items()}


__all__ = [
    "Cocone", "cocones_at", "factorizations", "is_colimit", "colimit_in", "limit_in", "is_limit",
    "empty_diagram", "initial_object", "colimit_finset", "verify_colimit_finset", "ExtensionCell",
    "verify_left_extension", "verify_left_lifting", "verify_absolute", "whisker_cell_by",
    "postcompose_cell", "paste_extensions", "lan_pointwise", "ran_pointwise", "verify_right_extension",
    "pointwise_cocone", "lan_set", "verify_pointwise_left_extension", "cofib_lex_agreement", "res", "lan_along",
    "ran_along", "WeightedColimit", "weighted_colimit", "verify_col_rec"
]
