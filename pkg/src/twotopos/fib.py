"""Cartesian morphisms, fibrations, the Chevalley criterion and two-sided
discrete fibrations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    CancelToken,
    FinCategory,
    FinFunctor,
    NatTrans,
    chain,
    compose_functors,
    enumerate_functors,
    enumerate_nattrans,
    functor_category,
    identity_functor,
    opposite_functor,
    sort_ids,
    terminal,
    to_terminal,
)
from .errors import CardinalityExceeded, NotAFibration
from .report import Report


@dataclass(frozen=True)
class CartesianCertificate:
    functor: FinFunctor
    morphism: object
    witnesses: dict  # (beta, alpha1) -> gamma


@dataclass(frozen=True)
class Cleavage:
    functor: FinFunctor
    lifts: dict  # (beta, a) -> chosen cartesian lift


def is_cartesian(f: FinFunctor, alpha) -> CartesianCertificate | None:
    """Certificate iff ``alpha`` has the unique factorization property for ``f``."""
    A, B = f.dom, f.cod
    a1, a2 = A.src[alpha], A.tgt[alpha]
    fal = f.mor[alpha]
    wit = {}
    for a3 in A.objects:
        gammas = A.hom(a3, a1)
        for al1 in A.hom(a3, a2):
            target = f.mor[al1]
            for beta in B.hom(f.obj[a3], f.obj[a1]):
                if B.comp[(fal, beta)] != target:
                    continue
                found = [g for g in gammas if f.mor[g] == beta and A.comp[(alpha, g)] == al1]
                if len(found) != 1:
                    return None
                wit[(beta, al1)] = found[0]
    return CartesianCertificate(f, alpha, wit)


def is_opcartesian(f: FinFunctor, alpha) -> bool:
    return is_cartesian(opposite_functor(f), alpha) is not None


def cartesian_lifts(f: FinFunctor, beta, a) -> list:
    """All cartesian ``alpha`` with target ``a`` and ``f(alpha) = beta``, sorted."""
    A = f.dom
    return sort_ids(
        al for al in A.morphisms
        if A.tgt[al] == a and f.mor[al] == beta and is_cartesian(f, al) is not None
    )


def cartesian_lift(f: FinFunctor, beta, a):
    lifts = cartesian_lifts(f, beta, a)
    return lifts[0] if lifts else None


def missing_lift(f: FinFunctor):
    """First ``(beta, a)`` without a cartesian lift, or None."""
    A, B = f.dom, f.cod
    cart = {al for al in A.morphisms if is_cartesian(f, al) is not None}
    have = {(f.mor[al], A.tgt[al]) for al in cart}
    for a in A.objects:
        for beta in B.morphisms:
            if B.tgt[beta] == f.obj[a] and (beta, a) not in have:
                return (beta, a)
    return None


def is_fibration(f: FinFunctor) -> bool:
    return missing_lift(f) is None


def is_opfibration(f: FinFunctor) -> bool:
    return is_fibration(opposite_functor(f))


def choose_cleavage(f: FinFunctor) -> Cleavage:
    """Lexicographically least cartesian lift for every ``(beta, a)``."""
    A, B = f.dom, f.cod
    lifts = {}
    for a in A.objects:
        for beta in B.morphisms:
            if B.tgt[beta] != f.obj[a]:
                continue
            al = cartesian_lift(f, beta, a)
            if al is None:
                raise NotAFibration(f"no cartesian lift of {beta!r} at {a!r}")
            lifts[(beta, a)] = al
    return Cleavage(f, lifts)


def is_cartesian_2cell(f: FinFunctor, alpha: NatTrans, probes=None, *, cap: int = 50_000) -> bool:
    """Probe-bounded check that ``alpha: X => A`` is ``f``-cartesian.

    For each probe ``Y`` and ``g: Y -> X`` the whiskered cell is tested as a
    morphism of ``[Y, A]`` against postcomposition with ``f``.
    """
    probes = [terminal(), chain(2)] if probes is None else probes
    X = alpha.dom.dom
    for Y in probes:
        YA = functor_category(Y, f.dom, cap=cap)
        YB = functor_category(Y, f.cod, cap=cap)
        post = _postcompose(YA, YB, f)
        for g in enumerate_functors(Y, X, cap=cap):
            ag = NatTrans(
                compose_functors(alpha.dom, g), compose_functors(alpha.cod, g),
                {y: alpha.comp[g.obj[y]] for y in Y.objects},
            )
            if is_cartesian(post, ag.key) is None:
                return False
    return True


def _postcompose(YA, YB, f: FinFunctor) -> FinFunctor:
    obj, mor = {}, {}
    for k, F in YA.functors.items():
        obj[k] = compose_functors(f, F).key
    for k, al in YA.transformations.items():
        fal = NatTrans(compose_functors(f, al.dom), compose_functors(f, al.cod),
                       {y: f.mor[c] for y, c in al.comp.items()})
        mor[k] = fal.key
    return FinFunctor(YA.category, YB.category, obj, mor)


# ---------------------------------------------------------------------------
# two-sided discrete fibrations


@dataclass(frozen=True)
class DiscreteFibrationSpan:
    d: FinFunctor
    c: FinFunctor
    left_lifts: dict = field(default_factory=dict)   # (u: a -> d e, e) -> lift with codomain e
    right_lifts: dict = field(default_factory=dict)  # (v: c e -> b, e) -> lift with domain e

    @property
    def apex(self) -> FinCategory:
        return self.d.dom


def is_discrete_fibration_span(d: FinFunctor, c: FinFunctor) -> DiscreteFibrationSpan | None:
    """Check the three unique-lifting conditions for the span ``(d, E, c)``."""
    if d.dom != c.dom:
        return None
    E, A, B = d.dom, d.cod, c.cod
    left, right = {}, {}
    for e in E.objects:
        de, ce = d.obj[e], c.obj[e]
        into = [m for m in E.morphisms if E.tgt[m] == e and B.is_identity(c.mor[m])]
        for u in A.morphisms:
            if A.tgt[u] != de:
                continue
            hits = [m for m in into if d.mor[m] == u]
            if len(hits) != 1:
                return None
            left[(u, e)] = hits[0]
        out = [m for m in E.morphisms if E.src[m] == e and A.is_identity(d.mor[m])]
        for v in B.morphisms:
            if B.src[v] != ce:
                continue
            hits = [m for m in out if c.mor[m] == v]
            if len(hits) != 1:
                return None
            right[(v, e)] = hits[0]
    for h in E.morphisms:
        e1, e2 = E.src[h], E.tgt[h]
        g_bar = right[(c.mor[h], e1)]
        f_bar = left[(d.mor[h], e2)]
        if E.tgt[g_bar] != E.src[f_bar] or E.comp[(f_bar, g_bar)] != h:
            return None
    return DiscreteFibrationSpan(d, c, left, right)


def is_discrete_fibration(p: FinFunctor) -> bool:
    return is_discrete_fibration_span(p, to_terminal(p.dom)) is not None


def is_discrete_opfibration(p: FinFunctor) -> bool:
    return is_discrete_fibration_span(to_terminal(p.dom), p) is not None


# ---------------------------------------------------------------------------
# Chevalley criterion


@dataclass
class ChevalleyReport:
    functor: FinFunctor
    is_fibration: bool
    adjoint_found: bool
    verdict: str  # "agree", "disagree" or "inconclusive"
    r: FinFunctor | None = None
    unit: NatTrans | None = None
    counit: NatTrans | None = None

    @property
    def agree(self) -> bool:
        return self.verdict == "agree"


def chevalley_check(f: FinFunctor, *, cap: int = 200_000, cancel: CancelToken | None = None) -> ChevalleyReport:
    """Search for a right adjoint over ``B`` to ``i: A -> B/f`` with invertible unit."""
    from .comma import comma

    A, B = f.dom, f.cod
    sq = comma(identity_functor(B), f)
    Bf = sq.apex
    i = FinFunctor(
        A, Bf,
        {a: (f.obj[a], B.identity[f.obj[a]], a) for a in A.objects},
        {},
    )
    imor = {}
    for m in A.morphisms:
        s, t = i.obj[A.src[m]], i.obj[A.tgt[m]]
        imor[m] = (s, f.mor[m], m, t)
    i = FinFunctor(A, Bf, i.obj, imor, name="i")
    fib = is_fibration(f)
    fibre: dict = {}
    for a in A.objects:
        fibre.setdefault(f.obj[a], []).append(a)
    obj_cands = {x: fibre.get(x[0], []) for x in Bf.objects}
    by_image: dict = {}
    for m in A.morphisms:
        by_image.setdefault(f.mor[m], []).append(m)
    mor_cands = {m: by_image.get(m[1], []) for m in Bf.morphisms}
    found = None
    try:
        for r in enumerate_functors(Bf, A, obj_cands=obj_cands, mor_cands=mor_cands, cap=cap, cancel=cancel):
            ri = compose_functors(r, i)
            ir = compose_functors(i, r)

            def unit_c(a, ri=ri):
                return [m for m in A.hom(a, ri.obj[a]) if B.is_identity(f.mor[m]) and A.is_iso(m)]

            units = list(enumerate_nattrans(identity_functor(A), ri, comp_cands=unit_c, cap=cap, cancel=cancel))
            if not units:
                continue

            def counit_c(x, ir=ir):
                return [m for m in Bf.hom(ir.obj[x], x) if B.is_identity(m[1])]

            counits = list(enumerate_nattrans(ir, identity_functor(Bf), comp_cands=counit_c, cap=cap, cancel=cancel))
            for eta in units:
                for eps in counits:
                    if _triangles(i, r, eta, eps):
                        found = (r, eta, eps)
                        break
                if found:
                    break
            if found:
                break
    except CardinalityExceeded:
        if fib:
            return ChevalleyReport(f, fib, False, "inconclusive")
        return ChevalleyReport(f, fib, False, "agree")
    adj = found is not None
    verdict = "agree" if adj == fib else "disagree"
    if found:
        return ChevalleyReport(f, fib, True, verdict, *found)
    return ChevalleyReport(f, fib, False, verdict)


def _triangles(i: FinFunctor, r: FinFunctor, eta: NatTrans, eps: NatTrans) -> bool:
    A, Bf = i.dom, i.cod
    for a in A.objects:
        ia = i.obj[a]
        if Bf.comp[(eps.comp[ia], i.mor[eta.comp[a]])] != Bf.identity[ia]:
            return False
    for x in Bf.objects:
        rx = r.obj[x]
        if A.comp[(r.mor[eps.comp[x]], eta.comp[rx])] != A.identity[rx]:
            return False
    return True


# ---------------------------------------------------------------------------
# closure properties


def pullback_leg(f: FinFunctor, k: FinFunctor) -> FinFunctor:
    """The projection ``P -> dom(k)`` of the strict pullback of ``f`` along ``k``."""
    from .comma import strict_pullback

    sq = strict_pullback(k, f)
    return sq.p


def closure_suite(fibrations, functors, *, opfib: bool = False) -> Report:
    """Composition closure and pullback stability over a corpus.

    ``fibrations`` should already be certified; ``functors`` supplies the maps
    to pull back along.
    """
    test = is_opfibration if opfib else is_fibration
    kind = "opfib" if opfib else "fib"
    rep = Report()
    for n, p in enumerate(fibrations):
        rep.add(f"{kind}-input:{n}", test(p))
        rep.add(f"{kind}-identity:{n}", compose_functors(p, identity_functor(p.dom)) == p)
    for n, p in enumerate(fibrations):
        for m, q in enumerate(fibrations):
            if q.cod == p.dom:
                rep.add(f"{kind}-compose:{n}.{m}", test(compose_functors(p, q)), {"outer": n, "inner": m})
    for n, p in enumerate(fibrations):
        for m, k in enumerate(functors):
            if k.cod == p.cod:
                rep.add(f"{kind}-pullback:{n}.{m}", test(pullback_leg(p, k)), {"fibration": n, "along": m})
    return rep


__all__ = [
    "CartesianCertificate", "Cleavage", "DiscreteFibrationSpan", "ChevalleyReport",
    "is_cartesian", "is_opcartesian", "cartesian_lift", "cartesian_lifts", "missing_lift",
    "is_fibration", "is_opfibration", "choose_cleavage", "is_cartesian_2cell",
    "is_discrete_fibration_span", "is_discrete_fibration", "is_discrete_opfibration",
    "chevalley_check", "closure_suite", "pullback_leg",
]
