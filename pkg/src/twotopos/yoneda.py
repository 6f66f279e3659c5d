"""Yoneda-structure data over a cardinality-bounded truth-value category.

Presheaves on ``A`` are functors ``A^op -> Ω_λ``; since ``Ω_λ`` is skeletal a
presheaf is literally its table of cardinalities and index maps, and ``y_A``
lands on those tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    FinCategory,
    FinFunctor,
    NatTrans,
    compose_functors,
    enumerate_functors,
    enumerate_nattrans,
    find_natural_iso,
    functor_category,
    identity_functor,
    identity_nat,
    is_fully_faithful,
    opposite,
    product,
)
from .errors import CardinalityExceeded, NotAdmissible
from .kan import ExtensionCell, res, verify_absolute, verify_left_extension, verify_pointwise_left_extension
from .omega import OmegaContext, build_omega
from .report import INCONCLUSIVE, Report


class YonedaContext:
    """``PSh A = [A^op, Ω_λ]`` with a memo per base category."""

    def __init__(self, lam: int = 2, cap: int | None = None):
        self.lam = lam
        self.omega_ctx: OmegaContext = build_omega(lam)
        self.omega = self.omega_ctx.omega
        self.cap = cap
        self._psh: dict = {}

    def psh(self, A: FinCategory):
        hit = self._psh.get(A)
        if hit is None:
            hit = functor_category(opposite(A), self.omega, cap=self.cap, name=f"PSh({A.name})")
            self._psh[A] = hit
        return hit

    def __repr__(self):
        return f"YonedaContext(lam={self.lam})"


@dataclass
class AdmissibilityCertificate:
    f: FinFunctor
    witness: dict = field(default_factory=dict)  # (a, b) -> |B(fa, b)|


def hom_table(f: FinFunctor) -> dict:
    A, B = f.dom, f.cod
    return {(a, b): len(B.hom(f.obj[a], b)) for a in A.objects for b in B.objects}


def is_admissible(f: FinFunctor, ctx: YonedaContext) -> AdmissibilityCertificate | None:
    table = hom_table(f)
    if all(n < ctx.lam for n in table.values()):
        return AdmissibilityCertificate(f, table)
    return None


def is_admissible_object(A: FinCategory, ctx: YonedaContext) -> bool:
    return is_admissible(identity_functor(A), ctx) is not None


def is_small(A: FinCategory, ctx: YonedaContext) -> bool:
    if not is_admissible_object(A, ctx):
        return False
    return is_admissible_object(ctx.psh(A).category, ctx)


def _require(f: FinFunctor, ctx: YonedaContext) -> None:
    if is_admissible(f, ctx) is None:
        raise NotAdmissible(f"{f.name or 'functor'} has a hom-set of size >= {ctx.lam}")


def hom_presheaf(f: FinFunctor, b, ctx: YonedaContext) -> FinFunctor:
    """``B(f-, b)`` as a functor ``A^op -> Ω``."""
    A, B = f.dom, f.cod
    obj = {a: len(B.hom(f.obj[a], b)) for a in A.objects}
    mor = {}
    for m in A.morphisms:  # m: a -> a2 acts B(f a2, b) -> B(f a, b)
        a, a2 = A.src[m], A.tgt[m]
        target = B.hom(f.obj[a], b)
        idx = {h: i for i, h in enumerate(target)}
        imgs = tuple(idx[B.comp[(h, f.mor[m])]] for h in B.hom(f.obj[a2], b))
        mor[m] = (obj[a2], obj[a], imgs)
    return FinFunctor(opposite(A), ctx.omega, obj, mor)


def B_f1(f: FinFunctor, ctx: YonedaContext) -> FinFunctor:
    """``B(f, 1): B -> PSh A`` on literal hom tables."""
    _require(f, ctx)
    A, B = f.dom, f.cod
    P = ctx.psh(A)
    pre = {b: hom_presheaf(f, b, ctx) for b in B.objects}
    obj = {b: P.object_of(pre[b]) for b in B.objects}
    mor = {}
    for v in B.morphisms:
        b, b2 = B.src[v], B.tgt[v]
        comp = {}
        for a in A.objects:
            src = B.hom(f.obj[a], b)
            idx = {h: i for i, h in enumerate(B.hom(f.obj[a], b2))}
            comp[a] = (len(src), len(idx), tuple(idx[B.comp[(v, h)]] for h in src))
        mor[v] = P.morphism_of(NatTrans(pre[b], pre[b2], comp))
    return FinFunctor(B, P.category, obj, mor, name="B(f,1)")


def yoneda_map(A: FinCategory, ctx: YonedaContext) -> FinFunctor:
    y = B_f1(identity_functor(A), ctx)
    return FinFunctor(y.dom, y.cod, y.obj, y.mor, name="y")


def chi(f: FinFunctor, ctx: YonedaContext) -> NatTrans:
    """``χ^f: y_A => B(f,1) f`` from the arrow maps of ``f``."""
    A, B = f.dom, f.cod
    y = yoneda_map(A, ctx)
    Bf = B_f1(f, ctx)
    P = ctx.psh(A)
    comp = {}
    for a in A.objects:
        src_pre = P.functor(y.obj[a])
        tgt_pre = P.functor(Bf.obj[f.obj[a]])
        cs = {}
        for x in A.objects:
            idx = {h: i for i, h in enumerate(B.hom(f.obj[x], f.obj[a]))}
            cs[x] = (len(A.hom(x, a)), len(idx), tuple(idx[f.mor[u]] for u in A.hom(x, a)))
        comp[a] = P.morphism_of(NatTrans(src_pre, tgt_pre, cs))
    return NatTrans(y, compose_functors(Bf, f), comp)


def chi_comma_check(f: FinFunctor, ctx: YonedaContext) -> bool:
    """Compare ``χ^f`` with the comma-level map ``A/A -> f/B``, ``(x,u,a) |-> (x, f u, f a)``."""
    from .comma import comma

    A, B = f.dom, f.cod
    AA = comma(identity_functor(A), identity_functor(A)).apex
    fB = comma(f, identity_functor(B)).apex
    x = chi(f, ctx)
    P = ctx.psh(A)
    for (s, u, a) in AA.objects:
        image = (s, f.mor[u], f.obj[a])
        if not fB.has_object(image):
            return False
        comp = P.nat(x.comp[a]).comp[s]
        i = A.hom(s, a).index(u)
        if B.hom(f.obj[s], f.obj[a])[comp[2][i]] != f.mor[u]:
            return False
    return True


# ---------------------------------------------------------------------------
# attributes


def attribute_check(S, ctx: YonedaContext) -> bool:
    """A two-sided discrete fibration whose fibres have fewer than ``λ`` elements."""
    from .fib import is_discrete_fibration_span

    d, c = S.left, S.right
    if is_discrete_fibration_span(d, c) is None:
        return False
    sizes: dict = {}
    for e in d.dom.objects:
        k = (d.obj[e], c.obj[e])
        sizes[k] = sizes.get(k, 0) + 1
    return all(n < ctx.lam for n in sizes.values())


def comma_span(f: FinFunctor):
    from .comma import comma
    from .span import Span

    sq = comma(f, identity_functor(f.cod))
    return Span(sq.p, sq.q)


def evaluation_profunctor(A: FinCategory, ctx: YonedaContext):
    """``(a, P) |-> P(a)``, classified by the identity of ``PSh A``."""
    from .span import Profunctor

    P = ctx.psh(A)
    PC = P.category
    sets, left, right = {}, {}, {}
    for a in A.objects:
        for k in PC.objects:
            sets[(a, k)] = tuple(range(P.functor(k).obj[a]))
    for u in A.morphisms:  # u: a2 -> a acts P(a) -> P(a2)
        a = A.tgt[u]
        for k in PC.objects:
            F = P.functor(k)
            for x in sets[(a, k)]:
                left[(u, k, x)] = F.mor[u][2][x]
    for v in PC.morphisms:
        al = P.nat(v)
        for a in A.objects:
            for x in sets[(a, PC.src[v])]:
                right[(v, a, x)] = al.comp[a][2][x]
    return Profunctor(A, PC, sets, left, right)


def epsilon(A: FinCategory, ctx: YonedaContext):
    """``ε_A``: the two-sided elements of evaluation, as a span ``A <- E -> PSh A``."""
    from .span import as_span, profunctor_to_dfib

    return as_span(profunctor_to_dfib(evaluation_profunctor(A, ctx)))


def epsilon_matches_comma(A: FinCategory, ctx: YonedaContext) -> bool:
    """``ε_A`` is an attribute isomorphic to ``y_A / PSh A``."""
    from .span import span_iso

    eps = epsilon(A, ctx)
    if not attribute_check(eps, ctx):
        return False
    return span_iso(eps, comma_span(yoneda_map(A, ctx))) is not None


def classifying_maps(S, ctx: YonedaContext, *, cap: int | None = None) -> list[FinFunctor]:
    """Every ``A^op x B -> Ω`` whose two-sided elements are isomorphic to ``S``."""
    from .span import Profunctor, as_span, profunctor_to_dfib, span_iso

    A, B = S.left.cod, S.right.cod
    Aop = opposite(A)
    D = product(Aop, B)
    out = []
    for F in enumerate_functors(D, ctx.omega, cap=cap):
        sets = {(a, b): tuple(range(F.obj[(a, b)])) for a in A.objects for b in B.objects}
        left, right = {}, {}
        for u in A.morphisms:
            for b in B.objects:
                m = F.mor[(u, B.identity[b])]
                for x in sets[(A.tgt[u], b)]:
                    left[(u, b, x)] = m[2][x]
        for v in B.morphisms:
            for a in A.objects:
                m = F.mor[(A.identity[a], v)]
                for x in sets[(a, B.src[v])]:
                    right[(v, a, x)] = m[2][x]
        T = as_span(profunctor_to_dfib(Profunctor(A, B, sets, left, right)))
        if span_iso(T, S, cap=cap) is not None:
            out.append(F)
    return out


# ---------------------------------------------------------------------------
# enlargement


def admissible_via_enlargement(f: FinFunctor, small: YonedaContext, big: YonedaContext) -> bool:
    """Does ``B'(f,1)`` factor through presheaves valued in the smaller ``Ω``?

    Because both truth-value categories are skeletal and the inclusion keeps
    cardinalities, the essential image is exactly the presheaves whose values
    stay below the small bound.
    """
    if big.lam <= small.lam:
        raise ValueError("the enlargement must have a strictly larger bound")
    Bf = B_f1(f, big)
    P = big.psh(f.dom)
    factors = all(
        n < small.lam for b in f.cod.objects for n in P.functor(Bf.obj[b]).obj.values()
    )
    direct = is_admissible(f, small) is not None
    if factors != direct:
        raise AssertionError(f"enlargement criterion disagrees with hom counts for {f.name!r}")
    return factors


# ---------------------------------------------------------------------------
# axioms


def verify_axioms(ctx: YonedaContext, corpus, probes=None, *, cap: int = 50_000, star: bool = True) -> Report:
    """Axiom 1 for each ``χ^f`` and axiom 3* by searching every lifting cell."""
    from .corpus import probe_family

    probes = probe_family("tiny") if probes is None else probes
    rep = Report()
    for n, f in enumerate(corpus):
        tag = f"{n}:{f.dom.name or len(f.dom.objects)}->{f.cod.name or len(f.cod.objects)}"
        if is_admissible(f, ctx) is None or not is_admissible_object(f.dom, ctx):
            rep.add(f"skip:{tag}", INCONCLUSIVE, "not admissible")
            continue
        try:
            x = chi(f, ctx)
            cell = ExtensionCell(x.dom, f, B_f1(f, ctx), x)
            rep.extend(verify_absolute(cell, probes, "lifting", cap=cap), prefix=f"axiom1:{tag}:")
            if star:
                rep.add(f"axiom3*:{tag}", *_axiom_star(f, ctx, probes, cap))
        except CardinalityExceeded as e:
            rep.add(f"axiom:{tag}", INCONCLUSIVE, str(e))
    return rep


def _axiom_star(f: FinFunctor, ctx: YonedaContext, probes, cap):
    A = f.dom
    y = yoneda_map(A, ctx)
    PA = ctx.psh(A).category
    tried = 0
    for g in enumerate_functors(f.cod, PA, cap=cap):
        gf = compose_functors(g, f)
        for phi in enumerate_nattrans(y, gf, cap=cap):
            cell = ExtensionCell(y, f, g, phi)
            if not verify_absolute(cell, probes, "lifting", cap=cap).ok:
                continue
            tried += 1
            if not verify_pointwise_left_extension(cell, cap=cap):
                return False, {"g": g.key, "phi": phi.key}
    return True, {"liftings": tried}


def yoneda_self_extension(A: FinCategory, ctx: YonedaContext, *, cap: int | None = None) -> bool:
    """The identity cell exhibits ``1`` as a left extension of ``y_A`` along itself."""
    y = yoneda_map(A, ctx)
    one = identity_functor(y.cod)
    return verify_left_extension(ExtensionCell(y, y, one, identity_nat(y)), cap=cap)


def yoneda_restricts_to_identity(A: FinCategory, ctx: YonedaContext) -> bool:
    """``PSh A(y_A, 1)`` is isomorphic to the identity of ``PSh A``."""
    y = yoneda_map(A, ctx)
    big = B_f1(y, ctx)
    one = identity_functor(big.dom)
    # B_f1(y) lands in PSh A literally, since y has domain A
    return find_natural_iso(big, one) is not None


def composite_law(f: FinFunctor, g: FinFunctor, ctx: YonedaContext) -> bool:
    """``B(fg, 1) ≅ res_g B(f, 1)`` for ``g: X -> A`` and ``f: A -> B``."""
    fg = compose_functors(f, g)
    lhs = B_f1(fg, ctx)
    rhs = compose_functors(res(g, ctx.psh(g.dom), ctx.psh(g.cod)), B_f1(f, ctx))
    return find_natural_iso(lhs, rhs) is not None


def ff_iff_chi_invertible(f: FinFunctor, ctx: YonedaContext) -> bool:
    P = ctx.psh(f.dom)
    x = chi(f, ctx)
    inv = all(P.category.is_iso(c) for c in x.comp.values())
    return inv == is_fully_faithful(f)


def presheaf_adjunctions(f: FinFunctor, ctx: YonedaContext) -> Report:
    """``lan_f ⊣ res_f ⊣ ran_f``: find unit and counit, then check both triangles."""
    from .core import find_adjunction, verify_adjunction
    from .kan import lan_along, ran_along

    A, B = f.dom, f.cod
    PA, PB = ctx.psh(A), ctx.psh(B)
    r = res(f, PA, PB)
    lan, _ = lan_along(f, yoneda_map(A, ctx), yoneda_map(B, ctx))
    ran = ran_along(f, PA, PB)
    rep = Report()
    for tag, L, R in (("lan-res", lan, r), ("res-ran", r, ran)):
        found = find_adjunction(L, R)
        ok = found is not None and verify_adjunction(L, R, *found)
        rep.add(f"{tag}", ok, None if ok else {"found": found is not None})
    return rep


def yoneda_corpus(max_objects: int = 3) -> list[FinFunctor]:
    """Identities on every small preorder plus every functor between preorders of size two."""
    from .corpus import preorders_upto

    pres = preorders_upto(max_objects)
    out = [identity_functor(P) for P in pres]
    two = [P for P in pres if len(P.objects) <= 2 and len(P.objects) > 0]
    for A in two:
        for B in two:
            out.extend(enumerate_functors(A, B))
    return out


__all__ = [
    "YonedaContext", "AdmissibilityCertificate", "hom_table", "is_admissible", "is_admissible_object",
    "is_small", "hom_presheaf", "B_f1", "yoneda_map", "chi", "chi_comma_check", "attribute_check",
    "comma_span", "evaluation_profunctor", "epsilon", "epsilon_matches_comma", "classifying_maps",
    "admissible_via_enlargement", "verify_axioms", "yoneda_self_extension",
    "yoneda_restricts_to_identity", "composite_law", "ff_iff_chi_invertible", "yoneda_corpus", "presheaf_adjunctions",
]
