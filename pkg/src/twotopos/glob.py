"""Truncated globular categories and the span construction over the globe category.

The globe category has objects ``0..n`` and two generators ``σ, τ: m -> m+1``
subject to ``στ = ττ`` and ``τσ = σσ``. Every composite ``m -> m+k`` (``k > 0``)
is therefore decided by the first generator applied, so the arrows are written
``(m, m2, "s")``, ``(m, m2, "t")`` and the identities ``(m, m, "1")``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (
    FinCategory,
    FinFunctor,
    NatTrans,
    compose_functors,
    enumerate_nattrans,
    functor_category,
    identity_functor,
    is_iso_functor,
    opposite,
    opposite_functor,
    preorder,
    terminal,
    to_terminal,
    whisker_right,
)
from .errors import TruncationUnderflow
from .report import Report

DEFAULT_TRUNC = 3
LETTERS = ("s", "t")


@dataclass(frozen=True, eq=False)
class TruncatedG:
    n: int
    category: FinCategory


def build_G(n: int = DEFAULT_TRUNC) -> TruncatedG:
    """The globe category cut off at level ``n``."""
    if n < 0:
        raise ValueError("truncation must be non-negative")
    objs = list(range(n + 1))
    mors = [((m, m, "1"), m, m) for m in objs]
    mors += [((m, m2, x), m, m2) for m in objs for m2 in objs if m < m2 for x in LETTERS]
    ident = {m: (m, m, "1") for m in objs}
    comp = {}
    for f, a, b in mors:
        for g, b2, c in mors:
            if b2 != b:
                continue
            if f[2] == "1":
                comp[(g, f)] = g
            elif g[2] == "1":
                comp[(g, f)] = f
            else:
                comp[(g, f)] = (a, c, f[2])  # the first generator decides
    return TruncatedG(n, FinCategory(objs, mors, ident, comp, name=f"G<={n}"))


def words_normal_forms(m: int, m2: int) -> set:
    """Oracle: saturate all words in σ, τ modulo the two relations."""
    k = m2 - m
    if k == 0:
        return {"1"}
    if k < 0:
        return set()
    forms = set()
    for w in itertools.product(LETTERS, repeat=k):
        w = list(w)  # w[0] is applied first
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1):
                # the letter after w[i] rewrites to w[i]: στ=ττ, τσ=σσ
                if w[i + 1] != w[i]:
                    w[i + 1] = w[i]
                    changed = True
        forms.add("".join(w))
    return forms


def slice_objects(m: int) -> list:
    return [(j, x) for j in range(m) for x in LETTERS] + [(m, "1")]


def slice(n: int, m: int | None = None) -> FinCategory:
    """The poset of arrows into ``m``; ``(j, x) <= (j2, y)`` when ``j < j2``."""
    if m is None:
        m = n
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    return _slice(m)


@lru_cache(maxsize=None)
def _slice(m: int) -> FinCategory:
    objs = slice_objects(m)
    rel = [(a, b) for a in objs for b in objs if a[0] < b[0]]
    return preorder(objs, rel, name=f"G/{m}")


def op_slice(m: int) -> FinCategory:
    return opposite(slice(m, m))


def shriek(m: int, letter: str) -> FinFunctor:
    """Postcomposition with the generator ``m -> m+1`` as a map of slices."""
    S, T = slice(m, m), slice(m + 1, m + 1)
    obj = {a: (a if a[1] != "1" else (m, letter)) for a in S.objects}
    mor = {u: (obj[S.src[u]], obj[S.tgt[u]]) for u in S.morphisms}
    return FinFunctor(S, T, obj, mor, name=f"{letter}!")


def shriek_arrow(f, m_top: int) -> FinFunctor:
    """``f^!: G/m -> G/m_top`` for an arrow ``f: m -> m_top`` of the globe category."""
    m, m2, x = f
    S, T = slice(m, m), slice(m2, m2)
    if x == "1":
        return identity_functor(S)

    def go(a):
        if a[1] == "1":
            return (m, x)
        return a  # first generator is unchanged by postcomposition

    obj = {a: go(a) for a in S.objects}
    mor = {u: (obj[S.src[u]], obj[S.tgt[u]]) for u in S.morphisms}
    return FinFunctor(S, T, obj, mor)


# ---------------------------------------------------------------------------
# truncated globular categories


@dataclass(eq=False)
class TruncatedGlobularCategory:
    levels: list            # X_0 .. X_n
    s: list                 # s[m]: X_{m+1} -> X_m
    t: list
    extra: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.levels) - 1

    def check_globular(self) -> bool:
        for m in range(len(self.levels) - 2):
            ss = compose_functors(self.s[m], self.s[m + 1])
            st = compose_functors(self.s[m], self.t[m + 1])
            ts = compose_functors(self.t[m], self.s[m + 1])
            tt = compose_functors(self.t[m], self.t[m + 1])
            if ss != st or ts != tt:
                return False
        return True


def restriction(X, Y, F: FinFunctor) -> FinFunctor:
    """``a |-> a F`` between functor categories ``X = [op T, Z]`` and ``Y = [op S, Z]``."""
    Fop = opposite_functor(F)
    obj = {k: compose_functors(G, Fop).key for k, G in X.functors.items()}
    mor = {k: whisker_right(al, Fop).key for k, al in X.transformations.items()}
    return FinFunctor(X.category, Y.category, obj, mor)


def sp(Z: FinCategory, n: int = DEFAULT_TRUNC, *, cap: int | None = None) -> TruncatedGlobularCategory:
    """Level ``m`` is ``[op(G/m), Z]``; ``s, t`` restrict along ``σ!``, ``τ!``."""
    fcs = [functor_category(op_slice(m), Z, cap=cap) for m in range(n + 1)]
    s = [restriction(fcs[m + 1], fcs[m], shriek(m, "s")) for m in range(n)]
    t = [restriction(fcs[m + 1], fcs[m], shriek(m, "t")) for m in range(n)]
    return TruncatedGlobularCategory([fc.category for fc in fcs], s, t, {"fcs": fcs, "Z": Z})


def sp_map(p: FinFunctor, n: int = DEFAULT_TRUNC, *, cap: int | None = None):
    """Postcomposition with ``p`` levelwise: ``sp(dom p) -> sp(cod p)``."""
    X, Y = sp(p.dom, n, cap=cap), sp(p.cod, n, cap=cap)
    comps = []
    for m in range(n + 1):
        FX, FY = X.extra["fcs"][m], Y.extra["fcs"][m]
        obj = {k: compose_functors(p, G).key for k, G in FX.functors.items()}
        mor = {}
        for k, al in FX.transformations.items():
            G2 = compose_functors(p, al.cod)
            mor[k] = NatTrans(compose_functors(p, al.dom), G2, {a: p.mor[c] for a, c in al.comp.items()}).key
        comps.append(FinFunctor(FX.category, FY.category, obj, mor))
    return X, Y, comps


@dataclass(eq=False)
class GlobMap:
    dom: TruncatedGlobularCategory
    cod: TruncatedGlobularCategory
    comps: list

    def is_valid(self) -> bool:
        for m in range(len(self.comps) - 1):
            for leg_x, leg_y in ((self.dom.s[m], self.cod.s[m]), (self.dom.t[m], self.cod.t[m])):
                if compose_functors(self.comps[m], leg_x) != compose_functors(leg_y, self.comps[m + 1]):
                    return False
        return True


def compose_glob(G: GlobMap, F: GlobMap) -> GlobMap:
    return GlobMap(F.dom, G.cod, [compose_functors(g, f) for g, f in zip(G.comps, F.comps)])


def identity_glob(X: TruncatedGlobularCategory) -> GlobMap:
    return GlobMap(X, X, [identity_functor(L) for L in X.levels])


def same_glob_maps(F: GlobMap, G: GlobMap) -> bool:
    return all(f == g for f, g in zip(F.comps, G.comps))


def sigma(X: TruncatedGlobularCategory) -> TruncatedGlobularCategory:
    """Prepend a terminal level."""
    one = terminal()
    bang = to_terminal(X.levels[0], one)
    return TruncatedGlobularCategory([one] + list(X.levels), [bang] + list(X.s), [bang] + list(X.t))


def d_shift(X: TruncatedGlobularCategory) -> TruncatedGlobularCategory:
    """Forget level 0."""
    if len(X.levels) < 2:
        raise TruncationUnderflow("cannot drop the only level")
    return TruncatedGlobularCategory(list(X.levels[1:]), list(X.s[1:]), list(X.t[1:]))


def sigma_map(F: GlobMap) -> GlobMap:
    SX, SY = sigma(F.dom), sigma(F.cod)
    return GlobMap(SX, SY, [identity_functor(SX.levels[0])] + list(F.comps))


def d_map(F: GlobMap) -> GlobMap:
    return GlobMap(d_shift(F.dom), d_shift(F.cod), list(F.comps[1:]))


def unit_D_Sigma(X: TruncatedGlobularCategory) -> GlobMap:
    """``X -> Σ D X``: the unique map to ``1`` at level 0, identities above."""
    SDX = sigma(d_shift(X))
    return GlobMap(X, SDX, [to_terminal(X.levels[0], SDX.levels[0])] + [identity_functor(L) for L in X.levels[1:]])


def counit_D_Sigma(Y: TruncatedGlobularCategory) -> GlobMap:
    """``D Σ Y -> Y``, the identity levelwise."""
    return GlobMap(d_shift(sigma(Y)), Y, [identity_functor(L) for L in Y.levels])


def is_terminal_category(C: FinCategory) -> bool:
    return len(C.objects) == 1 and len(C.morphisms) == 1


def unit_is_iso(X: TruncatedGlobularCategory) -> bool:
    return all(is_iso_functor(F) for F in unit_D_Sigma(X).comps)


def verify_D_Sigma(corpus) -> Report:
    """Triangle identities of ``D ⊣ Σ`` and invertibility of the counit."""
    rep = Report()
    for i, X in enumerate(corpus):
        eta = unit_D_Sigma(X)
        tri1 = compose_glob(counit_D_Sigma(d_shift(X)), d_map(eta))
        rep.add(f"{i}:triangle-D", same_glob_maps(tri1, identity_glob(d_shift(X))))
        eta_s = unit_D_Sigma(sigma(X))
        tri2 = compose_glob(sigma_map(counit_D_Sigma(X)), eta_s)
        rep.add(f"{i}:triangle-Sigma", same_glob_maps(tri2, identity_glob(sigma(X))))
        eps = counit_D_Sigma(X)
        rep.add(f"{i}:counit-iso", all(is_iso_functor(F) for F in eps.comps) and eps.is_valid())
        rep.add(f"{i}:unit-valid", eta.is_valid())
        rep.add(f"{i}:unit-iso-iff-terminal-base", unit_is_iso(X) == is_terminal_category(X.levels[0]))
    return rep


def glob_corpus(n: int = 2) -> list[TruncatedGlobularCategory]:
    """Small globular categories: ``sp`` of a few targets and suspensions of them."""
    from .corpus import cat
    from .omega import build_omega

    base = [
        sp(cat("1"), n), sp(cat("2"), n), sp(build_omega(2).omega, n), sp(cat("disc2"), n),
        sp(cat("3"), n - 1), sp(cat("par"), n - 1), sp(cat("iso"), n - 1),
    ]
    extra = [sigma(X) for X in base[:4]] + [sigma(sigma(base[0])), d_shift(base[1]), d_shift(base[3])]
    return base + extra


# ---------------------------------------------------------------------------
# padding and suspension of the truth-value spans


def i_k_pad(X: FinFunctor, k: int, ctx, *, pointed: bool = False) -> FinFunctor:
    """Put ``1`` in the bottom ``k`` levels and the ``(n-k)``-span ``X`` above.

    ``X: op(G/(n-k)) -> Ω``; with ``pointed`` the target is the pointed ``Ω``
    and the padding uses the one-element set with its point.
    """
    if k == 0:
        return X
    src = X.dom
    m = max(a[0] for a in src.objects)
    n = m + k
    T = op_slice(n)
    target = ctx.omega_dot if pointed else ctx.omega
    one = (1, 0) if pointed else 1

    def lift(a):
        return (a[0] - k, a[1]) if a[0] >= k else None

    obj = {}
    for a in T.objects:
        la = lift(a)
        obj[a] = one if la is None else X.obj[la]
    mor = {}
    for u in T.morphisms:  # u = (a, b) with a <= b in the slice, so u: b -> a here
        a, b = u
        if lift(a) is None:
            mor[u] = target.hom(obj[b], obj[a])[0]  # the unique map into 1
        else:
            mor[u] = X.mor[(lift(a), lift(b))]
    return FinFunctor(T, target, obj, mor, name=f"i_{k}")


def suspension_square(ctx, n: int = 2, *, cap: int | None = None):
    """Per level, the square ``Σ sp(τ)`` over ``sp(τ)`` along ``i_1`` (and its pointed twin).

    Returns one strict square per level, or None where the square fails to commute.
    """
    from .comma import STRICT, square_from

    lower = sp_map(ctx.tau, n - 1, cap=cap)   # (sp Ω_•, sp Ω, levels) at truncation n-1
    Xd, X, tau_top = sp_map(ctx.tau, n, cap=cap)
    one = terminal()
    squares = []
    for m in range(n + 1):
        if m == 0:
            left = identity_functor(one)
            k, kd = _const_span(X, 0, 1), _const_span(Xd, 0, (1, 0))
            i1 = FinFunctor(one, X.levels[0], {"*": k}, {"1*": X.levels[0].identity[k]})
            i1d = FinFunctor(one, Xd.levels[0], {"*": kd}, {"1*": Xd.levels[0].identity[kd]})
        else:
            left = lower[2][m - 1]
            i1 = _pad_functor(lower[1].extra["fcs"][m - 1], X.extra["fcs"][m], ctx, pointed=False)
            i1d = _pad_functor(lower[0].extra["fcs"][m - 1], Xd.extra["fcs"][m], ctx, pointed=True)
        right = tau_top[m]
        if compose_functors(right, i1d) != compose_functors(i1, left):
            squares.append(None)
            continue
        lam = NatTrans(compose_functors(right, i1d), compose_functors(i1, left),
                       {x: right.cod.identity[right.obj[i1d.obj[x]]] for x in left.dom.objects})
        squares.append(square_from(left.dom, i1d, left, lam, right, i1, STRICT))
    return squares


def _const_span(X, m, value):
    fc = X.extra["fcs"][m]
    for k, G in fc.functors.items():
        if all(v == value for v in G.obj.values()):
            return k
    raise KeyError(value)


def _pad_functor(FA, FB, ctx, *, pointed: bool) -> FinFunctor:
    obj = {k: i_k_pad(G, 1, ctx, pointed=pointed).key for k, G in FA.functors.items()}
    mor = {}
    for k, al in FA.transformations.items():
        P, Q = i_k_pad(al.dom, 1, ctx, pointed=pointed), i_k_pad(al.cod, 1, ctx, pointed=pointed)
        comp = {}
        for a in P.dom.objects:
            if a[0] >= 1:
                comp[a] = al.comp[(a[0] - 1, a[1])]
            else:
                comp[a] = P.cod.identity[P.obj[a]]
        mor[k] = NatTrans(P, Q, comp).key
    return FinFunctor(FA.category, FB.category, obj, mor, name="i_1")


def verify_suspension_square(ctx, n: int = 2, probes=None) -> Report:
    from .comma import verify_lax_pullback
    from .corpus import probe_family

    probes = probe_family("tiny") if probes is None else probes
    rep = Report()
    for m, sq in enumerate(suspension_square(ctx, n)):
        if sq is None:
            rep.add(f"level{m}:commutes", False)
            continue
        rep.add(f"level{m}:commutes", True)
        rep.extend(verify_lax_pullback(sq, probes), prefix=f"level{m}:")
    return rep


# ---------------------------------------------------------------------------
# the counit of E ⊣ Sp


def epsilon_component(A: FinCategory, C_obj: int, a: FinFunctor):
    """``ε_A(C, a) = a(1_C)``."""
    return a.obj[(C_obj, "1")]


_E_CACHE: dict = {}


def E_sp(A: FinCategory, n: int, *, cap: int | None = None):
    """Objects ``(m, a)`` with ``a`` an ``m``-span in ``A``; arrows ``(f, f̄)``.

    For ``f: m2 -> m1`` an arrow ``(m1, a1) -> (m2, a2)`` carries
    ``f̄: a1 op(f^!) => a2``.  Results are memoized per ``(A, n)``.
    """
    hit = _E_CACHE.get((A, n))
    if hit is None:
        hit = _E_CACHE[(A, n)] = _build_E_sp(A, n, cap)
    return hit


def _build_E_sp(A: FinCategory, n: int, cap):
    Gc = build_G(n).category
    fcs = [functor_category(op_slice(m), A, cap=cap) for m in range(n + 1)]
    objs = [(m, k) for m in range(n + 1) for k in fcs[m].functors]
    mors = []
    for (m1, k1) in objs:
        a1 = fcs[m1].functors[k1]
        for f in Gc.morphisms:
            if Gc.tgt[f] != m1:
                continue
            m2 = Gc.src[f]
            pulled = compose_functors(a1, opposite_functor(shriek_arrow(f, m1)))
            for k2, a2 in fcs[m2].functors.items():
                for fb in enumerate_nattrans(pulled, a2, cap=cap):
                    mors.append((((m1, k1), f, fb.key, (m2, k2)), (m1, k1), (m2, k2), fb))
    cells = {m[0]: m[3] for m in mors}
    out: dict = {}
    for m in mors:
        out.setdefault(m[1], []).append(m)
    comp = {}
    for (i1, s1, t1, fb1) in mors:
        for (i2, s2, t2, fb2) in out.get(t1, ()):
            f, g = i1[1], i2[1]  # f: m2 -> m1, g: m3 -> m2
            fg = Gc.comp[(f, g)]
            gsh = shriek_arrow(g, Gc.tgt[g])
            c = {x: A.comp[(fb2.comp[x], fb1.comp[gsh.obj[x]])] for x in fb2.dom.dom.objects}
            a1 = fcs[s1[0]].functors[s1[1]]
            pulled = compose_functors(a1, opposite_functor(shriek_arrow(fg, s1[0])))
            key = NatTrans(pulled, fb2.cod, c).key
            comp[(i2, i1)] = (s1, fg, key, t2)
    ident = {}
    for (m, k) in objs:
        a = fcs[m].functors[k]
        idf = Gc.identity[m]
        ident[(m, k)] = ((m, k), idf, NatTrans(a, a, {x: A.identity[a.obj[x]] for x in a.dom.objects}).key, (m, k))
    E = FinCategory(objs, [(m[0], m[1], m[2]) for m in mors], ident, comp, name=f"ESp({A.name})")
    E._cache["fcs"] = fcs
    E._cache["cells"] = cells
    return E


def epsilon_functor(E: FinCategory, A: FinCategory) -> FinFunctor:
    """``(m, a) |-> a(1_m)``; on arrows ``f̄_{1} a1(1_{m1} -> f)``."""
    fcs = E._cache["fcs"]
    obj = {(m, k): epsilon_component(A, m, fcs[m].functors[k]) for (m, k) in E.objects}
    mor = {}
    for u in E.morphisms:
        (m1, k1), f, _, (m2, k2) = u
        a1 = fcs[m1].functors[k1]
        fb = E._cache["cells"][u]
        top1, top2 = (m1, "1"), (m2, "1")
        fx = shriek_arrow(f, m1).obj[top2]
        S1 = op_slice(m1)
        t_f = S1.hom(top1, fx)[0]
        mor[u] = A.comp[(fb.comp[top2], a1.mor[t_f])]
    return FinFunctor(E, A, obj, mor, name="eps")


def E_sp_map(p: FinFunctor, EA: FinCategory, EB: FinCategory) -> FinFunctor:
    fa, fb = EA._cache["fcs"], EB._cache["fcs"]
    obj = {(m, k): (m, compose_functors(p, fa[m].functors[k]).key) for (m, k) in EA.objects}
    mor = {}
    for u in EA.morphisms:
        s, f, _, t = u
        cell = EA._cache["cells"][u]
        a1 = fa[s[0]].functors[s[1]]
        pulled = compose_functors(compose_functors(p, a1), opposite_functor(shriek_arrow(f, s[0])))
        pa2 = compose_functors(p, fa[t[0]].functors[t[1]])
        key = NatTrans(pulled, pa2, {x: p.mor[c] for x, c in cell.comp.items()}).key
        mor[u] = (obj[s], f, key, obj[t])
    return FinFunctor(EA, EB, obj, mor, name="ESp(p)")


def naturality_square(p: FinFunctor, n: int = 2, *, cap: int | None = None):
    from .comma import STRICT, square_from

    A, B = p.dom, p.cod
    EA, EB = E_sp(A, n, cap=cap), E_sp(B, n, cap=cap)
    eA, eB = epsilon_functor(EA, A), epsilon_functor(EB, B)
    Ep = E_sp_map(p, EA, EB)
    if compose_functors(p, eA) != compose_functors(eB, Ep):
        return None
    lam = NatTrans(compose_functors(p, eA), compose_functors(eB, Ep),
                   {x: B.identity[p.obj[eA.obj[x]]] for x in EA.objects})
    return square_from(EA, eA, Ep, lam, p, eB, STRICT)


def naturality_pullback_check(p: FinFunctor, n: int = 2, probes=None) -> bool:
    """Is the naturality square of ``ε`` at ``p`` a pullback?

    The canonical comparison into the strict pullback must be bijective on
    objects and arrows; ``probes`` additionally runs the probe-based check.
    """
    from .comma import strict_pullback, verify_lax_pullback

    sq = naturality_square(p, n)
    if sq is None:
        return False
    pb = strict_pullback(sq.f, sq.g)
    P, f, g = sq.apex, sq.f, sq.g
    ob = {x: (sq.p.obj[x], f.cod.identity[f.obj[sq.p.obj[x]]], sq.q.obj[x]) for x in P.objects}
    mo = {m: (ob[P.src[m]], sq.p.mor[m], sq.q.mor[m], ob[P.tgt[m]]) for m in P.morphisms}
    if set(ob.values()) != set(pb.apex.objects) or len(set(ob.values())) != len(ob):
        return False
    if set(mo.values()) != set(pb.apex.morphisms) or len(set(mo.values())) != len(mo):
        return False
    if probes is not None:
        return verify_lax_pullback(sq, probes).ok
    return True


def sp_tau_levels(ctx, n: int = 2):
    """``sp(τ)`` as a list of levelwise functors."""
    return sp_map(ctx.tau, n)[2]


# ---------------------------------------------------------------------------
# classification in globular categories


def globular_probes(n: int = 2) -> list[TruncatedGlobularCategory]:
    """The terminal globular category and a single 1-cell ``0 -> 1`` with trivial higher levels."""
    from .core import discrete

    one = [terminal() for _ in range(n + 1)]
    bang = [FinFunctor(one[m + 1], one[m], {"*": "*"}, {"1*": "1*"}) for m in range(n)]
    P1 = TruncatedGlobularCategory(one, bang, list(bang))
    D = discrete([0, 1], name="disc2")
    lv = [D] + [terminal() for _ in range(n)]
    s = [FinFunctor(lv[1], D, {"*": 0}, {"1*": D.identity[0]})]
    t = [FinFunctor(lv[1], D, {"*": 1}, {"1*": D.identity[1]})]
    for m in range(1, n):
        s.append(FinFunctor(lv[m + 1], lv[m], {"*": "*"}, {"1*": "1*"}))
        t.append(FinFunctor(lv[m + 1], lv[m], {"*": "*"}, {"1*": "1*"}))
    P2 = TruncatedGlobularCategory(lv, s, t)
    return [P1, P2]


def globular_maps(B: TruncatedGlobularCategory, Y: TruncatedGlobularCategory, *, cap: int | None = None) -> list[GlobMap]:
    """Every levelwise family of functors commuting with ``s`` and ``t``."""
    from .core import enumerate_functors

    per = [list(enumerate_functors(B.levels[m], Y.levels[m], cap=cap)) for m in range(len(B.levels))]
    out = []

    def go(m, acc):
        if m == len(B.levels):
            out.append(GlobMap(B, Y, list(acc)))
            return
        for F in per[m]:
            if m > 0:
                prev = acc[m - 1]
                if compose_functors(prev, B.s[m - 1]) != compose_functors(Y.s[m - 1], F):
                    continue
                if compose_functors(prev, B.t[m - 1]) != compose_functors(Y.t[m - 1], F):
                    continue
            acc.append(F)
            go(m + 1, acc)
            acc.pop()

    go(0, [])
    return out


def globular_2cells(F: GlobMap, G: GlobMap, *, cap: int | None = None) -> list[list[NatTrans]]:
    from .core import whisker_left

    B, Y = F.dom, F.cod
    per = [list(enumerate_nattrans(F.comps[m], G.comps[m], cap=cap)) for m in range(len(B.levels))]
    out = []

    def go(m, acc):
        if m == len(per):
            out.append(list(acc))
            return
        for al in per[m]:
            if m > 0:
                ok = all(
                    whisker_left(Yl[m - 1], al).comp == whisker_right(acc[m - 1], Bl[m - 1]).comp
                    for Yl, Bl in ((Y.s, B.s), (Y.t, B.t))
                )
                if not ok:
                    continue
            acc.append(al)
            go(m + 1, acc)
            acc.pop()

    go(0, [])
    return out


def _face_on_pullback(sqs, B, Xd, m, leg: str) -> FinFunctor:
    """The face map ``P_{m+1} -> P_m`` induced on levelwise strict pullbacks."""
    bl = (B.s if leg == "s" else B.t)[m]
    el = (Xd.s if leg == "s" else Xd.t)[m]
    hi, lo = sqs[m + 1].apex, sqs[m].apex
    obj = {}
    for (b, h, e) in hi.objects:
        tb, te = bl.obj[b], el.obj[e]
        k = (tb, sqs[m].f.cod.identity[sqs[m].f.obj[tb]], te)
        obj[(b, h, e)] = k
    mor = {}
    for u in hi.morphisms:
        x, al, ga, y = u
        mor[u] = (obj[x], bl.mor[al], el.mor[ga], obj[y])
    return FinFunctor(hi, lo, obj, mor)


def globular_classifying_check(ctx, n: int = 2, probes=None, *, cap: int = 100_000) -> Report:
    """Globular 2-cells ``f => g`` into ``sp(Ω)`` biject with face-compatible maps of pullbacks of ``sp(τ)``."""
    from .comma import strict_pullback
    from .span import Span, lift_2cell, span_maps

    Xd, X, tau = sp_map(ctx.tau, n, cap=cap)
    probes = globular_probes(n) if probes is None else probes
    rep = Report()
    for pi, B in enumerate(probes):
        maps = globular_maps(B, X, cap=cap)
        pbs = {id(F): [strict_pullback(F.comps[m], tau[m]) for m in range(n + 1)] for F in maps}
        faces = {id(F): [(_face_on_pullback(pbs[id(F)], B, Xd, m, "s"), _face_on_pullback(pbs[id(F)], B, Xd, m, "t"))
                         for m in range(n)] for F in maps}
        witness = None
        for F in maps:
            for G in maps:
                sf, sg = pbs[id(F)], pbs[id(G)]
                lifted = set()
                for cell in globular_2cells(F, G, cap=cap):
                    Hs = tuple(lift_2cell(tau[m], cell[m], squares=(sf[m], sg[m])).G_phi.key for m in range(n + 1))
                    if Hs in lifted:
                        witness = {"clause": "faithful", "probe": pi}
                        break
                    lifted.add(Hs)
                if witness:
                    break
                # face-compatible levelwise maps of the pulled back discrete opfibrations
                per = [list(span_maps(Span(to_terminal(sf[m].apex), sf[m].p), Span(to_terminal(sg[m].apex), sg[m].p), cap=cap))
                       for m in range(n + 1)]
                compatible = set()

                def go(m, acc):
                    if m == n + 1:
                        compatible.add(tuple(H.key for H in acc))
                        return
                    for H in per[m]:
                        if m > 0:
                            fs_, ft_ = faces[id(F)][m - 1]
                            gs_, gt_ = faces[id(G)][m - 1]
                            if compose_functors(acc[m - 1], fs_) != compose_functors(gs_, H):
                                continue
                            if compose_functors(acc[m - 1], ft_) != compose_functors(gt_, H):
                                continue
                        acc.append(H)
                        go(m + 1, acc)
                        acc.pop()

                go(0, [])
                if compatible != lifted:
                    witness = {"clause": "full" if lifted <= compatible else "typing", "probe": pi,
                               "maps": len(compatible), "cells": len(lifted)}
                    break
            if witness:
                break
        rep.add(f"globular-classifying:probe{pi}", witness is None, witness)
    return rep


__all__ = [
    "TruncatedG", "build_G", "words_normal_forms", "slice", "op_slice", "shriek", "shriek_arrow",
    "TruncatedGlobularCategory", "sp", "sp_map", "GlobMap", "sigma", "d_shift", "sigma_map", "d_map",
    "unit_D_Sigma", "counit_D_Sigma", "unit_is_iso", "verify_D_Sigma", "glob_corpus", "i_k_pad",
    "suspension_square", "verify_suspension_square", "epsilon_component", "E_sp", "epsilon_functor",
    "E_sp_map", "naturality_square", "naturality_pullback_check", "sp_tau_levels", "DEFAULT_TRUNC",
    "globular_probes", "globular_maps", "globular_2cells", "globular_classifying_check",
]
