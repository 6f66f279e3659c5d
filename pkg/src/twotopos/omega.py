"""Truth-value objects for finite cardinality bounds.

``build_omega(lam)`` is the skeletal category of sets with fewer than ``lam``
elements; object ``n`` is the set ``{0, ..., n-1}`` and a morphism is
``(n, m, images)``. The pointed variant has objects ``(n, i)`` and ``tau``
forgets the point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    FinCategory,
    FinFunctor,
    NatTrans,
    compose_functors,
    constant_functor,
    diagonal,
    enumerate_functors,
    enumerate_nattrans,
    find_adjunction,
    full_subcategory,
    functors,
    identity_functor,
    is_iso_functor,
    preorder,
    product,
    terminal,
    to_terminal,
    validate_functor,
    verify_adjunction,
)
from .errors import CardinalityExceeded, NoAdjoint, NotACosieve, NotAdmissible
from .fib import is_discrete_opfibration
from .report import Report


@dataclass(frozen=True, eq=False)
class OmegaContext:
    lam: int
    min_size: int
    omega: FinCategory
    omega_dot: FinCategory
    tau: FinFunctor

    @property
    def name(self) -> str:
        return f"Omega[{self.min_size}<=n<{self.lam}]"


def _set_category(sizes, name: str) -> FinCategory:
    objs = list(sizes)
    mors, comp = [], {}
    for n in objs:
        for m in objs:
            for imgs in itertools.product(range(m), repeat=n):
                mors.append(((n, m, imgs), n, m))
    out: dict = {}
    for mor in mors:
        out.setdefault(mor[1], []).append(mor[0])
    for f, n, m in mors:
        for g in out[m]:
            comp[(g, f)] = (n, g[1], tuple(g[2][i] for i in f[2]))
    ident = {n: (n, n, tuple(range(n))) for n in objs}
    return FinCategory(objs, mors, ident, comp, name=name)


@lru_cache(maxsize=None)
def build_omega(lam: int, min_size: int = 0) -> OmegaContext:
    """Skeletal sets of cardinality in ``[min_size, lam)`` and their pointed variant."""
    if lam < 2:
        raise ValueError("lambda must be at least 2")
    sizes = range(min_size, lam)
    Om = _set_category(sizes, f"Omega{lam}" + (f">={min_size}" if min_size else ""))
    dobjs = [(n, i) for n in sizes for i in range(n)]
    dmors = []
    for (n, i) in dobjs:
        for (m, j) in dobjs:
            for imgs in itertools.product(range(m), repeat=n):
                if imgs[i] == j:
                    dmors.append((((n, i), (m, j), imgs), (n, i), (m, j)))
    out: dict = {}
    for mor in dmors:
        out.setdefault(mor[1], []).append(mor[0])
    dcomp = {}
    for f, s, t in dmors:
        for g in out[t]:
            dcomp[(g, f)] = (s, g[1], tuple(g[2][k] for k in f[2]))
    dident = {(n, i): ((n, i), (n, i), tuple(range(n))) for (n, i) in dobjs}
    Od = FinCategory(dobjs, dmors, dident, dcomp, name=Om.name + "*")
    tau = FinFunctor(
        Od, Om,
        {o: o[0] for o in dobjs},
        {m: (m[0][0], m[1][0], m[2]) for m, _, _ in dmors},
        name="tau",
    )
    return OmegaContext(lam, min_size, Om, Od, tau)


def verify_context(ctx: OmegaContext, probes=None) -> Report:
    from .span import check_classifying

    rep = Report()
    rep.add("tau-functor", validate_functor(ctx.tau).ok)
    rep.add("tau-discrete-opfibration", is_discrete_opfibration(ctx.tau))
    if probes is not None:
        rep.extend(check_classifying(ctx.tau, probes))
    return rep


def hom_counts(ctx: OmegaContext) -> dict:
    Om = ctx.omega
    return {(n, m): len(Om.hom(n, m)) for n in Om.objects for m in Om.objects}


# ---------------------------------------------------------------------------
# internal poset of subobjects


BOT, TOP = "bot", "top"


@dataclass(frozen=True)
class InternalPoset:
    elements: tuple
    top: str
    meet: dict

    @property
    def leq(self) -> frozenset:
        """Equaliser of the first projection and the meet."""
        return frozenset((a, b) for a in self.elements for b in self.elements if self.meet[(a, b)] == a)

    def as_category(self) -> FinCategory:
        return preorder(self.elements, self.leq, name="Omega-internal")

    def check(self) -> Report:
        rep = Report()
        E, m = self.elements, self.meet
        rep.add("unit", all(m[(self.top, a)] == a for a in E))
        rep.add("commutative", all(m[(a, b)] == m[(b, a)] for a in E for b in E))
        rep.add("idempotent", all(m[(a, a)] == a for a in E))
        rep.add("associative", all(m[(m[(a, b)], c)] == m[(a, m[(b, c)])] for a in E for b in E for c in E))
        L = self.leq
        antisym = all(not ((a, b) in L and (b, a) in L) or a == b for a in E for b in E)
        trans = all((a, c) in L for (a, b) in L for (b2, c) in L if b == b2)
        rep.add("partial-order", antisym and trans and all((a, a) in L for a in E))
        return rep


def build_internal_poset_from_subobjects() -> tuple[InternalPoset, FinFunctor]:
    """Subobjects of a one-point set with intersection, and the comparison to ``build_omega(2)``.

    Subobjects are computed as actual subsets of ``{0}``; meet is intersection.
    """
    subsets = {BOT: frozenset(), TOP: frozenset({0})}
    meet = {}
    for a, sa in subsets.items():
        for b, sb in subsets.items():
            inter = sa & sb
            meet[(a, b)] = next(k for k, v in subsets.items() if v == inter)
    P = InternalPoset((BOT, TOP), TOP, meet)
    C = P.as_category()
    Om = build_omega(2).omega
    obj = {BOT: 0, TOP: 1}
    mor = {}
    for m in C.morphisms:
        (h,) = Om.hom(obj[C.src[m]], obj[C.tgt[m]])
        mor[m] = h
    comparison = FinFunctor(C, Om, obj, mor, name="compare")
    return P, comparison


def comparison_is_iso(F: FinFunctor) -> bool:
    return validate_functor(F).ok and is_iso_functor(F)


# ---------------------------------------------------------------------------
# cosieves at lambda = 2


def is_cosieve(p: FinFunctor) -> bool:
    return len(set(p.obj.values())) == len(p.dom.objects) and is_discrete_opfibration(p)


def classify_cosieve(p: FinFunctor, ctx: OmegaContext | None = None) -> FinFunctor:
    """``(Fp)_0`` sends ``x`` to 1 when ``x`` is in the cosieve, else 0."""
    ctx = ctx or build_omega(2)
    if ctx.lam != 2 or ctx.min_size != 0:
        raise NotACosieve("cosieve classification needs the lambda = 2 context")
    if not is_cosieve(p):
        raise NotACosieve("not a discrete opfibration with injective object map")
    X, Om = p.cod, ctx.omega
    image = set(p.obj.values())
    obj = {x: 1 if x in image else 0 for x in X.objects}
    mor = {}
    for u in X.morphisms:
        hs = Om.hom(obj[X.src[u]], obj[X.tgt[u]])
        if not hs:
            raise NotACosieve(f"membership not monotone along {u!r}")
        mor[u] = hs[0]
    return FinFunctor(X, Om, obj, mor, name="Fp")


def cosieve_members(p: FinFunctor) -> frozenset:
    return frozenset(p.obj.values())


def cosieve_from_subset(X: FinCategory, members) -> FinFunctor:
    """Full inclusion of an upward closed set of objects."""
    members = set(members)
    for u in X.morphisms:
        if X.src[u] in members and X.tgt[u] not in members:
            raise NotACosieve(f"{sorted(map(repr, members))} is not closed along {u!r}")
    S = full_subcategory(X, members)
    return FinFunctor(S, X, {a: a for a in S.objects}, {m: m for m in S.morphisms}, name="cosieve")


def cosieves(X: FinCategory) -> list[FinFunctor]:
    objs = list(X.objects)
    out = []
    for mask in range(1 << len(objs)):
        mem = {objs[i] for i in range(len(objs)) if mask >> i & 1}
        if all(X.tgt[u] in mem for u in X.morphisms if X.src[u] in mem):
            out.append(cosieve_from_subset(X, mem))
    return out


def cosieve_of(F: FinFunctor) -> FinFunctor:
    """Inverse direction: the objects sent to the top value."""
    return cosieve_from_subset(F.dom, [x for x in F.dom.objects if F.obj[x] == 1])


def cosieve_bijection(X: FinCategory) -> Report:
    """Objects and morphisms of ``[X, Ω]`` against cosieves and inclusions."""
    ctx = build_omega(2)
    rep = Report()
    sieves = cosieves(X)
    fs = functors(X, ctx.omega)
    classified = [classify_cosieve(p, ctx) for p in sieves]
    rep.add("objects", sorted(F.key for F in classified) == sorted(F.key for F in fs)
            and len(set(F.key for F in classified)) == len(sieves), {"cosieves": len(sieves), "functors": len(fs)})
    rep.add("round-trip", all(cosieve_members(cosieve_of(F)) == cosieve_members(p) for p, F in zip(sieves, classified)))
    ok = True
    for p, F in zip(sieves, classified):
        for q, H in zip(sieves, classified):
            n = sum(1 for _ in enumerate_nattrans(F, H))
            if n != (1 if cosieve_members(p) <= cosieve_members(q) else 0):
                ok = False
    rep.add("morphisms", ok)
    return rep


# ---------------------------------------------------------------------------
# cartesian structure


def one_element_object(ctx: OmegaContext):
    return 1 if ctx.omega.has_object(1) else None


def terminal_objects(C: FinCategory) -> list:
    return [t for t in C.objects if all(len(C.hom(a, t)) == 1 for a in C.objects)]


@dataclass
class AdjunctionCertificate:
    left: FinFunctor
    right: FinFunctor
    unit: NatTrans
    counit: NatTrans


def terminal_adjoint_check(ctx: OmegaContext) -> AdjunctionCertificate:
    """``t_Ω ⊣ y_1`` with ``y_1`` picking the one-element set.

    Raises :class:`NotAdmissible` when no object of the context can play the
    role of ``y_1`` (the one-element set is absent and no right adjoint exists).
    """
    Om = ctx.omega
    one = terminal()
    t = to_terminal(Om, one)
    cands = [1] if Om.has_object(1) else []
    cands += [o for o in Om.objects if o not in cands]
    for o in cands:
        y = constant_functor(one, Om, o)
        found = find_adjunction(t, y)
        if found is not None:
            if o != 1:
                break
            return AdjunctionCertificate(t, y, *found)
    raise NotAdmissible(f"{ctx.name}: the terminal map has no right adjoint picking a one-element set")


@dataclass
class ProductClassifier:
    m: FinFunctor
    certificate: AdjunctionCertificate


def product_classifier(ctx: OmegaContext) -> ProductClassifier:
    """``m(n, k) = n k`` with pair ``(i, j)`` at index ``i k + j``, checked to
    classify ``tau x tau`` and to be right adjoint to the diagonal."""
    from .span import classify

    Om = ctx.omega
    for n in Om.objects:
        for k in Om.objects:
            if not Om.has_object(n * k):
                raise CardinalityExceeded(f"fibre of tau x tau over ({n},{k}) has {n * k} elements", (n, k))
    OO = product(Om, Om)
    obj = {(n, k): n * k for n, k in OO.objects}
    mor = {}
    for (f, g) in OO.morphisms:
        n, n2, fi = f
        k, k2, gi = g
        imgs = tuple(fi[i] * k2 + gi[j] for i in range(n) for j in range(k))
        mor[(f, g)] = (n * k, n2 * k2, imgs)
    m = FinFunctor(OO, Om, obj, mor, name="m")
    tt = _tau_squared(ctx, OO)
    classified = classify(tt, ctx)
    if classified != m:
        raise CardinalityExceeded("product formula disagrees with the classified tau x tau")
    D = diagonal(Om)
    D = FinFunctor(Om, OO, D.obj, D.mor, name="diag")
    found = find_adjunction(D, m)
    if found is None:
        raise NoAdjoint("diagonal has no right adjoint")
    return ProductClassifier(m, AdjunctionCertificate(D, m, *found))


def _tau_squared(ctx: OmegaContext, OO: FinCategory) -> FinFunctor:
    Od = ctx.omega_dot
    P = product(Od, Od)
    return FinFunctor(
        P, OO,
        {(a, b): (ctx.tau.obj[a], ctx.tau.obj[b]) for a, b in P.objects},
        {(f, g): (ctx.tau.mor[f], ctx.tau.mor[g]) for f, g in P.morphisms},
    )


def product_failure_witness(ctx: OmegaContext):
    try:
        product_classifier(ctx)
    except CardinalityExceeded as e:
        return e.args[1] if len(e.args) > 1 else None
    return None


@dataclass
class ExponentialCertificate:
    x: int
    times_x: FinFunctor
    right_adjoint: FinFunctor
    adjunction: AdjunctionCertificate

    def table(self) -> dict:
        return {c: self.right_adjoint.obj[c] for c in self.right_adjoint.dom.objects}


def times(ctx: OmegaContext, pc: ProductClassifier, x) -> FinFunctor:
    Om = ctx.omega
    m = pc.m
    ix = Om.identity[x]
    return FinFunctor(
        Om, Om,
        {n: m.obj[(n, x)] for n in Om.objects},
        {f: m.mor[(f, ix)] for f in Om.morphisms},
        name=f"-x{x}",
    )


def exponential_check(ctx: OmegaContext, x) -> ExponentialCertificate:
    """Search all endofunctors of Ω for a right adjoint to ``(- x x)``."""
    pc = product_classifier(ctx)
    L = times(ctx, pc, x)
    for R in enumerate_functors(ctx.omega, ctx.omega):
        found = find_adjunction(L, R)
        if found is not None:
            return ExponentialCertificate(x, L, R, AdjunctionCertificate(L, R, *found))
    raise NoAdjoint(f"(- x {x}) has no right adjoint: no R with hom(n*{x}, c) = hom(n, Rc)")


def implication_table(ctx: OmegaContext) -> dict:
    """``(x, c) -> (x => c)`` recovered from the exponential adjunctions."""
    out = {}
    for x in ctx.omega.objects:
        cert = exponential_check(ctx, x)
        for c, v in cert.table().items():
            out[(x, c)] = v
    return out


def cc_report(ctx: OmegaContext) -> Report:
    """Cartesian closed structure, reporting failures with witnesses."""
    rep = Report()
    try:
        terminal_adjoint_check(ctx)
        rep.add("terminal-adjoint", True)
    except NotAdmissible as e:
        rep.add("terminal-adjoint", False, str(e))
    try:
        pc = product_classifier(ctx)
        rep.add("product-classifier", True)
        cert = pc.certificate
        rep.add("diagonal-adjunction", verify_adjunction(cert.left, cert.right, cert.unit, cert.counit))
    except CardinalityExceeded as e:
        rep.add("product-classifier", False, list(e.args[1]) if len(e.args) > 1 else str(e))
        return rep
    for x in ctx.omega.objects:
        try:
            exponential_check(ctx, x)
            rep.add(f"exponential:{x}", True)
        except NoAdjoint as e:
            rep.add(f"exponential:{x}", False, str(e))
    return rep


# ---------------------------------------------------------------------------
# Ω-valued functors as set-valued functors


def to_set_functor(F: FinFunctor):
    """Read ``F: X -> Ω`` as a SetFunctor with ``F(x) = {0..n-1}``."""
    from .core import SetFunctor

    X = F.dom
    sets = {x: tuple(range(F.obj[x])) for x in X.objects}
    fmap = {(m, i): F.mor[m][2][i] for m in X.morphisms for i in sets[X.src[m]]}
    return SetFunctor(X, sets, fmap)


def from_set_functor(P, ctx: OmegaContext) -> FinFunctor:
    """The skeletal copy of ``P``; elements are indexed in identifier order."""
    from .core import sort_ids

    X = P.dom
    order = {x: list(sort_ids(P.sets[x])) for x in X.objects}
    for x, xs in order.items():
        if not ctx.omega.has_object(len(xs)):
            raise CardinalityExceeded(f"{len(xs)} elements at {x!r}")
    obj = {x: len(order[x]) for x in X.objects}
    mor = {}
    for m in X.morphisms:
        a, b = X.src[m], X.tgt[m]
        idx = {y: i for i, y in enumerate(order[b])}
        mor[m] = (obj[a], obj[b], tuple(idx[P.fmap[(m, y)]] for y in order[a]))
    return FinFunctor(X, ctx.omega, obj, mor)


__all__ = [
    "OmegaContext", "build_omega", "verify_context", "hom_counts", "InternalPoset",
    "build_internal_poset_from_subobjects", "comparison_is_iso", "BOT", "TOP", "is_cosieve",
    "classify_cosieve", "cosieve_members", "cosieve_from_subset", "cosieves", "cosieve_of",
    "cosieve_bijection", "terminal_objects", "terminal_adjoint_check", "AdjunctionCertificate",
    "product_classifier", "ProductClassifier", "product_failure_witness", "exponential_check",
    "ExponentialCertificate", "implication_table", "times", "cc_report", "one_element_object",
    "to_set_functor", "from_set_functor",
]
