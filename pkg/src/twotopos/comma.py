"""Lax, pseudo and strict pullbacks of finite categories.

The comma category of ``f: A -> B <- C: g`` has objects ``(a, h, c)`` with
``h: fa -> gc`` and morphisms ``(x, alpha, gamma, y)`` where the endpoints are
repeated so that the identifier determines the arrow.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CancelToken,
    FinCategory,
    FinFunctor,
    NatTrans,
    compose_functors,
    enumerate_functors,
    enumerate_nattrans,
    full_subcategory,
    identity_nat,
)
from .errors import CardinalityExceeded, CospanMismatch, ShapeMismatch, TriangleMismatch
from .report import INCONCLUSIVE, Report

LAX, PSEUDO, STRICT = "lax", "pseudo", "strict"
FLAVORS = (LAX, PSEUDO, STRICT)


@dataclass(frozen=True, eq=False)
class CommaSquare:
    """A square ``lam: f p => g q`` with apex ``apex``.

    ``flavor`` states which universal property the square is meant to have.
    """

    apex: FinCategory
    p: FinFunctor
    q: FinFunctor
    lam: NatTrans
    flavor: str
    f: FinFunctor
    g: FinFunctor


def _check_cospan(f: FinFunctor, g: FinFunctor) -> None:
    if f.cod != g.cod:
        raise CospanMismatch("f and g must share a codomain")


def _allowed(B: FinCategory, flavor: str):
    if flavor == LAX:
        return lambda m: True
    if flavor == PSEUDO:
        return B.is_iso
    if flavor == STRICT:
        return B.is_identity
    raise ValueError(f"unknown flavor {flavor!r}")


def comma(f: FinFunctor, g: FinFunctor, flavor: str = LAX) -> CommaSquare:
    _check_cospan(f, g)
    A, B, C = f.dom, f.cod, g.dom
    keep = _allowed(B, flavor)
    objs = [
        (a, h, c)
        for a in A.objects
        for c in C.objects
        for h in B.hom(f.obj[a], g.obj[c])
        if keep(h)
    ]
    by_ac: dict = {}
    for x in objs:
        by_ac.setdefault((x[0], x[2]), []).append(x)
    mors = []
    for x in objs:
        a, h, c = x
        for al in A.morphisms:
            if A.src[al] != a:
                continue
            fal = f.mor[al]
            for ga in C.morphisms:
                if C.src[ga] != c:
                    continue
                rhs = B.comp[(g.mor[ga], h)]
                for y in by_ac.get((A.tgt[al], C.tgt[ga]), ()):
                    if B.comp[(y[1], fal)] == rhs:
                        mors.append(((x, al, ga, y), x, y))
    comp = {}
    out: dict = {}
    for m, s, t in mors:
        out.setdefault(s, []).append(m)
    for m1, s1, t1 in mors:
        for m2 in out.get(t1, ()):
            comp[(m2, m1)] = (s1, A.comp[(m2[1], m1[1])], C.comp[(m2[2], m1[2])], m2[3])
    ident = {x: (x, A.identity[x[0]], C.identity[x[2]], x) for x in objs}
    apex = FinCategory(objs, mors, ident, comp, name=f"{flavor}({f.name or 'f'},{g.name or 'g'})")
    p = FinFunctor(apex, A, {x: x[0] for x in objs}, {m: m[1] for m, _, _ in mors}, name="p")
    q = FinFunctor(apex, C, {x: x[2] for x in objs}, {m: m[2] for m, _, _ in mors}, name="q")
    lam = NatTrans(compose_functors(f, p), compose_functors(g, q), {x: x[1] for x in objs})
    return CommaSquare(apex, p, q, lam, flavor, f, g)


def pseudo_pullback(f: FinFunctor, g: FinFunctor) -> CommaSquare:
    return comma(f, g, PSEUDO)


def strict_pullback(f: FinFunctor, g: FinFunctor) -> CommaSquare:
    return comma(f, g, STRICT)


def restrict_square(sq: CommaSquare, objects, flavor: str | None = None) -> CommaSquare:
    """The square on the full subcategory of the apex spanned by ``objects``."""
    sub = full_subcategory(sq.apex, objects)
    p = FinFunctor(sub, sq.p.cod, {x: sq.p.obj[x] for x in sub.objects}, {m: sq.p.mor[m] for m in sub.morphisms})
    q = FinFunctor(sub, sq.q.cod, {x: sq.q.obj[x] for x in sub.objects}, {m: sq.q.mor[m] for m in sub.morphisms})
    lam = NatTrans(compose_functors(sq.f, p), compose_functors(sq.g, q), {x: sq.lam.comp[x] for x in sub.objects})
    return CommaSquare(sub, p, q, lam, flavor or sq.flavor, sq.f, sq.g)


def mutilate(sq: CommaSquare, obj=None) -> CommaSquare:
    """Delete one apex object (the last, by default); used as a negative control."""
    victim = sq.apex.objects[-1] if obj is None else obj
    return restrict_square(sq, [x for x in sq.apex.objects if x != victim])


def square_from(apex, p, q, lam, f, g, flavor) -> CommaSquare:
    if p.dom != apex or q.dom != apex:
        raise ShapeMismatch("projections must start at the apex")
    _check_cospan(f, g)
    return CommaSquare(apex, p, q, lam, flavor, f, g)


# ---------------------------------------------------------------------------
# universal property


def standard_probes() -> list[FinCategory]:
    from .corpus import probe_family

    return probe_family("tiny")


def _cone_triples(sq: CommaSquare, X: FinCategory, cap, cancel):
    """All ``(h, k, phi)`` over ``X`` with ``phi`` of the square's flavor."""
    f, g = sq.f, sq.g
    B = f.cod
    keep = _allowed(B, sq.flavor)
    hs = list(enumerate_functors(X, f.dom, cap=cap, cancel=cancel))
    ks = list(enumerate_functors(X, g.dom, cap=cap, cancel=cancel))
    out = []
    for h in hs:
        fh = compose_functors(f, h)
        for k in ks:
            gk = compose_functors(g, k)

            def cands(x, fh=fh, gk=gk):
                return [m for m in B.hom(fh.obj[x], gk.obj[x]) if keep(m)]

            for phi in enumerate_nattrans(fh, gk, comp_cands=cands, cap=cap, cancel=cancel):
                out.append((h, k, phi))
                if len(out) > cap:
                    raise CardinalityExceeded("too many cones")
    return out


def _cone_key(h: FinFunctor, k: FinFunctor, phi_comp: dict, X: FinCategory):
    return (h.key, k.key, tuple(phi_comp[x] for x in X.objects))


def verify_probe(sq: CommaSquare, X: FinCategory, *, cap: int = 200_000,
                 cancel: CancelToken | None = None) -> tuple[bool, object]:
    """One- and two-dimensional universal property against a single probe ``X``.

    Returns ``(ok, witness)``; the witness names the violated clause.
    """
    E = sq.apex
    deltas = list(enumerate_functors(X, E, cap=cap, cancel=cancel))
    image: dict = {}
    for d in deltas:
        pd = compose_functors(sq.p, d)
        qd = compose_functors(sq.q, d)
        key = _cone_key(pd, qd, {x: sq.lam.comp[d.obj[x]] for x in X.objects}, X)
        if key in image:
            return False, {"clause": "uniqueness-1d", "probe": X.name, "cone": key}
        image[key] = d
    triples = _cone_triples(sq, X, cap, cancel)
    for h, k, phi in triples:
        key = _cone_key(h, k, phi.comp, X)
        if key not in image:
            return False, {"clause": "existence-1d", "probe": X.name, "cone": key}
    if len(image) != len(triples):
        return False, {"clause": "typing-1d", "probe": X.name}

    # two-dimensional clause: Nat(d, d') <-> compatible (alpha, gamma)
    f, g = sq.f, sq.g
    B = f.cod
    for d in deltas:
        pd, qd = compose_functors(sq.p, d), compose_functors(sq.q, d)
        for d2 in deltas:
            pd2, qd2 = compose_functors(sq.p, d2), compose_functors(sq.q, d2)
            pis = list(enumerate_nattrans(d, d2, cap=cap, cancel=cancel))
            got = set()
            for pi in pis:
                key = (
                    tuple(sq.p.mor[pi.comp[x]] for x in X.objects),
                    tuple(sq.q.mor[pi.comp[x]] for x in X.objects),
                )
                if key in got:
                    return False, {"clause": "uniqueness-2d", "probe": X.name}
                got.add(key)
            want = set()
            for al in enumerate_nattrans(pd, pd2, cap=cap, cancel=cancel):
                for ga in enumerate_nattrans(qd, qd2, cap=cap, cancel=cancel):
                    ok = all(
                        B.comp[(sq.lam.comp[d2.obj[x]], f.mor[al.comp[x]])]
                        == B.comp[(g.mor[ga.comp[x]], sq.lam.comp[d.obj[x]])]
                        for x in X.objects
                    )
                    if ok:
                        want.add((
                            tuple(al.comp[x] for x in X.objects),
                            tuple(ga.comp[x] for x in X.objects),
                        ))
            if got != want:
                return False, {"clause": "existence-2d", "probe": X.name,
                               "missing": sorted(map(repr, want - got))[:3]}
    return True, None


def verify_lax_pullback(sq: CommaSquare, probes=None, *, cap: int = 200_000,
                        cancel: CancelToken | None = None) -> Report:
    """Probe the universal property of ``sq`` in its own flavor.

    A probe that exceeds ``cap`` is recorded as inconclusive, not as a failure.
    """
    probes = standard_probes() if probes is None else probes
    rep = Report()
    for X in probes:
        cid = f"{sq.flavor}-pullback:{X.name or len(X.objects)}"
        try:
            ok, wit = verify_probe(sq, X, cap=cap, cancel=cancel)
        except CardinalityExceeded as e:
            rep.add(cid, INCONCLUSIVE, str(e))
            continue
        rep.add(cid, ok, wit)
    return rep


def is_sub_square(small: CommaSquare, big: CommaSquare) -> bool:
    """Element-wise inclusion of apex object and morphism ids."""
    return set(small.apex.objects) <= set(big.apex.objects) and set(small.apex.morphisms) <= set(big.apex.morphisms)


# ---------------------------------------------------------------------------
# comma over a base


def comma_over_base(f: FinFunctor, g: FinFunctor, alpha: FinFunctor, beta: FinFunctor,
                    gamma: FinFunctor) -> tuple[CommaSquare, FinFunctor]:
    """Lax pullback in the slice over ``beta.cod``.

    Returns the restricted square and the induced functor to the base.
    """
    _check_cospan(f, g)
    if compose_functors(beta, f) != alpha or compose_functors(beta, g) != gamma:
        raise TriangleMismatch("alpha = beta f and gamma = beta g must hold strictly")
    full = comma(f, g)
    base = beta.cod
    keep = [x for x in full.apex.objects if base.is_identity(beta.mor[x[1]])]
    sq = restrict_square(full, keep)
    to_base = FinFunctor(
        sq.apex, base,
        {x: alpha.obj[x[0]] for x in sq.apex.objects},
        {m: alpha.mor[m[1]] for m in sq.apex.morphisms},
    )
    return sq, to_base


# ---------------------------------------------------------------------------
# pasting


@dataclass(frozen=True, eq=False)
class PastingResult:
    composite_ok: bool
    front_ok: bool
    composite_report: Report
    front_report: Report

    @property
    def agree(self) -> bool:
        return self.composite_ok == self.front_ok


def paste(back: CommaSquare, h: FinFunctor, y: FinFunctor, x: FinFunctor) -> tuple[CommaSquare, CommaSquare]:
    """Form the front and composite squares of a pasting diagram.

    ``back`` exhibits its apex as ``f/g`` with projections ``u = back.p`` and
    ``v = back.q``; ``h: Y -> C``; the front square is ``h y = u x``.
    """
    if h.cod != back.p.cod or y.cod != h.dom or x.cod != back.apex or x.dom != y.dom:
        raise ShapeMismatch("pasting data does not fit the back square")
    if compose_functors(h, y) != compose_functors(back.p, x):
        raise ShapeMismatch("front square does not commute")
    X = x.dom
    hy = compose_functors(h, y)
    front = CommaSquare(X, y, x, identity_nat(hy), STRICT, h, back.p)
    fh = compose_functors(back.f, h)
    vx = compose_functors(back.q, x)
    lam = NatTrans(compose_functors(fh, y), compose_functors(back.g, vx),
                   {o: back.lam.comp[x.obj[o]] for o in X.objects})
    composite = CommaSquare(X, y, vx, lam, back.flavor, fh, back.g)
    return front, composite


def pasting_check(back: CommaSquare, h: FinFunctor, front_apex: CommaSquare | None = None,
                  probes=None, *, cap: int = 200_000) -> PastingResult:
    """Verify ``composite is f h / g`` iff ``front is a pullback``.

    With ``front_apex`` omitted the front square is the strict pullback of
    ``(h, u)``; any other square over ``(h, u)`` may be passed instead.
    """
    if h.cod != back.p.cod:
        raise ShapeMismatch("h must land in the domain of f")
    fr = front_apex if front_apex is not None else strict_pullback(h, back.p)
    if fr.f != h or fr.g != back.p:
        raise ShapeMismatch("front square must sit over (h, u)")
    front, composite = paste(back, h, fr.p, fr.q)
    front_rep = verify_lax_pullback(front, probes, cap=cap)
    comp_rep = verify_lax_pullback(composite, probes, cap=cap)
    return PastingResult(comp_rep.ok, front_rep.ok, comp_rep, front_rep)


__all__ = [
    "CommaSquare", "comma", "pseudo_pullback", "strict_pullback", "verify_lax_pullback",
    "verify_probe", "comma_over_base", "pasting_check", "paste", "mutilate", "restrict_square",
    "is_sub_square", "PastingResult", "LAX", "PSEUDO", "STRICT", "FLAVORS",
]
