"""Finite categories, functors, natural transformations and finite sets.

Categories carry a total composition table, so every law in this package is
decidable by lookup. Identifiers are opaque hashable values: strings, ints, or
(nested) tuples of those. Constructions such as products, comma categories and
functor categories build tuple identifiers that encode their provenance.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from .errors import Cancelled, CardinalityExceeded, UnknownObject

Id = Hashable

DEFAULT_CAP = 500_000


def idkey(x: Any):
    """Total sort key over identifiers (ints < strings < tuples)."""
    if x is None:
        return (-1, 0)
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(idkey(e) for e in x))
    return (3, repr(x))


def sort_ids(xs: Iterable[Id]) -> list:
    return sorted(xs, key=idkey)


class CancelToken:
    """Cooperative cancellation handle polled inside enumeration loops."""

    def __init__(self) -> None:
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self) -> None:
        if self._event.is_set():
            raise Cancelled("enumeration cancelled")


def _poll(cancel: CancelToken | None) -> None:
    if cancel is not None:
        cancel.check()


@dataclass(frozen=True)
class FinSet:
    elements: tuple = ()

    def __post_init__(self):
        elems = tuple(self.elements)
        if len(set(elems)) != len(elems):
            raise ValueError("FinSet elements must be distinct")
        object.__setattr__(self, "elements", elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    @property
    def cardinality(self) -> int:
        return len(self.elements)


class FinCategory:
    """A finite category given by explicit tables.

    ``compose`` maps ``(g, f)`` to ``g∘f`` and is defined exactly on pairs
    with ``tgt(f) == src(g)``. Construction does no validation; call
    :func:`validate_category` for a full law check.
    """

    def __init__(
        self,
        objects: Iterable[Id],
        morphisms: Iterable[tuple[Id, Id, Id]],
        identity: Mapping[Id, Id],
        compose: Mapping[tuple[Id, Id], Id] | Iterable[tuple[Id, Id, Id]],
        name: str = "",
    ) -> None:
        self.objects: tuple = tuple(objects)
        morphisms = list(morphisms)
        self.morphisms: tuple = tuple(m for m, _, _ in morphisms)
        self.src: dict = {m: s for m, s, _ in morphisms}
        self.tgt: dict = {m: t for m, _, t in morphisms}
        self.identity: dict = dict(identity)
        if isinstance(compose, Mapping):
            self.comp: dict = dict(compose)
        else:
            self.comp = {(g, f): h for g, f, h in compose}
        self.name = name
        self._cache: dict = {}

    # -- basic queries -------------------------------------------------
    def hom(self, a: Id, b: Id) -> tuple:
        homs = self._cache.get("hom")
        if homs is None:
            homs = {}
            for m in self.morphisms:
                homs.setdefault((self.src[m], self.tgt[m]), []).append(m)
            homs = {k: tuple(sort_ids(v)) for k, v in homs.items()}
            self._cache["hom"] = homs
        return homs.get((a, b), ())

    def compose(self, g: Id, f: Id) -> Id:
        return self.comp[(g, f)]

    def is_identity(self, m: Id) -> bool:
        ids = self._cache.get("idset")
        if ids is None:
            ids = self._cache["idset"] = frozenset(self.identity.values())
        return m in ids

    def inverse(self, m: Id) -> Id | None:
        a, b = self.src[m], self.tgt[m]
        for n in self.hom(b, a):
            if self.comp[(n, m)] == self.identity[a] and self.comp[(m, n)] == self.identity[b]:
                return n
        return None

    def is_iso(self, m: Id) -> bool:
        return self.inverse(m) is not None

    def has_object(self, a: Id) -> bool:
        objset = self._cache.get("objset")
        if objset is None:
            objset = self._cache["objset"] = frozenset(self.objects)
        return a in objset

    def non_identities(self) -> tuple:
        return tuple(m for m in self.morphisms if not self.is_identity(m))

    def is_preorder(self) -> bool:
        return all(len(self.hom(a, b)) <= 1 for a in self.objects for b in self.objects)

    def is_discrete(self) -> bool:
        return all(self.is_identity(m) for m in self.morphisms)

    def __len__(self) -> int:
        return len(self.objects)

    # -- equality ------------------------------------------------------
    def _sig(self):
        sig = self._cache.get("sig")
        if sig is None:
            sig = (
                self.objects,
                tuple((m, self.src[m], self.tgt[m]) for m in self.morphisms),
                frozenset(self.identity.items()),
                frozenset(self.comp.items()),
            )
            self._cache["sig"] = sig
        return sig

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self._sig() == other._sig()

    def __hash__(self) -> int:
        h = self._cache.get("hash")
        if h is None:
            h = self._cache["hash"] = hash(self._sig())
        return h

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<FinCategory {label}|ob|={len(self.objects)} |mor|={len(self.morphisms)}>"


@dataclass(frozen=True, eq=False)
class FinFunctor:
    dom: FinCategory
    cod: FinCategory
    obj: dict
    mor: dict
    name: str = ""

    def __call__(self, x: Id) -> Id:
        if x in self.mor and not (x in self.obj and self.dom.has_object(x)):
            return self.mor[x]
        return self.obj[x]

    @cached_property
    def key(self) -> tuple:
        # tables are treated as immutable once the functor is built
        return (
            tuple(self.obj[a] for a in self.dom.objects),
            tuple(self.mor[m] for m in self.dom.morphisms),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.obj == other.obj
            and self.mor == other.mor
        )

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        label = self.name or "F"
        return f"<FinFunctor {label}: {self.dom!r} -> {self.cod!r}>"


@dataclass(frozen=True, eq=False)
class NatTrans:
    dom: FinFunctor
    cod: FinFunctor
    comp: dict

    def __getitem__(self, a: Id) -> Id:
        return self.comp[a]

    @cached_property
    def key(self) -> tuple:
        return (
            self.dom.key,
            self.cod.key,
            tuple(self.comp[a] for a in self.dom.dom.objects),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.comp == other.comp

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"<NatTrans {self.comp}>"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# validation


def validate_category(C: FinCategory) -> ValidationReport:
    """List every typing, identity and associativity violation of ``C``."""
    v: list[str] = []
    objs = set(C.objects)
    for m in C.morphisms:
        if C.src.get(m) not in objs or C.tgt.get(m) not in objs:
            v.append(f"typing: morphism {m!r} has unknown endpoint")
    for a in C.objects:
        i = C.identity.get(a)
        if i is None or i not in C.src:
            v.append(f"identity: object {a!r} has no identity")
        elif C.src[i] != a or C.tgt[i] != a:
            v.append(f"identity: {i!r} is not an endomorphism of {a!r}")
    for f in C.morphisms:
        for g in C.morphisms:
            composable = C.tgt[f] == C.src[g]
            if (g, f) in C.comp:
                if not composable:
                    v.append(f"typing: {g!r}∘{f!r} defined but not composable")
                    continue
                h = C.comp[(g, f)]
                if h not in C.src:
                    v.append(f"typing: {g!r}∘{f!r} = unknown morphism {h!r}")
                elif C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
                    v.append(f"typing: {g!r}∘{f!r} = {h!r} has wrong source/target")
            elif composable:
                v.append(f"typing: {g!r}∘{f!r} missing from table")
    if v:
        return ValidationReport(v)
    for f in C.morphisms:
        a, b = C.src[f], C.tgt[f]
        if C.comp[(f, C.identity[a])] != f:
            v.append(f"identity: {f!r}∘1 != {f!r}")
        if C.comp[(C.identity[b], f)] != f:
            v.append(f"identity: 1∘{f!r} != {f!r}")
    out = {}
    for (g, f), gf in C.comp.items():
        out.setdefault(C.tgt[g], None)
    by_src: dict = {}
    for m in C.morphisms:
        by_src.setdefault(C.src[m], []).append(m)
    for f in C.morphisms:
        for g in by_src.get(C.tgt[f], ()):
            gf = C.comp[(g, f)]
            for h in by_src.get(C.tgt[g], ()):
                if C.comp[(h, gf)] != C.comp[(C.comp[(h, g)], f)]:
                    v.append(f"associativity: ({h!r},{g!r},{f!r})")
    return ValidationReport(v)


def validate_functor(F: FinFunctor) -> ValidationReport:
    v: list[str] = []
    A, B = F.dom, F.cod
    for a in A.objects:
        if a not in F.obj or not B.has_object(F.obj[a]):
            v.append(f"object {a!r} badly mapped")
    for m in A.morphisms:
        if m not in F.mor or F.mor[m] not in B.src:
            v.append(f"morphism {m!r} badly mapped")
    if v:
        return ValidationReport(v)
    for m in A.morphisms:
        fm = F.mor[m]
        if B.src[fm] != F.obj[A.src[m]] or B.tgt[fm] != F.obj[A.tgt[m]]:
            v.append(f"morphism {m!r} maps to wrongly typed {fm!r}")
    for a in A.objects:
        if F.mor[A.identity[a]] != B.identity[F.obj[a]]:
            v.append(f"identity of {a!r} not preserved")
    if v:
        return ValidationReport(v)
    for (g, f), gf in A.comp.items():
        if B.comp[(F.mor[g], F.mor[f])] != F.mor[gf]:
            v.append(f"composition {g!r}∘{f!r} not preserved")
    return ValidationReport(v)


def validate_nattrans(alpha: NatTrans) -> ValidationReport:
    v: list[str] = []
    F, G = alpha.dom, alpha.cod
    B = F.cod
    for a in F.dom.objects:
        c = alpha.comp.get(a)
        if c is None or c not in B.src or B.src[c] != F.obj[a] or B.tgt[c] != G.obj[a]:
            v.append(f"component at {a!r} badly typed")
    if v:
        return ValidationReport(v)
    for m in F.dom.morphisms:
        a, b = F.dom.src[m], F.dom.tgt[m]
        if B.comp[(G.mor[m], alpha.comp[a])] != B.comp[(alpha.comp[b], F.mor[m])]:
            v.append(f"naturality fails at {m!r}")
    return ValidationReport(v)


# ---------------------------------------------------------------------------
# basic constructions


def terminal() -> FinCategory:
    return FinCategory(["*"], [("1*", "*", "*")], {"*": "1*"}, {("1*", "1*"): "1*"}, name="1")


def empty_category() -> FinCategory:
    return FinCategory([], [], {}, {}, name="0")


def discrete(objects: Iterable[Id], name: str = "") -> FinCategory:
    objects = list(objects)
    mors = [(("1", a), a, a) for a in objects]
    return FinCategory(
        objects,
        mors,
        {a: ("1", a) for a in objects},
        {(("1", a), ("1", a)): ("1", a) for a in objects},
        name=name or f"disc{len(objects)}",
    )


def preorder(elements: Iterable[Id], leq: Iterable[tuple[Id, Id]], name: str = "") -> FinCategory:
    """Preorder category; ``leq`` is closed reflexively and transitively."""
    elements = list(elements)
    rel = {(a, a) for a in elements} | {tuple(p) for p in leq}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    pairs = [(a, b) for a in elements for b in elements if (a, b) in rel]
    mors = [((a, b), a, b) for a, b in pairs]
    comp = {}
    for (a, b) in pairs:
        for (c, d) in pairs:
            if b == c:
                comp[((c, d), (a, b))] = (a, d)
    return FinCategory(elements, mors, {a: (a, a) for a in elements}, comp, name=name)


def chain(n: int) -> FinCategory:
    """The ordinal ``0 < 1 < ... < n-1`` as a category."""
    return preorder(range(n), [(i, i + 1) for i in range(n - 1)], name=f"chain{n}")


def free_category(objects: Iterable[Id], edges: Iterable[tuple[str, Id, Id]], name: str = "") -> FinCategory:
    """Free category on a finite acyclic graph; morphism ids are paths."""
    objects = list(objects)
    edges = list(edges)
    out: dict = {}
    for e, s, t in edges:
        out.setdefault(s, []).append((e, t))
    paths: list[tuple[tuple, Id, Id]] = [((), a, a) for a in objects]
    frontier = [((e,), s, t) for e, s, t in edges]
    while frontier:
        nxt = []
        for p, s, t in frontier:
            paths.append((p, s, t))
            if len(p) > len(edges):
                raise ValueError("graph is not acyclic")
            for e, t2 in out.get(t, ()):
                nxt.append((p + (e,), s, t2))
        frontier = nxt

    def pid(p, s):
        return f"1_{s}" if not p else ".".join(reversed(p))

    mors = [(pid(p, s), s, t) for p, s, t in paths]
    by_id = {pid(p, s): (p, s, t) for p, s, t in paths}
    comp = {}
    for g, (pg, sg, tg) in by_id.items():
        for f, (pf, sf, tf) in by_id.items():
            if tf == sg:
                comp[(g, f)] = pid(pf + pg, sf)
    return FinCategory(objects, mors, {a: f"1_{a}" for a in objects}, comp, name=name)


def monoid(elements: Iterable[Id], mult: Mapping[tuple[Id, Id], Id], unit: Id, name: str = "") -> FinCategory:
    """One-object category; ``mult[(g, f)]`` is ``g∘f``."""
    elements = list(elements)
    return FinCategory(["*"], [(e, "*", "*") for e in elements], {"*": unit}, dict(mult), name=name)


def walking_iso() -> FinCategory:
    mors = [("1_0", 0, 0), ("1_1", 1, 1), ("u", 0, 1), ("v", 1, 0)]
    comp = {
        ("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1",
        ("u", "1_0"): "u", ("1_1", "u"): "u",
        ("v", "1_1"): "v", ("1_0", "v"): "v",
        ("v", "u"): "1_0", ("u", "v"): "1_1",
    }
    return FinCategory([0, 1], mors, {0: "1_0", 1: "1_1"}, comp, name="iso")


def opposite(C: FinCategory) -> FinCategory:
    """Swap sources and targets and transpose the composition table.

    The result is cached so that ``opposite(opposite(C)) is C``.
    """
    op = C._cache.get("op")
    if op is not None:
        return op
    op = FinCategory(
        C.objects,
        [(m, C.tgt[m], C.src[m]) for m in C.morphisms],
        C.identity,
        {(f, g): h for (g, f), h in C.comp.items()},
        name=f"op({C.name})" if C.name else "",
    )
    op._cache["op"] = C
    C._cache["op"] = op
    return op


def product(A: FinCategory, B: FinCategory) -> FinCategory:
    objs = [(a, b) for a in A.objects for b in B.objects]
    mors = [((f, g), (A.src[f], B.src[g]), (A.tgt[f], B.tgt[g])) for f in A.morphisms for g in B.morphisms]
    comp = {}
    for (f2, f1), f in A.comp.items():
        for (g2, g1), g in B.comp.items():
            comp[((f2, g2), (f1, g1))] = (f, g)
    ident = {(a, b): (A.identity[a], B.identity[b]) for a, b in objs}
    name = f"{A.name}x{B.name}" if A.name and B.name else ""
    return FinCategory(objs, mors, ident, comp, name=name)


def hom_set(C: FinCategory, a: Id, b: Id) -> FinSet:
    if not C.has_object(a):
        raise UnknownObject(a)
    if not C.has_object(b):
        raise UnknownObject(b)
    return FinSet(C.hom(a, b))


def full_subcategory(C: FinCategory, objects: Iterable[Id], name: str = "") -> FinCategory:
    keep = [a for a in C.objects if a in set(objects)]
    ks = set(keep)
    mors = [(m, C.src[m], C.tgt[m]) for m in C.morphisms if C.src[m] in ks and C.tgt[m] in ks]
    ms = {m for m, _, _ in mors}
    comp = {k: v for k, v in C.comp.items() if k[0] in ms and k[1] in ms}
    return FinCategory(keep, mors, {a: C.identity[a] for a in keep}, comp, name=name)


def subcategory_inclusion(S: FinCategory, C: FinCategory) -> FinFunctor:
    return FinFunctor(S, C, {a: a for a in S.objects}, {m: m for m in S.morphisms}, name="incl")


# ---------------------------------------------------------------------------
# functors and transformations


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms}, name="1")


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """``G∘F``."""
    return FinFunctor(
        F.dom,
        G.cod,
        {a: G.obj[F.obj[a]] for a in F.dom.objects},
        {m: G.mor[F.mor[m]] for m in F.dom.morphisms},
    )


def constant_functor(A: FinCategory, B: FinCategory, b: Id) -> FinFunctor:
    i = B.identity[b]
    return FinFunctor(A, B, {a: b for a in A.objects}, {m: i for m in A.morphisms}, name=f"const {b!r}")


def to_terminal(A: FinCategory, one: FinCategory | None = None) -> FinFunctor:
    one = one or terminal()
    (o,) = one.objects
    return constant_functor(A, one, o)


def point(C: FinCategory, c: Id, one: FinCategory | None = None) -> FinFunctor:
    """The functor ``1 -> C`` picking out ``c``."""
    one = one or terminal()
    return constant_functor(one, C, c)


def opposite_functor(F: FinFunctor) -> FinFunctor:
    return FinFunctor(opposite(F.dom), opposite(F.cod), dict(F.obj), dict(F.mor))


def product_functor(F: FinFunctor, G: FinFunctor) -> FinFunctor:
    dom, cod = product(F.dom, G.dom), product(F.cod, G.cod)
    return FinFunctor(
        dom,
        cod,
        {(a, b): (F.obj[a], G.obj[b]) for a, b in dom.objects},
        {(f, g): (F.mor[f], G.mor[g]) for f, g in dom.morphisms},
    )


def projection(A: FinCategory, B: FinCategory, which: int, P: FinCategory | None = None) -> FinFunctor:
    P = P or product(A, B)
    tgt = A if which == 0 else B
    return FinFunctor(P, tgt, {o: o[which] for o in P.objects}, {m: m[which] for m in P.morphisms})


def pairing(F: FinFunctor, G: FinFunctor, P: FinCategory | None = None) -> FinFunctor:
    P = P or product(F.cod, G.cod)
    return FinFunctor(
        F.dom, P,
        {a: (F.obj[a], G.obj[a]) for a in F.dom.objects},
        {m: (F.mor[m], G.mor[m]) for m in F.dom.morphisms},
    )


def diagonal(A: FinCategory) -> FinFunctor:
    I = identity_functor(A)
    return pairing(I, I)


def identity_nat(F: FinFunctor) -> NatTrans:
    return NatTrans(F, F, {a: F.cod.identity[F.obj[a]] for a in F.dom.objects})


def vcompose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Vertical composite ``beta·alpha``."""
    B = alpha.dom.cod
    return NatTrans(alpha.dom, beta.cod, {a: B.comp[(beta.comp[a], alpha.comp[a])] for a in alpha.dom.dom.objects})


def whisker_left(H: FinFunctor, alpha: NatTrans) -> NatTrans:
    """``H alpha`` for ``alpha: F => G: A -> B`` and ``H: B -> C``."""
    return NatTrans(
        compose_functors(H, alpha.dom),
        compose_functors(H, alpha.cod),
        {a: H.mor[c] for a, c in alpha.comp.items()},
    )


def whisker_right(alpha: NatTrans, K: FinFunctor) -> NatTrans:
    """``alpha K`` for ``alpha: F => G: A -> B`` and ``K: X -> A``."""
    return NatTrans(
        compose_functors(alpha.dom, K),
        compose_functors(alpha.cod, K),
        {x: alpha.comp[K.obj[x]] for x in K.dom.objects},
    )


def hcompose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Horizontal composite ``beta * alpha``: ``H F => K G``."""
    return vcompose(whisker_left(beta.cod, alpha), whisker_right(beta, alpha.dom))


def is_invertible(alpha: NatTrans) -> bool:
    B = alpha.dom.cod
    return all(B.is_iso(c) for c in alpha.comp.values())


def is_identity_nat(alpha: NatTrans) -> bool:
    B = alpha.dom.cod
    return all(B.is_identity(c) for c in alpha.comp.values())


def nat_inverse(alpha: NatTrans) -> NatTrans:
    B = alpha.dom.cod
    return NatTrans(alpha.cod, alpha.dom, {a: B.inverse(c) for a, c in alpha.comp.items()})


def is_faithful(F: FinFunctor) -> bool:
    A = F.dom
    return all(
        len({F.mor[m] for m in A.hom(a, b)}) == len(A.hom(a, b))
        for a in A.objects for b in A.objects
    )


def is_full(F: FinFunctor) -> bool:
    A, B = F.dom, F.cod
    return all(
        {F.mor[m] for m in A.hom(a, b)} == set(B.hom(F.obj[a], F.obj[b]))
        for a in A.objects for b in A.objects
    )


def is_fully_faithful(F: FinFunctor) -> bool:
    return is_full(F) and is_faithful(F)


def is_iso_functor(F: FinFunctor) -> bool:
    return (
        len(set(F.obj.values())) == len(F.dom.objects) == len(F.cod.objects)
        and len(set(F.mor.values())) == len(F.dom.morphisms) == len(F.cod.morphisms)
    )


def inverse_functor(F: FinFunctor) -> FinFunctor:
    return FinFunctor(
        F.cod, F.dom,
        {v: k for k, v in F.obj.items()},
        {v: k for k, v in F.mor.items()},
    )


# ---------------------------------------------------------------------------
# enumeration engine


def _functor_plan(A: FinCategory):
    plan = A._cache.get("fplan")
    if plan is not None:
        return plan
    nonid = [m for m in A.morphisms if not A.is_identity(m)]
    nonid_set = set(nonid)
    facts: dict = {m: [] for m in nonid}
    triples = []
    for (g, f), h in A.comp.items():
        if g in nonid_set and f in nonid_set:
            triples.append((g, f, h))
            if h in nonid_set:
                facts[h].append((g, f))
    order: list = []
    placed: set = set()
    remaining = list(nonid)
    while remaining:
        pick = None
        for m in remaining:
            if any(g in placed and f in placed for g, f in facts[m]):
                pick = m
                break
        if pick is None:
            pick = min(remaining, key=lambda m: len(facts[m]))
        remaining.remove(pick)
        order.append(pick)
        placed.add(pick)
    pos = {m: i for i, m in enumerate(order)}
    forced = [[] for _ in order]
    checks = [[] for _ in order]
    for g, f, h in triples:
        pg, pf = pos[g], pos[f]
        ph = pos.get(h, -1)
        k = max(pg, pf, ph)
        checks[k].append((g, f, h))
        if ph == k and pg < k and pf < k:
            forced[k].append((g, f))
    plan = (order, forced, checks)
    A._cache["fplan"] = plan
    return plan


def enumerate_functors(
    A: FinCategory,
    B: FinCategory,
    *,
    obj_cands: Callable[[Id], Iterable[Id]] | Mapping | None = None,
    mor_cands: Callable[[Id], Iterable[Id]] | Mapping | None = None,
    injective: bool = False,
    cap: int | None = None,
    cancel: CancelToken | None = None,
) -> Iterator[FinFunctor]:
    """Yield every functor ``A -> B`` (optionally restricted), exhaustively.

    ``obj_cands``/``mor_cands`` restrict the admissible images of each object
    or morphism. ``injective`` restricts to functors injective on objects and
    morphisms. Raises :class:`CardinalityExceeded` past ``cap`` yields.
    """
    cap = DEFAULT_CAP if cap is None else cap
    order, forced, checks = _functor_plan(A)
    objs = list(A.objects)

    def cands_of(spec, x, default):
        if spec is None:
            return default
        if isinstance(spec, Mapping):
            return spec.get(x, default)
        return spec(x)

    ocands = [list(cands_of(obj_cands, a, B.objects)) for a in objs]
    mfilter = None
    if mor_cands is not None:
        mfilter = {m: set(cands_of(mor_cands, m, B.morphisms)) for m in order}
        for a in A.objects:
            allowed = set(cands_of(mor_cands, A.identity[a], B.morphisms))
            if allowed != set(B.morphisms):
                # identities are forced; filter objects by allowed identities
                idx = objs.index(a)
                ocands[idx] = [b for b in ocands[idx] if B.identity[b] in allowed]

    # morphisms incident to each object position, for hom-nonemptiness pruning
    opos = {a: i for i, a in enumerate(objs)}
    incident: list[list] = [[] for _ in objs]
    for m in order:
        k = max(opos[A.src[m]], opos[A.tgt[m]])
        incident[k].append(m)

    count = 0
    omap: dict = {}
    mmap: dict = {}
    used_obj: set = set()
    used_mor: set = set()

    def assign_objects(i):
        if i == len(objs):
            for a in objs:
                mmap[A.identity[a]] = B.identity[omap[a]]
            if injective:
                used_mor.clear()
                used_mor.update(mmap[A.identity[a]] for a in objs)
            yield from assign_morphisms(0)
            return
        a = objs[i]
        for b in ocands[i]:
            if injective and b in used_obj:
                continue
            omap[a] = b
            ok = True
            for m in incident[i]:
                hs = B.hom(omap[A.src[m]], omap[A.tgt[m]])
                if not hs or (mfilter is not None and not mfilter[m].intersection(hs)):
                    ok = False
                    break
            if ok:
                if injective:
                    used_obj.add(b)
                yield from assign_objects(i + 1)
                if injective:
                    used_obj.discard(b)
            del omap[a]

    def assign_morphisms(k):
        nonlocal count
        if k == len(order):
            count += 1
            if count > cap:
                raise CardinalityExceeded(f"more than {cap} functors {A!r} -> {B!r}")
            _poll(cancel)
            yield FinFunctor(A, B, dict(omap), dict(mmap))
            return
        m = order[k]
        if forced[k]:
            g, f = forced[k][0]
            options = (B.comp[(mmap[g], mmap[f])],)
        else:
            options = B.hom(omap[A.src[m]], omap[A.tgt[m]])
        for v in options:
            if B.src[v] != omap[A.src[m]] or B.tgt[v] != omap[A.tgt[m]]:
                continue
            if mfilter is not None and v not in mfilter[m]:
                continue
            if injective and v in used_mor:
                continue
            mmap[m] = v
            if all(B.comp[(mmap[g], mmap[f])] == mmap[h] for g, f, h in checks[k]):
                if injective:
                    used_mor.add(v)
                yield from assign_morphisms(k + 1)
                if injective:
                    used_mor.discard(v)
            del mmap[m]

    yield from assign_objects(0)


def enumerate_nattrans(
    F: FinFunctor,
    G: FinFunctor,
    *,
    comp_cands: Callable[[Id], Iterable[Id]] | None = None,
    cap: int | None = None,
    cancel: CancelToken | None = None,
) -> Iterator[NatTrans]:
    """Yield every natural transformation ``F => G``."""
    cap = DEFAULT_CAP if cap is None else cap
    A, B = F.dom, F.cod
    objs = list(A.objects)
    pos = {a: i for i, a in enumerate(objs)}
    checks: list[list] = [[] for _ in objs]
    for m in A.morphisms:
        if A.is_identity(m):
            continue
        checks[max(pos[A.src[m]], pos[A.tgt[m]])].append(m)
    comps: dict = {}
    count = 0

    def rec(i):
        nonlocal count
        if i == len(objs):
            count += 1
            if count > cap:
                raise CardinalityExceeded(f"more than {cap} transformations")
            _poll(cancel)
            yield NatTrans(F, G, dict(comps))
            return
        a = objs[i]
        opts = B.hom(F.obj[a], G.obj[a])
        if comp_cands is not None:
            allowed = set(comp_cands(a))
            opts = [c for c in opts if c in allowed]
        for c in opts:
            comps[a] = c
            if all(
                B.comp[(G.mor[m], comps[A.src[m]])] == B.comp[(comps[A.tgt[m]], F.mor[m])]
                for m in checks[i]
            ):
                yield from rec(i + 1)
            del comps[a]

    yield from rec(0)


def functors(A: FinCategory, B: FinCategory, **kw) -> list[FinFunctor]:
    return list(enumerate_functors(A, B, **kw))


def nattrans(F: FinFunctor, G: FinFunctor, **kw) -> list[NatTrans]:
    return list(enumerate_nattrans(F, G, **kw))


def find_isomorphism(C: FinCategory, D: FinCategory, *, cap: int | None = None,
                     cancel: CancelToken | None = None) -> FinFunctor | None:
    """Search exhaustively for an isomorphism of categories ``C -> D``."""
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None

    def profile(X, a):
        return (
            len(X.hom(a, a)),
            sorted(len(X.hom(a, b)) for b in X.objects),
            sorted(len(X.hom(b, a)) for b in X.objects),
        )

    dprof: dict = {}
    for b in D.objects:
        dprof.setdefault(repr(profile(D, b)), []).append(b)
    cands = {a: dprof.get(repr(profile(C, a)), []) for a in C.objects}
    for F in enumerate_functors(C, D, obj_cands=cands, injective=True, cap=cap, cancel=cancel):
        return F
    return None


def isomorphic(C: FinCategory, D: FinCategory, **kw) -> bool:
    return find_isomorphism(C, D, **kw) is not None


def find_natural_iso(F: FinFunctor, G: FinFunctor, **kw) -> NatTrans | None:
    B = F.cod

    def isos(a):
        return [c for c in B.hom(F.obj[a], G.obj[a]) if B.is_iso(c)]

    for alpha in enumerate_nattrans(F, G, comp_cands=isos, **kw):
        return alpha
    return None


def verify_adjunction(F: FinFunctor, G: FinFunctor, eta: NatTrans, eps: NatTrans) -> bool:
    """Check both triangle identities for ``F ⊣ G`` with unit/counit."""
    A, B = F.dom, F.cod
    # (eps F)·(F eta) = 1_F
    for a in A.objects:
        Fa = F.obj[a]
        lhs = B.comp[(eps.comp[Fa], F.mor[eta.comp[a]])]
        if lhs != B.identity[Fa]:
            return False
    # (G eps)·(eta G) = 1_G
    for b in B.objects:
        Gb = G.obj[b]
        lhs = A.comp[(G.mor[eps.comp[b]], eta.comp[Gb])]
        if lhs != A.identity[Gb]:
            return False
    return True


def find_adjunction(F: FinFunctor, G: FinFunctor, **kw) -> tuple[NatTrans, NatTrans] | None:
    """Search for unit and counit exhibiting ``F ⊣ G``."""
    GF = compose_functors(G, F)
    FG = compose_functors(F, G)
    units = list(enumerate_nattrans(identity_functor(F.dom), GF, **kw))
    if not units:
        return None
    counits = list(enumerate_nattrans(FG, identity_functor(F.cod), **kw))
    for eta in units:
        for eps in counits:
            if verify_adjunction(F, G, eta, eps):
                return eta, eps
    return None


# ---------------------------------------------------------------------------
# functor categories


@dataclass
class FunctorCategory:
    """``[A, B]`` with its objects indexed as functors and morphisms as transformations."""

    category: FinCategory
    dom: FinCategory
    cod: FinCategory
    functors: dict
    transformations: dict

    def object_of(self, F: FinFunctor) -> Id:
        k = F.key
        if k not in self.functors:
            raise UnknownObject(k)
        return k

    def morphism_of(self, alpha: NatTrans) -> Id:
        k = alpha.key
        if k not in self.transformations:
            raise UnknownObject(k)
        return k

    def functor(self, obj_id: Id) -> FinFunctor:
        return self.functors[obj_id]

    def nat(self, mor_id: Id) -> NatTrans:
        return self.transformations[mor_id]


def functor_category(A: FinCategory, B: FinCategory, *, cap: int | None = None,
                     cancel: CancelToken | None = None, name: str = "") -> FunctorCategory:
    """All functors ``A -> B`` and all natural transformations between them."""
    cap = DEFAULT_CAP if cap is None else cap
    fs = list(enumerate_functors(A, B, cap=cap, cancel=cancel))
    functors_by_id = {F.key: F for F in fs}
    trans: dict = {}
    hom: dict = {}
    total = 0
    for F in fs:
        for G in fs:
            lst = list(enumerate_nattrans(F, G, cap=cap, cancel=cancel))
            total += len(lst)
            if total > cap:
                raise CardinalityExceeded(f"functor category [{A!r},{B!r}] exceeds {cap}")
            hom[(F.key, G.key)] = lst
            for al in lst:
                trans[al.key] = al
    ident = {F.key: identity_nat(F).key for F in fs}
    comp = {}
    for F in fs:
        for G in fs:
            for al in hom[(F.key, G.key)]:
                for H in fs:
                    for be in hom[(G.key, H.key)]:
                        comp[(be.key, al.key)] = vcompose(be, al).key
    mors = [(k, al.dom.key, al.cod.key) for k, al in trans.items()]
    cat = FinCategory(list(functors_by_id), mors, ident, comp, name=name or f"[{A.name},{B.name}]")
    return FunctorCategory(cat, A, B, functors_by_id, trans)


# ---------------------------------------------------------------------------
# set-valued functors


@dataclass(frozen=True, eq=False)
class SetFunctor:
    """A covariant functor ``dom -> FinSet`` with explicit element tables.

    A presheaf on ``C`` is a SetFunctor whose ``dom`` is ``opposite(C)``;
    ``fmap[(m, x)]`` is the image of ``x`` under the action of ``m``.
    """

    dom: FinCategory
    sets: dict
    fmap: dict

    def __call__(self, m: Id, x: Id) -> Id:
        return self.fmap[(m, x)]

    def elements(self, a: Id) -> tuple:
        return self.sets[a]

    def validate(self) -> ValidationReport:
        v = []
        C = self.dom
        for m in C.morphisms:
            a, b = C.src[m], C.tgt[m]
            for x in self.sets[a]:
                y = self.fmap.get((m, x))
                if y not in self.sets[b]:
                    v.append(f"action of {m!r} on {x!r} leaves the target set")
        if v:
            return ValidationReport(v)
        for a in C.objects:
            for x in self.sets[a]:
                if self.fmap[(C.identity[a], x)] != x:
                    v.append(f"identity at {a!r} acts nontrivially")
        for (g, f), h in C.comp.items():
            for x in self.sets[C.src[f]]:
                if self.fmap[(g, self.fmap[(f, x)])] != self.fmap[(h, x)]:
                    v.append(f"composition {g!r}∘{f!r} not preserved")
        return ValidationReport(v)


Presheaf = SetFunctor


def make_set_functor(dom: FinCategory, sets: Mapping, fmap: Mapping) -> SetFunctor:
    return SetFunctor(dom, {a: tuple(sort_ids(sets[a])) for a in dom.objects}, dict(fmap))


def representable(C: FinCategory, c: Id) -> SetFunctor:
    """The presheaf ``C(-, c)`` (a SetFunctor on ``opposite(C)``)."""
    sets = {a: C.hom(a, c) for a in C.objects}
    fmap = {}
    for f in C.morphisms:  # f: a' -> a acts A(a, c) -> A(a', c)
        for h in C.hom(C.tgt[f], c):
            fmap[(f, h)] = C.comp[(h, f)]
    return SetFunctor(opposite(C), sets, fmap)


def corepresentable(C: FinCategory, c: Id) -> SetFunctor:
    """The copresheaf ``C(c, -)``."""
    sets = {a: C.hom(c, a) for a in C.objects}
    fmap = {}
    for f in C.morphisms:
        for h in C.hom(c, C.src[f]):
            fmap[(f, h)] = C.comp[(f, h)]
    return SetFunctor(C, sets, fmap)


def constant_set_functor(C: FinCategory, elements: Iterable[Id]) -> SetFunctor:
    elems = tuple(sort_ids(elements))
    return SetFunctor(C, {a: elems for a in C.objects}, {(m, x): x for m in C.morphisms for x in elems})


def set_nattrans(P: SetFunctor, Q: SetFunctor, *, cap: int | None = None) -> Iterator[dict]:
    """Yield every natural family ``{a: {x: y}}`` from ``P`` to ``Q``."""
    cap = DEFAULT_CAP if cap is None else cap
    C = P.dom
    objs = list(C.objects)
    pos = {a: i for i, a in enumerate(objs)}
    checks: list[list] = [[] for _ in objs]
    for m in C.morphisms:
        if not C.is_identity(m):
            checks[max(pos[C.src[m]], pos[C.tgt[m]])].append(m)
    fam: dict = {}
    count = 0

    def rec(i):
        nonlocal count
        if i == len(objs):
            count += 1
            if count > cap:
                raise CardinalityExceeded("too many set transformations")
            yield {a: dict(fn) for a, fn in fam.items()}
            return
        a = objs[i]
        xs, ys = P.sets[a], Q.sets[a]
        for vals in itertools.product(ys, repeat=len(xs)):
            fam[a] = dict(zip(xs, vals))
            if all(
                all(Q.fmap[(m, fam[C.src[m]][x])] == fam[C.tgt[m]][P.fmap[(m, x)]] for x in P.sets[C.src[m]])
                for m in checks[i]
            ):
                yield from rec(i + 1)
            del fam[a]

    yield from rec(0)


def slice_category(C: FinCategory, c: Id) -> FinCategory:
    """``C/c``: objects are arrows into ``c``, morphisms commuting triangles."""
    objs = [h for a in C.objects for h in C.hom(a, c)]
    mors = []
    for h in objs:
        for k in objs:
            for u in C.hom(C.src[h], C.src[k]):
                if C.comp[(k, u)] == h:
                    mors.append(((h, u, k), h, k))
    comp = {}
    for m1, s1, t1 in mors:
        for m2, s2, t2 in mors:
            if t1 == s2:
                comp[(m2, m1)] = (s1, C.comp[(m2[1], m1[1])], t2)
    ident = {h: (h, C.identity[C.src[h]], h) for h in objs}
    return FinCategory(objs, mors, ident, comp, name=f"{C.name}/{c}")


def coslice_category(C: FinCategory, c: Id) -> FinCategory:
    """``c/C``: objects are arrows out of ``c``."""
    return opposite(slice_category(opposite(C), c))


def pair_into(P: FinFunctor, Q: FinFunctor, apex: FinCategory, f: FinFunctor) -> FinFunctor:
    """Functor into a strict pullback apex built from its two projections.

    The apex must use the ``(a, 1, c)`` / ``(x, alpha, gamma, y)`` encoding of
    strict pullbacks, and ``f`` is the first cospan leg (used for identities).
    """
    B = f.cod

    def o(x):
        return (P.obj[x], B.identity[f.obj[P.obj[x]]], Q.obj[x])

    X = P.dom
    obj = {x: o(x) for x in X.objects}
    mor = {m: (obj[X.src[m]], P.mor[m], Q.mor[m], obj[X.tgt[m]]) for m in X.morphisms}
    return FinFunctor(X, apex, obj, mor)
