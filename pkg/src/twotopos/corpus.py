"""Named small categories, probe families and seeded random corpora."""

from __future__ import annotations

import random
from functools import lru_cache

from .core import (
    FinCategory,
    FinFunctor,
    chain,
    compose_functors,
    discrete,
    free_category,
    functors,
    identity_functor,
    monoid,
    point,
    preorder,
    product,
    terminal,
    walking_iso,
)
from .errors import BadConfig

DEFAULT_SEED = 7


def _named(C: FinCategory, name: str) -> FinCategory:
    C.name = name
    return C


@lru_cache(maxsize=None)
def named_categories() -> dict:
    """Small categories used throughout the tests, keyed by a short name."""
    cats = {
        "1": terminal(),
        "2": chain(2),
        "3": chain(3),
        "4": chain(4),
        "disc2": discrete([0, 1], name="disc2"),
        "disc3": discrete([0, 1, 2], name="disc3"),
        "par": free_category(["a", "b"], [("f", "a", "b"), ("g", "a", "b")]),
        "span": free_category(["l", "m", "r"], [("u", "m", "l"), ("v", "m", "r")]),
        "cospan": free_category(["l", "m", "r"], [("u", "l", "m"), ("v", "r", "m")]),
        "iso": walking_iso(),
        "square": product(chain(2), chain(2)),
        "Z2": monoid(["e", "s"], {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}, "e"),
        "idem": monoid(["e", "i"], {("e", "e"): "e", ("e", "i"): "i", ("i", "e"): "i", ("i", "i"): "i"}, "e"),
        "vee": preorder(["a", "b", "c"], [("a", "c"), ("b", "c")]),
        "wedge": preorder(["a", "b", "c"], [("a", "b"), ("a", "c")]),
    }
    for k, C in cats.items():
        _named(C, k)
    return cats


def cat(name: str) -> FinCategory:
    try:
        return named_categories()[name]
    except KeyError:
        raise BadConfig(f"unknown corpus category {name!r}") from None


PROBES = {
    "tiny": ("1", "2"),
    "standard": ("1", "2", "disc2", "par"),
}


def probe_family(name: str = "standard") -> list[FinCategory]:
    if name not in PROBES:
        raise BadConfig(f"unknown probe family {name!r}")
    return [cat(n) for n in PROBES[name]]


@lru_cache(maxsize=None)
def all_functors(a: str, b: str) -> tuple:
    return tuple(functors(cat(a), cat(b)))


def preorders_upto(n: int) -> list[FinCategory]:
    """Every preorder on at most ``n`` labelled points, up to isomorphism."""
    from .core import find_isomorphism

    out: list[FinCategory] = []
    for k in range(0, n + 1):
        pts = list(range(k))
        pairs = [(i, j) for i in pts for j in pts if i != j]
        for mask in range(1 << len(pairs)):
            rel = [p for b, p in enumerate(pairs) if mask >> b & 1]
            P = preorder(pts, rel)
            if len(P.morphisms) != k + len(rel):
                continue  # not transitively closed; its closure is visited elsewhere
            if any(find_isomorphism(P, Q) is not None for Q in out if len(Q.objects) == k):
                continue
            P.name = f"pre{k}." + ".".join(f"{i}{j}" for i, j in rel)
            out.append(P)
    return out


SMALL = ("1", "2", "disc2", "par", "iso", "Z2", "idem", "span", "cospan", "3")
BASES = ("1", "2", "3", "disc2", "par", "iso", "square", "vee", "wedge", "cospan", "Z2", "idem")


def cospan_corpus(n: int = 60, seed: int = DEFAULT_SEED) -> list[tuple[FinFunctor, FinFunctor]]:
    """Seeded cospans ``f: A -> B <- C: g`` with ``|B| <= 4``."""
    rng = random.Random(seed)
    out, seen = [], set()
    tries = 0
    while len(out) < n and tries < 20 * n:
        tries += 1
        b = rng.choice(BASES)
        a, c = rng.choice(SMALL), rng.choice(SMALL)
        fs, gs = all_functors(a, b), all_functors(c, b)
        if not fs or not gs:
            continue
        f, g = rng.choice(fs), rng.choice(gs)
        key = (a, b, c, f.key, g.key)
        if key in seen:
            continue
        seen.add(key)
        out.append((f, g))
    return out


def functor_corpus(n: int = 40, seed: int = DEFAULT_SEED, max_cod: int = 3) -> list[FinFunctor]:
    """Seeded functors with codomains of at most ``max_cod`` objects."""
    rng = random.Random(seed + 1)
    cods = [b for b in BASES if len(cat(b).objects) <= max_cod]
    doms = ("1", "2", "3", "disc2", "par", "iso", "span", "cospan", "square", "Z2", "idem", "vee", "wedge")
    out, seen = [], set()
    tries = 0
    while len(out) < n and tries < 50 * n:
        tries += 1
        a, b = rng.choice(doms), rng.choice(cods)
        fs = all_functors(a, b)
        if not fs:
            continue
        f = rng.choice(fs)
        key = (a, b, f.key)
        if key in seen:
            continue
        seen.add(key)
        out.append(f)
    return out


def slice_projections(max_fibre: int | None = None) -> list[FinFunctor]:
    """Discrete opfibrations ``b/g -> C`` for corpus functors ``g`` and objects ``b``.

    With ``max_fibre`` set, only those whose fibres stay below it are kept.
    """
    from .comma import comma

    out = []
    for g in functor_corpus(24, seed=DEFAULT_SEED + 3):
        B = g.cod
        for b in B.objects:
            sq = comma(point(B, b), g)
            p = sq.q
            if max_fibre is not None:
                sizes = [sum(1 for x in p.dom.objects if p.obj[x] == c) for c in p.cod.objects]
                if any(s >= max_fibre for s in sizes):
                    continue
            out.append(p)
    return out


def discrete_opfibration_corpus(max_fibre: int | None = None) -> list[FinFunctor]:
    from .fib import is_discrete_opfibration

    out = [identity_functor(cat(n)) for n in ("1", "2", "3", "par", "square")]
    out += [point(cat("2"), 1), point(cat("3"), 2)]
    out += slice_projections(max_fibre)
    keep = []
    for p in out:
        if not is_discrete_opfibration(p):
            continue
        if max_fibre is not None:
            sizes = [sum(1 for x in p.dom.objects if p.obj[x] == c) for c in p.cod.objects]
            if any(s >= max_fibre for s in sizes):
                continue
        keep.append(p)
    return keep


def composable_pairs(fs: list[FinFunctor]) -> list[tuple[FinFunctor, FinFunctor]]:
    return [(g, f) for f in fs for g in fs if f.cod == g.dom]


LATTICES = ("2", "3", "square")
EXT_DOMS = ("1", "2", "disc2", "par", "span", "cospan", "iso", "3", "vee", "wedge", "Z2")


def extension_corpus(n: int = 36, seed: int = DEFAULT_SEED) -> list[tuple[FinFunctor, FinFunctor]]:
    """Seeded pairs ``(g: A -> C, f: A -> B)`` with ``B`` a finite lattice."""
    rng = random.Random(seed + 5)
    out, seen = [], set()
    tries = 0
    while len(out) < n and tries < 50 * n:
        tries += 1
        a, c, b = rng.choice(EXT_DOMS), rng.choice(EXT_DOMS), rng.choice(LATTICES)
        gs, fs = all_functors(a, c), all_functors(a, b)
        if not gs or not fs:
            continue
        g, f = rng.choice(gs), rng.choice(fs)
        key = (a, c, b, g.key, f.key)
        if key in seen:
            continue
        seen.add(key)
        out.append((g, f))
    return out


def full_inclusions() -> list[FinFunctor]:
    """Inclusions of every non-empty full subcategory of a few named categories."""
    from itertools import combinations

    from .core import full_subcategory, subcategory_inclusion

    out = []
    for name in ("2", "3", "par", "span", "cospan", "square", "vee"):
        C = cat(name)
        for k in range(1, len(C.objects) + 1):
            for objs in combinations(C.objects, k):
                out.append(subcategory_inclusion(full_subcategory(C, objs), C))
    return out


__all__ = [
    "named_categories", "cat", "probe_family", "all_functors", "preorders_upto",
    "cospan_corpus", "functor_corpus", "slice_projections", "discrete_opfibration_corpus",
    "composable_pairs", "DEFAULT_SEED", "extension_corpus", "full_inclusions", "LATTICES",
]
