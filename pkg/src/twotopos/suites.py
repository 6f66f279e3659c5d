"""Named verification suites behind ``twotopos run``.

Each suite returns a :class:`Report`; :func:`run_suite` sorts the checks by id,
stamps the seed, and turns the verdicts into an exit code.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from .core import (
    compose_functors,
    find_isomorphism,
    functors,
    identity_functor,
    is_invertible,
    nattrans,
    opposite,
    representable,
    slice_category,
    validate_category,
    validate_functor,
    validate_nattrans,
)
from .corpus import (
    BASES,
    DEFAULT_SEED,
    cat,
    cospan_corpus,
    discrete_opfibration_corpus,
    extension_corpus,
    full_inclusions,
    functor_corpus,
    named_categories,
    preorders_upto,
    probe_family,
)
from .errors import BadConfig, CardinalityExceeded, NoColimit, NoLimit, NotAdmissible
from .report import FAIL, INCONCLUSIVE, Report

log = logging.getLogger(__name__)

SUITES = ("core-laws", "comma", "fib", "span", "kan", "yoneda-axioms", "omega", "glob")


@dataclass
class SuiteConfig:
    lam: int = 2
    trunc: int = 2
    probes: str = "tiny"
    cap: int = 200_000
    seed: int = DEFAULT_SEED
    out: str | None = None
    data: list = field(default_factory=list)  # extra corpus files (JSON categories)

    def validate(self) -> None:
        if self.lam < 2:
            raise BadConfig("lambda must be at least 2")
        if self.cap <= 0:
            raise BadConfig("cap must be positive")
        if self.trunc < 1:
            raise BadConfig("truncation must be at least 1")
        if self.probes not in ("tiny", "standard"):
            raise BadConfig(f"unknown probe family {self.probes!r}")


def _extra_categories(cfg: SuiteConfig) -> list:
    from .serialize import category_from_json, load_json

    out = []
    for path in cfg.data:
        doc = load_json(path)
        docs = doc if isinstance(doc, list) else [doc]
        for d in docs:
            out.append(category_from_json(d, name=Path(path).stem))
    return out


# ---------------------------------------------------------------------------
# core-laws


def suite_core(cfg: SuiteConfig) -> Report:
    rep = Report()
    cats = dict(named_categories())
    for P in preorders_upto(3):
        cats[P.name] = P
    for C in _extra_categories(cfg):
        cats[f"data:{C.name}"] = C
    for name, C in cats.items():
        v = validate_category(C)
        rep.add(f"category:{name}", v.ok, None if v.ok else v.violations[:3])
        rep.add(f"opposite-involution:{name}", opposite(opposite(C)) == C)
    for n, f in enumerate(functor_corpus(40, seed=cfg.seed)):
        v = validate_functor(f)
        rep.add(f"functor:{n}", v.ok, None if v.ok else v.violations[:3])
        one_a, one_b = identity_functor(f.dom), identity_functor(f.cod)
        rep.add(f"unit-laws:{n}", compose_functors(f, one_a) == f and compose_functors(one_b, f) == f)
        ts = nattrans(f, f, cap=cfg.cap)
        rep.add(f"nattrans:{n}", all(validate_nattrans(a).ok for a in ts), {"count": len(ts)})
    return rep


# ---------------------------------------------------------------------------
# comma


def suite_comma(cfg: SuiteConfig) -> Report:
    import random

    from .comma import FLAVORS, comma, pasting_check, verify_lax_pullback

    rep = Report()
    probes = probe_family("standard" if cfg.probes == "standard" else "tiny")
    for n, (f, g) in enumerate(cospan_corpus(50, seed=cfg.seed)):
        for flavor in FLAVORS:
            sq = comma(f, g, flavor)
            rep.extend(verify_lax_pullback(sq, probes, cap=cfg.cap), prefix=f"cospan{n:02d}:{flavor}:")
    rng = random.Random(cfg.seed + 11)
    count = 0
    for n, (f, g) in enumerate(cospan_corpus(50, seed=cfg.seed)):
        if count >= 24:
            break
        hs = [h for name in ("1", "2", "disc2", "par") for h in functors(cat(name), f.dom)]
        if not hs:
            continue
        h = rng.choice(hs)
        res = pasting_check(comma(f, g), h, probes=probes, cap=cfg.cap)
        rep.add(f"pasting:{count:02d}", res.agree and res.front_ok and res.composite_ok,
                {"front": res.front_ok, "composite": res.composite_ok})
        count += 1
    return rep


# ---------------------------------------------------------------------------
# fib


def suite_fib(cfg: SuiteConfig) -> Report:
    from .comma import comma
    from .fib import chevalley_check, closure_suite, is_discrete_fibration_span, is_fibration, is_opfibration

    rep = Report()
    corpus = functor_corpus(40, seed=cfg.seed, max_cod=3)
    verdicts = {"agree": 0, "disagree": 0, "inconclusive": 0}
    for n, f in enumerate(corpus):
        t0 = time.perf_counter()
        ch = chevalley_check(f, cap=cfg.cap)
        verdicts[ch.verdict] += 1
        verdict = {"agree": True, "disagree": False}.get(ch.verdict, INCONCLUSIVE)
        rep.add(f"chevalley:{n:02d}", verdict, {"fibration": ch.is_fibration, "adjoint": ch.adjoint_found},
                time.perf_counter() - t0)
    rate = verdicts["inconclusive"] / max(1, len(corpus))
    rep.add("chevalley:inconclusive-rate", rate < 0.10, {"rate": rate, **verdicts})

    for n, (f, g) in enumerate(cospan_corpus(50, seed=cfg.seed)):
        sq = comma(f, g)
        cert = is_discrete_fibration_span(sq.p, sq.q)
        rep.add(f"two-sided:{n:02d}:certificate", cert is not None)
        if cert is not None:
            rep.add(f"two-sided:{n:02d}:legs", is_fibration(sq.p) and is_opfibration(sq.q))

    fibs = [f for f in corpus if is_fibration(f)]
    opfibs = [f for f in corpus if is_opfibration(f)]
    maps = functor_corpus(40, seed=cfg.seed + 2)
    rep.extend(closure_suite(fibs, maps))
    rep.extend(closure_suite(opfibs, maps, opfib=True))
    return rep


# ---------------------------------------------------------------------------
# span


def suite_span(cfg: SuiteConfig) -> Report:
    from .omega import build_omega
    from .span import (
        G,
        as_span,
        classify,
        dfib_to_profunctor,
        el_presheaf,
        hom_profunctor,
        iso_over,
        map_adjunction,
        profunctor_to_dfib,
        span_iso,
    )

    rep = Report()
    for lam in sorted({2, 3, cfg.lam}):
        ctx = build_omega(lam)
        for n, p in enumerate(discrete_opfibration_corpus(max_fibre=lam)):
            f = classify(p, ctx)
            back = G(f, ctx.tau)
            rep.add(f"lambda{lam}:G-classify:{n:02d}", iso_over(back, p) is not None)
        for name in ("1", "2", "disc2", "par", "vee"):
            for k, f in enumerate(functors(cat(name), ctx.omega, cap=cfg.cap)[:40]):
                rep.add(f"lambda{lam}:classify-G:{name}:{k:02d}", classify(G(f, ctx.tau), ctx) == f)
    bases = 0
    for name in BASES:
        C = cat(name)
        ok = True
        for c in C.objects:
            p = el_presheaf(representable(C, c))
            ok &= find_isomorphism(p.dom, slice_category(C, c)) is not None
        rep.add(f"el-representable:{name}", ok)
        bases += 1
    rep.add("el-representable:bases", bases >= 10, {"bases": bases})
    for name in ("1", "2", "3", "par", "span"):
        C = cat(name)
        S = profunctor_to_dfib(hom_profunctor(C))
        back = dfib_to_profunctor(S)
        again = profunctor_to_dfib(back)
        rep.add(f"profunctor-round-trip:{name}", span_iso(as_span(S), as_span(again)) is not None)
    for n, f in enumerate(functor_corpus(16, seed=cfg.seed + 4)):
        rep.add(f"map-adjunction:{n:02d}", map_adjunction(f).ok)
    return rep


# ---------------------------------------------------------------------------
# kan


def _poset_join(B, xs):
    """Least upper bound in a preorder ``B``, or None."""
    ups = [b for b in B.objects if all(B.hom(x, b) for x in xs)]
    least = [b for b in ups if all(B.hom(b, u) for u in ups)]
    return least[0] if least else None


def suite_kan(cfg: SuiteConfig) -> Report:
    from .comma import comma
    from .core import point
    from .kan import lan_pointwise, ran_pointwise, verify_col_rec, verify_pointwise_left_extension
    from .kan import verify_left_extension, verify_right_extension, weighted_colimit
    from .omega import build_omega, to_set_functor
    from .yoneda import YonedaContext

    rep = Report()
    for n, (g, f) in enumerate(extension_corpus(36, seed=cfg.seed)):
        tag = f"lan:{n:02d}"
        try:
            h, cell = lan_pointwise(g, f, cap=cfg.cap)
        except NoColimit as e:
            rep.add(tag, FAIL, str(e))
            continue
        want = {}
        for c in g.cod.objects:
            sq = comma(g, point(g.cod, c))
            want[c] = _poset_join(f.cod, [f.obj[x[0]] for x in sq.apex.objects])
        rep.add(f"{tag}:oracle", all(h.obj[c] == want[c] for c in want), {"got": h.obj, "want": want})
        rep.add(f"{tag}:left-extension", verify_left_extension(cell, cap=cfg.cap))
        rep.add(f"{tag}:pointwise", verify_pointwise_left_extension(cell, cap=cfg.cap))
        try:
            R, eps = ran_pointwise(g, f, cap=cfg.cap)
            rep.add(f"ran:{n:02d}", verify_right_extension(g, f, R, eps, cap=cfg.cap))
        except NoLimit as e:
            rep.add(f"ran:{n:02d}", FAIL, str(e))

    import random

    rng = random.Random(cfg.seed + 13)
    for n, g in enumerate(full_inclusions()):
        B = cat(rng.choice(("2", "3", "square")))
        fs = functors(g.dom, B)
        f = rng.choice(fs)
        h, cell = lan_pointwise(g, f, cap=cfg.cap)
        rep.add(f"ff-invertible:{n:02d}", is_invertible(cell.phi) and verify_pointwise_left_extension(cell))

    # weighted colimits in presheaves at lambda = 2
    ctx = YonedaContext(2)
    two = build_omega(2)
    small = [P for P in preorders_upto(2) if P.objects]
    count = 0
    for C in small:
        weights = [to_set_functor(w) for w in functors(opposite(C), two.omega)]
        for D in small:
            PD = ctx.psh(D).category
            for fi, f in enumerate(functors(C, PD)):
                for wi, i in enumerate(weights):
                    tag = f"wcolim:{C.name}:{D.name}:{fi}.{wi}"
                    wc = weighted_colimit(i, f, cap=cfg.cap)
                    rep.add(tag, wc is not None and verify_col_rec(i, f, wc))
                    count += 1
    rep.add("wcolim:count", count > 0, {"instances": count})
    return rep


# ---------------------------------------------------------------------------
# yoneda-axioms


def suite_yoneda(cfg: SuiteConfig) -> Report:
    from .yoneda import (
        YonedaContext,
        chi_comma_check,
        ff_iff_chi_invertible,
        is_admissible,
        presheaf_adjunctions,
        verify_axioms,
        yoneda_corpus,
        yoneda_restricts_to_identity,
        yoneda_self_extension,
    )

    ctx = YonedaContext(cfg.lam, cap=cfg.cap)
    rep = Report()
    corpus = yoneda_corpus(3)
    rep.extend(verify_axioms(ctx, corpus, probe_family(cfg.probes), cap=cfg.cap))
    for n, f in enumerate(corpus):
        if is_admissible(f, ctx) is None:
            continue
        rep.add(f"ff-chi:{n:03d}", ff_iff_chi_invertible(f, ctx))
        rep.add(f"chi-comma:{n:03d}", chi_comma_check(f, ctx))
    pres = [P for P in preorders_upto(3) if P.objects]
    for A in pres:
        rep.add(f"self-extension:{A.name}", yoneda_self_extension(A, ctx))
        rep.add(f"restricts-to-identity:{A.name}", yoneda_restricts_to_identity(A, ctx))
    n = 0
    for A in pres:
        for B in pres:
            for f in functors(A, B):
                rep.extend(presheaf_adjunctions(f, ctx), prefix=f"adjoint-triple:{n:04d}:")
                n += 1
    return rep


# ---------------------------------------------------------------------------
# omega


def suite_omega(cfg: SuiteConfig) -> Report:
    from .core import preorder
    from .kan import colimit_in, empty_diagram, initial_object
    from .omega import (
        build_internal_poset_from_subobjects,
        build_omega,
        cc_report,
        comparison_is_iso,
        cosieve_bijection,
        implication_table,
        terminal_adjoint_check,
        verify_context,
    )

    rep = Report()
    ctx = build_omega(cfg.lam)
    rep.extend(verify_context(ctx, probe_family("tiny") if cfg.lam <= 3 else None), prefix="context:")
    rep.extend(cc_report(ctx), prefix="cc:")
    if cfg.lam == 2:
        table = implication_table(ctx)
        classical = {(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 1}
        rep.add("cc:implication-table", table == classical, {str(k): v for k, v in table.items()})
    _, comparison = build_internal_poset_from_subobjects()
    rep.add("internal-poset-comparison", comparison_is_iso(comparison))
    xs = [P for P in preorders_upto(3)] + [cat(n) for n in ("par", "iso", "square", "vee", "wedge", "4", "Z2")]
    for X in xs:
        rep.extend(cosieve_bijection(X), prefix=f"cosieves:{X.name}:")

    # negative controls in the non-empty-sets context
    ne = build_omega(3, min_size=1)
    no_init = initial_object(ne.omega) is None and colimit_in(ne.omega, empty_diagram(ne.omega)) is None
    rep.add("control:nonempty-sets-no-initial", no_init)
    subsets = preorder(["a", "b", "ab"], [("a", "ab"), ("b", "ab")])
    rep.add("control:nonempty-subsets-no-initial", initial_object(subsets) is None)
    two_up = build_omega(4, min_size=2)
    try:
        terminal_adjoint_check(two_up)
        rep.add("control:one-not-admissible", False, "a right adjoint was found")
    except NotAdmissible as e:
        rep.add("control:one-not-admissible", True, str(e))
    return rep


# ---------------------------------------------------------------------------
# glob


def suite_glob(cfg: SuiteConfig) -> Report:
    from .glob import (
        build_G,
        glob_corpus,
        globular_classifying_check,
        i_k_pad,
        naturality_pullback_check,
        sp,
        sp_tau_levels,
        verify_D_Sigma,
        verify_suspension_square,
        words_normal_forms,
    )
    from .omega import build_omega
    from .span import check_classifying

    rep = Report()
    n = max(cfg.trunc, 1)
    G = build_G(3)
    for m in range(4):
        for m2 in range(4):
            got = {str(f) for f in G.category.hom(m, m2)}
            want = words_normal_forms(m, m2)
            rep.add(f"G3-hom:{m}{m2}", len(got) == len(want), {"size": len(got), "normal-forms": len(want)})
    corpus = glob_corpus(n)
    rep.add("corpus-size", len(corpus) >= 10, {"objects": len(corpus)})
    rep.extend(verify_D_Sigma(corpus), prefix="D-Sigma:")

    ctx = build_omega(cfg.lam)
    X2 = sp(ctx.omega, 2)
    fc = X2.extra["fcs"][2]
    ok = True
    for F in fc.functors.values():
        P = i_k_pad(F, 2, ctx)
        ok &= len(P.dom.objects) == 9 and all(P.obj[(j, x)] == 1 for j in (0, 1) for x in "st")
        ok &= all(P.obj[(j + 2, x)] == F.obj[(j, x)] for (j, x) in F.dom.objects)
    rep.add("i_k:k2-n4-shape", ok, {"spans": len(fc.functors)})
    rep.extend(verify_suspension_square(ctx, n), prefix="suspension:")

    taus = sp_tau_levels(ctx, n)
    for m, tau_m in enumerate(taus):
        lv = check_classifying(tau_m, probe_family("tiny"), cap=cfg.cap)
        rep.extend(lv, prefix=f"sp-tau:levelwise:level{m}:")
    rep.extend(globular_classifying_check(ctx, n, cap=cfg.cap), prefix="sp-tau:")

    # the item over the idempotent monoid dominates the runtime (about a minute and a half)
    for k, p in enumerate(discrete_opfibration_corpus(max_fibre=cfg.lam)):
        rep.add(f"epsilon-naturality:{k:02d}", naturality_pullback_check(p, n))
    return rep


RUNNERS = {
    "core-laws": suite_core,
    "comma": suite_comma,
    "fib": suite_fib,
    "span": suite_span,
    "kan": suite_kan,
    "yoneda-axioms": suite_yoneda,
    "omega": suite_omega,
    "glob": suite_glob,
}


def build_report(name: str, config: SuiteConfig) -> Report:
    config.validate()
    if name == "all":
        rep = Report()
        for s in SUITES:
            rep.extend(build_report(s, config), prefix=f"{s}/")
        return rep
    runner = RUNNERS.get(name)
    if runner is None:
        raise BadConfig(f"unknown suite {name!r}; expected one of {', '.join(SUITES + ('all',))}")
    t0 = time.perf_counter()
    try:
        rep = runner(config)
    except CardinalityExceeded as e:
        rep = Report()
        rep.add(f"{name}:bound", INCONCLUSIVE, str(e))
    log.info("suite %s: %d checks in %.1fs", name, len(rep.checks), time.perf_counter() - t0)
    return rep


def report_json(name: str, config: SuiteConfig, rep: Report) -> dict:
    checks = sorted(rep.checks, key=lambda c: c.id)
    return {"suite": name, "seed": config.seed, "checks": [c.to_json() for c in checks]}


def run_suite(name: str, config: SuiteConfig | None = None) -> tuple[int, dict]:
    """Run a named suite; exit code 0 iff no check failed."""
    config = config or SuiteConfig()
    rep = build_report(name, config)
    doc = report_json(name, config, rep)
    if config.out:
        Path(config.out).write_text(json.dumps(doc, indent=2) + "\n")
    return (0 if rep.ok else 1), doc


__all__ = ["SuiteConfig", "SUITES", "run_suite", "build_report", "report_json"]
