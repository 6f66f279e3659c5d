"""``twotopos`` command line: run suites or poke at single constructions.

Every subcommand prints one JSON document on stdout.  Input categories,
functors and spans are read from the JSON layout in :mod:`twotopos.serialize`:
a span file is ``{"left": functor, "right": functor}`` and a cospan file is
``{"f": functor, "g": functor}``.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .errors import BadConfig, CategoryError
from .serialize import (
    category_from_json,
    category_to_json,
    dump_json,
    functor_from_json,
    functor_to_json,
    load_json,
)

log = logging.getLogger("twotopos")


def _functor(path):
    return functor_from_json(load_json(path))


def _category(path):
    return category_from_json(load_json(path))


def _span(path):
    from .span import Span

    doc = load_json(path)
    return Span(functor_from_json(doc["left"]), functor_from_json(doc["right"]))


def _span_json(S) -> dict:
    return {"left": functor_to_json(S.left), "right": functor_to_json(S.right)}


def _emit(doc) -> None:
    print(dump_json(doc))


# ---------------------------------------------------------------------------
# run


def cmd_run(args) -> int:
    from .suites import SuiteConfig, run_suite

    cfg = SuiteConfig(lam=args.lam, trunc=args.trunc, probes=args.probes, cap=args.cap,
                      seed=args.seed, out=args.out, data=list(args.data or []))
    code, doc = run_suite(args.suite, cfg)
    if args.out:
        fails = sum(1 for c in doc["checks"] if c["verdict"] == "fail")
        print(f"{args.suite}: {len(doc['checks'])} checks, {fails} failed (seed {cfg.seed}) -> {args.out}")
    else:
        _emit(doc)
    return code


# ---------------------------------------------------------------------------
# comma


def cmd_comma(args) -> int:
    from .comma import comma, verify_lax_pullback
    from .corpus import probe_family

    doc = load_json(args.cospan)
    f, g = functor_from_json(doc["f"]), functor_from_json(doc["g"])
    sq = comma(f, g, args.flavor)
    out = {"flavor": sq.flavor, "apex": category_to_json(sq.apex),
           "p": functor_to_json(sq.p), "q": functor_to_json(sq.q)}
    code = 0
    if args.verify:
        rep = verify_lax_pullback(sq, probe_family(args.probes), cap=args.cap)
        out["checks"] = [c.to_json() for c in rep.checks]
        code = 0 if rep.ok else 1
    _emit(out)
    return code


# ---------------------------------------------------------------------------
# fib


def cmd_fib(args) -> int:
    from .fib import (
        chevalley_check,
        is_discrete_fibration,
        is_discrete_opfibration,
        is_fibration,
        is_opfibration,
        missing_lift,
    )

    f = _functor(args.functor)
    out = {"fibration": is_fibration(f), "opfibration": is_opfibration(f)}
    if not out["fibration"]:
        out["missing_lift"] = repr(missing_lift(f))
    if args.chevalley:
        ch = chevalley_check(f, cap=args.cap)
        out["chevalley"] = {"verdict": ch.verdict, "adjoint_found": ch.adjoint_found}
    if args.discrete:
        out["discrete_fibration"] = is_discrete_fibration(f)
        out["discrete_opfibration"] = is_discrete_opfibration(f)
    _emit(out)
    return 0


# ---------------------------------------------------------------------------
# span


def cmd_span(args) -> int:
    from .omega import build_omega
    from .span import as_span, classify, dfib_transpose, is_discrete_fibration_span, span_compose

    if args.action == "compose":
        if len(args.spans) != 2:
            raise BadConfig("span compose needs exactly two span files")
        S1, S2 = (_span(p) for p in args.spans)
        _emit(_span_json(span_compose(S1, S2)))
    elif args.action == "classify":
        ctx = build_omega(args.lam)
        _emit(functor_to_json(classify(_functor(args.functor), ctx)))
    else:
        S = _span(args.spans[0])
        cert = is_discrete_fibration_span(S.left, S.right)
        if cert is None:
            raise BadConfig("the span is not a two-sided discrete fibration")
        T = dfib_transpose(cert, _category(args.A), _category(args.B))
        _emit(_span_json(as_span(T)))
    return 0


# ---------------------------------------------------------------------------
# kan


def cmd_kan(args) -> int:
    from .kan import (
        colimit_in,
        lan_pointwise,
        ran_pointwise,
        verify_col_rec,
        verify_left_extension,
        verify_right_extension,
        weighted_colimit,
    )
    from .serialize import nattrans_to_json

    files = args.data
    if args.action in ("lan", "ran", "wcolim") and len(files) != 2:
        raise BadConfig(f"kan {args.action} needs two functor files")
    if args.action == "lan":
        g, f = _functor(files[0]), _functor(files[1])
        h, cell = lan_pointwise(g, f, cap=args.cap)
        _emit({"extension": functor_to_json(h), "cell": nattrans_to_json(cell.phi),
               "verified": verify_left_extension(cell, cap=args.cap)})
    elif args.action == "ran":
        g, f = _functor(files[0]), _functor(files[1])
        R, eps = ran_pointwise(g, f, cap=args.cap)
        _emit({"extension": functor_to_json(R), "cell": nattrans_to_json(eps),
               "verified": verify_right_extension(g, f, R, eps, cap=args.cap)})
    elif args.action == "colim":
        F = _functor(files[0])
        cc = colimit_in(F.cod, F, cap=args.cap)
        if cc is None:
            _emit({"colimit": None})
            return 1
        _emit({"colimit": cc.nadir, "legs": [[a, m] for a, m in cc.legs.items()]})
    else:
        from .omega import to_set_functor

        i, f = to_set_functor(_functor(files[0])), _functor(files[1])
        wc = weighted_colimit(i, f, cap=args.cap)
        if wc is None:
            _emit({"colimit": None})
            return 1
        _emit({"colimit": wc.col, "col_rec": verify_col_rec(i, f, wc)})
    return 0


# ---------------------------------------------------------------------------
# yoneda


def cmd_yoneda(args) -> int:
    from .core import sort_ids
    from .yoneda import (
        YonedaContext,
        chi,
        chi_comma_check,
        is_admissible,
        is_small,
        verify_axioms,
        yoneda_corpus,
    )

    ctx = YonedaContext(args.lam, cap=args.cap)
    if args.action == "admissible":
        f = _functor(args.functor)
        cert = is_admissible(f, ctx)
        _emit({"lambda": ctx.lam, "admissible": cert is not None,
               "hom_sizes": [[a, b, n] for (a, b), n in sorted((cert.witness if cert else {}).items(), key=repr)]})
    elif args.action == "psh":
        A = _category(args.category)
        P = ctx.psh(A)
        _emit({"lambda": ctx.lam, "objects": len(P.category.objects), "morphisms": len(P.category.morphisms),
               "small": is_small(A, ctx),
               "presheaves": [sorted(F.obj.items(), key=repr) for F in
                              (P.functors[k] for k in sort_ids(P.functors))]})
    elif args.action == "chi":
        f = _functor(args.functor)
        x = chi(f, ctx)
        P = ctx.psh(f.dom).category
        _emit({"components": {str(a): P.is_iso(c) for a, c in x.comp.items()},
               "invertible": all(P.is_iso(c) for c in x.comp.values()),
               "comma_agrees": chi_comma_check(f, ctx)})
    else:
        corpus = [_functor(args.functor)] if args.functor else yoneda_corpus(3)
        rep = verify_axioms(ctx, corpus, cap=args.cap)
        _emit({"lambda": ctx.lam, "checks": [c.to_json() for c in sorted(rep.checks, key=lambda c: c.id)]})
        return 0 if rep.ok else 1
    return 0


# ---------------------------------------------------------------------------
# omega


def cmd_omega(args) -> int:
    from .omega import build_omega, cc_report, cosieve_bijection, cosieves, cosieve_members

    if args.action == "build":
        ctx = build_omega(args.lam, args.min_size)
        _emit({"name": ctx.name, "omega": category_to_json(ctx.omega), "tau": functor_to_json(ctx.tau)})
        return 0
    if args.action == "cosieves":
        X = _category(args.category)
        rep = cosieve_bijection(X)
        _emit({"cosieves": [sorted(cosieve_members(p), key=repr) for p in cosieves(X)],
               "checks": [c.to_json() for c in rep.checks]})
        return 0 if rep.ok else 1
    rep = cc_report(build_omega(args.lam, args.min_size))
    _emit({"lambda": args.lam, "checks": [c.to_json() for c in rep.checks]})
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# glob


def cmd_glob(args) -> int:
    from .glob import glob_corpus, i_k_pad, sp, verify_D_Sigma
    from .omega import build_omega

    ctx = build_omega(args.lam)
    n = args.trunc
    if args.action == "sp":
        X = sp(ctx.omega, n, cap=args.cap)
        _emit({"lambda": args.lam, "trunc": n, "level_objects": [len(L.objects) for L in X.levels],
               "level_morphisms": [len(L.morphisms) for L in X.levels], "globular": X.check_globular()})
        return 0
    if args.action == "sigma":
        rep = verify_D_Sigma(glob_corpus(n))
        _emit({"checks": [c.to_json() for c in rep.checks]})
        return 0 if rep.ok else 1
    if args.action == "ik":
        k = args.k
        if k > n:
            raise BadConfig("k must not exceed the truncation")
        X = sp(ctx.omega, n - k)
        fc = X.extra["fcs"][n - k]
        rows = []
        for key in sorted(fc.functors, key=repr)[: args.limit]:
            P = i_k_pad(fc.functors[key], k, ctx)
            rows.append(sorted(([list(a), v] for a, v in P.obj.items()), key=repr))
        _emit({"k": k, "trunc": n, "padded": rows})
        return 0
    from .suites import SuiteConfig, run_suite

    code, doc = run_suite("glob", SuiteConfig(lam=args.lam, trunc=n, cap=args.cap))
    _emit(doc)
    return code


# ---------------------------------------------------------------------------
# parser


def _common(p, lam=True):
    if lam:
        p.add_argument("--lambda", dest="lam", type=int, default=2, help="cardinality bound (sets of size < N)")
    p.add_argument("--cap", type=int, default=200_000, help="enumeration bound per search")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twotopos", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a named verification suite")
    p.add_argument("suite")
    _common(p)
    p.add_argument("--trunc", type=int, default=2)
    p.add_argument("--probes", choices=("tiny", "standard"), default="tiny")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out")
    p.add_argument("--data", nargs="*", help="extra category JSON files for core-laws")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("comma", help="comma object of a cospan")
    p.add_argument("--cospan", required=True)
    p.add_argument("--flavor", choices=("lax", "pseudo", "strict"), default="lax")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--probes", choices=("tiny", "standard"), default="standard")
    _common(p, lam=False)
    p.set_defaults(func=cmd_comma)

    p = sub.add_parser("fib", help="fibration checks")
    p.add_argument("action", choices=("check",))
    p.add_argument("--functor", required=True)
    p.add_argument("--chevalley", action="store_true")
    p.add_argument("--discrete", action="store_true")
    _common(p, lam=False)
    p.set_defaults(func=cmd_fib)

    p = sub.add_parser("span", help="span composition, classification, transposition")
    p.add_argument("action", choices=("compose", "classify", "transpose"))
    p.add_argument("--spans", nargs="*", default=[])
    p.add_argument("--functor")
    p.add_argument("--A")
    p.add_argument("--B")
    _common(p)
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("kan", help="Kan extensions and colimits")
    p.add_argument("action", choices=("lan", "ran", "colim", "wcolim"))
    p.add_argument("--data", nargs="+", required=True)
    _common(p, lam=False)
    p.set_defaults(func=cmd_kan)

    p = sub.add_parser("yoneda", help="admissibility, presheaves, chi, axioms")
    p.add_argument("action", choices=("admissible", "psh", "chi", "axioms"))
    p.add_argument("--functor")
    p.add_argument("--category")
    _common(p)
    p.set_defaults(func=cmd_yoneda)

    p = sub.add_parser("omega", help="truth-value categories")
    p.add_argument("action", choices=("build", "cosieves", "cc-check"))
    p.add_argument("--category")
    p.add_argument("--min-size", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("glob", help="truncated globular constructions")
    p.add_argument("action", choices=("sp", "sigma", "ik", "check"))
    p.add_argument("--trunc", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--limit", type=int, default=5, help="padded spans to print")
    _common(p)
    p.set_defaults(func=cmd_glob)
    return ap


_NEEDS = {
    ("fib", "check"): ("functor",),
    ("span", "classify"): ("functor",),
    ("span", "transpose"): ("spans", "A", "B"),
    ("yoneda", "admissible"): ("functor",),
    ("yoneda", "chi"): ("functor",),
    ("yoneda", "psh"): ("category",),
    ("omega", "cosieves"): ("category",),
}


def _check_required(args) -> None:
    need = _NEEDS.get((args.command, getattr(args, "action", None)), ())
    missing = [n for n in need if not getattr(args, n, None)]
    if missing:
        raise BadConfig(f"{args.command} {args.action}: missing --{', --'.join(missing)}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _check_required(args)
        return args.func(args)
    except CategoryError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
