"""Command-line front end.

Subcommands: check (perfection verdict + classification of a spec), sigma
(divisor sum of a split polynomial, factored and expanded), matrix (the
exponent system S with exact rank and kernel), search (exhaustive perfect
search with classification report), verify-theorem (rank/kernel claims for
every N | q-1 over the given primes).

All output is deterministic byte-for-byte for fixed inputs: orderings are
lexicographic, rationals canonical, and reports carry no timing or worker
information.  Field elements serialize as [i, j] pairs, big exponents as
decimal strings, rationals as fraction strings.  Exit codes: 0 on
success/pass, 1 on failed verification or unexpected classification, 2 on
malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .circulant import build_system, rank_and_kernel, verify_rank_claims
from .field import FieldSpec, divisors, make_field
from .perfection import SplitSpec
from .polynomial import (
    DEFAULT_DEGREE_BOUND,
    SplitPoly,
    expand,
    is_perfect,
    sigma_closed_form,
    sigma_split,
)
from .search import (
    DEFAULT_ENUM_BUDGET,
    classify,
    classify_spec,
    search_perfect,
    search_report,
)


def _emit(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_json_arg(inline: str | None, path: str | None, what: str):
    if (inline is None) == (path is None):
        raise ValueError(f"provide exactly one of --{what} or --{what}-file")
    text = inline if inline is not None else open(path, "r", encoding="utf-8").read()
    return json.loads(text)


def _load_config(path: str | None) -> dict:
    defaults = {"degree_bound": DEFAULT_DEGREE_BOUND, "budget": DEFAULT_ENUM_BUDGET}
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            defaults.update(json.load(fh))
    return defaults


def _cmd_check(args) -> int:
    field = make_field(args.p)
    cfg = _load_config(args.config)
    obj = _load_json_arg(args.spec, args.spec_file, "spec")
    spec = SplitSpec.from_obj(field, obj)
    perfect = is_perfect(spec.to_split_poly(), cfg["degree_bound"])
    if perfect:
        cls = classify_spec(spec, bound=cfg["degree_bound"])
    else:
        from .search import Classification

        cls = Classification("not-perfect")
    out = {
        "field": field.to_obj(),
        "spec": spec.to_obj(),
        "omega": spec.omega,
        "perfect": perfect,
        **cls.to_obj(),
    }
    if args.json:
        sys.stdout.write(_emit(out))
    else:
        poly = spec.to_split_poly()
        print(f"A = {poly}")
        verdict = "perfect" if perfect else "not perfect"
        extra = ""
        if cls.kind == "family-shift":
            extra = f" ({cls.family} shifted by {cls.shift})"
        print(f"verdict: {verdict}, kind: {cls.kind}{extra}")
    return 0


def _sigma_factored(f: SplitPoly) -> SplitPoly | None:
    """Factored sigma(f) when every exponent has the N*p^n - 1 shape with
    N | q-1; None when some sigma factor does not split."""
    field = f.field
    out = SplitPoly(field)
    for gamma, e in f.items():
        m = e + 1
        n = 0
        while m % field.p == 0:
            m //= field.p
            n += 1
        if (field.q - 1) % m != 0:
            return None
        out = out * sigma_closed_form(gamma, m, n)
    return out


def _cmd_sigma(args) -> int:
    field = make_field(args.p)
    cfg = _load_config(args.config)
    obj = _load_json_arg(args.factors, args.factors_file, "factors")
    f = SplitPoly.from_obj(field, obj)
    expanded = sigma_split(f, cfg["degree_bound"])
    factored = _sigma_factored(f)
    out = {
        "field": field.to_obj(),
        "input": f.to_obj(),
        "sigma_expanded": expanded.to_pairs(),
        "sigma_factored": factored.to_obj() if factored is not None else None,
        "splits": factored is not None,
    }
    if args.json:
        sys.stdout.write(_emit(out))
    else:
        print(f"A       = {f}")
        print(f"sigma(A) = {expanded}")
        if factored is not None:
            print(f"        = {factored}")
        else:
            print("        (sigma does not split over this field)")
    return 0


def _cmd_matrix(args) -> int:
    field = make_field(args.p)
    sys_ = build_system(field, args.N)
    rank, kernel = rank_and_kernel(sys_.S)
    out = sys_.to_obj()
    out["rank"] = rank
    out["kernel"] = [[str(v) for v in vec] for vec in kernel]
    if args.json:
        sys.stdout.write(_emit(out))
    else:
        print(f"p = {field.p}, N = {args.N}, q = {field.q}")
        print("a-table (rows j, columns i):")
        for row in sys_.a:
            print("  " + " ".join(f"{v:>4}" for v in row))
        print("S:")
        for row in sys_.S:
            print("  " + " ".join(f"{int(v):>4}" for v in row))
        print(f"rank(S) = {rank}")
        print("kernel basis:")
        for vec in kernel:
            print("  (" + ", ".join(str(v) for v in vec) + ")")
    return 0


def _cmd_search(args) -> int:
    field = make_field(args.p)
    cfg = _load_config(args.config)
    budget = args.budget if args.budget is not None else cfg["budget"]
    results = search_perfect(
        field,
        n_max=args.n_max,
        uniform_N=args.uniform_N,
        parallelism=args.parallelism,
        prune=not args.no_prune,
        budget=budget,
        bound=cfg["degree_bound"],
    )
    counts, labelled = classify(results, field, bound=cfg["degree_bound"])
    report = search_report(
        field, args.n_max, args.uniform_N, not args.no_prune, budget, results, counts, labelled
    )
    payload = _emit(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    if args.json:
        sys.stdout.write(payload)
    else:
        print(f"candidates: {report['candidates']}, perfect: {report['perfect']}")
        for bucket, count in sorted(counts.items()):
            print(f"  {bucket}: {count}")
    if args.expect_classified and counts["other"] != 0:
        return 1
    return 0


def _cmd_verify_theorem(args) -> int:
    try:
        primes = [int(tok) for tok in args.primes.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --primes list: {args.primes!r}") from exc
    reports = []
    for p in primes:
        field = make_field(p)
        for N in divisors(field.q - 1):
            reports.append(verify_rank_claims(field, N))
    all_passed = all(r.passed for r in reports)
    if args.json:
        out = {"results": [r.to_obj() for r in reports], "all_passed": all_passed}
        sys.stdout.write(_emit(out))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"p={r.p:>2} N={r.N:>3} [{r.branch}] rank(S)={r.rank_S:>3} {status}")
            for c in r.checks:
                if not c.ok:
                    print(f"    FAILED {c.tag}: {c.detail}")
        print("all claims verified" if all_passed else "some claims FAILED")
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perfpoly",
        description="Splitting perfect polynomials over F_{p^2}: checks, sigma, "
        "exponent systems, searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--json", action="store_true", help="emit JSON on stdout")
        sp.add_argument("--config", help="JSON config file with degree_bound/budget")

    sp = sub.add_parser("check", help="perfection verdict and classification of a spec")
    sp.add_argument("--p", type=int, required=True, help="prime p of F_{p^2}")
    sp.add_argument("--spec", help="inline JSON spec: [{gamma:[i,j],N,n},...]")
    sp.add_argument("--spec-file", help="path to a JSON spec")
    add_common(sp)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("sigma", help="divisor sum of a split polynomial")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--factors", help='inline JSON: [{gamma:[i,j],exp:"7"},...]')
    sp.add_argument("--factors-file", help="path to JSON factors")
    add_common(sp)
    sp.set_defaults(func=_cmd_sigma)

    sp = sub.add_parser("matrix", help="exponent system S with exact rank and kernel")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--N", type=int, required=True, help="divisor of q-1")
    add_common(sp)
    sp.set_defaults(func=_cmd_matrix)

    sp = sub.add_parser("search", help="exhaustive perfect search with classification")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True, dest="n_max")
    sp.add_argument("--uniform-N", type=int, dest="uniform_N")
    sp.add_argument("--parallelism", type=int, default=1)
    sp.add_argument("--no-prune", action="store_true", help="disable coset pruning")
    sp.add_argument("--budget", type=int, help="candidate-count budget")
    sp.add_argument("--output", help="also write the JSON report to this path")
    sp.add_argument(
        "--expect-classified",
        action="store_true",
        help="exit 1 unless the 'other' bucket is empty",
    )
    add_common(sp)
    sp.set_defaults(func=_cmd_search)

    sp = sub.add_parser("verify-theorem", help="rank/kernel claims for all N | q-1")
    sp.add_argument("--primes", required=True, help="comma-separated primes, e.g. 2,3,5,7")
    add_common(sp)
    sp.set_defaults(func=_cmd_verify_theorem)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        error = {"error": str(exc)}
        if getattr(args, "json", False):
            sys.stdout.write(_emit(error))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
