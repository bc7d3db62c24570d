"""``circdet`` command line: one subcommand per library entry point.

Exit status is 0 on success, 1 on a domain error (bad polynomial, wrong
residue class, failed check) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import get_context
from pathlib import Path

from . import constructions as cons
from .cyclonorm import UNIT_TABLES, format_unit_report, norm_d, norm_profile, verify_unit_table
from .goodbad import classify_element, classify_prime
from .membership import MembershipVerdict, decide_s15, decide_sp, is_probable_prime
from .numberfield import find_prime_element, splitting_data
from .polyring import ParseError, cyclotomic, parse_poly, render_poly
from .search import DEFAULT_BUDGET, SearchSummary, consistency_report, default_workers, iter_records


class DomainError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=None if args.compact else 2))
    else:
        print(text)


def _poly(text: str):
    try:
        return parse_poly(text)
    except ParseError as exc:
        raise DomainError(f"--poly: {exc}") from None


def _profile_text(profile) -> str:
    lines = [f"M_{profile.n} = {profile.total}"]
    lines += [f"N_{d} = {v}" for d, v in profile.norms.items()]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# handlers


def cmd_eval(args) -> int:
    F = _poly(args.poly)
    profile = norm_profile(F, args.n, args.method)
    _emit(args, {"poly": render_poly(F), **profile.as_dict()}, _profile_text(profile))
    return 0


def cmd_norms(args) -> int:
    F = _poly(args.poly)
    value = norm_d(F, args.d, args.method)
    _emit(args, {"poly": render_poly(F), "d": args.d, "norm": value}, f"N_{args.d} = {value}")
    return 0


def cmd_cyclotomic(args) -> int:
    P = cyclotomic(args.d)
    _emit(args, {"d": args.d, "poly": render_poly(P), "coeffs": list(P.coeffs)}, f"Phi_{args.d} = {render_poly(P)}")
    return 0


def _decide(n: int, v: int) -> MembershipVerdict:
    if n == 15:
        return decide_s15(v)
    if n >= 3 and is_probable_prime(n):
        return decide_sp(v, n)
    if n % 2 == 0 and n >= 6 and is_probable_prime(n // 2):
        return decide_sp(v, n // 2, doubled=True)
    raise DomainError(f"membership is decided only for n = 15, p or 2p (odd prime p); got n = {n}")


def _verdict_text(v: MembershipVerdict) -> str:
    word = {True: "member", False: "non-member", None: "undecided"}[v.member]
    lines = [f"{v.value} in S_{v.n}: {word} ({v.reason}{', ' + v.detail if v.detail else ''})"]
    if v.witness is not None:
        lines.append(f"witness: {render_poly(v.witness.poly)}")
        lines.append(_profile_text(v.witness.profile))
    return "\n".join(lines)


def _family_witness(args) -> cons.WitnessCertificate:
    fam = args.family
    need = {"p3m": ("p", "m"), "3power": ("p", "m"), "kn2": ("k", "n"), "3sq": ("p",), "5sq": ("p",),
            "fixed": ("name",), "shift": ("poly", "n", "k", "lam")}[fam]
    missing = [f"--{k}" for k in need if getattr(args, k) is None]
    if missing:
        raise DomainError(f"family {fam} needs {', '.join(missing)}")
    if fam == "p3m":
        return cons.witness_p3m(args.p, args.m)
    if fam == "3power":
        return cons.witness_3power(args.p, args.m, args.variant)
    if fam == "kn2":
        return cons.kn2_witness(args.k, args.n)
    if fam in ("3sq", "5sq"):
        return cons.witness_3sq_5sq(args.p)[0 if fam == "3sq" else 1]
    if fam == "fixed":
        return cons.fixed_witness(args.name)
    return cons.shift_construction(_poly(args.poly), args.n, args.k, args.lam)


def cmd_witness(args) -> int:
    if args.family:
        cert = _family_witness(args)
    else:
        if args.value is None or args.n is None:
            raise DomainError("give --family, or --n with --value")
        verdict = _decide(args.n, args.value)
        if not verdict.member:
            _emit(args, {"found": False, **verdict.as_dict()}, _verdict_text(verdict))
            return 1
        cert = verdict.witness
    text = f"{cert.label}\nwitness: {render_poly(cert.poly)}\n{_profile_text(cert.profile)}"
    _emit(args, {"found": True, **cert.as_dict()}, text)
    return 0


def _classify_one(p: int) -> tuple[int, str]:
    return p, classify_prime(p)


def cmd_classify(args) -> int:
    if args.poly is not None:
        tag, cf = classify_element(_poly(args.poly), args.form)
        text = f"{tag}\ncanonical form: {render_poly(cf.polynomial())}\nunit exponents: {cf.unit_ledger}"
        _emit(args, {"poly": args.poly, "tag": tag, "canonical": cf.as_dict()}, text)
        return 0
    if args.prime is not None:
        p = args.prime
        if not is_probable_prime(p) or p % 15 != 1:
            raise DomainError(f"--prime {p} must be a prime congruent to 1 mod 15")
        tag = classify_prime(p)
        _emit(args, {"prime": p, "tag": tag}, tag)
        return 0
    if args.upto is None:
        raise DomainError("give --prime, --poly or --upto")
    primes = [p for p in range(31, args.upto + 1, 30) if is_probable_prime(p)]
    workers = args.workers or default_workers()
    if workers > 1:
        with get_context("spawn").Pool(workers) as pool:
            tags = dict(pool.map(_classify_one, primes))
    else:
        tags = dict(map(_classify_one, primes))
    rows = "\n".join(f"{p}\t{t}" for p, t in tags.items())
    payload = {"upto": args.upto, "tags": {str(p): t for p, t in tags.items()}}
    if args.out:
        from .plotting import tag_chart

        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text("p\ttag\n" + rows + "\n")
        payload["figure"] = str(tag_chart(tags, out.with_suffix(".png")))
        payload["table"] = str(out)
    _emit(args, payload, rows)
    return 0


def cmd_split_prime(args) -> int:
    p = args.prime
    if not is_probable_prime(p):
        raise DomainError(f"--prime {p} is not prime")
    try:
        data = splitting_data(p, args.n)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    payload = data.as_dict()
    text = f"p = {p} splits into {data.count} primes of norm {p}^{data.f} in Z[w_{args.n}]"
    if args.element:
        xi = find_prime_element(p, args.n)
        payload["element"] = render_poly(xi.to_poly())
        text += f"\nprime element: {payload['element']} (norm {xi.norm()})"
    _emit(args, payload, text)
    return 0


def cmd_member(args) -> int:
    verdict = _decide(args.n, args.value)
    _emit(args, verdict.as_dict(), _verdict_text(verdict))
    return 0


def cmd_search(args) -> int:
    summary = SearchSummary(args.n, args.bound)
    records = iter_records(args.n, args.bound, args.budget, args.workers, summary=summary)
    out = Path(args.out) if args.out else None
    if out:
        out.parent.mkdir(parents=True, exist_ok=True)
        sink = out.open("w")

        def tee(rs):
            for r in rs:
                sink.write(r.to_json() + "\n")
                yield r

        records = tee(records)
    try:
        report = consistency_report(records, args.n)
    finally:
        if out:
            sink.close()
    payload = {"summary": summary.as_dict(), "report": report.as_dict()}
    if out:
        from .plotting import value_histogram

        payload["records"] = str(out)
        payload["figure"] = str(value_histogram(report.value_counts, args.n, out.with_suffix(".png")))
        summary_path = out.with_suffix(".summary.json")
        summary_path.write_text(json.dumps(payload, indent=2) + "\n")
        payload["summary_file"] = str(summary_path)
    r = payload["report"]
    text = (
        f"n = {args.n}, bound = {args.bound}: {summary.records} canonical vectors"
        f"{' (partial: budget reached)' if summary.partial else ''}, {r['distinct_values']} distinct values\n"
        f"divisibility violations: {len(report.divisibility_violations)}\n"
        f"rejected by membership: {len(report.rejected)}\n"
        f"forbidden values: {len(report.forbidden_hits)}\n"
        f"oracle mismatches: {len(report.oracle_mismatches)}"
    )
    _emit(args, payload, text)
    return 0 if report.ok else 1


def cmd_verify_units(args) -> int:
    ns = [args.n] if args.n else list(UNIT_TABLES)
    tables, texts, ok = {}, [], True
    for n in ns:
        try:
            rows = verify_unit_table(n)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        tables[str(n)] = rows
        ok &= all(r["ok"] for r in rows)
        texts.append(format_unit_report(n, rows))
    _emit(args, {"ok": ok, "tables": tables}, "\n\n".join(texts))
    return 0 if ok else 1


def cmd_verify_paper(args) -> int:
    from .acceptance import CHECKS, run_all

    numbers = None
    if args.only:
        try:
            numbers = sorted({int(k) for k in args.only.split(",")})
        except ValueError:
            raise DomainError("--only takes comma-separated criterion numbers") from None
        if not set(numbers) <= set(CHECKS):
            raise DomainError(f"--only: criteria are numbered 1 to {len(CHECKS)}")
    results = run_all(numbers, args.workers, progress=None if args.json else print)
    ok = all(r.ok for r in results)
    if args.json:
        _emit(args, {"ok": ok, "criteria": [r.as_dict() for r in results]}, "")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--compact", action="store_true", help="single-line JSON")

    parser = argparse.ArgumentParser(prog="circdet", description="Exact integer circulant determinants.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(handler=handler)
        return p

    methods = ("auto", "matrix", "resultant")

    p = add("eval", cmd_eval, "M_n(F) with its norm profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--method", choices=methods, default="auto")

    p = add("norms", cmd_norms, "a single cyclotomic norm N_d(F)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--method", choices=methods, default="auto")

    p = add("cyclotomic", cmd_cyclotomic, "the d-th cyclotomic polynomial")
    p.add_argument("--d", type=int, required=True)

    p = add("witness", cmd_witness, "a certified polynomial attaining a value")
    p.add_argument("--n", type=int)
    p.add_argument("--value", type=int)
    p.add_argument("--family", choices=("p3m", "3power", "kn2", "3sq", "5sq", "fixed", "shift"))
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--lam", type=int)
    p.add_argument("--poly")
    p.add_argument("--name", help="fixed witness name")
    p.add_argument("--variant", choices=("F3", "F4"), default="F3")

    p = add("classify", cmd_classify, "good/bad tag of a prime, an element, or all primes up to a bound")
    p.add_argument("--prime", type=int)
    p.add_argument("--poly")
    p.add_argument("--form", choices=("first", "second"), default="first")
    p.add_argument("--upto", type=int)
    p.add_argument("--out", help="table path for --upto; a chart is written next to it")
    p.add_argument("--workers", type=int)

    p = add("split-prime", cmd_split_prime, "how p splits in Z[w_n]")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--n", type=int, default=15)
    p.add_argument("--element", action="store_true", help="also find an element of norm p^f")

    p = add("member", cmd_member, "membership of a value in S_n for n = 15, p or 2p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--value", type=int, required=True)

    p = add("search", cmd_search, "exhaustive enumeration over a coefficient box, reconciled with theory")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--out", help="NDJSON record path; summary and histogram are written next to it")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int)

    p = add("verify-units", cmd_verify_units, "check the tabulated unit generators")
    p.add_argument("--n", type=int)

    p = add("verify-paper", cmd_verify_paper, "run all reproduction checks")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--workers", type=int)
    return parser


# options whose values may legitimately start with "-"
_SIGNED_OPTIONS = ("--poly", "--value", "--m", "--k", "--lam")


def _bind_signed(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_OPTIONS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_bind_signed(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.handler(args)
    except (DomainError, ValueError, ArithmeticError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        if getattr(args, "json", False):
            print(json.dumps({"error": str(msg), "type": type(exc).__name__}))
        else:
            print(f"circdet {args.command}: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
