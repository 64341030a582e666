"""Command-line front end.

    seqcm classify --input FILE --module NAME
    seqcm hilbert  --input FILE --module NAME --sop NAME
    seqcm lambda   --input FILE --module NAME --i K [--sampler random|lattice|explicit]
    seqcm repro    ex1|lemmas|bounds

Without ``--input`` the module name refers to a built-in example
(``seqcm classify --module square``).  Exit codes: 0 success, 1 failed
check, 2 unreadable or invalid session, 3 guard violation or a computation
that did not settle within the configured caps.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from math import comb

from .corpus import BY_NAME, module_from_session, sop_from_session
from .filtration import (
    adjusted_upper_bound,
    classify,
    coefficient_bound,
    dimension_filtration,
    nonnegativity_threshold,
)
from .groebner import INFINITE
from .hilbert import (
    DEFAULT_NCAP,
    DEFAULT_WINDOW,
    LambdaSample,
    NotMPrimary,
    Unstable,
    hilbert_report,
    lambda_sample,
    power_lattice,
    random_distinguished_family,
)
from .parameters import SamplerExhausted, is_dd_sequence_bounded, is_d_sequence, is_distinguished, is_sop
from .session import SessionError, parse_session

SCHEMA_VERSION = 1
MAX_DIM = 6

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3

log = logging.getLogger("seqcm")


class GuardViolation(Exception):
    pass


# ---------------------------------------------------------------- loading


_FIELD_RE = re.compile(r"(\bring\s+\w+\s*=\s*)(QQ|GF\s*\(\s*\d+\s*\))")


def _field_text(spec: str) -> str:
    if spec == "QQ":
        return "QQ"
    m = re.fullmatch(r"GF:(\d+)", spec)
    if not m:
        raise GuardViolation(f"field must be QQ or GF:p, got {spec!r}")
    return f"GF({m.group(1)})"


def load_session(args):
    """(session, module name) from --input or the built-in examples."""
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SessionError(f"cannot read {args.input}: {exc.strerror}") from exc
        module = args.module
    else:
        if args.module not in BY_NAME:
            raise SessionError(f"no built-in example {args.module!r}; known: {', '.join(BY_NAME)}")
        text = BY_NAME[args.module].text
        module = "M"
    if args.field:
        text, n = _FIELD_RE.subn(lambda m: m.group(1) + _field_text(args.field), text, count=1)
        if not n:
            raise SessionError("no ring declaration to override")
    s = parse_session(text)
    if s.ring is None:
        raise SessionError("the session declares no ring")
    if module is None:
        names = list(s.modules)
        if len(names) != 1:
            raise SessionError("--module is required when the session declares several modules")
        module = names[0]
    return s, module


def _guard(args, M):
    for flag in ("ncap", "window", "bexp", "count"):
        v = getattr(args, flag, None)
        if v is not None and v < 1:
            raise GuardViolation(f"--{flag} must be positive")
    if M.dim > MAX_DIM:
        raise GuardViolation(f"dimension {M.dim} exceeds {MAX_DIM}; the bound formulas are not evaluated")


# ---------------------------------------------------------------- output


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _len_text(v) -> str:
    return "inf" if v == INFINITE else str(v)


def _emit(text: str):
    sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_classify(args) -> int:
    s, name = load_session(args)
    M = module_from_session(s, name)
    _guard(args, M)
    rep = classify(M)
    if args.format == "json":
        out = {"schema_version": SCHEMA_VERSION, "kind": "FiltrationReport", "module": name}
        out.update(rep.as_dict())
        _emit(dump_json(out))
    elif args.format == "csv":
        rows = []
        for k, p in enumerate(rep.pieces):
            rows.append([k, p.dim, p.depth, int(p.is_cm), int(p.is_gcm),
                         ";".join(_len_text(v) for v in p.lc_lengths), rep.I_pieces[k]])
        _emit(dump_csv(["piece", "dim", "depth", "cm", "gcm", "lc_lengths", "I"], rows))
    else:
        lines = [f"module {name}: verdict {rep.verdict}",
                 f"dims {rep.filtration.dims}  t = {rep.t}  length(W) = {rep.W_length}"]
        lines.append(f"{'piece':>5} {'dim':>4} {'depth':>6}  H^j lengths (j < dim)")
        for k, p in enumerate(rep.pieces):
            lc = ", ".join(_len_text(v) for v in p.lc_lengths)
            lines.append(f"{k:>5} {p.dim:>4} {str(p.depth):>6}  [{lc}]")
        lines.append(f"I(F,M) = {rep.I_total}  C = {rep.C_bound}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _bounds(M, rep_c, d, nmax: int) -> dict:
    D = rep_c.filtration
    I_total, C = rep_c.I_total, rep_c.C_bound
    I_top = rep_c.I_pieces[0] if rep_c.I_pieces else 0
    return {
        "I": I_total,
        "C": C,
        "coefficient_bounds": [coefficient_bound(i, d, I_total, I_top, C) for i in range(1, d + 1)],
        "upper_bound": [adjusted_upper_bound(D, n, rep_c.W_length) for n in range(nmax + 1)],
        "nonnegativity_threshold": nonnegativity_threshold(C, d, I_total),
    }


def cmd_hilbert(args) -> int:
    s, name = load_session(args)
    M = module_from_session(s, name)
    _guard(args, M)
    if not args.sop:
        raise SessionError("--sop is required")
    xs = sop_from_session(s, args.sop[0])
    rep = hilbert_report(M, xs, window=args.window, ncap=args.ncap, name=name)
    if rep.flags.get("sop"):
        rep.flags["d_sequence"] = is_d_sequence(xs, M)
        rep.flags[f"dd_sequence_up_to_{args.bexp}"] = is_dd_sequence_bounded(xs, M, args.bexp)
    c = classify(M)
    if c.is_sequentially_gcm and rep.dim >= 1:
        rep.bounds = _bounds(M, c, rep.dim, len(rep.values) - 1)
    if args.format == "json":
        out = {"schema_version": SCHEMA_VERSION, "kind": "HilbertReport"}
        out.update(rep.as_dict())
        out["sop_name"] = args.sop[0]
        _emit(dump_json(out))
    elif args.format == "csv":
        rows = [[n, v, h, p] for n, (v, h, p) in enumerate(zip(rep.values, rep.h_ad, rep.p_ad))]
        _emit(dump_csv(["n", "length", "H_ad", "P_ad"], rows))
    else:
        lines = [
            f"module {name}, q = ({', '.join(rep.q)}), d = {rep.dim}",
            f"e    = {list(rep.e)}",
            f"adeg = {rep.adeg}",
            f"a    = {list(rep.a)}",
            f"certified from n = {rep.window_start} with window {rep.window}",
            "flags " + ", ".join(f"{k}={v}" for k, v in rep.flags.items()),
        ]
        if rep.bounds:
            b = rep.bounds
            lines.append(f"I(F,M) = {b['I']}  C = {b['C']}  nonnegativity from n = {b['nonnegativity_threshold']}")
            lines.append(f"coefficient bounds {b['coefficient_bounds']}")
        lines.append(f"{'n':>4} {'length':>10} {'H_ad':>8} {'P_ad':>8}")
        for n, (v, h, p) in enumerate(zip(rep.values, rep.h_ad, rep.p_ad)):
            lines.append(f"{n:>4} {v:>10} {h:>8} {p:>8}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_lambda(args) -> int:
    s, name = load_session(args)
    M = module_from_session(s, name)
    _guard(args, M)
    if args.i is None:
        raise SessionError("--i is required")
    if not 1 <= args.i <= M.dim:
        raise GuardViolation(f"--i must lie in 1..{M.dim}")
    sampler = args.sampler or ("explicit" if args.sop else "random")
    if sampler == "random":
        sops = random_distinguished_family(M, args.count, seed=args.seed)
    elif sampler == "explicit":
        if not args.sop:
            raise SessionError("the explicit sampler needs at least one --sop")
        sops = [sop_from_session(s, n) for n in args.sop]
    else:
        if not args.sop or len(args.sop) != 1:
            raise SessionError("the lattice sampler needs exactly one --sop")
        base = sop_from_session(s, args.sop[0])
        D = dimension_filtration(M)
        sops = [ys for ys in power_lattice(base, args.bexp)
                if args.allow_non_distinguished or (is_sop(ys, M) and is_distinguished(ys, M, D))]
    sample = lambda_sample(M, args.i, sops, args.allow_non_distinguished, args.window, args.ncap)
    _emit_lambda(args, name, sampler, sample)
    return EXIT_OK


def _emit_lambda(args, name: str, sampler: str, sample: LambdaSample):
    if args.format == "json":
        out = {"schema_version": SCHEMA_VERSION, "kind": "LambdaSample", "module": name,
               "sampler": sampler, "seed": args.seed}
        out.update(sample.as_dict())
        _emit(dump_json(out))
    elif args.format == "csv":
        rows = [["(" + ", ".join(e["q"]) + ")", e["a"], e["alt"], int(e["distinguished"])] for e in sample.entries]
        _emit(dump_csv(["q", "a", "alt", "distinguished"], rows))
    else:
        lines = [f"module {name}, i = {sample.index}, sampler {sampler}"]
        for e in sample.entries:
            mark = "" if e["distinguished"] else "  (not distinguished)"
            lines.append(f"  a_{sample.index} = {e['a']:>6}   q = ({', '.join(e['q'])}){mark}")
        lines.append(f"summary {sample.summary()}")
        lines.append(f"note: {sample.caveat}")
        _emit("\n".join(lines) + "\n")


def cmd_repro(args) -> int:
    from .repro import TARGETS, ex1_table, run_target

    if args.target not in TARGETS:
        raise SessionError(f"unknown target {args.target!r}; choose from {', '.join(TARGETS)}")
    checks = run_target(args.target)
    ok = all(c.passed for c in checks)
    if args.format == "json":
        _emit(dump_json({"schema_version": SCHEMA_VERSION, "kind": "Repro", "target": args.target,
                         "passed": ok, "checks": [c.as_dict() for c in checks]}))
    else:
        lines = []
        if args.target == "ex1":
            lines.append(f"{'m':>3} {'n':>3} {'H_ad':>8} {'-m^2(n+1)':>10}")
            for m, n, got, want in ex1_table():
                lines.append(f"{m:>3} {n:>3} {got:>8} {want:>10}  {'ok' if got == want else 'MISMATCH'}")
        for c in checks:
            good = sum(1 for r in c.rows if r[1])
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({good}/{len(c.rows)} rows, {len(c.skipped)} skipped)")
            for label, _, detail in c.failures:
                lines.append(f"      failed: {label} {detail}")
            for label, reason in c.skipped:
                lines.append(f"      skipped: {label}: {reason}")
        lines.append("PASS" if ok else "FAIL")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="session file")
    common.add_argument("--module", help="module name (a built-in example without --input)")
    common.add_argument("--sop", action="append", help="parameter system name (repeatable for lambda)")
    common.add_argument("--i", type=int, help="coefficient index for lambda")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--ncap", type=int, default=DEFAULT_NCAP)
    common.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    common.add_argument("--bexp", type=int, default=3, help="exponent bound for dd-sequence checks and lattices")
    common.add_argument("--field", help="override the coefficient field: QQ or GF:p")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="seqcm", description="Dimension filtrations and adjusted Hilbert coefficients.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="dimension filtration and verdict")
    sub.add_parser("hilbert", parents=[common], help="Hilbert-Samuel and adjusted coefficients")
    lam = sub.add_parser("lambda", parents=[common], help="sample adjusted coefficients over parameter ideals")
    lam.add_argument("--sampler", choices=("random", "lattice", "explicit"))
    lam.add_argument("--count", type=int, default=10)
    lam.add_argument("--allow-non-distinguished", action="store_true")
    rep = sub.add_parser("repro", parents=[common], help="run the built-in checks")
    rep.add_argument("target", help="ex1, lemmas or bounds")
    return p


COMMANDS = {"classify": cmd_classify, "hilbert": cmd_hilbert, "lambda": cmd_lambda, "repro": cmd_repro}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except SessionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardViolation as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except Unstable as exc:
        print(f"unstable: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (NotMPrimary, SamplerExhausted, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
