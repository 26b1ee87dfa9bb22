"""Batch command-line surface: every check, construction, and report.

Subcommands: check, fseq, construct, sharpness, sequence, constants.
Exit codes: 0 = holds/true, 1 = fails, 2 = uncertain, 3 = input error.
Identical inputs, flags, and seed produce a byte-identical results payload;
timing is reported outside the payload.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import constructions, positivity, sequences
from .chebyshev import f_recurrence
from .errors import CNotBelowCkError, ParseError, TotalposError
from .matrices import (
    Matrix,
    matrix_to_csv,
    matrix_to_json_dict,
    parse_matrix,
)
from .numerics import (
    DEFAULT_TOL,
    RationalInterval,
    ck_enclosure,
    constant_c_tilde,
    constant_d,
    det_exact,
    det_float,
    format_scalar,
    sign_exact,
)
from .ratio import Membership, critical_ratio, generate_tp2c, is_member
from .positivity import Verdict

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNCERTAIN = 2
EXIT_INPUT = 3

_DEFAULT_CK_WIDTH = Fraction(1, 10 ** 14)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational value {text!r}") from None


def _parse_c_spec(text: str, width=_DEFAULT_CK_WIDTH):
    """A rational like '19/10' / '2.5', or 'ck:<k>' for a constant enclosure."""
    if text.startswith("ck:"):
        try:
            k = int(text[3:])
        except ValueError:
            raise ParseError(f"bad constant spec {text!r}") from None
        return ck_enclosure(k, width)
    return _parse_rational(text)


def _read_input(path: str) -> tuple[str, dict]:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return data.decode("utf-8"), {"path": str(path),
                                  "sha256": hashlib.sha256(data).hexdigest()}


def _load_matrix(path: str, force_float: bool) -> tuple[Matrix, dict, list]:
    text, digest = _read_input(path)
    report = parse_matrix(text)
    m = report.matrix.to_float() if force_float else report.matrix
    return m, digest, list(report.warnings)


def _membership_exit(member: Membership) -> int:
    return {Membership.YES: EXIT_OK, Membership.NO: EXIT_FAIL,
            Membership.UNCERTAIN: EXIT_UNCERTAIN}[member]


def _verdict_exit(verdict: Verdict) -> int:
    return {Verdict.HOLDS: EXIT_OK, Verdict.FAILS_HYPOTHESIS: EXIT_FAIL,
            Verdict.UNCERTAIN: EXIT_UNCERTAIN}[verdict]


def _emit_report(args, report: dict, started: float, human_lines: list[str]) -> None:
    report["timing_ms"] = round((time.monotonic() - started) * 1000.0, 3)
    payload = json.dumps(report, sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n")
    if args.json:
        print(payload)
    else:
        for line in human_lines:
            print(line)


def _base_report(args, command: str, digest: dict | None, backend: str,
                 seed: int | None) -> dict:
    return {
        "command": command,
        "argv": args._argv,
        "input": digest,
        "backend": backend,
        "seed": seed,
        "results": {},
    }


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_check(args) -> int:
    started = time.monotonic()
    m, digest, warnings = _load_matrix(args.matrix, args.float)
    backend = "exact" if m.is_exact and not args.float else "float"
    rep = _base_report(args, "check", digest, backend, None)
    if warnings:
        rep["warnings"] = warnings
    res: dict = {"criterion": args.criterion}
    lines: list[str] = []
    code = EXIT_OK

    if args.criterion in ("tp2", "stp2"):
        if args.c is None:
            raise ParseError(f"criterion {args.criterion} requires --c")
        c = _parse_c_spec(args.c)
        member = is_member(m, c, strict=(args.criterion == "stp2"), tol=args.tol)
        res["c"] = c.to_json() if isinstance(c, RationalInterval) else format_scalar(c)
        res["membership"] = member.value
        code = _membership_exit(member)
        lines.append(f"{args.criterion} at c={args.c}: {member.value}")
    elif args.criterion in ("tpk", "stp"):
        if args.criterion == "tpk":
            if args.k is None:
                raise ParseError("criterion tpk requires --k")
            ok, scan = positivity.is_tpk(m, args.k, tol=args.tol)
            name = f"tpk(k={args.k})"
        else:
            ok, scan = positivity.is_stp(m, tol=args.tol)
            name = "stp"
        res["holds"] = ok
        res["scan"] = scan.to_json()
        code = EXIT_OK if ok else EXIT_FAIL
        lines.append(f"{name}: {'holds' if ok else 'fails'} "
                     f"(minimum minor {format_scalar(scan.min_value)})")
    elif args.criterion == "theorem1":
        cert = positivity.theorem1_check(m, strict=args.strict, tol=args.tol)
        res["certificate"] = cert.to_json()
        code = _verdict_exit(cert.verdict)
        det = cert.details.get("det")
        extra = f", det = {format_scalar(det)}" if det is not None else ""
        lines.append(f"theorem1 ({'strict' if args.strict else 'non-strict'}): "
                     f"{cert.verdict.value}{extra}")
    elif args.criterion == "theorem3":
        cert = positivity.theorem3_check(m, tol=args.tol)
        res["certificate"] = cert.to_json()
        code = _verdict_exit(cert.verdict)
        lines.append(f"theorem3: {cert.verdict.value}")
    elif args.criterion == "theorem5":
        cert = positivity.theorem5_check(m, tol=args.tol)
        res["certificate"] = cert.to_json()
        code = _verdict_exit(cert.verdict)
        lines.append(f"theorem5: {cert.verdict.value}")
    elif args.criterion == "theorem6":
        if args.c is None:
            raise ParseError("criterion theorem6 requires --c")
        c = _parse_c_spec(args.c)
        try:
            bound, cert = positivity.theorem6_bound(m, c, tol=args.tol)
        except TotalposError as exc:
            res["error"] = {"type": type(exc).__name__, "message": str(exc)}
            rep["results"] = res
            _emit_report(args, rep, started, [f"theorem6: hypothesis unmet: {exc}"])
            return EXIT_FAIL
        res["certificate"] = cert.to_json()
        res["bound"] = format_scalar(bound)
        code = _verdict_exit(cert.verdict)
        lines.append(f"theorem6: det >= {format_scalar(bound)} "
                     f"(det = {format_scalar(cert.details['det'])})")
    else:
        raise ParseError(f"unknown criterion {args.criterion!r}")

    rep["results"] = res
    _emit_report(args, rep, started, lines)
    return code


def _cmd_fseq(args) -> int:
    started = time.monotonic()
    c = _parse_c_spec(args.c, width=args.ck_width)
    seq = f_recurrence(args.M, c)
    values = []
    for v in seq.values:
        if isinstance(v, RationalInterval):
            values.append(v.to_json())
        else:
            values.append(format_scalar(v))
    rep = _base_report(args, "fseq", None, "exact", None)
    rep["results"] = {"c": args.c, "M": args.M, "values": values}
    lines = [f"F_m at c = {args.c}:"]
    for mth, v in enumerate(seq.values):
        shown = f"[{format_scalar(v.lo)}, {format_scalar(v.hi)}]" \
            if isinstance(v, RationalInterval) else format_scalar(v)
        lines.append(f"  m={mth:3d}  {shown}")
    _emit_report(args, rep, started, lines)
    return EXIT_OK


def _write_matrix_file(path: str, m: Matrix) -> None:
    if path.endswith(".json"):
        Path(path).write_text(json.dumps(matrix_to_json_dict(m), indent=2) + "\n")
    else:
        Path(path).write_text(matrix_to_csv(m))


def _cmd_construct(args) -> int:
    started = time.monotonic()
    seed = args.seed if args.family == "tp2c" else None
    res: dict = {"family": args.family}
    lines: list[str] = []

    if args.family == "mn":
        m = constructions.toeplitz_mn(args.n, args.phi)
        closed = constructions.det_mn_closed(args.n, args.phi) if args.phi > 0 else None
        value, sc = det_float(m, args.tol)
        res.update({"n": args.n, "phi": args.phi, "det": value,
                    "det_sign": sc.to_json(), "det_closed_form": closed})
        lines.append(f"mn(n={args.n}, phi={args.phi}): det = {value!r} ({sc.verdict.value})")
    elif args.family == "tn":
        eps = constructions.epsilon_cascade(args.n, args.phi, Fraction(args.safety))
        m = constructions.toeplitz_tn(args.n, args.phi, eps)
        c_phi = 4.0 * math.cos(args.phi) ** 2
        member = is_member(m, Fraction(c_phi), strict=False, tol=args.tol)
        value, sc = det_float(m, args.tol)
        res.update({"n": args.n, "phi": args.phi, "safety": args.safety,
                    "epsilons": eps, "membership_at_4cos2phi": member.value,
                    "det": value, "det_sign": sc.to_json()})
        lines.append(f"tn(n={args.n}, phi={args.phi}): epsilons = {eps}")
        lines.append(f"  membership at 4cos^2(phi): {member.value}; det = {value!r}")
    elif args.family == "dn":
        p = _parse_rational(args.p)
        q = _parse_rational(args.q)
        m = constructions.hankel_dn(args.n, p, q)
        d = det_exact(m)
        member = is_member(m, min(p, q), strict=False)
        res.update({"n": args.n, "p": format_scalar(p), "q": format_scalar(q),
                    "det": format_scalar(d), "det_sign": sign_exact(d).to_json(),
                    "membership_at_min_pq": member.value})
        lines.append(f"dn(n={args.n}, p={format_scalar(p)}, q={format_scalar(q)}): "
                     f"det = {format_scalar(d)} ({sign_exact(d).verdict.value})")
    elif args.family == "tp2c":
        c = _parse_rational(args.c)
        m = generate_tp2c(args.k, c, seed=args.seed, spread=Fraction(args.spread),
                          strict=args.strict)
        report = critical_ratio(m)
        res.update({"k": args.k, "c": format_scalar(c), "seed": args.seed,
                    "spread": args.spread, "strict": args.strict,
                    "critical_ratio": format_scalar(report.critical_ratio)})
        lines.append(f"tp2c(k={args.k}, c={format_scalar(c)}, seed={args.seed}): "
                     f"critical ratio {format_scalar(report.critical_ratio)}")
    else:
        raise ParseError(f"unknown family {args.family!r}")

    if args.matrix_out:
        _write_matrix_file(args.matrix_out, m)
        res["matrix_file"] = args.matrix_out
        lines.append(f"  matrix written to {args.matrix_out}")
    else:
        res["matrix"] = matrix_to_json_dict(m)

    rep = _base_report(args, "construct", None, "exact" if m.is_exact else "float", seed)
    rep["results"] = res
    _emit_report(args, rep, started, lines)
    return EXIT_OK


def _cmd_sharpness(args) -> int:
    started = time.monotonic()
    c = _parse_rational(args.c)
    rep = _base_report(args, "sharpness", None, "exact", None)
    try:
        toep = constructions.toeplitz_witness(args.k, c, tol=args.tol)
        hank = constructions.hankel_witness(args.k, c, tol=args.tol)
    except CNotBelowCkError as exc:
        rep["results"] = {"error": {"type": "CNotBelowCk", "message": str(exc),
                                    "enclosure": exc.enclosure.to_json() if exc.enclosure else None,
                                    "uncertain": exc.uncertain}}
        _emit_report(args, rep, started,
                     [f"sharpness: {exc}",
                      f"  order-{args.k} constant enclosure: {exc.enclosure}"])
        return EXIT_UNCERTAIN if exc.uncertain else EXIT_FAIL
    rep["results"] = {"k": args.k, "c": format_scalar(c),
                      "toeplitz": toep.to_json(), "hankel": hank.to_json()}
    lines = [
        f"sharpness k={args.k}, c={format_scalar(c)}:",
        f"  toeplitz witness: det = {toep.det!r} ({toep.det_sign.verdict.value}), "
        f"critical ratio {toep.critical_ratio!r}",
        f"  hankel witness:   det = {format_scalar(hank.det)} "
        f"({hank.det_sign.verdict.value}), p = {hank.params['p']}, q = {hank.params['q']}",
    ]
    _emit_report(args, rep, started, lines)
    return EXIT_OK


def _cmd_sequence(args) -> int:
    started = time.monotonic()
    text, digest = _read_input(args.sequence)
    seq = sequences.parse_sequence(text)
    if args.float:
        seq = [float(x) for x in seq]
    backend = "exact" if all(not isinstance(x, float) for x in seq) else "float"
    rep = _base_report(args, "sequence", digest, backend, None)
    res: dict = {"check": args.check, "length": len(seq)}
    lines: list[str] = []
    code = EXIT_OK

    if args.check == "pfm":
        if args.m is None:
            raise ParseError("check pfm requires --m")
        n = args.N if args.N is not None else min(len(seq), sequences.DEFAULT_TRUNCATION)
        ok, scan = sequences.pfm_check(seq, args.m, n, tol=args.tol)
        res.update({"m": args.m, "truncation_N": n, "finite_truncation": True,
                    "holds": ok, "scan": scan.to_json()})
        code = EXIT_OK if ok else EXIT_FAIL
        lines.append(f"pfm(m={args.m}, N={n}) finite-truncation check: "
                     f"{'holds' if ok else 'fails'}")
    elif args.check == "hutchinson":
        ratio = sequences.hutchinson_ratio(seq)
        implied = ratio >= 4
        res.update({"ratio": format_scalar(ratio), "pf_infinity_implied": bool(implied)})
        code = EXIT_OK if implied else EXIT_FAIL
        lines.append(f"hutchinson ratio: {format_scalar(ratio)}"
                     + (" (total positivity implied)" if implied else ""))
    elif args.check == "corollary5":
        if args.m is None:
            raise ParseError("check corollary5 requires --m")
        cert = sequences.corollary5_check(seq, args.m, args.N, tol=args.tol)
        res["certificate"] = cert.to_json()
        code = _verdict_exit(cert.verdict)
        lines.append(f"corollary5(m={args.m}): {cert.verdict.value}")
    elif args.check == "moment":
        if args.k is None:
            raise ParseError("check moment requires --k")
        battery = sequences.hankel_moment_check(seq, args.k, tol=args.tol)
        rows = [[order, format_scalar(d), sc.verdict.value] for order, d, sc in battery]
        all_pos = all(sc.verdict.value == "Positive" for _, _, sc in battery)
        res.update({"max_order": args.k, "battery": rows, "all_positive": all_pos})
        code = EXIT_OK if all_pos else EXIT_FAIL
        lines.append(f"moment battery to order {args.k}: "
                     + ("all positive" if all_pos else "not all positive"))
        for order, d, verdict in rows:
            lines.append(f"  order {order}: det = {d} ({verdict})")
    elif args.check == "corollary3":
        if args.k is None:
            raise ParseError("check corollary3 requires --k")
        cert = sequences.corollary3_moment_check(seq, args.k, tol=args.tol)
        res["certificate"] = cert.to_json()
        code = _verdict_exit(cert.verdict)
        lines.append(f"corollary3(max_order={args.k}): {cert.verdict.value}")
    else:
        raise ParseError(f"unknown sequence check {args.check!r}")

    rep["results"] = res
    _emit_report(args, rep, started, lines)
    return code


def _cmd_constants(args) -> int:
    started = time.monotonic()
    width = Fraction(args.width)
    res: dict = {"width": args.width, "ck": {}}
    lines = [f"constant enclosures at width {args.width}:"]
    for k in range(args.kmin, args.kmax + 1):
        enc = ck_enclosure(k, width)
        res["ck"][str(k)] = enc.to_json()
        lines.append(f"  ck:{k:<3d} [{format_scalar(enc.lo)}, {format_scalar(enc.hi)}]"
                     f"  ~ {float(enc.mid):.12f}")
    ct = constant_c_tilde(width)
    d = constant_d(width)
    res["c_tilde"] = ct.to_json()
    res["d"] = d.to_json()
    lines.append(f"  c~    ~ {float(ct.mid):.12f}")
    lines.append(f"  d     ~ {float(d.mid):.12f}")
    rep = _base_report(args, "constants", None, "exact", None)
    rep["results"] = res
    _emit_report(args, rep, started, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="totalpos",
        description="Ratio criteria, certificates, and sharpness witnesses "
                    "for multiply positive matrices.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="print the JSON report to stdout")
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="relative sign tolerance for float backends")
        p.add_argument("--float", action="store_true",
                       help="force the float backend")

    p_check = sub.add_parser("check", help="run a matrix criterion")
    p_check.add_argument("matrix", help="matrix file (CSV or JSON)")
    p_check.add_argument("--criterion", required=True,
                         choices=["tp2", "stp2", "tpk", "stp",
                                  "theorem1", "theorem3", "theorem5", "theorem6"])
    p_check.add_argument("--c", help="rational constant or ck:<k>")
    p_check.add_argument("--k", type=int)
    p_check.add_argument("--strict", action="store_true")
    common(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_fseq = sub.add_parser("fseq", help="print the F_m(c) table")
    p_fseq.add_argument("--c", required=True, help="rational constant or ck:<k>")
    p_fseq.add_argument("--M", type=int, required=True)
    p_fseq.add_argument("--ck-width", type=Fraction, default=_DEFAULT_CK_WIDTH,
                        help="enclosure width used for ck:<k> constants")
    common(p_fseq)
    p_fseq.set_defaults(func=_cmd_fseq)

    p_con = sub.add_parser("construct", help="emit a matrix from a named family")
    p_con.add_argument("family", choices=["mn", "tn", "dn", "tp2c"])
    p_con.add_argument("--n", type=int)
    p_con.add_argument("--phi", type=float)
    p_con.add_argument("--safety", default="1/2")
    p_con.add_argument("--p")
    p_con.add_argument("--q")
    p_con.add_argument("--k", type=int)
    p_con.add_argument("--c")
    p_con.add_argument("--seed", type=int, default=0)
    p_con.add_argument("--spread", default="1")
    p_con.add_argument("--strict", action="store_true")
    p_con.add_argument("--matrix-out", help="write the matrix to this CSV/JSON path")
    common(p_con)
    p_con.set_defaults(func=_cmd_construct)

    p_sharp = sub.add_parser("sharpness", help="emit both witness families")
    p_sharp.add_argument("--k", type=int, required=True)
    p_sharp.add_argument("--c", required=True)
    common(p_sharp)
    p_sharp.set_defaults(func=_cmd_sharpness)

    p_seq = sub.add_parser("sequence", help="run a sequence check")
    p_seq.add_argument("sequence", help="sequence file (one-line CSV or JSON list)")
    p_seq.add_argument("--check", required=True,
                       choices=["pfm", "hutchinson", "corollary5", "moment", "corollary3"])
    p_seq.add_argument("--m", type=int)
    p_seq.add_argument("--N", type=int)
    p_seq.add_argument("--k", type=int)
    common(p_seq)
    p_seq.set_defaults(func=_cmd_sequence)

    p_const = sub.add_parser("constants", help="print certified constant enclosures")
    p_const.add_argument("--width", default="1/1000000000000")
    p_const.add_argument("--kmin", type=int, default=2)
    p_const.add_argument("--kmax", type=int, default=10)
    common(p_const)
    p_const.set_defaults(func=_cmd_constants)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    args._argv = argv
    try:
        return args.func(args)
    except ParseError as exc:
        print(json.dumps({"error": {"type": "ParseError", "message": str(exc)}}),
              file=sys.stderr)
        return EXIT_INPUT
    except TotalposError as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}),
              file=sys.stderr)
        return EXIT_INPUT


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
