"""Command-line front end emitting exact analysis results as JSON.

Subcommands: seq, rk, digits, language, decide, kernel, fk, dfa, analyze.
stdout carries data; stderr carries diagnostics.  Exit codes separate
operational trouble from mathematical outcomes: 0 means the run
completed (whatever the verdict says), 1 means the invocation was
unusable (bad flags, bad scenario file, unparseable numbers, oversized
scopes), 2 means an internal consistency check tripped, which is a bug
and should be reported.

Scenario files (--scenario file.json) provide the same fields as flags;
an explicitly passed flag wins over the file.  `analyze --batch list.json`
runs a JSON array of scenarios back to back.  All JSON output is
canonical (sorted keys, two-space indent), so identical inputs produce
byte-identical reports apart from the timings block.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .automata import kernel_explore
from .exact import ExactReal, ParseError
from .jumpdigits import (
    PeriodicityVerdict,
    classify_range,
    detect_period,
    r_stream,
)
from .language import (
    DigitSource,
    ExplicitDigitSource,
    PeriodicDigitSource,
    RkDigitSource,
    ThueMorseBlockSource,
    decide_regularity,
    verify_length_claim,
    words,
)
from .levelcounts import align_m0, d_seq, decide_d_periodicity, f_counts
from .numeration import digit_stream, parse_word, word_str
from .sequences import (
    ConsistencyError,
    FloorLogInstance,
    NormalizedInstance,
    jump_positions,
    normalize,
    u_term,
    v_indicator,
)

SCHEMA = "floorlog-report/1"
DEFAULT_KMAX = 200
DEFAULT_NMAX = 10**5
DEFAULT_WINDOW = 10**3
_KERNEL_SCOPE_CAP = 1 << 24


class UsageError(Exception):
    """Invocation-level problem: wrong flags, bad input text, huge scopes."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage problems; this tool reserves
    # 2 for internal consistency failures, so usage errors become 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _canonical(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _print(payload) -> None:
    print(_canonical(payload))


# ---------------------------------------------------------------------------
# scenario plumbing
# ---------------------------------------------------------------------------


def _load_scenario_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read scenario file: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"scenario file is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise UsageError("scenario file must hold a JSON object")
    return data


def _merged(args, key, fallback=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    scenario = getattr(args, "scenario_data", None) or {}
    if key in scenario and scenario[key] is not None:
        return scenario[key]
    return fallback


def _parse_exact(text: str, what: str) -> ExactReal:
    try:
        return ExactReal.parse(str(text))
    except ParseError as exc:
        raise UsageError(f"cannot parse {what}: {exc}")


def _positive_int(value, what: str) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise UsageError(f"{what} must be an integer, got {value!r}")
    if out < 1:
        raise UsageError(f"{what} must be positive, got {out}")
    return out


def _resolve_triple(args) -> tuple[str, str, int]:
    alpha = _merged(args, "alpha")
    if alpha is None:
        raise UsageError("--alpha is required (flag or scenario file)")
    beta = _merged(args, "beta", "0")
    base = _merged(args, "base")
    if base is None:
        raise UsageError("--base is required (flag or scenario file)")
    base = _positive_int(base, "--base")
    if base < 2:
        raise UsageError("--base must be at least 2")
    return str(alpha), str(beta), base


def _normalized(args) -> NormalizedInstance:
    alpha_text, beta_text, base = _resolve_triple(args)
    alpha = _parse_exact(alpha_text, "--alpha")
    beta = _parse_exact(beta_text, "--beta")
    try:
        return normalize(FloorLogInstance(alpha, beta, base))
    except ValueError as exc:
        raise UsageError(str(exc))


def _digit_word(value, what: str) -> tuple[int, ...]:
    text = str(value)
    if text == "":
        return ()
    try:
        return parse_word(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse {what}: {exc}")


def _digit_source(args) -> tuple[DigitSource, int]:
    kind = _merged(args, "source", "rk")
    base = _merged(args, "base")
    if base is None:
        raise UsageError("--base is required (flag or scenario file)")
    base = _positive_int(base, "--base")
    if base < 2:
        raise UsageError("--base must be at least 2")
    try:
        if kind == "rk":
            return RkDigitSource(_normalized(args)), base
        if kind == "periodic":
            period = _merged(args, "period")
            if period is None:
                raise UsageError("--period is required for --source periodic")
            pre = _digit_word(_merged(args, "preperiod", ""), "--preperiod")
            per = _digit_word(period, "--period")
            return PeriodicDigitSource(pre, per), base
        if kind == "explicit":
            word = _merged(args, "word")
            if word is None:
                raise UsageError("--word is required for --source explicit")
            return ExplicitDigitSource(_digit_word(word, "--word")), base
        if kind == "tm-blocks":
            block_a = _merged(args, "block_a")
            block_b = _merged(args, "block_b")
            if block_a is None or block_b is None:
                raise UsageError(
                    "--block-a and --block-b are required for --source tm-blocks"
                )
            return (
                ThueMorseBlockSource(
                    _digit_word(block_a, "--block-a"),
                    _digit_word(block_b, "--block-b"),
                ),
                base,
            )
    except ValueError as exc:
        raise UsageError(str(exc))
    raise UsageError(f"unknown source kind {kind!r}")


# ---------------------------------------------------------------------------
# payload shaping
# ---------------------------------------------------------------------------


def _periodicity_payload(verdict: PeriodicityVerdict | None):
    if verdict is None:
        return None
    out = {"kind": verdict.kind, "certified": bool(verdict.certified)}
    if verdict.kind == "Periodic":
        out["preperiod"] = verdict.preperiod
        out["period"] = verdict.period
    if verdict.reason:
        out["reason"] = verdict.reason
    if verdict.window is not None:
        out["window"] = verdict.window
    cert = verdict.certificate
    if cert is not None:
        out["mod_cycle"] = {
            "modulus": cert.modulus,
            "preperiod": cert.preperiod,
            "period": cert.period,
            "head": list(cert.head),
            "cycle": list(cert.cycle),
            "integrality_hits": list(cert.integrality_hits),
        }
    return out


def _length_claim_payload(report):
    return {
        "stable_from": report.stable_from,
        "anomalies": [list(item) for item in report.anomalies],
        "checked_to": report.checked_to,
        "violation": report.violation,
    }


def _verdict_payload(verdict) -> dict:
    out = {
        "kind": verdict.kind,
        "patterns": [],
        "exceptions": [],
        "dfa_states": None,
        "certificate": _periodicity_payload(verdict.certificate),
    }
    if verdict.kind == "Regular":
        out["patterns"] = [
            {
                "v0": word_str(p.v0),
                "v1": word_str(p.v1),
                "v2": word_str(p.v2),
                "period": p.period,
                "residue": p.residue,
                "anchor": p.anchor,
                "constant": p.constant,
            }
            for p in verdict.patterns
        ]
        out["exceptions"] = [word_str(w) for w in verdict.exceptions]
        out["dfa_states"] = verdict.dfa.num_states
    elif verdict.kind == "Inconclusive":
        out["window"] = verdict.window
        evidence = {}
        for key, value in verdict.evidence.items():
            if key == "length_claim":
                evidence[key] = _length_claim_payload(value)
            elif key == "pattern_scan":
                evidence[key] = {str(p): list(hits) for p, hits in value.items()}
            else:
                evidence[key] = value
        out["evidence"] = evidence
    return out


def _alignment_payload(alignment):
    return {
        "m0": alignment.m0,
        "threshold": alignment.threshold,
        "checked_to": alignment.checked_to,
        "mismatches": list(alignment.mismatches),
        "also_valid": list(alignment.also_valid),
        "ok": alignment.ok,
        "note": alignment.note,
    }


def _kernel_payload(report):
    return {
        "base": report.base,
        "depth": report.depth,
        "prefix_len": report.prefix_len,
        "distinct_by_depth": list(report.distinct_by_depth),
        "closure": report.closure,
    }


def _kernel_report(norm: NormalizedInstance, depth: int, prefix_len: int):
    # the closure probe reads one level past depth, so cover that too
    scope = norm.base ** (depth + 1) * prefix_len
    if scope > _KERNEL_SCOPE_CAP:
        raise UsageError(
            f"kernel scope base**(depth+1) * prefix_len = {scope} exceeds "
            f"the cap {_KERNEL_SCOPE_CAP}; lower --depth or --prefix-len"
        )
    bitmap = v_indicator(norm, scope - 1)
    return kernel_explore(lambda n: bitmap[n], norm.base, depth, prefix_len)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_seq(args) -> int:
    alpha_text, beta_text, base = _resolve_triple(args)
    alpha = _parse_exact(alpha_text, "--alpha")
    beta = _parse_exact(beta_text, "--beta")
    start = _positive_int(_merged(args, "start", 1), "--from")
    stop = _positive_int(_merged(args, "stop", 10), "--to")
    if stop < start:
        raise UsageError("--to must not be below --from")
    try:
        values = [u_term(alpha, beta, base, n) for n in range(start, stop + 1)]
    except ValueError as exc:
        raise UsageError(str(exc))
    print(",".join(str(v) for v in values))
    return 0


def _cmd_rk(args) -> int:
    norm = _normalized(args)
    kmax = _positive_int(_merged(args, "kmax", DEFAULT_KMAX), "--kmax")
    records = classify_range(norm, kmax)
    _print(
        [
            {
                "k": rec.k,
                "r": rec.r,
                "case": rec.case_tag,
                "digit": rec.digit,
                "pk": rec.pk,
                "pk1": rec.pk1,
            }
            for rec in records
        ]
    )
    return 0


def _cmd_digits(args) -> int:
    norm = _normalized(args)
    count = _positive_int(_merged(args, "count", 32), "--count")
    inverse = ExactReal(1) / norm.alpha
    frac = inverse - inverse.__floor__()
    _print(
        {
            "alpha": str(norm.alpha),
            "base": norm.base,
            "value": "frac(1/alpha)",
            "digits": digit_stream(frac, norm.base, count),
        }
    )
    return 0


def _cmd_language(args) -> int:
    src, base = _digit_source(args)
    n_max = _positive_int(_merged(args, "nmax", 30), "--nmax")
    lw = words(src, base, n_max, allow_zero_start=True)
    payload = {
        "source": lw.source_label,
        "base": base,
        "n_top": lw.n_top,
        "words": lw.word_strs(),
    }
    if lw.n_top >= 1:
        report = verify_length_claim(lw)
        payload["length_stabilization_N"] = report.stable_from
        payload["length_claim"] = _length_claim_payload(report)
    _print(payload)
    return 0


def _cmd_decide(args) -> int:
    src, base = _digit_source(args)
    window = _positive_int(_merged(args, "window", DEFAULT_WINDOW), "--window")
    verdict = decide_regularity(src, base, window=window)
    _print(_verdict_payload(verdict))
    return 0


def _cmd_kernel(args) -> int:
    norm = _normalized(args)
    depth = _positive_int(_merged(args, "depth", 6), "--depth")
    prefix_len = _positive_int(_merged(args, "prefix_len", 64), "--prefix-len")
    _print(_kernel_payload(_kernel_report(norm, depth, prefix_len)))
    return 0


def _cmd_fk(args) -> int:
    norm = _normalized(args)
    kmax = _positive_int(_merged(args, "kmax", 60), "--kmax")
    lc = f_counts(norm, kmax)
    jumps = jump_positions(norm, kmax + 12)
    alignment = align_m0(lc, jumps)
    payload = {
        "k_min": lc.k_min,
        "k_max": lc.k_max,
        "f": [[k, lc.at(k)] for k in range(lc.k_min, lc.k_max + 1)],
        "alignment": _alignment_payload(alignment),
        "d_verdict": _periodicity_payload(decide_d_periodicity(norm, kmax)),
    }
    if alignment.ok:
        slice_ = d_seq(lc)
        payload["d_start"] = slice_.start
        payload["d"] = list(slice_.values)
    _print(payload)
    return 0


def _cmd_dfa(args) -> int:
    norm = _normalized(args)
    window = _positive_int(_merged(args, "window", DEFAULT_WINDOW), "--window")
    verdict = decide_regularity(RkDigitSource(norm), norm.base, window=window)
    if args.dot:
        if verdict.kind != "Regular" or verdict.dfa is None:
            print(
                f"no DFA: verdict is {verdict.kind}; emitting verdict JSON",
                file=sys.stderr,
            )
            _print({"kind": verdict.kind})
            return 0
        print(verdict.dfa.to_dot())
        return 0
    payload = _verdict_payload(verdict)
    if verdict.kind == "Regular":
        payload["table"] = verdict.dfa.to_table()
    _print(payload)
    return 0


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------


def _check_links(rational: bool, r_verdict, language_verdict, d_verdict) -> None:
    """The chain's verdict links must agree wherever they commit.

    Inconclusive links are allowed (finite windows), but a certified
    verdict on the wrong side of the rationality dichotomy is a bug, not
    a mathematical outcome.
    """
    if r_verdict.certified:
        if r_verdict.kind == "Periodic" and not rational:
            raise ConsistencyError("r certified periodic with irrational slope")
        if r_verdict.kind == "AperiodicByTheorem" and rational:
            raise ConsistencyError("r certified aperiodic with rational slope")
    if language_verdict.kind == "Regular" and not rational:
        raise ConsistencyError("language Regular with irrational slope")
    if language_verdict.kind == "NonRegular" and rational:
        raise ConsistencyError("language NonRegular with rational slope")
    if d_verdict.certified:
        if d_verdict.kind == "Periodic" and not rational:
            raise ConsistencyError("d certified periodic with irrational slope")
        if d_verdict.kind == "AperiodicByTheorem" and rational:
            raise ConsistencyError("d certified aperiodic with rational slope")


def run_analyze(scenario: dict) -> dict:
    """Execute the whole decision chain for one scenario dict.

    Every link (digit periodicity, language regularity, level-count
    difference periodicity, the headline regular-iff-rational verdict)
    is recorded separately so a failure localizes to its link.
    """
    if "alpha" not in scenario:
        raise UsageError("scenario needs an 'alpha'")
    if "base" not in scenario:
        raise UsageError("scenario needs a 'base'")
    alpha_text = str(scenario["alpha"])
    beta_text = str(scenario.get("beta", "0"))
    base = _positive_int(scenario["base"], "base")
    if base < 2:
        raise UsageError("base must be at least 2")
    kmax = _positive_int(scenario.get("kmax", DEFAULT_KMAX), "kmax")
    nmax = _positive_int(scenario.get("nmax", DEFAULT_NMAX), "nmax")
    window = _positive_int(scenario.get("window", DEFAULT_WINDOW), "window")
    kernel_depth = _positive_int(scenario.get("kernel_depth", 4), "kernel_depth")
    kernel_prefix = _positive_int(
        scenario.get("kernel_prefix", 32), "kernel_prefix"
    )

    timings: dict[str, float] = {}
    clock = time.perf_counter

    t0 = clock()
    alpha = _parse_exact(alpha_text, "alpha")
    beta = _parse_exact(beta_text, "beta")
    try:
        norm = normalize(FloorLogInstance(alpha, beta, base))
    except ValueError as exc:
        raise UsageError(str(exc))
    timings["normalize"] = clock() - t0

    t0 = clock()
    r_head = r_stream(norm, min(kmax, 64))
    r_verdict = detect_period(norm, window)
    timings["r_periodicity"] = clock() - t0

    t0 = clock()
    language_verdict = decide_regularity(
        RkDigitSource(norm), base, window=window
    )
    timings["language"] = clock() - t0

    t0 = clock()
    kernel = _kernel_report(norm, kernel_depth, kernel_prefix)
    timings["kernel"] = clock() - t0

    t0 = clock()
    fk_top = min(kmax, 60)
    lc = f_counts(norm, fk_top)
    alignment = align_m0(lc, jump_positions(norm, fk_top + 12))
    d_verdict = decide_d_periodicity(norm, min(kmax, 400))
    timings["level_counts"] = clock() - t0

    rational = bool(norm.alpha.is_rational)
    _check_links(rational, r_verdict, language_verdict, d_verdict)

    return {
        "schema": SCHEMA,
        "version": __version__,
        "scenario": {
            "alpha": alpha_text,
            "beta": beta_text,
            "base": base,
            "kmax": kmax,
            "nmax": nmax,
            "window": window,
            "kernel_depth": kernel_depth,
            "kernel_prefix": kernel_prefix,
        },
        "normalization": {
            "alpha": str(norm.alpha),
            "beta": str(norm.beta),
            "base": norm.base,
            "index_shift": norm.index_shift,
            "value_offset": norm.value_offset,
            "identity_start": norm.identity_start,
        },
        "verdicts": {
            "r_periodicity": _periodicity_payload(r_verdict),
            "language_regularity": _verdict_payload(language_verdict),
            "d_periodicity": _periodicity_payload(d_verdict),
            "sequence_regularity": {
                "b_regular": rational,
                "reason": (
                    "slope is rational, so the digit recurrence is"
                    " ultimately periodic"
                    if rational
                    else "slope is an irrational quadratic surd"
                ),
            },
        },
        "evidence": {
            "r_head": list(r_head),
            "kernel": _kernel_payload(kernel),
            "level_counts": [[k, lc.at(k)] for k in range(lc.k_min, lc.k_max + 1)],
            "alignment": _alignment_payload(alignment),
        },
        "timings": timings,
    }


def _cmd_analyze(args) -> int:
    if args.batch:
        try:
            with open(args.batch, "r", encoding="utf-8") as fh:
                batch = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read batch file: {exc}")
        except json.JSONDecodeError as exc:
            raise UsageError(f"batch file is not valid JSON: {exc}")
        if not isinstance(batch, list):
            raise UsageError("batch file must hold a JSON array of scenarios")
        reports = []
        for i, scenario in enumerate(batch):
            if not isinstance(scenario, dict):
                raise UsageError(f"batch entry {i} is not a JSON object")
            reports.append(run_analyze(scenario))
        _print(reports)
        return 0
    scenario = dict(getattr(args, "scenario_data", None) or {})
    for key in (
        "alpha",
        "beta",
        "base",
        "kmax",
        "nmax",
        "window",
        "kernel_depth",
        "kernel_prefix",
    ):
        value = getattr(args, key, None)
        if value is not None:
            scenario[key] = value
    _print(run_analyze(scenario))
    return 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _add_instance_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--alpha", help="slope, e.g. 3/2 or sqrt(2) or 1+sqrt(2)")
    sub.add_argument("--beta", help="offset, default 0")
    sub.add_argument("--base", type=int, help="numeration base, >= 2")
    sub.add_argument(
        "--scenario", help="JSON file with default field values; flags win"
    )


def build_parser() -> _Parser:
    parser = _Parser(
        prog="floorlog",
        description="Exact regularity analysis of floor-log sequences.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    seq = subs.add_parser("seq", help="print u_n over an index range")
    _add_instance_flags(seq)
    seq.add_argument("--from", dest="start", type=int, help="first index, default 1")
    seq.add_argument("--to", dest="stop", type=int, help="last index, default 10")
    seq.set_defaults(handler=_cmd_seq)

    rk = subs.add_parser("rk", help="classified digit records as JSON")
    _add_instance_flags(rk)
    rk.add_argument("--kmax", type=int, help=f"range 1..kmax, default {DEFAULT_KMAX}")
    rk.set_defaults(handler=_cmd_rk)

    digits = subs.add_parser("digits", help="base digits of frac(1/alpha)")
    _add_instance_flags(digits)
    digits.add_argument("--count", type=int, help="digit count, default 32")
    digits.set_defaults(handler=_cmd_digits)

    language = subs.add_parser("language", help="words of a digit stream")
    _add_instance_flags(language)
    language.add_argument(
        "--source",
        choices=["rk", "periodic", "explicit", "tm-blocks"],
        help="digit stream kind, default rk",
    )
    language.add_argument("--preperiod", help="digits before the cycle (periodic)")
    language.add_argument("--period", help="cycle digits (periodic)")
    language.add_argument("--word", help="digits (explicit)")
    language.add_argument("--block-a", dest="block_a", help="block A (tm-blocks)")
    language.add_argument("--block-b", dest="block_b", help="block B (tm-blocks)")
    language.add_argument("--nmax", type=int, help="last word index, default 30")
    language.set_defaults(handler=_cmd_language)

    decide = subs.add_parser("decide", help="regularity verdict for a stream")
    _add_instance_flags(decide)
    decide.add_argument(
        "--source",
        choices=["rk", "periodic", "explicit", "tm-blocks"],
        help="digit stream kind, default rk",
    )
    decide.add_argument("--preperiod", help="digits before the cycle (periodic)")
    decide.add_argument("--period", help="cycle digits (periodic)")
    decide.add_argument("--word", help="digits (explicit)")
    decide.add_argument("--block-a", dest="block_a", help="block A (tm-blocks)")
    decide.add_argument("--block-b", dest="block_b", help="block B (tm-blocks)")
    decide.add_argument(
        "--window", type=int, help=f"word window, default {DEFAULT_WINDOW}"
    )
    decide.set_defaults(handler=_cmd_decide)

    kernel = subs.add_parser("kernel", help="kernel growth of the unit-step word")
    _add_instance_flags(kernel)
    kernel.add_argument("--depth", type=int, help="kernel depth, default 6")
    kernel.add_argument(
        "--prefix-len", dest="prefix_len", type=int, help="fingerprint length, default 64"
    )
    kernel.set_defaults(handler=_cmd_kernel)

    fk = subs.add_parser("fk", help="level counts, alignment, d-periodicity")
    _add_instance_flags(fk)
    fk.add_argument("--kmax", type=int, help="top level, default 60")
    fk.set_defaults(handler=_cmd_fk)

    dfa = subs.add_parser("dfa", help="DFA of the word language, JSON or DOT")
    _add_instance_flags(dfa)
    dfa.add_argument("--window", type=int, help=f"word window, default {DEFAULT_WINDOW}")
    dfa.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    dfa.set_defaults(handler=_cmd_dfa)

    analyze = subs.add_parser("analyze", help="full pipeline report as JSON")
    _add_instance_flags(analyze)
    analyze.add_argument("--kmax", type=int, help=f"default {DEFAULT_KMAX}")
    analyze.add_argument("--nmax", type=int, help=f"default {DEFAULT_NMAX}")
    analyze.add_argument("--window", type=int, help=f"default {DEFAULT_WINDOW}")
    analyze.add_argument("--kernel-depth", dest="kernel_depth", type=int)
    analyze.add_argument("--kernel-prefix", dest="kernel_prefix", type=int)
    analyze.add_argument("--batch", help="JSON array of scenarios to run")
    analyze.set_defaults(handler=_cmd_analyze)

    return parser


def run_subcommand(name: str, flags: list[str]) -> int:
    """Dispatch one subcommand exactly as the shell entry point would."""
    return main([name, *flags])


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        scenario_path = getattr(args, "scenario", None)
        args.scenario_data = (
            _load_scenario_file(scenario_path) if scenario_path else {}
        )
        return args.handler(args)
    except UsageError as exc:
        print(f"floorlog: error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"floorlog: internal consistency failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
