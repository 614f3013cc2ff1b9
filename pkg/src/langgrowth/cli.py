"""``langgrowth`` command-line interface.

Exit codes: 0 polynomial or finite, 10 exponential, 2 usage error, 3 input
parse error, 11 ``order`` on an exponential input, 12 subset construction
over budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .automata import (
    DEFAULT_STATE_BUDGET,
    AutomatonFormatError,
    Nfa,
    StateBudgetExceeded,
    determinize,
    format_automaton,
    parse_automaton,
)
from .classifier import ExponentialWitness, Growth, classify
from .oracle import count_words
from .order import NotPolynomialGrowth, OrderKind, bounded_witness, polynomial_order
from .regex import RegexSyntaxError, regex_to_nfa
from .spectral import (
    MatrixFormatError,
    SpectralKind,
    parse_matrix,
    spectral_class,
    verify_growth_law,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_EXPONENTIAL = 10
EXIT_NOT_POLYNOMIAL = 11
EXIT_BUDGET = 12

REPORT_KEYS = ("input", "growth", "degree", "witness", "certificate", "timing_ms", "states", "transitions")


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a single JSON report on stdout")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--regex", metavar="PATTERN")
    group.add_argument("--file", metavar="PATH", help="automaton file")
    source.add_argument("--alphabet", metavar="SYMBOLS",
                        help="symbol order for --regex (default: sorted symbols of the pattern)")
    source.add_argument("--emit-automaton", metavar="PATH",
                        help="write the analysed automaton in the text format ('-' for stderr)")

    parser = _Parser(prog="langgrowth", description="Growth of regular languages.")
    parser.add_argument("--json", action="store_true", default=False,
                        help="emit a single JSON report on stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common, source], help="polynomial or exponential growth")
    p.add_argument("--parallel", action="store_true", help="test states on a thread pool")

    p = sub.add_parser("order", parents=[common, source], help="exact polynomial degree")
    p.add_argument("--max-states", type=int, default=DEFAULT_STATE_BUDGET,
                   help="subset construction budget (default %(default)s)")

    p = sub.add_parser("count", parents=[common, source], help="number of words by length")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--max-states", type=int, default=DEFAULT_STATE_BUDGET)

    p = sub.add_parser("witness", parents=[common, source],
                       help="bounded decomposition or exponential pump words")
    p.add_argument("--max-states", type=int, default=DEFAULT_STATE_BUDGET)

    p = sub.add_parser("spectral", parents=[common], help="spectral radius class of a matrix")
    p.add_argument("--matrix", metavar="PATH", required=True)
    p.add_argument("--verify", nargs=2, type=int, metavar=("M_LO", "M_HI"))
    return parser


def _load(args) -> tuple[Nfa, dict]:
    if args.regex is not None:
        try:
            a = regex_to_nfa(args.regex, args.alphabet)
        except RegexSyntaxError as exc:
            raise _InputError(f"regex syntax error at offset {exc.offset}: {exc.message}") from None
        except ValueError as exc:
            raise _InputError(str(exc)) from None
        descriptor = {"kind": "regex", "value": args.regex}
    else:
        try:
            a = parse_automaton(Path(args.file).read_text())
        except OSError as exc:
            raise _InputError(f"cannot read {args.file}: {exc.strerror}") from None
        except AutomatonFormatError as exc:
            raise _InputError(f"{args.file}: {exc}") from None
        descriptor = {"kind": "file", "value": args.file}
    if args.emit_automaton:
        text = format_automaton(a)
        if args.emit_automaton == "-":
            sys.stderr.write(text)
        else:
            Path(args.emit_automaton).write_text(text)
    return a, descriptor


def _report(descriptor, before: Nfa, after: Nfa, started: float, **fields) -> dict:
    report = {
        "input": descriptor,
        "growth": None,
        "degree": None,
        "witness": None,
        "certificate": None,
        "timing_ms": round((time.perf_counter() - started) * 1000, 3),
        "states": {"before": before.state_count, "after": after.state_count},
        "transitions": {"before": before.transition_count, "after": after.transition_count},
    }
    report.update(fields)
    return report


def _pump_payload(w: ExponentialWitness) -> dict:
    return {"kind": "exponential", "state": w.state, "x": w.word_x, "y": w.word_y,
            "v": w.prefix_v, "v_prime": w.suffix_v_prime}


def _show(word: str) -> str:
    return word if word else "ε"


def _cmd_classify(args, out) -> tuple[int, dict]:
    started = time.perf_counter()
    a, descriptor = _load(args)
    result = classify(a, parallel=args.parallel)
    if result.growth is Growth.EXPONENTIAL:
        w = result.witness
        report = _report(descriptor, a, result.automaton, started,
                         growth="exponential", witness=_pump_payload(w))
        out.append("exponential")
        out.append(f"witness: state {w.state} x={_show(w.word_x)} y={_show(w.word_y)} "
                   f"v={_show(w.prefix_v)} v'={_show(w.suffix_v_prime)}")
        return EXIT_EXPONENTIAL, report
    certs = [{"state": c.state, "root": c.root} for c in result.certificates]
    report = _report(descriptor, a, result.automaton, started, growth="polynomial", certificate=certs)
    out.append("polynomial")
    for c in result.certificates:
        out.append(f"certificate: L_{c.state} <= ({_show(c.root)})*")
    return EXIT_OK, report


def _dfa(a: Nfa, budget: int):
    if budget < 1:
        raise _Usage("--max-states must be positive")
    return determinize(a, max_states=budget)


def _cmd_order(args, out) -> tuple[int, dict]:
    started = time.perf_counter()
    a, descriptor = _load(args)
    dfa = _dfa(a, args.max_states)
    try:
        order = polynomial_order(dfa)
    except NotPolynomialGrowth as exc:
        print(f"error: {exc}", file=sys.stderr)
        out.append("exponential")
        return EXIT_NOT_POLYNOMIAL, _report(descriptor, a, dfa, started, growth="exponential")
    if order.kind is OrderKind.FINITE:
        out.append("finite")
        return EXIT_OK, _report(descriptor, a, dfa, started, growth="finite")
    out.append(f"degree {order.degree}")
    return EXIT_OK, _report(descriptor, a, dfa, started, growth="polynomial", degree=order.degree)


def _cmd_count(args, out) -> tuple[int, dict]:
    started = time.perf_counter()
    if args.max_len < 0:
        raise _Usage("--max-len must be nonnegative")
    a, descriptor = _load(args)
    dfa = _dfa(a, args.max_states)
    table = count_words(dfa, args.max_len)
    for m, n in enumerate(table.counts):
        out.append(f"{m} {n}")
    report = _report(descriptor, a, dfa, started)
    report["counts"] = list(table.counts)
    return EXIT_OK, report


def _cmd_witness(args, out) -> tuple[int, dict]:
    started = time.perf_counter()
    a, descriptor = _load(args)
    result = classify(a)
    if result.growth is Growth.EXPONENTIAL:
        w = result.witness
        out.append("exponential")
        out.append(f"v={_show(w.prefix_v)} x={_show(w.word_x)} y={_show(w.word_y)} v'={_show(w.suffix_v_prime)}")
        return EXIT_EXPONENTIAL, _report(descriptor, a, result.automaton, started,
                                         growth="exponential", witness=_pump_payload(w))
    dfa = _dfa(a, args.max_states)
    order = polynomial_order(dfa)
    if order.kind is OrderKind.FINITE:
        out.append("finite")
        return EXIT_OK, _report(descriptor, a, dfa, started, growth="finite")
    bw = bounded_witness(dfa)
    pieces = [_show(bw.xs[0])]
    for y, x in zip(bw.ys, bw.xs[1:]):
        pieces.append(f"({y})*")
        pieces.append(_show(x))
    out.append(f"degree {order.degree}")
    out.append(" ".join(pieces))
    payload = {"kind": "bounded", "x": list(bw.xs), "y": list(bw.ys)}
    return EXIT_OK, _report(descriptor, a, dfa, started, growth="polynomial",
                            degree=order.degree, witness=payload)


def _cmd_spectral(args, out) -> tuple[int, dict]:
    started = time.perf_counter()
    try:
        matrix = parse_matrix(Path(args.matrix).read_text())
    except OSError as exc:
        raise _InputError(f"cannot read {args.matrix}: {exc.strerror}") from None
    except (MatrixFormatError, ValueError) as exc:
        raise _InputError(f"{args.matrix}: {exc}") from None
    cls = spectral_class(matrix)
    out.append(str(cls))
    report = {
        "input": {"kind": "matrix", "value": args.matrix},
        "spectral": cls.kind.value,
        "dominating_d": cls.dominating_d,
        "verify": None,
    }
    if args.verify:
        m_lo, m_hi = args.verify
        if cls.kind is not SpectralKind.ONE:
            print(f"note: growth-law check skipped, it needs r = 1 (got {cls})", file=sys.stderr)
        else:
            law = verify_growth_law(matrix, m_lo, m_hi)
            report["verify"] = {str(m): float(v) for m, v in law.values.items()}
            for m, v in law.values.items():
                out.append(f"{m} {float(v):.6g}")
    report["timing_ms"] = round((time.perf_counter() - started) * 1000, 3)
    return EXIT_OK, report


_COMMANDS = {
    "classify": _cmd_classify,
    "order": _cmd_order,
    "count": _cmd_count,
    "witness": _cmd_witness,
    "spectral": _cmd_spectral,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Run the CLI and return the exit code instead of exiting."""
    stdout = stdout or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    lines: list[str] = []
    try:
        code, report = _COMMANDS[args.command](args, lines)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StateBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.json:
        stdout.write(json.dumps(report, sort_keys=False) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
