"""Command-line interface.

Commands: wder, count, seq, guess, verify, selftest.  Every command emits
an envelope {command, inputs, result, timing_ms}; --format machine prints
it as JSON (big integers as decimal strings throughout), --format text
prints a human-readable rendering.  --out additionally writes the primary
result artifact (polynomial / sequence / operator record) as JSON to a
file, which is what the guess -> verify pipeline consumes.

Exit codes: 0 success, 1 verification or guess failure, 2 usage, parse or
schema error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import selftest as selftest_mod
from .enumerator import (
    fk_sequence_direct,
    identified_count,
    weighted_derangement_poly,
)
from .guesser import GuessSpec, InsufficientTerms, NotFound, guess_operator
from .polys import SchemaError, poly_to_record
from .recurrence import (
    PolySequence,
    UnsupportedK,
    builtin_operator,
    extend_sequence,
    first_failure,
    initial_conditions,
    load_operator,
    load_sequence,
    operator_to_record,
    sequence_to_record,
)


class ShapeParseError(ValueError):
    """Malformed shape expression on the command line."""


_SHAPE_PART = re.compile(r"(\d+)(?:\^(\d+))?")


def parse_shape(text: str) -> tuple[int, ...]:
    """Comma list of block sizes with power shorthand: "2,3^2,1" or "4^13"."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        m = _SHAPE_PART.fullmatch(part)
        if not m:
            raise ShapeParseError(f"bad shape component {part!r}")
        k = int(m.group(1))
        reps = int(m.group(2)) if m.group(2) else 1
        out.extend([k] * reps)
    return tuple(out)


def _print_envelope(envelope: dict, text_lines: list[str], fmt: str) -> None:
    if fmt == "machine":
        print(json.dumps(envelope, indent=2))
    else:
        for line in text_lines:
            print(line)
        print(f"time: {envelope['timing_ms']:.3f} ms")


def _write_artifact(path: str, artifact) -> None:
    Path(path).write_text(json.dumps(artifact, indent=2) + "\n")


def _cmd_wder(args) -> tuple[dict, object, list[str], int]:
    shape = parse_shape(args.shape)
    inputs = {"shape": list(shape), "alpha": args.alpha, "identified": args.identified}
    poly = weighted_derangement_poly(shape)
    if args.identified and args.alpha not in (None, 1):
        raise ShapeParseError("--identified requires evaluation at alpha = 1")
    if args.identified:
        value = identified_count(shape)
        return inputs, str(value), [f"identified count = {value}"], 0
    if args.alpha is not None:
        value = poly(args.alpha)
        return inputs, str(value), [f"value at a={args.alpha}: {value}"], 0
    return inputs, poly_to_record(poly), [f"A(shape) = {poly}"], 0


def _cmd_count(args) -> tuple[dict, object, list[str], int]:
    shape = parse_shape(args.shape)
    inputs = {"shape": list(shape), "identified": args.identified}
    if args.identified:
        value = identified_count(shape)
    else:
        value = weighted_derangement_poly(shape)(1)
    return inputs, str(value), [f"count = {value}"], 0


def _resolve_engine(args) -> str:
    if args.operator:
        return "operator-file"
    if args.engine == "auto":
        return "recurrence" if args.k in (1, 2) else "direct"
    return args.engine


def _seq_values(args, engine: str) -> PolySequence:
    k, last = args.k, args.count
    if engine == "operator-file":
        op = load_operator(args.operator)
        seed = initial_conditions(k, op.order)
        full = extend_sequence(op, seed, last) if last >= seed.last else seed
    elif engine == "recurrence":
        if k not in (1, 2):
            raise UnsupportedK(
                f"k={k} has no built-in operator; supply --operator FILE"
            )
        op = builtin_operator(k)
        full = extend_sequence(op, initial_conditions(k, op.order), last)
    else:
        full = PolySequence(start=0, values=tuple(fk_sequence_direct(k, last)), k=k)
    return PolySequence(start=1, values=full.values[1 : last + 1], k=k)


def _cmd_seq(args) -> tuple[dict, object, list[str], int]:
    if args.k < 1 or args.count < 1:
        raise ShapeParseError("k and COUNT must be positive")
    engine = _resolve_engine(args)
    seq = _seq_values(args, engine)
    inputs = {"k": args.k, "count": args.count, "engine": engine, "alpha": args.alpha}
    if args.alpha is not None:
        values = [str(v(args.alpha)) for v in seq.values]
        result: object = {"start": 1, "values": values}
        lines = [f"F_{args.k}({n}) = {v}" for n, v in enumerate(values, start=1)]
    else:
        result = sequence_to_record(seq)
        lines = [
            f"F_{args.k}({n}) = {v}" for n, v in enumerate(seq.values, start=1)
        ]
    return inputs, result, lines, 0


def _guess_input(args) -> PolySequence:
    if args.file:
        return load_sequence(args.file)
    if args.k is None or args.terms is None:
        raise ShapeParseError("guess needs --file or both -k and --terms")
    return PolySequence(
        start=0, values=tuple(fk_sequence_direct(args.k, args.terms - 1)), k=args.k
    )


def _cmd_guess(args) -> tuple[dict, object, list[str], int]:
    seq = _guess_input(args)
    spec = GuessSpec(args.max_order, args.max_deg_n, args.max_deg_a, args.holdout)
    inputs = {
        "source": args.file or {"k": args.k, "terms": args.terms},
        "max_order": spec.max_order,
        "max_deg_n": spec.max_deg_n,
        "max_deg_a": spec.max_deg_a,
        "holdout": spec.holdout,
    }
    try:
        res = guess_operator(seq, spec)
    except (NotFound, InsufficientTerms) as exc:
        result = {"found": False, "reason": str(exc)}
        return inputs, result, [f"no operator found: {exc}"], 1
    record = operator_to_record(res.operator)
    result = {
        "found": True,
        "operator": record,
        "candidate": list(res.candidate),
        "kernel_dim": res.kernel_dim,
        "equations": res.equations,
        "unknowns": res.unknowns,
    }
    lines = [f"operator (order {res.operator.order}): {res.operator}"]
    if res.kernel_dim > 1:
        lines.append(f"warning: kernel dimension {res.kernel_dim}, canonical pick")
    return inputs, result, lines, 0


def _verify_input(args) -> PolySequence:
    if args.file:
        return load_sequence(args.file)
    if args.k is None or args.terms is None:
        raise ShapeParseError("verify needs --file or both -k and --terms")
    return PolySequence(
        start=0, values=tuple(fk_sequence_direct(args.k, args.terms - 1)), k=args.k
    )


def _cmd_verify(args) -> tuple[dict, object, list[str], int]:
    op = load_operator(args.operator)
    seq = _verify_input(args)
    inputs = {
        "operator": args.operator,
        "source": args.file or {"k": args.k, "terms": args.terms},
    }
    windows = seq.last - op.order - max(seq.start, op.valid_from) + 1
    fail = first_failure(op, seq)
    if fail is None:
        result = {"verified": True, "first_failure": None, "windows": windows}
        return inputs, result, [f"verified on {windows} windows"], 0
    result = {"verified": False, "first_failure": fail, "windows": windows}
    return inputs, result, [f"FAILED at n={fail}"], 1


def _cmd_selftest(args) -> tuple[dict, object, list[str], int]:
    results = selftest_mod.run_all(cap=args.cap)
    rows = [
        {"name": r.name, "passed": r.passed, "detail": r.detail,
         "ms": round(r.ms, 3)}
        for r in results
    ]
    width = max(len(r.name) for r in results)
    lines = [
        f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  "
        f"{r.ms:9.1f} ms  {r.detail}"
        for r in results
    ]
    ok = all(r.passed for r in results)
    lines.append("all suites passed" if ok else "SELFTEST FAILED")
    return {"cap": args.cap}, rows, lines, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiderange",
        description="Exact cycle-count weight enumerators of multiset derangements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "machine"), default="text")
        p.add_argument("--out", metavar="FILE", help="also write the result artifact as JSON")

    p = sub.add_parser("wder", help="weight enumerator of a shape")
    p.add_argument("shape", help="comma list of block sizes, ^ for repetition (e.g. 4^13)")
    p.add_argument("--alpha", type=int, help="evaluate at an integer instead of printing the polynomial")
    p.add_argument("--identified", action="store_true",
                   help="divide the a=1 count by the product of block factorials")
    common(p)
    p.set_defaults(handler=_cmd_wder)

    p = sub.add_parser("count", help="number of derangements of a shape (a=1)")
    p.add_argument("shape")
    p.add_argument("--identified", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("seq", help="the equal-blocks sequence F_k(1..COUNT)")
    p.add_argument("k", type=int)
    p.add_argument("count", type=int, metavar="COUNT")
    p.add_argument("--engine", choices=("auto", "recurrence", "direct"), default="auto")
    p.add_argument("--operator", metavar="FILE", help="extend with an operator file")
    p.add_argument("--alpha", type=int)
    common(p)
    p.set_defaults(handler=_cmd_seq)

    p = sub.add_parser("guess", help="discover an annihilating operator from terms")
    p.add_argument("--file", metavar="SEQFILE", help="poly-sequence JSON input")
    p.add_argument("-k", type=int, help="equal-blocks k (with --terms)")
    p.add_argument("--terms", type=int, help="number of terms to generate")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--max-deg-n", type=int, default=3)
    p.add_argument("--max-deg-a", type=int, default=3)
    p.add_argument("--holdout", type=int, default=5)
    common(p)
    p.set_defaults(handler=_cmd_guess)

    p = sub.add_parser("verify", help="check that an operator annihilates a sequence")
    p.add_argument("--operator", metavar="FILE", required=True)
    p.add_argument("--file", metavar="SEQFILE")
    p.add_argument("-k", type=int)
    p.add_argument("--terms", type=int)
    common(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("selftest", help="run the built-in consistency suites")
    p.add_argument("--cap", type=int, default=9, help="brute-force oracle bound")
    common(p)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        inputs, result, text_lines, exit_code = args.handler(args)
    except (ShapeParseError, SchemaError, UnsupportedK, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        # an operator file that is wrong for the requested sequence
        print(f"error: {exc}", file=sys.stderr)
        return 1
    envelope = {
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "timing_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }
    _print_envelope(envelope, text_lines, args.format)
    if args.out is not None:
        artifact = result
        if args.command == "guess" and isinstance(result, dict):
            artifact = result.get("operator", result)
        _write_artifact(args.out, artifact)
    return exit_code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
