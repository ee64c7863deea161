"""Command-line front end: generate, verify, spectrum, search, catalog.

Exit codes: 0 success (verify: perfect), 1 not perfect / failed checks,
2 usage error, 3 I/O or parse error, 4 direct-summation budget exceeded
(the message points at the FFT path).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as cat
from . import constructions as cons
from .correlation import (AUTO_FFT_THRESHOLD, BudgetExceededError,
                          DEFAULT_NAIVE_BUDGET, fft_autocorr_all, float_spectrum,
                          full_spectrum, is_perfect, spectrum_records,
                          spectrum_text_lines)
from .quat import FLOAT_TOL
from .seqs import FloatQuatSequence, QuatArray, QuatSequence
from .search import (aop_random_search, exhaustive_search, template_search)

EXIT_OK = 0
EXIT_NOT_PERFECT = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BUDGET = 4


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (cat.ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatseq",
        description="Perfect periodic autocorrelation sequences and arrays "
                    "over the unit quaternions")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("generate", help="emit a construction in canonical text")
    gen.add_argument("--construction", required=True,
                     choices=cons.CONSTRUCTION_NAMES)
    gen.add_argument("--n", type=int, help="size parameter where applicable")
    gen.add_argument("--alpha", help="sign vector for template, e.g. '---++-' "
                                     "or '-1,-1,-1,+1,+1,-1'")
    gen.add_argument("--inputs", nargs=2, metavar=("A", "B"),
                     help="two sequence files for product")
    gen.add_argument("--reverse", action="store_true",
                     help="multiply product factors in the reversed order")
    gen.add_argument("-o", "--output", help="write here instead of stdout")
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", help="exit 0 iff the input is perfect")
    _add_input_args(ver)
    ver.add_argument("--side", choices=("right", "left", "both"), default="both")
    ver.add_argument("--method", choices=("auto", "direct", "fft"), default="auto")
    ver.add_argument("--budget", type=int, default=None,
                     help="direct-summation size budget override")
    ver.set_defaults(func=cmd_verify)

    spec = sub.add_parser("spectrum", help="print the full shift table")
    _add_input_args(spec)
    spec.add_argument("--side", choices=("right", "left"), default="right")
    spec.add_argument("--method", choices=("auto", "direct", "fft"), default="auto")
    spec.add_argument("--format", choices=("text", "structured"), default="text")
    spec.add_argument("--budget", type=int, default=None)
    spec.add_argument("-o", "--output")
    spec.set_defaults(func=cmd_spectrum)

    srch = sub.add_parser("search", help="run a search and stream its hits")
    srch.add_argument("--kind", choices=("exhaustive", "template", "aop"),
                      required=True)
    srch.add_argument("--length", type=int, help="sequence length")
    srch.add_argument("--limit", type=int, default=None, help="stop after this many hits")
    srch.add_argument("--jobs", type=int, default=1)
    srch.add_argument("--resume", help="checkpoint file to create or continue")
    srch.add_argument("--seed", type=int, default=0, help="RNG seed (aop)")
    srch.add_argument("--samples", type=int, default=1000,
                      help="random specs per size (aop)")
    srch.add_argument("--sizes", default="8x8",
                      help="comma-separated array sizes for aop, e.g. 8x8,4x16")
    srch.add_argument("--coeff-bound", type=int, default=13)
    srch.add_argument("--den-bound", type=int, default=12)
    srch.add_argument("--no-prune", action="store_true",
                      help="disable branch-and-bound (exhaustive)")
    srch.add_argument("--no-canonical", action="store_true",
                      help="search the full space instead of the symmetry quotient")
    srch.add_argument("--max-length", type=int, default=None,
                      help="raise the exhaustive length bound")
    srch.add_argument("--format", choices=("text", "structured"), default="text")
    srch.set_defaults(func=cmd_search)

    catp = sub.add_parser("catalog", help="list or verify the shipped fixtures")
    catp.add_argument("action", choices=("list", "verify"))
    catp.add_argument("--id", help="restrict to one entry")
    catp.set_defaults(func=cmd_catalog)

    return parser


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", nargs="?",
                   help="input file in canonical text ('-' for stdin)")
    p.add_argument("--construction", choices=cons.CONSTRUCTION_NAMES,
                   help="generate the input instead of reading it")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha")


# ---------------------------------------------------------------------------
# input plumbing

def _build_construction(name: str, args) -> QuatSequence | QuatArray:
    if name == "seq2n":
        _need_n(name, args)
        return cons.construct_seq_2n(args.n)
    if name == "aop8x8":
        return cons.construct_aop_array()
    if name == "arr2d":
        _need_n(name, args)
        return cons.construct_2d(args.n)
    if name == "arr4d-iii":
        _need_n(name, args)
        return cons.construct_4d_iii(args.n)
    if name == "arr4d-iv":
        _need_n(name, args)
        return cons.construct_4d_iv(args.n)
    if name == "template":
        if not args.alpha:
            raise ValueError("template needs --alpha")
        return cons.template_sequence(_parse_alpha(args.alpha))
    if name == "product":
        if not getattr(args, "inputs", None):
            raise ValueError("product needs --inputs A B")
        s1 = _expect_sequence(_read_payload_path(args.inputs[0]))
        s2 = _expect_sequence(_read_payload_path(args.inputs[1]))
        return cons.coprime_product(s1, s2, reverse=args.reverse)
    raise ValueError(f"unknown construction {name!r}")


def _need_n(name: str, args) -> None:
    if args.n is None:
        raise ValueError(f"construction {name} needs --n")


def _parse_alpha(text: str) -> list[int]:
    text = text.strip()
    if "," in text or text.lstrip("+-").startswith("1"):
        return [int(t) for t in text.split(",")]
    return [1 if ch == "+" else -1 for ch in text]


def _read_payload_path(path: str):
    if path == "-":
        return _parse_payload(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return _parse_payload(fh.read())


def _parse_payload(text: str):
    stripped_lines = [ln.strip() for ln in text.splitlines()]
    if any(ln.startswith("id:") for ln in stripped_lines):
        return cat.parse_entry(text).payload
    if any(ln.startswith("format: float") for ln in stripped_lines):
        body = "\n".join(ln for ln in text.splitlines()
                         if not ln.strip().startswith("format:"))
        return cat.parse_float_sequence(body)
    if any(ln.startswith("dims:") for ln in stripped_lines):
        return cat.parse_array(text)
    return cat.parse_sequence(text)


def _resolve_input(args):
    if args.construction:
        return _build_construction(args.construction, args)
    if not args.path:
        raise ValueError("give an input path ('-' for stdin) or --construction")
    return _read_payload_path(args.path)


def _expect_sequence(payload) -> QuatSequence:
    if not isinstance(payload, QuatSequence):
        raise ValueError("this operation needs a 1-D unit sequence")
    return payload


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_generate(args) -> int:
    obj = _build_construction(args.construction, args)
    if isinstance(obj, QuatArray):
        _emit(cat.serialize_array(obj) + "\n", args.output)
    else:
        _emit(cat.serialize_sequence(obj) + "\n", args.output)
    return EXIT_OK


def _pick_method(method: str, size: int, budget: int | None) -> str:
    threshold = budget if budget is not None else AUTO_FFT_THRESHOLD
    if method == "auto":
        return "direct" if size <= threshold else "fft"
    return method


def cmd_verify(args) -> int:
    payload = _resolve_input(args)
    if isinstance(payload, FloatQuatSequence):
        sides = ("right", "left") if args.side == "both" else (args.side,)
        perfect = True
        for side in sides:
            spec = float_spectrum(payload, side)
            flag = spec.is_perfect(FLOAT_TOL)
            perfect = perfect and flag
            print(f"method: float  side: {side}  perfect: {'yes' if flag else 'no'}  "
                  f"max off-peak: {spec.max_offpeak():.3g}")
        return EXIT_OK if perfect else EXIT_NOT_PERFECT

    size = len(payload) if isinstance(payload, QuatSequence) else payload.size
    method = _pick_method(args.method, size, args.budget)
    budget = args.budget if args.budget is not None else DEFAULT_NAIVE_BUDGET
    sides = ("right", "left") if args.side == "both" else (args.side,)
    perfect = True
    for side in sides:
        flag = is_perfect(payload, side=side, method=method, budget=budget)
        perfect = perfect and flag
        print(f"method: {method}  side: {side}  perfect: {'yes' if flag else 'no'}")
    return EXIT_OK if perfect else EXIT_NOT_PERFECT


def cmd_spectrum(args) -> int:
    payload = _resolve_input(args)
    if isinstance(payload, FloatQuatSequence):
        raise ValueError("spectrum output is defined for exact unit payloads")
    size = len(payload) if isinstance(payload, QuatSequence) else payload.size
    method = _pick_method(args.method, size, args.budget)
    if method == "fft":
        spec = fft_autocorr_all(payload, args.side)
    else:
        budget = args.budget if args.budget is not None else DEFAULT_NAIVE_BUDGET
        spec = full_spectrum(payload, args.side, budget=budget)
    if args.format == "structured":
        records = [{"method": method, **rec} if rec.get("type") == "spectrum" else rec
                   for rec in spectrum_records(spec)]
        text = "\n".join(json.dumps(rec) for rec in records) + "\n"
    else:
        lines = list(spectrum_text_lines(spec))
        lines[0] += f"  method: {method}"
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_search(args) -> int:
    if args.kind == "exhaustive":
        if args.length is None:
            raise ValueError("exhaustive search needs --length")
        kwargs = dict(prune=not args.no_prune, canonical=not args.no_canonical,
                      jobs=args.jobs, checkpoint=args.resume)
        if args.max_length is not None:
            kwargs["max_length"] = args.max_length
        report = exhaustive_search(args.length, args.limit, **kwargs)
    elif args.kind == "template":
        if args.length is None:
            raise ValueError("template search needs --length")
        report = template_search(args.length, args.limit, jobs=args.jobs,
                                 checkpoint=args.resume)
    else:
        sizes = []
        for chunk in args.sizes.split(","):
            rows, _, cols = chunk.strip().partition("x")
            sizes.append((int(rows), int(cols)))
        report = aop_random_search(sizes, args.samples,
                                   coeff_bound=args.coeff_bound,
                                   den_bound=args.den_bound,
                                   seed=args.seed, jobs=args.jobs)

    if args.format == "structured":
        for hit in report.hits:
            rec = {"type": "hit", "sequence": hit.serialize()}
            if hit.alpha is not None:
                rec["alpha"] = list(hit.alpha)
            if hit.spec is not None:
                rec["spec"] = hit.spec.describe()
                rec["aop_plain"] = hit.aop.plain
                rec["aop_cyclic"] = hit.aop.cyclic
            print(json.dumps(rec))
        print(json.dumps({"type": "summary", "kind": report.kind,
                          "examined": report.examined, "hits": len(report.hits),
                          "complete": report.complete,
                          "elapsed_s": round(report.elapsed, 3)}))
    else:
        for hit in report.hits:
            extra = ""
            if hit.alpha is not None:
                extra = "  alpha: " + "".join("+" if a > 0 else "-" for a in hit.alpha)
            if hit.spec is not None:
                extra = f"  spec: {hit.spec.describe()}  aop: {hit.aop}"
            print(f"hit: {hit.serialize()}{extra}")
        print(f"searched {report.examined} candidates, {len(report.hits)} hits, "
              f"{'complete' if report.complete else 'partial'}, "
              f"{report.elapsed:.2f}s")
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = cat.load_catalog()
    if args.id:
        entries = [e for e in entries if e.id == args.id]
        if not entries:
            raise ValueError(f"no catalog entry with id {args.id!r}")
    if args.action == "list":
        for e in entries:
            shape = ("x".join(str(d) for d in e.payload.dims)
                     if isinstance(e.payload, QuatArray) else str(e.size))
            print(f"{e.id:18} {e.kind:14} {shape:12} {e.source}")
        return EXIT_OK
    report = cat.verify_catalog(entries)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.all_passed else EXIT_NOT_PERFECT


if __name__ == "__main__":
    sys.exit(main())
