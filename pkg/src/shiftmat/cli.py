"""Command-line interface.

Exit status: 0 success, 1 usage or input error, 2 the call does not fit the
verdict (weights for a non-threshold T, certify for a threshold one),
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .census import DEFAULT_CENSUS_CAP, census, ratio_csv, ratio_series
from .errors import ResourceLimitError, ShiftmatError, VerificationFailedError
from .oracles import DEFAULT_LP_CAP, DEFAULT_PAIR_CAP, asummability_oracle, lp_threshold_oracle
from .poset import parse_subset_word
from .recognition import canonicalize, is_shifted, parse_bases
from .shifted import DefiningBasis, circuits
from .threshold import (
    DEFAULT_FULL_CAP,
    Verdict,
    certificate,
    classify,
    synthesize_weights,
    verify_weights,
)

EXIT_OK, EXIT_USAGE, EXIT_VERDICT, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _VerdictMismatch(Exception):
    pass


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _basis(args) -> DefiningBasis:
    return DefiningBasis(parse_subset_word(args.t, args.n))


def cmd_classify(args):
    c = classify(_basis(args))
    _emit(args, str(c), c.to_dict())


def cmd_weights(args):
    M = _basis(args)
    c = classify(M)
    if c.verdict is not Verdict.THRESHOLD:
        raise _VerdictMismatch(f"{M} is {c}; it has no weight function")
    w = synthesize_weights(M)
    if args.verify != "none" and not verify_weights(M, w, args.verify, cap=args.cap):
        raise VerificationFailedError(f"synthesized weights for {M} failed {args.verify} verification")
    _emit(args, w.serialize(), w.to_dict())


def cmd_certify(args):
    M = _basis(args)
    c = classify(M)
    if c.verdict is not Verdict.NOT_THRESHOLD:
        raise _VerdictMismatch(f"{M} is {c}; it has no non-threshold certificate")
    cert = certificate(M)
    _emit(args, cert.serialize(), cert.to_dict())


def cmd_recognize(args):
    with open(args.bases, encoding="utf-8") as fh:
        M = parse_bases(fh.read(), n=args.n)
    result = is_shifted(M)
    if not result:
        a, b = result.witness
        _emit(
            args,
            f"not shifted\nincomparable: {a} {b}",
            {"shifted": False, "incomparable": [str(a), str(b)]},
        )
        return
    form = canonicalize(M, max_retries=args.retries)
    _emit(args, form.serialize(), {"shifted": True, **form.to_dict()})


def cmd_circuits(args):
    cs = circuits(_basis(args))
    _emit(args, "\n".join(str(c) for c in cs), [list(c.elements.letters) for c in cs])


def cmd_census(args):
    # the report is always JSON; --format only matters for other commands
    print(census(args.n, cap=args.cap).to_json())


def cmd_ratio(args):
    sys.stdout.write(ratio_csv(ratio_series(args.max, args.min)))


def cmd_oracle(args):
    M = _basis(args)
    if args.kind == "lp":
        res = lp_threshold_oracle(M, cap=args.cap)
        _emit(args, res.serialize(), res.to_dict())
    else:
        res = asummability_oracle(M, args.l, cap=args.cap)
        if res is None:
            _emit(args, "none", None)
        else:
            _emit(args, res.serialize(), res.to_dict())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="count", default=0)

    shifted = argparse.ArgumentParser(add_help=False)
    shifted.add_argument("--n", type=int, required=True, help="ground set size")
    shifted.add_argument("--t", required=True, help='defining basis, e.g. "2 4 6 8"')

    p = _Parser(prog="shiftmat", description="Threshold and shifted matroid toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common, shifted], help="threshold verdict from T")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("weights", parents=[common, shifted], help="separating weights (threshold T)")
    s.add_argument("--verify", choices=("full", "structural", "none"), default="structural")
    s.add_argument("--cap", type=int, default=DEFAULT_FULL_CAP, help="subset cap for --verify full")
    s.set_defaults(func=cmd_weights)

    s = sub.add_parser("certify", parents=[common, shifted], help="trade certificate (non-threshold T)")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("recognize", parents=[common], help="canonical T for a bases file")
    s.add_argument("--bases", required=True, help="one basis per line")
    s.add_argument("--n", type=int, default=None, help="ground set is 1..n (integer tokens)")
    s.add_argument("--retries", type=int, default=10_000, help="tie-breaking attempts")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("circuits", parents=[common, shifted], help="all circuits of <T>")
    s.set_defaults(func=cmd_circuits)

    s = sub.add_parser("census", parents=[common], help="classify every T on [n] (JSON)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--cap", type=int, default=DEFAULT_CENSUS_CAP)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("ratio", parents=[common], help="F(n)/2^n series (CSV)")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--min", type=int, default=1)
    s.set_defaults(func=cmd_ratio)

    s = sub.add_parser("oracle", parents=[common, shifted], help="brute-force oracles")
    s.add_argument("kind", choices=("lp", "asummable"))
    s.add_argument("--l", type=int, default=2, help="multiset size for asummable")
    s.add_argument("--cap", type=int, default=None)
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "command", None) == "oracle" and args.cap is None:
        args.cap = DEFAULT_LP_CAP if args.kind == "lp" else DEFAULT_PAIR_CAP
    try:
        args.func(args)
    except ResourceLimitError as exc:
        print(f"shiftmat: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _VerdictMismatch as exc:
        print(f"shiftmat: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except (ShiftmatError, OSError) as exc:
        print(f"shiftmat: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
