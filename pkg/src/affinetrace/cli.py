"""
Command-line front end.

    affinetrace classify -n 2 "pi"
    affinetrace cocenter -n 2 "Y1*T1"
    affinetrace cocenter "E(1,0)*E(0)"
    affinetrace shuffle "R(1,0)*H(1,2)" --wheel
    affinetrace verify rel-a2 --target cocenter --n-max 3 --d-max 2 --k-max 2
    affinetrace reduce -n 3 -m -1

Every command prints a text report, or with ``--format machine`` one JSON
document with the keys ``command``, ``inputs``, ``results`` and ``failures``.
The exit status is 0 exactly when there are no failures and no errors.
"""

import argparse
import json
import sys
import warnings

from . import __version__
from .affine_weyl import (
    GeneratorWord, convex_path, degree, from_word, length, newton_point,
)
from .cocenter import class_of, e_class
from .errors import (
    IndexOutOfRange, InexactDivision, NonLaurent, ParseError, ScalarNotInvertible, StrandMismatch,
)
from .hecke import BraidWord, EWord, evaluate_word
from .parsing import Cursor
from .shuffle import SymLaurent, h_element, partial_k, probe_point, r_element, wheel_check
from .tilde_a import RELATIONS, TARGETS, eval_shuffle, reduce_single_rows, verify_suite

DEFAULT_N_MAX = 3
MAX_SHUFFLE_VARIABLES = 4
EXPECTED_ERRORS = (
    ParseError, StrandMismatch, NonLaurent, IndexOutOfRange, InexactDivision, ScalarNotInvertible,
)


class BoundsWarning(UserWarning):
    """Requested bounds exceed the documented exact-mode defaults."""


def _report(command: str, inputs: dict, results: dict, failures: list) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "failures": failures}


# -- commands -----------------------------------------------------------------

def cmd_classify(args) -> dict:
    word = GeneratorWord.parse(args.expression, args.strands)
    v = from_word(word)
    results = {
        "window": str(v),
        "length": length(v),
        "degree": degree(v),
        "newton_point": "(" + ",".join(str(x) for x in newton_point(v)) + ")",
        "convex_path": str(convex_path(v)),
    }
    return _report("classify", {"n": args.strands, "expression": args.expression}, results, [])


def cmd_cocenter(args) -> dict:
    text = args.expression.strip()
    if text.startswith("E"):
        e = EWord.parse(text)
        if args.strands is not None and args.strands != e.strands:
            raise StrandMismatch(f"{text} has {e.strands} strands, not {args.strands}")
        n = e.strands
        vec = e_class(e)
    else:
        if args.strands is None:
            raise StrandMismatch("braid expressions need -n/--strands")
        n = args.strands
        vec = class_of(evaluate_word(BraidWord.parse(text, n)))
    results = {"n": n, "class": {str(p): str(c) for p, c in vec.items()}, "text": str(vec)}
    return _report("cocenter", {"n": args.strands, "expression": args.expression}, results, [])


def _parse_shuffle_expression(text: str) -> SymLaurent:
    """sexpr := sterm {"*" sterm};  sterm := "R(" int {"," int} ")" | "H(" int "," int ")"."""
    cur = Cursor(text)
    value = None
    while True:
        tok = cur.peek()
        if tok.text == "R":
            cur.next()
            cur.expect("(")
            d = [cur.signed_int()]
            while cur.accept(","):
                d.append(cur.signed_int())
            cur.expect(")")
            term = r_element(d)
        elif tok.text == "H":
            cur.next()
            cur.expect("(")
            m = cur.signed_int()
            cur.expect(",")
            pos = cur.peek().pos
            n = cur.signed_int()
            if n < 1:
                raise ParseError("H(m,n) needs n >= 1", text, pos, ("positive integer",))
            cur.expect(")")
            term = h_element(m, n)
        else:
            cur.fail(f"unexpected {tok.text or 'end of input'!r}", ("R(...)", "H(m,n)"))
        value = term if value is None else value * term
        if not cur.accept("*"):
            break
    cur.expect_end()
    return value


def _shuffle_variables(text: str) -> int:
    """Number of z-variables of a shuffle expression, read off without computing it."""
    cur = Cursor(text)
    total = 0
    while cur.peek().kind != "end":
        tok = cur.next()
        if tok.text == "R":
            cur.expect("(")
            total += 1
            while not cur.at(")") and cur.peek().kind != "end":
                if cur.next().text == ",":
                    total += 1
        elif tok.text == "H":
            cur.expect("(")
            cur.signed_int()
            cur.expect(",")
            total += cur.signed_int()
    return total


def cmd_shuffle(args) -> dict:
    try:
        nvars = _shuffle_variables(args.expression)
    except ParseError:
        nvars = 0  # the real parse below reports the error
    if nvars > MAX_SHUFFLE_VARIABLES:
        warnings.warn(
            f"{nvars} shuffle variables exceed the exact-mode default of {MAX_SHUFFLE_VARIABLES}",
            BoundsWarning,
        )
    F = _parse_shuffle_expression(args.expression)
    if args.partial is not None:
        F = partial_k(F, args.partial)
    results = {"n": F.n, "value": str(F)}
    if args.wheel:
        results["wheel"] = wheel_check(F)
    inputs = {"expression": args.expression, "partial": args.partial, "wheel": args.wheel}
    return _report("shuffle", inputs, results, [])


def _suite_size(relation: str, n_max: int) -> int:
    """Strands (cocenter) or variables (shuffle) of the largest instance."""
    if relation in ("rel-a1", "rel-shuf"):
        return n_max
    if relation == "rel-a2":
        return n_max + 1
    return 2 if relation == "tor1" else 3


def cmd_verify(args) -> dict:
    size = _suite_size(args.relation, args.n_max)
    if args.target == "cocenter" and args.n_max > DEFAULT_N_MAX:
        warnings.warn(f"n_max = {args.n_max} exceeds the exact-mode default of {DEFAULT_N_MAX}",
                      BoundsWarning)
    if args.target == "shuffle" and args.mode == "exact" and size > MAX_SHUFFLE_VARIABLES:
        warnings.warn(
            f"{size} shuffle variables exceed the exact-mode default of {MAX_SHUFFLE_VARIABLES}",
            BoundsWarning,
        )
    probe = probe_point(args.seed) if args.mode == "probe" else None
    report = verify_suite(args.relation, args.target, args.n_max, args.d_max, args.k_max, probe)
    inputs = {
        "relation": args.relation, "target": args.target, "n_max": args.n_max,
        "d_max": args.d_max, "k_max": args.k_max, "mode": report.mode,
        "seed": args.seed if report.mode == "probe" else None,
    }
    results = {"instances": report.instances, "failures": len(report.failures)}
    return _report("verify", inputs, results, report.failures)


def cmd_reduce(args) -> dict:
    n, m = args.strands, args.row_sum
    if n > MAX_SHUFFLE_VARIABLES:
        warnings.warn(f"n = {n} exceeds the exact-mode default of {MAX_SHUFFLE_VARIABLES}",
                      BoundsWarning)
    X = reduce_single_rows(n, m)
    target = (0,) * (n - 1) + (m,)
    ok = eval_shuffle(X)[n] == r_element(target)
    results = {"element": str(X), "oracle": "pass" if ok else "fail"}
    failures = [] if ok else [{"instance": {"n": n, "m": m}, "residual": "shuffle value differs"}]
    return _report("reduce", {"n": n, "m": m}, results, failures)


# -- rendering ----------------------------------------------------------------

def _render_text(report: dict) -> str:
    r = report["results"]
    cmd = report["command"]
    lines = []
    if cmd == "classify":
        for key in ("window", "length", "degree", "newton_point", "convex_path"):
            lines.append(f"{key.replace('_', ' ')}: {r[key]}")
    elif cmd == "cocenter":
        lines.append(r["text"])
    elif cmd == "shuffle":
        lines.append(f"n: {r['n']}")
        lines.append(f"value: {r['value']}")
        if "wheel" in r:
            lines.append(f"wheel: {'true' if r['wheel'] else 'false'}")
    elif cmd == "verify":
        i = report["inputs"]
        lines.append(
            f"relation: {i['relation']}  target: {i['target']}  mode: {i['mode']}  "
            f"n_max: {i['n_max']}  d_max: {i['d_max']}  k_max: {i['k_max']}"
        )
        lines.append(f"instances: {r['instances']}")
        lines.append(f"failures: {r['failures']}")
    elif cmd == "reduce":
        lines.append(f"element: {r['element']}")
        lines.append(f"oracle: {r['oracle']}")
    for f in report["failures"]:
        lines.append("FAIL " + json.dumps(f, sort_keys=True))
    return "\n".join(lines)


def _render(report: dict, fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(report, sort_keys=True, indent=2)
    return _render_text(report)


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text",
                        help="plain text or a JSON document (default: text)")

    parser = argparse.ArgumentParser(
        prog="affinetrace",
        description="Exact computations in affine Hecke cocenters and the shuffle algebra.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common],
                       help="window, length, degree, Newton point and convex path of a word")
    p.add_argument("-n", "--strands", type=int, required=True)
    p.add_argument("expression", help='word in s<i>, pi[^k], y<i>[^k], e.g. "s1*pi"')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cocenter", parents=[common],
                       help="cocenter class of a braid word or an E-word")
    p.add_argument("-n", "--strands", type=int)
    p.add_argument("expression", help='"Y1*T1^-1*Omega" or "E(1,0)*E(0)"')
    p.set_defaults(func=cmd_cocenter)

    p = sub.add_parser("shuffle", parents=[common],
                       help="shuffle products of R_d and H_{m,n}")
    p.add_argument("expression", help='product of R(d1,...,dn) and H(m,n), e.g. "R(1,0)*R(0)"')
    p.add_argument("--wheel", action="store_true", help="also test the wheel conditions")
    p.add_argument("--partial", type=int, metavar="K", help="apply the derivation ∂_K first")
    p.set_defaults(func=cmd_shuffle)

    p = sub.add_parser("verify", parents=[common],
                       help="check every relation instance within bounds")
    p.add_argument("relation", choices=RELATIONS)
    p.add_argument("--target", choices=TARGETS, default="cocenter")
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--d-max", type=int, default=1)
    p.add_argument("--k-max", type=int, default=1)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact",
                      help="symbolic q1, q2 (default)")
    mode.add_argument("--probe", dest="mode", action="store_const", const="probe",
                      help="substitute seeded random rationals for q1, q2 (shuffle target)")
    p.add_argument("--seed", type=int, default=0, help="probe point seed (default: 0)")
    p.set_defaults(func=cmd_verify, mode="exact")

    p = sub.add_parser("reduce", parents=[common],
                       help="write E_(0,...,0,m) in one-row generators and check it")
    p.add_argument("-n", "--strands", type=int, required=True)
    p.add_argument("-m", "--row-sum", type=int, required=True)
    p.set_defaults(func=cmd_reduce)
    return parser


def _validate(parser, args):
    strands = getattr(args, "strands", None)
    if strands is not None and strands < 1:
        parser.error("-n/--strands must be positive")
    if args.command == "verify":
        if args.n_max < 1 or args.d_max < 0 or args.k_max < 0:
            parser.error("bounds must satisfy n_max >= 1, d_max >= 0, k_max >= 0")
    if args.command == "shuffle" and args.partial is not None and args.partial < 1:
        parser.error("--partial needs a positive K")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", BoundsWarning)
        try:
            report = args.func(args)
        except EXPECTED_ERRORS as exc:
            report = _report(args.command, {"expression": getattr(args, "expression", None)}, {},
                             [{"error": type(exc).__name__, "message": str(exc)}])
            if args.format == "text":
                print(f"error: {type(exc).__name__}: {exc}", file=stderr)
                _flush_warnings(caught, stderr)
                return 1
    _flush_warnings(caught, stderr)
    print(_render(report, args.format), file=stdout)
    return 1 if report["failures"] else 0


def _flush_warnings(caught, stderr):
    for w in caught:
        print(f"warning: {w.message}", file=stderr)


def main() -> None:
    sys.exit(run())
