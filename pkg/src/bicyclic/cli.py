"""Command-line surface.

Three command groups:

* ``alg``    - element arithmetic: normal form, products, the involution,
               truncated shift matrices, the Laurent image.
* ``ext``    - extension specs from JSON files: validation, the split and
               isomorphism oracles, equivalence, classification.
* ``verify`` - the full claim suite, as JSON, text, or (for the link graph)
               DOT output.

Exit codes: 0 on success, 1 when a check fails or a structured verdict is
negative on an invalid input, 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import ParseError, laurent_image, involution, parse_element, to_matrix, _frac_text
from .claims import RunConfig, run_verify, verify_link_graph
from .extensions import (
    IncompatibleDelta,
    Iso,
    Split,
    classify,
    equivalence_test,
    iso_test,
    spec_from_json,
    split_certificate,
    split_test,
    validate_delta,
)
from .modules import ShapeMismatch


def _print_json(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _load_spec(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None
    except json.JSONDecodeError as exc:
        print(f"bad JSON in {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None
    return spec_from_json(data)


def _cmd_alg(args) -> int:
    try:
        if args.alg_cmd == "nf":
            print(parse_element(args.element).to_text())
        elif args.alg_cmd == "mul":
            print((parse_element(args.left) * parse_element(args.right)).to_text())
        elif args.alg_cmd == "eta":
            print(involution(parse_element(args.element)).to_text())
        elif args.alg_cmd == "laurent":
            print(laurent_image(parse_element(args.element)).to_text())
        elif args.alg_cmd == "rep":
            mat = to_matrix(parse_element(args.element), args.dim)
            for row in mat.rows:
                print(" ".join(_frac_text(v) for v in row))
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    return 0


def _cmd_ext(args) -> int:
    try:
        if args.ext_cmd == "validate":
            spec = _load_spec(args.spec)
            validate_delta(spec)
            _print_json({"valid": True})
            return 0
        if args.ext_cmd == "split":
            spec = _load_spec(args.spec)
            result = split_test(spec)
            _print_json(
                {
                    "verdict": "split" if isinstance(result, Split) else "nonsplit",
                    "certificate": split_certificate(spec, result),
                }
            )
            return 0
        if args.ext_cmd == "classify":
            spec = _load_spec(args.spec)
            _print_json(classify(spec).to_json())
            return 0
        spec_a = _load_spec(args.left)
        spec_b = _load_spec(args.right)
        if args.ext_cmd == "iso":
            result = iso_test(spec_a, spec_b)
            if isinstance(result, Iso):
                _print_json(
                    {
                        "isomorphic": True,
                        "intertwiner": {
                            "a": _frac_text(result.a),
                            "b": _frac_text(result.b),
                            "w": {str(n): _frac_text(c) for n, c in result.w.coords()},
                            "lower": _frac_text(result.lower),
                        },
                    }
                )
            else:
                _print_json({"isomorphic": False, "reason": result.reason})
            return 0
        if args.ext_cmd == "equiv":
            _print_json({"equivalent": equivalence_test(spec_a, spec_b)})
            return 0
    except IncompatibleDelta as exc:
        _print_json(
            {
                "error": {
                    "type": "IncompatibleDelta",
                    "basis_index": exc.index,
                    "residual": {str(n): _frac_text(c) for n, c in exc.residual.coords()},
                }
            }
        )
        return 1
    except ShapeMismatch as exc:
        _print_json({"error": {"type": "ShapeMismatch", "message": str(exc)}})
        return 1
    except (KeyError, ValueError) as exc:
        print(f"bad extension spec: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def _cmd_verify(args) -> int:
    config = RunConfig(max_degree=args.max_degree, slack_cap=args.slack_cap, seed=args.seed)
    report = run_verify(config)
    if args.format == "dot":
        dot = verify_link_graph(config).to_dot()
        if not args.out:
            print(dot, end="")
            print(report.to_text(), end="", file=sys.stderr)
            return report.exit_code
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot)
        print(report.to_json_text(), end="")
        return report.exit_code
    payload = report.to_json_text() if args.format == "json" else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        print(payload, end="")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicyclic",
        description="exact computation in k<x,y>/(yx-1): elements, simple "
        "modules, extensions, ideals, and the claim verification suite",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("alg", help="element arithmetic")
    alg_sub = alg.add_subparsers(dest="alg_cmd", required=True)
    p = alg_sub.add_parser("nf", help="normal form of an element")
    p.add_argument("element")
    p = alg_sub.add_parser("mul", help="product of two elements")
    p.add_argument("left")
    p.add_argument("right")
    p = alg_sub.add_parser("eta", help="the involution x <-> y")
    p.add_argument("element")
    p = alg_sub.add_parser("rep", help="truncated shift-matrix representation")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("element")
    p = alg_sub.add_parser("laurent", help="image in the Laurent quotient")
    p.add_argument("element")

    ext = sub.add_parser("ext", help="extension specs from JSON files")
    ext_sub = ext.add_subparsers(dest="ext_cmd", required=True)
    for name, help_text in (
        ("validate", "check the compatibility condition"),
        ("split", "run the split oracle"),
        ("classify", "case analysis with claimed-versus-oracle comparison"),
    ):
        p = ext_sub.add_parser(name, help=help_text)
        p.add_argument("spec")
    for name, help_text in (
        ("iso", "exact intertwiner search between two specs"),
        ("equiv", "equivalence of two short exact sequences"),
    ):
        p = ext_sub.add_parser(name, help=help_text)
        p.add_argument("left")
        p.add_argument("right")

    ver = sub.add_parser("verify", help="run the claim suite")
    ver.add_argument("--max-degree", type=int, default=6)
    ver.add_argument("--slack-cap", type=int, default=6)
    ver.add_argument("--seed", type=int, default=1202)
    ver.add_argument("--format", choices=("json", "text", "dot"), default="json")
    ver.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "alg":
        return _cmd_alg(args)
    if args.command == "ext":
        return _cmd_ext(args)
    return _cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
