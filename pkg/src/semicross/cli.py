"""Command-line front end.

Exit codes: 0 positive verdict, 1 negative verdict, 2 input error,
3 power iteration did not converge, 4 the brute-force oracle disagrees.
"""

from __future__ import annotations

import argparse
import sys as _sys
from typing import Sequence

from .algebra import AlgebraElement
from .compactness.approximant import finite_rank_approximant
from .compactness.certify import (
    Certificate,
    certify_element_compact,
    certify_mult_compact,
    ideal_membership,
)
from .compactness.conditions import check_pair, oracle_check_pair, stabilization_bound
from .compactness.witness import verify_separation, witness_family
from .dynsys import everything, recurrent_set, taxonomy, wandering_set
from .errors import NoConvergence, NotCompact, SemicrossError
from .io import (
    approximant_to_dict,
    certificate_to_dict,
    dumps,
    load_workspace,
    number_to_json,
    pair_to_dict,
    witness_to_dict,
)
from .rep import TruncationSpec, build_truncated_rep, norm_sandwich

EXIT_POSITIVE, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NOCONV, EXIT_ORACLE = 0, 1, 2, 3, 4


def cmd_classify(args) -> int:
    ws = load_workspace(args.file)
    sys = ws.system
    xi, xa, xai = taxonomy(sys)
    report = {
        "X_i": xi.describe(),
        "X_a": xa.describe(),
        "X_ai": xai.describe(),
        "X_r": recurrent_set(sys).describe(),
        "X_w": wandering_set(sys).describe(),
        "X_nw": (everything(sys) - wandering_set(sys)).describe(),
    }
    print(dumps(report), end="")
    return EXIT_POSITIVE


def _oracle_pairs(sys, a: AlgebraElement, b: AlgebraElement) -> list[dict]:
    out = []
    for m, f in a.items():
        for n, g in b.items():
            bound = stabilization_bound(sys, f, g, n) + 10
            exact = check_pair(sys, f, m, g, n)
            brute = oracle_check_pair(sys, f, m, g, n, bound, bound)
            out.append({"m": m, "n": n, "horizon": bound, "agree": exact == brute,
                        "oracle": pair_to_dict(brute)})
    return out


def cmd_certify(args) -> int:
    ws = load_workspace(args.file)
    sys = ws.system
    if args.ideal:
        a = ws.element(args.ideal)
        cert: Certificate = ideal_membership(sys, a)
        pair = None
    elif args.element:
        a = ws.element(args.element)
        cert = certify_element_compact(sys, a)
        pair = (a, a)
    else:
        if len(args.elements) != 2:
            raise SemicrossError("certify needs two elements A B, --element A or --ideal A")
        a, b = (ws.element(r) for r in args.elements)
        cert = certify_mult_compact(sys, a, b, args.method)
        pair = (a, b)

    report = certificate_to_dict(cert)
    code = EXIT_POSITIVE if cert.positive else EXIT_NEGATIVE

    if args.witness is not None and pair is not None and cert.minimal_indices() is not None:
        fam = witness_family(sys, *pair, cert.pairs, args.witness)
        report["witnesses"] = witness_to_dict(fam, verify_separation(sys, *pair, fam))

    if args.approximate is not None and pair is not None:
        approx = []
        for m, f in pair[0].items():
            for n, g in pair[1].items():
                try:
                    ap = finite_rank_approximant(sys, AlgebraElement.monomial(m, f),
                                                 AlgebraElement.monomial(n, g), args.approximate)
                except NotCompact as exc:
                    approx.append({"m": m, "n": n, "error": str(exc)})
                else:
                    approx.append(approximant_to_dict(ap))
        report["approximant"] = approx

    if args.oracle and pair is not None:
        checks = _oracle_pairs(sys, *pair)
        report["oracle"] = checks
        if not all(c["agree"] for c in checks):
            code = EXIT_ORACLE

    print(dumps(report), end="")
    return code


def cmd_repnorm(args) -> int:
    if not args.tol > 0:
        raise SemicrossError("--tol must be positive")
    if args.window < 0 or args.depth < 0:
        raise SemicrossError("--window and --depth must be non-negative")
    ws = load_workspace(args.file)
    a = ws.element(args.element)
    spec = TruncationSpec(args.window, args.depth)
    lower, estimate, upper = norm_sandwich(ws.system, a, spec, args.tol)
    if args.dump:
        with open(args.dump, "w") as fh:
            build_truncated_rep(ws.system, a, spec).dump_coo(fh)
    report = {"norms": {"lower": number_to_json(lower), "estimate": estimate,
                        "upper": number_to_json(upper)},
              "window": args.window, "depth": args.depth, "tol": args.tol}
    print(dumps(report), end="")
    return EXIT_POSITIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semicross",
        description="Compactness of multiplication operators on semicrossed products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print the point taxonomy of a system")
    p.add_argument("file", help="workspace JSON file or bundled fixture name")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certify", help="decide compactness or ideal membership")
    p.add_argument("file")
    p.add_argument("elements", nargs="*", metavar="ELEMENT",
                   help="two element names (or inline 'deg:func,...') for T -> A T B")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--element", metavar="A", help="certify the element A (T -> A T A)")
    mode.add_argument("--ideal", metavar="A", help="membership in the ideal of compact elements")
    p.add_argument("--method", choices=["general", "discrete", "perfect"],
                   help="force a decision procedure")
    p.add_argument("--witness", type=int, metavar="N", help="append N separated witnesses")
    p.add_argument("--approximate", type=int, metavar="K",
                   help="append finite-rank approximants at cutoff level K")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check every pair against the brute-force oracle")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("repnorm", help="bracket the operator norm of an element")
    p.add_argument("file")
    p.add_argument("element")
    p.add_argument("--window", type=int, default=10, metavar="W")
    p.add_argument("--depth", type=int, default=10, metavar="K")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--dump", metavar="PATH", help="write the matrix as a coordinate list")
    p.set_defaults(func=cmd_repnorm)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoConvergence as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_NOCONV
    except (SemicrossError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    _sys.exit(main())
