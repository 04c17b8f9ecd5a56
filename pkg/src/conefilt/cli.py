"""Command-line interface.

Subcommands: ``basis``, ``filtration``, ``classify``, ``generate``,
``certify``, ``verify``.  Machine-readable JSON goes to stdout; human
diagnostics go to stderr.  Exit codes: 0 success, 1 verified negative,
2 unknown (the sampling search proved nothing), 3 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificates import (
    CertificateError,
    SampleSchedule,
    banded_gram,
    certificate_from_json,
    certificate_to_json,
    non_membership,
    verify_certificate,
)
from .circuits import (
    CircuitDecomposition,
    analyze,
    circuit_nonnegativity,
    decomposition_to_json,
)
from .filtration import ClassificationError, level_bounds, profile
from .forms import FormParseError, parse_form
from .generators import complete_set, separator
from .monomials import basis

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 3 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _fail(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return EXIT_ERROR


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _load_form(path: str):
    return parse_form(_load_json(path))


def cmd_basis(args) -> int:
    b = basis(args.n, args.d)
    doc = {"n": args.n, "d": args.d, "k": b.k, "size": b.k + 1}
    if args.rank is not None:
        doc["rank"] = args.rank
        doc["exponent"] = list(b.unrank(args.rank))
    elif args.list:
        doc["exponents"] = [list(e) for e in b.exponents]
    _emit(doc)
    return EXIT_OK


def cmd_filtration(args) -> int:
    _emit(profile(args.n, args.d).to_json())
    return EXIT_OK


def cmd_classify(args) -> int:
    form = _load_form(args.form)
    report = level_bounds(
        form,
        assert_extremal=args.assert_extremal,
        assert_not_sos=args.assert_not_sos,
    )
    doc = report.to_json()
    cd = analyze(form)
    if isinstance(cd, CircuitDecomposition):
        doc["circuit"] = decomposition_to_json(cd, circuit_nonnegativity(cd))
    _emit(doc)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.complete:
        records = complete_set(args.n, args.d)
        _emit([r.to_json() for r in records])
    else:
        _emit(separator(args.n, args.d, args.level).to_json())
    return EXIT_OK


def cmd_certify(args) -> int:
    form = _load_form(args.form)
    if args.mode == "member":
        cert = banded_gram(form, args.level)
        if cert is None:
            sys.stderr.write(
                "not representable: some support exponent has no product "
                f"decomposition within rank {form.n + args.level}\n"
            )
            _emit({"kind": "no_member_certificate", "level": args.level})
            return EXIT_NEGATIVE
        _emit(certificate_to_json(cert))
        return EXIT_OK
    schedule = SampleSchedule(max_tail_exponent=args.max_tail_exp, seed=args.seed)
    cert = non_membership(form, args.level, schedule)
    if cert is None:
        sys.stderr.write(
            "sampling exhausted without an infeasible subsystem; "
            "membership remains undecided\n"
        )
        _emit({"kind": "unknown", "level": args.level})
        return EXIT_UNKNOWN
    _emit(certificate_to_json(cert))
    return EXIT_OK


def cmd_verify(args) -> int:
    form = _load_form(args.form)
    cert = certificate_from_json(_load_json(args.certificate))
    ok, reason = verify_certificate(form, cert)
    _emit({"valid": ok, "reason": reason})
    if ok:
        return EXIT_OK
    sys.stderr.write(f"invalid certificate: {reason}\n")
    return EXIT_NEGATIVE


def _build_parser() -> _Parser:
    parser = _Parser(prog="conefilt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="monomial basis inspection")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--rank", type=int, default=None)
    group.add_argument("--list", action="store_true")
    p.set_defaults(handler=cmd_basis)

    p = sub.add_parser("filtration", help="chain layout and mu")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(handler=cmd_filtration)

    p = sub.add_parser("classify", help="chain placement of a circuit form")
    p.add_argument("--form", required=True, help="form JSON file")
    p.add_argument("--assert-extremal", action="store_true")
    p.add_argument("--assert-not-sos", action="store_true")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("generate", help="separating forms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--level", type=int, default=None)
    group.add_argument("--complete", action="store_true")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("certify", help="produce a membership or Farkas certificate")
    p.add_argument("--form", required=True, help="form JSON file")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--mode", choices=("member", "nonmember"), required=True)
    p.add_argument("--max-tail-exp", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("verify", help="replay a certificate")
    p.add_argument("--certificate", required=True, help="certificate JSON file")
    p.add_argument("--form", required=True, help="form JSON file")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (
        FormParseError,
        CertificateError,
        ClassificationError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
