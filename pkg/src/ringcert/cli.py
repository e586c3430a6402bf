"""Command line front end.

Exit codes::

    0  success
    1  usage error (bad flags, unsupported ring for the command, generator cap hit)
    2  input error (unreadable file, malformed instance or certificate)
    3  hypothesis fails (an invertible transversal submatrix exists)
    4  verification failure (certificate rejected)
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .echelon import reduce as echelon_reduce
from .engine import certify
from .errors import (
    CertificateError,
    GenerationError,
    HypothesisFailure,
    RingcertError,
    UnsupportedRingError,
)
from .formats import (
    Instance,
    ParseError,
    dump_certificate,
    dump_instance,
    dumps,
    echelon_to_json,
    parse_certificate,
    parse_instance,
    rado_to_json,
)
from .oracle import DEFAULT_MAX_ATTEMPTS, PRNG_ALGORITHM, InstanceSpec, generate, verify_certificate
from .rado import rado_condition
from .rings import Ring
from .transversal import invertible_transversal

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_HYPOTHESIS = 3
EXIT_VERIFY = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_ring_arg(text: str) -> Ring:
    """Ring from ``Z``, ``Q``, ``Z/6``, ``Zmod6``, ``GF(2)``, ``GF2`` or a JSON descriptor."""
    t = text.strip()
    if t in ("Z", "Q"):
        return Ring.from_json(t)
    m = re.fullmatch(r"(?:Z/|Zmod:?)(\d+)", t) or re.fullmatch(r"Z/\((\d+)\)", t)
    if m:
        return Ring.mod(int(m.group(1)))
    m = re.fullmatch(r"GF\(?:?(\d+)\)?", t)
    if m:
        return Ring.gf(int(m.group(1)))
    try:
        return Ring.from_json(json.loads(t))
    except (ValueError, json.JSONDecodeError):
        raise argparse.ArgumentTypeError(f"unrecognised ring {text!r}") from None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _fmt_cols(cols) -> str:
    return "{" + ",".join(str(c) for c in cols) + "}"


def cmd_check(args) -> int:
    inst = parse_instance(_read(args.instance))
    M = inst.matrix
    witness = invertible_transversal(M, inst.partition)
    if witness is None:
        print("hypothesis: HOLDS")
        return EXIT_OK
    cols, det = witness
    print(f"hypothesis: FAILS, witness columns {_fmt_cols(cols)}, determinant {M.ring.format(det)}")
    return EXIT_HYPOTHESIS


def cmd_certify(args) -> int:
    inst = parse_instance(_read(args.instance))
    try:
        cert = certify(inst.matrix, inst.partition)
    except HypothesisFailure as exc:
        print(
            f"hypothesis: FAILS, witness columns {_fmt_cols(exc.columns)}, "
            f"determinant {exc.ring.format(exc.determinant)}"
        )
        return EXIT_HYPOTHESIS
    except CertificateError as exc:
        print(f"certify: internal verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text = dump_certificate(cert)
    # check what is actually written, not the in-memory object
    check = verify_certificate(inst.matrix, inst.partition, parse_certificate(text))
    if not check.ok:
        print(f"certify: internal verification failed: {check.diagnostic}", file=sys.stderr)
        return EXIT_VERIFY
    _write(args.output, text)
    print(f"certified: branch {cert.branch.value}, m = {cert.m}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    cert = parse_certificate(_read(args.certificate))
    if cert.Q.ring != inst.matrix.ring:
        print("certificate: INVALID: ring differs from the instance", file=sys.stderr)
        return EXIT_VERIFY
    check = verify_certificate(inst.matrix, inst.partition, cert)
    if not check.ok:
        print(f"certificate: INVALID: {check.diagnostic}", file=sys.stderr)
        return EXIT_VERIFY
    print("certificate: VALID")
    return EXIT_OK


def cmd_echelon(args) -> int:
    inst = parse_instance(_read(args.instance))
    sys.stdout.write(dumps(echelon_to_json(echelon_reduce(inst.matrix))))
    return EXIT_OK


def cmd_rado(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.k < 0:
        raise UsageError("-k must be non-negative")
    report = rado_condition(inst.matrix, inst.partition, args.k)
    sys.stdout.write(dumps(rado_to_json(report)))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = InstanceSpec(args.ring, args.p, args.q, args.n, args.entry_bound, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    M, partition = generate(spec, args.require_hypothesis, args.max_attempts)
    meta = {
        "algorithm": PRNG_ALGORITHM,
        "seed": args.seed,
        "p": args.p,
        "q": args.q,
        "n": args.n,
        "entryBound": args.entry_bound,
        "requireHypothesis": args.require_hypothesis,
    }
    _write(args.output, dump_instance(Instance(M, partition, meta)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ringcert",
        description="Transversal submatrices of column-partitioned matrices over rings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide whether an invertible transversal submatrix exists")
    p.add_argument("instance")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify", help="construct and self-verify a certificate")
    p.add_argument("instance")
    p.add_argument("-o", "--output", help="certificate path (default: stdout)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="independently verify a certificate")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("echelon", help="print Q, QM and t of the reduced echelon form")
    p.add_argument("instance")
    p.set_defaults(func=cmd_echelon)

    p = sub.add_parser("rado", help="rank condition for an independent partial transversal")
    p.add_argument("instance")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_rado)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--ring", type=parse_ring_arg, required=True)
    p.add_argument("-p", type=int, required=True, help="rows")
    p.add_argument("-q", type=int, required=True, help="columns")
    p.add_argument("-n", type=int, required=True, help="blocks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=3)
    p.add_argument("--require-hypothesis", action="store_true")
    p.add_argument("--max-attempts", type=int, default=DEFAULT_MAX_ATTEMPTS)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"{parser.prog} {args.command}: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, UnsupportedRingError, GenerationError) as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RingcertError as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
