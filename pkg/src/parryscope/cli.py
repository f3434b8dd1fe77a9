"""Command line interface.

Exit codes are stable contracts: 0 success, 1 usage or parse error,
2 validation failure, 3 construction not applicable, 4 internal
verification failure (including oracle disagreement in a scan).
Single-object commands emit JSON; corpus scans emit TSV by default.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from itertools import product

from . import analysis, numeration, substitution
from .errors import (
    BudgetExceeded,
    DigitRangeError,
    DigitwiseSubtractionFailed,
    EmptyWordError,
    InadmissibleInput,
    LetterRangeError,
    MixedBaseError,
    NonIntegerExpansionError,
    NotApplicable,
    ParryViolation,
    ParryscopeError,
    TrailingZeroError,
    UsageError,
    VerificationFailed,
    ZeroHasNoPredecessor,
)
from .words import fmt, word

_VALIDATION_ERRORS = (
    EmptyWordError,
    TrailingZeroError,
    ParryViolation,
    DigitRangeError,
    InadmissibleInput,
    ZeroHasNoPredecessor,
    LetterRangeError,
    MixedBaseError,
    NonIntegerExpansionError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _error_json(exc):
    info = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParryViolation):
        info["suffix_index"] = exc.index
    if isinstance(exc, NotApplicable):
        info["reason"] = exc.reason
    if isinstance(exc, VerificationFailed):
        info["condition"] = exc.condition
    return {"error": info}


def _base(args):
    return numeration.validate_renyi(word(args.d))


# ---------------------------------------------------------------------------
# corpus specification


@dataclass
class CorpusSpec:
    """Finite family of candidate digit words, e.g. "m=2..4,digit<=2,tm=1"."""

    m_min: int = 2
    m_max: int = 4
    digit_bound: int = 2
    tm: str = "any"  # "any" | "=1" | ">=2"
    power: str = "any"  # "any" | "power" | "nonpower"

    @classmethod
    def parse(cls, text: str) -> "CorpusSpec":
        spec = cls()
        for raw in text.split(","):
            tok = raw.strip()
            if not tok:
                continue
            if tok.startswith("m="):
                rng = tok[2:]
                if ".." in rng:
                    a, b = rng.split("..")
                    spec.m_min, spec.m_max = int(a), int(b)
                else:
                    spec.m_min = spec.m_max = int(rng)
            elif tok.startswith("digit<="):
                spec.digit_bound = int(tok[len("digit<="):])
            elif tok == "tm=1":
                spec.tm = "=1"
            elif tok == "tm>=2":
                spec.tm = ">=2"
            elif tok in ("power", "nonpower"):
                spec.power = tok
            else:
                raise UsageError(f"unknown corpus token: {tok!r}")
        if spec.m_min < 1 or spec.m_max < spec.m_min:
            raise UsageError("corpus m range is empty")
        return spec

    def members(self):
        """All valid expansions in the family, plus the count of rejected
        candidates, in deterministic enumeration order."""
        out = []
        skipped = 0
        for m in range(self.m_min, self.m_max + 1):
            for t in product(range(self.digit_bound + 1), repeat=m):
                if t[0] < 1 or t[-1] < 1:
                    continue
                if self.tm == "=1" and t[-1] != 1:
                    continue
                if self.tm == ">=2" and t[-1] < 2:
                    continue
                try:
                    d = numeration.validate_renyi(t)
                except ParryscopeError:
                    skipped += 1
                    continue
                if self.power != "any" and m >= 2:
                    from .words import satisfies_power_condition

                    is_pow = satisfies_power_condition(t[:-1])
                    if self.power == "power" and not is_pow:
                        continue
                    if self.power == "nonpower" and is_pow:
                        continue
                out.append(d)
        return out, skipped


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    try:
        d = _base(args)
    except _VALIDATION_ERRORS as exc:
        body = {"valid": False, "d": args.d}
        body.update(_error_json(exc))
        _emit(body)
        return 2
    _emit({"valid": True, "d": fmt(d.digits), "m": d.m})
    return 0


def cmd_classify(args):
    # the oracle flag is reported, not enforced: a short oracle range is
    # inconclusive for a non-affine verdict (scan is the enforcing harness)
    d = _base(args)
    _emit(analysis.full_report(d, oracle_n=args.oracle_n, budget=args.prefix_budget))
    return 0


def cmd_witness(args):
    d = _base(args)
    try:
        bundle = analysis.construct_witness(d)
    except NotApplicable as exc:
        body = _error_json(exc)
        body["classification"] = analysis.classify_affine(d).to_json()
        _emit(body)
        return 3
    verification = analysis.verify_witness(d, bundle)
    _emit({"bundle": bundle.to_json(), "verification": verification.to_json()})
    return 0


def cmd_generate(args):
    d = _base(args)
    prefix = substitution.fixed_point_prefix(d, args.length)
    s = substitution.build_substitution(d)
    _emit({
        "d": fmt(d.digits),
        "length": args.length,
        "prefix": fmt(prefix),
        "substitution": s.to_json(),
    })
    return 0


def _zero_alias(text):
    return () if text in ("", "0") else word(text)


def cmd_betaint(args):
    d = _base(args)
    if args.op == "succ":
        y = _zero_alias(args.args[0] if args.args else "")
        letter = numeration.succ_gap_letter(d, y)
        nxt = numeration.next_admissible(d, y)
        _emit({
            "d": fmt(d.digits),
            "word": fmt(y),
            "next": fmt(nxt),
            "gap_letter": letter,
            "gap_coords": numeration.t_orbit(d, letter).to_json()["coords"],
        })
    elif args.op == "pred":
        if not args.args:
            raise UsageError("betaint pred needs a word argument")
        y = _zero_alias(args.args[0])
        letter = numeration.pred_gap_letter(d, y)
        _emit({
            "d": fmt(d.digits),
            "word": fmt(y),
            "gap_letter": letter,
            "gap_coords": numeration.t_orbit(d, letter).to_json()["coords"],
        })
    elif args.op == "coding":
        if len(args.args) < 2:
            raise UsageError("betaint coding needs START and COUNT")
        start = _zero_alias(args.args[0])
        count = int(args.args[1])
        _emit({
            "d": fmt(d.digits),
            "start": fmt(start),
            "count": count,
            "coding": fmt(numeration.coding_of_segment(d, start, count)),
        })
    elif args.op == "expand":
        if not args.args:
            raise UsageError("betaint expand needs an integer argument")
        n = int(args.args[0])
        try:
            e = numeration.greedy_expand_integer(d, n)
            exact = True
        except numeration.FractionalBudgetExceeded as exc:
            e = exc.partial
            exact = False
        _emit({"d": fmt(d.digits), "n": n, "expansion": str(e), "exact": exact})
    else:
        raise UsageError(f"unknown betaint operation: {args.op}")
    return 0


def cmd_specials(args):
    d = _base(args)
    budget = args.prefix_budget
    if args.kind == "left":
        if args.n is None:
            raise UsageError("specials left needs -n LENGTH")
        report = analysis.special_factors(d, args.n, budget)
        _emit(report.to_json())
    elif args.kind == "maximal":
        bound = args.length_bound or 2 * (d.t1 + d.digits[-1])
        found = analysis.maximal_left_special(d, bound, budget)
        _emit({
            "d": fmt(d.digits),
            "length_bound": bound,
            "maximal_left_special": [fmt(w) for w in found],
        })
    elif args.kind == "tridents":
        bound = args.length_bound or 2 * (d.t1 + d.digits[-1])
        found = analysis.find_tridents(d, bound, budget)
        _emit({
            "d": fmt(d.digits),
            "length_bound": bound,
            "tridents": [t.to_json() for t in found],
        })
    else:
        raise UsageError(f"unknown specials kind: {args.kind}")
    return 0


def _scan_row(d, oracle_n, budget):
    cls = analysis.classify_affine(d, oracle_n=oracle_n, budget=budget)
    row = {
        "d": fmt(d.digits),
        "m": d.m,
        "verdict": "affine" if cls.affine else "not_affine",
        "reason": cls.reason or "",
        "slope": cls.slope if cls.affine else "",
        "oracle_affine": "",
        "agrees": "",
        "stabilized": "",
        "prefix_length": "",
    }
    if cls.oracle is not None:
        row["oracle_affine"] = cls.oracle.affine
        row["agrees"] = cls.oracle.agrees if cls.oracle.stabilized else ""
        row["stabilized"] = cls.oracle.stabilized
        row["prefix_length"] = cls.oracle.prefix_length_used
    return row, cls


def cmd_scan(args):
    spec = CorpusSpec.parse(args.corpus)
    members, skipped = spec.members()
    rows = []
    disagreement = False
    for d in members:
        row, cls = _scan_row(d, args.oracle_n, args.prefix_budget)
        rows.append(row)
        if cls.oracle is not None and cls.oracle.stabilized and not cls.oracle.agrees:
            disagreement = True
    if args.format == "json":
        _emit({
            "corpus": args.corpus,
            "skipped": skipped,
            "rows": rows,
            "agreement": not disagreement,
        })
    else:
        cols = ["d", "m", "verdict", "reason", "slope", "oracle_affine",
                "agrees", "stabilized", "prefix_length"]
        print("\t".join(cols))
        for row in rows:
            print("\t".join(str(row[c]) for c in cols))
    return 4 if disagreement else 0


# ---------------------------------------------------------------------------


def _build_parser():
    parser = _Parser(prog="parryscope", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budget(p):
        p.add_argument("--prefix-budget", type=int, default=None,
                       help="maximum fixed point prefix length for factor scans")

    p = sub.add_parser("validate", help="validate a digit word as an expansion of 1")
    p.add_argument("d")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="affineness of the factor complexity")
    p.add_argument("d")
    p.add_argument("--oracle-n", type=int, default=None,
                   help="cross-check the verdict by enumeration up to this length")
    add_budget(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="construct and verify the non-affine witness")
    p.add_argument("d")
    add_budget(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("generate", help="prefix of the substitution fixed point")
    p.add_argument("d")
    p.add_argument("-L", "--length", type=int, required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("betaint", help="beta-integer operations")
    p.add_argument("d")
    p.add_argument("op", choices=["succ", "pred", "coding", "expand"])
    p.add_argument("args", nargs="*")
    p.set_defaults(func=cmd_betaint)

    p = sub.add_parser("specials", help="special factor inventories")
    p.add_argument("d")
    p.add_argument("kind", choices=["left", "maximal", "tridents"])
    p.add_argument("-n", type=int, default=None, help="factor length for 'left'")
    p.add_argument("--length-bound", type=int, default=None)
    add_budget(p)
    p.set_defaults(func=cmd_specials)

    p = sub.add_parser("scan", help="classify a corpus of bases")
    p.add_argument("--corpus", required=True,
                   help='e.g. "m=2..4,digit<=2,tm=1,nonpower"')
    p.add_argument("--oracle-n", type=int, default=None)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    add_budget(p)
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _VALIDATION_ERRORS as exc:
        _emit(_error_json(exc))
        return 2
    except NotApplicable as exc:
        _emit(_error_json(exc))
        return 3
    except (VerificationFailed, BudgetExceeded, DigitwiseSubtractionFailed) as exc:
        _emit(_error_json(exc))
        return 4


if __name__ == "__main__":
    sys.exit(main())
