"""``latgen``: analyze finite lattices, survey the labeled corpus, export Hasse
diagrams and run the verification suite.

Exit codes: 0 ok, 1 claim failed, 2 parse error, 3 not a lattice, 4 bound exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import corpus
from .closure import BRUTEFORCE_BOUND, analyze
from .config import ClosureConfig, Completeness
from .errors import BoundExceeded, LatgenError, ParseError
from .finite import ENUMERATION_BOUND, FiniteLattice, chain, loads
from .report import HIGHLIGHTS, dump_json, render_text, report_json, to_dot
from .suite import SuiteConfig, run_suite
from .symbolic.claims import DEFAULT_BOUND, DEFAULT_SEED, truncate
from .symbolic.engine import DEFAULT_MAX_ROUNDS

SEED_ENV = "LATGEN_SEED"


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    conventions: str = "standard"
    completeness: Completeness = Completeness.COUNTABLE
    signature: str = "lattice"
    max_size: int = BRUTEFORCE_BOUND
    bound: int = DEFAULT_BOUND
    max_rounds: int = DEFAULT_MAX_ROUNDS
    trials: int = 1000
    seed: int = DEFAULT_SEED
    fmt: str = "json"

    def __post_init__(self):
        for name in ("max_size", "bound", "max_rounds", "trials"):
            if getattr(self, name) <= 0:
                raise ParseError(f"--{name.replace('_', '-')} must be positive")

    def closure_configs(self) -> list[tuple[str, ClosureConfig]]:
        convs = ("standard", "none") if self.conventions == "both" else (self.conventions,)
        make = ClosureConfig.lattice if self.signature == "lattice" else ClosureConfig.semilattice
        return [(c, make(c, self.completeness)) for c in convs]


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError:
        raise ParseError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _int(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def load_input(spec: str) -> FiniteLattice:
    """A JSON file, ``-`` for stdin, or a built-in: ``chain:N``, ``truncate:FAMILY:K``."""
    if spec.startswith("chain:"):
        return chain(_builtin_int(spec, spec[6:]))
    if spec.startswith("truncate:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ParseError(f"expected truncate:FAMILY:K, got {spec!r}")
        return truncate(parts[1], _builtin_int(spec, parts[2]))
    try:
        text = sys.stdin.read() if spec == "-" else open(spec, encoding="utf-8").read()
    except OSError as exc:
        raise ParseError(f"cannot read {spec}: {exc.strerror}") from None
    return loads(text)


def _builtin_int(spec: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad size in {spec!r}") from None


def _emit(obj, fmt: str) -> None:
    sys.stdout.write(dump_json(obj) if fmt == "json" else render_text(obj) + "\n")


def cmd_analyze(rc: RunConfig) -> int:
    lat = load_input(rc.input)
    if lat.size > rc.max_size:
        raise BoundExceeded(f"{lat.size} elements exceed the analysis cap {rc.max_size}")
    s = lat if rc.signature == "lattice" else lat.as_meet_semilattice()
    reports = {c: analyze(s, cfg) for c, cfg in rc.closure_configs()}
    if rc.fmt == "dot":
        first = next(iter(reports.values()))
        sys.stdout.write(to_dot(lat, first, HIGHLIGHTS))
        return 0
    out = {c: report_json(r, lat) for c, r in reports.items()}
    _emit(out[rc.conventions] if len(out) == 1 else out, rc.fmt)
    return 0


def cmd_enumerate(rc: RunConfig, n: int, up_to: bool) -> int:
    if not 1 <= n <= ENUMERATION_BOUND:
        raise BoundExceeded(f"enumeration supports 1 <= n <= {ENUMERATION_BOUND}, got {n}")
    sizes = range(1, n + 1) if up_to else [n]
    out = {}
    for conv, cfg in rc.closure_configs():
        per_size = []
        total = corpus.CorpusStats(rc.signature)
        for k in sizes:
            st = corpus.survey(corpus.structures(k, rc.signature), rc.signature, cfg)
            st.sizes = [k]
            total = total.merge(st)
            per_size.append(_summary(st))
        out[conv] = {"signature": rc.signature, "total": _summary(total), "by_size": per_size}
    _emit(out[rc.conventions] if len(out) == 1 else out, rc.fmt)
    return 0 if all(v["total"]["violations"] == 0 for v in out.values()) else 1


def _summary(st: corpus.CorpusStats) -> dict:
    d = st.to_json()
    d.pop("elapsed")
    return d


def cmd_verify_paper(rc: RunConfig, samples: int, timings: bool) -> int:
    convs = ("standard", "none") if rc.conventions == "both" else (rc.conventions,)
    sc = SuiteConfig(
        conventions=convs,
        completeness=rc.completeness,
        bound=rc.bound,
        trials=rc.trials,
        seed=rc.seed,
        max_rounds=rc.max_rounds,
        samples=samples,
    )
    result = run_suite(sc)
    _emit(result.to_json(timings), rc.fmt)
    for rec in result.failed():
        print(f"claim failed: {rec.claim_id}", file=sys.stderr)
    return result.exit_code


def cmd_export_dot(rc: RunConfig, highlight: Sequence[str]) -> int:
    if rc.conventions == "both":
        raise ParseError("export-dot takes a single convention")
    lat = load_input(rc.input)
    report = None
    if highlight:
        if lat.size > rc.max_size:
            raise BoundExceeded(f"{lat.size} elements exceed the analysis cap {rc.max_size}")
        report = analyze(lat, rc.closure_configs()[0][1])
    sys.stdout.write(to_dot(lat, report, highlight))
    return 0


def _highlights(text: str) -> list[str]:
    items = [h for h in text.split(",") if h]
    bad = [h for h in items if h not in HIGHLIGHTS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown highlight {bad}; choose from {HIGHLIGHTS}")
    return items


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(ParseError.exit_code)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--conventions", choices=["both", "standard", "none"], default=None)
    common.add_argument("--completeness", choices=[c.value for c in Completeness], default="countable")
    common.add_argument("--signature", choices=corpus.SIGNATURES, default="lattice")
    common.add_argument("--bound", type=_int, default=DEFAULT_BOUND, help="instance bound B for parametric claims")
    common.add_argument("--trials", type=_int, default=1000)
    common.add_argument("--seed", type=_int, default=None, help=f"default from ${SEED_ENV}, else {DEFAULT_SEED:#x}")
    common.add_argument("--max-rounds", type=_int, default=DEFAULT_MAX_ROUNDS)
    common.add_argument("--max-size", type=_int, default=BRUTEFORCE_BOUND, help="analysis cap on carrier size")
    common.add_argument("--format", choices=["json", "dot", "text"], default="json")

    p = _Parser(prog="latgen", description="Non-generators and Frattini sets of lattices and semilattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="Γ, Φ, indispensables and maximal substructures")
    a.add_argument("input", help="lattice JSON file, '-', chain:N or truncate:FAMILY:K")

    e = sub.add_parser("enumerate", parents=[common], help="survey every labeled structure of a given size")
    e.add_argument("n", type=_int)
    e.add_argument("--up-to", action="store_true", help="all sizes 1..n")

    v = sub.add_parser("verify-paper", parents=[common], help="run the verification suite")
    v.add_argument("--samples", type=_int, default=1000, help="random 6-element semilattices")
    v.add_argument("--timings", action="store_true", help="include elapsed seconds (not deterministic)")

    d = sub.add_parser("export-dot", parents=[common], help="Hasse diagram in Graphviz DOT")
    d.add_argument("input")
    d.add_argument("--highlight", type=_highlights, default=[], help="comma list of gamma,phi,maximal")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code
    try:
        conventions = args.conventions or ("both" if args.command == "verify-paper" else "standard")
        fmt = args.format
        if fmt == "dot" and args.command not in ("analyze", "export-dot"):
            raise ParseError("--format dot applies to analyze and export-dot")
        rc = RunConfig(
            command=args.command,
            input=getattr(args, "input", None),
            conventions=conventions,
            completeness=Completeness(args.completeness),
            signature=args.signature,
            max_size=args.max_size,
            bound=args.bound,
            max_rounds=args.max_rounds,
            trials=args.trials,
            seed=args.seed if args.seed is not None else default_seed(),
            fmt=fmt,
        )
        if args.command == "analyze":
            return cmd_analyze(rc)
        if args.command == "enumerate":
            return cmd_enumerate(rc, args.n, args.up_to)
        if args.command == "verify-paper":
            if args.samples < 0:
                raise ParseError("--samples must be non-negative")
            return cmd_verify_paper(rc, args.samples, args.timings)
        return cmd_export_dot(rc, args.highlight)
    except LatgenError as exc:
        print(f"latgen: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
