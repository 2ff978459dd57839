"""Command-line front end.

Exit codes: 0 success or Pass, 1 verification failure, 2 usage error,
3 I/O error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field

from . import _kernels
from .builders import extremal_tree_construction, extremal_unicyclic_construction
from .graph import DegreeSequence, GraphError, SequenceClass, format_edge_list, read_edge_list, \
    validate_degree_sequence
from .oracle import VerificationReport, extremal_sweep, tree_sequences, unicyclic_sequences
from .perturbations import FUZZERS, path_balance_grid
from .spectrum import ConvergenceError, as_alpha, fmt15, spectral_radius

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3, 4

COMMANDS = ("validate", "build", "rho", "sweep", "verify", "fuzz")
LEMMAS = {
    "neighbor-shift": "neighbor-shift", "2.1": "neighbor-shift",
    "two-swap": "two-swap", "2.3": "two-swap",
    "subdivision": "subdivision", "2.10": "subdivision",
    "path-balance": "path-balance", "4.3": "path-balance",
}
DEFAULT_SEED = 0
DEFAULT_CASES = 500


class UsageError(Exception):
    pass


@dataclass
class Invocation:
    command: str
    sequence: DegreeSequence | None = None
    kind: SequenceClass = SequenceClass.TREE
    alpha: list[float] = field(default_factory=list)
    n: int | None = None
    graph: str | None = None
    output: str | None = None
    layers: str | None = None
    fmt: str = "json"
    lemma: str | None = None
    seed: int = DEFAULT_SEED
    cases: int = DEFAULT_CASES
    dump: str | None = None


def _alpha_list(text: str) -> list[float]:
    try:
        return [as_alpha(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="aalpha", description="Extremal A_alpha spectral radius toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seq_args(sp, need_pi=True):
        sp.add_argument("--class", dest="kind", choices=["tree", "unicyclic"], default="tree")
        sp.add_argument("--pi", required=need_pi, help="comma-separated degrees, e.g. 3,2,2,1,1,1")

    sp = sub.add_parser("validate", help="check a degree sequence")
    seq_args(sp)

    sp = sub.add_parser("build", help="build the extremal graph, write an edge list")
    seq_args(sp)
    sp.add_argument("--out")
    sp.add_argument("--layers", help="layer annotation JSON path (default: OUT.layers.json)")

    for name in ("rho", "sweep"):
        sp = sub.add_parser(name, help="spectral radius of an edge-list graph" if name == "rho"
                            else "CSV of (alpha, rho) over an alpha list")
        sp.add_argument("--graph", required=True)
        sp.add_argument("--alpha", type=_alpha_list, required=True)
        sp.add_argument("--out")

    sp = sub.add_parser("verify", help="compare the builder against exhaustive enumeration")
    seq_args(sp, need_pi=False)
    sp.add_argument("--n", type=int, help="verify every sequence of this order")
    sp.add_argument("--alpha", type=_alpha_list, default=[0.0, 0.2, 0.5, 0.8])
    sp.add_argument("--format", dest="fmt", choices=["json", "csv"])
    sp.add_argument("--out")

    sp = sub.add_parser("fuzz", help="seeded randomized check of a perturbation lemma")
    sp.add_argument("--lemma", required=True, help="neighbor-shift|two-swap|subdivision|path-balance "
                                                   "(aliases 2.1, 2.3, 2.10, 4.3)")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--cases", type=int, default=DEFAULT_CASES)
    sp.add_argument("--alpha", type=_alpha_list)
    sp.add_argument("--out", help="JSON report path")
    sp.add_argument("--dump", help="counterexample JSON-lines path")
    return p


def parse_invocation(argv: list[str]) -> Invocation:
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        raise UsageError(f"aalpha: unknown command {argv[0]!r}")
    ns = _parser().parse_args(argv)
    inv = Invocation(ns.command)
    if hasattr(ns, "kind"):
        inv.kind = SequenceClass(ns.kind)
        if ns.pi is not None:
            try:
                inv.sequence = DegreeSequence.parse(ns.pi, inv.kind)
            except GraphError as exc:
                raise UsageError(f"aalpha: --pi: {exc}") from None
    for name in ("graph", "out", "layers", "n", "seed", "cases", "dump"):
        if hasattr(ns, name):
            setattr(inv, "output" if name == "out" else name, getattr(ns, name))
    if getattr(ns, "alpha", None) is not None:
        inv.alpha = ns.alpha
        if not inv.alpha:
            raise UsageError("aalpha: --alpha needs at least one value")
    if ns.command == "verify":
        if (inv.sequence is None) == (inv.n is None):
            raise UsageError("aalpha verify: give exactly one of --pi or --n")
        inv.fmt = ns.fmt or ("json" if inv.sequence is not None else "csv")
    if ns.command == "fuzz":
        if ns.lemma not in LEMMAS:
            raise UsageError(f"aalpha fuzz: unknown lemma {ns.lemma!r}")
        inv.lemma = LEMMAS[ns.lemma]
        if inv.cases < 1:
            raise UsageError("aalpha fuzz: --cases must be positive")
    return inv


def _write(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".aalpha-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _run_validate(inv: Invocation) -> int:
    verdict = validate_degree_sequence(inv.sequence)
    status = "valid" if verdict.valid else "invalid"
    lines = [f"{inv.sequence} ({inv.kind.value}): {status}: {verdict.reason}"]
    lines += [f"note: {note}" for note in verdict.notes]
    _write(None, "\n".join(lines) + "\n")
    return EXIT_OK if verdict.valid else EXIT_FAIL


def _run_build(inv: Invocation) -> int:
    build = extremal_tree_construction if inv.kind is SequenceClass.TREE else extremal_unicyclic_construction
    construction = build(inv.sequence)
    _write(inv.output, format_edge_list(construction.graph))
    layers = inv.layers or (inv.output + ".layers.json" if inv.output else None)
    if layers:
        _write(layers, construction.annotation_json())
    return EXIT_OK


def _run_rho(inv: Invocation) -> int:
    g = read_edge_list(inv.graph)
    records = []
    for a in inv.alpha:
        rec = {"alpha": a, "n": g.n}
        rec.update(spectral_radius(g, a).to_record())
        records.append(rec)
    _write(inv.output, _json(records[0] if len(records) == 1 else records))
    return EXIT_OK


def _run_sweep(inv: Invocation) -> int:
    g = read_edge_list(inv.graph)
    rows = ["alpha,rho"] + [f"{a!r},{fmt15(spectral_radius(g, a).rho)!r}" for a in inv.alpha]
    _write(inv.output, "\n".join(rows) + "\n")
    return EXIT_OK


def _run_verify(inv: Invocation) -> int:
    if inv.sequence is not None:
        sequences = [inv.sequence]
    else:
        gen = tree_sequences if inv.kind is SequenceClass.TREE else unicyclic_sequences
        sequences = gen(inv.n)
        if not sequences:
            raise GraphError(f"no valid {inv.kind.value} sequences with n = {inv.n}")
    reports: list[VerificationReport] = []
    for pi in sequences:
        reports.extend(extremal_sweep(pi, inv.alpha))
    if inv.fmt == "csv":
        text = "\n".join([VerificationReport.CSV_HEADER] + [r.csv_row() for r in reports]) + "\n"
    else:
        dicts = [r.to_dict() for r in reports]
        text = _json(dicts[0] if len(dicts) == 1 else dicts)
    _write(inv.output, text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _run_fuzz(inv: Invocation) -> int:
    if inv.lemma == "path-balance":
        report = path_balance_grid(alphas=tuple(inv.alpha) or (0.0, 0.3, 0.5, 0.8))
    else:
        kwargs = {"alphas": tuple(inv.alpha)} if inv.alpha else {}
        report = FUZZERS[inv.lemma](inv.cases, inv.seed, **kwargs)
    lines = [report.summary()]
    if report.boundary:
        lines.append(f"{len(report.boundary)} boundary cases logged (adjacency radius exactly 2 at alpha=0)")
    if report.counterexamples:
        dump = inv.dump or f"counterexamples-{inv.lemma}-{inv.seed}.jsonl"
        _write(dump, "".join(json.dumps(c) + "\n" for c in report.counterexamples))
        lines.append(f"counterexamples written to {dump}")
    _write(None, "\n".join(lines) + "\n")
    if inv.output:
        _write(inv.output, _json({"lemma": report.lemma, "seed": report.seed, "cases": report.cases,
                                  "counterexamples": len(report.counterexamples),
                                  "boundary": report.boundary, "stats": report.stats}))
    return EXIT_OK if report.ok else EXIT_FAIL


RUNNERS = {
    "validate": _run_validate,
    "build": _run_build,
    "rho": _run_rho,
    "sweep": _run_sweep,
    "verify": _run_verify,
    "fuzz": _run_fuzz,
}


def execute(inv: Invocation) -> int:
    try:
        return RUNNERS[inv.command](inv)
    except OSError as exc:
        print(f"aalpha: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConvergenceError, FloatingPointError) as exc:
        print(f"aalpha: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GraphError, ValueError) as exc:
        print(f"aalpha: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv and argv[0] == "--backend":
        print(_kernels.BACKEND)
        return EXIT_OK
    try:
        inv = parse_invocation(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    return execute(inv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
