"""``league-ledger`` command line.

Exit codes: 0 ok, 1 validation failure, 2 missing snapshot, 3 parse failure
(or nothing left to rank), 4 empty diff intersection, 5 insufficient overlap,
64 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .compare import edition_diff, extreme_movers, similarity
from .errors import EmptyInput, InsufficientOverlap, InvariantError, StoreError
from .ingest import AliasTable, load_snapshot_file, scan_store
from .model import CountryRanking, Method, RankingSnapshot, normalize_edition
from .report import ReportSpec, Table, fixed, render, write_output
from .scoring import rank_snapshot, top_n_filter

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISSING = 2
EXIT_PARSE = 3
EXIT_EMPTY_DIFF = 4
EXIT_OVERLAP = 5
EXIT_USAGE = 64

STORE_ENV = "LEAGUE_LEDGER_STORE"
CORRELATION_PLACES = 12


class CommandError(Exception):
    def __init__(self, status: int, message: str) -> None:
        super().__init__(message)
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _edition(text: str) -> str:
    try:
        return normalize_edition(text)
    except InvariantError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _method(text: str) -> Method:
    try:
        return Method.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="league-ledger", description="Country league tables from university rankings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--store", help=f"snapshot store root (default: ${STORE_ENV})")
    common.add_argument("--format", choices=("csv", "json", "markdown"), default="csv")
    common.add_argument("--precision", type=int, default=2, help="decimals for AR (0-10)")
    common.add_argument("--out", help="write here instead of standard output")

    p = sub.add_parser("rank", parents=[common], help="league table for one snapshot")
    p.add_argument("--source", required=True)
    p.add_argument("--edition", required=True, type=_edition)
    p.add_argument("--method", type=_method, default=Method.W, help="ar or w (default w)")
    p.add_argument("--top-n", type=_positive)

    p = sub.add_parser("diff", parents=[common], help="position changes between two editions")
    p.add_argument("--source", required=True)
    p.add_argument("--before", required=True, type=_edition)
    p.add_argument("--after", required=True, type=_edition)
    p.add_argument("--method", type=_method, default=Method.W)
    p.add_argument("--top-n", type=_positive)

    p = sub.add_parser("compare", parents=[common], help="similarity of two ranking systems")
    p.add_argument("--source", required=True, action="append", help="give exactly twice")
    p.add_argument("--edition", required=True, type=_edition)
    p.add_argument("--method", type=_method, default=Method.W)
    p.add_argument("--top-n", type=_positive)

    sub.add_parser("validate", parents=[common], help="check every snapshot in the store")
    return parser


def _store_root(args) -> Path:
    root = args.store or os.environ.get(STORE_ENV)
    if not root:
        raise CommandError(EXIT_USAGE, f"no store given; use --store or set {STORE_ENV}")
    return Path(root)


def _load(root: Path, source: str, edition: str) -> RankingSnapshot:
    path = root / source / f"{edition}.csv"
    if not path.is_file():
        raise CommandError(EXIT_MISSING, f"snapshot {source} {edition} not found ({path})")
    try:
        snapshot, report = load_snapshot_file(path, source, edition, AliasTable.default())
    except StoreError as exc:
        raise CommandError(EXIT_PARSE, str(exc)) from None
    if report.rejected_rows:
        print(f"warning: {path}: {report.rejected_rows} row(s) rejected", file=sys.stderr)
    return snapshot


def _ranking(snapshot: RankingSnapshot, method: Method, top_n: int | None) -> CountryRanking:
    if top_n is not None:
        snapshot = top_n_filter(snapshot, top_n)
    try:
        return rank_snapshot(snapshot, method)
    except EmptyInput:
        raise CommandError(
            EXIT_PARSE, f"{snapshot.source} {snapshot.edition}: no universities left to rank"
        ) from None


def _meta(command: str, **extra) -> dict:
    return {"command": command, **extra, "tool_version": __version__}


def _score_cell(score, method: Method, precision: int):
    return score.w if method is Method.W else fixed(score.ar, precision)


def cmd_rank(args, spec: ReportSpec) -> int:
    root = _store_root(args)
    snapshot = _load(root, args.source, args.edition)
    ranking = _ranking(snapshot, args.method, args.top_n)
    rows = [
        [r.position, r.score.country.code, r.score.country.display_name, r.score.count,
         _score_cell(r.score, args.method, spec.precision)]
        for r in ranking.rows
    ]
    meta = _meta(
        "rank",
        source=ranking.basis.source,
        edition=args.edition,
        method=args.method.value,
        m=ranking.basis.m,
        top_n=args.top_n,
    )
    write_output(render(Table(["position", "code", "country", "count", "score"], rows, meta), spec.format), spec.destination)
    return EXIT_OK


def _signed(n: int) -> str:
    return f"{n:+d}"


def cmd_diff(args, spec: ReportSpec) -> int:
    root = _store_root(args)
    before = _ranking(_load(root, args.source, args.before), args.method, args.top_n)
    after = _ranking(_load(root, args.source, args.after), args.method, args.top_n)
    result = edition_diff(before, after)
    if not result.diffs:
        raise CommandError(EXIT_EMPTY_DIFF, "the two editions share no countries")
    gain, drop = extreme_movers(result.diffs)
    ordered = sorted(result.diffs, key=lambda d: (d.position_before, d.country.code))
    rows = [
        [d.country.code, d.country.display_name, d.position_before, d.position_after, d.delta]
        for d in ordered
    ]
    summary = {
        "max_gain": f"{gain.country.display_name} ({gain.country.code}) {_signed(gain.delta)}",
        "max_drop": f"{drop.country.display_name} ({drop.country.code}) {_signed(drop.delta)}",
        "only_in_before": [c.code for c in result.only_in_before],
        "only_in_after": [c.code for c in result.only_in_after],
    }
    meta = _meta(
        "diff",
        source=args.source,
        before=args.before,
        after=args.after,
        method=args.method.value,
        m_before=before.basis.m,
        m_after=after.basis.m,
        top_n=args.top_n,
    )
    table = Table(["code", "country", "position_before", "position_after", "delta"], rows, meta, summary)
    write_output(render(table, spec.format), spec.destination)
    return EXIT_OK


def cmd_compare(args, spec: ReportSpec) -> int:
    if len(args.source) != 2:
        raise CommandError(EXIT_USAGE, "compare needs --source exactly twice")
    root = _store_root(args)
    source_a, source_b = args.source
    a = _load(root, source_a, args.edition)
    b = _load(root, source_b, args.edition)
    ra = _ranking(a, args.method, args.top_n)
    rb = _ranking(b, args.method, args.top_n)
    try:
        result = similarity(ra, rb)
    except (InsufficientOverlap, EmptyInput) as exc:
        raise CommandError(EXIT_OVERLAP, str(exc)) from None
    rows = [[c.code, c.display_name, pa, pb] for c, pa, pb in result.rows]
    summary = {
        "spearman_rho": fixed(result.spearman_rho, CORRELATION_PLACES),
        "kendall_tau_b": fixed(result.kendall_tau, CORRELATION_PLACES),
        "common_countries": result.common_countries,
        "only_in_a": [c.code for c in result.only_in_a],
        "only_in_b": [c.code for c in result.only_in_b],
    }
    meta = _meta(
        "compare",
        source_a=source_a,
        source_b=source_b,
        edition=args.edition,
        method=args.method.value,
        m_a=ra.basis.m,
        m_b=rb.basis.m,
        top_n=args.top_n,
    )
    table = Table(["code", "country", "position_a", "position_b"], rows, meta, summary)
    write_output(render(table, spec.format), spec.destination)
    return EXIT_OK


def cmd_validate(args, spec: ReportSpec) -> int:
    root = _store_root(args)
    try:
        files, warnings = scan_store(root)
    except OSError as exc:
        raise CommandError(EXIT_MISSING, str(exc)) from None
    aliases = AliasTable.default()
    rows = []
    problems = list(warnings)
    failed = bool(warnings)
    for f in files:
        label = f"{f.source}/{f.path.name}"
        try:
            _, report = load_snapshot_file(f.path, f.source, f.edition, aliases)
        except StoreError as exc:
            rows.append([label, 0, 0, 0, "error"])
            problems.append(f"{label}: {exc.cause}")
            failed = True
            continue
        ok = report.clean
        failed |= not ok
        rows.append([label, report.parsed_rows, report.rejected_rows, len(report.unmapped_names), "ok" if ok else "fail"])
        for name, line in report.unmapped_names:
            problems.append(f"{label} line {line}: unmapped country {name!r}")
        for w in report.warnings:
            if "unmapped country" not in w:
                problems.append(f"{label} {w}")
    summary = {"status": "fail" if failed else "ok", "files": len(files)}
    for i, p in enumerate(problems, start=1):
        summary[f"issue_{i}"] = p
    table = Table(["file", "parsed", "rejected", "unmapped", "status"], rows, _meta("validate"), summary)
    write_output(render(table, spec.format), spec.destination)
    return EXIT_INVALID if failed else EXIT_OK


COMMANDS = {"rank": cmd_rank, "diff": cmd_diff, "compare": cmd_compare, "validate": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        try:
            spec = ReportSpec(args.format, args.precision, args.out)
        except ValueError as exc:
            parser.error(str(exc))
    except SystemExit as exc:
        # --help, --version and usage errors; return the code instead of exiting
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, spec)
    except CommandError as exc:
        print(f"league-ledger: error: {exc}", file=sys.stderr)
        return exc.status


if __name__ == "__main__":
    sys.exit(main())
