"""Published country tables for Webometrics (WR) and QS, as typed fixtures.

The CSV transcriptions live in ``data/tables``. Country names are kept exactly
as printed, misspellings included, and resolved through the alias table.

=========================  ============================================
file                       content
=========================  ============================================
wr12000_counts.csv         universities per country, top 12000 WR, 4 editions
qs500_counts.csv           universities per country, top 500 QS 2012
wr500_counts.csv           universities per country, top 500 WR 2012-01
wr12000_average_rank.csv   AR per country, 4 editions
wr12000_weight.csv         W per country, 4 editions
wr12000_position.csv       league position by W, 4 editions
qs500_league.csv           position, count and W (M=500), QS 2012
wr500_league.csv           position, count and W (M=500), WR 2012-01
=========================  ============================================
"""

from __future__ import annotations

import csv
from importlib import resources

from .ingest import AliasTable, Unmapped, normalize_country
from .model import Basis, CountryCode, CountryRanking, CountryScore, Method, RankedRow

WR_EDITIONS = ("2012-01", "2012-07", "2013-01", "2013-07")
WR_M = 12000
TOP500_M = 500
TABLE_FILES = (
    "wr12000_counts.csv",
    "qs500_counts.csv",
    "wr500_counts.csv",
    "wr12000_average_rank.csv",
    "wr12000_weight.csv",
    "wr12000_position.csv",
    "qs500_league.csv",
    "wr500_league.csv",
)


def read_table(filename: str) -> list[dict[str, str]]:
    path = resources.files("league_ledger") / "data" / "tables" / filename
    with path.open(encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def raw_country_names() -> list[tuple[str, str]]:
    """Every ``(file, printed country name)`` pair across the tables."""
    return [(f, row["country"]) for f in TABLE_FILES for row in read_table(f)]


def _code(raw: str, aliases: AliasTable | None) -> CountryCode:
    found = normalize_country(raw, aliases)
    if isinstance(found, Unmapped):
        raise KeyError(f"country {raw!r} is not in the alias table")
    return found


def _column(filename: str, edition: str, aliases=None, cast=int) -> dict[CountryCode, object]:
    return {_code(r["country"], aliases): cast(r[edition]) for r in read_table(filename)}


def wr_counts(edition: str, aliases=None) -> dict[CountryCode, int]:
    return _column("wr12000_counts.csv", edition, aliases)


def wr_average_ranks(edition: str, aliases=None) -> dict[CountryCode, float]:
    return _column("wr12000_average_rank.csv", edition, aliases, float)


def wr_weights(edition: str, aliases=None) -> dict[CountryCode, int]:
    return _column("wr12000_weight.csv", edition, aliases)


def wr_positions(edition: str, aliases=None) -> dict[CountryCode, int]:
    return _column("wr12000_position.csv", edition, aliases)


def wr_scores(edition: str, aliases=None) -> list[CountryScore]:
    """Count, AR and W of the 50 tabulated countries for one edition."""
    counts = wr_counts(edition, aliases)
    ars = wr_average_ranks(edition, aliases)
    ws = wr_weights(edition, aliases)
    return [CountryScore(c, counts[c], ars[c], ws[c]) for c in sorted(counts)]


def wr_position_table(edition: str, aliases=None) -> CountryRanking:
    """The printed W league table, positions taken verbatim."""
    scores = {s.country: s for s in wr_scores(edition, aliases)}
    positions = wr_positions(edition, aliases)
    rows = sorted((p, scores[c]) for c, p in positions.items())
    return CountryRanking(Method.W, Basis("webometrics", edition, WR_M), tuple(RankedRow(*r) for r in rows))


def top500_counts(source: str, aliases=None) -> dict[CountryCode, int]:
    name = {"qs": "qs500_counts.csv", "webometrics": "wr500_counts.csv"}[source]
    return _column(name, "universities", aliases)


def _top500_rows(source: str):
    return read_table({"qs": "qs500_league.csv", "webometrics": "wr500_league.csv"}[source])


def top500_scores(source: str, aliases=None) -> list[CountryScore]:
    """Count and W (M=500) for ``"qs"`` or ``"webometrics"``.

    Only W is printed for these lists, so AR is filled in from the identity
    ``W = n (M + 1) - n AR``.
    """
    out = []
    for r in _top500_rows(source):
        n, w = int(r["universities"]), int(r["weight"])
        out.append(CountryScore(_code(r["country"], aliases), n, TOP500_M + 1 - w / n, w))
    return sorted(out, key=lambda s: s.country)


def top500_positions(source: str, aliases=None) -> dict[CountryCode, int]:
    return {_code(r["country"], aliases): int(r["listed_rank"]) for r in _top500_rows(source)}


def top500_table(source: str, aliases=None) -> CountryRanking:
    """The printed top-500 W league table, positions taken verbatim."""
    scores = {s.country: s for s in top500_scores(source, aliases)}
    rows = sorted((p, scores[c]) for c, p in top500_positions(source, aliases).items())
    edition = "2012-01@top500"
    return CountryRanking(Method.W, Basis(source, edition, TOP500_M), tuple(RankedRow(*r) for r in rows))
