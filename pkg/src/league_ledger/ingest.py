"""Reading snapshot CSV files and mapping country spellings to codes."""

from __future__ import annotations

import csv
import io
import logging
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import BinaryIO, NamedTuple, TextIO

from .errors import (
    EmptySnapshot,
    InvalidName,
    InvariantError,
    SchemaError,
    SnapshotReadError,
    StoreError,
)
from .model import CountryCode, RankingSnapshot, UniversityEntry, normalize_edition

logger = logging.getLogger(__name__)

UNMAPPED_CODE = CountryCode("ZZZ", "Unmapped")

_EDITION_FILE_RE = re.compile(r"(\d{4})-(0[1-9]|1[0-2])\.csv")


def alias_key(raw: str) -> str:
    """Case-fold and collapse internal whitespace."""
    return " ".join(raw.split()).casefold()


@dataclass(frozen=True)
class Unmapped:
    """Returned by :func:`normalize_country` for spellings not in the table."""

    raw: str


@dataclass(frozen=True)
class AliasTable:
    entries: Mapping[str, CountryCode]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(self.entries))

    @classmethod
    def from_pairs(cls, pairs, names: Mapping[str, str] | None = None) -> "AliasTable":
        """Build a table from ``(alias, code)`` pairs.

        ``names`` maps code to display name. Display names are added as
        aliases of their own code, so normalizing a display name is a no-op.
        """
        names = dict(names or {})
        table: dict[str, CountryCode] = {}

        def put(alias: str, code: str) -> None:
            k = alias_key(alias)
            if not k:
                raise InvalidName(f"empty alias for code {code}")
            country = CountryCode(code, names.get(code, ""))
            if k in table and table[k] != country:
                raise InvariantError(
                    "alias-many-to-one",
                    f"alias {alias!r} maps to both {table[k].code} and {code}",
                )
            table[k] = country

        for code, name in names.items():
            put(name, code)
        for alias, code in pairs:
            put(alias, code)
        return cls(table)

    @classmethod
    def from_csv(cls, path, names_path=None) -> "AliasTable":
        """Load an ``alias,code`` file; lines starting with ``#`` are comments."""
        names = _read_names(names_path) if names_path is not None else None
        with open(path, encoding="utf-8", newline="") as fh:
            return cls.from_pairs(_read_alias_rows(fh, str(path)), names)

    @classmethod
    def default(cls) -> "AliasTable":
        """The bundled table covering ISO 3166 countries and known variants."""
        return _default_table()

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, raw: object) -> bool:
        return isinstance(raw, str) and alias_key(raw) in self.entries

    def lookup(self, raw: str) -> CountryCode | None:
        return self.entries.get(alias_key(raw))

    def by_code(self, code: str) -> CountryCode:
        for country in self.entries.values():
            if country.code == code:
                return country
        raise KeyError(code)

    def codes(self) -> list[CountryCode]:
        return sorted(set(self.entries.values()))


def _read_alias_rows(fh, label: str):
    lines = (line for line in fh if not line.lstrip().startswith("#"))
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or not {"alias", "code"} <= set(reader.fieldnames):
        raise SchemaError(f"{label}: alias file needs header 'alias,code'")
    for row in reader:
        yield row["alias"], row["code"].strip()


def _read_names(path) -> dict[str, str]:
    with open(path, encoding="utf-8", newline="") as fh:
        return {row["code"]: row["name"] for row in csv.DictReader(fh)}


_DEFAULT: AliasTable | None = None


def _default_table() -> AliasTable:
    global _DEFAULT
    if _DEFAULT is None:
        data = resources.files("league_ledger") / "data"
        with (data / "countries.csv").open(encoding="utf-8", newline="") as fh:
            names = {row["code"]: row["name"] for row in csv.DictReader(fh)}
        with (data / "aliases.csv").open(encoding="utf-8", newline="") as fh:
            _DEFAULT = AliasTable.from_pairs(list(_read_alias_rows(fh, "aliases.csv")), names)
    return _DEFAULT


def normalize_country(raw: str, aliases: AliasTable | None = None) -> CountryCode | Unmapped:
    """Map a free-text country name to its code.

    Matching ignores case and runs of whitespace. Returns :class:`Unmapped`
    when the name is unknown; raises :class:`InvalidName` for blank input.
    """
    if raw is None or not str(raw).strip():
        raise InvalidName("country name is empty")
    table = aliases if aliases is not None else AliasTable.default()
    found = table.lookup(str(raw))
    return found if found is not None else Unmapped(str(raw).strip())


@dataclass(frozen=True)
class SnapshotSchema:
    """Column names of a snapshot CSV file."""

    rank: str = "rank"
    name: str = "name"
    country: str = "country"


@dataclass
class IngestReport:
    parsed_rows: int = 0
    rejected_rows: int = 0
    unmapped_names: list[tuple[str, int]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def total_rows(self) -> int:
        return self.parsed_rows + self.rejected_rows

    @property
    def clean(self) -> bool:
        return self.rejected_rows == 0 and not self.unmapped_names

    def to_dict(self) -> dict:
        return {
            "parsed_rows": self.parsed_rows,
            "rejected_rows": self.rejected_rows,
            "unmapped_names": [{"name": n, "line": ln} for n, ln in self.unmapped_names],
            "warnings": list(self.warnings),
        }


def _read_text(data) -> str:
    if isinstance(data, str):
        return data.removeprefix("\ufeff")
    if isinstance(data, (bytes, bytearray, memoryview)):
        raw = bytes(data)
    else:
        try:
            raw = data.read()
        except OSError as exc:
            raise SnapshotReadError(f"cannot read input: {exc}") from exc
        if isinstance(raw, str):
            return raw.removeprefix("\ufeff")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SnapshotReadError(f"input is not valid UTF-8: {exc}") from exc
    return text.removeprefix("\ufeff")


def parse_snapshot(
    data: BinaryIO | TextIO | bytes | str,
    source: str,
    edition: str,
    aliases: AliasTable | None = None,
    schema: SnapshotSchema = SnapshotSchema(),
    m: int | None = None,
    include_unmapped: bool = False,
) -> tuple[RankingSnapshot, IngestReport]:
    """Parse one snapshot CSV.

    Rows need a positive integer rank and a country the alias table knows;
    anything else is counted as rejected in the returned report. With
    ``include_unmapped`` unknown countries are kept under the ``ZZZ`` code
    instead. ``m`` defaults to the largest rank seen, not the row count.
    """
    table = aliases if aliases is not None else AliasTable.default()
    text = _read_text(data)
    reader = csv.DictReader(io.StringIO(text, newline=""))
    header = reader.fieldnames
    if header is None:
        raise SchemaError("input has no header row")
    header = [h.strip() for h in header]
    reader.fieldnames = header
    missing = [c for c in (schema.rank, schema.name, schema.country) if c not in header]
    if missing:
        raise SchemaError(f"missing column(s): {', '.join(missing)}")

    report = IngestReport()
    entries: list[UniversityEntry] = []
    seen: dict[tuple[str, str], int] = {}

    def reject(line: int, reason: str) -> None:
        report.rejected_rows += 1
        report.warnings.append(f"line {line}: {reason}")

    for row in reader:
        line = reader.line_num
        if None in row or any(row.get(c) is None for c in (schema.rank, schema.name, schema.country)):
            reject(line, "wrong number of fields")
            continue
        rank_text = row[schema.rank].strip()
        try:
            rank = int(rank_text)
        except ValueError:
            reject(line, f"rank {rank_text!r} is not an integer")
            continue
        if rank < 1:
            reject(line, f"rank must be ≥ 1, got {rank}")
            continue
        raw_country = row[schema.country]
        try:
            country = normalize_country(raw_country, table)
        except InvalidName:
            reject(line, "country is empty")
            continue
        if isinstance(country, Unmapped):
            report.unmapped_names.append((country.raw, line))
            if not include_unmapped:
                reject(line, f"unmapped country {country.raw!r}")
                continue
            country = UNMAPPED_CODE
        name = " ".join(row[schema.name].split())
        dup_key = (name.casefold(), country.code)
        if dup_key in seen:
            report.warnings.append(
                f"line {line}: duplicate university {name!r} ({country.code}), first seen on line {seen[dup_key]}"
            )
        else:
            seen[dup_key] = line
        entries.append(UniversityEntry(rank, name, country))
        report.parsed_rows += 1

    if not entries:
        raise EmptySnapshot(f"no usable rows ({report.rejected_rows} rejected)")
    entries.sort(key=lambda e: e.rank)
    max_rank = entries[-1].rank
    if m is None:
        m = max_rank
    elif m < max_rank:
        raise InvariantError("rank-within-m", f"m={m} is smaller than the largest rank {max_rank}")
    return RankingSnapshot(source, normalize_edition(edition), m, tuple(entries)), report


class StoreFile(NamedTuple):
    source: str
    edition: str
    path: Path


def scan_store(root) -> tuple[list[StoreFile], list[str]]:
    """List ``<root>/<source>/<YYYY-MM>.csv`` files in (source, edition) order.

    Anything that does not fit the layout is skipped and described in the
    returned warnings.
    """
    root = Path(root)
    if not root.is_dir():
        raise SnapshotReadError(f"store root {root} is not a directory")
    files: list[StoreFile] = []
    warnings: list[str] = []
    for source_dir in sorted(root.iterdir()):
        if source_dir.name.startswith("."):
            continue
        if not source_dir.is_dir():
            warnings.append(f"{source_dir}: not inside a source directory, skipped")
            continue
        for path in sorted(source_dir.iterdir()):
            if path.name.startswith("."):
                continue
            if path.is_file() and _EDITION_FILE_RE.fullmatch(path.name):
                files.append(StoreFile(source_dir.name, path.stem, path))
            else:
                warnings.append(f"{path}: file name is not <YYYY-MM>.csv, skipped")
    return files, warnings


def load_snapshot_file(
    path, source: str, edition: str, aliases: AliasTable | None = None, **kwargs
) -> tuple[RankingSnapshot, IngestReport]:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            return parse_snapshot(fh, source, edition, aliases, **kwargs)
    except OSError as exc:
        raise StoreError(path, exc) from exc
    except (SchemaError, EmptySnapshot, InvariantError) as exc:
        raise StoreError(path, exc) from exc


class SnapshotStore(Mapping):
    """Snapshots keyed by ``(source, edition)``, iterated in sorted order."""

    def __init__(self, snapshots, reports=None, warnings=None) -> None:
        self._snapshots = dict(sorted(snapshots.items()))
        self.reports: dict[tuple[str, str], IngestReport] = dict(reports or {})
        self.warnings: list[str] = list(warnings or [])

    def __getitem__(self, key: tuple[str, str]) -> RankingSnapshot:
        return self._snapshots[key]

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self._snapshots)

    def __len__(self) -> int:
        return len(self._snapshots)

    def snapshots(self) -> list[RankingSnapshot]:
        return list(self._snapshots.values())


def load_store(root, aliases: AliasTable | None = None, **kwargs) -> SnapshotStore:
    """Parse every snapshot under ``root``.

    Raises :class:`StoreError` naming the file when one cannot be parsed.
    """
    files, warnings = scan_store(root)
    for w in warnings:
        logger.warning(w)
    snapshots = {}
    reports = {}
    for f in files:
        snap, report = load_snapshot_file(f.path, f.source, f.edition, aliases, **kwargs)
        snapshots[(f.source, f.edition)] = snap
        reports[(f.source, f.edition)] = report
    return SnapshotStore(snapshots, reports, warnings)
