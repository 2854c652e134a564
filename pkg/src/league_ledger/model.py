"""Domain types: countries, ranked universities, snapshots and league tables.

Every type is a frozen dataclass that validates itself on construction and
round-trips through ``to_dict`` / ``from_dict``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple

from .errors import InvariantError

_CODE_RE = re.compile(r"[A-Z]{3}")
_EDITION_RE = re.compile(r"(\d{4})-(0[1-9]|1[0-2])(@top[1-9]\d*)?")

_MONTHS = {
    name: i
    for i, names in enumerate(
        [
            ("january", "jan"),
            ("february", "feb"),
            ("march", "mar"),
            ("april", "apr"),
            ("may",),
            ("june", "jun"),
            ("july", "jul"),
            ("august", "aug"),
            ("september", "sep", "sept"),
            ("october", "oct"),
            ("november", "nov"),
            ("december", "dec"),
        ],
        start=1,
    )
    for name in names
}


def normalize_edition(label: str) -> str:
    """Turn an edition label into ``YYYY-MM``.

    Accepts labels already in that form (optionally with a ``@topN`` suffix),
    ``YYYY/MM``, and month-name forms such as ``"January 2012"`` or
    ``"Jul 2013"``.

    >>> normalize_edition("January 2012")
    '2012-01'
    >>> normalize_edition("2013-07")
    '2013-07'
    """
    text = " ".join(str(label).split())
    if _EDITION_RE.fullmatch(text):
        return text
    m = re.fullmatch(r"(\d{4})[/.](\d{1,2})", text)
    if m and 1 <= int(m.group(2)) <= 12:
        return f"{m.group(1)}-{int(m.group(2)):02d}"
    m = re.fullmatch(r"([A-Za-z]+)\.?,? (\d{4})", text)
    if m and m.group(1).lower() in _MONTHS:
        return f"{m.group(2)}-{_MONTHS[m.group(1).lower()]:02d}"
    raise InvariantError("edition-format", f"cannot read edition label {label!r}")


class Method(str, enum.Enum):
    """Country scoring method: average rank or weight."""

    AR = "AR"
    W = "W"

    @classmethod
    def parse(cls, value: "str | Method") -> "Method":
        if isinstance(value, Method):
            return value
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            raise ValueError(f"unknown method {value!r}; expected AR or W") from None


@dataclass(frozen=True, order=True)
class CountryCode:
    """Canonical three-letter country key.

    Only ``code`` takes part in equality, hashing and ordering;
    ``display_name`` is for presentation.
    """

    code: str
    display_name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.code, str) or not _CODE_RE.fullmatch(self.code):
            raise InvariantError(
                "country-code", f"code must be three uppercase letters, got {self.code!r}"
            )
        if not self.display_name:
            object.__setattr__(self, "display_name", self.code)

    def __str__(self) -> str:
        return self.code

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "display_name": self.display_name}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CountryCode":
        return cls(data["code"], data.get("display_name", ""))


@dataclass(frozen=True)
class UniversityEntry:
    rank: int
    name: str
    country: CountryCode

    def __post_init__(self) -> None:
        if isinstance(self.rank, bool) or not isinstance(self.rank, int):
            raise InvariantError("rank-integer", f"rank must be an integer, got {self.rank!r}")
        if self.rank < 1:
            raise InvariantError("rank-positive", f"rank must be >= 1, got {self.rank}")

    def to_dict(self) -> dict[str, Any]:
        return {"rank": self.rank, "name": self.name, "country": self.country.to_dict()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "UniversityEntry":
        return cls(data["rank"], data["name"], CountryCode.from_dict(data["country"]))


@dataclass(frozen=True)
class RankingSnapshot:
    """One edition of one ranking system.

    ``m`` is the list size used by the weight formula. It may exceed the
    number of entries when some source rows were dropped during parsing, and
    it may fall short of it when tied institutions share a rank.
    """

    source: str
    edition: str
    m: int
    entries: tuple[UniversityEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.source or not isinstance(self.source, str):
            raise InvariantError("source-nonempty", "source must be a non-empty string")
        if not isinstance(self.edition, str) or not _EDITION_RE.fullmatch(self.edition):
            raise InvariantError(
                "edition-format", f"edition must look like YYYY-MM, got {self.edition!r}"
            )
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 1:
            raise InvariantError("m-positive", f"m must be a positive integer, got {self.m!r}")
        for entry in self.entries:
            if entry.rank > self.m:
                raise InvariantError(
                    "rank-within-m", f"entry {entry.name!r} has rank {entry.rank} > m={self.m}"
                )

    @property
    def key(self) -> tuple[str, str]:
        return (self.source, self.edition)

    def countries(self) -> list[CountryCode]:
        return sorted({e.country for e in self.entries})

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "edition": self.edition,
            "m": self.m,
            "entries": [e.to_dict() for e in self.entries],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RankingSnapshot":
        return cls(
            data["source"],
            data["edition"],
            data["m"],
            tuple(UniversityEntry.from_dict(e) for e in data["entries"]),
        )


@dataclass(frozen=True)
class CountryScore:
    """Aggregate of one country's universities in a snapshot.

    ``ar`` is ``None`` when the country has no universities.
    """

    country: CountryCode
    count: int
    ar: float | None
    w: int

    def __post_init__(self) -> None:
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 0:
            raise InvariantError("count-nonnegative", f"count must be >= 0, got {self.count!r}")
        if isinstance(self.w, bool) or not isinstance(self.w, int) or self.w < 0:
            raise InvariantError("w-nonnegative", f"w must be a non-negative integer, got {self.w!r}")
        if self.count == 0:
            if self.w != 0:
                raise InvariantError("empty-country-w", "a country with no universities has w = 0")
            if self.ar is not None:
                raise InvariantError("empty-country-ar", "a country with no universities has no ar")
        else:
            if self.ar is None or not self.ar >= 1:
                raise InvariantError("ar-range", f"ar must be >= 1 when count >= 1, got {self.ar!r}")
            if self.w <= 0:
                raise InvariantError("w-positive", "w must be > 0 when count >= 1")

    def check_bounds(self, m: int) -> None:
        """Raise if the score cannot come from distinct ranks in a list of size ``m``.

        Tied ranks can push ``w`` past ``m(m+1)/2``; do not call this for
        countries that hold the same rank twice.
        """
        if self.w > m * (m + 1) // 2:
            raise InvariantError("w-max", f"w={self.w} exceeds m(m+1)/2 for m={m}")
        if self.ar is not None and self.ar > m:
            raise InvariantError("ar-max", f"ar={self.ar} exceeds m={m}")

    def to_dict(self) -> dict[str, Any]:
        return {"country": self.country.to_dict(), "count": self.count, "ar": self.ar, "w": self.w}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CountryScore":
        return cls(CountryCode.from_dict(data["country"]), data["count"], data["ar"], data["w"])


class Basis(NamedTuple):
    """Where a league table came from."""

    source: str
    edition: str
    m: int


class RankedRow(NamedTuple):
    position: int
    score: CountryScore


@dataclass(frozen=True)
class CountryRanking:
    method: Method
    basis: Basis
    rows: tuple[RankedRow, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", Method.parse(self.method))
        object.__setattr__(self, "basis", Basis(*self.basis))
        rows = tuple(RankedRow(*r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for i, row in enumerate(rows, start=1):
            if row.position != i:
                raise InvariantError(
                    "positions-contiguous", f"row {i} has position {row.position}"
                )
        seen = set()
        for row in rows:
            if row.score.country in seen:
                raise InvariantError("country-unique", f"{row.score.country} listed twice")
            seen.add(row.score.country)
        for prev, cur in zip(rows, rows[1:]):
            if self.method is Method.W and prev.score.w < cur.score.w:
                raise InvariantError(
                    "order-w", f"w increases from position {prev.position} to {cur.position}"
                )
            if self.method is Method.AR:
                if prev.score.ar is None or cur.score.ar is None:
                    raise InvariantError("order-ar", "AR ranking contains a country with no ar")
                if prev.score.ar > cur.score.ar:
                    raise InvariantError(
                        "order-ar", f"ar decreases from position {prev.position} to {cur.position}"
                    )

    def __len__(self) -> int:
        return len(self.rows)

    def positions(self) -> dict[CountryCode, int]:
        return {row.score.country: row.position for row in self.rows}

    def countries(self) -> list[CountryCode]:
        return [row.score.country for row in self.rows]

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method.value,
            "basis": {"source": self.basis.source, "edition": self.basis.edition, "m": self.basis.m},
            "rows": [{"position": r.position, "score": r.score.to_dict()} for r in self.rows],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CountryRanking":
        b = data["basis"]
        return cls(
            Method.parse(data["method"]),
            Basis(b["source"], b["edition"], b["m"]),
            tuple(RankedRow(r["position"], CountryScore.from_dict(r["score"])) for r in data["rows"]),
        )


@dataclass(frozen=True)
class RankDiff:
    """Position change of one country; ``delta > 0`` means it moved up."""

    country: CountryCode
    position_before: int
    position_after: int
    delta: int

    def __post_init__(self) -> None:
        for name in ("position_before", "position_after"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvariantError("position-positive", f"{name} must be >= 1, got {value!r}")
        if self.delta != self.position_before - self.position_after:
            raise InvariantError(
                "delta-sign", "delta must equal position_before - position_after"
            )

    @classmethod
    def between(cls, country: CountryCode, before: int, after: int) -> "RankDiff":
        return cls(country, before, after, before - after)

    def to_dict(self) -> dict[str, Any]:
        return {
            "country": self.country.to_dict(),
            "position_before": self.position_before,
            "position_after": self.position_after,
            "delta": self.delta,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RankDiff":
        return cls(
            CountryCode.from_dict(data["country"]),
            data["position_before"],
            data["position_after"],
            data["delta"],
        )


def sorted_codes(codes: Iterable[CountryCode]) -> tuple[CountryCode, ...]:
    return tuple(sorted(set(codes)))
