"""Country scores from university ranks.

Two scores are computed for every country present in a snapshot of size M:

* average rank, ``AR = sum(R_i) / n`` (lower is better), and
* weight, ``W = sum(M - R_i + 1)`` (higher is better). A rank-1 university
  contributes M points, the last one contributes 1, and a country holding the
  whole list reaches ``M * (M + 1) / 2``.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .errors import EmptyInput, UndefinedScore
from .model import (
    Basis,
    CountryCode,
    CountryRanking,
    CountryScore,
    Method,
    RankedRow,
    RankingSnapshot,
)


def max_weight(m: int) -> int:
    return m * (m + 1) // 2


def _ranks_of(snapshot: RankingSnapshot, country: CountryCode) -> list[int]:
    return [e.rank for e in snapshot.entries if e.country == country]


def average_rank(snapshot: RankingSnapshot, country: CountryCode) -> float | None:
    """Mean rank of the country's universities, or ``None`` if it has none."""
    ranks = _ranks_of(snapshot, country)
    if not ranks:
        return None
    return sum(ranks) / len(ranks)


def weight(snapshot: RankingSnapshot, country: CountryCode) -> int:
    """Sum of ``M - rank + 1`` over the country's universities (0 if absent)."""
    ranks = _ranks_of(snapshot, country)
    return len(ranks) * (snapshot.m + 1) - sum(ranks)


def score_all(snapshot: RankingSnapshot) -> tuple[CountryScore, ...]:
    """One score per country present in the snapshot, ordered by code."""
    if not snapshot.entries:
        return ()
    countries = sorted({e.country for e in snapshot.entries})
    index = {c: i for i, c in enumerate(countries)}
    idx = np.fromiter((index[e.country] for e in snapshot.entries), dtype=np.int64)
    ranks = np.fromiter((e.rank for e in snapshot.entries), dtype=np.int64)
    counts = np.bincount(idx, minlength=len(countries))
    # integer accumulation keeps sums exact and order-independent
    rank_sums = np.zeros(len(countries), dtype=np.int64)
    np.add.at(rank_sums, idx, ranks)
    weights = counts * (snapshot.m + 1) - rank_sums
    return tuple(
        CountryScore(c, int(n), int(s) / int(n), int(w))
        for c, n, s, w in zip(countries, counts, rank_sums, weights)
    )


def _sort_key(method: Method):
    # ties: more universities first, then code ascending
    if method is Method.W:
        return lambda s: (-s.w, -s.count, s.country.code)
    return lambda s: (s.ar, -s.count, s.country.code)


def rank_countries(
    scores: Iterable[CountryScore],
    method: Method | str,
    basis: Basis | tuple | None = None,
) -> CountryRanking:
    """Order scores into a league table.

    Method W sorts by weight descending, method AR by average rank ascending.
    Equal scores are separated by university count (higher first) and then
    by country code.
    """
    method = Method.parse(method)
    scores = list(scores)
    if not scores:
        raise EmptyInput("cannot rank an empty collection of scores")
    if method is Method.AR:
        missing = [s.country.code for s in scores if s.count == 0 or s.ar is None]
        if missing:
            raise UndefinedScore(f"average rank undefined for {', '.join(sorted(missing))}")
    ordered = sorted(scores, key=_sort_key(method))
    rows = tuple(RankedRow(i, s) for i, s in enumerate(ordered, start=1))
    return CountryRanking(method, Basis(*basis) if basis else Basis("", "", 0), rows)


def rank_snapshot(snapshot: RankingSnapshot, method: Method | str) -> CountryRanking:
    return rank_countries(score_all(snapshot), method, Basis(snapshot.source, snapshot.edition, snapshot.m))


def _base_edition(edition: str) -> str:
    return edition.split("@", 1)[0]


def top_n_filter(snapshot: RankingSnapshot, n: int) -> RankingSnapshot:
    """Keep universities ranked ``<= n`` and score them against a list of size n.

    When ``n`` is at least the snapshot's m the entries and m are kept as
    they are. The edition is tagged ``@top<n>`` in both cases.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    edition = f"{_base_edition(snapshot.edition)}@top{n}"
    if n >= snapshot.m:
        return RankingSnapshot(snapshot.source, edition, snapshot.m, snapshot.entries)
    kept = tuple(e for e in snapshot.entries if e.rank <= n)
    return RankingSnapshot(snapshot.source, edition, n, kept)
