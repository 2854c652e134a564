"""Comparing league tables: edition diffs, top countries and rank correlation."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import EmptyInput, InsufficientOverlap, MethodMismatch
from .model import CountryCode, CountryRanking, RankDiff, RankingSnapshot


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks of ``values``; tied values share the mean of their ranks."""
    x = np.asarray(values, dtype=float)
    order = np.argsort(x, kind="mergesort")
    ranks = np.empty(len(x), dtype=float)
    sorted_x = x[order]
    i = 0
    while i < len(x):
        j = i
        while j + 1 < len(x) and sorted_x[j + 1] == sorted_x[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def spearman_rho(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman's rank correlation: Pearson correlation of the average ranks.

    Returns NaN when either side is constant.
    """
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    if len(x) < 2:
        raise ValueError("need at least two observations")
    rx = average_ranks(x)
    ry = average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    denom = math.sqrt(float(dx @ dx) * float(dy @ dy))
    if denom == 0:
        return math.nan
    return float(dx @ dy) / denom


def kendall_tau_b(x: Sequence[float], y: Sequence[float]) -> float:
    """Kendall's tau-b, which corrects the denominator for ties on either side.

    Counts every pair directly (O(n^2)), which is plenty for country tables.
    Returns NaN when either side is constant.
    """
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    n = len(x)
    if n < 2:
        raise ValueError("need at least two observations")
    a = np.asarray(x, dtype=float)
    b = np.asarray(y, dtype=float)
    iu = np.triu_indices(n, k=1)
    sx = np.sign(a[:, None] - a[None, :])[iu]
    sy = np.sign(b[:, None] - b[None, :])[iu]
    pairs = n * (n - 1) // 2
    tied_x = int(np.count_nonzero(sx == 0))
    tied_y = int(np.count_nonzero(sy == 0))
    denom = math.sqrt((pairs - tied_x) * (pairs - tied_y))
    if denom == 0:
        return math.nan
    return float(np.sum(sx * sy)) / denom


@dataclass(frozen=True)
class EditionDiff:
    """Result of :func:`edition_diff`.

    ``diffs`` covers countries ranked in both editions, ordered by code.
    Countries ranked in only one edition are listed apart and get no delta.
    """

    diffs: tuple[RankDiff, ...]
    only_in_before: tuple[CountryCode, ...]
    only_in_after: tuple[CountryCode, ...]

    def __iter__(self):
        return iter(self.diffs)

    def __len__(self) -> int:
        return len(self.diffs)

    def by_country(self) -> dict[CountryCode, RankDiff]:
        return {d.country: d for d in self.diffs}


def edition_diff(before: CountryRanking, after: CountryRanking) -> EditionDiff:
    if before.method is not after.method:
        raise MethodMismatch(
            f"cannot diff a {before.method.value} ranking against a {after.method.value} ranking"
        )
    pos_before = before.positions()
    pos_after = after.positions()
    # prefer display names from the later table
    names = {c: c for c in pos_before} | {c: c for c in pos_after}
    common = sorted(set(pos_before) & set(pos_after))
    diffs = tuple(RankDiff.between(names[c], pos_before[c], pos_after[c]) for c in common)
    return EditionDiff(
        diffs,
        tuple(sorted(set(pos_before) - set(pos_after))),
        tuple(sorted(set(pos_after) - set(pos_before))),
    )


def extreme_movers(diffs: Iterable[RankDiff]) -> tuple[RankDiff, RankDiff]:
    """Largest gain and largest drop; ties go to the lower country code."""
    diffs = list(diffs)
    if not diffs:
        raise EmptyInput("no rank differences to scan")
    gain = min(diffs, key=lambda d: (-d.delta, d.country.code))
    drop = min(diffs, key=lambda d: (d.delta, d.country.code))
    return gain, drop


def select_top_countries(snapshot: RankingSnapshot, k: int) -> list[tuple[CountryCode, int]]:
    """The k countries with the most universities in the snapshot."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    counts = Counter(e.country for e in snapshot.entries)
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0].code))
    return ordered[:k]


@dataclass(frozen=True)
class SimilarityResult:
    """Agreement between two league tables over the countries they share.

    ``rows`` holds ``(country, position_in_a, position_in_b)`` for the common
    countries, ordered by position in ``a``; positions are the original ones.
    """

    spearman_rho: float
    kendall_tau: float
    common_countries: int
    only_in_a: tuple[CountryCode, ...]
    only_in_b: tuple[CountryCode, ...]
    rows: tuple[tuple[CountryCode, int, int], ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "spearman_rho": self.spearman_rho,
            "kendall_tau": self.kendall_tau,
            "common_countries": self.common_countries,
            "only_in_a": [c.code for c in self.only_in_a],
            "only_in_b": [c.code for c in self.only_in_b],
        }


def _rerank(positions: Sequence[int]) -> list[int]:
    order = sorted(range(len(positions)), key=lambda i: positions[i])
    out = [0] * len(positions)
    for new, i in enumerate(order, start=1):
        out[i] = new
    return out


def similarity(a: CountryRanking, b: CountryRanking) -> SimilarityResult:
    """Spearman's rho and Kendall's tau-b between two league tables.

    Only countries present in both tables are compared; each side is
    re-ranked 1..c over that common set before correlating.
    """
    if not len(a) or not len(b):
        raise EmptyInput("both rankings must be non-empty")
    pos_a = a.positions()
    pos_b = b.positions()
    common = sorted(set(pos_a) & set(pos_b), key=lambda c: pos_a[c])
    if len(common) < 2:
        raise InsufficientOverlap(f"rankings share {len(common)} countries; need at least 2")
    ra = _rerank([pos_a[c] for c in common])
    rb = _rerank([pos_b[c] for c in common])
    return SimilarityResult(
        spearman_rho=spearman_rho(ra, rb),
        kendall_tau=kendall_tau_b(ra, rb),
        common_countries=len(common),
        only_in_a=tuple(sorted(set(pos_a) - set(pos_b))),
        only_in_b=tuple(sorted(set(pos_b) - set(pos_a))),
        rows=tuple((c, pos_a[c], pos_b[c]) for c in common),
    )
