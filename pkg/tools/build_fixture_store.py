"""Rebuild the bundled fixture store from the published country tables.

The original university lists were never published, only per-country
aggregates. This script invents university-level lists whose aggregates match
the tables exactly:

* ``webometrics/<edition>.csv`` for the four WR editions: every tabulated
  country gets its tabulated number of universities and its tabulated W.
  Ranks run up to 11999 so that the printed AR columns come out as well
  (they satisfy ``W = n * (12000 - AR)``, i.e. the weight formula with
  M = 11999). The July 2012 AR column cannot be matched together with the
  count and W columns and is not.
* ``webometrics/2012-01.csv`` additionally has a top 500 whose counts and
  weights (M = 500) are those of the WR top-500 table. Countries that only
  appear in that top-500 table get a tail of low-ranked universities so that
  they sort below every tabulated country by both W and AR.
* ``qs/2012-01.csv`` is a 500-row list matching the QS top-500 table.

The top-500 weights cannot be produced by 500 distinct ranks, so a few ranks
inside the top 500 are shared by universities of different countries.

Output is deterministic for a given seed.

    python tools/build_fixture_store.py
"""

from __future__ import annotations

import argparse
import bisect
import csv
import random
from pathlib import Path

from league_ledger import published
from league_ledger.ingest import AliasTable

ROOT = Path(__file__).resolve().parents[1]
STORE = ROOT / "src" / "league_ledger" / "data" / "store"
LAST_RANK = 11999
TOP = 500
EXTRA_TAIL = 26

# which printed table the country spellings of each file are taken from
SPELLINGS = {
    "2012-01": "wr12000_counts.csv",
    "2012-07": "wr12000_weight.csv",
    "2013-01": "wr12000_position.csv",
    "2013-07": "wr12000_average_rank.csv",
}


class Unsolvable(RuntimeError):
    pass


def _closest_move(xs, ys, d):
    """Best (x, y) with 0 < x - y <= d, x from sorted xs, y from sorted ys."""
    best = None
    for x in xs:
        j = bisect.bisect_left(ys, x - d)
        if j < len(ys) and ys[j] < x:
            gap = x - ys[j]
            if best is None or gap > best[0]:
                best = (gap, x, ys[j])
                if gap == d:
                    break
    return best


def allocate(groups, slots, rng, max_rounds=2_000_000, exact=True):
    """Give each group ``count`` distinct slot values summing to ``target``.

    ``groups`` maps key -> (count, target). Values are drawn without
    replacement from ``slots``; unused slots stay free. Pairwise swaps between
    groups (and with the free pool) remove the sum errors. With ``exact`` off
    the loop stops when no improving swap is left instead of failing.
    """
    pool = list(slots)
    rng.shuffle(pool)
    held = {}
    for key, (count, _) in groups.items():
        held[key], pool = sorted(pool[:count]), pool[count:]
    free = sorted(pool)
    target = {k: t for k, (_, t) in groups.items()}
    err = {k: sum(v) - target[k] for k, v in held.items()}

    def swap(kx, x, ky, y):
        xs = held[kx]
        xs.pop(bisect.bisect_left(xs, x))
        bisect.insort(xs, y)
        err[kx] += y - x
        ys = held[ky] if ky is not None else free
        ys.pop(bisect.bisect_left(ys, y))
        bisect.insort(ys, x)
        if ky is not None:
            err[ky] += x - y

    for _ in range(max_rounds):
        bad = [k for k in err if err[k]]
        if not bad:
            return held
        kx = max(bad, key=lambda k: abs(err[k]))
        sign = 1 if err[kx] > 0 else -1
        partners = sorted((k for k in bad if err[k] * sign < 0), key=lambda k: -abs(err[k]))
        moved = False
        for ky in partners + [None]:
            d = abs(err[kx]) if ky is None else min(abs(err[kx]), abs(err[ky]))
            ys = held[ky] if ky is not None else free
            if sign > 0:
                mv = _closest_move(held[kx], ys, d)
                if mv:
                    swap(kx, mv[1], ky, mv[2])
            else:
                mv = _closest_move(ys, held[kx], d)
                if mv:
                    swap(kx, mv[2], ky, mv[1])
            if mv:
                moved = True
                break
        if not moved:
            if not exact:
                return held
            # shake: trade a random member with a random free slot
            if not free:
                raise Unsolvable(f"stuck on {kx} with error {err[kx]}")
            swap(kx, rng.choice(held[kx]), None, rng.choice(free))
    raise Unsolvable("did not converge")


def settle_with_ties(held, targets, lo, hi):
    """Fix remaining sum errors by moving single values, allowing shared ranks."""
    for key, values in held.items():
        values = sorted(values)
        e = sum(values) - targets[key]
        while e:
            own = set(values)
            if e < 0:
                # raise the largest value that can move up
                for i in range(len(values) - 1, -1, -1):
                    v = values[i]
                    step = min(-e, hi - v)
                    while step > 0 and v + step in own:
                        step -= 1
                    if step > 0:
                        values[i] = v + step
                        e += step
                        break
                else:
                    raise Unsolvable(f"{key}: cannot raise sum")
            else:
                for i in range(len(values)):
                    v = values[i]
                    step = min(e, v - lo)
                    while step > 0 and v - step in own:
                        step -= 1
                    if step > 0:
                        values[i] = v - step
                        e -= step
                        break
                else:
                    raise Unsolvable(f"{key}: cannot lower sum")
            values.sort()
        held[key] = values
    return held


def top500_allocation(source, rng):
    counts = published.top500_counts(source)
    weights = {s.country: s.w for s in published.top500_scores(source)}
    targets = {c: counts[c] * (TOP + 1) - weights[c] for c in counts}
    groups = {c: (counts[c], targets[c]) for c in counts}
    held = allocate(groups, range(1, TOP + 1), rng, exact=False)
    return settle_with_ties(held, targets, 1, TOP)


def spellings(filename):
    return {published._code(r["country"], None): r["country"] for r in published.read_table(filename)}


def write_snapshot(path, ranks_by_country, spelling):
    rows = []
    for country, ranks in ranks_by_country.items():
        for i, r in enumerate(sorted(ranks), start=1):
            rows.append((r, f"Synthetic University {country.code}-{i:04d}", spelling[country]))
    rows.sort()
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rank", "name", "country"])
        w.writerows(rows)
    return len(rows)


def build_webometrics(edition, rng):
    counts = published.wr_counts(edition)
    weights = published.wr_weights(edition)
    # rank sums implied by W with M = LAST_RANK
    sums = {c: counts[c] * (LAST_RANK + 1) - weights[c] for c in counts}
    spelling = spellings(SPELLINGS[edition])
    ranks = {}

    if edition == "2012-01":
        top = top500_allocation("webometrics", rng)
        spelling |= spellings("wr500_league.csv") | spelling
        extras = [c for c in top if c not in counts]
        reserved = [LAST_RANK] + rng.sample(range(11000, LAST_RANK), EXTRA_TAIL * len(extras) - 1)
        rng.shuffle(reserved)
        for i, c in enumerate(sorted(extras)):
            ranks[c] = top[c] + reserved[i * EXTRA_TAIL : (i + 1) * EXTRA_TAIL]
        groups = {
            c: (counts[c] - len(top.get(c, [])), sums[c] - sum(top.get(c, [])))
            for c in counts
        }
        tail_slots = sorted(set(range(TOP + 1, LAST_RANK + 1)) - set(reserved))
        tail = allocate(groups, tail_slots, rng)
        for c in counts:
            ranks[c] = top.get(c, []) + tail[c]
    else:
        # pin the last rank so the list length comes out as LAST_RANK
        anchor = max(counts, key=lambda c: sums[c] / counts[c])
        groups = {c: (counts[c], sums[c]) for c in counts}
        groups[anchor] = (counts[anchor] - 1, sums[anchor] - LAST_RANK)
        ranks = allocate(groups, range(1, LAST_RANK), rng)
        ranks[anchor] = ranks[anchor] + [LAST_RANK]
    return ranks, spelling


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=STORE)
    parser.add_argument("--seed", type=int, default=20120101)
    args = parser.parse_args(argv)
    AliasTable.default()

    for i, edition in enumerate(published.WR_EDITIONS):
        rng = random.Random(args.seed + i)
        ranks, spelling = build_webometrics(edition, rng)
        n = write_snapshot(args.out / "webometrics" / f"{edition}.csv", ranks, spelling)
        print(f"webometrics/{edition}.csv: {n} rows")

    rng = random.Random(args.seed + 100)
    ranks = top500_allocation("qs", rng)
    n = write_snapshot(args.out / "qs" / "2012-01.csv", ranks, spellings("qs500_league.csv"))
    print(f"qs/2012-01.csv: {n} rows")


if __name__ == "__main__":
    main()
