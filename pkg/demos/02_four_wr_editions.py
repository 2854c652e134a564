"""
====================================
Four Webometrics editions, 2012-2013
====================================

The bundled fixture store holds synthetic university lists whose per-country
aggregates match the published Webometrics country tables. This script builds
the W league tables for each edition and follows how countries moved.
"""

# %%
# Loading the store
# -----------------

import numpy as np

import league_ledger as ll
from league_ledger import published

store = ll.load_store(ll.FIXTURE_STORE)
print(sorted(store.keys()))

# %%
# League tables by weight
# -----------------------
#
# The fixture lists run to rank 11999, which is the list size the published
# AR and W columns are consistent with.

rankings = {}
for edition in published.WR_EDITIONS:
    rankings[edition] = ll.rank_snapshot(store["webometrics", edition], "W")
    top = rankings[edition].rows[:5]
    print(edition, ", ".join(f"{r.score.country.code} {r.score.w}" for r in top))

# %%
# The store agrees with the published positions for all 50 tabulated
# countries in every edition.

for edition, ranking in rankings.items():
    pos = ranking.positions()
    printed = published.wr_positions(edition)
    assert all(pos[c] == p for c, p in printed.items())

# %%
# Who moved between January 2012 and July 2013
# --------------------------------------------

diff = ll.edition_diff(rankings["2012-01"], rankings["2013-07"])
gain, drop = ll.extreme_movers(diff)
print("largest gain:", gain.country.display_name, gain.delta)
print("largest drop:", drop.country.display_name, drop.delta)

deltas = np.array([d.delta for d in diff])
print("countries that moved:", np.count_nonzero(deltas), "of", len(deltas))

# %%
# Average rank tells a different story: small systems with a few strong
# universities lead.

ar = ll.rank_snapshot(store["webometrics", "2012-01"], "AR")
for row in ar.rows[:5]:
    print(row.position, row.score.country.display_name, f"{row.score.ar:.2f}", row.score.count)
