"""
===========================================
How similar are two ranking systems?
===========================================

Restricted to their top 500 universities, QS and Webometrics each give a
country league table by weight. Over the countries both tables contain,
Spearman's rho and Kendall's tau-b measure how much they agree.
"""

# %%
# Both top-500 tables from the store
# ----------------------------------

import league_ledger as ll

store = ll.load_store(ll.FIXTURE_STORE)
qs = ll.rank_snapshot(ll.top_n_filter(store["qs", "2012-01"], 500), "W")
wr = ll.rank_snapshot(ll.top_n_filter(store["webometrics", "2012-01"], 500), "W")
print(len(qs), "countries in QS,", len(wr), "in Webometrics")

# %%
# Correlation over the shared countries
# -------------------------------------

result = ll.similarity(qs, wr)
print(f"common countries: {result.common_countries}")
print(f"Spearman rho:     {result.spearman_rho:.4f}")
print(f"Kendall tau-b:    {result.kendall_tau:.4f}")
print("only in QS:", [c.code for c in result.only_in_a])
print("only in Webometrics:", [c.code for c in result.only_in_b])

# %%
# Largest disagreements
# ---------------------
#
# Positions here are the original league positions, not the re-ranked ones.

gaps = sorted(result.rows, key=lambda r: -abs(r[1] - r[2]))[:5]
for country, pa, pb in gaps:
    print(f"{country.display_name:<28} QS {pa:>2}  WR {pb:>2}")
