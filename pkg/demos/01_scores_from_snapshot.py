"""
========================================
Country scores from a university ranking
========================================

A ranking snapshot is a list of universities with their rank and country.
Two country scores come out of it: the average rank ``AR`` (lower is better)
and the weight ``W``, where every university ranked ``R`` in a list of size
``M`` contributes ``M - R + 1`` points.
"""

# %%
# A tiny snapshot
# ---------------
#
# CSV text goes through the same parser as files in a store. Country names are
# free text and get resolved to ISO 3166 alpha-3 codes.

import league_ledger as ll

text = """rank,name,country
1,Alpha Institute,Sweden
2,Beta University,Norway
3,Gamma College,Sweden
4,Delta University,Norway
5,Epsilon School,Norway
6,Zeta Academy,Iceland
"""

snapshot, report = ll.parse_snapshot(text, source="toy", edition="January 2012")
print(snapshot.edition, "m =", snapshot.m, "rows parsed:", report.parsed_rows)

# %%
# Scores per country
# ------------------

for s in ll.score_all(snapshot):
    print(f"{s.country.code}  n={s.count}  AR={s.ar:.2f}  W={s.w}")

# %%
# The two methods disagree: Norway has more universities, Sweden better ones.

for method in ("W", "AR"):
    ranking = ll.rank_snapshot(snapshot, method)
    print(method, [r.score.country.code for r in ranking.rows])

# %%
# Restricting to the top of the list
# ----------------------------------
#
# ``top_n_filter`` keeps universities ranked ``<= n`` and rescores them with
# ``M = n``.

top3 = ll.top_n_filter(snapshot, 3)
print(top3.edition, [(s.country.code, s.w) for s in ll.score_all(top3)])
