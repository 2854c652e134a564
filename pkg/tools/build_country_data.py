"""Regenerate src/league_ledger/data/{countries,aliases}.csv from pycountry.

Run once by hand when the country list needs refreshing; the package reads
the generated CSV files and does not depend on pycountry at runtime.

    python tools/build_country_data.py
"""

from __future__ import annotations

import csv
from pathlib import Path

import pycountry

DATA = Path(__file__).resolve().parents[1] / "src" / "league_ledger" / "data"

# Display names follow the spellings used by the ranking tables we ship.
DISPLAY_OVERRIDES = {
    "USA": "United States of America",
    "GBR": "United Kingdom",
    "KOR": "Republic of Korea",
    "PRK": "North Korea",
    "IRN": "Iran",
    "RUS": "Russian Federation",
    "TWN": "Taiwan",
    "VNM": "Vietnam",
    "KAZ": "Kazakhstan",
    "HRV": "Croatia",
    "PSE": "Palestine",
    "HKG": "Hong Kong",
    "CZE": "Czech Republic",
    "TUR": "Turkey",
    "BOL": "Bolivia",
    "VEN": "Venezuela",
    "TZA": "Tanzania",
    "SYR": "Syria",
    "LAO": "Laos",
    "MDA": "Moldova",
    "MKD": "North Macedonia",
    "MAC": "Macao",
    "COD": "Democratic Republic of the Congo",
    "COG": "Republic of the Congo",
}

# (alias, code, comment). Comments are written above the row.
EXTRA_ALIASES = [
    ("United States", "USA", None),
    ("US", "USA", None),
    ("U.S.A.", "USA", None),
    ("UK", "GBR", None),
    ("Great Britain", "GBR", None),
    ("Republic Of Korea", "KOR", None),
    ("South Korea", "KOR", None),
    ("Korea", "KOR", None),
    ("Iran (Islamic Republic of Iran)", "IRN", "spelling used by the WR country tables"),
    ("Iran (Islamic Republic of)", "IRN", None),
    ("Russia", "RUS", None),
    ("Viet Nam", "VNM", None),
    ("Kazakistan", "KAZ", "misspelling found in the WR count and average-rank tables"),
    ("Kazakstan", "KAZ", "older spelling found in the WR weight/position and QS tables"),
    ("Croatia (local name: Hrvatska)", "HRV", "spelling found in the WR top-500 tables"),
    ("Hrvatska", "HRV", None),
    (
        "inland",
        "FIN",
        "transcription typo for Finland in the WR position table; kept so joins stay total",
    ),
    ("Palestinian Territory", "PSE", None),
    ("Palestine, State of", "PSE", None),
    ("Hong Kong SAR", "HKG", None),
    ("Hong Kong, China", "HKG", None),
    ("Czechia", "CZE", None),
    ("Turkiye", "TUR", None),
    ("Türkiye", "TUR", None),
    ("Holland", "NLD", None),
    ("UAE", "ARE", None),
    ("Ivory Coast", "CIV", None),
    ("Macau", "MAC", None),
]


def key(text: str) -> str:
    return " ".join(text.split()).casefold()


def main() -> None:
    countries = []
    aliases: dict[str, tuple[str, str]] = {}

    def add(alias: str, code: str) -> None:
        k = key(alias)
        if k in aliases and aliases[k][1] != code:
            raise SystemExit(f"alias {alias!r} maps to {aliases[k][1]} and {code}")
        aliases.setdefault(k, (alias, code))

    for c in sorted(pycountry.countries, key=lambda c: c.alpha_3):
        display = DISPLAY_OVERRIDES.get(c.alpha_3) or getattr(c, "common_name", None) or c.name
        countries.append((c.alpha_3, display))
        for alias in (display, c.name, getattr(c, "common_name", None), getattr(c, "official_name", None), c.alpha_3):
            if alias:
                add(alias, c.alpha_3)

    with open(DATA / "countries.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["code", "name"])
        w.writerows(countries)

    extra_keys = {key(a) for a, _, _ in EXTRA_ALIASES}
    with open(DATA / "aliases.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["alias", "code"])
        for k, (alias, code) in sorted(aliases.items()):
            if k not in extra_keys:
                w.writerow([alias, code])
        fh.write("# Spellings seen in ranking tables and common variants.\n")
        for alias, code, comment in EXTRA_ALIASES:
            if key(alias) in aliases and aliases[key(alias)][1] != code:
                raise SystemExit(f"alias {alias!r} conflicts with generated data")
            if comment:
                fh.write(f"# {comment}\n")
            w.writerow([alias, code])


if __name__ == "__main__":
    main()
