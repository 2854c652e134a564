import json

import pytest

from league_ledger import (
    Basis,
    CountryCode,
    CountryRanking,
    CountryScore,
    InvariantError,
    Method,
    RankDiff,
    RankedRow,
    RankingSnapshot,
    UniversityEntry,
    normalize_edition,
)

USA = CountryCode("USA", "United States of America")


@pytest.mark.parametrize("code", ["us", "USAA", "U5A", "", "usa"])
def test_country_code_rejects_bad_codes(code):
    with pytest.raises(InvariantError) as exc:
        CountryCode(code)
    assert exc.value.rule == "country-code"


def test_country_code_equality_ignores_display_name():
    assert CountryCode("FIN", "Finland") == CountryCode("FIN", "inland")
    assert len({CountryCode("FIN", "a"), CountryCode("FIN", "b")}) == 1
    assert CountryCode("ABC").display_name == "ABC"


def test_university_entry_rank_must_be_positive():
    with pytest.raises(InvariantError, match="rank-positive"):
        UniversityEntry(0, "x", USA)
    with pytest.raises(InvariantError, match="rank-integer"):
        UniversityEntry(1.0, "x", USA)


def test_snapshot_rank_cannot_exceed_m():
    with pytest.raises(InvariantError) as exc:
        RankingSnapshot("wr", "2012-01", 3, (UniversityEntry(4, "x", USA),))
    assert exc.value.rule == "rank-within-m"


def test_snapshot_tied_rows_may_outnumber_m():
    entries = tuple(UniversityEntry(1, f"u{i}", USA) for i in range(3))
    snap = RankingSnapshot("wr", "2012-01", 2, entries)
    assert len(snap.entries) == 3 and snap.m == 2


@pytest.mark.parametrize("edition", ["2012", "2012-13", "Jan 2012", "2012-1"])
def test_snapshot_edition_format(edition):
    with pytest.raises(InvariantError, match="edition-format"):
        RankingSnapshot("wr", edition, 1, ())


def test_snapshot_accepts_top_n_edition():
    assert RankingSnapshot("wr", "2012-01@top500", 1, ()).edition == "2012-01@top500"


@pytest.mark.parametrize(
    "label, expected",
    [
        ("January 2012", "2012-01"),
        ("July 2013", "2013-07"),
        ("jan 2013", "2013-01"),
        ("2012/7", "2012-07"),
        ("2013-07", "2013-07"),
    ],
)
def test_normalize_edition(label, expected):
    assert normalize_edition(label) == expected


def test_normalize_edition_rejects_garbage():
    with pytest.raises(InvariantError):
        normalize_edition("Smarch 2012")


def test_country_score_rules():
    CountryScore(USA, 0, None, 0)
    with pytest.raises(InvariantError, match="empty-country-w"):
        CountryScore(USA, 0, None, 3)
    with pytest.raises(InvariantError, match="empty-country-ar"):
        CountryScore(USA, 0, 2.0, 0)
    with pytest.raises(InvariantError, match="ar-range"):
        CountryScore(USA, 1, 0.5, 3)
    with pytest.raises(InvariantError, match="w-positive"):
        CountryScore(USA, 1, 2.0, 0)


def test_country_score_bounds_against_m():
    CountryScore(USA, 3, 2.0, 6).check_bounds(3)
    with pytest.raises(InvariantError, match="w-max"):
        CountryScore(USA, 3, 2.0, 7).check_bounds(3)
    with pytest.raises(InvariantError, match="ar-max"):
        CountryScore(USA, 1, 4.0, 1).check_bounds(3)


def _score(code, w, ar=1.0, count=1):
    return CountryScore(CountryCode(code), count, ar, w)


def test_ranking_positions_must_be_contiguous():
    with pytest.raises(InvariantError, match="positions-contiguous"):
        CountryRanking(Method.W, Basis("s", "2012-01", 5), (RankedRow(1, _score("AAA", 5)), RankedRow(3, _score("BBB", 4))))


def test_ranking_order_is_checked():
    with pytest.raises(InvariantError, match="order-w"):
        CountryRanking("W", Basis("s", "2012-01", 5), ((1, _score("AAA", 1)), (2, _score("BBB", 4))))
    with pytest.raises(InvariantError, match="order-ar"):
        CountryRanking("AR", Basis("s", "2012-01", 5), ((1, _score("AAA", 1, 3.0)), (2, _score("BBB", 1, 2.0))))


def test_ranking_rejects_repeated_country():
    with pytest.raises(InvariantError, match="country-unique"):
        CountryRanking("W", Basis("s", "2012-01", 5), ((1, _score("AAA", 2)), (2, _score("AAA", 1))))


def test_rank_diff_sign_convention():
    d = RankDiff.between(CountryCode("PAK"), 40, 35)
    assert d.delta == 5
    d = RankDiff.between(CountryCode("ROU"), 24, 33)
    assert d.delta == -9
    with pytest.raises(InvariantError, match="delta-sign"):
        RankDiff(CountryCode("ROU"), 24, 33, 9)


def test_round_trips_through_json():
    snap = RankingSnapshot("wr", "2012-01", 5, (UniversityEntry(1, "Harvard", USA), UniversityEntry(3, "MIT", USA)))
    ranking = CountryRanking(Method.AR, Basis("wr", "2012-01", 5), ((1, CountryScore(USA, 2, 2.0, 7)),))
    diff = RankDiff.between(USA, 2, 1)
    for obj in (USA, snap, ranking, diff, ranking.rows[0].score, snap.entries[0]):
        data = json.loads(json.dumps(obj.to_dict()))
        back = type(obj).from_dict(data)
        assert back == obj
        assert back.to_dict() == obj.to_dict()


def test_types_are_immutable():
    with pytest.raises(AttributeError):
        USA.code = "CAN"
