import random

import pytest

import league_ledger as ll
from league_ledger.ingest import AliasTable

ACCEPTANCE_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num, title = marker.args
        previous = ACCEPTANCE_RESULTS.get(num, (title, "PASS"))[1]
        status = "PASS" if report.passed and previous == "PASS" else "FAIL"
        ACCEPTANCE_RESULTS[num] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        title, status = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"[{status}] criterion {num}: {title}")


@pytest.fixture(scope="session")
def aliases():
    return AliasTable.default()


@pytest.fixture(scope="session")
def store_root():
    return ll.FIXTURE_STORE


@pytest.fixture(scope="session")
def store(store_root):
    return ll.load_store(store_root)


CODES = ["AAA", "BBB", "CCC", "DDD", "EEE", "FFF", "GGG", "HHH", "III", "JJJ"]


def make_snapshot(m, ranks_by_code, source="test", edition="2012-01"):
    entries = []
    for code, ranks in ranks_by_code.items():
        for i, r in enumerate(ranks):
            entries.append(ll.UniversityEntry(r, f"{code} uni {i}", ll.CountryCode(code)))
    return ll.RankingSnapshot(source, edition, m, tuple(entries))


def random_snapshot(rng: random.Random, max_m=50, max_countries=10, distinct=None):
    """Random valid snapshot; ranks may repeat unless ``distinct``."""
    m = rng.randint(1, max_m)
    k = rng.randint(1, max_countries)
    codes = rng.sample(CODES, k)
    if distinct is None:
        distinct = rng.random() < 0.5
    n_entries = rng.randint(1, m)
    if distinct:
        ranks = rng.sample(range(1, m + 1), n_entries)
    else:
        ranks = [rng.randint(1, m) for _ in range(n_entries)]
    entries = tuple(
        ll.UniversityEntry(r, f"u{i}", ll.CountryCode(rng.choice(codes))) for i, r in enumerate(ranks)
    )
    return ll.RankingSnapshot("rand", "2012-01", m, entries)
