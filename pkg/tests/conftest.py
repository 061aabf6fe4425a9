import pytest

from addmul.engine import BuildConfig, build_table, reachable_sets_oracle


@pytest.fixture(scope="session")
def table2_16k():
    return build_table(BuildConfig(base=2, limit=2 ** 14))


@pytest.fixture(scope="session")
def table2_big():
    return build_table(BuildConfig(base=2, limit=2 ** 20))


@pytest.fixture(scope="session")
def table2_pair_64k():
    on = build_table(BuildConfig(base=2, limit=2 ** 16, use_reduction=True))
    off = build_table(BuildConfig(base=2, limit=2 ** 16, use_reduction=False))
    return on, off


@pytest.fixture(scope="session")
def table3_pair():
    on = build_table(BuildConfig(base=3, limit=3 ** 10, use_reduction=True))
    off = build_table(BuildConfig(base=3, limit=3 ** 10, use_reduction=False))
    return on, off


@pytest.fixture(scope="session")
def table3(table3_pair):
    return table3_pair[0]


@pytest.fixture(scope="session")
def table1_100k():
    return build_table(BuildConfig(base=1, limit=10 ** 5))


@pytest.fixture(scope="session")
def oracle2_14():
    return reachable_sets_oracle(2, 14)


@pytest.fixture(scope="session")
def oracle3_9():
    return reachable_sets_oracle(3, 9)
