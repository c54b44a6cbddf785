import pytest

from oddmtc import goldens


@pytest.fixture(scope="session")
def golden_tables():
    tables = goldens.load_goldens()
    return {t.table_id: t for t in tables}
