import pytest

from oddmtc import oracle
from oddmtc.dimsearch import Mode, SearchParams, enumerate_solutions, validate_solution


def check_equivalence(params, bound):
    search = enumerate_solutions(params)
    reference = oracle.oracle_enumerate(params, bound)
    diff = oracle.compare(search, reference, bound)
    assert diff.empty, (diff.missing, diff.extra)
    return reference


class TestOracleEnumerate:
    def test_matches_search_rank25(self):
        rows = check_equivalence(SearchParams(rank=25, invertibles=3, fpdim_bound=10**6), 10**6)
        assert len(rows) == 16  # the rank-25 arrays with fpdim below 1e6

    def test_matches_search_adjoint(self):
        params = SearchParams(rank=45, invertibles=3, mode=Mode.ADJOINT,
                              adjoint_rank=15, adjoint_invertibles=3, fpdim_bound=10**5)
        rows = check_equivalence(params, 10**5)
        assert [r.fpdim for r in rows] == [2925, 333]

    def test_matches_search_with_predicates(self):
        params = SearchParams(rank=41, invertibles=5, min_m1=25, m1_square=True,
                              fpdim_bound=10**6)
        check_equivalence(params, 10**6)

    def test_matches_search_min_run(self):
        params = SearchParams(rank=49, invertibles=5, mode=Mode.ADJOINT,
                              adjoint_rank=29, adjoint_invertibles=5,
                              min_m1=25, m1_square=True, min_run=5,
                              fpdim_bound=10**5)
        check_equivalence(params, 10**5)

    def test_rows_validate(self):
        params = SearchParams(rank=25, invertibles=3, fpdim_bound=10**6)
        for row in oracle.oracle_enumerate(params, 10**6):
            validate_solution(row, params)

    def test_bound_below_invertibles_rejected(self):
        with pytest.raises(ValueError):
            oracle.oracle_enumerate(SearchParams(rank=25, invertibles=3), 2)


class TestCompare:
    def test_reports_differences(self):
        params = SearchParams(rank=25, invertibles=3, fpdim_bound=10**5)
        rows = oracle.oracle_enumerate(params, 10**5)
        diff = oracle.compare(rows[1:], rows, 10**5)
        assert diff.missing == (rows[0],) and not diff.extra
        diff = oracle.compare(rows, rows[1:], 10**5)
        assert diff.extra == (rows[0],) and not diff.missing
        assert not oracle.compare(rows, rows, 10**5).missing
