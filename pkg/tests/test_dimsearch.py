from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oddmtc.dimsearch import (
    DimSolution,
    Mode,
    SearchParams,
    _min_run_ok,
    enumerate_solutions,
    m1_candidates,
    next_level,
    validate_solution,
)


class TestSearchParams:
    def test_basic_derived(self):
        p = SearchParams(rank=25, invertibles=3)
        assert (p.layer_invertibles, p.group_order, p.k, p.perfect, p.t) == (3, 1, 11, False, 9)

    def test_perfect_derived(self):
        p = SearchParams(rank=23, invertibles=1)
        assert (p.k, p.perfect, p.t) == (11, True, 225)

    def test_adjoint_derived(self):
        p = SearchParams(rank=49, invertibles=5, mode=Mode.ADJOINT,
                         adjoint_rank=29, adjoint_invertibles=5)
        assert (p.layer_invertibles, p.group_order, p.k) == (5, 5, 12)

    @pytest.mark.parametrize("kwargs", [
        dict(rank=24, invertibles=3),
        dict(rank=25, invertibles=4),
        dict(rank=25, invertibles=25),
        dict(rank=25, invertibles=3, min_m1=0),
        dict(rank=49, invertibles=5, mode=Mode.ADJOINT),
        dict(rank=49, invertibles=5, mode=Mode.ADJOINT, adjoint_rank=29,
             adjoint_invertibles=29),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SearchParams(**kwargs)


class TestM1Candidates:
    def test_rank25(self):
        assert m1_candidates(SearchParams(rank=25, invertibles=3)) == [9, 17]

    def test_tiny_perfect_empty(self):
        assert m1_candidates(SearchParams(rank=3, invertibles=1)) == []

    def test_adjoint(self):
        p = SearchParams(rank=35, invertibles=3, mode=Mode.ADJOINT,
                         adjoint_rank=17, adjoint_invertibles=3)
        assert m1_candidates(p) == [3, 11, 19, 27, 35, 43]

    def test_predicates(self):
        p = SearchParams(rank=49, invertibles=5, mode=Mode.ADJOINT,
                         adjoint_rank=29, adjoint_invertibles=5)
        base = m1_candidates(p)
        squares = m1_candidates(SearchParams(rank=49, invertibles=5, mode=Mode.ADJOINT,
                                             adjoint_rank=29, adjoint_invertibles=5,
                                             m1_square=True))
        assert set(squares) <= set(base)
        assert all(int(m**0.5 + 0.5) ** 2 == m for m in squares)
        excl = m1_candidates(SearchParams(rank=49, invertibles=5, mode=Mode.ADJOINT,
                                          adjoint_rank=29, adjoint_invertibles=5,
                                          m1_square=True, m1_exclude=frozenset({49})))
        assert set(squares) - set(excl) == {49}
        cop = m1_candidates(SearchParams(rank=49, invertibles=5, mode=Mode.ADJOINT,
                                         adjoint_rank=29, adjoint_invertibles=5,
                                         mi_coprime=5))
        assert all(m % 5 for m in cop)

    def test_all_congruent_to_rank(self):
        for rank, s in ((25, 3), (41, 5), (47, 15)):
            p = SearchParams(rank=rank, invertibles=s)
            assert all(m % 8 == rank % 8 and m % 2 == 1 for m in m1_candidates(p))


class TestNextLevel:
    def test_worked_example(self):
        p = SearchParams(rank=25, invertibles=3)
        out = next_level(Fraction(7), 3, 10, p)
        assert out == [(3, Fraction(5)), (5, Fraction(157, 9))]

    @given(c_num=st.integers(1, 50), u=st.integers(1, 15).map(lambda x: 2 * x + 1),
           rem=st.integers(1, 10))
    @settings(max_examples=200, deadline=None)
    def test_recurrence_and_bounds(self, c_num, u, rem):
        p = SearchParams(rank=25, invertibles=3)
        c = Fraction(c_num, 3)
        for un, cn in next_level(c, u, rem, p):
            assert un >= u and un % 2 == 1
            assert cn == c * un * un / (u * u) - 2
            assert cn > 0
            # upper bound: next state keeps the budget non-negative
            assert un * un * c <= (Fraction(3, 9) + 2 * rem) * u * u


class TestMinRunPredicate:
    def test_qualifying(self):
        assert _min_run_ok((7, 7, 7, 7, 7, 5, 5, 5, 5, 5), 5)
        assert _min_run_ok((9, 9, 9, 9, 9, 5, 5), 5)
        assert _min_run_ok((45, 15, 5, 3, 3, 3, 3, 3), 5)

    def test_rejected(self):
        # leftover value 7 is neither divisible by 5 nor in a group of 5
        assert not _min_run_ok((15, 15, 15, 15, 15, 7, 7), 5)
        # no value reaches the run length at all
        assert not _min_run_ok((15, 15, 15, 5, 5), 5)


class TestEnumerateSolutions:
    def test_rank27_pinpoint(self):
        sols = enumerate_solutions(SearchParams(rank=27, invertibles=3, min_m1=5))
        assert len(sols) == 1
        assert sols[0].fpdim == 2475
        assert sols[0].dims == (15, 15, 15, 15, 15, 5, 5, 5, 3, 3, 3, 3)

    def test_adjoint_rank45(self):
        p = SearchParams(rank=45, invertibles=3, mode=Mode.ADJOINT,
                         adjoint_rank=15, adjoint_invertibles=3)
        sols = enumerate_solutions(p)
        assert [(s.fpdim, s.dims) for s in sols] == [
            (2925, (15, 15, 3, 3, 3, 3)),
            (333, (3, 3, 3, 3, 3, 3)),
        ]

    def test_canonical_order_and_quotients(self, golden_tables):
        t1 = golden_tables["T1"]
        sols = enumerate_solutions(t1.params)
        assert sols == sorted(sols, key=DimSolution.sort_key)
        for s in sols:
            assert s.quotients == tuple(s.fpdim // (d * d) for d in s.dims)
            assert list(s.quotients) == sorted(s.quotients)

    def test_jobs_equivalence(self):
        p = SearchParams(rank=27, invertibles=3, min_m1=5)
        assert enumerate_solutions(p, jobs=1) == enumerate_solutions(p, jobs=2)

    def test_fpdim_bound_restricts(self):
        p = SearchParams(rank=25, invertibles=3)
        full = enumerate_solutions(p)
        capped = enumerate_solutions(SearchParams(rank=25, invertibles=3, fpdim_bound=10**5))
        assert [s for s in full if s.fpdim <= 10**5] == capped


class TestValidateSolution:
    def test_golden_rows_validate(self, golden_tables):
        for table in golden_tables.values():
            for row in table.rows:
                validate_solution(row, table.params)

    def test_tampered_rows_rejected(self, golden_tables):
        t1 = golden_tables["T1"]
        row = t1.rows[0]
        bad_fpdim = DimSolution(row.fpdim + 8, row.invertibles, row.dims, row.quotients)
        with pytest.raises(AssertionError):
            validate_solution(bad_fpdim, t1.params)
        bad_dims = DimSolution(row.fpdim, row.invertibles,
                               row.dims[:-1] + (row.dims[-1] + 2,), row.quotients)
        with pytest.raises(AssertionError):
            validate_solution(bad_dims, t1.params)

    def test_full_multiset(self):
        sol = DimSolution(441, 3, (7, 7, 7, 3, 3, 3, 3, 3, 3, 3, 3),
                          tuple(441 // (d * d) for d in (7,) * 3 + (3,) * 8))
        ms = sol.full_multiset()
        assert len(ms) == 25
        assert sum(d * d for d in ms) == 441
