import json
from importlib import resources

import pytest

from oddmtc import goldens
from oddmtc.dimsearch import Mode


EXPECTED_ROW_COUNTS = {
    "T1": 35, "T2": 3, "T3": 15, "T4": 13,
    "T5": 22, "T6": 2, "T7": 11, "T8": 21,
}


class TestLoadGoldens:
    def test_all_tables_present(self, golden_tables):
        assert set(golden_tables) == set(goldens.TABLE_IDS)
        for table_id, count in EXPECTED_ROW_COUNTS.items():
            assert golden_tables[table_id].row_count == count

    def test_params_reconstructed(self, golden_tables):
        t8 = golden_tables["T8"].params
        assert t8.mode is Mode.ADJOINT
        assert (t8.rank, t8.invertibles, t8.adjoint_rank, t8.adjoint_invertibles) == (49, 5, 29, 5)
        assert (t8.min_m1, t8.m1_square, t8.min_run) == (25, True, 5)
        t7 = golden_tables["T7"].params
        assert t7.m1_exclude == frozenset({49})
        assert t7.mi_coprime == 5

    def test_post_filter_only_t5(self, golden_tables):
        assert golden_tables["T5"].post_filter == "fixed_dim_multiplicity:3"
        for tid in set(goldens.TABLE_IDS) - {"T5"}:
            assert golden_tables[tid].post_filter is None

    def test_rows_canonically_sorted(self, golden_tables):
        for table in golden_tables.values():
            keys = [r.sort_key() for r in table.rows]
            assert keys == sorted(keys)

    def test_checksum_detects_tampering(self):
        data = resources.files("oddmtc").joinpath("data")
        manifest = json.loads(data.joinpath("manifest.json").read_text("utf-8"))
        raw = data.joinpath("t1.csv").read_bytes()
        with pytest.raises(goldens.GoldenDataError, match="checksum"):
            goldens._load_table("T1", manifest["T1"], raw + b"\n")

    def test_factored_fpdims_consistent(self, golden_tables):
        for table in golden_tables.values():
            assert len(table.fpdim_factored) == table.row_count
            for text, row in zip(table.fpdim_factored, table.rows):
                assert goldens._parse_factored(text) == row.fpdim


class TestVerify:
    @pytest.mark.parametrize("table_id", ["T2", "T4", "T6", "T7"])
    def test_fast_tables_match(self, golden_tables, table_id):
        diff = goldens.verify(golden_tables[table_id])
        assert diff.empty
