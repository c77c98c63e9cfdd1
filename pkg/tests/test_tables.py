import pytest

from bondtaylor.errors import ConfigError
from bondtaylor.tables import TABLE_IDS, TableCell, TableReport, build_table


def test_cell_status_logic():
    ok = TableCell("row", "col", 1.0000004, 1.0, 5e-7)
    assert ok.status == "PASS" and ok.deviation == pytest.approx(4e-7)
    bad = TableCell("row", "col", 1.001, 1.0, 5e-7)
    assert bad.status == "FAIL"
    flagged = TableCell("row", "col", 1.001, None, 5e-7, flagged=True, note="n")
    assert flagged.status == "FLAGGED" and flagged.deviation is None
    # a flagged cell never fails, even with a reference attached
    assert TableCell("r", "c", 2.0, 1.0, 1e-9, flagged=True).status == "FLAGGED"


def test_report_pass_logic():
    cells = (TableCell("a", "x", 1.0, 1.0, 1e-9),
             TableCell("b", "x", 1.0, None, 1e-9, flagged=True))
    rep = TableReport("t", "title", 6, cells)
    assert rep.passed and rep.counts() == (1, 1, 0)
    rep2 = TableReport("t", "title", 6,
                       cells + (TableCell("c", "x", 2.0, 1.0, 1e-9),))
    assert not rep2.passed and rep2.counts() == (1, 1, 1)


def test_unknown_table_id():
    with pytest.raises(ConfigError, match="unknown table id"):
        build_table("nope")


@pytest.mark.parametrize("table_id,n_cells,n_flagged", [
    ("cir-price", 40, 1),
    ("cir-yield", 40, 0),
    ("cir-converge", 16, 0),
    ("dothan-converge", 16, 0),
    ("dothan-grid", 72, 2),
])
def test_reference_tables_reproduce(table_id, n_cells, n_flagged):
    rep = build_table(table_id)
    assert rep.table_id == table_id
    assert len(rep.cells) == n_cells
    n_pass, n_flag, n_fail = rep.counts()
    assert n_fail == 0
    assert n_flag == n_flagged
    assert rep.passed


def test_cir_price_flagged_cell_detail():
    rep = build_table("cir-price")
    flagged = [c for c in rep.cells if c.flagged]
    assert len(flagged) == 1
    cell = flagged[0]
    assert cell.row == "tau=3" and cell.column == "taylor_j6"
    # compared against the corrected reference, and it agrees
    assert cell.reference == 0.860691
    assert cell.deviation <= 5e-7 + 1e-12
    assert "0.960691" in cell.note


def test_dothan_grid_flagged_cells_detail():
    rep = build_table("dothan-grid")
    flagged = {(c.row, c.column): c for c in rep.cells if c.flagged}
    assert set(flagged) == {("sigma2=0.02 tau=5", "taylor_j3"),
                            ("sigma2=0.02 tau=10", "taylor_j3")}
    by_row = {row: cell for (row, _), cell in flagged.items()}
    # the recursion values, frozen as regression constants
    assert by_row["sigma2=0.02 tau=5"].computed == pytest.approx(83.810677, abs=5e-5)
    assert by_row["sigma2=0.02 tau=10"].computed == pytest.approx(70.235417, abs=5e-5)
    assert all(c.reference is None for c in flagged.values())


def test_table_ids_exposed():
    assert set(TABLE_IDS) == {"cir-price", "cir-yield", "cir-converge",
                              "dothan-converge", "dothan-grid"}
