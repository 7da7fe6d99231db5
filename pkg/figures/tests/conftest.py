import csv

import pytest

SWEEP_COLUMNS = ["l_ch", "w1", "id", "gain_target", "ls", "lg", "cx", "ld",
                 "qd", "c1", "cp", "gain_db", "s11_db", "s22_db", "nf_db",
                 "iip3_dbm", "status", "binding"]


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return str(path)


@pytest.fixture()
def sweep_csv(tmp_path):
    """Tiny schema-faithful sweep export: 2 currents x 3 widths with one
    infeasible corner point."""
    rows = []
    for id_ma, pts in [
        (0.0003, [(16e-6, None), (32e-6, -7.5), (48e-6, -9.0)]),
        (0.0004, [(16e-6, -1.5), (32e-6, 3.0), (48e-6, -6.0)]),
    ]:
        for w1, iip3 in pts:
            infeasible = iip3 is None
            rows.append([
                1.2e-07, w1, id_ma, 10.5,
                2.0e-09, 1.2e-08, 2.5e-13, 1.5e-08, 8.5, 3.1e-13, 1.2e-12,
                "" if infeasible else 10.5,
                "" if infeasible else -30.0,
                "" if infeasible else -100.0,
                "" if infeasible else 1.5,
                "" if infeasible else iip3,
                "Infeasible" if infeasible else "Feasible",
                "LgMax" if infeasible else "",
            ])
    return write_csv(tmp_path / "sweep.csv", SWEEP_COLUMNS, rows)


@pytest.fixture()
def library_csv(tmp_path):
    header = ["nt", "od", "w", "s", "L", "Q", "r_series", "r_parallel"]
    rows = [[2.0, 2e-4, 6e-6, 2e-6, 2e-9, 8.0, 3.0, 500.0],
            [3.0, 2.5e-4, 6e-6, 2e-6, 6e-9, 11.0, 6.0, 1500.0],
            [4.5, 3e-4, 6e-6, 2e-6, 15e-9, 8.5, 20.0, 1960.0]]
    return write_csv(tmp_path / "lib.csv", header, rows)


@pytest.fixture()
def envelopes_csv(tmp_path):
    header = ["kind", "L", "Q", "r_series", "r_parallel"]
    rows = [["maxq", 2e-9, 8.0, 3.0, 500.0],
            ["maxq", 6e-9, 11.0, 6.0, 1500.0],
            ["minq", 15e-9, 8.5, 20.0, 1960.0],
            ["drain", 15e-9, 8.5, 20.0, 1960.0]]
    return write_csv(tmp_path / "env.csv", header, rows)


@pytest.fixture()
def curves_csv(tmp_path):
    header = ["id", "w", "cx"]
    rows = []
    for id_value in (0.3, 0.5):
        for k in range(40):
            w = 0.01 + k * 0.02
            cx = (id_value * w) ** 0.5 - w
            rows.append([id_value, w, cx])
    return write_csv(tmp_path / "cx.csv", header, rows)
