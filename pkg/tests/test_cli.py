import pathlib

import pytest

from lna_forge.cli import main
from lna_forge.explorer import import_rows

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_lib_build(tmp_path, capsys):
    out_csv = tmp_path / "lib.csv"
    env_csv = tmp_path / "env.csv"
    code, out = run_cli(capsys, "lib", "build", "--out", str(out_csv),
                        "--envelopes", str(env_csv))
    assert code == 0
    assert "tech-card sha256:" in out
    header = out_csv.read_text().splitlines()[0]
    assert header == "nt,od,w,s,L,Q,r_series,r_parallel"
    assert env_csv.read_text().startswith("kind,L,Q,r_series,r_parallel")


def test_synth_feasible_exit_zero(capsys):
    code, out = run_cli(capsys, "synth", "--gain", "10.5", "--id", "0.5e-3",
                        "--w1", "48e-6", "--lch", "120e-9")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-2].startswith("l_ch,w1,id,")
    assert ",Feasible," in lines[-1]


def test_synth_infeasible_exit_one(capsys):
    code, out = run_cli(capsys, "synth", "--gain", "10.5", "--id", "0.2e-3",
                        "--w1", "32e-6", "--lch", "120e-9")
    assert code == 1
    assert ",Infeasible," in out


def test_sweep_and_report(tmp_path, capsys):
    out_csv = tmp_path / "tiny.csv"
    code, out = run_cli(capsys, "sweep", "wxid",
                        "--w1-list", "32e-6,48e-6",
                        "--id-list", "0.4e-3,0.5e-3",
                        "--out", str(out_csv))
    assert code == 0
    rows = import_rows(str(out_csv))
    assert len(rows) == 4
    code, out = run_cli(capsys, "report", str(out_csv))
    assert code == 0
    assert "records: 4" in out


def test_sweep_json_provenance(tmp_path, capsys):
    out_json = tmp_path / "tiny.json"
    code, _ = run_cli(capsys, "sweep", "wxid",
                      "--w1-list", "48e-6", "--id-list", "0.5e-3",
                      "--out", str(out_json), "--format", "json")
    assert code == 0
    code, out = run_cli(capsys, "report", str(out_json))
    assert code == 0
    assert "tech-card sha256: " in out
    assert "(not recorded" not in out


def test_report_golden_format(capsys):
    code, out = run_cli(capsys, "report", str(GOLDEN / "small_result.csv"),
                        "--filter", "zigbee")
    assert code == 0
    assert out == (GOLDEN / "report_small.txt").read_text()


def test_report_rejects_malformed_input(tmp_path, capsys):
    bad = tmp_path / "junk.csv"
    bad.write_text("not,a,result\n1,2,3\n")
    code = main(["report", str(bad)])
    assert code == 2


def test_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["synth", "--nope", "1"])
    assert exc.value.code == 2


def test_cxcurve_peaks(tmp_path, capsys):
    out_csv = tmp_path / "cx.csv"
    code, _ = run_cli(capsys, "cxcurve", "--id-list", "0.4",
                      "--points", "401", "--out", str(out_csv))
    assert code == 0
    import csv
    with open(out_csv) as fh:
        rows = [(float(r["w"]), float(r["cx"])) for r in csv.DictReader(fh)]
    peak_w, peak_cx = max(rows, key=lambda t: t[1])
    step = rows[1][0] - rows[0][0]
    assert abs(peak_w - 0.1) <= step           # id/4
    assert abs(peak_cx - 0.1) <= step
