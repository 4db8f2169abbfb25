"""Command-line surface: exit codes, determinism, schemas, artifacts."""

import json

import pytest

from regionlab import box, region_to_json
from regionlab import cli, reportio


def write_region(path, region):
    path.write_text(json.dumps(region_to_json(region)))
    return str(path)


@pytest.fixture
def pair_files(tmp_path):
    p = write_region(tmp_path / "p.json", box(0, 0, 1, 1))
    q = write_region(tmp_path / "q.json", box(0.25, 0, 1.25, 1))
    return p, q


def run(argv):
    return cli.main(argv)


def test_metric_json_output(pair_files, tmp_path):
    p, q = pair_files
    out = tmp_path / "m.json"
    assert run(["metric", p, q, "--metrics", "H,V", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    reportio.validate_report(doc, "metric")
    by_name = {r["metric"]: r for r in doc["results"]}
    assert by_name["H"]["value"] == pytest.approx(0.25, abs=1e-3)
    assert by_name["V"]["value"] == pytest.approx(0.5, abs=0.01)


def test_metric_runs_are_byte_identical(pair_files, tmp_path):
    p, q = pair_files
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["metric", p, q, "--metrics", "H,W1", "--ot-samples", "256", "--seed", "7"]
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_metric_csv_header(pair_files, tmp_path):
    p, q = pair_files
    out = tmp_path / "m.csv"
    assert run(["metric", p, q, "--metrics", "H", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(reportio.METRIC_CSV_HEADER)
    assert lines[1].startswith("H,")


def test_history_json_and_csv(tmp_path):
    out_j = tmp_path / "h.json"
    out_c = tmp_path / "h.csv"
    argv = ["history", "--name", "history_4", "--metrics", "H", "--steps", "5"]
    assert run(argv + ["--out", str(out_j)]) == 0
    doc = json.loads(out_j.read_text())
    reportio.validate_report(doc, "history")
    assert doc["reports"][0]["verdict"] == "ConvergesToZero"
    assert run(argv + ["--format", "csv", "--out", str(out_c)]) == 0
    lines = out_c.read_text().splitlines()
    assert lines[0] == ",".join(reportio.HISTORY_CSV_HEADER)
    kinds = [ln.split(",")[2] for ln in lines[1:]]
    assert kinds.count("verdict") == 1
    assert kinds.count("sample") == len(doc["reports"][0]["samples"])


def test_history_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["history", "--name", "history_8", "--metrics", "V", "--steps", "6", "--seed", "3"]
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_history_family_uses_k_list(tmp_path):
    out = tmp_path / "f.json"
    argv = ["history", "--name", "fig1", "--metrics", "V", "--k-list", "4,8,16,32", "--out", str(out)]
    assert run(argv) == 0
    doc = json.loads(out.read_text())
    # family indices run toward the limit, so they ascend
    ts = [s["t"] for s in doc["reports"][0]["samples"]]
    assert ts == [4, 8, 16, 32]


def test_history_family_k_list_needs_four_points(capsys):
    assert run(["history", "--name", "fig1", "--metrics", "V", "--k-list", "4,8"]) == 2
    assert "4" in capsys.readouterr().err


def test_history_family_rejects_schedule_flags(capsys):
    code = run(["history", "--name", "fig1", "--metrics", "V", "--t0", "0.5"])
    assert code == 2
    assert "k-list" in capsys.readouterr().err


def test_unknown_history_name_exit_4(capsys):
    assert run(["history", "--name", "history_404", "--metrics", "H"]) == 4
    err = capsys.readouterr().err
    assert "history_404" in err


def test_malformed_region_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "convex_polygon", "vertices": [[0,0], [1,0]')
    code = run(["metric", str(bad), str(bad), "--metrics", "H"])
    assert code == 2
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_precondition_violation_exit_3(tmp_path, capsys):
    p = write_region(tmp_path / "p.json", box(0, 0, 1, 1))
    q = write_region(tmp_path / "q.json", box(3, 3, 4, 4))
    code = run(["metric", p, q, "--metrics", "M"])
    assert code == 3
    assert "NoOverlap" in capsys.readouterr().err


def test_region_dump_validates_and_roundtrips(tmp_path):
    out = tmp_path / "r.json"
    assert run(["region", "--name", "history_8", "--t", "0.2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    reportio.validate_report(doc, "region")
    # feeding the dump back in is accepted
    again = tmp_path / "r2.json"
    assert run(["region", "--in", str(out), "--out", str(again)]) == 0
    assert json.loads(again.read_text()) == doc


def test_region_requires_exactly_one_source(capsys):
    assert run(["region", "--name", "history_8", "--t", "0.2", "--in", "x.json"]) == 2


def test_config_file_defaults_and_flag_override(pair_files, tmp_path):
    p, q = pair_files
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"metrics": "V", "format": "csv"}))
    out = tmp_path / "o1.csv"
    assert run(["metric", p, q, "--config", str(cfg), "--out", str(out)]) == 0
    assert out.read_text().splitlines()[1].startswith("V,")
    # explicit flag beats the config value
    out2 = tmp_path / "o2.csv"
    assert run(["metric", p, q, "--config", str(cfg), "--metrics", "H", "--out", str(out2)]) == 0
    assert out2.read_text().splitlines()[1].startswith("H,")


def test_config_rejects_unknown_keys(pair_files, tmp_path, capsys):
    p, q = pair_files
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"metrics": "V", "bogus_knob": 1}))
    assert run(["metric", p, q, "--config", str(cfg)]) == 2
    assert "bogus_knob" in capsys.readouterr().err


def test_figures_written_next_to_output(tmp_path):
    out = tmp_path / "h.json"
    argv = ["history", "--name", "history_4", "--metrics", "H", "--steps", "5",
            "--out", str(out), "--figures"]
    assert run(argv) == 0
    png = tmp_path / "h.png"
    assert png.exists()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_dump_plan_validates(pair_files, tmp_path):
    p, q = pair_files
    out = tmp_path / "m.json"
    plan_path = tmp_path / "plan.json"
    argv = ["metric", p, q, "--metrics", "W1", "--ot-samples", "64",
            "--out", str(out), "--dump-plan", str(plan_path)]
    assert run(argv) == 0
    plan = json.loads(plan_path.read_text())
    reportio.validate_report(plan, "plan")
    assert len(plan["src_points"]) == 64
    mass = sum(m for _, _, m in plan["pairs"])
    assert mass == pytest.approx(1.0, abs=1e-9)


def test_dump_plan_requires_a_wasserstein_metric(pair_files, tmp_path, capsys):
    p, q = pair_files
    code = run(["metric", p, q, "--metrics", "H", "--dump-plan", str(tmp_path / "x.json")])
    assert code == 2


def test_dump_frames_series(pair_files, tmp_path):
    p, q = pair_files
    frames_dir = tmp_path / "frames"
    argv = ["metric", p, q, "--metrics", "H", "--out", str(tmp_path / "m.json"),
            "--dump-frames", str(frames_dir)]
    assert run(argv) == 0
    files = sorted(frames_dir.glob("frame_*.json"))
    assert len(files) == 11
    first = json.loads(files[0].read_text())
    reportio.validate_report(first, "region")
    assert first["type"] == "raster"


def test_matrix_space_c_runs_experiment(tmp_path):
    out = tmp_path / "c.json"
    argv = ["matrix", "--space", "C", "--metrics", "H,V", "--trials", "2", "--out", str(out)]
    assert run(argv) == 0
    doc = json.loads(out.read_text())
    reportio.validate_report(doc, "matrix")
    assert doc["experiment"]["trials"] == 2
    assert all(cell["relation"] != "NOT-FINER" for cell in doc["entries"].values())


def test_audit_csv(tmp_path):
    out = tmp_path / "a.csv"
    argv = ["audit", "--trials", "4", "--names", "inball,hull_h1",
            "--format", "csv", "--out", str(out)]
    assert run(argv) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(reportio.AUDIT_CSV_HEADER)
    assert len(lines) == 3


def test_stdout_when_no_out_flag(pair_files, capsys):
    p, q = pair_files
    assert run(["metric", p, q, "--metrics", "H"]) == 0
    doc = json.loads(capsys.readouterr().out)
    reportio.validate_report(doc, "metric")
