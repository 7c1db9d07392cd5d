import csv
import json

import pytest

from pfptopo.cli import SERIES_SUFFIXES, main
from pfptopo.io_formats import read_edge_list, read_report


def lines(path):
    return [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]


def test_generate_ba_edge_budget(tmp_path):
    assert main(["generate", "--model", "ba", "--m", "3", "--n", "100", "--out", str(tmp_path)]) == 0
    edges = tmp_path / "ba_n100_seed0.edges"
    assert len(lines(edges)) == 14 + 3 * 90
    manifest = json.loads((tmp_path / "ba_n100_seed0.manifest.json").read_text())
    assert manifest["command"] == "generate"
    assert manifest["config"]["m"] == 3
    assert "duration_s" in manifest and "version" in manifest


def test_generate_runs_use_consecutive_seeds(tmp_path):
    assert main(["generate", "--model", "pfp", "--n", "300", "--runs", "3", "--seed", "5", "--out", str(tmp_path)]) == 0
    names = sorted(p.name for p in tmp_path.glob("*.edges"))
    assert names == ["pfp_n300_seed5.edges", "pfp_n300_seed6.edges", "pfp_n300_seed7.edges"]


def test_rerun_from_manifest_is_byte_identical(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    main(["generate", "--model", "ig", "--n", "400", "--seed", "3", "--out", str(first)])
    manifest = first / "ig_n400_seed3.manifest.json"
    assert main(["generate", "--config", str(manifest), "--out", str(second)]) == 0
    assert (first / "ig_n400_seed3.edges").read_bytes() == (second / "ig_n400_seed3.edges").read_bytes()


def test_config_file_overrides_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("model = pfp\ntarget_n = 150\ndelta = 0.1\n")
    assert main(["generate", "--model", "ba", "--n", "999", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    manifest = json.loads((tmp_path / "pfp_n150_seed0.manifest.json").read_text())
    assert manifest["config"]["delta"] == 0.1


def test_invalid_config_exits_1(tmp_path, capsys):
    assert main(["generate", "--model", "pfp", "--p", "0.8", "--q", "0.5", "--out", str(tmp_path)]) == 1
    assert "q must lie" in capsys.readouterr().err
    assert main(["generate", "--runs", "0", "--n", "50", "--out", str(tmp_path)]) == 1


def test_usage_error_exits_1():
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--model", "nonsense"])
    assert exc.value.code == 1


def test_unwritable_output_exits_2(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["generate", "--n", "50", "--out", str(blocker / "sub")]) == 2


def test_analyze_k4(tmp_path):
    src = tmp_path / "k4.edges"
    src.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert main(["analyze", str(src), "--out", str(tmp_path / "out")]) == 0
    report = json.loads((tmp_path / "out" / "k4.report.json").read_text())
    assert report["l_star"] == 1.0
    for suffix in SERIES_SUFFIXES:
        assert (tmp_path / "out" / f"k4.{suffix}.dat").exists()
    manifest = json.loads((tmp_path / "out" / "k4.analyze.manifest.json").read_text())
    assert manifest["fit_kmin"] == 1


def test_analyze_path_mean_betweenness(tmp_path):
    src = tmp_path / "p3.edges"
    src.write_text("0 1\n1 2\n")
    assert main(["analyze", str(src), "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "p3.report.json").read_text())
    assert report["mean_cb"] == pytest.approx(14 / 9, abs=1e-9)
    assert report["mean_cb"] == pytest.approx(1.5556, abs=1e-4)


def test_analyze_disconnected_exits_nonzero(tmp_path, capsys):
    src = tmp_path / "split.edges"
    src.write_text("0 1\n2 3\n")
    assert main(["analyze", str(src), "--out", str(tmp_path)]) == 1
    assert "disconnected" in capsys.readouterr().err


def test_analyze_strict_and_lenient(tmp_path):
    src = tmp_path / "dup.edges"
    src.write_text("0 1\n1 0\n1 2\n0 2\n")
    assert main(["analyze", str(src), "--out", str(tmp_path)]) == 2
    assert main(["analyze", str(src), "--lenient", "--out", str(tmp_path)]) == 0


def test_analyze_fit_flags_and_csv(tmp_path):
    main(["generate", "--model", "pfp", "--n", "1500", "--out", str(tmp_path)])
    src = tmp_path / "pfp_n1500_seed0.edges"
    assert main(["analyze", str(src), "--out", str(tmp_path), "--format", "csv", "--fit-kmin", "2", "--fit-kupper", "20"]) == 0
    manifest = json.loads((tmp_path / "pfp_n1500_seed0.analyze.manifest.json").read_text())
    assert (manifest["fit_kmin"], manifest["fit_kupper"]) == (2, 20)
    with open(tmp_path / "pfp_n1500_seed0.report.csv") as fh:
        assert len(list(csv.reader(fh))) == 2


def test_analyze_with_id_map(tmp_path):
    (tmp_path / "as.edges").write_text("701 1239\n1239 3356\n3356 701\n")
    (tmp_path / "as.map").write_text("701 0\n1239 1\n3356 2\n")
    assert main(["analyze", str(tmp_path / "as.edges"), "--id-map", str(tmp_path / "as.map"), "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "as.report.json").read_text())["mean_kt"] == 1.0


@pytest.fixture(scope="module")
def ba_reports(tmp_path_factory):
    d = tmp_path_factory.mktemp("ba")
    main(["generate", "--model", "ba", "--n", "2000", "--runs", "2", "--out", str(d)])
    main(["analyze", *map(str, sorted(d.glob("*.edges"))), "--out", str(d / "reports")])
    return d / "reports"


def test_compare_ba_against_as_fails_on_rich_club(ba_reports, capsys):
    assert main(["compare", str(ba_reports), "--reference", "as"]) == 3
    out = capsys.readouterr().out
    phi_row = next(ln for ln in out.splitlines() if ln.startswith("phi_1pct"))
    assert phi_row.endswith("FAIL")


def test_compare_against_itself(ba_reports, capsys):
    report = sorted(ba_reports.glob("*.report.json"))[0]
    assert main(["compare", str(report), "--reference", str(report)]) == 0
    out = capsys.readouterr().out
    rows = out.splitlines()[2:-1]
    assert len(rows) == 17
    assert all(float(row.split()[3]) == 0 for row in rows)


def test_compare_with_tolerance_file(ba_reports, tmp_path):
    report = sorted(ba_reports.glob("*.report.json"))[0]
    tol = tmp_path / "tol.json"
    tol.write_text(json.dumps({"k_max": [0, 1], "l_star": 100}))
    assert main(["compare", str(report), "--reference", str(report), "--tolerances", str(tol)]) == 3
    tol.write_text(json.dumps({"l_star": {"abs": 0.0}, "k_max": {"range": [0, 10000]}}))
    assert main(["compare", str(report), "--reference", str(report), "--tolerances", str(tol)]) == 0


def test_compare_is_pure(ba_reports):
    before = {p: p.read_bytes() for p in ba_reports.iterdir()}
    results = {main(["compare", str(ba_reports), "--reference", "ba"]) for _ in range(2)}
    assert len(results) == 1
    assert {p: p.read_bytes() for p in ba_reports.iterdir()} == before


def test_compare_unknown_reference_exits_1(ba_reports):
    assert main(["compare", str(ba_reports), "--reference", "nope"]) == 1


def test_sweep_single_point_matches_generate_and_analyze(tmp_path):
    sweep_dir = tmp_path / "sweep"
    assert main(["sweep", "--model", "pfp", "--n", "600", "--grid", "delta=0.048", "--out", str(sweep_dir)]) == 0
    main(["generate", "--model", "pfp", "--n", "600", "--out", str(tmp_path / "gen")])
    main(["analyze", str(tmp_path / "gen" / "pfp_n600_seed0.edges"), "--out", str(tmp_path / "gen")])
    point = sweep_dir / "point_000"
    assert (point / "pfp_n600_seed0.edges").read_bytes() == (tmp_path / "gen" / "pfp_n600_seed0.edges").read_bytes()
    assert (point / "pfp_n600_seed0.report.json").read_bytes() == (tmp_path / "gen" / "pfp_n600_seed0.report.json").read_bytes()
    with open(sweep_dir / "sweep.csv") as fh:
        rows = list(csv.DictReader(fh))
    with open(point / "pfp_n600_seed0.report.json") as fh:
        report = read_report(fh)
    assert len(rows) == 1
    assert float(rows[0]["l_star"]) == report.l_star
    assert float(rows[0]["delta"]) == 0.048


def test_sweep_grid_product(tmp_path):
    out = tmp_path / "s"
    assert main(["sweep", "--model", "pfp", "--n", "300", "--grid", "delta=0,0.1", "--grid", "p=0.2,0.3",
                 "--runs", "2", "--out", str(out)]) == 0
    with open(out / "sweep.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [(r["delta"], r["p"]) for r in rows] == [("0.0", "0.2"), ("0.0", "0.3"), ("0.1", "0.2"), ("0.1", "0.3")]
    assert all(r["runs"] == "2" for r in rows)
    g = read_edge_list(open(out / "point_003" / "pfp_n300_seed1.edges"))
    assert g.node_count == 300


def test_sweep_empty_grid_exits_nonzero(tmp_path):
    assert main(["sweep", "--model", "pfp", "--out", str(tmp_path)]) == 1
    assert main(["sweep", "--model", "pfp", "--grid", "gamma=1", "--out", str(tmp_path)]) == 1
