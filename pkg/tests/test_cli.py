import json

import numpy as np
import pytest

from antipolar.cli import main
from antipolar.geometry import PointCloud
from antipolar.io import catalog, write_point_file

from conftest import random_sphere_points


@pytest.fixture
def catalog_dir(tmp_path):
    directory = tmp_path / "catalog"
    directory.mkdir()
    for name in ("simplex", "cross", "hypercube", "cell24"):
        assert main(["catalog", name, "--out", str(directory / f"{name}.txt")]) == 0
    return directory


def test_catalog_to_stdout(capsys):
    assert main(["catalog", "cross"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if not l.startswith("#")]
    assert len(lines) == 8


def test_unknown_catalog_name(capsys):
    assert main(["catalog", "borsuk"]) == 2
    assert "borsuk" in capsys.readouterr().err


def test_analyze_simplex(catalog_dir, capsys):
    assert main(["analyze", str(catalog_dir / "simplex.txt"), "--json", "-"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verify"]["theorem1"]["equality"] is True
    assert doc["polarity"]["c"] == pytest.approx(4.0, abs=1e-9)
    assert doc["schema_version"]


def test_analyze_hypercube(catalog_dir, tmp_path, capsys):
    out = tmp_path / "hypercube.json"
    assert main(["analyze", str(catalog_dir / "hypercube.txt"), "--json", str(out)]) == 0
    assert "not-applicable" in capsys.readouterr().out
    doc = json.loads(out.read_text())
    assert doc["verify"]["theorem1"] == "not-applicable"
    assert doc["verify"]["stanley_ok"] is True
    assert doc["verify"]["g2_flag"] == 2


def test_analyze_malformed_line(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("1 0 0 0\n0 1 0 0\n1 2 x 4\n")
    assert main(["analyze", str(path)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_analyze_bad_tolerance_flag(catalog_dir):
    assert main(["analyze", str(catalog_dir / "simplex.txt"), "--eps-geom", "-1"]) == 2


def test_verify_directory(catalog_dir, capsys):
    assert main(["verify", str(catalog_dir)]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4


def test_verify_random_file(tmp_path, rng):
    path = tmp_path / "random.txt"
    write_point_file(PointCloud(points=random_sphere_points(rng, 20)), path)
    assert main(["verify", str(path)]) == 0


def test_verify_reports_flat_file_as_input_error(catalog_dir, capsys):
    flat = np.vstack([np.eye(4)[:3], -np.eye(4)[:3]])
    write_point_file(PointCloud(points=flat), catalog_dir / "flat.txt")
    assert main(["verify", str(catalog_dir)]) == 2
    out = capsys.readouterr().out
    assert out.count("PASS") == 4
    assert "ERROR" in out and "flat.txt" in out


def test_verify_missing_path(tmp_path):
    assert main(["verify", str(tmp_path / "nowhere")]) == 2


def test_generate_is_byte_identical(tmp_path):
    args = ["generate", "--n", "5", "--trials", "3", "--seed", "7", "--max-iters", "300"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second), "--workers", "1"]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert len(first.read_text().splitlines()) == 4


def test_generate_html(tmp_path, capsys):
    csv_path, html_path = tmp_path / "rows.csv", tmp_path / "rows.html"
    code = main(
        ["generate", "--n-range", "5", "6", "--trials", "1", "--max-iters", "200",
         "--out", str(csv_path), "--html", str(html_path)]
    )
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["summary"]["trials"] == 2
    assert summary["config"]["max_iters"] == 200
    page = html_path.read_text()
    assert "<table>" in page and "<script" not in page


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--n", "5", "--trials", "0", "--out", "x.csv"],
        ["generate", "--n", "4", "--trials", "1", "--out", "x.csv"],
        ["generate", "--n-range", "9", "6", "--trials", "1", "--out", "x.csv"],
        ["generate", "--n", "5", "--trials", "1", "--out", "x.csv", "--step", "-1"],
        ["generate", "--trials", "1", "--out", "x.csv"],
    ],
)
def test_generate_flag_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 2
    assert not (tmp_path / "x.csv").exists()


def test_help_lists_tolerance_defaults(capsys):
    assert main(["analyze", "--help"]) == 0
    help_text = capsys.readouterr().out
    assert "1e-09" in help_text
    assert "--eps-polar" in help_text
