import numpy as np
import pytest

from antipolar.analysis import analyze
from antipolar.errors import PointFileError, UnknownCatalogName
from antipolar.flow import TableRow, summarize
from antipolar.geometry import PointCloud
from antipolar.io import (
    SCHEMA_VERSION,
    SWEEP_COLUMNS,
    build_report,
    catalog,
    format_points,
    parse_points,
    read_point_file,
    sweep_csv,
    sweep_html,
    write_point_file,
)

from conftest import random_sphere_points


def test_simplex_gram():
    gram = catalog("simplex").gram()
    assert np.allclose(np.diag(gram), 1.0, atol=1e-14)
    off = gram[np.triu_indices(5, k=1)]
    assert np.allclose(off, -0.25, atol=1e-14)


@pytest.mark.parametrize("name, n", [("simplex", 5), ("cross", 8), ("hypercube", 16), ("cell24", 24)])
def test_catalog_sizes(name, n):
    cloud = catalog(name)
    assert cloud.n == n
    assert np.allclose(np.linalg.norm(cloud.points, axis=1), 1.0)


def test_unknown_catalog_name():
    with pytest.raises(UnknownCatalogName):
        catalog("borsuk")


def test_parse_points_skips_comments_and_blanks():
    text = "# regular simplex\n\n" + format_points(catalog("simplex")) + "\n# end\n"
    cloud = parse_points(text)
    assert cloud.n == 5


def test_parse_points_reports_line_numbers():
    text = format_points(catalog("simplex")).splitlines()
    text.insert(2, "1 2 x 4")
    with pytest.raises(PointFileError) as info:
        parse_points("\n".join(text))
    assert info.value.line_no == 3
    assert str(info.value).startswith("line 3:")


@pytest.mark.parametrize("line", ["1 0 0", "1 0 0 0 0", "nan 0 0 0", "0.5 0 0 0"])
def test_parse_points_rejects_bad_rows(line):
    text = format_points(catalog("cross")) + line + "\n"
    with pytest.raises(PointFileError) as info:
        parse_points(text)
    assert info.value.line_no == 9


def test_parse_points_needs_five_points():
    with pytest.raises(PointFileError) as info:
        parse_points("1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n")
    assert info.value.line_no is None


def test_missing_file(tmp_path):
    with pytest.raises(PointFileError):
        read_point_file(tmp_path / "absent.txt")


def test_point_file_round_trip(tmp_path, rng, tol):
    cloud = PointCloud(points=random_sphere_points(rng, 14))
    path = tmp_path / "cloud.txt"
    write_point_file(cloud, path, comment="random")
    again = read_point_file(path)
    assert np.array_equal(again.points, cloud.points)
    assert build_report(analyze(again, tol)) == build_report(analyze(cloud, tol))


def test_report_document(simplex, tol):
    doc = build_report(analyze(simplex, tol))
    assert doc.schema_version == SCHEMA_VERSION
    assert doc.f_vector == (5, 10, 10, 5)
    assert doc.f03 == 20
    assert doc.polygon_census == {"3": 10}
    assert doc.polarity.is_asp
    assert doc.diameter.eG == 10
    assert doc.verify.g2_census == doc.verify.g2_flag == 0
    assert doc.verify.theorem1.equality
    assert doc.flag_numbers["f13"] == 30
    assert doc.checks_passed


def test_report_marks_theorem1_not_applicable(hypercube, tol):
    doc = build_report(analyze(hypercube, tol))
    assert doc.verify.theorem1 == "not-applicable"
    dumped = doc.model_dump(mode="json")
    assert dumped["verify"]["theorem1"] == "not-applicable"
    assert dumped["verify"]["kalai"] == {"lhs": 24, "rhs": 22}


def test_sweep_csv_and_html_share_cells():
    rows = [
        TableRow(trial=0, n=5, converged=True, d=0.5, in_range=False, is_asp=True, c=4.0,
                 residual=1e-12, f=(5, 10, 10, 5), f03=20, eG=10, bound=10, equality=True, g2=0,
                 theorem1_ok=True),
        TableRow(trial=1, n=5, collapsed=True, d=0.25),
    ]
    text = sweep_csv(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert len(SWEEP_COLUMNS) == 18 and "seed" not in SWEEP_COLUMNS and "error" not in SWEEP_COLUMNS
    assert lines[1] == "0,5,true,false,0.5,false,true,4,9.9999999999999998e-13,5,10,10,5,20,10,10,true,0"
    assert lines[2] == "1,5,false,true,0.25" + "," * 13

    page = sweep_html(rows, summarize(rows))
    assert "<script" not in page
    for cell in lines[1].split(","):
        assert f"<td>{cell}</td>" in page
    assert 'class="equality"' in page
