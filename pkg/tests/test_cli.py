import csv

import pytest

from bivrange import bench
from bivrange.cli import main


def test_verify_fig5(capsys, tmp_path):
    out = tmp_path / "report.txt"
    assert main(["verify", "--figure", "fig5", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert text.count("PASS") == 10
    assert out.read_text() == text


def test_converge_writes_csv(tmp_path, capsys):
    out = tmp_path / "conv.csv"
    code = main(["converge", "--function", "clover-4", "--midpoint", "0.1,0.2",
                 "--radii", "0.1,0.01,3", "--forms", "t2,t4", "--resolution", "1e-9",
                 "--out", str(out)])
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 4
    assert "slope t4" in capsys.readouterr().out


def test_grid_and_sharing_flag(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code = main(["grid", "--function", "cardioid", "--grid", "4", "--forms", "t2,l3,+shared",
                 "--memory", "--out", str(out)])
    assert code == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert [r["form"] for r in rows] == ["T2", "L3sh"]
    assert int(rows[1]["peak_alloc_bytes"]) > 0
    assert "L3sh" in capsys.readouterr().out


def test_heatmap_outputs(tmp_path):
    stem = tmp_path / "hm"
    code = main(["heatmap", "--function", "lemniscate", "--grid", "4", "--form-a", "t4",
                 "--form-b", "t2", "--scale", "2", "--out", str(stem)])
    assert code == 0
    img = bench.read_ppm(str(stem) + ".ppm")
    assert img.shape == (8, 8, 3)
    with open(str(stem) + ".csv") as fh:
        assert len(list(csv.reader(fh))) == 17


def test_polynomial_file_needs_domain(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("2 0 1\n0 2 1\n")
    with pytest.raises(SystemExit):
        main(["grid", "--function", str(path), "--grid", "2"])
    assert main(["grid", "--function", str(path), "--grid", "2", "--domain=-1,1,-1,1",
                 "--forms", "t3"]) == 0


def test_errors(capsys):
    assert main(["grid", "--function", "nope", "--grid", "2"]) == 2
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["grid", "--forms", "t9"])
    with pytest.raises(SystemExit):
        main(["verify", "--figure", "fig9"])
    # a non-square domain is refused by the forms
    assert main(["grid", "--function", "cardioid", "--grid", "2",
                 "--domain", "0,1,0,2", "--forms", "t3"]) == 2
