import subprocess
import sys

import pytest

from semantrix.cli import main, run_query
from semantrix import build_semantrix

EX1_CSV = """object,start,end,label
truck1,0,600,3
truck1,600,1500,7
truck2,0,300,7
truck2,300,900,1
truck2,900,1500,3
"""


@pytest.fixture
def ex1_files(tmp_path):
    csv_path = tmp_path / "ex1.csv"
    csv_path.write_text(EX1_CSV)
    labels = tmp_path / "labels.txt"
    labels.write_text("\n".join(str(i) for i in range(1, 8)))
    return csv_path, labels


@pytest.mark.parametrize("structure", ["naive", "baseline+", "semantrix-plain", "semantrix-diff"])
def test_build_and_query(tmp_path, ex1_files, capsys, structure):
    csv_path, labels = ex1_files
    out = tmp_path / "ex1.smtx"
    assert main(["build", "--csv", str(csv_path), "--labels", str(labels), "--epoch", "0",
                 "--structure", structure, "-o", str(out)]) == 0
    report = capsys.readouterr().out
    assert "total\t" in report
    expected = {("at", "2", "1"): "7", ("at", "1", "1"): "3", ("agg", "3", "1", "2", "4", "5"): "2",
                ("pattern", "1,3"): "1", ("who", "3", "1", "5"): "2", ("dur", "3", "1", "2", "4", "5"): "10",
                ("range", "2", "1", "5"): "7,1,1\n1,2,3\n3,4,5"}
    for query, answer in expected.items():
        assert main(["query", str(out), *query]) == 0
        assert capsys.readouterr().out.strip() == answer


def test_build_components_listed(tmp_path, ex1_files, capsys):
    csv_path, labels = ex1_files
    main(["build", "--csv", str(csv_path), "--labels", str(labels), "-o", str(tmp_path / "x")])
    names = [line.split("\t")[0] for line in capsys.readouterr().out.splitlines()]
    assert names[:3] == ["B", "H", "FM"] and "S7" in names


def test_diff_smaller_on_year(tmp_path, capsys):
    sizes = {}
    for structure in ("semantrix-plain", "semantrix-diff"):
        main(["build", "--preset", "year", "--structure", structure, "-o", str(tmp_path / structure)])
        lines = dict(line.split("\t") for line in capsys.readouterr().out.splitlines())
        sizes[structure] = sum(int(v) for k, v in lines.items() if k.startswith("S"))
    assert sizes["semantrix-diff"] < sizes["semantrix-plain"]


def test_empty_csv_is_data_error(tmp_path, capsys):
    p = tmp_path / "empty.csv"
    p.write_text("object,start,end,label\n")
    assert main(["build", "--csv", str(p), "-o", str(tmp_path / "o")]) == 2


def test_bad_csv_line_is_data_error(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("object,start,end,label\nA,9,3,Inactive\n")
    assert main(["build", "--csv", str(p), "-o", str(tmp_path / "o")]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file_is_data_error(tmp_path, capsys):
    assert main(["query", str(tmp_path / "nope"), "at", "1", "1"]) == 2


def test_usage_errors(tmp_path, ex1, capsys):
    from semantrix.container import save
    path = tmp_path / "ex1.smtx"
    save(build_semantrix(ex1), path)
    assert main(["query", str(path), "frobnicate"]) == 1
    assert main(["query", str(path), "at", "1"]) == 1
    assert main(["query", str(path), "at", "x", "1"]) == 1
    assert main(["query", str(path)]) == 1
    assert main(["query", str(path), "at", "9", "1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["build"])
    assert exc.value.code == 1


def test_run_query_direct(ex1):
    sx = build_semantrix(ex1)
    assert run_query(sx, ["pattern", "7,1,3"]) == "1"


def test_inspect(tmp_path, ex1, capsys):
    from semantrix.container import save
    path = tmp_path / "ex1.smtx"
    save(build_semantrix(ex1, "diff"), path)
    assert main(["inspect", str(path)]) == 0
    out = capsys.readouterr().out
    assert "semantrix-diff" in out and "objects\t2" in out and "bytes S3" in out


def test_generate_feeds_build(tmp_path, capsys):
    csv_path = tmp_path / "month.csv"
    assert main(["generate", "--preset", "month", "--objects", "3", "-o", str(csv_path)]) == 0
    out = tmp_path / "m.smtx"
    assert main(["build", "--csv", str(csv_path), "--epoch", "0", "--intervals", "2688", "-o", str(out)]) == 0
    from semantrix import generate_preset
    from semantrix.container import load
    m = generate_preset("month", num_objects=3)
    assert (load(out).to_matrix() == m.cells).all()


def test_bench_report(tmp_path, capsys):
    report = tmp_path / "bench.csv"
    args = ["bench", "--preset", "month", "--objects", "4", "--queries", "50", "--check",
            "--structures", "naive,semantrix-diff", "-o", str(report)]
    assert main(args) == 0
    lines = report.read_text().splitlines()
    assert lines[0] == "structure,query_type,n,mean_us,median_us,bytes"
    rows = [line.split(",") for line in lines[1:]]
    assert {(r[0], r[1]) for r in rows} == {(s, q) for s in ("naive", "semantrix-diff")
                                           for q in ("space", "at", "pattern", "agg")}
    assert main(args[:-2] + ["--structures", "bogus"]) == 1


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "semantrix.cli", "query"], capture_output=True, text=True)
    assert res.returncode == 1
