import io
import json
import subprocess
import sys

import pytest

from balclique.cli import main
from balclique.graph import load_edge_list

from graphs import g6_text


@pytest.fixture
def g6_file(tmp_path):
    path = tmp_path / "g6.txt"
    path.write_text(g6_text())
    return str(path)


@pytest.fixture
def generated(tmp_path):
    path = tmp_path / "gen.txt"
    buf = io.StringIO()
    assert main(["gen", "--n", "300", "--m", "4000", "--seed", "3"], buf) == 0
    path.write_text(buf.getvalue())
    return str(path)


def run(argv):
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


def test_enum_g6(g6_file):
    code, out = run(["enum", "--k", "2", "--algo", "star", "--input", g6_file])
    assert code == 0
    assert out == "L:{0,1,2} R:{3,4,5}\n"


def test_max_none(g6_file):
    assert run(["max", "--k", "4", "--input", g6_file]) == (0, "no result\n")


def test_max_jsonl_and_count(g6_file):
    code, out = run(["max", "--k", "2", "--input", g6_file, "--output", "jsonl"])
    assert json.loads(out) == {"left": [0, 1, 2], "right": [3, 4, 5], "size": 6}
    assert run(["max", "--k", "2", "--input", g6_file, "--output", "count"]) == (0, "6\n")


@pytest.mark.parametrize("extra", [
    ["--algo", "basic"], ["--pivot", "off"], ["--et", "off"], ["--order", "id"],
    ["--reduce", "off"], ["--store", "partitioned"], ["--threads", "2"],
])
def test_enum_flags_agree(generated, extra):
    base = run(["enum", "--k", "1", "--input", generated, "--output", "count"])
    assert run(["enum", "--k", "1", "--input", generated, "--output", "count"] + extra) == base


def test_enum_jsonl(g6_file):
    code, out = run(["enum", "--k", "1", "--input", g6_file, "--output", "jsonl"])
    assert [json.loads(line) for line in out.splitlines()] == [{"left": [0, 1, 2], "right": [3, 4, 5]}]


def test_max_algorithms_agree(generated):
    sizes = {run(["max", "--k", "1", "--algo", a, "--input", generated, "--output", "count"])
             for a in ("baseline", "ssp", "ssp-star")}
    assert len(sizes) == 1


def test_bench_trace_rows(generated):
    code, out = run(["bench", "--algo", "ssp-star", "--k", "1", "--trace-regions",
                     "--input", generated, "--output", "jsonl"])
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    regions = [r["region"] for r in records if "region" in r]
    assert regions
    for row in regions:
        assert set(row) == {"index", "kappa_lo", "kappa_hi", "m_pos", "m_neg", "epsilon", "timing"}
    summary = records[-1]
    assert summary["algo"] == "ssp-star" and summary["frames"] >= 0
    assert "seconds" in summary["timing"]


def test_bench_enum_text(g6_file):
    code, out = run(["bench", "--algo", "star", "--k", "2", "--input", g6_file])
    assert code == 0 and out.startswith("bench run=0 algo=star k=2") and "cliques=1" in out


def test_max_trace_text(g6_file):
    code, out = run(["max", "--k", "2", "--input", g6_file, "--trace-regions"])
    lines = out.splitlines()
    assert lines[0].startswith("region index=0 kappa_lo=2 kappa_hi=3 m_pos=6 m_neg=9 epsilon=6 |")
    assert lines[1] == "L:{0,1,2} R:{3,4,5}"


def test_output_is_deterministic_without_timing(generated):
    def strip(text):
        return [line.split(" | ")[0] for line in text.splitlines()]

    argv = ["bench", "--algo", "ssp", "--k", "1", "--trace-regions", "--input", generated]
    assert strip(run(argv)[1]) == strip(run(argv)[1])
    gen = ["gen", "--n", "50", "--m", "200", "--seed", "9"]
    assert run(gen) == run(gen)


def test_gen_ratio_and_base(tmp_path):
    code, out = run(["gen", "--n", "100", "--m", "500", "--seed", "1", "--ratio", "1:1"])
    g = load_edge_list(out)
    assert code == 0 and g.m == 500
    base = tmp_path / "base.txt"
    base.write_text("0 1\n1 2\n# comment\n2 0\n")
    code, out = run(["gen", "--base", str(base)])
    assert code == 0 and load_edge_list(out).m_pos == 3


def test_reduce_modes(g6_file):
    for mode in ("vertex", "edge", "both"):
        code, out = run(["reduce", "--k", "3", "--mode", mode, "--input", g6_file])
        assert code == 0 and len(out.splitlines()) == 15
    code, out = run(["reduce", "--k", "3", "--mode", "plus", "--kappa-lo", "3",
                     "--kappa-hi", "4", "--input", g6_file])
    assert (code, out) == (0, "")


def test_reduce_snap_sign_output(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("0 1 1\n0 2 -1\n1 2 -1\n")
    code, out = run(["reduce", "--k", "1", "--mode", "vertex", "--format", "snap-sign", "--input", str(path)])
    assert code == 0 and sorted(out.split("\n")) == ["", "0 1 1", "0 2 -1", "1 2 -1"]


def test_stats(g6_file):
    code, out = run(["stats", "--input", g6_file, "--output", "jsonl"])
    assert json.loads(out) == {"n": 6, "m_pos": 6, "m_neg": 9, "max_pos_degree": 2,
                               "max_neg_degree": 3, "sigma_all": 5, "sigma_pos": 2}


def test_oracle_hidden_but_usable(g6_file, capsys):
    assert run(["oracle", "--k", "2", "--input", g6_file]) == (0, "L:{0,1,2} R:{3,4,5}\n")
    assert run(["oracle", "--k", "2", "--mode", "max", "--input", g6_file])[1] == "L:{0,1,2} R:{3,4,5}\n"
    with pytest.raises(SystemExit):
        main(["--help"])
    assert "oracle" not in capsys.readouterr().out


def test_timeout_record(generated):
    code, out = run(["max", "--k", "1", "--algo", "baseline", "--input", generated,
                     "--time-budget-secs", "0.000001"])
    assert code == 3
    rec = json.loads(out.splitlines()[-1])
    assert rec["status"] == "timeout" and rec["command"] == "max"


def test_bad_flags_exit_2(g6_file):
    for argv in (["enum", "--input", g6_file], ["enum", "--k", "0", "--input", g6_file],
                 ["max", "--k", "2", "--algo", "fast"], ["frobnicate"],
                 ["enum", "--k", "1", "--threads", "0"]):
        with pytest.raises(SystemExit) as exc:
            main(argv, io.StringIO())
        assert exc.value.code == 2
    assert run(["reduce", "--k", "2", "--mode", "plus", "--kappa-lo", "5",
                "--kappa-hi", "3", "--input", g6_file])[0] == 2
    assert run(["gen", "--n", "10"])[0] == 2


def test_io_and_parse_errors_exit_1(tmp_path, capsys):
    assert run(["enum", "--k", "1", "--input", str(tmp_path / "missing.txt")])[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 +\n0 2 ?\n")
    assert run(["stats", "--input", str(bad)])[0] == 1
    assert "line 2" in capsys.readouterr().err


def test_module_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "balclique", "enum", "--k", "2"],
        input=g6_text(), capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "L:{0,1,2} R:{3,4,5}\n"
