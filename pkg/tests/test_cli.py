import subprocess
import sys

import pytest

from hbootstrap.cli import main
from hbootstrap.constructions.extremal import k4_extremal
from hbootstrap.graphcore import build_graph, complete_graph, decode_graph6, encode_graph6


def write_start(tmp_path, g, name="start.g6"):
    path = tmp_path / name
    path.write_text(encode_graph6(g) + "\n")
    return str(path)


def last_line(capsys):
    return capsys.readouterr().out.strip().splitlines()[-1]


@pytest.mark.parametrize(
    "graph, rule, want",
    [
        (build_graph(5, [(i, i + 1) for i in range(4)]), "clique 3", "tau=2 percolated=true"),
        (k4_extremal(8), "clique 4", "tau=5 percolated=true"),
        (complete_graph(5), "clique 4", "tau=0 percolated=true"),
    ],
)
def test_run_examples(tmp_path, capsys, graph, rule, want):
    assert main(["run", "--rule", rule, "--start", write_start(tmp_path, graph)]) == 0
    assert last_line(capsys) == want


def test_run_accepts_edge_lists_and_writes_a_trace(tmp_path, capsys):
    start = tmp_path / "p5.edges"
    start.write_text("5 4\n0 1\n1 2\n2 3\n3 4\n")
    trace = tmp_path / "trace.json"
    assert main(["run", "--rule", "clique 3", "--start", str(start), "--trace-out", str(trace)]) == 0
    assert '"tau": 2' in trace.read_text()


def test_run_truncation_exits_nonzero(tmp_path, capsys):
    g = build_graph(9, [(i, i + 1) for i in range(8)])
    assert main(["run", "--rule", "clique 3", "--start", write_start(tmp_path, g), "--max-rounds", "1"]) == 1
    assert "truncated" in capsys.readouterr().err


def test_construct_dilation(tmp_path, capsys):
    prefix = str(tmp_path / "dil")
    assert main(["construct", "dilation-k5", "--prime", "61", "--auto-set", "--out", prefix]) == 0
    assert (tmp_path / "dil.set").read_text().splitlines()[0] == "61 4"
    assert "dagger=pass" in (tmp_path / "dil.report").read_text()
    decode_graph6((tmp_path / "dil.g6").read_text().strip())


def test_construct_dilation_at_31_uses_a_singleton(tmp_path, capsys):
    # no free pair exists at p=31, so the best verified set has one element
    prefix = str(tmp_path / "d31")
    main(["construct", "dilation-k5", "--prime", "31", "--auto-set", "--out", prefix])
    words = (tmp_path / "d31.set").read_text().split()
    assert words[:2] == ["31", "4"] and len(words) == 3


def test_construct_dilation_rejects_unverified_set(tmp_path, capsys):
    assert main(["construct", "dilation-k5", "--prime", "7", "--set", "1,2", "--out", str(tmp_path / "x")]) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "name, extra, vertices",
    [("k4-extremal", ["--n", "8"], 8), ("star-extremal", ["--t", "5", "--n", "12"], 12)],
)
def test_construct_extremal(tmp_path, capsys, name, extra, vertices):
    prefix = str(tmp_path / "g")
    main(["construct", name, *extra, "--out", prefix])
    g = decode_graph6((tmp_path / "g.g6").read_text().strip())
    assert g.n == vertices


def test_construct_ladder(tmp_path, capsys):
    prefix = str(tmp_path / "lad")
    assert main(["construct", "ladder-k6", "--segment-length", "3", "--slope-count", "2", "--out", prefix]) == 0
    assert main(["analyze", "chain", "--rule", "clique 6", "--chain", prefix + ".chain"]) == 0
    assert "round_exact=true" in last_line(capsys)


def test_construct_missing_option_is_diagnosed(tmp_path, capsys):
    assert main(["construct", "star-extremal", "--n", "12", "--out", str(tmp_path / "s")]) == 2
    assert "--t" in capsys.readouterr().err


def test_construct_high_girth_needs_seed(tmp_path, capsys):
    args = ["construct", "high-girth", "--n", "20", "--k", "4", "--d", "2", "--out", str(tmp_path / "h")]
    assert main(args) == 2
    assert "--seed" in capsys.readouterr().err
    assert main(args + ["--seed", "5"]) == 0


def test_search_max_time(tmp_path, capsys):
    out = tmp_path / "mt.csv"
    assert main(["search", "max-time", "--rule", "clique 4", "--n", "4..7", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "n,value,witness_graph6"
    assert [r.split(",")[1] for r in rows[1:]] == ["1", "2", "3", "4"]


def test_search_jobs_give_same_table(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["search", "wsat", "--rule", "clique 3", "--n", "3,4,5", "--out", str(a)])
    main(["search", "wsat", "--rule", "clique 3", "--n", "3,4,5", "--jobs", "2", "--out", str(b)])
    assert a.read_text() == b.read_text()


def test_search_cap(capsys):
    assert main(["search", "max-time", "--rule", "clique 4", "--n", "12"]) == 2
    assert "MAX_ENUM_N" in capsys.readouterr().err


@pytest.mark.parametrize(
    "args, want",
    [
        (["inseparable", "--rule", "wheel 7"], "inseparable(l=2)=false"),
        (["inseparable", "--rule", "clique 5"], "inseparable(l=2)=true"),
        (["behrendian", "--rule", "clique 3"], "behrendian=true"),
        (["self-percolates", "--rule", "cycle 4"], "self_percolates=false"),
    ],
)
def test_analyze_verdicts(capsys, args, want):
    assert main(["analyze", *args]) == 0
    assert last_line(capsys) == want


def test_analyze_stats(capsys):
    main(["analyze", "stats", "--rule", "clique 5"])
    out = last_line(capsys)
    assert "v=5" in out and "lambda=8/3" in out


def test_threshold_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ["threshold", "--rule", "clique 3", "--n", "30", "--p", "0.05,0.3", "--trials", "20", "--seed", "9"]
    assert main(base + ["--out", str(a)]) == 0
    assert main(base + ["--jobs", "2", "--out", str(b)]) == 0
    assert a.read_text() == b.read_text()
    assert a.read_text().splitlines()[0] == "p,estimate,lo,hi"


def test_threshold_needs_seed(capsys):
    assert main(["threshold", "--rule", "clique 3", "--n", "10", "--p", "0.5"]) == 2
    assert "--seed" in capsys.readouterr().err


def test_bad_rule_is_diagnosed(tmp_path, capsys):
    assert main(["run", "--rule", "clique", "--start", write_start(tmp_path, complete_graph(3))]) == 2
    assert "bad rule spec" in capsys.readouterr().err


def test_missing_file_is_diagnosed(tmp_path, capsys):
    assert main(["run", "--rule", "clique 3", "--start", str(tmp_path / "nope.g6")]) == 2
    assert "error" in capsys.readouterr().err


def test_console_entry_point_runs():
    out = subprocess.run([sys.executable, "-m", "hbootstrap.cli", "analyze", "inseparable", "--rule", "clique 5"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "inseparable(l=2)=true"
