import pytest

from orderedparity.cli import main
from orderedparity.core import GroupShape, GroupedPoint


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_separate_violated_golden(capsys):
    rc, out, err = run(capsys, "separate", "--shape", "1,1,1",
                       "--parity", "even", "--point", "1;1;1")
    assert rc == 0
    assert err == ""
    assert out == "lambdas 1,1,1\nviolated F={1,2,3} lhs=0\n"


def test_separate_satisfied_golden(capsys):
    rc, out, err = run(capsys, "separate", "--shape", "2",
                       "--parity", "even", "--point", "1/2,1/2")
    assert rc == 0
    assert out == "lambdas 0\nsatisfied F={1} lhs=1\n"


def test_separate_not_in_box_is_domain_error(capsys):
    rc, out, err = run(capsys, "separate", "--shape", "2",
                       "--parity", "even", "--point", "0,1")
    assert rc == 1
    assert out == ""
    assert err.startswith("error: ")
    assert err.count("\n") == 1


def test_describe_golden(capsys):
    rc, out, err = run(capsys, "describe", "--shape", "2,2", "--parity", "even")
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 6 + 2
    assert lines[-2] == "-1 1 1 -1 >= 0"
    assert lines[-1] == "1 -1 -1 1 >= 0"
    assert all(" >= " in line for line in lines)


def test_describe_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["describe", "--shape", "zz"])
    assert exc.value.code == 2


def test_unknown_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["separat"])
    assert exc.value.code == 2


def test_optimize_golden(capsys):
    # a value starting with "-" has to ride in the same token as the flag
    rc, out, err = run(capsys, "optimize", "--shape", "2,1",
                       "--parity", "even", "--objective=-1,-1,-1")
    assert rc == 0
    assert out.splitlines()[0] == "value -2"
    assert out.splitlines()[1].startswith("point ")


def test_optimize_dimension_mismatch(capsys):
    rc, out, err = run(capsys, "optimize", "--shape", "2,1",
                       "--parity", "even", "--objective", "1,2")
    assert rc == 1
    assert err.startswith("error: ")


def test_network_plain(capsys):
    rc, out, err = run(capsys, "network", "--shape", "1,1")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "shape 1,1 parity even"
    assert lines[1].startswith("nodes ")
    assert lines[2] == "source (0,0) sink (2,0)"
    assert sum(1 for ln in lines if ln.startswith("arc ")) == 4


def test_network_dot(capsys):
    rc, out, err = run(capsys, "network", "--shape", "2", "--dot")
    assert rc == 0
    assert out.startswith("digraph")
    assert out.endswith("}\n")


def test_witness_golden(capsys):
    rc, out, err = run(capsys, "witness", "--n", "4", "--z", "2")
    assert rc == 0
    assert out == "case balanced\nx 1,1/2,1/4,1/4\nachieved 1/2\n"


def test_witness_out_of_range(capsys):
    rc, out, err = run(capsys, "witness", "--n", "3", "--z", "4")
    assert rc == 1


def test_multiwitness_golden(capsys):
    rc, out, err = run(capsys, "multiwitness", "--shape", "2,2,2,2",
                       "--z", "1,1,1,1", "--family", "1,2;2,3;3,4;1,4")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "set {1,2} sum 1"
    assert lines[-1] == "witness 3/4,1/4;3/4,1/4;3/4,1/4;3/4,1/4"


def test_multiwitness_failing(capsys):
    rc, out, err = run(capsys, "multiwitness", "--shape", "2,2",
                       "--z", "2,2", "--family", "1,2")
    assert rc == 0
    assert out == "set {1,2} sum 0 (fails)\ncondition fails\n"


def test_multiwitness_zero_index_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["multiwitness", "--shape", "2,2", "--z", "1,1",
              "--family", "0,1"])
    assert exc.value.code == 2


def test_gtsp_solve_on_file(tmp_path, capsys):
    graph_file = tmp_path / "petersen.txt"
    graph_file.write_text(
        "10 15\n0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n"
        "5 7\n7 9\n9 6\n6 8\n8 5\n")
    report_file = tmp_path / "report.txt"
    rc, out, err = run(capsys, "gtsp", "solve", "--graph", str(graph_file),
                       "--cuts", "connectivity,blossom-strengthened",
                       "--report", str(report_file))
    assert rc == 0
    assert err == ""
    assert "bound 10" in out
    assert report_file.read_text() == out


def test_gtsp_missing_file(capsys):
    rc, out, err = run(capsys, "gtsp", "solve", "--graph", "/no/such/file")
    assert rc == 1
    assert err.startswith("error: cannot read")


def test_gtsp_bad_cut_family(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gtsp", "solve", "--graph", "x", "--cuts", "bogus"])
    assert exc.value.code == 2


def test_gtsp_graph_parse_error_is_domain_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 1\n")
    rc, out, err = run(capsys, "gtsp", "solve", "--graph", str(bad))
    assert rc == 1
    assert err.startswith("error: ")


def test_flag_values_round_trip():
    shape = GroupShape.parse("2,3,1")
    assert GroupShape.parse(str(shape)) == shape
    point = GroupedPoint.parse("1,1/2;1,1,0;3/4")
    assert GroupedPoint.parse(str(point)) == point
