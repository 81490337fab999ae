import json

import numpy as np
import pytest
from hypothesis import given, settings

from ampcg import (
    parse_graph,
    random_model,
    read_dataset,
    sample,
    serialize_graph,
    strong_labeling,
    to_dot,
    to_json,
    write_dataset,
)
from ampcg.cli import cli
from ampcg.errors import DuplicateEdgeError, ParseError

from .support import cg, chain_graphs


class TestParse:
    def test_mixed_document(self):
        g = parse_graph("edge A -> B\nedge C -> B\nedge C -- D\n")
        assert g == cg("ABCD", [("A", "B"), ("C", "B")], [("C", "D")])

    def test_isolated_node(self):
        g = parse_graph("node A\n")
        assert g.nodes == {"A"} and not g.skeleton

    def test_comments_and_blank_lines(self):
        g = parse_graph("# header\n\nnode A  # trailing\n")
        assert g.nodes == {"A"}

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdgeError):
            parse_graph("edge A -> B\nedge B -> A\n")

    def test_parse_error_carries_line_number(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("node A\nedgy A -> B\n")
        assert exc.value.line == 2

    @settings(max_examples=60, deadline=None)
    @given(chain_graphs())
    def test_round_trip(self, g):
        assert parse_graph(serialize_graph(g)) == g


class TestExports:
    def test_dot_directed_edge(self):
        out = to_dot(cg("AB", [("A", "B")]))
        assert "A -> B;" in out

    def test_dot_marks_strong_edges(self):
        lab = strong_labeling(cg("ABCD", [("A", "C"), ("B", "C"), ("C", "D")]))
        out = to_dot(lab)
        assert any("C -> D [style=bold" in line for line in out.splitlines())

    def test_dot_empty_graph(self):
        out = to_dot(cg(""))
        assert out.startswith("digraph") and out.rstrip().endswith("}")

    def test_json_carries_marks_and_labels(self):
        from ampcg import essential_graph

        g = cg("ABC", [("A", "B"), ("C", "B")])
        doc = json.loads(to_json(essential_graph(g).marks))
        edge = next(e for e in doc["edges"] if e["u"] == "A")
        assert edge["blocked_u"] is True and edge["blocked_v"] is False
        lab_doc = json.loads(to_json(strong_labeling(g)))
        assert lab_doc["strong_directed"] == []


class TestDatasets:
    def test_round_trip(self, tmp_path):
        g = cg("ABC", [("A", "B")], [("B", "C")])
        ds = sample(random_model(g, seed=1), 20, seed=2)
        path = tmp_path / "d.csv"
        write_dataset(ds, str(path))
        back = read_dataset(str(path))
        assert back.columns == ds.columns
        assert np.allclose(back.rows, ds.rows)


@pytest.fixture()
def graph_file(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("edge A -> B\nedge C -> B\nedge C -- D\n")
    return str(path)


class TestCli:
    def test_validate_round_trip(self, graph_file, capsys):
        assert cli(["validate", graph_file]) == 0
        assert parse_graph(capsys.readouterr().out) == parse_graph(open(graph_file).read())

    def test_usage_error_is_exit_one(self, capsys):
        assert cli(["no-such-command"]) == 1
        assert cli([]) == 1

    def test_validation_failure_is_exit_two(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("edge A -> B\nedge B -- C\nedge C -> A\n")
        assert cli(["validate", str(path)]) == 2

    def test_size_cap_is_exit_three(self, tmp_path, capsys):
        path = tmp_path / "big.txt"
        path.write_text("\n".join(f"edge V{i} -- V{i+1}" for i in range(20)))
        assert cli(["class", str(path)]) == 3

    def test_components(self, graph_file, capsys):
        assert cli(["components", graph_file]) == 0
        assert capsys.readouterr().out.splitlines() == ["0: A", "1: C D", "2: B"]

    def test_sep(self, graph_file, capsys):
        assert cli(["sep", graph_file, "--x", "A", "--y", "D", "--z", "B"]) == 0
        assert capsys.readouterr().out.strip() == "connected"
        assert cli(["sep", graph_file, "--x", "A", "--y", "D"]) == 0
        assert capsys.readouterr().out.strip() == "separated"

    def test_equiv(self, tmp_path, capsys):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("edge A -> B\nedge C -> B\n")
        b.write_text("edge A -- B\nedge C -> B\n")
        assert cli(["equiv", str(a), str(b)]) == 0
        assert capsys.readouterr().out.strip() == "equivalent"

    def test_class_modes_agree(self, tmp_path, capsys):
        path = tmp_path / "ab.txt"
        path.write_text("edge A -- B\n")
        assert cli(["class", str(path)]) == 0
        brute = capsys.readouterr().out
        assert cli(["class", str(path), "--via", "merge-split"]) == 0
        assert capsys.readouterr().out == brute
        assert brute.startswith("3 members")

    def test_eg_and_strong(self, graph_file, capsys):
        assert cli(["eg", graph_file]) == 0
        eg_text = capsys.readouterr().out
        assert "edge A -> B" in eg_text and "edge C -- D" in eg_text
        assert cli(["strong", graph_file]) == 0
        assert capsys.readouterr().out.strip() == "no strong edges"
        assert cli(["strong", graph_file, "--rules-only"]) == 0
        assert "no strong edges" in capsys.readouterr().out

    def test_strong_dot_styles_strong_edges(self, tmp_path, capsys):
        path = tmp_path / "s1.txt"
        path.write_text("edge A -> C\nedge B -> C\nedge C -> D\n")
        assert cli(["--format", "dot", "strong", str(path)]) == 0
        out = capsys.readouterr().out
        assert "C -> D [style=bold" in out and "A -> C [style" not in out

    def test_minmax(self, graph_file, capsys):
        assert cli(["minmax", graph_file, "--mode", "min"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("2 minimally oriented members")
        assert cli(["minmax", graph_file, "--mode", "max"]) == 0
        assert "edge" in capsys.readouterr().out

    def test_adjust(self, graph_file, capsys):
        assert cli(["adjust", graph_file, "--x", "C", "--mode", "superset"]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 8

    def test_sample_and_bound_deterministic(self, graph_file, tmp_path, capsys):
        out1 = tmp_path / "d1.csv"
        out2 = tmp_path / "d2.csv"
        assert cli(["--seed", "3", "sample", graph_file, "--n", "50", "--out", str(out1)]) == 0
        capsys.readouterr()
        assert cli(["--seed", "3", "sample", graph_file, "--n", "50", "--out", str(out2)]) == 0
        capsys.readouterr()
        assert out1.read_bytes() == out2.read_bytes()
        assert (
            cli(
                ["bound", graph_file, "--data", str(out1),
                 "--x", "C", "--y", "B", "--mode", "maxoriented"]
            )
            == 0
        )
        out = capsys.readouterr().out
        assert "bounds: [" in out

    def test_json_format(self, graph_file, capsys):
        assert cli(["--format", "json", "eg", graph_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert {"nodes", "edges"} <= set(doc)

    def test_oracle_all_pass(self, graph_file, capsys):
        assert cli(["oracle", graph_file]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out and out.count("PASS") >= 6
