"""
Tests for the command line surface, table emitter and poset file reader
"""
import io
import json

import pytest

from src.exceptions import PosetParseError, TableShapeError
from src.main import build_parser, emit_json, emit_table, parse_poset_file, run
from tests.test_lattice_partitions import PARTITIONS_OF_39


class TestEmitTable:
    def test_text_alignment(self):
        output = emit_table(["i", "value"], [[1, 1], [10, 100]])
        assert output == " i  value\n 1      1\n10    100\n"

    def test_empty_rows(self):
        assert emit_table(["a", "b"], []) == "a  b\n"
        assert emit_table(["a", "b"], [], "csv") == "a,b\n"
        assert json.loads(emit_table(["a", "b"], [], "json")) == []

    def test_csv(self):
        assert emit_table(["ranks", "terms"], [["4 2 1", "44+6+1"]], "csv") == "ranks,terms\n4 2 1,44+6+1\n"

    def test_json_records(self):
        records = json.loads(emit_table(["i", "j", "count"], [[7, 5, 427]], "json"))
        assert records == [{"i": 7, "j": 5, "count": 427}]

    def test_ragged_rows(self):
        with pytest.raises(TableShapeError):
            emit_table(["a", "b"], [[1, 2], [3]])

    def test_emit_json(self):
        payload = {"thm": "3", "failures": [], "count": 0}
        text = emit_json(payload)
        assert text.endswith("\n")
        assert json.loads(text) == payload


class TestPosetFiles:
    def test_forked_chain(self, fixtures_dir):
        P, rep = parse_poset_file(fixtures_dir / "forked_chain.poset")
        assert P.elements == ("a", "b", "c", "d", "e", "f")
        assert len(P.hasse.edges) == 5
        assert rep is None

    def test_stream(self):
        P, _ = parse_poset_file(io.StringIO("# comment\np < q < r\n\n"))
        assert P.elements == ("p", "q", "r")
        assert P.lt("p", "r")

    def test_representation_without_ambient(self):
        P, rep = parse_poset_file(io.StringIO("x < y\nx: 2, [1, 1]\ny: 4, [2, 2]\n"))
        assert rep is not None
        assert rep.ambient == frozenset({1, 2})
        assert rep.assignment["y"].n == 4

    def test_unreadable_line(self):
        with pytest.raises(PosetParseError) as info:
            parse_poset_file(io.StringIO("a < b\nfoo bar\n"))
        assert (info.value.line, info.value.column) == (2, 1)

    def test_bad_label(self):
        with pytest.raises(PosetParseError) as info:
            parse_poset_file(io.StringIO("a < b c\n"))
        assert (info.value.line, info.value.column) == (1, 5)

    def test_bad_integer(self):
        with pytest.raises(PosetParseError) as info:
            parse_poset_file(io.StringIO("elements: x\nambient: 1, x\n"))
        assert (info.value.line, info.value.column) == (2, 13)

    def test_error_names_the_file(self, tmp_path):
        path = tmp_path / "broken.poset"
        path.write_text("a < b\n???\n", encoding="utf-8")
        with pytest.raises(PosetParseError) as info:
            parse_poset_file(path)
        assert str(info.value).startswith(f"{path}:2:1:")


class TestCommands:
    def test_decompose_json(self, config):
        code, output = run(["decompose", "--family", "octahedral3", "--n", "51", "--json"], config)
        assert code == 0
        payload = json.loads(output)
        assert payload["target"] == 51
        entry = next(d for d in payload["decompositions"] if d["ranks"] == [4, 2, 1])
        assert entry["terms"] == [44, 6, 1]
        assert {"i": 7, "j": 4, "k0": 0, "alpha": 3, "beta": 1, "gamma": 0} in entry["witnesses"]

    def test_decompose_text(self, config):
        code, output = run(["decompose", "--family", "polygonal3", "--t", "4", "--n", "75"], config)
        assert code == 0
        assert output.splitlines()[0].split() == ["ranks", "terms", "i", "j", "k0", "alpha", "beta", "gamma"]
        assert "25+25+25" in output

    def test_count(self, config):
        assert run(["count", "--type", "O", "--i", "7", "--j", "5"], config) == (0, "427\n")

    def test_count_off_diagonal_type(self, config, capsys):
        code, output = run(["count", "--type", "sigma", "--i", "3", "--j", "2"], config)
        assert (code, output) == (2, "")
        assert capsys.readouterr().err.startswith("error:")

    def test_count_table(self, config):
        code, output = run(["count", "--table", "--imax", "5", "--jmax", "5", "--jmin", "2", "--csv"], config)
        assert code == 0
        lines = output.splitlines()
        assert lines[0] == "i,j,count"
        assert "5,5,64" in lines
        assert "4,3,21" in lines
        assert all(int(line.split(",")[1]) >= 2 for line in lines[1:])

    def test_enum(self, config):
        code, output = run(["enum", "--type", "O", "--i", "3", "--j", "3", "--k", "1"], config)
        assert code == 0
        assert output.splitlines() == PARTITIONS_OF_39

    def test_enum_structured_json(self, config):
        code, output = run(["enum", "--i", "3", "--j", "3", "--json"], config)
        assert code == 0
        records = json.loads(output)
        assert [r["text"] for r in records] == PARTITIONS_OF_39
        assert all(r["total"] == 39 for r in records)

    def test_gen_matrix(self, config):
        code, output = run(["gen", "--matrix", "M", "--json"], config)
        assert code == 0
        records = json.loads(output)
        assert records[0] == {"j": 1, "i=1": 4786, "i=2": 5977, "i=3": 7384}
        assert len(records) == 4

    def test_gen_kind(self, config):
        code, output = run(["gen", "--kind", "octahedral", "--from", "1", "--to", "4", "--csv"], config)
        assert (code, output) == (0, "rank,value\n1,1\n2,6\n3,19\n4,44\n")

    def test_gen_polygonal(self, config):
        code, output = run(["gen", "--kind", "polygonal", "--t", "5", "--to", "3"], config)
        assert code == 0
        assert output.splitlines()[-1].split() == ["3", "12"]

    def test_verify(self, config):
        assert run(["verify", "--thm", "3", "--imax", "200", "--jmax", "200"], config) == (0, "0 failures\n")

    def test_verify_json(self, config):
        code, output = run(["verify", "--thm", "cor6", "--json"], config)
        assert code == 0
        assert json.loads(output) == {"thm": "cor6", "failures": [], "count": 0}

    def test_verify_paths(self, config):
        assert run(["verify", "--thm", "paths", "--imax", "8", "--jmax", "8"], config) == (0, "0 failures\n")

    def test_verify_reports_failures(self, config, monkeypatch):
        monkeypatch.setattr("src.main.verify_sweep", lambda thm, imax, jmax: [("R", 1, 1)])
        assert run(["verify", "--thm", "4", "--imax", "2", "--jmax", "2"], config) == (1, "1 failures\nR 1 1\n")

    def test_config_output_format(self, config):
        config.OUTPUT_FORMAT = "json"
        code, output = run(["count", "--i", "3", "--j", "3"], config)
        assert code == 0
        assert json.loads(output) == [{"type": "O", "i": 3, "j": 3, "k": 1, "count": 8}]

    @pytest.mark.slow
    def test_count_deep_cell(self, config):
        code, output = run(["count", "--type", "O", "--i", "1500", "--j", "1500"], config)
        assert code == 0
        assert output.endswith("\n")
        assert output.strip().isdigit()

    def test_verify_cor6_rank_cap(self, config):
        config.limits["four_cube_rank_cap"] = 2
        code, output = run(["verify", "--thm", "cor6"], config)
        assert code == 1
        failures = int(output.split()[0])
        assert failures > 0
        assert "2 2 5" in output.splitlines()[1:]


class TestPosetCommand:
    def test_forked_chain(self, config, fixtures_dir):
        code, output = run(["poset", "--file", str(fixtures_dir / "forked_chain.poset"), "--json"], config)
        assert code == 0
        payload = json.loads(output)
        assert len(payload["elements"]) == 6
        assert len(payload["hasse"]) == 5
        assert ["f", "c"] in payload["hasse"]

    def test_singleton(self, config, fixtures_dir):
        code, output = run(["poset", "--file", str(fixtures_dir / "singleton.poset")], config)
        assert (code, output) == (0, "elements: x\n")

    def test_cycle(self, config, fixtures_dir, capsys):
        code, _ = run(["poset", "--file", str(fixtures_dir / "cycle.poset")], config)
        assert code == 2
        assert "antisymmetry" in capsys.readouterr().err

    def test_parse_error(self, config, tmp_path, capsys):
        path = tmp_path / "bad.poset"
        path.write_text("a < b\nfoo bar\n", encoding="utf-8")
        code, _ = run(["poset", "--file", str(path)], config)
        assert code == 2
        assert ":2:1:" in capsys.readouterr().err

    def test_missing_file(self, config, tmp_path):
        code, _ = run(["poset", "--file", str(tmp_path / "absent.poset")], config)
        assert code == 2

    def test_derive(self, config, fixtures_dir):
        argv = ["poset", "--file", str(fixtures_dir / "suitable_block.poset"), "--derive", "a,b", "--json"]
        code, output = run(argv, config)
        assert code == 0
        payload = json.loads(output)
        assert payload["pair"] == {"a": "a", "b": "b", "chain": ["c1", "c2", "c3"]}
        assert len(payload["elements"]) == 10
        assert len(payload["hasse"]) == 11

    def test_derive_unsuitable(self, config, fixtures_dir):
        code, _ = run(["poset", "--file", str(fixtures_dir / "forked_chain.poset"), "--derive", "a,f"], config)
        assert code == 2

    def test_representation(self, config, fixtures_dir):
        code, output = run(["poset", "--file", str(fixtures_dir / "n3.poset")], config)
        assert code == 0
        assert output.splitlines()[-1] == "representation: valid, weight 12"

    def test_dot(self, config, fixtures_dir):
        code, output = run(["poset", "--file", str(fixtures_dir / "forked_chain.poset"), "--dot"], config)
        assert code == 0
        assert "rankdir=BT;" in output
        assert '"d" -> "e";' in output

    def test_csv_edges(self, config, fixtures_dir):
        code, output = run(["poset", "--file", str(fixtures_dir / "forked_chain.poset"), "--csv"], config)
        assert code == 0
        assert output.splitlines() == ["lower,upper", "a,b", "b,c", "c,d", "d,e", "f,c"]


class TestStableOutput:
    @pytest.mark.parametrize(
        "argv",
        [
            ["decompose", "--family", "octahedral3", "--n", "51", "--json"],
            ["decompose", "--family", "polygonal3", "--t", "4", "--n", "75", "--json"],
            ["enum", "--type", "O", "--i", "3", "--j", "3", "--json"],
            ["verify", "--thm", "cor6", "--json"],
        ],
    )
    def test_json_is_canonical(self, config, argv):
        code, first = run(argv, config)
        assert code == 0
        assert run(argv, config) == (0, first)
        assert emit_json(json.loads(first)) == first

    def test_poset_json_is_canonical(self, config, fixtures_dir):
        argv = ["poset", "--file", str(fixtures_dir / "suitable_block.poset"), "--derive", "a,b", "--json"]
        code, first = run(argv, config)
        assert code == 0
        assert run(argv, config) == (0, first)
        assert emit_json(json.loads(first)) == first


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["decompose", "--family", "nope", "--n", "5"],
            ["decompose", "--family", "cubes4"],
            ["count", "--json", "--csv", "--i", "3", "--j", "3"],
        ],
    )
    def test_usage_errors(self, config, argv):
        code, output = run(argv, config)
        assert (code, output) == (2, "")

    def test_missing_count_indices(self, config):
        assert run(["count", "--i", "3"], config) == (2, "")

    def test_cap_exceeded(self, config):
        config.limits["gen_cap"] = 5
        assert run(["gen", "--kind", "cube", "--to", "10"], config) == (2, "")

    def test_count_cap(self, config):
        config.limits["count_cap"] = 100
        assert run(["count", "--type", "O", "--i", "1500", "--j", "1500"], config) == (2, "")
        assert run(["count", "--type", "O", "--i", "100", "--j", "5"], config)[0] == 0

    def test_decompose_cap(self, config):
        assert run(["decompose", "--family", "squares3", "--n", "10000001"], config) == (2, "")

    def test_version(self, config, capsys):
        assert run(["--version"], config) == (0, "")
        assert "1.0.0" in capsys.readouterr().out

    def test_parser_lists_every_verb(self):
        parser = build_parser()
        args = parser.parse_args(["poset", "--file", "x.poset", "--derive", "a,b"])
        assert (args.verb, args.derive, args.dot) == ("poset", "a,b", False)
