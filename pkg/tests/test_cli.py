import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempologic.cli import main
from tempologic.errors import SelfLoopError
from tempologic.oracles import InstanceConfig, random_instance
from tempologic.tgio import DuplicateHeaderError, TgSyntaxError, parse_tg, print_tg

E1_TEXT = "tg 1\nundirected strict\nedge a b 1\nedge b c 2\n"


@pytest.fixture
def e1_file(tmp_path):
    path = tmp_path / "e1.tg"
    path.write_text(E1_TEXT)
    return str(path)


# -- .tg format -----------------------------------------------------------------


def test_parse_tg_basic(e1):
    assert parse_tg(E1_TEXT) == e1


def test_parse_tg_isolated_vertex():
    g = parse_tg("tg 1\nundirected strict\nvertex d\nedge a b 1\n")
    assert "d" in g.vertices


def test_parse_tg_multi_labels():
    g = parse_tg("tg 1\nundirected nonstrict\nedge a b 1 3 5\n")
    assert len(g.edges) == 3
    assert not g.strict


def test_parse_tg_self_loop_line():
    with pytest.raises(SelfLoopError) as exc:
        parse_tg("tg 1\nundirected strict\nedge a a 1\n")
    assert "line 3" in str(exc.value)


def test_parse_tg_header_errors():
    with pytest.raises(TgSyntaxError):
        parse_tg("undirected strict\nedge a b 1\n")
    with pytest.raises(DuplicateHeaderError):
        parse_tg("tg 1\nundirected strict\ntg 1\n")
    with pytest.raises(TgSyntaxError):
        parse_tg("tg 1\ndirected undirected\n")


def test_parse_tg_comments():
    g = parse_tg("# hi\ntg 1\n# flags\nundirected strict # inline\nedge a b 1\n")
    assert len(g.edges) == 1


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 5000),
    n=st.integers(1, 6),
    lam=st.integers(0, 4),
    directed=st.booleans(),
    strict=st.booleans(),
)
def test_tg_round_trip(seed, n, lam, directed, strict):
    g = random_instance(
        InstanceConfig(n=n, lifetime=lam, p=0.5, directed=directed, strict=strict, seed=seed)
    )
    assert parse_tg(print_tg(g)) == g


# -- commands -----------------------------------------------------------------------


def test_cli_decompose(e1_file, capsys):
    assert main(["decompose", e1_file, "--kind", "tim", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["width"] == 2 and payload["valid"]


def test_cli_encode_roundtrip(e1_file, tmp_path, capsys):
    out = tmp_path / "structure.json"
    assert main(["encode", e1_file, "--encoding", "vim", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["valid"] and "relations" in payload


def test_cli_check_exit_codes(e1_file, tmp_path, capsys):
    f = tmp_path / "q.formula"
    f.write_text("exists t1 : L . exists t2 : L . ltT(t1, t2)\n")
    assert main(["check", e1_file, "--encoding", "lifetime", "--formula", str(f)]) == 0
    f.write_text("exists t1 : L . ltT(t1, t1)\n")
    assert main(["check", e1_file, "--encoding", "lifetime", "--formula", str(f)]) == 1


def test_cli_check_unknown_relation(e1_file, tmp_path, capsys):
    f = tmp_path / "q.formula"
    f.write_text("exists x : V . ghost(x)\n")
    assert main(["check", e1_file, "--encoding", "lifetime", "--formula", str(f)]) == 2


def test_cli_cookbook(e1_file, capsys):
    rc = main([
        "cookbook", e1_file, "--problem", "path_strict", "--encoding", "vim",
        "--assign", "u=a", "--assign", "v=c",
    ])
    assert rc == 0
    rc = main([
        "cookbook", e1_file, "--problem", "separator_vertex", "--encoding", "degree",
        "--assign", "s=a", "--assign", "z=c", "--assign", "X=b",
    ])
    assert rc == 0


def test_cli_oracle(e1_file, capsys):
    rc = main([
        "oracle", e1_file, "--problem", "path_strict",
        "--assign", "u=a", "--assign", "v=c",
    ])
    assert rc == 0


def test_cli_verify_deterministic(e1_file, capsys):
    args = ["verify", "--problem", "separator_vertex", "--encoding", "degree",
            "--trials", "6", "--seed", "7", "--json"]

    def strip(payload):
        for cell in payload["cells"]:
            cell.pop("seconds")
        return payload

    assert main(args) == 0
    first = strip(json.loads(capsys.readouterr().out))
    assert main(args) == 0
    second = strip(json.loads(capsys.readouterr().out))
    assert first == second
    assert first["cells"][0]["agreements"] == 6


def test_cli_gaifman_dot(e1_file, capsys):
    assert main(["gaifman", e1_file, "--encoding", "degree", "--export", "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph gaifman {")


def test_cli_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.tg"
    bad.write_text("tg 1\nundirected strict\nedge a a 1\n")
    assert main(["decompose", str(bad), "--kind", "vim"]) == 2
