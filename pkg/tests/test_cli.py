import json
import pytest
import sys
import os

# Add the parent directory to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from click.testing import CliRunner

from src import cli
from src.algebra import brandt
from src.cli import ParseError, format_semigroup, main, parse_semigroup_text, parse_table_text
from src.germ_groupoid import germ_equiv


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_check_builtin_passes(runner):
    result = runner.invoke(main, ["check", "--build", "brandt:2"])
    assert result.exit_code == 0
    assert "PASS  pi-isomorphism" in result.output
    assert "全部结论成立" in result.output


def test_check_json_is_deterministic(runner):
    first = runner.invoke(main, ["check", "--build", "symmetric:2", "--format", "json"])
    second = runner.invoke(main, ["check", "--build", "symmetric:2", "--format", "json"])
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output
    data = json.loads(first.output)
    assert data["ok"] is True
    assert data["instance"] == "symmetric:2"
    assert len(data["claims"]) == 20


def test_topology_witness(runner):
    """链上单位空间的主拓扑不是 Hausdorff"""
    result = runner.invoke(main, ["topology", "--build", "chain:2", "--space", "units", "--basis", "principal"])
    assert result.exit_code == 0
    assert "non-Hausdorff, witness ({x1, x2}, {x2})" in result.output
    result = runner.invoke(main, ["topology", "--build", "chain:2", "--space", "units"])
    assert "Hausdorff" in result.output
    assert "non-Hausdorff" not in result.output


def test_topology_json(runner):
    result = runner.invoke(main, ["topology", "--build", "chain:2", "--space", "efilters",
                                  "--basis", "principal", "--format", "json"])
    data = json.loads(result.output)["topology"]
    assert data["hausdorff"] is False
    assert data["witness"] == ["{x1, x2}", "{x2}"]


def test_check_respects_point_limit(runner):
    result = runner.invoke(main, ["check", "--build", "brandt:2", "--point-limit", "3"])
    assert result.exit_code == 2
    assert "超过上限 3" in result.output
    result = runner.invoke(main, ["check", "--build", "brandt:2", "--point-limit", "4"])
    assert result.exit_code == 0


def test_check_broken_table(runner, tmp_path):
    """幂等元不交换的表在 check 中记为结论不成立"""
    path = write(tmp_path, "left_zero.txt", "3\n0 0 0\n0 1 1\n0 2 2\n")
    result = runner.invoke(main, ["check", path])
    assert result.exit_code == 1
    assert "FAIL  semigroup-axioms" in result.output
    result = runner.invoke(main, ["validate", path])
    assert result.exit_code == 2


def test_check_broken_equivalence(runner, monkeypatch):
    """替换芽等价后 check 的退出码为 1"""
    def flipped(S, p, q):
        if (p.s, q.s, p.xi.carrier, q.xi.carrier) == (2, 1, 0b110, 0b110):
            return False
        return germ_equiv(S, p, q)

    monkeypatch.setattr(cli, "germ_equiv", flipped)
    result = runner.invoke(main, ["check", "--build", "chain:2"])
    assert result.exit_code == 1
    assert "FAIL  germ-groupoid" in result.output


def test_parse_error_exit_code(runner, tmp_path):
    path = write(tmp_path, "short.txt", "2\n0 0\n0\n")
    result = runner.invoke(main, ["validate", path])
    assert result.exit_code == 2
    assert "第 3 行第 2 列" in result.output


def test_missing_zero(runner, tmp_path):
    """Z₂ 没有零元：提示 --adjoin-zero，加上之后验证通过"""
    path = write(tmp_path, "z2.txt", "# 二元群\n2\n0 1\n1 0\n")
    result = runner.invoke(main, ["check", path])
    assert result.exit_code == 2
    assert "--adjoin-zero" in result.output
    result = runner.invoke(main, ["check", path, "--adjoin-zero"])
    assert result.exit_code == 0


def test_validate_and_info(runner):
    result = runner.invoke(main, ["validate", "--build", "brandt:2"])
    assert result.exit_code == 0
    assert "有效的带零逆半群：5 个元素，3 个幂等元" in result.output
    result = runner.invoke(main, ["info", "--build", "chain:2", "--format", "json"])
    data = json.loads(result.output)
    assert data["idempotents"] == ["0", "x1", "x2"]
    assert data["hasse"] == [["0", "x1"], ["x1", "x2"]]
    assert data["order_properties"]["idempotent-meet"] is True
    assert all(data["order_properties"].values())


def test_filters_command(runner):
    result = runner.invoke(main, ["filters", "--build", "brandt:2", "--select", "ultra", "--format", "json"])
    assert result.exit_code == 0
    rows = json.loads(result.output)["filters"]
    assert len(rows) == 4
    assert all(row["ultra"] and row["proper"] for row in rows)
    result = runner.invoke(main, ["filters", "--build", "brandt:2", "--mode", "bruteforce",
                                  "--bruteforce-limit", "3"])
    assert result.exit_code == 2


def test_groupoid_command(runner):
    result = runner.invoke(main, ["groupoid", "--build", "symmetric:2", "--kind", "germs", "--format", "json"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["axioms"] is True
    assert len(data["groupoid"]["arrows"]) == 6
    assert len(data["groupoid"]["units"]) == 3


def test_emit_dot_brandt(runner):
    result = runner.invoke(main, ["emit-dot", "--build", "brandt:2"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "digraph groupoid {"
    edges = [line for line in lines if "->" in line]
    nodes = [line for line in lines if "[label=" in line and "->" not in line]
    assert len(edges) == 2
    assert len(nodes) == 2


def test_emit_dot_trivial(runner, tmp_path):
    """只有零元的半群没有真滤子，图为空"""
    path = write(tmp_path, "trivial.txt", "1\n0\n")
    result = runner.invoke(main, ["emit-dot", path])
    assert result.exit_code == 0
    assert "->" not in result.output
    assert "[label=" not in result.output
    assert result.output.rstrip().endswith("}")


def test_input_errors(runner, tmp_path):
    assert runner.invoke(main, ["validate"]).exit_code == 2
    path = write(tmp_path, "b.txt", format_semigroup(brandt(2)))
    assert runner.invoke(main, ["validate", path, "--build", "brandt:2"]).exit_code == 2
    assert runner.invoke(main, ["validate", "--build", "cyclic:3"]).exit_code == 2
    assert runner.invoke(main, ["validate", "--build", "brandt"]).exit_code == 2
    assert runner.invoke(main, ["validate", str(tmp_path / "missing.txt")]).exit_code == 2


def test_output_file(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["check", "--build", "chain:2", "--format", "json", "-o", str(out)])
    assert result.exit_code == 0
    assert json.loads(out.read_text(encoding="utf-8"))["ok"] is True


def test_parse_table_text_labels():
    text = "3\n0 0 0\n0 1 1\n0 1 2\nlabel 1 f\nlabel 2 e\n"
    table, labels = parse_table_text(text)
    assert table == [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
    assert labels == ["0", "f", "e"]
    S = parse_semigroup_text(text)
    assert S.mul(S.index("f"), S.index("e")) == S.index("f")


def test_parse_errors():
    with pytest.raises(ParseError) as info:
        parse_table_text("2\n0 x\n0 0\n")
    assert (info.value.line, info.value.column) == (2, 3)
    with pytest.raises(ParseError) as info:
        parse_table_text("2\n0 0\n0 2\n")
    assert info.value.column == 3
    with pytest.raises(ParseError):
        parse_table_text("# 只有注释\n\n")
    with pytest.raises(ParseError) as info:
        parse_table_text("2\n0 0\n")
    assert info.value.line == 3


def test_format_semigroup_reparses():
    S = brandt(2)
    T = parse_semigroup_text(format_semigroup(S))
    assert T.labels == S.labels
    assert (T.table == S.table).all()
