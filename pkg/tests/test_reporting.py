import json
from fractions import Fraction as F

import pytest

from lamanmv import cli
from lamanmv.errors import InputError
from lamanmv.graphs import k33_graph
from lamanmv.reporting import (
    borcea_streinu_bound,
    build_report,
    default_lengths,
    parse_graph_file,
)

TRIANGLE = """
n 3
e 1 2 5
e 1 3 4
e 2 3 3
"""

K33 = "n 6\n" + "\n".join(f"e {a} {b}" for a in (1, 3, 5) for b in (2, 4, 6))


def test_parse_triangle():
    fw = parse_graph_file(TRIANGLE)
    assert fw.graph.n == 3
    assert fw.lengths == {(1, 2): 5, (1, 3): 4, (2, 3): 3}


def test_parse_rational_and_decimal_lengths():
    fw = parse_graph_file("n 3\ne 1 2 7/2\ne 1 3 2.5\ne 2 3 4")
    assert fw.lengths[(1, 2)] == F(7, 2)
    assert fw.lengths[(1, 3)] == F(5, 2)


def test_parse_defaults_lengths_for_k33():
    fw = parse_graph_file(K33)
    assert fw.graph.edges == k33_graph().edges
    assert len(fw.lengths) == 9
    assert all(l > 0 for l in fw.lengths.values())


def test_parse_rejects_loop():
    with pytest.raises(InputError):
        parse_graph_file("n 3\ne 1 1 2")


def test_parse_rejects_duplicate_edge():
    with pytest.raises(InputError):
        parse_graph_file("n 3\ne 1 2 1\ne 2 1 2\ne 1 3 1")


def test_parse_rejects_partial_lengths():
    with pytest.raises(InputError):
        parse_graph_file("n 3\ne 1 2 5\ne 1 3\ne 2 3 3")


def test_parse_reports_line_numbers():
    with pytest.raises(InputError) as err:
        parse_graph_file("n 3\ne 1 2 5\ne 1 oops 4")
    assert "line 3" in str(err.value)


def test_default_lengths_tight_for_h1():
    fw = parse_graph_file("n 3\ne 1 2\ne 1 3\ne 2 3")
    assert sorted(fw.lengths.values()) == [3, 4, 5]


def test_borcea_streinu_values():
    assert borcea_streinu_bound(3) == 2
    assert borcea_streinu_bound(6) == 70


def test_report_triangle_invariants():
    fw = parse_graph_file(TRIANGLE)
    rep = build_report(fw, seed=0)
    assert rep.laman
    assert rep.henneberg_class == "HennebergI"
    assert rep.bezout_soe == 4 and rep.bezout_subsoe == 32
    assert rep.mv_soe["value"] == 4 and rep.mv_subsoe["value"] == 2
    assert rep.mv_soe["value"] <= rep.bezout_soe
    assert rep.mv_subsoe["value"] <= rep.bezout_subsoe
    assert rep.borcea_streinu == 2
    assert rep.embedding_count == 2
    assert rep.witness_degenerate is True


def test_report_non_laman_short_circuit():
    rep = build_report(parse_graph_file("n 4\ne 1 2 1\ne 2 3 1\ne 3 4 1"))
    assert not rep.laman
    assert rep.mv_soe is None


def run_cli(tmp_path, content, *argv):
    path = tmp_path / "g.graph"
    path.write_text(content)
    return cli.run([argv[0], *argv[1:], str(path)])


def test_cli_check(tmp_path, capsys):
    code = run_cli(tmp_path, TRIANGLE, "check")
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and out["laman"] is True


def test_cli_mv_subsoe_k33(tmp_path, capsys):
    code = run_cli(tmp_path, K33, "mv", "--form", "subsoe", "--seed", "7")
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["value"] == 32
    assert out["method"] == "separation+enumeration"


def test_cli_certify_k33(tmp_path, capsys):
    code = run_cli(tmp_path, K33, "certify")
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["value"] == 256 and out["method"] == "certificate"
    assert len(out["cells"]) == 1


def test_cli_embed_tight(tmp_path, capsys):
    code = run_cli(tmp_path, TRIANGLE, "embed", "--tight")
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and out["embedding_count"] == 2


H1_N6 = """n 6
e 1 2
e 1 3
e 2 3
e 1 4
e 3 4
e 2 5
e 4 5
e 1 6
e 5 6
"""


def test_cli_embed_tight_six_vertices(tmp_path, capsys):
    code = run_cli(tmp_path, H1_N6, "embed", "--tight")
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and out["embedding_count"] == 16
    assert out["max_residual"] < 1e-9


def test_cli_oracle_triangle(tmp_path, capsys):
    code = run_cli(tmp_path, TRIANGLE, "oracle", "--form", "subsoe")
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and out["value"] == 2
    assert out["method"] == "inclusion_exclusion"


def test_cli_oracle_capability_exit(tmp_path, capsys):
    code = run_cli(tmp_path, K33, "oracle", "--form", "subsoe")
    assert code == 2


def test_cli_input_error_exit(tmp_path, capsys):
    code = run_cli(tmp_path, "n 3\ne 1 1 2", "check")
    assert code == 1


def test_cli_unknown_flag_exit(tmp_path):
    path = tmp_path / "g.graph"
    path.write_text(TRIANGLE)
    assert cli.run(["check", "--bogus", str(path)]) == 1


def test_cli_report_byte_identical(tmp_path, capsys):
    path = tmp_path / "g.graph"
    path.write_text(TRIANGLE)
    assert cli.run(["report", "--no-timings", "--seed", "3", str(path)]) == 0
    first = capsys.readouterr().out
    assert cli.run(["report", "--no-timings", "--seed", "3", str(path)]) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert "timings" not in payload
    assert payload["mv_subsoe"]["value"] == 2


def test_cli_report_has_timings_by_default(tmp_path, capsys):
    path = tmp_path / "g.graph"
    path.write_text(TRIANGLE)
    assert cli.run(["report", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "timings" in payload


def test_report_k33_end_to_end(tmp_path, capsys):
    path = tmp_path / "k33.graph"
    path.write_text(K33)
    assert cli.run(["report", "--seed", "0", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["class"] == "HennebergII"
    assert payload["mv_soe"]["value"] == 256
    assert payload["mv_subsoe"]["value"] == 32
    assert payload["bezout_subsoe"] == 2 ** 14
    assert payload["borcea_streinu_bound"] == 70
    assert payload["witness_degenerate"] is True
    assert payload["embedding_count"] is None


def test_cli_timeout_exit(tmp_path, capsys):
    path = tmp_path / "k33.graph"
    path.write_text(K33)
    assert cli.run(["mv", "--form", "subsoe", "--timeout", "0.0", str(path)]) == 2


def test_cli_system_text(tmp_path, capsys):
    code = run_cli(tmp_path, TRIANGLE, "system", "--form", "soe", "--format", "text")
    out = capsys.readouterr().out
    assert code == 0
    assert "degree product: 4" in out


def test_cli_henneberg_and_orient(tmp_path, capsys):
    assert run_cli(tmp_path, K33, "henneberg") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["class"] == "HennebergII"
    assert any(s["kind"] == "II" for s in payload["steps"])
    assert run_cli(tmp_path, K33, "orient") == 0
    payload = json.loads(capsys.readouterr().out)
    heads = [d["head"] for d in payload["directed"]]
    assert len(heads) == 8
