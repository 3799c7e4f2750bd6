import json

import pytest

from mlaw import commutator_structure, dihedral, symmetric, trivial_structure
from mlaw.cli import EXIT_INPUT, EXIT_INVALID, EXIT_LIMIT, EXIT_OK, build_parser, main, parse_group_spec, resolve_config

TOP_KEYS = {"group", "wedge", "schur_multiplier", "structures"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize(
    "spec,order",
    [("D:4", 8), ("Q:2", 8), ("S:4", 24), ("A:4", 12), ("Z:4x6", 24), ("Z:7", 7), ("SL23", 24), ("V4", 4)],
)
def test_group_specs(spec, order):
    assert parse_group_spec(spec).order == order


def test_group_command(capsys):
    code, rep = run_json(capsys, "group", "D:4")
    assert code == EXIT_OK and set(rep) == TOP_KEYS
    assert rep["group"]["order"] == 8 and rep["group"]["derived_order"] == 2
    assert [g["order"] for g in rep["group"]["generators"]] == [2, 4]
    code, rep = run_json(capsys, "group", "Z:4x6")
    assert rep["group"]["abelian"] and rep["group"]["abelianization_invariants"] == [2, 12]
    code, rep = run_json(capsys, "group", "S:4")
    assert rep["group"]["order"] == 24 and rep["group"]["derived_order"] == 12 and rep["group"]["center_order"] == 1
    code, out, _ = run(capsys, "group", "D:4")
    assert "order: 8" in out and "derived subgroup order: 2" in out


def test_perm_and_presentation_specs(capsys, tmp_path):
    f = tmp_path / "a5.txt"
    f.write_text("# A_5\n(1 2 3 4 5)\n\n(1 2)(3 4)\n")
    code, rep = run_json(capsys, "group", f"perm:{f}")
    assert code == EXIT_OK and rep["group"]["order"] == 60 and rep["group"]["derived_order"] == 60
    code, rep = run_json(capsys, "group", "pres:<a,b | a^7, b^3, b a b^-1 = a^2>")
    assert rep["group"]["order"] == 21


def test_wedge_command(capsys):
    code, rep = run_json(capsys, "wedge", "D:6", "--exterior")
    assert code == EXIT_OK and set(rep) == TOP_KEYS
    assert rep["wedge"]["order"] == 6 and rep["wedge"]["invariants"] == [6]
    assert rep["schur_multiplier"]["invariants"] == [2]
    code, rep = run_json(capsys, "wedge", "D:5", "--tensor")
    assert rep["wedge"]["invariants"] == [10] and rep["schur_multiplier"] is None
    code, rep = run_json(capsys, "wedge", "S:4")
    assert rep["wedge"]["order"] == 24 and rep["wedge"]["invariants"] is None
    assert rep["wedge"]["name"] == "SL23 (order 24)"
    code, out, _ = run(capsys, "wedge", "A:4")
    assert "Q:2 (order 8)" in out and "Schur multiplier M(G): Z_2" in out


def test_enumerate_command(capsys):
    code, rep = run_json(capsys, "mla", "enumerate", "D:8")
    assert code == EXIT_OK and set(rep) == TOP_KEYS
    s = rep["structures"]
    assert {"raw_count", "classes", "lie_simple"} <= set(s)
    assert len(s["classes"]) == 4 and s["raw_count"] == 8 and s["agreement"] is True
    for c in s["classes"]:
        assert {"ideal_order", "representative_count"} <= set(c)
        assert ("ideal_invariants" in c) != ("ideal_name" in c)
    code, rep = run_json(capsys, "mla", "enumerate", "Z:3x3")
    assert len(rep["structures"]["classes"]) == 2
    code, out, _ = run(capsys, "mla", "enumerate", "A:4")
    assert "Lie simple: true" in out
    code, rep = run_json(capsys, "mla", "enumerate", "S:4")
    names = [c.get("ideal_name") for c in rep["structures"]["classes"]]
    assert "A:4 (order 12)" in names


def test_enumerate_methods(capsys):
    _, wedge = run_json(capsys, "mla", "enumerate", "Q:3", "--method", "wedge")
    _, direct = run_json(capsys, "mla", "enumerate", "Q:3", "--method", "direct")
    assert wedge["structures"]["classes"] == direct["structures"]["classes"]
    assert direct["wedge"] is None and direct["structures"]["agreement"] is None


def test_output_is_deterministic(capsys):
    outs = [run(capsys, "mla", "enumerate", "D:6", "--json", "--threads", t)[1] for t in ("1", "1", "4")]
    assert outs[0] == outs[1] == outs[2]
    texts = [run(capsys, "mla", "enumerate", "Q:4", "--threads", t)[1] for t in ("1", "3")]
    assert texts[0] == texts[1]


def _write_table(tmp_path, s):
    f = tmp_path / "star.json"
    f.write_text(json.dumps(s))
    return str(f)


def test_verify_command(capsys, tmp_path):
    for spec, G in [("D:3", dihedral(3)), ("S:4", symmetric(4))]:
        code, out, _ = run(capsys, "mla", "verify", spec, "--table", _write_table(tmp_path, trivial_structure(G).to_json()))
        assert code == EXIT_OK and "valid: true" in out
    S3 = symmetric(3)
    code, _, _ = run(capsys, "mla", "verify", "S:3", "--table", _write_table(tmp_path, commutator_structure(S3).to_json()))
    assert code == EXIT_OK


def test_verify_perturbed_table_reports_witness(capsys, tmp_path):
    G = dihedral(3)
    s = commutator_structure(G).to_json()
    s["star"][1][2] = (s["star"][1][2] + 1) % 6
    path = _write_table(tmp_path, s)
    code, out, _ = run(capsys, "mla", "verify", "D:3", "--table", path)
    assert code == EXIT_INVALID
    assert "FAIL" in out and "first violation: axiom" in out and "valid: false" in out
    code, rep = run_json(capsys, "mla", "verify", "D:3", "--table", path)
    assert code == EXIT_INVALID and rep["verification"]["valid"] is False
    failing = [a for a in rep["verification"]["axioms"] if not a["pass"]]
    assert failing and all(a["witness"] for a in failing)


def test_verify_shape_mismatch(capsys, tmp_path):
    path = _write_table(tmp_path, trivial_structure(dihedral(3)).to_json())
    code, _, err = run(capsys, "mla", "verify", "D:4", "--table", path)
    assert code == EXIT_INPUT and "input error" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "mla", "verify", "D:4", "--table", str(bad))[0] == EXIT_INPUT
    assert run(capsys, "mla", "verify", "D:4", "--table", str(tmp_path / "missing.json"))[0] == EXIT_INPUT


@pytest.mark.parametrize(
    "argv",
    [
        ["group", "X:3"],
        ["group", "D:x"],
        ["group", "Z:4y6"],
        ["group", "pres:<a | b>"],
        ["group", "pres:<a | a"],
        ["group", "perm:/nonexistent/file"],
        ["group", "Q:1"],
        ["frobnicate"],
        ["mla", "enumerate", "D:3", "--method", "magic"],
        ["wedge", "D:3", "--max-order", "0"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_INPUT


@pytest.mark.parametrize(
    "argv",
    [
        ["group", "pres:<a | >", "--max-cosets", "500"],
        ["group", "S:6"],
        ["wedge", "A:5"],
        ["mla", "enumerate", "Z:6x6"],
        ["wedge", "D:4", "--max-cosets", "2"],
    ],
)
def test_resource_limits_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_LIMIT and "resource limit" in err


def test_config_precedence(monkeypatch):
    parser = build_parser()
    monkeypatch.delenv("MLAW_MAX_ORDER", raising=False)
    monkeypatch.delenv("MLAW_MAX_COSETS", raising=False)
    cfg = resolve_config(parser.parse_args(["wedge", "D:3"]))
    assert cfg.max_order == 24 and cfg.max_cosets == 1_000_000 and cfg.threads == 1
    monkeypatch.setenv("MLAW_MAX_ORDER", "40")
    monkeypatch.setenv("MLAW_MAX_COSETS", "5000")
    cfg = resolve_config(parser.parse_args(["wedge", "D:3"]))
    assert cfg.max_order == 40 and cfg.max_cosets == 5000
    cfg = resolve_config(parser.parse_args(["wedge", "D:3", "--max-order", "30", "--max-cosets", "7"]))
    assert cfg.max_order == 30 and cfg.max_cosets == 7
    cfg = resolve_config(parser.parse_args(["mla", "enumerate", "D:3", "--json", "--method", "direct"]))
    assert cfg.output_format == "json" and cfg.method == "direct"


def test_env_raises_order_bound(capsys, monkeypatch):
    monkeypatch.setenv("MLAW_MAX_ORDER", "36")
    code, rep = run_json(capsys, "mla", "enumerate", "Z:6x6")
    assert code == EXIT_OK and len(rep["structures"]["classes"]) == 4
    monkeypatch.setenv("MLAW_MAX_ORDER", "lots")
    assert run(capsys, "wedge", "D:3")[0] == EXIT_INPUT


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == EXIT_OK
