"""
Test the command-line interface end to end.
Run: python -m pytest tests/test_cli.py -v
   or: python tests/test_cli.py
"""
import asyncio
import json

from main import (
    EXIT_BUDGET,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    RunConfig,
    build_parser,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_entropy_json(capsys):
    """The golden mean gap set has λ = φ."""
    code, out, _ = run(capsys, "entropy", "eventual:T=1;exc={};D=1;res={0}", "--json")
    assert code == EXIT_OK
    report = json.loads(out)
    assert abs(report["lam"] - (1 + 5 ** 0.5) / 2) < 1e-9, report


def test_entropy_single_gap_text(capsys):
    """One gap means λ = 1."""
    code, out, _ = run(capsys, "entropy", "finite:{0}")
    assert code == EXIT_OK
    assert "λ = 1.000000000000" in out


def test_bad_gap_set_is_an_input_error(capsys):
    """Unparseable input exits with the input-error code."""
    code, _, err = run(capsys, "entropy", "garbage")
    assert code == EXIT_INPUT
    assert "error:" in err


def test_gapset_canonical_form(capsys):
    """Redundant encodings print canonically."""
    code, out, _ = run(capsys, "gapset", "eventual:T=5;exc={1,3};D=4;res={1,3}")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "eventual:T=0;exc={};D=2;res={1}", out


def test_image_no_111(capsys):
    """The image report lists S and the standard forbidden set."""
    code, out, _ = run(capsys, "image", "--instance", "no-111")
    assert code == EXIT_OK
    assert "S = {1} ∪ {n ≥ 4}" in out
    assert "standard forbidden set: {11, 1001, 10001}" in out


def test_image_from_forbidden_words(capsys):
    """--forbidden and --marker define a code directly."""
    code, out, _ = run(capsys, "image", "--forbidden", "111", "--marker", "1010", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["description"] == "{1} ∪ {n ≥ 4}"


def test_image_needs_a_marker(capsys):
    """A forbidden set alone is not a code."""
    code, _, _ = run(capsys, "image", "--forbidden", "111")
    assert code == EXIT_INPUT


def test_p1_no_111(capsys):
    """P1 holds via the fixed point and Z checks out."""
    code, out, _ = run(capsys, "p1", "--instance", "no-111")
    assert code == EXIT_OK
    assert "P1 HOLDS via C2" in out
    assert "fixed vertex A = 0000" in out


def test_p1_full_shift(capsys):
    """The full-shift comparison is printed for a full-shift domain."""
    code, out, _ = run(capsys, "p1", "--full-shift", "0000")
    assert code == EXIT_OK
    assert "X_F works; X_Fbar fails" in out
    assert "X_Fbar: 100001 is in Y but not in the image" in out


def test_p1_short_marker(capsys):
    """A one-symbol marker on {111} builds Z over two hubs."""
    code, out, _ = run(capsys, "p1", "--forbidden", "111", "--marker", "0")
    assert code == EXIT_OK
    assert "P1 HOLDS via C1" in out
    assert "gap 1 to 00: 01 10 00" in out, out


def test_p1_image_not_a_gap_shift(capsys):
    """Marker 1 on {111} has no gap-shift image and is rejected as input."""
    code, _, err = run(capsys, "p1", "--forbidden", "111", "--marker", "1")
    assert code == EXIT_INPUT
    assert "not a gap shift" in err


def test_p1_fails_on_spoke_file(tmp_path, capsys):
    """A spoke graph with cycles of length >= 2 fails P1."""
    spec = tmp_path / "one.spokes"
    spec.write_text("regular m=1 d=2\n", encoding="utf-8")
    code, out, _ = run(capsys, "p1", "--spokes", str(spec))
    assert code == EXIT_OK
    assert "P1 FAILS" in out


def test_p2_three_spokes(capsys):
    """P2 holds with W = {2}."""
    code, out, _ = run(capsys, "p2", "--instance", "three-spokes")
    assert code == EXIT_OK
    assert "P2 HOLDS with W = {2}" in out


def test_p2_failed_certificate_exits_as_unverified(monkeypatch, capsys):
    """A construction whose certificates fail exits with the verification code."""
    import codes.spoke
    from codes.spoke import P2Certificates

    monkeypatch.setattr(
        codes.spoke,
        "certify_h",
        lambda *_: P2Certificates(
            no_diamond=True, degree=2, gap_set_equal=True, psi_graph_map=True, psi_injective=True
        ),
    )
    code, out, _ = run(capsys, "p2", "--instance", "three-spokes")
    assert code == EXIT_VERIFY_FAILED
    assert "P2 HOLDS with W = {2}" in out
    assert "'degree': 2" in out


def test_p2_no_cover(capsys):
    """P2 fails when no disjoint cover exists."""
    code, out, _ = run(capsys, "p2", "--instance", "no-cover")
    assert code == EXIT_OK
    assert "P2 FAILS" in out


def test_p2_two_cycle(capsys):
    """A two-cycle spec goes through the unrolled construction."""
    code, out, _ = run(capsys, "p2", "--instance", "two-cycle", "--json")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["u"] == 4 and report["h_language"]["equal"]


def test_p3_no_cover(capsys):
    """No support passes the necessary conditions."""
    code, out, _ = run(capsys, "p3-necessary", "--instance", "no-cover")
    assert code == EXIT_OK
    assert "necessary conditions infeasible" in out


def test_construct_then_verify(tmp_path, capsys):
    """An emitted H verifies against its own spoke graph."""
    artifact = tmp_path / "h.graph"
    code, _, _ = run(capsys, "construct-z", "--instance", "four-spokes", "--out", str(artifact))
    assert code == EXIT_OK and artifact.exists()
    code, out, _ = run(capsys, "verify", str(artifact), "--instance", "four-spokes")
    assert code == EXIT_OK
    assert out.startswith("PASS"), out


def test_verify_tampered_graph(tmp_path, capsys):
    """A spoke cycle one vertex too long is caught with the first divergent word."""
    artifact = tmp_path / "bad.graph"
    artifact.write_text(
        "vertex 0 label=1 name=B\n"
        "vertex 1 label=0 name=V1\n"
        "vertex 2 label=0 name=V2\n"
        "vertex 3 label=0 name=V3\n"
        "edge 0 1\nedge 1 0\nedge 1 2\nedge 2 3\nedge 3 1\n",
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "verify", str(artifact), "--instance", "single-spoke")
    assert code == EXIT_VERIFY_FAILED
    assert "10001" in out


def test_verify_empty_file(tmp_path, capsys):
    """An empty graph file is an input error."""
    artifact = tmp_path / "empty.graph"
    artifact.write_text("", encoding="utf-8")
    code, _, _ = run(capsys, "verify", str(artifact), "--gaps", "finite:{1}")
    assert code == EXIT_INPUT


def test_budget_exit_code(capsys):
    """An oracle horizon past the budget exits with the budget code."""
    code, _, err = run(capsys, "p2", "--instance", "three-spokes", "--length", "40")
    assert code == EXIT_BUDGET
    assert "budget" in err


def test_config_reads_environment(monkeypatch):
    """Environment settings apply unless a flag overrides them."""
    monkeypatch.setenv("SHIFT_CODES_BUDGET_BLOCKS", "12")
    monkeypatch.setenv("SHIFT_CODES_TOL", "1e-8")
    args = build_parser().parse_args(["entropy", "finite:{0}"])
    cfg = RunConfig.from_args(args)
    assert cfg.budget.max_block_len == 12 and cfg.tol == 1e-8
    args = build_parser().parse_args(["entropy", "finite:{0}", "--budget-blocks", "20"])
    assert RunConfig.from_args(args).budget_blocks == 20


def test_save_and_list_runs(tmp_path, monkeypatch, capsys):
    """Saved reports are listed and shown from the run archive."""
    monkeypatch.setenv("DATABASE_URL", f"sqlite+aiosqlite:///{tmp_path / 'runs.db'}")
    code, _, err = run(capsys, "p2", "--instance", "three-spokes", "--save")
    assert code == EXIT_OK
    identifier = err.split("saved run ")[-1].split()[0]
    assert identifier.startswith("p2__")

    code, out, _ = run(capsys, "runs", "list")
    assert code == EXIT_OK and identifier in out

    code, out, _ = run(capsys, "runs", "show", identifier)
    assert code == EXIT_OK
    assert json.loads(out)["W"] == [2]

    from scripts.export_runs import export_all

    asyncio.run(export_all(tmp_path))
    assert (tmp_path / "runs.csv").exists()

    code, _, _ = run(capsys, "runs", "show", "nope")
    assert code == EXIT_INPUT


def test_run_identifier_is_stable():
    """Identifiers are the command plus a digest of the input."""
    from database.runs import make_run_identifier

    a = make_run_identifier("p2", "instance:three-spokes")
    assert a == make_run_identifier("p2", "instance:three-spokes")
    assert a.startswith("p2__") and len(a) == len("p2__") + 16
    assert a != make_run_identifier("p2", "instance:no-cover")
    assert make_run_identifier("p3-necessary", "x").startswith("p3-necessary__")


def test_database_url_uses_asyncpg(monkeypatch):
    """Plain postgres URLs get the async driver; unset means local SQLite."""
    from database.connection import DEFAULT_DATABASE_URL, database_url

    monkeypatch.setenv("DATABASE_URL", "postgres://u:p@host/db")
    assert database_url() == "postgresql+asyncpg://u:p@host/db"
    monkeypatch.setenv("DATABASE_URL", "postgresql://host/db")
    assert database_url() == "postgresql+asyncpg://host/db"
    monkeypatch.delenv("DATABASE_URL")
    assert database_url() == DEFAULT_DATABASE_URL


if __name__ == "__main__":
    import subprocess
    subprocess.run(["python", "-m", "pytest", __file__, "-v"])
