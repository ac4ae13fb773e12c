"""Command-line interface: exit codes, JSON payloads, error reporting."""
import contextlib
import io
import json

import pytest

from lieode.cli import (EXIT_INPUT_ERROR, EXIT_LINEARIZABLE, EXIT_NEGATIVE,
                        main)

CONSTANT_EXAMPLE = "y''' + 3*y'*y'' + (y')^3 - 2*(y'' + (y')^2) + y' = 0"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(list(argv))
        except SystemExit as exc:   # argparse usage errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv + ("--json-only",))
    return code, json.loads(out), err


# -- exit codes -----------------------------------------------------------------------


def test_exit_zero_for_linearizable():
    assert run("certify", "y'' = 0")[0] == EXIT_LINEARIZABLE == 0


def test_exit_one_for_negative():
    assert run("certify", "y'' = y^2")[0] == EXIT_NEGATIVE == 1


def test_exit_two_for_quasilinear_violation():
    code, _, err = run("certify", "(y'')^2 = y")
    assert code == EXIT_INPUT_ERROR == 2
    assert "nonlinear in its highest derivative" in err


def test_exit_two_for_parse_garbage():
    assert run("certify", "y'' + = 0")[0] == 2
    assert run("certify", "z'' = 0")[0] == 2


def test_exit_two_with_usage_errors():
    assert run()[0] == 2
    assert run("nonsense")[0] == 2
    assert run("equiv", "1,0")[0] == 2


# -- json contract --------------------------------------------------------------------


def test_json_output_is_byte_deterministic():
    first = run("recover", CONSTANT_EXAMPLE, "--json-only")
    second = run("recover", CONSTANT_EXAMPLE, "--json-only")
    assert first == second
    assert first[2] == ""          # --json-only silences the summary
    code, out, err = run("recover", CONSTANT_EXAMPLE)
    assert out == first[1]         # the summary goes to stderr only
    assert err != ""


def test_certify_payload():
    code, doc, _ = run_json("certify", "y'' = 0")
    assert code == 0
    assert doc == {"case": "trivial", "derived_abelian": False,
                   "derived_dimension": 8, "m": 8, "n": 2,
                   "verdict": "linearizable"}


def test_recover_payload_constant_case():
    code, doc, _ = run_json("recover", CONSTANT_EXAMPLE)
    assert code == 0
    assert set(doc) == {"certificate", "char_poly", "affine_class",
                        "representative_ode", "action_matrix", "note"}
    assert doc["certificate"]["case"] == "constant-coefficients"
    assert doc["certificate"]["m"] == 5
    assert doc["char_poly"] == ["0", "1", "-2", "1"]   # z (z-1)^2, ascending
    assert doc["representative_ode"] == "u''' - 1/3*u' + 2/27*u = 0"
    assert doc["affine_class"]["degree"] == 3
    assert doc["affine_class"]["trivial"] is False
    assert doc["note"] is None
    assert len(doc["action_matrix"]) == 3


def test_recover_payload_nonconstant_case():
    code, doc, _ = run_json("recover", "y''' - x*y = 0")
    assert code == 0
    assert doc["certificate"]["case"] == "nonconstant-coefficients"
    assert doc["char_poly"] is None
    assert doc["representative_ode"] is None
    assert doc["note"] == "nonconstant coefficients — recovery out of scope"


def test_recover_payload_negative_case():
    code, doc, _ = run_json("recover", "y'' = y^2")
    assert code == 1
    assert doc["certificate"]["case"] == "none"
    assert doc["char_poly"] is None


def test_symmetries_payload():
    code, doc, _ = run_json("symmetries", "y'' = 0")
    assert code == 0
    assert doc["m"] == 8
    C = doc["structure_constants"]
    assert len(C) == 8 and all(len(row) == 8 for row in C)
    assert all(isinstance(c, str) for row in C for col in row for c in col)
    assert doc["derived_dimension"] == 8
    assert doc["derived_abelian"] is False


# -- equiv ----------------------------------------------------------------------------


def test_equiv_scaling_pair():
    code, doc, _ = run_json("equiv", "1,0,1", "4,0,1")
    assert code == 0
    assert doc["equivalent"] is True
    assert doc["reason"] == "equivalent"


def test_equiv_normalizes_to_monic():
    code, doc, _ = run_json("equiv", "2,0,2", "1,0,1")
    assert code == 0 and doc["equivalent"] is True


def test_equiv_zero_pattern_mismatch():
    code, doc, _ = run_json("equiv", "0,-1,0,1", "0,0,0,1")
    assert code == 1
    assert doc["reason"] == "zero-pattern-mismatch"


def test_equiv_degree_mismatch():
    code, doc, _ = run_json("equiv", "1,1", "1,1,1")
    assert code == 1 and doc["reason"] == "degree-mismatch"


def test_equiv_coefficient_list_validation():
    assert run("equiv", "5", "1,1")[0] == 2           # degree 0
    assert run("equiv", "1,1,0", "1,1")[0] == 2       # zero leading coefficient
    code, _, err = run("equiv", "1,phi", "1,1")
    assert code == 2 and "bad coefficient list" in err


# -- oracle ---------------------------------------------------------------------------


def test_oracle_payload():
    code, doc, _ = run_json("oracle", "--poly", "0,-1,0,1",
                            "--psi", "exp(y)", "--phi", "x")
    assert code == 0
    assert doc["ode"] == "y''' + (y')^3 + 3*y'*y'' - y' = 0"
    assert doc["n"] == 3
    assert doc["transformation"] == "u=exp(y), t=x"
    assert doc["source_char_poly"] == ["0", "-1", "0", "1"]
    assert doc["expected_case"] == "trivial"


def test_oracle_rejects_nonrational_images():
    code, _, err = run("oracle", "--poly", "0,-1,0,1",
                       "--psi", "y", "--phi", "exp(x)")
    assert code == 2
    assert "outside the rational class" in err


def test_oracle_rejects_degenerate_transformations():
    assert run("oracle", "--poly", "0,0,1", "--psi", "x", "--phi", "x")[0] == 2


# -- shared options -------------------------------------------------------------------


def test_file_input(tmp_path):
    path = tmp_path / "example.ode"
    path.write_text("y'' + (y')^2 = 0\n")
    code, doc, _ = run_json("certify", "--file", str(path))
    assert code == 0 and doc["case"] == "trivial"
    code, _, err = run("certify", "y'' = 0", "--file", str(path))
    assert code == 2 and "not both" in err
    code, _, err = run("certify")
    assert code == 2 and "no equation given" in err


def test_point_option():
    # the default expansion point for y'' + y'/x = 0 must dodge x = 0,
    # and forcing the singular point is an input error
    assert run("certify", "y'' + y'/x = 0")[0] == 0
    code, _, err = run("certify", "y'' + y'/x = 0", "--point", "0,0")
    assert code == 2 and "singular expansion point" in err
    assert run("certify", "y'' = 0", "--point", "nope")[0] == 2


def test_max_order_floor():
    code, _, err = run("certify", "y'' = 0", "--max-order", "2")
    assert code == 2 and "below required" in err
    assert run("certify", "y'' = 0", "--max-order", "5")[0] == 0


def test_dump_flags_and_timings():
    code, doc, _ = run_json("certify", "y'' = 0", "--dump-detsys",
                            "--dump-involutive", "--timings")
    assert code == 0
    assert len(doc["determining_system"]) == 4
    inv = doc["involutive"]
    assert set(inv) == {"ranking", "equations", "leads", "parametric",
                        "dimension"}
    assert inv["dimension"] == 8
    assert len(inv["parametric"]) == 8
    assert set(doc["timings"]) >= {"parse", "determining", "completion",
                                   "series", "structure", "certify", "total"}
    assert all(isinstance(v, float) for v in doc["timings"].values())
