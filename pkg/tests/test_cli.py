from fractions import Fraction

import pytest

from curveint.cli import (EXIT_BUDGET, EXIT_INPUT, EXIT_OK,
                          EXIT_VERIFICATION, Job, main, parse_curve,
                          parse_field, parse_point, parse_poly,
                          render_report, run_job)
from curveint.corpus import corpus_manifest
from curveint.errors import DegreeMixError, InvalidInputError, ParseError
from curveint.fields import QQ, PrimeField
from curveint.poly import MultiPoly


# ------------------------------------------------------------------ parsing

def test_parse_cusp_affine():
    C = parse_curve("x^2 - y^3", QQ)
    assert C.degree == 3
    assert str(C.form) == "X^2*Z - Y^3"


def test_parse_homogeneous_cusp():
    C = parse_curve("X^2*Z - Y^3", QQ)
    assert C.degree == 3
    assert str(C.form) == "X^2*Z - Y^3"


def test_parse_degree_mix_error():
    with pytest.raises(DegreeMixError):
        parse_curve("x^2 - y^3 + Z", QQ)


def test_parse_inhomogeneous_declared_homogeneous():
    with pytest.raises(DegreeMixError):
        parse_curve("X^2 - Y^3", QQ)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_poly("x^2 + $", QQ, ("x", "y"))
    assert info.value.position == 6


def test_parse_rational_literals_and_parens():
    f = parse_poly("1/2*x^2 - (y - 3)*y", QQ, ("x", "y"))
    x = MultiPoly.var(QQ, ("x", "y"), "x")
    y = MultiPoly.var(QQ, ("x", "y"), "y")
    assert f == x * x * QQ.of(Fraction(1, 2)) - (y - 3) * y


def test_parse_roundtrip_canonical_print():
    for text in ["x^2 - y^3", "x*y - 1", "3*x^2*y - 1/2*y + 4"]:
        f = parse_poly(text, QQ, ("x", "y"))
        again = parse_poly(str(f), QQ, ("x", "y"))
        assert f == again


def test_parse_field_specs():
    assert parse_field("Q")[0] == QQ
    F, warning = parse_field("F101")
    assert F == PrimeField(101) and warning is None
    F2, warning2 = parse_field("F5")
    assert F2 == PrimeField(5) and warning2  # accepted with a warning
    with pytest.raises(InvalidInputError):
        parse_field("R")


def test_parse_point():
    assert parse_point("0,0", QQ) == (0, 0)
    assert parse_point("(1/2, -3)", QQ) == (Fraction(1, 2), Fraction(-3))
    with pytest.raises(InvalidInputError):
        parse_point("1", QQ)


# ------------------------------------------------------------------- jobs

def test_job_roundtrip():
    job = Job(command="mult", curves=("x^2 - y^3", "y"), field="Q",
              point="0,0", seed=7, precision=None, fmt="json")
    assert Job.from_dict(job.to_dict()) == job


def test_manifest_entries_reserialize_identically():
    for entry in corpus_manifest():
        job = Job.from_dict(entry["job"])
        assert Job.from_dict(job.to_dict()) == job


def test_manifest_has_at_least_25_instances():
    manifest = corpus_manifest()
    assert len(manifest) >= 25
    names = [e["name"] for e in manifest]
    assert len(set(names)) == len(names)
    assert "tangent-conics" in names
    fields = {e["job"]["field"] for e in manifest}
    assert {"Q", "F7", "F101", "F32003"} <= fields
    assert not any(f in ("F2", "F3", "F5") for f in fields)


# --------------------------------------------------------------- commands

def test_mult_command_exit_zero():
    job = Job(command="mult", curves=("x^2 - y^3", "y"), point="0,0")
    report, code = run_job(job)
    assert code == EXIT_OK
    entry = report["results"][0]
    assert entry["mult_length"] == entry["mult_resultant"] == \
        entry["mult_deformation"] == 2


def test_bezout_command_cusp():
    job = Job(command="bezout", curves=("X^2*Z - Y^3", "Y"))
    report, code = run_job(job)
    assert code == EXIT_OK
    assert report["total"] == 3 and report["expected_total"] == 3


def test_shared_component_is_input_error():
    job = Job(command="bezout", curves=("X*Y", "X*Z"))
    report, code = run_job(job)
    assert code == EXIT_INPUT
    assert report["status"] == "input-error"


def test_syntax_error_is_input_error():
    job = Job(command="mult", curves=("x^^2", "y"), point="0,0")
    report, code = run_job(job)
    assert code == EXIT_INPUT


def test_weierstrass_command():
    job = Job(command="weierstrass", curves=("x^2 + x^3 + y",), precision=6)
    report, code = run_job(job)
    assert code == EXIT_OK
    assert report["results"][0]["degree"] == 2


def test_hensel_command():
    job = Job(command="hensel", curves=("x^2 - (1 + t)",), a0="1",
              precision=3)
    report, code = run_job(job)
    assert code == EXIT_OK
    assert report["results"][0]["root"] == "1 + 1/2*t - 1/8*t^2 + O(t^3)"


def test_hensel_not_simple_root_is_budgetless_input():
    job = Job(command="hensel", curves=("x^2 - t",), a0="0", precision=4)
    report, code = run_job(job)
    assert code in (EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFICATION)


def test_json_output_byte_identical():
    job = Job(command="bezout", curves=("x^2 - y", "x^2 - 2*y"), seed=5,
              fmt="json")
    r1, c1 = run_job(job)
    r2, c2 = run_job(job)
    assert c1 == c2 == EXIT_OK
    assert render_report(r1, "json") == render_report(r2, "json")


def test_main_text_output(capsys):
    code = main(["mult", "x^2-y^3", "y", "--point", "0,0"])
    out = capsys.readouterr().out
    assert code == 0
    assert "mult_length=2" in out


def test_main_exit_code_for_bad_input(capsys):
    code = main(["mult", "x^2 - y^3 + Z", "y"])
    assert code == EXIT_INPUT


def test_corpus_command_passes(capsys):
    code = main(["corpus"])
    out = capsys.readouterr().out
    assert code == 0
    assert "status: ok" in out
