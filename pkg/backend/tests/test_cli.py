import io
import re

import pytest

from main import EXIT_FAILURES, EXIT_OK, EXIT_USAGE, main

PARTITIONS = ["0 1", "1 1", "2 2", "3 3", "4 5", "5 7", "6 11"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue().splitlines()


class TestCoeffs:
    def test_partition_generating_function(self):
        assert run("coeffs", "inv(poch(q, inf; q))", "--order", "6") == (EXIT_OK, PARTITIONS)

    def test_zero_series_prints_every_exponent(self):
        code, lines = run("coeffs", "j(q^1; q^1)", "--order", "10")
        assert code == EXIT_OK
        assert lines == [f"{e} 0" for e in range(11)]

    def test_rational_coefficients(self):
        assert run("coeffs", "1/2*q", "--order", "2") == (EXIT_OK, ["0 0", "1 1/2", "2 0"])

    def test_negative_exponents_lead(self):
        assert run("coeffs", "q^(-2) + 1", "--order", "1") == (EXIT_OK, ["-2 1", "-1 0", "0 1", "1 0"])

    def test_parameter_binding(self):
        assert run("coeffs", "n*q", "--param", "n=3", "--order", "2") == (EXIT_OK, ["0 0", "1 3", "2 0"])

    @pytest.mark.parametrize("argv", [
        ["coeffs", "q^"],
        ["coeffs", "n*q"],
        ["coeffs", "q", "--param", "n=x"],
        ["coeffs", "q", "--order", "-1"],
        ["frobnicate"],
    ])
    def test_usage_errors(self, argv):
        code, lines = run(*argv)
        assert code == EXIT_USAGE
        assert lines == []


class TestString:
    def test_level_one(self):
        assert run("string", "--p", "1", "--pp", "3", "--m", "0", "--l", "0", "--order", "6") == (EXIT_OK, PARTITIONS)

    def test_inadmissible(self):
        assert run("string", "--p", "2", "--pp", "4", "--m", "0", "--l", "0")[0] == EXIT_USAGE


class TestCatalog:
    def test_list(self):
        code, lines = run("catalog", "list", "theta.flip")
        assert code == EXIT_OK
        assert len(lines) == 1
        assert lines[0].startswith("theta.flip\t")

    def test_show(self):
        code, lines = run("catalog", "show", "theta.flip")
        assert code == EXIT_OK
        assert lines[0] == "identity theta.flip"

    def test_show_unknown(self):
        assert run("catalog", "show", "no.such.identity")[0] == EXIT_USAGE

    def test_audit(self):
        code, lines = run("catalog", "audit")
        assert code == EXIT_OK
        assert "unmapped\tequation:JTPid" in lines
        assert all(line.startswith("unmapped\tequation:") or line.startswith("unmapped\teq:") for line in lines)


class TestVerify:
    def test_failing_file(self, tmp_path):
        path = tmp_path / "broken.qid"
        path.write_text("identity broken lhs = 1 + q rhs = 1\n")
        code, lines = run("verify", "--file", str(path), "--order", "5", "--quiet")
        assert code == EXIT_FAILURES
        assert lines[1].startswith("broken\t\t5\tfail\t1")
        assert re.fullmatch(r"# total=1 pass=0 fail=1 error=0 wall=\d+\.\d\ds", lines[-1])

    def test_suite_to_report_file(self, tmp_path):
        report = tmp_path / "reports" / "flip.tsv"
        code, lines = run("verify", "--suite", "theta.flip", "--order", "15", "--report", str(report), "--quiet")
        assert code == EXIT_OK
        assert lines == []
        text = report.read_text().splitlines()
        assert text[0].startswith("name\tparams\torder\tstatus")
        assert text[-1].startswith("# total=22 pass=22 fail=0 error=0 wall=")

    def test_no_match(self):
        assert run("verify", "--suite", "no.such.*", "--quiet")[0] == EXIT_USAGE

    def test_bad_jobs(self):
        assert run("verify", "--suite", "theta.flip", "--jobs", "0")[0] == EXIT_USAGE
