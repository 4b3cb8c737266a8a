"""Tests for reports, suites and the command-line entry point."""

import json

import pytest

from fihom.cli import main
from fihom.errors import InputError
from fihom.reports import ExitStatus, Report
from fihom.suites import SuiteOptions, run_suite

MODULE_YAML = """\
name: e1-plus-e2
ring: Z
truncation: 4
fb_generators:
  - {degree: 1, preset: trivial}
elements:
  - degree: 2
    terms:
      - {subset: [1]}
      - {subset: [2]}
"""


def _run(capsys, *argv):
    status = main(list(argv))
    return status, json.loads(capsys.readouterr().out)


class TestReport:
    """Tests for report status and output."""

    def test_status_precedence(self):
        """Test that input errors beat failures, which beat open checks."""
        report = Report(command="homology")
        report.escalate(ExitStatus.INCONCLUSIVE)
        report.escalate(ExitStatus.FAILED)
        assert report.status is ExitStatus.FAILED

        report.escalate(ExitStatus.INCONCLUSIVE)
        assert report.status is ExitStatus.FAILED

        report.escalate(ExitStatus.INPUT_ERROR)
        assert report.status is ExitStatus.INPUT_ERROR

    def test_record(self):
        """Test that None is a caveat and False is an error."""
        report = Report(command="degrees")
        report.record(True, "fine")
        assert report.status is ExitStatus.OK

        report.record(None, "open")
        assert report.status is ExitStatus.INCONCLUSIVE
        assert report.caveats == ["left open by the truncation: open"]

        report.record(False, "broken")
        assert report.status is ExitStatus.FAILED
        assert report.errors == ["check failed: broken"]

    def test_tsv_layout(self):
        """Test the TSV header and a row table."""
        report = Report(command="catalan")
        report.add_table("sigma", {"rows": [{"subset": "12", "descendants": 4}]})
        lines = report.to_tsv().splitlines()

        assert lines[0] == "# schema_version\t1"
        assert lines[1:3] == ["# command\tcatalan", "# status\t0"]
        assert lines[3:] == ["# sigma", "subset\tdescendants", "12\t4"]

    def test_json_is_sorted(self):
        """Test that JSON output is deterministic."""
        report = Report(command="bounds", tables={"b": 1, "a": 2})

        assert report.to_json() == Report(command="bounds", tables={"a": 2, "b": 1}).to_json()


class TestSuites:
    """Tests for the verify-props suites."""

    def test_catalan_suite(self):
        """Test that the Catalan suite passes."""
        (result,) = run_suite("catalan", SuiteOptions())

        assert result.ok
        assert result.checked == result.passed
        assert result.data["counts"][:4] == [1, 2, 5, 14]

    def test_sharpness_suite(self):
        """Test that W vanishes below k and from k + d on, and nowhere in between."""
        (result,) = run_suite("sharpness", SuiteOptions())

        assert result.violations == []
        assert result.checked == result.passed

    def test_unknown_suite(self):
        """Test that an unknown suite is an input error."""
        with pytest.raises(InputError) as exc_info:
            run_suite("nonsense", SuiteOptions())

        assert exc_info.value.field == "suite"


class TestCommands:
    """Tests for fihom commands end to end."""

    def test_bounds(self, capsys):
        """Test that bounds --d 1 --kmax 4 gives thresholds 11, 22, 44."""
        status, report = _run(capsys, "bounds", "--d", "1", "--kmax", "4")

        assert status == 0
        assert [row["threshold"] for row in report["tables"]["bounds"]["rows"]] == [11, 22, 44]
        assert report["tables"]["claim"]["applicable"] is True

    def test_catalan(self, capsys):
        """Test the Sigma(2, 4) table."""
        status, report = _run(capsys, "catalan", "--a", "2", "--b", "4")

        assert status == 0
        sigma = report["tables"]["sigma"]
        assert sigma["size"] == 9
        assert sigma["rows"][0]["subset"] == "1234"

    def test_catalan_a_above_b(self, capsys):
        """Test that a > b exits with an input error."""
        status, report = _run(capsys, "catalan", "--a", "3", "--b", "2")

        assert status == 2
        assert report["errors"]

    def test_homology_of_sharpness(self, capsys):
        """Test homology of the sharpness module over Q."""
        status, report = _run(capsys, "homology", "--preset", "sharpness:1,2", "--ring", "Q", "--trunc", "5", "--pmax", "1")

        assert status == 0
        labels = {row["label"] for row in report["tables"]["degrees"]["rows"]}
        assert {"H0", "H1"} <= labels
        assert report["arguments"]["module"]["ring"] == "Q"

    def test_colimit_of_sharpness(self, capsys):
        """Test that the minimal colimit cap is 2."""
        status, report = _run(capsys, "colimit", "--preset", "sharpness:1,2", "--ring", "Q", "--trunc", "5")

        assert status == 0
        assert report["tables"]["colimit"]["minimal"] == 2
        assert report["tables"]["witness"]["n_cap"] == 1

    def test_missing_module(self, capsys):
        """Test that a module command without a module is an input error."""
        status, report = _run(capsys, "degrees")

        assert status == 2
        assert report["status"] == 2

    def test_standalone_rejects_module(self, capsys):
        """Test that catalan does not take a preset."""
        status, _ = _run(capsys, "catalan", "--preset", "zero")

        assert status == 2

    def test_unknown_preset(self, capsys):
        """Test that an unknown preset is an input error."""
        status, report = _run(capsys, "degrees", "--preset", "bogus")

        assert status == 2
        assert report["errors"][0].startswith("preset:")

    def test_validate_file(self, capsys, tmp_path):
        """Test validate on a YAML description."""
        path = tmp_path / "module.yaml"
        path.write_text(MODULE_YAML)
        status, report = _run(capsys, "validate", "--input", str(path))

        assert status == 0
        assert report["tables"]["ranks"]["free"] == [0, 1, 2, 3, 4]
        assert report["tables"]["ranks"]["span"] == [0, 0, 1, 3, 4]

    def test_validate_bad_file(self, capsys, tmp_path):
        """Test that a malformed description exits with 2."""
        path = tmp_path / "module.yaml"
        path.write_text(MODULE_YAML.replace("[1]", "[1, 1]"))
        status, report = _run(capsys, "validate", "--input", str(path))

        assert status == 2
        assert "elements.0.terms.0.subset" in report["errors"][0]

    def test_ring_override(self, capsys, tmp_path):
        """Test that --ring replaces the ring of a file."""
        path = tmp_path / "module.yaml"
        path.write_text(MODULE_YAML)
        _, report = _run(capsys, "validate", "--input", str(path), "--ring", "Q")

        assert report["tables"]["spec"]["ring"] == "Q"

    def test_verify_props_catalan(self, capsys):
        """Test one suite through the CLI."""
        status, report = _run(capsys, "verify-props", "--suite", "catalan")

        assert status == 0
        assert report["tables"]["suite:catalan"]["violations"] == []

    @pytest.mark.parametrize("suite", ["sharpness", "stable-range", "resolution", "normal-forms"])
    def test_verify_props_fixed_cases(self, capsys, suite):
        """Test that suites on fixed cases pass with status 0."""
        status, report = _run(capsys, "verify-props", "--suite", suite)
        table = report["tables"][f"suite:{suite}"]

        assert table["violations"] == []
        assert table["inconclusive"] == 0
        assert status == ExitStatus.OK

    @pytest.mark.parametrize("suite", ["regularity", "saturation", "saturation-prime", "colimit", "derivative"])
    def test_verify_props_corpus(self, capsys, suite):
        """Test that a small seeded corpus runs without violations."""
        status, report = _run(
            capsys, "verify-props", "--suite", suite, "--corpus-size", "3", "--seed", "0", "--trunc", "5"
        )
        table = report["tables"][f"suite:{suite}"]

        assert table["violations"] == []
        assert table["passed"] + table["inconclusive"] == table["checked"]
        assert status in (ExitStatus.OK, ExitStatus.INCONCLUSIVE)
        assert status == (ExitStatus.INCONCLUSIVE if table["inconclusive"] else ExitStatus.OK)

    def test_tsv_output(self, capsys):
        """Test that --tsv writes the TSV layout."""
        status = main(["catalan", "--a", "1", "--b", "2", "--tsv"])
        out = capsys.readouterr().out

        assert status == 0
        assert out.startswith("# schema_version\t1\n# command\tcatalan\n")

    def test_unknown_command(self):
        """Test that argparse rejects unknown commands."""
        with pytest.raises(SystemExit):
            main(["frobnicate"])
