"""Tests for CLI commands."""

import csv
import json
import random
from pathlib import Path

import pytest
from click.testing import CliRunner

from rczcp import __version__
from rczcp.cli import main
from rczcp.construction import admissible_permutations, ordered_partitions
from tests.test_helpers import (
    EXAMPLE1_FP,
    EXAMPLE1_GP,
    create_job_file,
    create_pair_file,
    example1_job,
)

# fmt: off
EXAMPLE1_FLAGS = [
    "--n", "5",
    "--nu", "1",
    "--pi", "1,3,2",
    "--k1", "2",
    "--k2", "3",
    "--r1", "1,4",
    "--r2", "2,3,5",
    "-c", "4,2,3,0,5",
]
# fmt: on


class TestCLIBasics:
    """Test suite for basic CLI functionality."""

    def test_main_group_help(self, cli_runner: CliRunner) -> None:
        """Test main command group shows help."""
        result = cli_runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        assert "root cross Z-complementary pairs" in result.output
        for command in ("construct", "verify", "profile", "census", "table", "search"):
            assert command in result.output

    def test_version_option(self, cli_runner: CliRunner) -> None:
        """Test --version flag displays version."""
        result = cli_runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output


class TestConstructCommand:
    """Test suite for construct command."""

    def test_construct_help(self, cli_runner: CliRunner) -> None:
        """Test construct command help."""
        result = cli_runner.invoke(main, ["construct", "--help"])
        assert result.exit_code == 0
        assert "--config" in result.output
        assert "--coefficients" in result.output

    def test_construct_example1(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test the first example is written with its summary line."""
        output = tmp_path / "pair.json"
        result = cli_runner.invoke(main, ["construct", *EXAMPLE1_FLAGS, "-o", str(output)])

        assert result.exit_code == 0
        assert "(20, 5)-RCZCP over q=6" in result.output
        data = json.loads(output.read_text())
        assert data["fP"] == EXAMPLE1_FP
        assert data["gP"] == EXAMPLE1_GP
        assert data["Z_claimed"] == 5

    def test_construct_csv(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test --csv writes fP and gP rows."""
        csv_path = tmp_path / "pair.csv"
        result = cli_runner.invoke(
            main,
            ["construct", *EXAMPLE1_FLAGS, "-o", str(tmp_path / "p.json"), "--csv", str(csv_path)],
        )

        assert result.exit_code == 0
        with open(csv_path, newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["fP", *map(str, EXAMPLE1_FP)]
        assert rows[1][0] == "gP"

    def test_construct_missing_option(self, cli_runner: CliRunner) -> None:
        """Test a missing parameter is a usage error."""
        flags = EXAMPLE1_FLAGS[: EXAMPLE1_FLAGS.index("--r1")]
        result = cli_runner.invoke(main, ["construct", *flags])
        assert result.exit_code == 2
        assert "Missing option(s): --r1, --r2" in result.output

    def test_construct_invalid_parameters(self, cli_runner: CliRunner) -> None:
        """Test validation failures exit 2 and list the violation."""
        flags = list(EXAMPLE1_FLAGS)
        flags[flags.index("--nu") + 1] = "3"
        result = cli_runner.invoke(main, ["construct", *flags])
        assert result.exit_code == 2
        assert "nu must satisfy" in result.output

    def test_construct_bad_list(self, cli_runner: CliRunner) -> None:
        """Test list options must be comma-separated integers."""
        flags = list(EXAMPLE1_FLAGS)
        flags[flags.index("--pi") + 1] = "1,x"
        result = cli_runner.invoke(main, ["construct", *flags])
        assert result.exit_code == 2
        assert "comma-separated integers" in result.output

    def test_construct_from_config(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test the only job in a file is auto-detected."""
        config_file = create_job_file(tmp_path / "jobs.yaml", {"example1": example1_job()})
        output = tmp_path / "pair.json"
        result = cli_runner.invoke(
            main, ["construct", "--config", str(config_file), "-o", str(output)]
        )

        assert result.exit_code == 0
        assert "Auto-detected job: example1" in result.output
        assert json.loads(output.read_text())["fP"] == EXAMPLE1_FP

    def test_construct_unknown_job(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test naming a job that is not in the file."""
        config_file = create_job_file(tmp_path / "jobs.yaml", {"example1": example1_job()})
        result = cli_runner.invoke(
            main, ["construct", "--config", str(config_file), "--job", "missing"]
        )
        assert result.exit_code == 2
        assert "Job 'missing' not found" in result.output

    def test_construct_config_with_flags(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test --config cannot be mixed with parameter flags."""
        config_file = create_job_file(tmp_path / "jobs.yaml", {"example1": example1_job()})
        result = cli_runner.invoke(
            main, ["construct", "--config", str(config_file), "--n", "5"]
        )
        assert result.exit_code == 2
        assert "cannot be combined" in result.output

    def test_construct_numeric_zero_test(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test the self-check can run with the numeric zero test."""
        output = tmp_path / "pair.json"
        flags = ["--zero-test", "numeric", "--tolerance", "1e-9", "-o", str(output)]
        result = cli_runner.invoke(main, ["construct", *EXAMPLE1_FLAGS, *flags])
        assert result.exit_code == 0
        assert json.loads(output.read_text())["fP"] == EXAMPLE1_FP

    def test_construct_bad_tolerance(self, cli_runner: CliRunner) -> None:
        """Test a non-positive tolerance is a usage error."""
        result = cli_runner.invoke(main, ["construct", *EXAMPLE1_FLAGS, "--tolerance", "0"])
        assert result.exit_code == 2
        assert "tolerance must be positive" in result.output

    def test_construct_max_n_setting(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test max_n from the settings section bounds the job's n."""
        config_file = create_job_file(
            tmp_path / "jobs.yaml", {"example1": example1_job()}, settings={"max_n": 4}
        )
        result = cli_runner.invoke(main, ["construct", "--config", str(config_file)])
        assert result.exit_code == 2
        assert "n must be at most 4" in result.output

    def test_save_config(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test --save-config stores a job that rebuilds the same pair."""
        jobs = tmp_path / "jobs.yaml"
        result = cli_runner.invoke(
            main,
            ["construct", *EXAMPLE1_FLAGS, "--save-config", str(jobs), "--job", "mine"],
        )
        assert result.exit_code == 0
        assert "Saved job 'mine'" in result.output

        output = tmp_path / "pair.json"
        result = cli_runner.invoke(
            main, ["construct", "--config", str(jobs), "--job", "mine", "-o", str(output)]
        )
        assert result.exit_code == 0
        assert json.loads(output.read_text())["gP"] == EXAMPLE1_GP

    def test_save_config_existing_job(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test saving over an existing job needs --force."""
        jobs = create_job_file(tmp_path / "jobs.yaml", {"mine": example1_job()})
        flags = ["construct", *EXAMPLE1_FLAGS, "--save-config", str(jobs), "--job", "mine"]

        result = cli_runner.invoke(main, flags)
        assert result.exit_code == 2
        assert "already exists" in result.output

        result = cli_runner.invoke(main, [*flags, "--force"])
        assert result.exit_code == 0
        assert "Replaced job 'mine'" in result.output

    def test_save_config_needs_job(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test --save-config without --job is a usage error."""
        result = cli_runner.invoke(
            main, ["construct", *EXAMPLE1_FLAGS, "--save-config", str(tmp_path / "jobs.yaml")]
        )
        assert result.exit_code == 2
        assert "--save-config needs --job" in result.output

    def test_job_needs_a_file(self, cli_runner: CliRunner) -> None:
        """Test --job alone is a usage error."""
        result = cli_runner.invoke(main, ["construct", *EXAMPLE1_FLAGS, "--job", "mine"])
        assert result.exit_code == 2
        assert "--job needs --config or --save-config" in result.output


class TestVerifyCommand:
    """Test suite for verify command."""

    def test_verify_pass(
        self, cli_runner: CliRunner, example1_pair_file: Path, tmp_path: Path
    ) -> None:
        """Test the first example passes at Z = 5."""
        output = tmp_path / "verdict.json"
        result = cli_runner.invoke(
            main, ["verify", str(example1_pair_file), "--z", "5", "-o", str(output)]
        )

        assert result.exit_code == 0
        assert "Pass at Z=5" in result.output
        verdict = json.loads(output.read_text())
        assert verdict["passed"] is True
        assert verdict["Z_achieved"] == 5
        assert verdict["ratio"] == "1/2"

    def test_verify_fail(
        self, cli_runner: CliRunner, example1_pair_file: Path, tmp_path: Path
    ) -> None:
        """Test the first example fails at Z = 6 with exit code 1."""
        output = tmp_path / "verdict.json"
        result = cli_runner.invoke(
            main, ["verify", str(example1_pair_file), "--z", "6", "-o", str(output)]
        )

        assert result.exit_code == 1
        assert "Fail" in result.output
        assert json.loads(output.read_text())["passed"] is False

    def test_verify_largest_zone(
        self, cli_runner: CliRunner, example1_pair_file: Path, tmp_path: Path
    ) -> None:
        """Test omitting --z reports the largest zone."""
        output = tmp_path / "verdict.json"
        result = cli_runner.invoke(main, ["verify", str(example1_pair_file), "-o", str(output)])
        assert result.exit_code == 0
        assert json.loads(output.read_text())["Z_achieved"] == 5

    def test_verify_z_out_of_range(self, cli_runner: CliRunner, example1_pair_file: Path) -> None:
        """Test Z above N/2 is a usage error."""
        result = cli_runner.invoke(main, ["verify", str(example1_pair_file), "--z", "11"])
        assert result.exit_code == 2
        assert "out of range" in result.output

    def test_verify_single_sequence(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test a file holding one sequence is rejected."""
        pair_file = tmp_path / "single.json"
        pair_file.write_text(json.dumps({"q": 2, "x": [0, 1, 1, 0]}))
        result = cli_runner.invoke(main, ["verify", str(pair_file)])
        assert result.exit_code == 2
        assert "must hold a pair" in result.output

    def test_verify_golay_pair(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test a plain x/y pair file is accepted."""
        pair_file = create_pair_file(tmp_path / "golay.json", 2, [0, 0], [0, 1])
        output = tmp_path / "verdict.json"
        result = cli_runner.invoke(main, ["verify", str(pair_file), "-o", str(output)])
        assert result.exit_code == 0
        assert json.loads(output.read_text())["perfect"] is True

    def test_verify_null_exponent(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test a non-integer exponent is a usage error, not a crash."""
        pair_file = tmp_path / "bad.json"
        pair_file.write_text(json.dumps({"q": 2, "x": [0, None], "y": [0, 1]}))
        result = cli_runner.invoke(main, ["verify", str(pair_file)])
        assert result.exit_code == 2
        assert "'x' must be a list of integer exponents" in result.output

    def test_verify_non_integer_q(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test q must be an integer."""
        pair_file = create_pair_file(tmp_path / "bad.json", 2, [0, 0], [0, 1])
        pair_file.write_text(pair_file.read_text().replace('"q": 2', '"q": "2"'))
        result = cli_runner.invoke(main, ["verify", str(pair_file)])
        assert result.exit_code == 2
        assert "'q' must be an integer" in result.output

    def test_verify_tampered_pair(
        self, cli_runner: CliRunner, example1_pair_file: Path, tmp_path: Path
    ) -> None:
        """Test a construct output whose fP was edited is rejected."""
        data = json.loads(example1_pair_file.read_text())
        data["fP"][0] = (data["fP"][0] + 1) % 6
        tampered = tmp_path / "tampered.json"
        tampered.write_text(json.dumps(data))
        result = cli_runner.invoke(main, ["verify", str(tampered), "--z", "5"])
        assert result.exit_code == 2
        assert "'fP' does not match" in result.output

    def test_verify_max_n_setting(
        self, cli_runner: CliRunner, example1_pair_file: Path, tmp_path: Path
    ) -> None:
        """Test max_n from a settings file applies when the pair is rebuilt."""
        settings = tmp_path / "settings.yaml"
        settings.write_text("settings:\n  max_n: 4\n", encoding="utf-8")
        result = cli_runner.invoke(
            main, ["verify", str(example1_pair_file), "--config", str(settings)]
        )
        assert result.exit_code == 2
        assert "n must be at most 4" in result.output

    def test_verify_numeric_from_settings(
        self, cli_runner: CliRunner, example1_pair_file: Path, tmp_path: Path
    ) -> None:
        """Test zero_test and tolerance come from the settings file."""
        settings = tmp_path / "settings.yaml"
        settings.write_text(
            "settings:\n  zero_test: numeric\n  tolerance: 1.0e-9\n", encoding="utf-8"
        )
        output = tmp_path / "verdict.json"
        result = cli_runner.invoke(
            main,
            ["verify", str(example1_pair_file), "--config", str(settings), "-o", str(output)],
        )
        assert result.exit_code == 0
        assert json.loads(output.read_text())["Z_achieved"] == 5


class TestProfileCommand:
    """Test suite for profile command."""

    def test_profile_csv(
        self, cli_runner: CliRunner, example1_pair_file: Path, tmp_path: Path
    ) -> None:
        """Test the profile has one row per shift."""
        output = tmp_path / "profile.csv"
        result = cli_runner.invoke(main, ["profile", str(example1_pair_file), "-o", str(output)])

        assert result.exit_code == 0
        lines = output.read_text().splitlines()
        assert lines[0] == "tau,aacf_sum_abs,accf_sym_sum_abs"
        assert len(lines) == 21
        assert lines[1].startswith("0,40,")

    def test_profile_exact_squares(
        self, cli_runner: CliRunner, example1_pair_file: Path, tmp_path: Path
    ) -> None:
        """Test exact squared magnitudes are listed, including 112."""
        result = cli_runner.invoke(
            main,
            ["profile", str(example1_pair_file), "-o", str(tmp_path / "p.csv"), "--exact-squares"],
        )
        assert result.exit_code == 0
        assert "112" in result.output


class TestCensusCommands:
    """Test suite for census and table commands."""

    def test_census_report(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test a capped n=5 census reports the three formula counts."""
        output = tmp_path / "report.json"
        result = cli_runner.invoke(
            main,
            ["census", "--n", "5", "--coefficient-cap", "4", "--seed", "1", "-o", str(output)],
        )

        assert result.exit_code == 0
        report = json.loads(output.read_text())
        assert report["formula_count_proposed"] == 2880
        assert report["formula_count_adhikary"] == 384
        assert report["formula_count_huang"] == 192
        assert report["sampled"] is True
        assert report["seed"] == 1
        assert report["all_verified"] is True

    def test_census_invalid_n(self, cli_runner: CliRunner) -> None:
        """Test n below 4 is a usage error."""
        result = cli_runner.invoke(main, ["census", "--n", "3"])
        assert result.exit_code == 2
        assert "at least 4" in result.output

    def test_census_settings_file(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test seed and coefficient cap come from the settings file."""
        settings = tmp_path / "settings.yaml"
        settings.write_text("settings:\n  seed: 7\n  coefficient_cap: 2\n", encoding="utf-8")
        output = tmp_path / "report.json"
        result = cli_runner.invoke(
            main, ["census", "--n", "4", "--config", str(settings), "-o", str(output)]
        )

        assert result.exit_code == 0
        report = json.loads(output.read_text())
        assert report["seed"] == 7
        assert report["coefficient_vectors"] == 2
        assert report["sampled"] is True

    def test_census_max_n_setting(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test n above max_n is refused before any work starts."""
        settings = tmp_path / "settings.yaml"
        settings.write_text("settings:\n  max_n: 4\n", encoding="utf-8")
        result = cli_runner.invoke(main, ["census", "--n", "5", "--config", str(settings)])
        assert result.exit_code == 2
        assert "n must be at most 4, got 5" in result.output

    def test_table_csv(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test the comparison table as CSV."""
        output = tmp_path / "table.csv"
        result = cli_runner.invoke(
            main, ["table", "--n", "4", "--format", "csv", "-o", str(output)]
        )

        assert result.exit_code == 0
        with open(output, newline="") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 6
        assert {row["ratio"] for row in rows} == {"2/5", "1/2"}

    def test_table_text(self, cli_runner: CliRunner) -> None:
        """Test the plain-text rendering goes to stdout."""
        result = cli_runner.invoke(main, ["table", "--n", "4", "--format", "text"])
        assert result.exit_code == 0
        assert "S(n;2)" in result.output
        assert "2/5" in result.output


class TestSearchCommand:
    """Test suite for search command."""

    def test_search_jsonl(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test the binary length-4 search writes 16 JSON lines."""
        output = tmp_path / "hits.jsonl"
        result = cli_runner.invoke(
            main, ["search", "--q", "2", "--length", "4", "--z", "2", "-o", str(output)]
        )

        assert result.exit_code == 0
        assert "Found 16 pair(s)" in result.output
        lines = output.read_text().splitlines()
        assert len(lines) == 16
        assert json.loads(lines[0])["perfect"] is True

    def test_search_too_large(self, cli_runner: CliRunner) -> None:
        """Test searches above the cap are refused."""
        result = cli_runner.invoke(main, ["search", "--q", "4", "--length", "14", "--z", "2"])
        assert result.exit_code == 2
        assert "exceeds" in result.output

    def test_search_workers_from_settings(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        """Test workers from the settings file give the same hits."""
        settings = tmp_path / "settings.yaml"
        settings.write_text("settings:\n  workers: 2\n", encoding="utf-8")
        output = tmp_path / "hits.jsonl"
        args = ["search", "--q", "2", "--length", "4", "--z", "2"]
        result = cli_runner.invoke(main, [*args, "--config", str(settings), "-o", str(output)])
        assert result.exit_code == 0
        assert len(output.read_text().splitlines()) == 16


class TestConstructVerifyRoundTrip:
    """Test suite feeding construct output straight into verify."""

    @pytest.mark.parametrize("n,nu", [(4, 0), (4, 1), (5, 0), (5, 1), (5, 2)])
    def test_round_trip(self, cli_runner: CliRunner, tmp_path: Path, n: int, nu: int) -> None:
        """Test sampled pairs pass verify at their claimed Z."""
        rng = random.Random(100 * n + nu)
        perms = list(admissible_permutations(n, nu))
        for k1, k2 in [(1, 1), (2, 3), (4, 1)]:
            partitions = list(ordered_partitions(n, k1, k2))
            for partition in rng.sample(partitions, 3):
                pi = rng.choice(perms)
                c = [rng.randrange(partition.q) for _ in range(n)]
                output = tmp_path / f"pair_{k1}_{k2}.json"
                # fmt: off
                flags = [
                    "construct",
                    "--n", str(n),
                    "--nu", str(nu),
                    "--pi", ",".join(map(str, pi)),
                    "--k1", str(k1),
                    "--k2", str(k2),
                    "--r1", ",".join(map(str, sorted(partition.r1))),
                    "--r2", ",".join(map(str, sorted(partition.r2))),
                    "-c", ",".join(map(str, c)),
                    "-o", str(output),
                ]
                # fmt: on
                result = cli_runner.invoke(main, flags)
                assert result.exit_code == 0, result.output
                Z = json.loads(output.read_text())["Z_claimed"]

                verdict_file = tmp_path / "verdict.json"
                result = cli_runner.invoke(
                    main, ["verify", str(output), "--z", str(Z), "-o", str(verdict_file)]
                )
                assert result.exit_code == 0, result.output
                assert json.loads(verdict_file.read_text())["Z_achieved"] >= Z
