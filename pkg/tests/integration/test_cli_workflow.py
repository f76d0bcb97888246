"""End-to-end tests of the coset-qkd command line."""
import csv
import io
import json

import pytest
from click.testing import CliRunner

from coset_qkd.cli import cli
from coset_qkd.commands import qkd_cmd
from coset_qkd.config import get_workdir
from coset_qkd.qkd import montecarlo
from coset_qkd.qkd.session import run_session


def invoke(*args):
    return CliRunner().invoke(cli, ["--log-level", "ERROR", *args])


def rows(result):
    assert result.exit_code == 0, result.stderr
    return list(csv.DictReader(io.StringIO(result.stdout)))


class TestBoundsCommands:
    """Test suite for `coset-qkd bounds`."""

    def test_u1(self):
        """One CSV row with game, params, bound and flags."""
        (row,) = rows(invoke("bounds", "u1", "--primes", "2,3,5,7", "--epsilon", "0.0628"))
        assert row["game"] == "u1"
        assert float(row["bound"]) == pytest.approx(0.25 + 0.5 ** 0.5)
        assert row["flags"] == ""

    def test_complex(self):
        """2/n + 4(1+1/n)√(δε) at n = 8."""
        (row,) = rows(invoke("bounds", "complex", "--n", "8", "--delta", "0.0625", "--epsilon", "0.0625"))
        assert float(row["bound"]) == pytest.approx(0.53125)

    def test_rn(self):
        """Two modes with no tolerance win with probability at most 1/2."""
        (row,) = rows(invoke("bounds", "rn", "--n", "2", "--delta", "0", "--epsilon", "0"))
        assert float(row["bound"]) == pytest.approx(0.5)
        assert "closed_form" in row

    def test_rn_failure(self):
        """Large overlaps print a value above 1 with the trivial flag."""
        (row,) = rows(invoke("bounds", "rn-failure", "--n", "16", "--delta", "0.0625",
                             "--epsilon", "0.0625", "--gamma", "0.25"))
        assert row["game"] == "rn-failure"
        assert float(row["bound"]) > 1
        assert "trivial" in row["flags"]

    def test_so3(self):
        """The averaged sum never exceeds the closed form."""
        (row,) = rows(invoke("bounds", "so3", "--N", "4", "--epsilon", "0.01"))
        assert float(row["bound"]) == pytest.approx(0.8545, abs=1e-4)
        assert float(row["sum_bound"]) <= float(row["bound"]) + 1e-12

    def test_so3_precondition(self):
        """A tolerance outside the theorem exits 3 and names the constraint."""
        result = invoke("bounds", "so3", "--N", "4", "--epsilon", "0.8")
        assert result.exit_code == 3
        assert "[constraint: epsilon < 2 sin(pi/2N)]" in result.stderr
        assert result.stdout == ""

    def test_so3_overlap_needs_seed(self):
        """Sampling without a seed is a usage error."""
        result = invoke("bounds", "so3-overlap", "--theta", "0.5", "--epsilon", "0.1", "--trials", "10")
        assert result.exit_code == 2

    def test_so3_overlap_grid(self):
        """One row per (theta, epsilon) pair."""
        table = rows(invoke("bounds", "so3-overlap", "--theta", "0.5,1.0", "--epsilon", "0.1"))
        assert [float(r["theta"]) for r in table] == [0.5, 1.0]

    def test_gnuplot_format(self, tmp_path):
        """gnuplot-data output is commented and written to -o as well."""
        target = tmp_path / "complex.dat"
        result = invoke("bounds", "complex", "--n", "8", "--delta", "0.0625", "--epsilon", "0.0625",
                        "--format", "gnuplot-data", "-o", str(target))
        assert result.exit_code == 0
        assert result.stdout.startswith("# game params bound flags\n")
        assert target.read_text() == result.stdout


class TestGameCommands:
    """Test suite for `coset-qkd game`."""

    def test_build(self):
        """JSON description of the chosen subgroups."""
        result = invoke("game", "build", "--group", "d15", "--subgroup", "r^5;t")
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["status"] == "success"
        (H,) = data["result"]["subgroups"]
        assert H["order"] == 6
        assert H["cosets"] == 5
        assert sorted(H["irrep_dims"]) == [1, 1, 2]

    def test_check_sweep(self):
        """Coset bases are orthonormal and the overlap lemma holds."""
        result = invoke("game", "check", "--group", "z2^2", "--all", "--sweep")
        data = json.loads(result.stdout)["result"]
        assert data["max_gram_error"] < 1e-10
        assert data["overlap_checks"] > 0
        assert data["max_excess"] <= 1e-9

    def test_bound(self):
        """Two registers of z2^2 give (1 + √½)/2."""
        (row,) = rows(invoke("game", "bound", "--group", "z2^2", "--register", "0", "--register", "1"))
        assert float(row["bound"]) == pytest.approx((1 + 0.5 ** 0.5) / 2)

    def test_seesaw(self):
        """The see-saw value sits between the naive strategy and the bound."""
        (row,) = rows(invoke("game", "seesaw", "--group", "z2^2", "--register", "0", "--register", "1",
                             "--seed", "7", "--iters", "10", "--restarts", "1"))
        assert float(row["naive_value"]) - 1e-12 <= float(row["seesaw_value"]) <= float(row["finite_bound"]) + 1e-9

    def test_no_subgroups(self):
        """A family must be named."""
        result = invoke("game", "bound", "--group", "z4")
        assert result.exit_code == 2
        assert "Error:" in result.stderr

    def test_seed_required(self):
        """The see-saw search refuses to run unseeded."""
        assert invoke("game", "seesaw", "--group", "z4", "--all").exit_code == 2


class TestCodesCommands:
    """Test suite for `coset-qkd codes`."""

    def test_make(self, tmp_path):
        """Text form starts with the n k d header and round-trips through --file."""
        target = tmp_path / "hamming.txt"
        result = invoke("codes", "make", "hamming:7,4", "-o", str(target))
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "7 4 3"
        (row,) = rows(invoke("codes", "distance", "--file", str(target)))
        assert row["d"] == "3"

    def test_distance(self):
        """The length-5 repetition code has distance 5."""
        (row,) = rows(invoke("codes", "distance", "--spec", "repetition:5"))
        assert (row["n"], row["k"], row["d"]) == ("5", "1", "5")

    def test_decode(self):
        """A single flipped bit is corrected back to the zero codeword."""
        result = invoke("codes", "decode", "--spec", "hamming:7,4", "--word", "0000100")
        assert result.exit_code == 0
        assert result.stdout.strip() == "0000000"

    def test_decode_bad_bits(self):
        """Non-bit words are rejected by click."""
        assert invoke("codes", "decode", "--spec", "hamming:7,4", "--word", "0120").exit_code == 2

    def test_one_source(self):
        """Exactly one of --spec and --file."""
        assert invoke("codes", "distance").exit_code == 2

    def test_hashcheck(self):
        """Toeplitz hashing from 4 to 2 bits is exactly universal."""
        (row,) = rows(invoke("codes", "hashcheck", "--in-len", "4", "--out-len", "2"))
        assert row["max_collision"] == "1/4"
        assert row["ideal"] == "1/4"
        assert row["universal"] == "true"


class TestQkdCommands:
    """Test suite for `coset-qkd qkd`."""

    def test_simulate_summary(self):
        """A summary row with rates inside [0, 1] and their intervals."""
        (row,) = rows(invoke("qkd", "simulate", "--preset", "desk16", "--trials", "5", "--seed", "1"))
        assert row["channel"] == "identity"
        assert row["trials"] == "5"
        for key in ("abort_rate", "key_mismatch_rate"):
            assert 0.0 <= float(row[key]) <= 1.0
            assert float(row[f"{key.replace('_rate', '')}_ci_low"]) <= float(row[key])

    def test_simulate_deterministic(self):
        """Equal seeds print identical rows."""
        args = ("qkd", "simulate", "--preset", "desk16", "--trials", "3", "--seed", "11",
                "--channel", "agwn:x=0.3,y=0.01")
        assert invoke(*args).stdout == invoke(*args).stdout

    def test_simulate_flag_overrides_preset(self):
        """Flags take precedence over the preset."""
        result = invoke("qkd", "simulate", "--preset", "desk16", "--gamma", "0.75", "--seed", "1")
        assert result.exit_code == 2

    def test_transcript_and_replay(self, tmp_path):
        """A written transcript replays to the same records."""
        path = tmp_path / "session.jsonl"
        result = invoke("qkd", "simulate", "--preset", "desk16", "--seed", "5", "--transcript", str(path))
        assert result.exit_code == 0
        replay = invoke("qkd", "replay", str(path))
        assert replay.exit_code == 0
        data = json.loads(replay.stdout)
        assert data["status"] == "success"
        assert data["result"]["matches"]
        assert data["result"]["first_divergence"] is None

    def test_replay_divergence(self, tmp_path):
        """A truncated transcript is reported as diverged with exit code 1."""
        path = tmp_path / "session.jsonl"
        invoke("qkd", "simulate", "--preset", "desk16", "--seed", "5", "--transcript", str(path))
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n")
        result = invoke("qkd", "replay", str(path))
        assert result.exit_code == 1
        assert json.loads(result.stdout)["status"] == "diverged"

    def test_transcript_needs_single_trial(self, tmp_path):
        """--transcript with several trials is a usage error."""
        result = invoke("qkd", "simulate", "--preset", "desk16", "--seed", "5", "--trials", "2",
                        "--transcript", str(tmp_path / "x.jsonl"))
        assert result.exit_code == 2

    def test_transcript_runs_session_once(self, tmp_path, monkeypatch):
        """Writing a transcript reuses the one session for the summary row."""
        calls = []

        def counting(*args, **kwargs):
            calls.append(args[2])
            return run_session(*args, **kwargs)

        monkeypatch.setattr(qkd_cmd, "run_session", counting)
        monkeypatch.setattr(montecarlo, "run_session", counting)
        args = ("qkd", "simulate", "--preset", "desk16", "--seed", "5")
        with_transcript = invoke(*args, "--transcript", str(tmp_path / "session.jsonl"))
        assert len(calls) == 1
        assert with_transcript.stdout == invoke(*args).stdout
        assert len(calls) == 2

    def test_presets(self):
        """The listing names every bundled preset with its values."""
        result = invoke("qkd", "presets")
        assert result.exit_code == 0
        data = json.loads(result.stdout)["result"]
        assert sorted(data) == ["desk16", "desk64", "reference"]
        assert data["desk16"]["n"] == "16"

    def test_store(self):
        """--store files the transcript in the workdir manifest."""
        result = invoke("qkd", "simulate", "--preset", "desk16", "--seed", "8", "--store")
        assert result.exit_code == 0
        manifest = json.loads((get_workdir() / "transcripts" / "manifest.json").read_text())
        (tid,) = manifest
        assert tid.startswith("0001_seed8_")
        assert manifest[tid]["trial"] == 0

    def test_config_file(self, tmp_path):
        """A key=value file overrides the preset."""
        config = tmp_path / "params.env"
        config.write_text("# shorter key\nkey_len=2\n")
        (row,) = rows(invoke("qkd", "simulate", "--preset", "desk16", "--config", str(config),
                             "--seed", "2"))
        assert row["trials"] == "1"

    def test_analyze_desk16(self):
        """Correctness and completeness are reported; secrecy is blank at desk scale."""
        (row,) = rows(invoke("qkd", "analyze", "--preset", "desk16"))
        assert row["n"] == "16"
        assert 0.0 <= float(row["correctness"]) <= 1.0
        assert 0.0 <= float(row["completeness"])
        assert row["secrecy_bracket"] == ""
        assert row["secrecy_epsilon"] == ""

    def test_keyrate_curve(self):
        """The curve has one row per grid point."""
        table = rows(invoke("qkd", "keyrate", "--preset", "reference", "--grid-points", "11"))
        assert len(table) == 11
        assert float(table[0]["gamma"]) == 0.0
        assert float(table[0]["rate"]) == pytest.approx(0.2075, abs=1e-4)

    def test_keyrate_summary(self):
        """The summary row names γ_max and the binding completeness constraint."""
        (row,) = rows(invoke("qkd", "keyrate", "--preset", "reference", "--summary"))
        assert float(row["gamma_max"]) == pytest.approx(0.0024011, abs=2e-6)
        assert row["binding"] == "distance"
        assert float(row["x_threshold"]) == pytest.approx(0.002655, abs=2e-5)

    def test_keyrate_bad_squeeze(self):
        """A squeeze of 1 or more is a validation error."""
        result = invoke("qkd", "keyrate", "--preset", "reference", "--squeeze", "1.5")
        assert result.exit_code == 2
        assert result.stderr.startswith("Error:")

    def test_version(self):
        """--version prints the program name."""
        result = CliRunner().invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "coset-qkd" in result.stdout
