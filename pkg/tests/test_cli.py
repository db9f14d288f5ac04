import csv
import io
import json
import math

import numpy as np
import pytest

from gouproc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    return {name: [r[i] for r in body] for i, name in enumerate(header)}


class TestBasics:
    def test_no_command_prints_help(self, capsys):
        code, out, err = run_cli(capsys)
        assert code == 2
        assert "COMMAND" in out or "usage" in out

    def test_kernel_values(self, capsys):
        code, out, _ = run_cli(
            capsys, "kernel", "--kind", "cosine", "--param", "2.0", "--t-max", "1", "--n", "3"
        )
        assert code == 0
        cols = parse_csv(out)
        rho = [float(v) for v in cols["rho"]]
        assert rho[0] == 1.0
        assert rho[2] == pytest.approx(math.cos(2.0), rel=1e-12)

    def test_kernel_ode_check(self, capsys):
        code, out, _ = run_cli(
            capsys, "kernel", "--kind", "quadratic", "--param", "0.8",
            "--t-max", "2", "--n", "9", "--check-ode",
        )
        assert code == 0
        res = [abs(float(v)) for v in parse_csv(out)["ode_residual"]]
        assert max(res) < 1e-3

    def test_kernel_ode_check_rejects_exponential(self, capsys):
        code, _, err = run_cli(capsys, "kernel", "--kind", "exponential", "--check-ode")
        assert code == 2
        assert "second-order" in err

    def test_unknown_kernel_kind(self, capsys):
        code, _, err = run_cli(capsys, "kernel", "--kind", "cubic")
        assert code == 2


class TestStable:
    def test_gaussian_pdf_closed_form(self, capsys):
        code, out, _ = run_cli(capsys, "stable", "--alpha", "2.0", "--x", "0,1")
        assert code == 0
        pdf = [float(v) for v in parse_csv(out)["pdf"]]
        assert pdf[0] == pytest.approx(1.0 / (2 * math.sqrt(math.pi)), rel=1e-12)
        assert pdf[1] == pytest.approx(math.exp(-0.25) / (2 * math.sqrt(math.pi)), rel=1e-12)

    def test_cdf_column(self, capsys):
        code, out, _ = run_cli(capsys, "stable", "--alpha", "1.0", "--x", "0", "--cdf")
        assert code == 0
        cols = parse_csv(out)
        assert float(cols["cdf"][0]) == pytest.approx(0.5, abs=1e-9)

    def test_series_pocket_exits_numeric(self, capsys):
        code, _, err = run_cli(capsys, "stable", "--alpha", "1.03", "--x", "1.2")
        assert code == 3
        assert "numeric failure" in err


class TestSimulatePipeline:
    def test_simulate_deterministic(self, capsys):
        args = ["simulate", "--kernel", "cosine", "--a", "1.0", "--alpha", "1.8",
                "--h", "1.0", "--n", "50", "--seed", "9"]
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        _, out3, _ = run_cli(capsys, *args[:-1], "10")
        assert out3 != out1

    def test_simulate_poisson_ou(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--kernel", "ou", "--noise", "poisson",
            "--lam", "2.0", "--theta", "1.0", "--n", "30", "--v0", "1",
        )
        assert code == 0
        v = [float(x) for x in parse_csv(out)["v"]]
        assert len(v) == 30 and v[0] == 1.0

    def test_simulate_to_file_then_fit(self, tmp_path, capsys):
        data = tmp_path / "path.csv"
        code, _, _ = run_cli(
            capsys, "simulate", "--kernel", "cosine", "--a", "1.0", "--alpha", "2.0",
            "--h", "1.0", "--n", "300", "--seed", "4", "--out", str(data),
        )
        assert code == 0 and data.exists()
        code, out, _ = run_cli(capsys, "fit-mle", "--input", str(data), "--column", "v", "--h", "1.0")
        assert code == 0
        cols = parse_csv(out)
        est = dict(zip(cols["param"], (float(v) for v in cols["value"])))
        assert est["a"] == pytest.approx(1.0, abs=0.05)
        assert est["alpha"] > 1.5

        # without --column the t,v file is ambiguous; fitting the time
        # column would reward a degenerate spike, so it must refuse
        code, _, err = run_cli(capsys, "fit-mle", "--input", str(data), "--h", "1.0")
        assert code == 2
        assert "several numeric columns" in err

    def test_fit_mle_requires_input(self, capsys):
        code, _, err = run_cli(capsys, "fit-mle")
        assert code == 2
        assert "requires --input" in err


class TestTheoryCommands:
    def test_acf_normalizes(self, capsys):
        code, out, _ = run_cli(
            capsys, "acf", "--kind", "exponential", "--param", "1.0",
            "--t", "2.0", "--h-max", "1.0", "--n", "5",
        )
        assert code == 0
        acor = [float(v) for v in parse_csv(out)["acor"]]
        assert acor[0] == pytest.approx(1.0, rel=1e-12)
        assert all(b < a for a, b in zip(acor, acor[1:]))

    def test_codiff_theory(self, capsys):
        code, out, _ = run_cli(
            capsys, "codiff", "--theory", "--a", "1.0", "--alpha", "2.0",
            "--h", "0.5", "--t", "2.0", "--k-max", "3",
        )
        assert code == 0
        assert "codiff_theory" in parse_csv(out)

    def test_codiff_requires_work(self, capsys):
        code, _, err = run_cli(capsys, "codiff")
        assert code == 2

    def test_triplet_ou_values(self, capsys):
        code, out, _ = run_cli(
            capsys, "triplet", "--kernel", "ou", "--theta", "1.0", "--lam", "2.0",
            "--t", "1.0", "--gaussian-var", "1.0", "--edges", "0.3,0.6,1.01",
        )
        assert code == 0
        cols = parse_csv(out)
        got = dict(zip(cols["quantity"], (float(v) for v in cols["value"])))
        assert got["gamma"] == pytest.approx(2 * (1 - math.exp(-1)), rel=1e-10)
        assert got["A"] == pytest.approx((1 - math.exp(-2)) / 2, rel=1e-10)
        assert got["nu[0.6,1.01)"] == pytest.approx(2 * math.log(1 / 0.6), rel=1e-9)

    def test_triplet_bad_edges(self, capsys):
        code, _, _ = run_cli(capsys, "triplet", "--edges", "1,0.5")
        assert code == 2


class TestDataCommands:
    def test_transform_log_returns(self, tmp_path, capsys):
        f = tmp_path / "prices.csv"
        f.write_text("price\n100.0\n110.0\n")
        code, out, _ = run_cli(capsys, "transform", "--input", str(f), "--op", "log-returns")
        assert code == 0
        vals = [float(v) for v in parse_csv(out)["value"]]
        assert vals == [pytest.approx(math.log(1.1), rel=1e-12)]

    def test_transform_rejects_negative_prices(self, tmp_path, capsys):
        f = tmp_path / "bad.csv"
        f.write_text("price\n100.0\n-1.0\n")
        code, _, err = run_cli(capsys, "transform", "--input", str(f), "--op", "log-returns")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "transform", "--input", "/nonexistent.csv")
        assert code == 2

    def test_gof_all_statistics(self, tmp_path, capsys):
        rng = np.random.default_rng(3)
        f = tmp_path / "resid.csv"
        f.write_text("value\n" + "\n".join(repr(float(x)) for x in rng.standard_normal(150)) + "\n")
        code, out, _ = run_cli(
            capsys, "gof", "--input", str(f), "--alpha0", "2.0", "--n-boot", "19",
        )
        assert code == 0
        cols = parse_csv(out)
        assert cols["statistic"] == ["ks", "ad", "mks", "mc"]
        assert all(0.0 < float(p) <= 1.0 for p in cols["p_value"])

    def test_fit_bayes_explicit_init(self, tmp_path, capsys):
        data = tmp_path / "b.csv"
        code, _, _ = run_cli(
            capsys, "simulate", "--kernel", "cosine", "--a", "1.0", "--alpha", "1.8",
            "--h", "1.0", "--n", "120", "--seed", "2", "--out", str(data),
        )
        assert code == 0
        code, out, _ = run_cli(
            capsys, "fit-bayes", "--input", str(data), "--column", "v", "--h", "1.0",
            "--init", "1.8,1.2,1.0", "--n-iter", "60", "--n-burn", "20", "--thin", "2",
        )
        assert code == 0
        cols = parse_csv(out)
        assert cols["param"] == ["alpha", "sigma_eps", "a"]
        assert all(0 < float(m) < 3 for m in cols["mean"])

    def test_fit_bayes_bad_init(self, tmp_path, capsys):
        data = tmp_path / "b2.csv"
        run_cli(capsys, "simulate", "--kernel", "cosine", "--n", "50", "--out", str(data))
        code, _, err = run_cli(
            capsys, "fit-bayes", "--input", str(data), "--column", "v",
            "--init", "2.5,1.0,1.0", "--n-iter", "10", "--n-burn", "5",
        )
        assert code == 2


class TestConfig:
    def test_dump_config_merging(self, tmp_path, capsys):
        cfgf = tmp_path / "c.json"
        cfgf.write_text(json.dumps({"seed": 5, "kernel": {"param": 2.5}}))
        code, out, _ = run_cli(capsys, "kernel", "--config", str(cfgf), "--dump-config")
        assert code == 0
        eff = json.loads(out)
        assert eff["seed"] == 5 and eff["param"] == 2.5

    def test_argv_beats_config(self, tmp_path, capsys):
        cfgf = tmp_path / "c.json"
        cfgf.write_text(json.dumps({"kernel": {"param": 2.5}}))
        code, out, _ = run_cli(
            capsys, "kernel", "--config", str(cfgf), "--param", "3.5", "--dump-config"
        )
        assert code == 0
        assert json.loads(out)["param"] == 3.5

    def test_other_command_sections_ignored(self, tmp_path, capsys):
        cfgf = tmp_path / "c.json"
        cfgf.write_text(json.dumps({"stable": {"alpha": 1.2}, "kernel": {"param": 1.5}}))
        code, out, _ = run_cli(capsys, "kernel", "--config", str(cfgf), "--dump-config")
        assert code == 0
        assert json.loads(out)["param"] == 1.5

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        cfgf = tmp_path / "c.json"
        cfgf.write_text(json.dumps({"kernel": {"paramm": 2.5}}))
        code, _, err = run_cli(capsys, "kernel", "--config", str(cfgf))
        assert code == 2
        assert "unknown" in err

    def test_malformed_json(self, tmp_path, capsys):
        cfgf = tmp_path / "c.json"
        cfgf.write_text("{not json")
        code, _, _ = run_cli(capsys, "kernel", "--config", str(cfgf))
        assert code == 2


class TestStudyCommand:
    def test_threads_invariant_output(self, capsys):
        base = ["study", "--alpha", "1.8", "--a", "1.0", "--h", "1.0",
                "--n-obs", "150", "--n-rep", "2", "--seed", "3"]
        code1, out1, _ = run_cli(capsys, *base, "--threads", "1")
        code2, out2, _ = run_cli(capsys, *base, "--threads", "2")
        assert code1 == code2 == 0
        assert out1 == out2
        cols = parse_csv(out1)
        assert cols["param"] == ["alpha", "sigma_eps", "a"]
