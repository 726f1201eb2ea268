"""End-to-end CLI tests: exit codes, schema validity, determinism."""

import json
import subprocess
import sys

BASE = [sys.executable, "-m", "qortho"]


def run_cli(*args):
    return subprocess.run(BASE + list(args), capture_output=True, text=True)


class TestExitCodes:
    def test_sears_single_record(self, tmp_path):
        out = tmp_path / "r.json"
        res = run_cli("verify", "--identity", "sears", "--q", "0.5", "--a", "0.5", "--b", "-0.7", "--out", str(out))
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        assert len(payload["records"]) == 1
        assert payload["summary"] == {"passed": 1, "failed": 0, "inconclusive": 0}

    def test_usage_error_positive_b(self):
        res = run_cli("verify", "--b", "0.7")
        assert res.returncode == 64
        assert "b must be negative" in res.stderr

    def test_usage_error_bad_q(self):
        res = run_cli("verify", "--q", "1.5")
        assert res.returncode == 64
        assert "q must lie strictly in (0, 1)" in res.stderr

    def test_usage_error_bad_identity(self):
        res = run_cli("verify", "--identity", "nope")
        assert res.returncode == 64

    def test_usage_error_unknown_command(self):
        res = run_cli("frobnicate")
        assert res.returncode == 64

    def test_inconclusive_exit_two(self, tmp_path):
        # a tolerance below the certifiable tail makes the check
        # inconclusive rather than pass/fail
        out = tmp_path / "r.json"
        res = run_cli(
            "verify", "--identity", "sears", "--tol", "1e-16", "--out", str(out)
        )
        assert res.returncode == 2
        payload = json.loads(out.read_text())
        assert payload["summary"]["inconclusive"] == 1
        assert payload["summary"]["failed"] == 0

    def test_failure_exit_one(self, tmp_path):
        # a 3x3 truncation cannot match the ten extreme spectral points
        out = tmp_path / "r.json"
        res = run_cli("spectrum", "--dim", "3", "--out", str(out))
        assert res.returncode == 1
        payload = json.loads(out.read_text())
        assert payload["summary"]["failed"] >= 1

    def test_full_sweep_exit_zero(self, tmp_path):
        out = tmp_path / "r.json"
        res = run_cli(
            "verify", "--identity", "all", "--q", "0.5", "--a", "0.5", "--b", "-0.7",
            "--index-max", "5", "--out", str(out),
        )
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        assert payload["summary"]["failed"] == 0
        assert payload["summary"]["inconclusive"] == 0
        assert payload["summary"]["passed"] == len(payload["records"])


class TestSchema:
    def test_records_validate(self, tmp_path):
        import jsonschema

        from qortho.reporting import REPORT_SCHEMA

        out = tmp_path / "r.json"
        res = run_cli(
            "verify", "--identity", "dual", "--index-max", "2", "--out", str(out), "--no-timestamp"
        )
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        jsonschema.validate(payload, REPORT_SCHEMA)

    def test_spectrum_records_validate(self, tmp_path):
        import jsonschema

        from qortho.reporting import REPORT_SCHEMA

        out = tmp_path / "r.json"
        res = run_cli("spectrum", "--dim", "60", "--out", str(out), "--no-timestamp")
        assert res.returncode == 0
        jsonschema.validate(json.loads(out.read_text()), REPORT_SCHEMA)

    def test_limit_records_validate(self, tmp_path):
        import jsonschema

        from qortho.reporting import REPORT_SCHEMA

        out = tmp_path / "r.json"
        res = run_cli("limit", "--index-max", "2", "--out", str(out), "--no-timestamp")
        assert res.returncode == 0
        jsonschema.validate(json.loads(out.read_text()), REPORT_SCHEMA)

    def test_csv_header(self, tmp_path):
        out = tmp_path / "r.csv"
        res = run_cli("verify", "--identity", "sears", "--format", "csv", "--out", str(out))
        assert res.returncode == 0
        header = out.read_text().splitlines()[0]
        assert header == "identity_id,i,j,lhs,rhs,residual,terms_used,tail_estimate,status"


class TestDeterminism:
    def test_byte_identical_json(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["verify", "--identity", "meixner", "--index-max", "3", "--no-timestamp"]
        assert run_cli(*args, "--out", str(a)).returncode == 0
        assert run_cli(*args, "--out", str(b)).returncode == 0
        assert a.read_bytes() == b.read_bytes()

    def test_timestamp_field_isolated(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["verify", "--identity", "sears"]
        run_cli(*args, "--out", str(a))
        run_cli(*args, "--out", str(b))
        pa, pb = json.loads(a.read_text()), json.loads(b.read_text())
        pa.pop("generated_at"), pb.pop("generated_at")
        assert pa == pb

    def test_jobs_do_not_change_output(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = [
            "verify", "--identity", "all", "--index-max", "2", "--no-timestamp",
        ]
        assert run_cli(*args, "--jobs", "1", "--out", str(a)).returncode == 0
        assert run_cli(*args, "--jobs", "4", "--out", str(b)).returncode == 0
        content_a = json.loads(a.read_text())
        content_b = json.loads(b.read_text())
        content_a["config"].pop("jobs")
        content_b["config"].pop("jobs")
        assert content_a == content_b

    def test_float_17_digits(self, tmp_path):
        out = tmp_path / "r.json"
        run_cli("verify", "--identity", "sears", "--no-timestamp", "--out", str(out))
        text = out.read_text()
        assert '"b": -0.69999999999999996' in text


class TestCommands:
    def test_spectrum_contains_exact_first_points(self, tmp_path):
        out = tmp_path / "r.json"
        res = run_cli("spectrum", "--dim", "80", "--out", str(out), "--no-timestamp")
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        matches = [r for r in payload["records"] if r["identity_id"] == "spectrum-match"]
        lhs_values = {r["lhs"] for r in matches}
        assert 0.25 in lhs_values  # a*q
        assert -0.35 in lhs_values  # b*q
        assert all(r["status"] == "pass" for r in matches)

    def test_spectrum_convergence_records(self, tmp_path):
        out = tmp_path / "r.json"
        run_cli("spectrum", "--dim", "60", "--out", str(out), "--no-timestamp")
        payload = json.loads(out.read_text())
        conv = [r for r in payload["records"] if r["identity_id"] == "spectrum-converge"]
        assert len(conv) == 10
        assert all(r["status"] == "pass" for r in conv)

    def test_table_shape_and_values(self, tmp_path):
        out = tmp_path / "r.json"
        res = run_cli("table", "--index-max", "4", "--out", str(out), "--no-timestamp")
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        rows = payload["table"]
        deg0 = [r for r in rows if r["family"] == "big-q-laguerre" and r["n"] == 0]
        assert deg0 and all(r["value"] == 1.0 for r in deg0)
        cs = [r["value"] for r in rows if r["family"] == "c"]
        assert all(v > 0 for v in cs)
        assert all(b < a for a, b in zip(cs, cs[1:]))  # decreasing for these parameters
        # two-method agreement
        by_key = {}
        for r in rows:
            if r["family"] == "big-q-laguerre":
                by_key.setdefault((r["n"], r["m_or_x"]), {})[r["method"]] = r["value"]
        for (n, x), methods in by_key.items():
            assert abs(methods["series"] - methods["recurrence"]) <= 1e-10 * max(
                1.0, abs(methods["series"])
            )

    def test_limit_rate_records(self, tmp_path):
        out = tmp_path / "r.json"
        res = run_cli("limit", "--index-max", "3", "--out", str(out), "--no-timestamp")
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        rates = [r for r in payload["records"] if r["identity_id"] == "climit-poly-rate"]
        assert rates
        for r in rates:
            assert r["status"] == "pass"
            assert r["lhs"] == "nan" or r["lhs"] >= 0.9
        per_q = [r for r in payload["records"] if r["identity_id"] == "climit-poly" and r["i"] == 0]
        assert all(r["residual"] <= 1e-10 for r in per_q)  # degree 0 exact to rounding

    def test_limit_q_column_increasing(self, tmp_path):
        out = tmp_path / "r.json"
        run_cli("limit", "--index-max", "1", "--out", str(out), "--no-timestamp")
        payload = json.loads(out.read_text())
        qs = [r["params"]["q"] for r in payload["records"] if r["identity_id"] == "climit-poly" and r["i"] == 1]
        assert qs == sorted(qs) and len(set(qs)) == len(qs)

    def test_report_all(self, tmp_path):
        import jsonschema

        from qortho.reporting import REPORT_SCHEMA

        out = tmp_path / "r.json"
        res = run_cli(
            "report-all", "--index-max", "1", "--dim", "40", "--out", str(out), "--no-timestamp"
        )
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        jsonschema.validate(payload, REPORT_SCHEMA)
        ids = {r["identity_id"] for r in payload["records"]}
        assert "sears" in ids and "spectrum-match" in ids and "climit-poly" in ids
        keys = [(r["identity_id"], r["i"], r["j"]) for r in payload["records"]]
        assert keys == sorted(keys)

    def test_l_flag_overrides_a(self, tmp_path):
        out = tmp_path / "r.json"
        res = run_cli(
            "verify", "--identity", "sears", "--l", "1.0", "--a", "0.9", "--q", "0.5",
            "--out", str(out), "--no-timestamp",
        )
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        assert payload["config"]["a"] == 0.5  # q^(2l-1) with l=1

    def test_extended_precision(self, tmp_path):
        out = tmp_path / "r.json"
        res = run_cli(
            "verify", "--identity", "sears", "--precision", "extended",
            "--out", str(out), "--no-timestamp",
        )
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        rec = payload["records"][0]
        assert rec["status"] == "pass"
        assert rec["residual"] <= 1e-14
