import io
import json
import subprocess
import sys
from contextlib import redirect_stdout, redirect_stderr

import pytest

from dualent.cli import main, EXIT_OK, EXIT_COMPUTATION, EXIT_SPEC, EXIT_VERIFY_FAILED


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def doc_path(example_dir, name):
    return str(example_dir / name)


class TestEntropyCommand:
    def test_cat_map_value(self, example_dir):
        code, out, _ = run_cli(
            ["entropy", doc_path(example_dir, "catmap_z2.json"), "--format", "json"]
        )
        assert code == EXIT_OK
        assert abs(json.loads(out)["value"] - 0.9624236501192069) < 1e-9

    def test_rotation_is_zero(self, example_dir):
        code, out, _ = run_cli(
            ["entropy", doc_path(example_dir, "torus_rotation.json"), "--format", "json"]
        )
        assert code == EXIT_OK
        assert json.loads(out)["value"] == 0.0

    def test_crystal_document(self, example_dir):
        code, out, _ = run_cli(
            ["entropy", doc_path(example_dir, "crystal_z2xc2_catmap.json"),
             "--format", "json"]
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert abs(payload["value"] - 0.9624236501192069) < 1e-9
        assert payload["diagnostics"]["center_rank"] == 2

    def test_missing_auto_is_spec_error(self, example_dir):
        code, _, err = run_cli(
            ["entropy", doc_path(example_dir, "rank_z1.json")]
        )
        assert code == EXIT_SPEC
        assert "auto" in err

    def test_default_format_is_text(self, example_dir):
        code, out, _ = run_cli(
            ["entropy", doc_path(example_dir, "catmap_z2.json")]
        )
        assert code == EXIT_OK
        assert "0.9624236501" in out


class TestPetersCommand:
    def test_growth_estimate_close_to_spectral(self, example_dir):
        code, out, _ = run_cli(
            ["peters", doc_path(example_dir, "catmap_z2.json"), "--format", "json"]
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["method"] == "peters"
        assert abs(payload["value"] - 0.9624236501192069) < 0.15

    def test_csv_series(self, example_dir):
        code, out, _ = run_cli(
            ["peters", doc_path(example_dir, "catmap_z2.json"), "--format", "csv"]
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "n,size,log_size_over_n"
        assert lines[1].split(",")[1] == "4"

    def test_tiny_cap_is_computation_error(self, example_dir):
        code, _, err = run_cli(
            ["peters", doc_path(example_dir, "catmap_z2.json"), "--cap", "10"]
        )
        assert code == EXIT_COMPUTATION

    def test_crystal_document_rejected(self, example_dir):
        code, _, err = run_cli(
            ["peters", doc_path(example_dir, "crystal_dinfty.json")]
        )
        assert code == EXIT_SPEC


class TestRankCommand:
    def test_exact_search(self, example_dir):
        code, out, _ = run_cli(
            ["rank", doc_path(example_dir, "rank_z1.json"), "--format", "json"]
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["rank"] == 5
        assert payload["defect_exact"] == "2/5"
        assert payload["exhaustive_within_radius"] is True

    def test_flag_overrides_params(self, example_dir):
        code, out, _ = run_cli(
            ["rank", doc_path(example_dir, "rank_z1.json"), "--delta", "0.9",
             "--format", "json"]
        )
        assert code == EXIT_OK
        assert json.loads(out)["rank"] == 3

    def test_upper_bound_methods_flagged(self, example_dir):
        for method in ("interval", "parallelepiped", "tower"):
            code, out, _ = run_cli(
                ["rank", doc_path(example_dir, "rank_z1.json"),
                 "--method", method, "--format", "json"]
            )
            assert code == EXIT_OK, method
            payload = json.loads(out)
            assert payload["exhaustive_within_radius"] is False
            assert payload["rank"] >= 5

    def test_unreachable_delta_is_computation_error(self, example_dir):
        code, _, err = run_cli(
            ["rank", doc_path(example_dir, "rank_z1.json"),
             "--delta", "0.01", "--radius", "2"]
        )
        assert code == EXIT_COMPUTATION


class TestVerifyCommand:
    def test_single_suite(self):
        code, out, _ = run_cli(
            ["verify", "--suite", "sqrt-overlap", "--trials", "25", "--seed", "9"]
        )
        assert code == EXIT_OK
        assert "pass" in out

    def test_unknown_suite_rejected(self):
        # argparse exits directly on an invalid choice, with the same code
        # used for document errors
        with pytest.raises(SystemExit) as exc:
            run_cli(["verify", "--suite", "nope"])
        assert exc.value.code == EXIT_SPEC


class TestErrorPaths:
    def test_missing_file(self):
        code, _, err = run_cli(["entropy", "/nonexistent/x.json"])
        assert code == EXIT_SPEC

    def test_malformed_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{oops")
        code, _, err = run_cli(["entropy", str(p)])
        assert code == EXIT_SPEC
        assert "line" in err

    def test_unknown_key(self, tmp_path):
        p = tmp_path / "unk.json"
        p.write_text(json.dumps({"group": {"kind": "free_abelian", "rank": 1}, "z": 1}))
        code, _, err = run_cli(["entropy", str(p)])
        assert code == EXIT_SPEC


class TestOutputHandling:
    def test_out_file_byte_determinism(self, example_dir, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for target in (a, b):
            code, _, _ = run_cli(
                ["entropy", doc_path(example_dir, "catmap_z2.json"),
                 "--format", "json", "--out", str(target)]
            )
            assert code == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

    def test_stdout_byte_determinism_across_formats(self, example_dir):
        for fmt in ("json", "csv", "text"):
            runs = {
                run_cli(["entropy", doc_path(example_dir, "catmap_z2.json"),
                         "--format", fmt])[1]
                for _ in range(2)
            }
            assert len(runs) == 1


def test_console_entry_point(example_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "dualent.cli", "entropy",
         doc_path(example_dir, "catmap_z2.json")],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert "0.9624236501" in proc.stdout
