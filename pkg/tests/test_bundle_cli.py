import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from skew16 import bundle
from skew16.cli import main
from skew16.configuration import Tolerances, verify
from skew16.errors import BundleError
from skew16.mesh import MeshOptions, clip_lines, mesh_surface, sidecar_path, vertex_residuals
from skew16.sweep import COLUMNS, sweep_values

EXAMPLE_ARGS = ["--lambda", "18", "--q0", "0.4168", "--q1", "0.1713"]


@pytest.fixture(scope="module")
def bundle_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("bundle")
    assert main(["generate", *EXAMPLE_ARGS, "--out", str(out)]) == 0
    return out


def test_bundle_files(bundle_dir):
    for name in ("params.json", "lines.json", "quartic.json", "report.json"):
        assert (bundle_dir / name).is_file()
    p = json.loads((bundle_dir / "params.json").read_text())
    assert p["lambda"] == 18.0 and p["root"] == "plus" and p["seed"] == 1
    assert p["diagnostics"]["odd"]["N"] == pytest.approx(1.72651358)
    q = json.loads((bundle_dir / "quartic.json").read_text())
    assert q["basis"] == "heisenberg-invariant-v1"
    assert q["normalization"] == "lambda4_one"
    r = json.loads((bundle_dir / "report.json").read_text())
    assert r["passed"] and r["incidence_ok"]


def test_roundtrip_exact(bundle_dir, example_config):
    config, _ = bundle.read_bundle(bundle_dir)
    assert config.quartic.coeffs == example_config.quartic.coeffs
    for a, b in zip(config.lines, example_config.lines):
        assert a.pluecker == b.pluecker
        assert a.group_word == b.group_word
        assert a.frame == b.frame
    assert config.q_even == example_config.q_even


def test_byte_identical_runs(bundle_dir, tmp_path):
    assert main(["generate", *EXAMPLE_ARGS, "--out", str(tmp_path)]) == 0
    for name in ("params.json", "lines.json", "quartic.json", "report.json"):
        assert (tmp_path / name).read_bytes() == (bundle_dir / name).read_bytes()


def test_json_writer():
    assert bundle.dumps({"a": 1.0, "b": [0.1, 2], "c": float("nan"), "d": True}) == (
        '{\n  "a": 1.0,\n  "b": [0.10000000000000001, 2],\n  "c": null,\n  "d": true\n}\n'
    )
    assert float(bundle.dumps(1 / 3)) == 1 / 3


def test_verify_from_bundle(bundle_dir, tmp_path, capsys):
    report_path = tmp_path / "fresh.json"
    assert main(["verify", "--in", str(bundle_dir), "--report", str(report_path)]) == 0
    assert "PASSED" in capsys.readouterr().out
    fresh = json.loads(report_path.read_text())
    stored = json.loads((bundle_dir / "report.json").read_text())
    assert fresh == stored


def test_hand_edited_coefficient_fails(bundle_dir, tmp_path):
    for name in ("params.json", "lines.json", "quartic.json"):
        (tmp_path / name).write_bytes((bundle_dir / name).read_bytes())
    q = json.loads((tmp_path / "quartic.json").read_text())
    q["coefficients"][2] += 1e-4
    (tmp_path / "quartic.json").write_text(json.dumps(q))
    assert main(["verify", "--in", str(tmp_path)]) == 1


def test_tolerance_override(bundle_dir):
    assert main(["verify", "--in", str(bundle_dir), "--tol-residual", "1e-30"]) == 1
    assert main(["verify", "--in", str(bundle_dir), "--tol-skew", "1.0"]) == 1


def test_bundle_errors(tmp_path):
    with pytest.raises(BundleError):
        bundle.read_bundle(tmp_path / "missing")
    assert main(["verify", "--in", str(tmp_path / "missing")]) == 3
    (tmp_path / "params.json").write_text("{not json")
    assert main(["verify", "--in", str(tmp_path)]) == 3
    with pytest.raises(BundleError):
        bundle.parse_quartic({"basis": "other", "coefficients": [1, 2, 3, 4, 5]})


@pytest.mark.parametrize(
    "argv, code",
    [
        (["generate", "--lambda", "9", "--out", "x"], 11),
        (["generate", "--lambda", "18", "--q0", "0.9", "--out", "x"], 12),
        (["generate", "--lambda", "18", "--q0", "0.3", "--q1", "0.3", "--out", "x"], 22),
    ],
)
def test_pipeline_exit_codes(argv, code, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == code


def test_usage_errors(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--out", str(tmp_path)])
    assert exc.value.code == 2
    assert main(["sweep", "--from", "8", "--to", "12", "--steps", "3", "--out", str(tmp_path / "s.csv")]) == 2
    assert main(["sweep", "--from", "10", "--to", "12", "--steps", "1", "--out", str(tmp_path / "s.csv")]) == 2


def test_env_seed_is_recorded(tmp_path, monkeypatch):
    monkeypatch.setenv("SKEW16_SEED", "5")
    assert main(["generate", *EXAMPLE_ARGS, "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "params.json").read_text())["seed"] == 5


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "skew16", "generate", "--lambda", "20", "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "PASSED" in proc.stdout


class TestMesh:
    def test_mesh_command(self, bundle_dir, tmp_path):
        out = tmp_path / "surface.obj"
        assert main(["mesh", "--in", str(bundle_dir), "--out", str(out)]) == 0
        text = out.read_text().splitlines()
        assert sum(line.startswith("v ") for line in text) > 100
        assert sum(line.startswith("f ") for line in text) > 100
        side = sidecar_path(out).read_text()
        assert side.count("\nl ") > 0

    def test_resolution_rejected(self, bundle_dir, tmp_path):
        assert main(["mesh", "--in", str(bundle_dir), "--resolution", "4", "--out", str(tmp_path / "m.obj")]) == 2
        with pytest.raises(ValueError):
            MeshOptions(chart="z7")
        with pytest.raises(ValueError):
            MeshOptions(box_half_width=0.0)

    @pytest.mark.parametrize("chart", ["z0", "z1", "z2", "z3"])
    def test_vertices_near_surface(self, example_config, chart):
        mesh = mesh_surface(example_config.quartic, MeshOptions(chart=chart, resolution=20))
        assert vertex_residuals(example_config.quartic, mesh).max() < mesh.residual_bound
        assert np.abs(mesh.vertices).max() <= 2.0 + 1e-9

    def test_clipped_lines_lie_on_surface(self, example_config):
        from skew16.mesh import chart_values

        opts = MeshOptions()
        polylines = clip_lines(example_config.lines, opts)
        assert polylines
        for pl in polylines:
            assert np.abs(pl.points).max() <= opts.box_half_width + 1e-9
            mid = pl.points.mean(axis=0)
            scale = example_config.quartic.norm * (1 + np.linalg.norm(mid) ** 4)
            assert abs(chart_values(example_config.quartic, mid, opts.axis)) < 1e-9 * scale


class TestSweep:
    def test_sweep_values(self):
        assert sweep_values(10, 12, 3) == pytest.approx([10, 11, 12])
        with pytest.raises(ValueError):
            sweep_values(9, 12, 3)
        with pytest.raises(ValueError):
            sweep_values(12, 10, 3)

    def test_sweep_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--from", "10", "--to", "30", "--steps", "5", "--out", str(out)]) == 0
        with out.open() as fh:
            rows = list(csv.DictReader(fh))
        assert tuple(rows[0]) == COLUMNS
        assert len(rows) == 5
        widths = [float(r["width"]) for r in rows]
        assert widths == sorted(widths)
        assert all(r["passed"] == "True" for r in rows)


def test_verify_uses_report_tolerances(example_config):
    report = verify(example_config, Tolerances(n_smooth=50, gradient=1e6))
    assert not report.passed
