import os

import pytest

from loewnerqc.cli import main, parse_function_spec
from loewnerqc.functions import Koebe, SpiralKoebe


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


class TestFunctionSpecs:
    def test_inline_catalog(self):
        fn, _ = parse_function_spec("koebe")
        assert isinstance(fn, Koebe)
        fn, _ = parse_function_spec("spiral-koebe:0.5")
        assert isinstance(fn, SpiralKoebe) and fn.alpha == 0.5

    def test_inline_polynomial(self):
        fn, _ = parse_function_spec("polynomial:0,1,0.25+0.5j")
        assert abs(fn(0.2) - (0.2 + (0.25 + 0.5j) * 0.04)) < 1e-15

    def test_spec_file(self, tmp_path):
        path = tmp_path / "fn.txt"
        path.write_text("# a spirallike example\nkind = spiral-koebe\nalpha = 0.5\n")
        fn, fields = parse_function_spec(str(path))
        assert isinstance(fn, SpiralKoebe)
        assert fields["alpha"] == "0.5"

    def test_bad_spec_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("kind = dodecahedron\n")
        code = main(["check", "--kind", "convexity", "--fn", str(path),
                     "--out", str(tmp_path / "out")])
        assert code == 2
        assert "spec error" in capsys.readouterr().err


class TestCheck:
    def test_convexity_identity_passes(self, tmp_path):
        out = tmp_path / "out"
        code = main(["check", "--kind", "convexity", "--fn", "identity",
                     "--out", str(out), "--oracle-points", "512"])
        assert code == 0
        doc = (out / "criterion.txt").read_text()
        assert "margin = 1.0" in doc
        assert "passed = true" in doc
        assert (out / "summary.txt").exists()

    def test_convexity_koebe_fails_with_witness(self, tmp_path):
        out = tmp_path / "out"
        code = main(["check", "--kind", "convexity", "--fn", "koebe",
                     "--out", str(out), "--skip-oracle"])
        assert code == 1
        doc = (out / "criterion.txt").read_text()
        assert "passed = false" in doc
        assert "worst_point = " in doc

    def test_spiral_pipeline(self, tmp_path):
        out = tmp_path / "out"
        code = main([
            "check", "--kind", "spiral", "--alpha", "0.5",
            "--fn", "spiral-koebe:0.5", "--out", str(out),
            "--angles", "64", "--radii", "0.3,0.6,0.9",
            "--times", "0,0.5,1", "--ext-angles", "90",
            "--oracle-points", "1024",
        ])
        assert code == 0
        crit = (out / "criterion.txt").read_text()
        assert "min_dilatation = " in crit
        # the report's dilatation respects the theorem's floor |tan(alpha/4... /2)|
        value = float(crit.split("min_dilatation = ")[1].splitlines()[0])
        import numpy as np

        assert value >= abs(np.tan(0.25)) - 1e-12
        for name in ("chain.txt", "extension.txt", "samples.csv", "oracle.txt"):
            assert (out / name).exists(), name

    def test_emit_plots(self, tmp_path):
        out = tmp_path / "out"
        code = main([
            "check", "--kind", "spiral", "--alpha", "0.3",
            "--fn", "spiral-koebe:0.3", "--out", str(out),
            "--angles", "32", "--radii", "0.5,0.9", "--times", "0,0.5",
            "--ext-angles", "60", "--skip-oracle", "--emit-plots",
        ])
        assert code == 0
        assert (out / "mu.svg").exists()
        assert (out / "curves.svg").exists()
        assert read(out / "mu.svg").startswith(b"<?xml")


class TestDeterminism:
    def test_consecutive_check_runs_byte_identical(self, tmp_path):
        argv = [
            "check", "--kind", "starlike-tilted", "--fn", "koebe",
            "--angles", "64", "--radii", "0.4,0.8", "--times", "0,1",
            "--ext-angles", "45", "--oracle-points", "512", "--emit-plots",
        ]
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        names = sorted(os.listdir(out1))
        assert names == sorted(os.listdir(out2))
        for name in names:
            assert read(out1 / name) == read(out2 / name), name


class TestOtherCommands:
    def test_chain_subcommand(self, tmp_path):
        out = tmp_path / "out"
        code = main([
            "chain", "--variant", "exponential", "--fn", "half-plane",
            "--alpha", "0.4", "--out", str(out),
            "--angles", "64", "--radii", "0.4,0.8", "--times", "0,0.5,1",
        ])
        assert code == 0
        assert "herglotz_margin = " in (out / "chain.txt").read_text()

    def test_extend_and_plot_round_trip(self, tmp_path):
        out = tmp_path / "out"
        code = main([
            "extend", "--variant", "exponential", "--fn", "identity",
            "--c", "1", "--out", str(out), "--radii-ext", "1.1,2.0",
            "--ext-angles", "24",
        ])
        assert code == 0
        csv_path = out / "samples.csv"
        assert csv_path.exists()
        code = main(["plot", "--samples", str(csv_path), "--out", str(out)])
        assert code == 0
        svg = (out / "mu.svg").read_text()
        # conformal extension: |mu| = 0 everywhere -> a single fill value
        fills = {part.split('"')[0] for part in svg.split('fill="')[1:]}
        assert len(fills - {"#ffffff", "none"}) == 1

    def test_plot_missing_artifact(self, tmp_path, capsys):
        code = main(["plot", "--samples", str(tmp_path / "nope.csv"),
                     "--out", str(tmp_path)])
        assert code == 2
        assert "missing artifact" in capsys.readouterr().err

    def test_normalize_subcommand(self, tmp_path):
        out = tmp_path / "out"
        code = main([
            "normalize", "--variant", "sheil-small", "--fn", "half-plane",
            "--alpha", "1.0", "--beta", "0.5", "--times", "0,0.5,1,2",
            "--out", str(out),
        ])
        assert code == 0
        doc = (out / "normalize.txt").read_text()
        assert "max_gap = " in doc
        assert float(doc.split("max_gap = ")[1].splitlines()[0]) < 1e-10
