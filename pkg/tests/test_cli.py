import csv
import json
import math

import pytest

from werner_channels import cli
from werner_channels.werner import singular_point


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


class TestNegativitySweep:
    def test_endpoints(self, tmp_path, capsys):
        out = tmp_path / "neg.csv"
        code, _, _ = run(capsys, "negativity-sweep", "--n", "1", "--p-min", "0", "--p-max", "1", "--steps", "2", "--out", str(out))
        assert code == 0
        assert out.read_text() == "p,n,negativity,classification\n0,1,1,separable\n1,1,2,entangled\n"

    def test_n1_curve(self, tmp_path, capsys):
        out = tmp_path / "neg.csv"
        assert run(capsys, "negativity-sweep", "--n", "1", "--p-min", "-0.3333", "--p-max", "1", "--steps", "121", "--out", str(out))[0] == 0
        rows = read_csv(out)
        assert len(rows) == 121
        ps = [float(r["p"]) for r in rows]
        assert ps == sorted(ps)
        for r in rows:
            p, value = float(r["p"]), float(r["negativity"])
            if p <= 1 / 3:
                assert value == pytest.approx(1.0, abs=1e-8)
            else:
                assert value > 1
        assert float(rows[-1]["negativity"]) == pytest.approx(2.0, abs=1e-8)

    def test_n2_domain(self, capsys):
        code, text, _ = run(capsys, "negativity-sweep", "--n", "2", "--p-min", "-3", "--p-max", "1.2", "--steps", "85")
        assert code == 0
        rows = list(csv.DictReader(text.splitlines()))
        low, high = -1 - 2 * math.sqrt(3) / 3, -1 + 2 * math.sqrt(3) / 3
        for r in rows:
            p, value = float(r["p"]), float(r["negativity"])
            if low <= p <= high:
                assert value == pytest.approx(1.0, abs=1e-8)
            else:
                assert value > 1

    def test_json_format(self, capsys):
        code, text, _ = run(capsys, "negativity-sweep", "--n", "1", "--p-min", "0", "--p-max", "1", "--steps", "3", "--format", "json")
        assert code == 0
        rows = json.loads(text)
        assert [r["classification"] for r in rows] == ["separable", "entangled", "entangled"]
        assert all(r["state_valid"] for r in rows)

    def test_singular_point_skipped(self, capsys, caplog, monkeypatch):
        monkeypatch.setenv(cli.WORKERS_ENV, "1")
        p_sing = singular_point(3)
        code, text, _ = run(capsys, "negativity-sweep", "--n", "3", "--p-min", repr(p_sing), "--p-max", "1", "--steps", "5")
        assert code == 0
        assert len(text.strip().splitlines()) == 1 + 4
        assert "skipping p=-1.56780542" in caplog.text

    def test_skip_reported_on_stderr(self):
        import subprocess
        import sys

        argv = ["negativity-sweep", "--n", "3", "--p-min", repr(singular_point(3)), "--p-max", "1", "--steps", "3"]
        proc = subprocess.run([sys.executable, "-m", "werner_channels", *argv], capture_output=True, text=True)
        assert proc.returncode == 0
        assert "skipping" in proc.stderr
        assert len(proc.stdout.splitlines()) == 3

    def test_reproducible(self, tmp_path, capsys, monkeypatch):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        monkeypatch.setenv(cli.WORKERS_ENV, "1")
        run(capsys, "negativity-sweep", "--n", "3", "--steps", "50", "--out", str(a))
        monkeypatch.setenv(cli.WORKERS_ENV, "3")
        run(capsys, "negativity-sweep", "--n", "3", "--steps", "50", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestChshSweep:
    def test_rows(self, tmp_path, capsys):
        out = tmp_path / "chsh.csv"
        code, _, _ = run(capsys, "chsh-sweep", "--n", "1", "--steps", "9", "--out", str(out))
        assert code == 0
        rows = read_csv(out)
        assert list(rows[0]) == ["p", "n", "bell_max", "analytic_max", "classification"]
        assert len(rows) == 9
        for r in rows:
            assert abs(float(r["bell_max"]) - float(r["analytic_max"])) <= 1e-4

    def test_config_and_flags(self, tmp_path, capsys):
        cfg = tmp_path / "opt.cfg"
        cfg.write_text("# optimizer\nseeds = 4\nmax-evals = 3000\n")
        code, text, _ = run(capsys, "chsh-sweep", "--n", "2", "--p-min", "0.5", "--p-max", "1", "--steps", "2", "--config", str(cfg), "--seeds", "2")
        assert code == 0
        rows = list(csv.DictReader(text.splitlines()))
        assert float(rows[-1]["bell_max"]) == pytest.approx(2 * math.sqrt(2), abs=1e-4)

    def test_unknown_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "opt.cfg"
        cfg.write_text("colour = blue\n")
        assert run(capsys, "chsh-sweep", "--n", "1", "--steps", "2", "--config", str(cfg))[0] == cli.EXIT_USAGE

    def test_missing_config(self, tmp_path, capsys):
        assert run(capsys, "chsh-sweep", "--n", "1", "--steps", "2", "--config", str(tmp_path / "nope"))[0] == cli.EXIT_IO

    def test_reproducible(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.WORKERS_ENV, "1")
        first = run(capsys, "chsh-sweep", "--n", "3", "--steps", "4")[1]
        monkeypatch.setenv(cli.WORKERS_ENV, "2")
        assert run(capsys, "chsh-sweep", "--n", "3", "--steps", "4")[1] == first


class TestClassify:
    def test_separable(self, capsys):
        code, text, _ = run(capsys, "classify", "--p", "0.1667", "--n", "1")
        report = json.loads(text)
        assert code == 0
        assert report["classification"] == "separable"
        assert set(report) == {"p", "n", "state_valid", "classification", "boundaries", "negativity", "eigenvalues", "ppt_eigenvalues"}

    def test_entangled(self, capsys):
        code, text, _ = run(capsys, "classify", "--p", "0.1667", "--n", "2")
        assert code == 0
        assert json.loads(text)["classification"] == "entangled"

    def test_formal(self, capsys):
        code, text, _ = run(capsys, "classify", "--p", "2", "--n", "1")
        assert code == cli.EXIT_FORMAL
        assert json.loads(text)["state_valid"] is False

    def test_singular(self, capsys):
        code, _, err = run(capsys, "classify", "--p", repr(singular_point(5)), "--n", "5")
        assert code == cli.EXIT_SINGULAR
        assert "singular" in err


class TestTomogram:
    def test_zero_angles(self, capsys):
        code, text, _ = run(capsys, "tomogram", "--p", "0.5", "--n", "1")
        table = json.loads(text)
        assert code == 0
        assert table["uu"] == pytest.approx(0.375, abs=1e-15)
        assert table["ud"] == pytest.approx(0.125, abs=1e-15)
        assert table["du"] == pytest.approx(0.125, abs=1e-15)
        assert table["dd"] == pytest.approx(0.375, abs=1e-15)

    def test_equator(self, capsys):
        half = repr(math.pi / 2)
        code, text, _ = run(capsys, "tomogram", "--p", "1", "--n", "1", "--theta1", half, "--theta2", half)
        table = json.loads(text)
        assert table["uu"] == pytest.approx(0.5, abs=1e-15) and table["dd"] == pytest.approx(0.5, abs=1e-15)
        assert table["ud"] == pytest.approx(0.0, abs=1e-15) and table["du"] == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("p,n", [(0.3, 3), (-0.2, 2), (0.9, 7)])
    def test_sum(self, capsys, p, n):
        _, text, _ = run(capsys, "tomogram", "--p", str(p), "--n", str(n), "--theta1", "0.4", "--psi1", "2", "--theta2", "2.5", "--psi2", "-1")
        assert json.loads(text)["sum"] == pytest.approx(1.0, abs=1e-12)

    def test_singular(self, capsys):
        assert run(capsys, "tomogram", "--p", repr(singular_point(3)), "--n", "3")[0] == cli.EXIT_SINGULAR


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            ["negativity-sweep", "--n", "1", "--steps", "1"],
            ["negativity-sweep", "--n", "1", "--p-min", "1", "--p-max", "0"],
            ["negativity-sweep", "--n", "0"],
            ["classify", "--p", "0.1"],
            ["frobnicate"],
            [],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as info:
            code = cli.main(argv)
            raise SystemExit(code)
        assert info.value.code == cli.EXIT_USAGE
        assert "usage" in capsys.readouterr().err

    def test_unwritable(self, tmp_path, capsys):
        target = tmp_path / "missing" / "out.csv"
        assert run(capsys, "negativity-sweep", "--n", "1", "--steps", "3", "--out", str(target))[0] == cli.EXIT_IO


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "werner_channels", "classify", "--p", "0.5", "--n", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classification"] == "entangled"
