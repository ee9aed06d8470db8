import json
import os

import pytest

from quartic_orders.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "1,1,0,0,1")
    assert code == 0
    assert "totally complex: yes" in out and "field discriminant: 229" in out
    assert "quadratic subfields: none" in out
    code, out, _ = run(capsys, "field-info", "1,1,1,1,1", "--S", "2,5")
    assert "quadratic subfield: x^2 - x - 1 (real)" in out
    assert "splitting p=5:(4,1) non-decomposed" in out


def test_errors_are_one_line(capsys):
    for argv, code_word in ((["field-info", "0,0,0,0,1"], "E_REDUCIBLE"),
                            (["field-info", "1,a"], "E_PARSE"),
                            (["census", "--S", "2,3,5"], "E_ODD_S"),
                            (["census", "--S", "2,4"], "E_NOT_PRIME"),
                            (["nonsense"], "E_USAGE"),
                            ([], "E_USAGE")):
        code, _, err = run(capsys, *argv)
        assert code != 0
        lines = err.strip().splitlines()
        assert len(lines) == 1 and lines[0].startswith(f"error: {code_word}:"), err


def test_verify_correspondence(capsys):
    code, out, _ = run(capsys, "verify-correspondence", "1,1,1,1,1", "--S", "2,5")
    assert code == 0
    assert "in C^c(S): no" in out and "weakly neat: no" in out and "all identities: pass" in out
    code, out, _ = run(capsys, "verify-correspondence", "1,1,0,0,1", "--S", "2,7")
    assert code == 0 and "weakly neat: yes" in out and "all identities: pass" in out
    assert " ± " in out
    code, _, err = run(capsys, "verify-correspondence", "1,1,0,0,1", "--S", "3,5")
    assert code == 1 and "E_DECOMPOSED: prime 3 decomposes" in err
    code, _, err = run(capsys, "verify-correspondence", "1,1,0,0,1", "--S", "2,3")
    assert "prime 3" in err


def test_order_invariants(capsys):
    code, out, _ = run(capsys, "order-invariants", "1,1,0,0,1", "--S", "5,7", "--index-bound", "4")
    assert code == 0
    assert "order index 4: disc 3664" in out and "  h: 2" in out
    code, out, _ = run(capsys, "order-invariants", "1,1,0,0,1", "--S", "5,7", "--index-bound", "4", "--invertible-only")
    assert "h (invertible): 1" in out
    code, out, _ = run(capsys, "order-invariants", "1,1,1,1,1", "--S", "2,5", "--regulator-convention", "paper-a")
    assert "R: 0.481211825059603" in out


def test_census_determinism_and_cache(capsys, tmp_path):
    cache = tmp_path / "new" / "cache"
    outs = []
    for k, workers in enumerate((1, 2, 1)):
        d = tmp_path / f"out{k}"
        code, out, _ = run(capsys, "census", "--S", "2,3", "--disc-bound", "200", "--index-bound", "2",
                           "--cache-dir", str(cache), "--out-dir", str(d), "--workers", str(workers), "--x", "1,1.5")
        assert code == 0 and "lower bound" in out
        outs.append(d)
    assert cache.is_dir() and os.listdir(cache) == ["fields_200.txt"]
    names = sorted(os.listdir(outs[0]))
    assert names == ["census_S2-3_d200_i2.csv", "census_S2-3_d200_i2.json"]
    for d in outs[1:]:
        for name in names:
            assert (d / name).read_bytes() == (outs[0] / name).read_bytes()
    report = json.loads((outs[0] / names[1]).read_text())
    assert [r["x"] for r in report] == [1.0, 1.5]
    assert report[0]["coverage"]["fields"] == 4


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# census settings\nS = 2,3\ndiscBound = 130\nindexBound = 1\n")
    code, out, _ = run(capsys, "census", "--config", str(cfg), "--out-dir", str(tmp_path), "--cache-dir",
                       str(tmp_path / "c"))
    assert code == 0 and "2 fields" in out
    code, out, _ = run(capsys, "census", "--config", str(cfg), "--disc-bound", "120", "--out-dir", str(tmp_path),
                       "--cache-dir", str(tmp_path / "c"))
    assert "1 fields" in out
    cfg.write_text("bogus = 1\n")
    code, _, err = run(capsys, "census", "--config", str(cfg))
    assert code != 0 and err.startswith("error: E_CONFIG:")
    code, _, err = run(capsys, "census", "--config", str(tmp_path / "missing.cfg"))
    assert err.startswith("error: E_IO:")


def test_baseline_quadratic(capsys):
    code, out, _ = run(capsys, "baseline-quadratic", "--x", "1000")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("x,gauss_siegel,main_term")
    assert len(lines) == 11 and lines[-1].startswith("1000,")
    code, out, _ = run(capsys, "baseline-quadratic", "--x", "0")
    assert code == 0 and len(out.strip().splitlines()) == 1
    code, _, err = run(capsys, "baseline-quadratic", "--x", "1e7")
    assert code == 3 and "E_RESOURCE" in err and "--allow-large" in err
