import os

from bin.cli import run


def _result(out):
    return out.strip().splitlines()[-1]


def test_norm(capsys, tmp_path):
    assert run(["--config-dir", str(tmp_path), "norm", "2/5"]) == 0
    out = capsys.readouterr().out
    assert "[0;2,2] norm=4" in out
    assert _result(out) == "RESULT ok norm slope=2/5 norm=4"


def test_bound(capsys, tmp_path):
    assert run(["--config-dir", str(tmp_path), "bound", "sfs o a=0 b=1 fibres=2/1,3/1"]) == 0
    out = capsys.readouterr().out
    assert "upper bound: 622" in out
    assert "complexity proxy: 7" in out


def test_bad_slope_is_an_input_error(capsys, tmp_path):
    assert run(["--config-dir", str(tmp_path), "norm", "x/y"]) == 2
    assert _result(capsys.readouterr().out) == "RESULT fail norm error=PreconditionError"


def test_unknown_verb_is_an_input_error(tmp_path):
    assert run(["--config-dir", str(tmp_path), "census"]) == 2


def test_broken_file_exits_with_two(capsys, tmp_path):
    path = tmp_path / "broken.tri"
    path.write_text("tri 2\n0 0 : 1 0 0123\n", encoding="utf-8")
    assert run(["--config-dir", str(tmp_path), "verify", str(path)]) == 2
    out = capsys.readouterr().out
    assert "line 2" in out


def test_missing_file_exits_with_two(tmp_path):
    assert run(["--config-dir", str(tmp_path), "verify", str(tmp_path / "absent.tri")]) == 2


def test_lst_then_verify(capsys, tmp_path):
    out_file = str(tmp_path / "lst.tri")
    assert run(["--config-dir", str(tmp_path), "lst", "7", "3", "--out", out_file]) == 0
    assert os.path.exists(out_file)
    assert run(["--config-dir", str(tmp_path), "verify", out_file]) == 0
    assert "valid=yes" in _result(capsys.readouterr().out)


def test_build_then_verify(capsys, tmp_path):
    out_file = str(tmp_path / "sfs.tri")
    assert run(["--config-dir", str(tmp_path), "build", "sfs n a=1 b=1 fibres=2/1", "--out", out_file]) == 0
    assert _result(capsys.readouterr().out).startswith("RESULT ok build")
    assert run(["--config-dir", str(tmp_path), "homology", out_file, "1"]) == 0
    assert _result(capsys.readouterr().out) == "RESULT ok homology k=1 group=Z+Z/4"


def test_disabled_verb(capsys, tmp_path):
    (tmp_path / ".sfstri.yaml").write_text("use_case_options:\n  walk:\n    enabled: false\n", encoding="utf-8")
    assert run(["--config-dir", str(tmp_path), "walk", "1/3"]) == 2
    assert "disabled" in capsys.readouterr().out


def test_bad_configuration(tmp_path):
    (tmp_path / ".sfstri.yaml").write_text("grid: [\n", encoding="utf-8")
    assert run(["--config-dir", str(tmp_path), "norm", "1/2"]) == 2
