import io
import os
import subprocess
import sys

import pytest

from homalg.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def data(name):
    return os.path.join(DATA, name)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def machine(text):
    return text.split("\n---\n", 1)[1]


@pytest.fixture
def cachedir(tmp_path):
    return str(tmp_path / "cache")


def test_gldim_certificate(cachedir):
    code, text = run("gldim", data("nakayama3.alg"), "--bound", "20", "--cache", cachedir)
    assert code == 0
    assert "gldim = InfiniteCertified: Omega^3(S_1) ≅ Omega^0(S_1)<-3>" in machine(text)


def test_ext_polynomial(cachedir):
    code, text = run("ext", data("nakayama3.alg"), "--e", "1", "--bound", "30", "--cache", cachedir)
    assert code == 0
    assert "not finite-dimensional up to bound" in text
    m = machine(text)
    assert "dims = " + ",".join("1" if t % 3 == 0 else "0" for t in range(31)) in m
    assert "findim = NotFiniteDimUpToBound" in m
    assert "ext_quiver = none" in m


def test_check_two_of_three(cachedir):
    code, text = run("check", "twoofthree", data("a2.alg"), "--e", "1", "--cache", cachedir)
    assert code == 0
    assert "status = PASS" in machine(text)


def test_parse_error_exit_code(capsys):
    code, _ = run("info", data("bad.alg"))
    assert code == 3
    err = capsys.readouterr().err
    assert "bad.alg:3:11" in err
    assert "undeclared vertex" in err


def test_validation_errors():
    assert run("info", data("missing.alg"))[0] == 3
    assert run("ext", data("a2.alg"), "--e", "9", "--no-cache")[0] == 3
    assert run("gldim", data("a2.alg"), "--bound", "-1")[0] == 3
    assert run("info", data("a2.alg"), "--field", "F4")[0] == 3
    assert run("check", "nonsense", data("a2.alg"))[0] == 3
    assert run("sweep", "cube(3)")[0] == 3
    assert run("frobnicate")[0] == 3


def test_inconclusive_exit_code(cachedir):
    code, _ = run("cartan", data("nakayama3.alg"), "--e", "1", "--bound", "6", "--cache", cachedir)
    assert code == 2


def test_field_override(cachedir):
    code, text = run("info", data("a3rad2.alg"), "--field", "F7", "--cache", cachedir)
    assert code == 0
    assert "field = F7" in machine(text)


def test_gamma_output_reloads(tmp_path, cachedir):
    out = str(tmp_path / "gamma.alg")
    code, _ = run("gamma", data("nakayama3.alg"), "--e", "1", "--out", out, "--cache", cachedir)
    assert code == 0
    code2, text2 = run("info", out, "--no-cache")
    assert code2 == 0
    assert "dim = 3" in machine(text2)
    code3, text3 = run("info", out, "--field", "F7", "--no-cache")
    assert code3 == 0
    assert "field = F7" in machine(text3)


def test_resolve_and_cartan(cachedir):
    code, text = run("resolve", data("kx3.alg"), "--bound", "4", "--cache", cachedir)
    assert code == 0
    assert "S_1.P[2] = e_1A<-3>" in machine(text)
    code, text = run("cartan", data("a3rad2.alg"), "--e", "2", "--cache", cachedir)
    assert code == 0
    assert "det_W = 1" in machine(text)


def test_machine_blocks_are_byte_identical(tmp_path):
    cmds = [
        ("info", data("nakayama3.alg")),
        ("gldim", data("a3rad2.alg")),
        ("ext", data("nakayama3.alg"), "--e", "1,2", "--bound", "12"),
        ("cartan", data("a3rad2.alg"), "--e", "2"),
        ("check", "cartan", data("a3rad2.alg"), "--e", "2"),
        ("sweep", "linear(3);nakayama(2,2)", "--bound", "8"),
    ]
    for cmd in cmds:
        cold = machine(run(*cmd, "--no-cache")[1])
        warm1 = machine(run(*cmd, "--cache", str(tmp_path / "c"))[1])
        warm2 = machine(run(*cmd, "--cache", str(tmp_path / "c"))[1])
        assert cold == warm1 == warm2


def test_sweep_jobs_do_not_change_output(tmp_path):
    a = run("sweep", "linear(4)", "--bound", "10", "--no-cache", "--out", str(tmp_path / "a"))
    b = run("sweep", "linear(4)", "--bound", "10", "--no-cache", "--jobs", "3", "--out", str(tmp_path / "b"))
    assert a[0] == b[0] == 0
    assert machine(a[1]) == machine(b[1])


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "homalg.cli", "check", "twoofthree", data("a2.alg"), "--e", "1", "--no-cache"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "status = PASS" in proc.stdout


def test_fail_writes_reloadable_witness(tmp_path, monkeypatch):
    from homalg.harness import checks
    from homalg.harness.instance import instance_from_text

    def always_fails(inst):
        return checks._report("always_fails", inst, checks.FAIL, {"gldim_A": str(inst.analysis.gldim_A)})

    monkeypatch.setitem(checks.CHECKS, "always-fails", always_fails)
    out = tmp_path / "witness.alg"
    code, text = run("check", "always-fails", data("a3rad2.alg"), "--e", "2", "--bound", "7", "--no-cache", "--out", str(out))
    assert code == 1
    assert "status = FAIL" in machine(text)
    inst = instance_from_text(out.read_text())
    assert inst.support == ("2",) and inst.bound == 7
    assert always_fails(inst).status == checks.FAIL
