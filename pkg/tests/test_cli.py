import io
import json
import subprocess
import sys

import pytest

from qdilog.cli import main, suite_convexity, suite_psi_R, suite_ring_laws


def run(argv):
    out = io.StringIO()
    old = sys.stdout
    sys.stdout = out
    try:
        code = main(argv)
    finally:
        sys.stdout = old
    return code, out.getvalue()


def test_verify_json():
    code, text = run(["verify", "--case", "A1-y", "--degree", "8", "--format", "json"])
    assert code == 0
    body = json.loads(text)
    assert body["equal"] is True and body["id"] == "A1-y" and body["degree"] == 8
    assert set(body) == {"id", "degree", "equal", "counts", "witness", "millis"}


def test_verify_text_and_out(tmp_path):
    path = tmp_path / "r.txt"
    code, text = run(["verify", "--case", "A1-y", "A1-dgs", "--degree", "5", "--out", str(path)])
    assert code == 0 and text == ""
    lines = path.read_text()
    assert "A1-y" in lines and "A1-dgs" in lines and "NOT EQUAL" not in lines


def test_verify_dgs_cases():
    code, _ = run(["verify", "--case", "A2-dgs", "A3-dgs", "D4-dgs", "--degree", "12"])
    assert code == 0


def test_verify_failure_exit_code(monkeypatch):
    from qdilog import cli, identities

    def fake(args):
        ident = identities.IdentityCase.get(args[0], args[1])
        ident.drop_rhs_factor = 0
        return identities.verify(ident)
    monkeypatch.setattr(cli, "_verify_one", fake)
    code, text = run(["verify", "--case", "A1-y", "--degree", "4"])
    assert code == 1 and "NOT EQUAL" in text


def test_order():
    code, text = run(["order", "--case", "A1", "--count", "3"])
    assert code == 0 and text.strip() == "d-a1, 2d-a1, 3d-a1"
    code, text = run(["order", "--case", "a2", "--count", "2"])
    assert text.strip() == "d-a1-a2, d-a2"


def test_root_vector():
    code, text = run(["root-vector", "--case", "A2", "--family", "md-a1-a2", "--level", "2"])
    assert code == 0 and text.strip() == "[[0,1],[0,2]]"


def test_expand():
    code, text = run(["expand", "--case", "A1", "--side", "forward", "--degree", "2"])
    body = json.loads(text)
    assert code == 0 and body["case"] == "A1"
    assert [[0, 0], "1"] in body["terms"]


@pytest.mark.parametrize("argv", [
    ["verify", "--case", "B7-y"],
    ["verify", "--bogus"],
    ["order", "--case", "E8", "--count", "2"],
    ["order", "--case", "A1", "--count", "2", "--row", "5"],
    ["expand", "--case", "A1", "--side", "up"],
    ["verify", "--degree", "-1"],
    [],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_unknown_family_exit_code():
    code, _ = run(["root-vector", "--case", "A2", "--family", "nope", "--level", "1"])
    assert code == 2


def test_property_suites():
    assert suite_convexity(20) == []
    assert suite_psi_R(20) == []
    assert suite_ring_laws(20) == []


def test_selftest_and_module_entry():
    proc = subprocess.run([sys.executable, "-m", "qdilog", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.count("ok") == 3


def test_threads_env(monkeypatch):
    monkeypatch.setenv("QDILOG_THREADS", "2")
    code, text = run(["verify", "--case", "A1-y", "A2-y", "--degree", "4"])
    assert code == 0 and text.count("EQUAL") == 2
