import json
import subprocess
import sys

import pytest

from merosurf.builders import bubbled_torus, parallelogram_datum
from merosurf.construction import save_datum
from merosurf.exact import QQi


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "merosurf.cli", *argv],
                          capture_output=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture(scope="module")
def datum_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "torus.json"
    d, z = bubbled_torus(1, (3,))
    save_datum(str(path), d, z)
    return str(path)


@pytest.fixture(scope="module")
def para_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "para.json"
    save_datum(str(path), parallelogram_datum(),
               (QQi(1, 1), QQi(1, -1)))
    return str(path)


def test_classify_text_output():
    code, out, _err = run_cli("classify", "H(24,-24)")
    assert code == 0
    lines = out.decode().strip().splitlines()
    assert len(lines) == 7
    assert lines[0].startswith("Rotation(1)")


def test_classify_empty_stratum():
    code, out, _err = run_cli("classify", "H(1,-1)")
    assert code == 0
    assert out.decode().strip() == "empty stratum"


def test_classify_json_schema():
    code, out, _err = run_cli("classify", "H(4,4,-1,-1)", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert [c["label"] for c in doc["components"]] == \
        ["Hyperelliptic", "SpinEven", "SpinOdd"]


def test_malformed_signature_exit_code():
    code, _out, err = run_cli("classify", "H(2,-3)")
    assert code == 2
    assert b"error" in err


def test_unknown_flag_is_error():
    code, _out, _err = run_cli("classify", "H(2,-2)", "--frobnicate")
    assert code == 2


def test_build_and_invariants(datum_file):
    code, out, _err = run_cli("build", "--datum", datum_file)
    assert code == 0
    text = dict(line.split("\t") for line in out.decode().splitlines())
    assert text["stratum"] == "H(3,-3)"
    assert text["genus"] == "1"

    code, out, _err = run_cli("invariants", "--datum", datum_file)
    assert code == 0
    report = dict(line.split("\t") for line in out.decode().splitlines())
    assert report["stratum"] == "H(3,-3)"
    assert report["rotation_number"] == "1"
    assert report["zippered_involution"] == "False"


def test_oracle_outputs():
    code, out, _err = run_cli("oracle", "--mode", "pq", "--stratum", "H(4,-4)")
    assert code == 0
    lines = out.decode().splitlines()
    assert lines[0] == "classes\t2"
    code, out, _err = run_cli("oracle", "--mode", "bubble",
                              "--stratum", "H(4,-2)")
    assert code == 0
    assert out.decode().splitlines()[0] == "classes\t2"


def test_census_tsv(para_file):
    code, out, _err = run_cli("census", "--datum", para_file,
                              "--bound", "10", "--kind", "sc")
    assert code == 0
    assert len(out.decode().strip().splitlines()) == 2
    code, out, _err = run_cli("census", "--datum", para_file,
                              "--bound", "10", "--kind", "cyl")
    assert code == 0
    assert out.decode().strip() == ""


def test_render_svg(datum_file, tmp_path):
    out_path = tmp_path / "fig.svg"
    code, _out, _err = run_cli("render", "--datum", datum_file,
                               "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    assert text.startswith("<?xml")
    assert "<svg" in text and 'r="3"' in text


def test_missing_datum_file():
    code, _out, err = run_cli("invariants", "--datum", "/nonexistent.json")
    assert code == 2


def test_cli_deterministic(datum_file):
    first = run_cli("invariants", "--datum", datum_file)
    second = run_cli("invariants", "--datum", datum_file)
    assert first == second
    a = run_cli("oracle", "--mode", "pq", "--stratum", "H(12,-12)",
                "--workers", "4")
    b = run_cli("oracle", "--mode", "pq", "--stratum", "H(12,-12)",
                "--workers", "4")
    assert a == b
