import json
import subprocess
import sys

import pytest

from homalg import catalog
from homalg.cli import main
from homalg.structfile import load_structure


@pytest.fixture
def emitted(tmp_path):
    def make(name, mutate=False):
        path = tmp_path / f"{name}{'-bad' if mutate else ''}.yaml"
        path.write_text(catalog.mutated(name) if mutate else catalog.emit(name), encoding="utf-8")
        return str(path)
    return make


def test_mutations_are_one_byte():
    for e in catalog.ENTRIES.values():
        text = catalog.emit(e.name)
        assert text.count(e.old) == 1 and len(e.old) == len(e.new)
        assert sum(a != b for a, b in zip(e.old, e.new)) == 1
        bad = catalog.mutated(e.name)
        assert sum(a != b for a, b in zip(text, bad)) == 1


@pytest.mark.parametrize("name", catalog.names())
def test_builtin_verifies(name, emitted, capsys):
    assert main(["verify", emitted(name)]) == 0
    assert ": PASS" in capsys.readouterr().out


@pytest.mark.parametrize("name", catalog.names())
def test_mutated_builtin_fails_with_named_axiom(name, emitted, capsys):
    assert main(["verify", emitted(name, mutate=True)]) == 1
    out = capsys.readouterr().out
    failed = out.strip().splitlines()[-1]
    assert failed.startswith("failed: ") and len(failed) > len("failed: ")


def test_json_and_report(emitted, tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["verify", emitted("dim2-homlie"), "--json", "--timing",
                 "--report", str(report)]) == 0
    printed = json.loads(capsys.readouterr().out)
    written = json.loads(report.read_text())
    assert printed["passed"] and written["passed"]
    assert "timing_seconds" in printed
    assert {c["status"] for c in written["checks"]} == {"pass"}


def test_json_witness_on_failure(emitted, capsys):
    assert main(["verify", emitted("dim2-homlie", mutate=True), "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    bad = [c for c in data["checks"] if c["status"] == "fail"]
    assert bad and set(bad[0]["witness"]) == {"assignment", "lhs", "rhs"}


def test_axioms_only_skips_identity_catalog(emitted, capsys):
    main(["verify", emitted("tangent"), "--axioms-only"])
    assert "identity." not in capsys.readouterr().out
    main(["verify", emitted("tangent")])
    assert "identity.Lied6" in capsys.readouterr().out


@pytest.mark.parametrize("text", [
    "kind: homlie\nname: [\n",
    'kind: homlie\nname: "h"\ndim: 2\ntwist:\n  - ["1", "0"]\n  - ["0", "0"]\nbrackets: {}\n',
    'kind: homlie\nname: "h"\ndim: 2\ntwist:\n  - ["1", "0"]\n  - ["0", "1"]\n'
    'brackets:\n  "1,2": {3: "1"}\n',
    "kind: wat\n",
])
def test_malformed_input_exit_2(text, tmp_path, capsys):
    f = tmp_path / "bad.yaml"
    f.write_text(text)
    assert main(["verify", str(f)]) == 2
    err = capsys.readouterr().err
    assert "line " in err and "column " in err


def test_missing_file_exit_2(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "nope.yaml")]) == 2
    assert "cannot read" in capsys.readouterr().err


@pytest.mark.parametrize("name,target,kind", [
    ("xy-poisson", "cotangent", "algebroid"),
    ("xy-poisson", "bialgebroid", "bialgebroid"),
])
def test_derive_from_poisson(name, target, kind, emitted, tmp_path, capsys):
    out = tmp_path / "out.yaml"
    assert main(["derive", emitted(name), target, "--out", str(out)]) == 0
    sf = load_structure(out)
    assert sf.kind == kind
    assert main(["verify", str(out), "--axioms-only"]) == 0


def test_bialgebroid_pipeline(emitted, tmp_path):
    b = tmp_path / "b.yaml"
    assert main(["derive", emitted("xy-poisson"), "bialgebroid", "--out", str(b)]) == 0
    for target, kind in (("dual", "bialgebroid"), ("double", "courant"),
                         ("induced-poisson", "poisson")):
        out = tmp_path / f"{target}.yaml"
        assert main(["derive", str(b), target, "--out", str(out)]) == 0
        assert load_structure(out).kind == kind
    text = (tmp_path / "induced-poisson.yaml").read_text()
    assert '"x*y"' in text


def test_derive_bialgebra_double(tmp_path):
    f = tmp_path / "bi.yaml"
    f.write_text('kind: bialgebra\nname: "b"\ndim: 2\n'
                 'g:\n  twist:\n    - ["1", "0"]\n    - ["0", "3"]\n  brackets:\n    "1,2": {2: "1"}\n'
                 'dual:\n  twist:\n    - ["1", "0"]\n    - ["0", "1/3"]\n  brackets:\n    "1,2": {2: "1"}\n')
    out = tmp_path / "d.yaml"
    assert main(["verify", str(f)]) == 0
    assert main(["derive", str(f), "double", "--out", str(out)]) == 0
    assert load_structure(out).kind == "homlie"


def test_derive_incompatible_kind_exit_2(emitted, capsys):
    assert main(["derive", emitted("dim2-homlie"), "cotangent"]) == 2
    assert "cannot derive" in capsys.readouterr().err


def test_derive_failing_precondition_exit_1(emitted, capsys):
    assert main(["derive", emitted("xy-poisson", mutate=True), "cotangent"]) == 1
    assert "precondition" in capsys.readouterr().err


def test_catalog_list_and_emit(tmp_path, capsys):
    assert main(["catalog", "list"]) == 0
    listed = capsys.readouterr().out
    assert all(n in listed for n in catalog.names())
    assert main(["catalog", "emit", "nope"]) == 2
    out = tmp_path / "t.yaml"
    assert main(["catalog", "emit", "tangent", "--out", str(out)]) == 0
    assert out.read_text() == catalog.emit("tangent")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "homalg", "catalog", "emit", "dim2-homlie"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == catalog.emit("dim2-homlie")
    proc = subprocess.run([sys.executable, "-m", "homalg", "verify", "-"],
                          input=proc.stdout, capture_output=True, text=True)
    assert proc.returncode == 0
