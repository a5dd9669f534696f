import subprocess
import sys

import pytest

from conftest import FIXTURES

STONE = str(FIXTURES / "stone.spec")
HN = str(FIXTURES / "higman_neumann.spec")


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "msalg.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_check_ok():
    code, out, _ = run_cli("check", "--file", STONE)
    assert code == 0
    assert "2 signatures" in out


def test_check_error_exit_2(tmp_path):
    bad = tmp_path / "bad.spec"
    bad.write_text("signature X { sort s; op f : s ->; }")
    code, _, err = run_cli("check", "--file", str(bad))
    assert code == 2
    assert "error:" in err


def test_missing_file_exit_2():
    code, _, err = run_cli("check", "--file", "no_such_file.spec")
    assert code == 2


def test_satisfy_true_and_false(tmp_path):
    doc = tmp_path / "doc.spec"
    doc.write_text("""
    signature B { sort s; op zero : -> s; op add : s s -> s; }
    algebra z2 { use B;
      carrier s = 0 1;
      table zero { row -> 0; }
      table add { row 0 0 -> 0; row 0 1 -> 1; row 1 0 -> 1; row 1 1 -> 0; }
    }
    equation comm : B (s s) add(v0, v1) = add(v1, v0);
    equation bad : B (s) add(v0, v0) = v0;
    """)
    code, out, _ = run_cli("satisfy", "--file", str(doc), "--algebra", "z2",
                           "--equation", "comm")
    assert code == 0 and "holds" in out
    code, out, _ = run_cli("satisfy", "--file", str(doc), "--algebra", "z2",
                           "--equation", "bad")
    assert code == 1 and "fails" in out


def test_satisfy_whole_spec():
    code, out, _ = run_cli("satisfy", "--file", STONE, "--algebra", "z2", "--spec", "BRax")
    assert code == 0
    assert out.count("holds") == 10


def test_eval(tmp_path):
    doc = tmp_path / "doc.spec"
    doc.write_text("""
    signature B { sort s; op one : -> s; op add : s s -> s; }
    algebra z2 { use B;
      carrier s = 0 1;
      table one { row -> 1; }
      table add { row 0 0 -> 0; row 0 1 -> 1; row 1 0 -> 1; row 1 1 -> 0; }
    }
    term t : B (s s) = add(add(v0, v1), one);
    """)
    code, out, _ = run_cli("eval", "--file", str(doc), "--algebra", "z2",
                           "--term", "t", "--args", "1,1")
    assert code == 0 and out.strip() == "1"
    code, _, err = run_cli("eval", "--file", str(doc), "--algebra", "z2",
                           "--term", "t", "--args", "1")
    assert code == 2


def test_translate(tmp_path):
    doc = tmp_path / "doc.spec"
    doc.write_text("""
    signature BA { sort s; op join : s s -> s; }
    signature BR { sort s; op add : s s -> s; op mul : s s -> s; }
    morphism d : BA -> BR { sort s -> (s); op join -> ( add(add(v0, v1), mul(v0, v1)) ); }
    term t : BA (s s) = join(v1, v0);
    """)
    code, out, _ = run_cli("translate", "--file", str(doc), "--morphism", "d",
                           "--term", "t")
    assert code == 0
    assert "add(add(v1, v0), mul(v1, v0))" in out


def test_reduct_prints_parseable_algebra(tmp_path):
    code, out, _ = run_cli("reduct", "--file", STONE, "--morphism", "d",
                           "--algebra", "z2", "--name", "b2")
    assert code == 0
    from msalg.speclang import parse
    ws = parse(out)
    assert "b2" in ws.algebras


def test_compose_prints_parseable_morphism():
    code, out, _ = run_cli("compose", "--file", STONE, "--outer", "d",
                           "--inner", "e", "--name", "dc")
    assert code == 0
    from msalg.speclang import parse
    ws = parse(out)
    assert "dc" in ws.morphisms


def test_check_transformation_stone_example():
    code, out, _ = run_cli("check-transformation", "--file", STONE, "--xi", "L",
                           "--from", "dcomp", "--to", "idBR",
                           "--spec", "BRax", "--models", "z2,z2xz2")
    assert code == 0
    assert out.strip() == "VerifiedOnModels(2)"


def test_check_transformation_higman_neumann():
    code, out, _ = run_cli("check-transformation", "--file", HN, "--xi", "K",
                           "--from", "edcomp", "--to", "idGD",
                           "--spec", "GDax", "--models", "c1,c2,c3,c4,v4,c5,c6,s3")
    assert code == 0
    assert out.strip() == "VerifiedOnModels(8)"


def test_check_transformation_wrong_endpoints():
    code, _, err = run_cli("check-transformation", "--file", STONE, "--xi", "L",
                           "--from", "idBR", "--to", "idBR")
    assert code == 2


def test_hall_benabou_verify():
    code, out, _ = run_cli("hall-benabou", "verify", "--sorts", "s", "--bound", "2")
    assert code == 0
    assert "FAIL" not in out
    assert "spec-morphism d [Proved]: ok" in out


def test_hall_benabou_generate_round_trips():
    code, out, _ = run_cli("hall-benabou", "generate", "--sorts", "s", "--bound", "1")
    assert code == 0
    from msalg.speclang import parse
    ws = parse(out)
    assert "HallSig" in ws.signatures and "BenabouSig" in ws.signatures
