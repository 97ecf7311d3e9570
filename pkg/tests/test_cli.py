import json

import pytest

from lftrees.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.mark.parametrize("p", ["7", "2"])
def test_verify_matfrm_builtin(capsys, p):
    code, out, _ = run(capsys, "verify-matfrm", "--p", p)
    assert code == 0 and out.rstrip().endswith("PASS")


def test_verify_matfrm_degenerate_params(capsys):
    # d = h = 1, delta = 2 makes X vanish over F_5
    code, _, err = run(capsys, "verify-matfrm", "--p", "5", "--params", "1,1,1,2")
    assert code == 2 and "DegenerateXY" in err


def test_verify_matfrm_custom_params_run(capsys):
    code, doc = run_json(capsys, "verify-matfrm", "--p", "5", "--params", "1,x,x,x")
    assert code == 0 and doc["pass"]


@pytest.mark.parametrize("p,s", [("3", -1), ("2", -2)])
def test_certify_surface(capsys, p, s):
    code, doc = run_json(capsys, "certify-surface", "--p", p)
    assert code == 0 and doc["pass"] and doc["schema"] == 1
    assert doc["stages"]["free_discrete"]["s"] == s


def test_certify_surface_not_prime(capsys):
    code, _, err = run(capsys, "certify-surface", "--p", "4")
    assert code == 2 and "NotPrime" in err


def test_word_commands(capsys):
    code, out, _ = run(capsys, "word", "--p", "5", "--nf", "abABcdCD")
    assert code == 0 and out.startswith("identity")
    code, out, _ = run(capsys, "word", "--p", "5", "--eval", "abAB")
    assert code == 0 and "[0, " in out
    code, doc = run_json(capsys, "word", "--p", "5", "--loxodromify", "ac,bd")
    assert code == 0 and doc["n"] == 2 and set(doc["valuations"]) == {"ac", "bd"}


def test_word_parse_error(capsys):
    code, _, err = run(capsys, "word", "--p", "5", "--nf", "abz")
    assert code == 2 and "ParseError" in err


def test_bt_commands(capsys):
    code, out, _ = run(capsys, "bt", "--p", "5", "--place", "x", "--classify", "[[x,0],[0,1/x]]")
    assert code == 0 and out.startswith("loxodromic, translation length 2")
    code, doc = run_json(capsys, "bt", "--p", "2", "--neighbors", "base")
    assert code == 0 and len(doc["neighbors"]) == 3
    code, doc = run_json(capsys, "bt", "--p", "3", "--place", "x", "--fixed", "[[1,1/x],[0,1]]")
    assert code == 0 and doc["displacement"] == 0


def test_bt_distance_and_place_mismatch(capsys):
    code, doc = run_json(capsys, "bt", "--p", "5", "--place", "x", "--dist", "[[1,0],[0,1]]", "[[x,0],[0,1/x]]")
    assert code == 0 and doc["distance"] == 2
    code, _, err = run(capsys, "bt", "--p", "5", "--dist", "[[1,0],[0,1]]@x", "[[1,0],[0,1]]@inf")
    assert code == 2 and "PlaceMismatch" in err


def test_coset_commands(capsys):
    code, doc = run_json(capsys, "coset", "--family", "lamp", "--stabiliser", "default-vertices")
    assert code == 0 and doc["elements"] == ["1", "x[0]"]
    code, doc = run_json(capsys, "coset", "--family", "houghton", "--stabiliser", "i=2 j=-1")
    assert code == 0 and len(doc["elements"]) == 24
    code, doc = run_json(capsys, "coset", "--family", "lamp2", "--stabiliser", "base4")
    assert code == 0 and doc["elements"] == ["1", "x[0,0]"]
    code, doc = run_json(capsys, "coset", "--family", "lamp", "--group", "S3", "--stabiliser", "default-vertices")
    assert code == 0 and len(doc["elements"]) == 6
    code, out, _ = run(capsys, "coset", "--family", "lamp", "--classify", "x[0] t", "--tree", "1")
    assert code == 0 and "loxodromic" in out


def test_out_file(capsys, tmp_path):
    target = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify-surface", "--p", "5", "--format", "json", "--out", str(target))
    assert code == 0 and json.loads(target.read_text())["pass"]
