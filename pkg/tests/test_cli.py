import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from cirlab.cli import main
from cirlab.render import parse_pbm


def schema(name):
    return json.loads(resources.files("cirlab").joinpath("schemas", f"{name}.json").read_text())


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_csv_rule158(capsys):
    code, out, _ = call(capsys, "simulate", "--rule", "158", "--steps", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["bits"] for r in rows] == ["1", "111", "11101", "1110011"]


def test_simulate_rule0_empty_rows(capsys):
    code, out, _ = call(capsys, "simulate", "--rule", "0", "--steps", "5", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("simulate"))
    assert doc["rows"][0] == "0:1" and all(r == "0:" for r in doc["rows"][1:])


def test_simulate_ascii_sierpinski(capsys):
    code, out, _ = call(capsys, "simulate", "--rule", "90", "--steps", "8")
    lines = out.splitlines()
    assert len(lines) == 9 and all(len(l) == 17 for l in lines)
    assert lines[0].strip() == "█"
    assert lines[8] == "█" + " " * 15 + "█"
    assert lines[7] == " " + "█ " * 8


def test_simulate_pbm_width(capsys, tmp_path):
    path = tmp_path / "r30.pbm"
    code, out, _ = call(capsys, "simulate", "--rule", "30", "--steps", "256", "--format", "pbm", "-o", str(path))
    assert code == 0 and out == ""
    img = parse_pbm(path.read_text())
    assert img.shape == (257, 513)
    assert img[0, 256] == 1 and img[0].sum() == 1
    assert all(len(l) <= 70 for l in path.read_text().splitlines())


def test_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--rule", "999", "--steps", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--rule", "30", "--steps", "-3"])
    assert exc.value.code == 2
    assert call(capsys, "simulate", "--rule", "1", "--steps", "3")[0] == 3
    assert call(capsys, "predict", "--rule", "30", "--steps", "3")[0] == 3
    assert call(capsys, "bench", "--function", "LogisticFixedPoint", "--digits", "2", "--x0", "0.123", "--ns", "3")[0] == 2
    assert call(capsys, "witness", "--rule", "158", "--n", "4", "--snapshot-every", "0")[0] == 4
    capsys.readouterr()


def test_predict(capsys):
    code, out, _ = call(capsys, "predict", "--rule", "90", "--steps", "4")
    assert out == "-4:100000001\n"
    code, out, _ = call(capsys, "predict", "--rule", "158", "--steps", "4", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("predict"))
    assert doc["row"] == "-4:111011101"


def test_classify(capsys):
    code, out, _ = call(capsys, "classify", "--rules", "0,158,30", "--horizon", "128")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["rule"]: r["class"] for r in rows} == {"0": "Class1", "30": "Class4Candidate", "158": "Class3"}
    code, out, _ = call(capsys, "classify", "--rules", "1,2", "--horizon", "64", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("classify"))
    assert [r["class"] for r in doc["results"]] == ["Unsupported", "Class2"]
    assert call(capsys, "classify", "--horizon", "32")[0] == 2


def test_tm_build_run_compile(capsys, tmp_path):
    m = tmp_path / "eca158.json"
    assert call(capsys, "tm", "build", "--machine", "eca", "--rule", "158", "-o", str(m))[0] == 0
    code, out, _ = call(capsys, "tm", "run", "--machine", str(m), "--n", "3", "--decode")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("tm_run"))
    assert doc["halted"] and doc["rows"] == ["0:1", "-1:111", "-2:11101", "-3:1110011"]
    code, out, _ = call(capsys, "tm", "run", "--machine", str(m), "--n", "3", "--format", "dump")
    assert out.startswith("steps=") and "tape[1] head=" in out

    p2, p1 = tmp_path / "p2.json", tmp_path / "p1.json"
    call(capsys, "tm", "build", "--machine", "palindrome2", "-o", str(p2))
    assert call(capsys, "tm", "compile", "--machine", str(p2), "-o", str(p1))[0] == 0
    from cirlab.tm import compiled_output, load_spec, run

    comp = load_spec(p1)
    for x in ["", "0", "0110", "0111", "10101"]:
        assert compiled_output(run(comp, [x]), 2) == ("1" if x == x[::-1] else "0")


def test_tm_bad_machine_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"tapes": 2}')
    assert call(capsys, "tm", "run", "--machine", str(bad), "--input", "01")[0] == 2
    assert call(capsys, "tm", "run", "--machine", str(tmp_path / "missing.json"), "--input", "01")[0] == 2


def test_complexity_outputs(capsys):
    code, out, _ = call(capsys, "complexity", "--rule", "30", "--steps", "512")
    lines = out.splitlines()
    assert lines[0] == "n,k_row,k_n,margin,depth_proxy" and len(lines) == 513
    code, out, _ = call(capsys, "complexity", "--rule", "30", "--steps", "64", "--format", "json")
    jsonschema.validate(json.loads(out), schema("complexity_def1"))
    code, out, _ = call(capsys, "complexity", "--rule", "4", "--steps", "64", "--indicator", "def23", "--format", "json")
    jsonschema.validate(json.loads(out), schema("complexity_def23"))
    code, out, _ = call(capsys, "complexity", "--random", "2000", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("complexity_string"))
    assert doc["compressed_bits"] > 1800


def test_seeded_randomness(capsys):
    a = call(capsys, "--seed", "5", "complexity", "--random", "500")[1]
    b = call(capsys, "--seed", "5", "complexity", "--random", "500")[1]
    c = call(capsys, "--seed", "6", "complexity", "--random", "500", "--compressor", "lz78")[1]
    assert a == b and a != c


def test_bench(capsys):
    code, out, _ = call(capsys, "bench", "--function", "Pow2Decimal", "--ns", "64,128,256")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["n"]) for r in rows] == [64, 128, 256]
    code, out, _ = call(capsys, "bench", "--function", "Rule30Row", "--ns", "16,32", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("bench"))
    assert all(r["direct_work"] is None for r in doc["rows"])


def test_witness(capsys):
    code, out, _ = call(capsys, "witness", "--rule", "158", "--n", "8", "--machine", "rule158-direct")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("witness"))
    assert doc["holds"] is False and doc["failed_condition"] == "ii" and doc["reason"]
    code, out, _ = call(capsys, "witness", "--rule", "158", "--n", "8")
    assert json.loads(out)["holds"] is True


def test_report(capsys):
    code, out, _ = call(capsys, "report", "--rule", "158", "--horizon", "64")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("report"))
    assert doc["class"] == "Class3" and doc["predictor"] == "Rule158Pattern"


@pytest.mark.parametrize("argv", [
    ["simulate", "--rule", "110", "--steps", "40", "--format", "pbm"],
    ["classify", "--rules", "30,90", "--horizon", "64"],
    ["complexity", "--rule", "110", "--steps", "32"],
    ["bench", "--function", "NthPrime", "--ns", "10,100"],
])
def test_byte_determinism(tmp_path, capsys, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    main(argv + ["-o", str(a)])
    main(argv + ["-o", str(b)])
    assert a.read_bytes() == b.read_bytes()
