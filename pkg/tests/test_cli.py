import json
from pathlib import Path

import pytest

from hodgesplit import BigradedSpace, LinearMap, serialization as ser
from hodgesplit.cli import run
from hodgesplit.splittings import FRep

DATA = Path(__file__).resolve().parent.parent / "data"


def report(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = run([*argv, "--out", str(out)])
    return code, json.loads(out.read_text())


def test_validate_kummer(tmp_path):
    code, rep = report(tmp_path, "validate", "--in", str(DATA / "kummer.mhs.json"))
    assert code == 0 and rep["status"] == 0 and rep["command"] == "validate"
    assert rep["result"]["opposed"] is True and rep["result"]["failure_class"] is None


def test_split_reports_certificate(tmp_path):
    code, rep = report(tmp_path, "split", "--in", str(DATA / "kummer.mhs.json"))
    assert code == 0
    res = rep["result"]
    assert res["unique"] is True
    assert sorted((d["p"], d["q"]) for d in res["deligne"]) == [(-1, -1), (0, 0)]
    assert res["pairing"]["endpoints"] == "mii"


def test_endpoint_flag_changes_pairing(tmp_path):
    _, a = report(tmp_path, "convert", "--in", str(DATA / "kummer.shs.json"), "--to", "frep")
    _, b = report(tmp_path, "convert", "--in", str(DATA / "kummer.shs.json"), "--to", "frep", "--endpoints", "0i")
    assert a["result"]["result"] == b["result"]["result"]
    assert a["result"]["pairing"]["summed_beta"] != b["result"]["pairing"]["summed_beta"]


@pytest.mark.parametrize("target", ["frep", "mhs", "sts"])
def test_convert_from_shs(tmp_path, target):
    code, rep = report(tmp_path, "convert", "--in", str(DATA / "kummer.shs.json"), "--to", target)
    assert code == 0 and rep["result"]["result"]["kind"] == target


def test_convert_rejects_unknown_direction(tmp_path):
    code, rep = report(tmp_path, "convert", "--in", str(DATA / "kummer.mhs.json"), "--to", "sts")
    assert code == 2 and rep["error"] == "ParseError"


def test_ext(tmp_path):
    code, rep = report(tmp_path, "ext", "--in", str(DATA / "ext-r-r1.pair.json"))
    assert code == 0 and rep["result"]["ext1"] == 1 and rep["result"]["four_term_exact"]


def test_rees_on_mhs(tmp_path):
    code, rep = report(tmp_path, "rees", "--in", str(DATA / "kummer.mhs.json"))
    assert code == 0 and rep["result"]["weight"]["flat"]


def test_dec_and_ss(tmp_path):
    code, rep = report(tmp_path, "dec", "--in", str(DATA / "d2.complex.json"))
    assert code == 0 and rep["result"]["ok"]
    code, rep = report(tmp_path, "ss", "--in", str(DATA / "d2.complex.json"))
    assert code == 0 and rep["result"]["converged"]
    assert [p["differential_rank"] for p in rep["result"]["pages"]][:3] == [0, 0, 1]


def test_pi_sphere(tmp_path):
    code, rep = report(tmp_path, "pi", "--in", str(DATA / "s2.dga.json"))
    assert code == 0
    res = rep["result"]
    assert (res["pi2"], res["pi3"], res["pi4"]) == (1, 1, 0) and res["stable"]


def test_pi_gysin_with_convention(tmp_path):
    code, rep = report(tmp_path, "pi", "--in", str(DATA / "gm.gysin.json"), "--weight-convention", "a+2b",
                       "--max-n", "1")
    assert code == 0
    assert rep["result"]["groups"]["1"]["weights"] == {"3": 1}
    assert rep["result"]["differential_label"] == "gysin"


def test_pi_truncation_is_reported(tmp_path):
    code, rep = report(tmp_path, "pi", "--in", str(DATA / "s2.dga.json"), "--truncate", "1")
    assert code == 5 and rep["status"] == 5 and rep["result"]["stable"] is False


def test_th(tmp_path):
    code, rep = report(tmp_path, "th", "--in", str(DATA / "constant-s2.cosimplicial.json"))
    assert code == 0 and rep["result"]["algebra"]["kind"] == "dga"
    code, rep = report(tmp_path, "th", "--in", str(DATA / "interval.cosimplicial.json"))
    assert code == 0 and rep["result"]["cohomology"]["0"] == 1


def test_defcone(tmp_path):
    code, rep = report(tmp_path, "defcone", "--in", str(DATA / "gm-abelian.defcone.json"))
    assert code == 0 and rep["result"]["equations"] == ["d2eta[0]: eta0 + eta1 = 0"]
    code, rep = report(tmp_path, "defcone", "--in", str(DATA / "quadric.defcone.json"))
    assert rep["result"]["equations"] == ["d2eta[0]: 1/2*omega0*omega0 = 0"]


def test_bad_json_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, rep = report(tmp_path, "validate", "--in", str(bad))
    assert code == 2 and rep["error"] == "ParseError"


def test_missing_file_exit_code(tmp_path):
    code, _ = report(tmp_path, "validate", "--in", str(tmp_path / "absent.json"))
    assert code == 2


def test_invariant_violation_exit_code(tmp_path):
    doc = json.loads((DATA / "kummer.shs.json").read_text())
    doc["beta"][0]["matrix"]["entries"] = [["0", "1"], ["0", "0"]]
    path = tmp_path / "bad-beta.json"
    path.write_text(json.dumps(doc))
    code, rep = report(tmp_path, "validate", "--in", str(path))
    assert code == 3 and rep["error"] == "InvariantError"


def test_rejection_exit_code(tmp_path):
    g = BigradedSpace.pure_type(1, 0, 0)
    path = tmp_path / "frep.json"
    path.write_text(ser.dumps(FRep(g, LinearMap.from_rows([[2]]))))
    code, rep = report(tmp_path, "convert", "--in", str(path), "--to", "shs")
    assert code == 4 and rep["error"] == "RejectionError"


def test_text_format(tmp_path, capsys):
    assert run(["validate", "--in", str(DATA / "s3.dga.json"), "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "command: validate" in out and "valid: true" in out


def test_reports_are_byte_identical(tmp_path, capsys):
    argv = ["pi", "--in", str(DATA / "cp2.dga.json")]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_zero_beta_converts_to_identity(tmp_path):
    code, rep = report(tmp_path, "convert", "--from", "shs", "--to", "frep", "--in", str(DATA / "zero-beta.json"))
    assert code == 0
    assert rep["result"]["result"]["d"]["entries"] == [["1", "0"], ["0", "1"]]


def test_pi_with_explicit_cap(tmp_path):
    code, rep = report(tmp_path, "pi", "--in", str(DATA / "s2.dga.json"), "--truncate", "6")
    assert code == 0
    assert {k: rep["result"][k] for k in ("pi2", "pi3", "stable")} == {"pi2": 1, "pi3": 1, "stable": True}


def test_from_flag_must_match_document(tmp_path):
    code, _ = report(tmp_path, "convert", "--from", "mhs", "--to", "frep", "--in", str(DATA / "zero-beta.json"))
    assert code == 2
