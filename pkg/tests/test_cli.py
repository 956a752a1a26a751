import json

import pytest

from conelab.cli import EXIT_INPUT, EXIT_OK, EXIT_VIOLATED, main


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data, indent=2), encoding="utf-8")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(capsys, *argv):
    code, out, _ = run(capsys, "--format", "structured", *argv)
    return code, json.loads(out), out


# group


def test_snf_of_four(tmp_path, capsys):
    f = write(tmp_path, "m.json", {"matrix": [["4"]]})
    code, out, _ = run(capsys, "group", "snf", f)
    assert code == EXIT_OK
    assert "d = [[4]]" in out and "cokernel: Z/4" in out


def test_snf_of_identity(tmp_path, capsys):
    f = write(tmp_path, "m.json", {"matrix": [["1", "0"], ["0", "1"]]})
    code, data, _ = structured(capsys, "group", "snf", f)
    assert code == EXIT_OK
    assert data["result"]["cokernel"]["free_rank"] == "0"
    assert data["result"]["cokernel"]["torsion_orders"] == []


def test_malformed_row_names_row_and_line(tmp_path, capsys):
    f = write(tmp_path, "bad.json", '{\n  "matrix": [\n    ["1", "2"],\n    ["3"]\n  ]\n}\n')
    code, _, err = run(capsys, "group", "snf", f)
    assert code == EXIT_INPUT
    assert f"{f}:4:" in err and "row 2 has 1 entries" in err


def test_present_veronese(tmp_path, capsys):
    f = write(tmp_path, "v.json", {"generators": "4", "labels": ["R", "S1", "S2", "S3"],
                                   "relations": [["0", "1", "0", "-3"], ["0", "0", "1", "-2"],
                                                 ["0", "0", "0", "4"]]})
    code, out, _ = run(capsys, "group", "present", f)
    assert code == EXIT_OK and "group: Z + Z/4" in out


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "group", "snf", str(tmp_path / "nope.json"))
    assert code == EXIT_INPUT and "cannot read" in err


# cone


WEDGE = {"generators": [["1", "0"], ["1", "1"]]}


def test_cone_facets_canonical_order(tmp_path, capsys):
    f = write(tmp_path, "c.json", WEDGE)
    code, data, _ = structured(capsys, "cone", "facets", f)
    assert code == EXIT_OK
    assert data["result"]["normals"] == [["0", "1"], ["1", "-1"]]


def test_cone_contains(tmp_path, capsys):
    f = write(tmp_path, "c.json", WEDGE)
    code, out, _ = run(capsys, "cone", "contains", f, "--point", "[2, 1]")
    assert code == EXIT_OK and "contains: yes" in out
    code, _, err = run(capsys, "cone", "contains", f, "--point", "[2, 1, 0]")
    assert code == EXIT_INPUT and "error" in err


def test_cone_slice_and_lineality(tmp_path, capsys):
    f = write(tmp_path, "c.json", {"generators": [["1", "1"], ["1", "-1"]]})
    code, data, _ = structured(capsys, "cone", "slice", f)
    assert data["result"]["bounded"] is True and data["result"]["squared_diameter"] == "4"
    code, data, _ = structured(capsys, "cone", "lineality", f)
    assert data["result"]["strongly_convex"] is True


def test_float_in_cone_file_rejected(tmp_path, capsys):
    f = write(tmp_path, "c.json", '{"generators": [[1.5, 0]]}')
    code, _, err = run(capsys, "cone", "facets", f)
    assert code == EXIT_INPUT and "floating-point" in err


# check


def test_check_chain_quadric(capsys):
    code, data, _ = structured(capsys, "check", "t1", "quadric-cone-3d", "--rank", "1")
    assert code == EXIT_OK and data["result"]["verdict"] == "holds"


def test_check_walk_quadric(capsys):
    code, out, _ = run(capsys, "check", "t3", "quadric-cone-3d")
    assert code == EXIT_OK and "holds" in out


def test_check_line_tampered(capsys):
    code, data, _ = structured(capsys, "check", "line", "x2w-yz", "--line", "2Zp", "--declared-mcm", "0,2")
    assert code == EXIT_VIOLATED
    assert data["result"]["certificate"]["violations"][0]["index"] == "1"


def test_check_line_untampered(capsys):
    code, _, _ = run(capsys, "check", "line", "x2w-yz", "--line", "2Zp")
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["check", "p16", "quadric-cone-3d"],
    ["check", "sym", "quadric-cone-3d"],
    ["check", "chi", "quadric-cone-3d"],
    ["check", "p44", "quadric-cone-3d", "--class", "p"],
    ["check", "t11", "x2w-yz", "--class", "p", "--unbounded-rank"],
    ["check", "stream", "quadric-cone-3d", "--bound", "10", "--horizon", "50"],
])
def test_other_checks_succeed(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_OK, err


def test_check_stream_divergence_structured(capsys):
    code, data, _ = structured(capsys, "check", "stream", "quadric-cone-3d", "--bound", "10")
    cert = data["result"]["certificate"]
    assert cert["status"] == "divergence" and cert["index"] == "10"
    assert data["config"]["seed"]


def test_check_unknown_entry(capsys):
    code, _, err = run(capsys, "check", "t1", "nowhere")
    assert code == EXIT_INPUT and "quadric-cone-3d" in err


def test_structured_output_is_reproducible(tmp_path, capsys):
    f = write(tmp_path, "c.json", WEDGE)
    _, first, raw1 = structured(capsys, "cone", "facets", f)
    _, _, raw2 = structured(capsys, "cone", "facets", f)
    assert raw1 == raw2
    g = write(tmp_path, "again.json", first["inputs"])
    _, again, _ = structured(capsys, "cone", "facets", g)
    assert again["result"] == first["result"]
    _, a, _ = structured(capsys, "check", "t1", "quadric-cone-3d")
    _, b, _ = structured(capsys, "check", "t1", "quadric-cone-3d")
    assert a == b


def test_options_accepted_before_or_after_subcommand(capsys):
    code1, out1, _ = run(capsys, "--format", "structured", "check", "p16", "quadric-cone-3d")
    code2, out2, _ = run(capsys, "check", "p16", "quadric-cone-3d", "--format", "structured")
    assert code1 == code2 == EXIT_OK
    assert json.loads(out1)["result"] == json.loads(out2)["result"]


# repro


def test_repro_entry(capsys):
    code, out, _ = run(capsys, "repro", "quadric-cone-3d")
    assert code == EXIT_OK and "FAIL" not in out


def test_repro_unknown(capsys):
    code, _, err = run(capsys, "repro", "nope")
    assert code == EXIT_INPUT and "available" in err


def test_repro_all(capsys):
    code, out, _ = run(capsys, "repro", "--seed", "7")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "seed 7"
    assert "FAIL" not in out
