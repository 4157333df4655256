import json

from transitpoly.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from transitpoly.numfield import parse_scalar
from transitpoly.serialize import parse_vertices_csv


def test_no_command_is_usage_error(capsys):
    assert main([]) == EXIT_USAGE


def test_unknown_command_is_usage_error():
    assert main(["frobnicate"]) == EXIT_USAGE


def test_vertices_csv_roundtrip(tmp_path, capsys):
    out = tmp_path / "verts.csv"
    code = main(["vertices", "--t", "1/2", "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    rows = parse_vertices_csv(out.read_text())
    assert len(rows) == 46
    kinds = {r["kind"] for r in rows}
    assert kinds == {"ideal", "finite"}
    # exact strings parse back to exact field elements
    boundary = next(r for r in rows
                    if set(r["incidence"]) >= {"p0", "m0", "p3", "m3"})
    assert boundary["affine"][0] == parse_scalar(
        "0/1 + 1/2*sqrt2 + 0/1*sqrt3 + 0/1*sqrt6")


def test_vertices_json(tmp_path, capsys):
    out = tmp_path / "verts.json"
    code = main(["vertices", "--t=-1/2", "--system", "fundamental",
                 "--out", str(out)])
    assert code == EXIT_OK
    body = json.loads(out.read_text())
    assert body["census"]["total"] == 13


def test_negative_t_flag_merge(capsys):
    assert main(["classify", "--t", "-1/2"]) == EXIT_OK
    captured = capsys.readouterr()
    assert '"timelike"' in captured.out


def test_dump_csv(tmp_path, capsys):
    out = tmp_path / "walls.csv"
    code = main(["dump", "--table", "walls", "--t", "1/2", "--format", "csv",
                 "--out", str(out)])
    assert code == EXIT_OK
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 23  # header + 22 walls


def test_verify_subset_and_exit_code(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code = main(["verify", "--suite", "causal_types", "--t", "1/3,-1/3",
                 "--out", str(cert)])
    assert code == EXIT_OK
    body = json.loads(cert.read_text())
    assert body[0]["status"] == "pass"


def test_verify_failure_exit_code(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    # 3/5 is outside the deformation interval: recorded and failing
    code = main(["verify", "--suite", "causal_types", "--t", "3/5",
                 "--out", str(cert)])
    assert code == EXIT_FAIL
    body = json.loads(cert.read_text())
    assert any(entry["name"] == "sample_validation" and entry["status"] == "fail"
               for entry in body)


def test_plotdata_frames(tmp_path, capsys):
    out = tmp_path / "frame.json"
    code = main(["plotdata", "--object", "main", "--t=-1/3", "--chart", "affine",
                 "--out", str(out)])
    assert code == EXIT_OK
    body = json.loads(out.read_text())
    assert len(body["vertices"]) == 46
    assert all(len(e) == 2 for e in body["edges"])


def test_limits_command(tmp_path, capsys):
    out = tmp_path / "limits.json"
    code = main(["limits", "--order", "2", "--families", "m0", "--out", str(out)])
    assert code == EXIT_OK
    body = json.loads(out.read_text())
    assert body["families"]["m0"]["equal"] is False  # not C^2


def test_config_file(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("t = 1/3\nsystem = octahedron\n")
    out = tmp_path / "v.json"
    code = main(["--config", str(conf), "vertices", "--out", str(out)])
    assert code == EXIT_OK
    body = json.loads(out.read_text())
    assert body["census"]["total"] == 8
    # flags win over config
    code = main(["--config", str(conf), "vertices", "--system", "fundamental",
                 "--out", str(out)])
    assert code == EXIT_OK
    assert json.loads(out.read_text())["census"]["total"] == 13


def test_malformed_t_is_usage_error(capsys):
    assert main(["vertices", "--t", "one-half"]) == EXIT_USAGE


def test_cell24_command(tmp_path, capsys):
    out = tmp_path / "cell24.json"
    assert main(["cell24", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["result"]["status"] == "pass"
