import json

from latslice.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_cube3(capsys):
    code, out, _ = run(capsys, "count", "--body", "cube:3")
    assert code == 0
    assert out == "27\n"


def test_slice_cross3_diagonal(capsys):
    code, out, _ = run(capsys, "slice", "--body", "cross:3", "--normal", "1,1,1")
    assert code == 0
    assert out == "1\n"


def test_slice_normal_u_prefix(capsys):
    code, out, _ = run(capsys, "slice", "--body", "cross:3", "--normal", "u:1,1,1")
    assert code == 0 and out == "1\n"


def test_slice_basis_spec(capsys):
    code, out, _ = run(capsys, "slice", "--body", "cube:3", "--normal", "1,0,0;0,1,0")
    assert code == 0 and out == "9\n"


def test_slice_max_search(capsys):
    code, out, _ = run(capsys, "slice", "--body", "cube:3", "--m", "2")
    assert code == 0
    assert "best: 9" in out


def test_verify_main_json(capsys):
    code, out, _ = run(
        capsys, "verify", "main", "--body", "cross:4", "--m", "3", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "main"
    assert data["count"] == 9
    assert data["max_slice"]["best_count"] == 7
    assert all(e["passed"] for e in data["chain"])


def test_verify_unconditional_text(capsys):
    code, out, _ = run(capsys, "verify", "unconditional", "--body", "cube:3")
    assert code == 0
    assert "[pass]" in out and "FAIL" not in out


def test_verify_hypothesis_violated_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "dim2", "--body", "box:1,2/5")
    assert code == 0
    assert "hypothesis violated" in out


def test_brunn_json_profile_shape(capsys):
    code, out, _ = run(
        capsys, "brunn", "--body", "cross:3", "--normal", "1,1,1", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["normal"] == [1, 1, 1]
    assert data["levels"] == {"-1": 3, "0": 1, "1": 3}
    assert data["holds"] is True


def test_pick_subcommand(capsys):
    code, out, _ = run(capsys, "pick", "--body", "cube:2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert (data["A"], data["I"], data["B"]) == ("4", 1, 8)


def test_gauss_subcommand(capsys):
    code, out, _ = run(capsys, "gauss", "--body", "cube:2", "--radii", "1,2,3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["counts"] == [9, 25, 49]
    assert data["strictly_decreasing"] is True


def test_volume_exact_string(capsys):
    code, out, _ = run(capsys, "volume", "--body", "cross:3", "--format", "json")
    assert code == 0
    assert json.loads(out)["volume"] == "4/3"


def test_unknown_body_exit1(capsys):
    code, _, err = run(capsys, "count", "--body", "dodecahedron:3")
    assert code == 1
    assert "error" in err


def test_malformed_rational_exit1(capsys):
    code, _, err = run(capsys, "count", "--body", "box:1/0,2")
    assert code == 1


def test_bad_subspace_exit1(capsys):
    code, _, err = run(capsys, "slice", "--body", "cube:2", "--normal", "0,0")
    assert code == 1


def test_usage_error_exit1(capsys):
    code = main(["count"])
    capsys.readouterr()
    assert code == 1


def test_scan_rows_carry_seed(capsys):
    code, out, _ = run(
        capsys,
        "scan",
        "main",
        "--body",
        "random:2",
        "--trials",
        "3",
        "--seed",
        "11",
        "--format",
        "csv",
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 4  # header + 3 trials
    assert [l.split(",")[0] for l in lines[1:]] == ["11", "12", "13"]


def test_scan_determinism_byte_identical(capsys):
    argv = ["scan", "main", "--body", "random:2", "--trials", "4", "--seed", "3", "--format", "json"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_scan_jobs_ordering_matches_serial(capsys):
    base = ["scan", "main", "--body", "random:2", "--trials", "5", "--seed", "2", "--format", "csv"]
    _, serial, _ = run(capsys, *base)
    _, parallel, _ = run(capsys, *base, "--jobs", "2")
    assert serial == parallel


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "verify", "dim2", "--body", "cube:2", "--format", "json", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    data = json.loads(target.read_text())
    assert data["kind"] == "dim2"


def test_env_cap_respected(capsys, monkeypatch):
    monkeypatch.setenv("LATSLICE_EXACT_DIM_CAP", "6")
    code, out, _ = run(capsys, "volume", "--body", "cube:6")
    assert code == 0
    assert out.strip() == "64"
    monkeypatch.delenv("LATSLICE_EXACT_DIM_CAP")
    code, _, err = run(capsys, "volume", "--body", "cube:6")
    assert code == 1
    assert "cap" in err


def test_math_failure_exit2(capsys, monkeypatch):
    # fabricate a failing chain entry to exercise the exit-code contract
    import latslice.cli as cli
    from latslice.verify import ChainEntry, SlicingReport

    def fake_verify(body, strategy=None, seed=None):
        return SlicingReport(
            kind="dim2", body=body.name, d=2, m=1, count_total=9,
            max_slice_count=3, max_slice_witness="u:0,1", max_slice_exhaustive=True,
            candidates_searched=5, volume=4, volume_polar=None, mahler=None,
            observed_constant_power=None, observed_constant=None,
            chain=(ChainEntry("slicing-inequality", False, "fabricated"),),
        )

    monkeypatch.setattr(cli, "verify_dim2", fake_verify)
    code = cli.main(["verify", "dim2", "--body", "cube:2"])
    captured = capsys.readouterr()
    assert code == 2
    assert "slicing-inequality" in captured.err


def test_gauss_with_normal_cli(capsys):
    code = main(["gauss", "--body", "cube:2", "--radii", "1,2", "--normal", "0,1", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    data = json.loads(out)
    assert data["slice"]["counts"] == [3, 5]
    assert data["slice"]["normal"] == [0, 1]
