from labelweight_hss.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_goppa_table_csv(capsys):
    code, out, _ = run(
        capsys, "table", "goppa", "--dt", "4",
        "--servers", "64,128,256,512,1024,2048", "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "s,baseline_rate,baseline_amort,ours_rate,ours_amort,pct_rate,pct_amort"
    assert lines[1] == "64,0.93,360,0.65,42,-31,-88"
    assert lines[6] == "2048,0.99,22484,0.99,2026,-0.9,-91"


def test_hermitian_table_markdown(capsys):
    code, out, _ = run(
        capsys, "table", "hermitian", "--dt", "4", "--servers", "50,1000", "--format", "markdown",
    )
    assert code == 0
    assert "| 50 | 0.92 | 69 | 0.75 | 42 | -18% | -39% |" in out
    assert "| 1000 | 0.99 | 1494 | 0.94 | 951 | -5% | -36% |" in out


def test_demo_exact_spec_invocation(capsys):
    code, out, _ = run(
        capsys, "demo", "--code", "goppa", "--u", "3", "--r", "1",
        "--t", "1", "--d", "1", "--trials", "200", "--seed", "7",
    )
    assert code == 0
    assert "200/200 correct" in out


def test_demo_parameter_out_of_range(capsys):
    code, _, err = run(capsys, "demo", "--code", "hermitian", "--q", "2", "--k", "99", "--t", "1", "--d", "1")
    assert code == 2
    assert "error" in err


def test_demo_bad_flag_usage(capsys):
    code, _, _ = run(capsys, "demo", "--code", "goppa", "--u", "3")
    assert code == 2


def test_byte_identical_reruns(capsys):
    argv = ["demo", "--code", "rs", "--q", "5", "--n", "5", "--k", "2",
            "--t", "1", "--d", "2", "--trials", "5", "--seed", "3"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_code_build_info_labelweight_roundtrip(capsys, tmp_path):
    path = tmp_path / "code.txt"
    code, out, _ = run(
        capsys, "code", "build", "--family", "goppa", "--u", "3", "--r", "1", "--out", str(path)
    )
    assert code == 0
    assert path.read_text().startswith("labelweight-code/v1\n")

    code, out, _ = run(capsys, "code", "info", "--in", str(path))
    assert code == 0
    assert "field GF(2^1)/modulus=[0,1]" in out  # binary codeword alphabet
    assert "n 7" in out

    code, out, _ = run(capsys, "code", "labelweight", "--in", str(path))
    assert code == 0
    assert int(out.strip()) >= 2


def test_simulate_with_transcript_dump_and_replay(capsys, tmp_path):
    path = tmp_path / "transcript.txt"
    code, out, _ = run(
        capsys, "simulate", "--code", "rs", "--q", "5", "--n", "5", "--k", "2",
        "--t", "1", "--d", "2", "--trials", "3", "--seed", "1",
        "--dump-transcript", str(path),
    )
    assert code == 0
    assert "3/3 correct" in out
    assert "rate=2/5" in out
    assert path.read_text().startswith("labelweight-hss-transcript/v1\n")

    code, out, _ = run(capsys, "simulate", "--replay", str(path))
    assert code == 0
    assert "downloaded-symbols 5" in out


def test_audit_privacy(capsys):
    code, out, _ = run(capsys, "audit-privacy", "--s", "3", "--t", "1", "--p", "2")
    assert code == 0
    assert "all-equal" in out


def test_gv_sim(capsys):
    code, out, _ = run(
        capsys, "gv-sim", "--q", "2", "--w", "2", "--s", "6",
        "--delta", "1/3", "--eps", "1/10", "--trials", "200", "--seed", "5",
    )
    assert code == 0
    assert "within-bound" in out
    assert "ball-bound ok" in out


def test_csv_output_parses_with_generic_reader(capsys):
    import csv
    import io

    code, out, _ = run(capsys, "table", "goppa", "--dt", "4", "--servers", "64,128", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["s"] for r in rows] == ["64", "128"]
    assert rows[0]["ours_amort"] == "42"


def test_unknown_subcommand(capsys):
    assert main(["bogus"]) == 2
