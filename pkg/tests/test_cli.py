"""Command-line surface: exact output pins, exit codes, determinism."""

import io
import subprocess
import sys

from riordan.cli import main

PASCAL5 = "riordan\nring=Fp:5; trunc=5; coeffs=1,1,1,1,1,1\nring=Fp:5; trunc=5; coeffs=0,1,1,1,1,1\n"
PAIR_3N_J = "T=0; except=; period=3; residues=0\nT=0; except=; period=9; residues=0,2,5,8\n"
PAIR_2N_N = "T=0; except=; period=2; residues=0\nT=0; except=; period=1; residues=0\n"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def payload(tmp_path, text, name="payload.txt"):
    f = tmp_path / name
    f.write_text(text)
    return str(f)


def test_series_commands(capsys, tmp_path):
    two = payload(tmp_path, "ring=Z; trunc=4; coeffs=1,1,0,0,0\nring=Z; trunc=4; coeffs=1,-1,0,0,0\n")
    code, out, _ = run_cli(capsys, "series-mul", "--in", two)
    assert code == 0
    assert out == "ring=Z; trunc=4; coeffs=1,0,-1,0,0\n"
    code, out, _ = run_cli(capsys, "series-mul", "--human", "--in", two)
    assert (code, out) == (0, "1 - x^2\n")

    geo = payload(tmp_path, "ring=Z; trunc=6; coeffs=1,1,0,0,0,0,0\n")
    code, out, _ = run_cli(capsys, "series-inv", "--in", geo)
    assert out == "ring=Z; trunc=6; coeffs=1,-1,1,-1,1,-1,1\n"

    comp = payload(tmp_path, "ring=Fp:3; trunc=9; coeffs=1,0,0,1,0,0,0,0,0,0\nring=Fp:3; trunc=9; coeffs=0,1,0,1,0,0,0,0,0,0\n")
    code, out, _ = run_cli(capsys, "series-compose", "--in", comp)
    assert out == "ring=Fp:3; trunc=9; coeffs=1,0,0,1,0,0,0,0,0,1\n"

    cinv = payload(tmp_path, "ring=Z; trunc=5; coeffs=0,1,1,0,0,0\n")
    code, out, _ = run_cli(capsys, "series-compinv", "--in", cinv)
    assert out == "ring=Z; trunc=5; coeffs=0,1,-1,2,-5,14\n"


def test_riordan_mul_and_inv(capsys, tmp_path):
    a = "riordan\nring=Fp:3; trunc=4; coeffs=1,1,0,0,0\nring=Fp:3; trunc=4; coeffs=0,1,1,0,0\n"
    code, out, _ = run_cli(capsys, "riordan-mul", "--in", payload(tmp_path, a + a))
    assert code == 0
    assert out == "riordan\nring=Fp:3; trunc=4; coeffs=1,2,2,1,0\nring=Fp:3; trunc=4; coeffs=0,1,2,2,1\n"

    b = "riordan\nring=Fp:3; trunc=3; coeffs=1,1,0,0\nring=Fp:3; trunc=3; coeffs=0,1,1,0\n"
    code, inv_out, _ = run_cli(capsys, "riordan-inv", "--in", payload(tmp_path, b))
    assert inv_out == "riordan\nring=Fp:3; trunc=3; coeffs=1,2,2,1\nring=Fp:3; trunc=3; coeffs=0,1,2,2\n"
    # multiplying back yields the identity element
    code, out, _ = run_cli(capsys, "riordan-mul", "--in", payload(tmp_path, b + inv_out, "pair.txt"))
    assert out == "riordan\nring=Fp:3; trunc=3; coeffs=1,0,0,0\nring=Fp:3; trunc=3; coeffs=0,1,0,0\n"


def test_riordan_array(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "riordan-array", "--size", "6", "--in", payload(tmp_path, PASCAL5))
    rows = out.splitlines()
    assert code == 0
    assert rows[4] == "1,4,1,4,1,0"
    assert rows[5] == "1,0,0,0,0,1"
    small = "riordan\nring=Fp:3; trunc=3; coeffs=1,1,0,0\nring=Fp:3; trunc=3; coeffs=0,1,0,0\n"
    code, out, _ = run_cli(capsys, "riordan-array", "--size", "4", "--in", payload(tmp_path, small, "s.txt"))
    assert out == "1,0,0,0\n1,1,0,0\n0,1,1,0\n0,0,1,1\n"


def test_lcs_verify_lines(capsys):
    code, out, _ = run_cli(capsys, "lcs-verify", "--p", "3", "--level", "4", "--depth", "4")
    assert code == 0
    assert out.splitlines() == [
        "i=2 tau=2 brute_order=27 formula_order=27 PASS",
        "i=3 tau=3 brute_order=3 formula_order=3 PASS",
        "i=4 tau=5 brute_order=1 formula_order=1 PASS",
    ]
    code, out, _ = run_cli(capsys, "lcs-verify", "--p", "3", "--level", "4", "--depth", "3", "--human")
    assert out.splitlines() == [
        "gamma_2 at p=3, level=4: brute order 27, formula order 27 -> PASS",
        "gamma_3 at p=3, level=4: brute order 3, formula order 3 -> PASS",
    ]


def test_width_csv(capsys):
    code, out, _ = run_cli(capsys, "width", "--p", "3", "--level", "4", "--depth", "4")
    assert code == 0
    assert out.splitlines() == [
        "i,gamma_order,width,boundary_flag",
        "1,729,3,0",
        "2,27,2,0",
        "3,3,1,1",
        "4,1,0,1",
    ]


def test_gens_check_exit_codes(capsys, tmp_path):
    single = "riordan\nring=Fp:3; trunc=4; coeffs=1,1,0,0,0\nring=Fp:3; trunc=4; coeffs=0,1,0,0,0\n"
    code, out, _ = run_cli(capsys, "gens-check", "--p", "3", "--level", "4", "--in", payload(tmp_path, single))
    assert code == 1
    assert out.splitlines() == [
        "level=4 p=3 subgroup=closure order=9 generators=1",
        "group_order=729",
        "generates=false",
    ]
    three = (
        "riordan\nring=Fp:3; trunc=3; coeffs=1,1,0,0\nring=Fp:3; trunc=3; coeffs=0,1,0,0\n"
        "riordan\nring=Fp:3; trunc=3; coeffs=1,0,0,0\nring=Fp:3; trunc=3; coeffs=0,1,1,0\n"
        "riordan\nring=Fp:3; trunc=3; coeffs=1,0,0,0\nring=Fp:3; trunc=3; coeffs=0,1,0,1\n"
    )
    code, out, _ = run_cli(capsys, "gens-check", "--p", "3", "--level", "3", "--in", payload(tmp_path, three, "t.txt"))
    assert code == 0
    assert out.splitlines() == [
        "level=3 p=3 subgroup=closure order=81 generators=3",
        "group_order=81",
        "generates=true",
    ]


def test_hm_tower_sigma(capsys):
    code, out, _ = run_cli(capsys, "hm-check", "--p", "3", "--level", "4", "--m", "2")
    assert code == 0
    assert out.splitlines() == [
        "level=4 p=3 subgroup=H^2 order=9 generators=2",
        "expected_order=9",
        "matches=true",
    ]
    code, out, _ = run_cli(capsys, "tower-check", "--p", "2", "--level", "3")
    assert code == 0
    assert out.splitlines() == ["mode=exhaustive", "pairs=256", "surjective=true", "passed=true"]
    code, out, _ = run_cli(capsys, "sigma-check", "--p", "3", "--level", "5", "--i", "2", "--j", "2")
    assert code == 0
    assert out.splitlines() == [
        "i=2 j=2 commutator_order=3 target=H^4xN^4 target_order=9",
        "contained=true",
    ]


def test_admissible_exit_codes(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "admissible", "--p", "3", "--in", payload(tmp_path, PAIR_3N_J))
    assert code == 0
    assert out == "verdict=pass-up-to-bound bound=1000 condition2_certified=true\n"
    code, out, _ = run_cli(capsys, "admissible", "--p", "3", "--in", payload(tmp_path, PAIR_2N_N, "v.txt"))
    assert code == 1
    assert out == "verdict=violation bound=1000 condition=3 index=2 n=1 partner=1 value=3\n"


def test_density_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("T=0; except=; period=9; residues=0,2,5,8\n"))
    code, out, _ = run_cli(capsys, "density")
    assert (code, out) == (0, "density=4/9 ldense=4/9 udense=4/9\n")


def test_jxi_hdim_spectrum_classify(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "jxi", "--p", "3", "--xi", "1/9")
    assert (code, out) == (0, "T=0; except=; period=9; residues=8\ndensity=1/9\n")

    pair = payload(tmp_path, PAIR_3N_J)
    code, out, _ = run_cli(capsys, "hdim", "--p", "3", "--grid", "8", "--in", pair)
    assert code == 0
    assert out.splitlines() == [
        "n,numerator_count,denominator,estimate",
        "2,0,2,0.0000000000",
        "4,2,6,0.3333333333",
        "8,4,14,0.2857142857",
        "exact=7/18",
    ]
    code, out, _ = run_cli(capsys, "hdim", "--p", "3", "--grid", "8", "--filtration", "ceilhalf", "--in", pair)
    assert out.splitlines()[-1] == "exact=11/27"

    code, out, _ = run_cli(capsys, "spectrum", "--p", "3", "--family", "lattice", "--s", "1", "--r", "1", "--u", "1")
    assert code == 0
    assert out.splitlines() == [
        "family=lattice",
        "param_s=1",
        "param_r=1",
        "param_u=1",
        "I=T=0; except=; period=3; residues=0",
        "J=T=0; except=; period=1; residues=0",
        "dimension=2/3",
    ]

    cls = payload(tmp_path, "T=0; except=; period=9; residues=0\nT=0; except=; period=3; residues=0\n", "c.txt")
    code, out, _ = run_cli(capsys, "classify", "--p", "3", "--in", cls)
    assert (code, out) == (0, "case=2ii s=1 r=2 u=3 density=1/3\n")


def test_error_paths(capsys, tmp_path):
    code, _, err = run_cli(capsys, "spectrum", "--p", "3", "--family", "band", "--s", "3", "--xi", "1/9")
    assert code == 2
    assert err.startswith("error:")
    empty = payload(tmp_path, "\n")
    code, _, err = run_cli(capsys, "gens-check", "--p", "3", "--level", "3", "--in", empty)
    assert code == 2
    assert "riordan literals" in err
    code, _, err = run_cli(capsys, "series-mul", "--in", payload(tmp_path, "ring=Z; trunc=1; coeffs=1,junk\n", "j.txt"))
    assert code == 2
    assert err.startswith("error:")
    assert run_cli(capsys, "frobnicate")[0] == 2
    assert run_cli(capsys, "hm-check", "--p", "3", "--level", "4")[0] == 2  # missing --m
    assert run_cli(capsys, "jxi", "--p", "3", "--xi", "1/6")[0] == 2


def test_output_is_deterministic(capsys, tmp_path):
    pair = payload(tmp_path, PAIR_3N_J)
    first = run_cli(capsys, "hdim", "--p", "3", "--grid", "16", "--in", pair)
    second = run_cli(capsys, "hdim", "--p", "3", "--grid", "16", "--in", pair)
    assert first == second
    assert run_cli(capsys, "lcs-verify", "--p", "3", "--level", "4", "--depth", "4") == run_cli(
        capsys, "lcs-verify", "--p", "3", "--level", "4", "--depth", "4"
    )


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "riordan.cli", "density"],
        input="T=0; except=; period=3; residues=0\n",
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout == "density=1/3 ldense=1/3 udense=1/3\n"
