import json

import pytest

import radialgate as rg
from radialgate.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_json(capsys):
    code, out, err = invoke(capsys, "classify", "--potential", "invsq:v0=0.16")
    assert code == 0
    payload = json.loads(out)
    assert payload["origin_class"] == "transitive_singular"
    assert payload["v0"] == 0.16


def test_classify_csv(capsys):
    code, out, _ = invoke(
        capsys, "classify", "--potential", "coulomb:alpha=1", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:2] == ["potential", "origin_class"]
    assert "regular" in lines[1]


def test_indicial_example(capsys):
    code, out, _ = invoke(
        capsys, "indicial", "--potential", "invsq:v0=0.08", "--l", "0",
        "--mass", "1", "--policy", "dirichlet",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["p_value"] == pytest.approx(0.3)
    assert payload["s_plus"] == pytest.approx(0.8)
    assert payload["s_minus"] == pytest.approx(0.2)
    assert payload["ambiguous"] is True
    assert payload["admissible_plus"] and payload["admissible_minus"]


def test_indicial_fall_to_center_exits_1(capsys):
    code, out, err = invoke(
        capsys, "indicial", "--potential", "invsq:v0=0.25", "--l", "0", "--mass", "1"
    )
    assert code == 1
    assert out == ""
    assert "fall to center" in err


def test_usage_errors_exit_2(capsys):
    code, _, err = invoke(capsys, "classify", "--potential", "morse:d=1")
    assert code == 2
    assert "usage error" in err
    code, _, _ = invoke(capsys, "frobnicate")
    assert code == 2
    code, _, _ = invoke(capsys, "spectrum", "--potential", "coulomb:alpha=1",
                        "--grid", "oops", "--window", "-1,-0.1")
    assert code == 2


def test_residual_json_and_csv(capsys):
    args = ("residual", "--profile", "const", "--grid", "0.0001,0.12,1201",
            "--probe-radius", "0.1", "--halvings", "2")
    code, out, _ = invoke(capsys, *args)
    assert code == 0
    payload = json.loads(out)
    assert payload["integral"] == pytest.approx(-12.5663706144, rel=1e-4)
    assert payload["convention"] == "4pi"
    code, out, _ = invoke(capsys, *args, "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "h,integral,relative_error"
    assert len(lines) == 3


def test_identity_defect_command(capsys):
    code, out, _ = invoke(
        capsys, "identity-defect", "--profile", "cos", "--grid", "0.3,2.0,426",
        "--r-low", "0.5", "--halvings", "2", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "h,max_defect"
    h0, d0 = map(float, lines[1].split(","))
    h1, d1 = map(float, lines[2].split(","))
    assert 3.5 <= d0 / d1 <= 4.5


def test_spectrum_command_and_roundtrip(capsys, tmp_path):
    wf = tmp_path / "wf.csv"
    code, out, _ = invoke(
        capsys, "spectrum", "--potential", "coulomb:alpha=1", "--l", "0",
        "--policy", "dirichlet", "--grid", "1e-4,60,12000",
        "--window", "-0.6,-0.02", "--k", "3",
        "--dump-wavefunction", "1", str(wf),
    )
    assert code == 0
    payload = json.loads(out)
    energies = [e["energy"] for e in payload["entries"]]
    assert energies[0] == pytest.approx(-0.5, rel=1e-6)
    assert energies[1] == pytest.approx(-0.125, rel=1e-6)
    assert energies[2] == pytest.approx(-0.0555555556, rel=1e-6)
    # JSON fixpoint: parse -> record -> emit reproduces the payload
    spec = rg.Spectrum.from_dict(payload)
    assert json.loads(json.dumps(spec.to_dict())) == payload
    lines = wf.read_text().splitlines()
    assert lines[0] == "r,u"
    assert len(lines) == 12001


def test_spectrum_window_empty_exits_1(capsys):
    code, _, err = invoke(
        capsys, "spectrum", "--potential", "coulomb:alpha=1", "--l", "0",
        "--grid", "1e-4,60,6000", "--window", "-0.45,-0.3", "--k", "1",
    )
    assert code == 1
    assert "no mismatch sign change" in err


def test_kg_spectrum_command(capsys):
    code, out, _ = invoke(
        capsys, "kg-spectrum", "--potential", "coulomb:alpha=0.3", "--l", "0",
        "--grid", "1e-3,60,30000", "--window", "0.9,0.99", "--k", "1",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["equation"] == "klein_gordon"
    assert payload["entries"][0]["energy"] == pytest.approx(0.948683, rel=1e-4)


def test_kg_fall_to_center_exits_1(capsys):
    code, _, err = invoke(
        capsys, "kg-spectrum", "--potential", "coulomb:alpha=0.6", "--l", "0",
        "--grid", "1e-3,60,6000", "--window", "0.9,0.99", "--k", "1",
    )
    assert code == 1
    assert "overcritical" in err


def test_contrast_command(capsys):
    code, out, _ = invoke(
        capsys, "contrast", "--potential", "invsq:v0=-0.12", "--l", "0",
        "--thetas", "0.7853981633974483", "--grid", "0.05,10,4000",
        "--window", "0.005,0.4", "--k", "1",
    )
    assert code == 0
    payload = json.loads(out)
    e_ref = payload["reference"]["entries"][0]["energy"]
    e_mix = payload["mixed"][0]["spectrum"]["entries"][0]["energy"]
    assert abs(e_ref - e_mix) > 1e-4
    assert payload["reference"]["boxed"] is True


def test_oracle3d_command(capsys):
    code, out, _ = invoke(
        capsys, "oracle3d", "--potential", "harmonic:omega=1",
        "--n", "24", "--L", "6", "--k", "1",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["eigenvalues"][0] == pytest.approx(1.5, rel=0.05)
    assert payload["residuals"][0] <= 1e-8
    back = rg.Eigenvalues3D.from_dict(payload)
    assert json.loads(json.dumps(back.to_dict())) == payload


def test_oracle3d_point_defect(capsys):
    code, out, _ = invoke(
        capsys, "oracle3d", "--n", "32", "--L", "2", "--point-defect", "const"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["defect"] == pytest.approx(-13.24, rel=0.01)
    assert payload["predicted"] == pytest.approx(-12.566370614359172, rel=1e-9)


def test_kg_dump_wavefunction(capsys, tmp_path):
    wf = tmp_path / "kg.csv"
    code, out, _ = invoke(
        capsys, "kg-spectrum", "--potential", "coulomb:alpha=0.3", "--l", "0",
        "--grid", "1e-3,60,20000", "--window", "0.9,0.96", "--k", "1",
        "--dump-wavefunction", "1", str(wf),
    )
    assert code == 0
    lines = wf.read_text().splitlines()
    assert lines[0] == "r,u"
    assert len(lines) == 20001
    r0, u0 = map(float, lines[1].split(","))
    assert u0 > 0  # admissible branch rises from the origin


def test_spectrum_with_mixing_policy(capsys):
    code, out, _ = invoke(
        capsys, "spectrum", "--potential", "invsq:v0=-0.12", "--l", "0",
        "--policy", "si:theta=0.7853981633974483,rref=1",
        "--grid", "0.05,10,4000", "--window", "0.005,0.4", "--k", "1",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["policy"].startswith("si:theta=")
    assert payload["boxed"] is True


def test_byte_identical_reruns(capsys):
    args = ("spectrum", "--potential", "harmonic:omega=1", "--l", "0",
            "--grid", "1e-3,12,3000", "--window", "0.5,6", "--k", "3")
    _, out1, _ = invoke(capsys, *args)
    _, out2, _ = invoke(capsys, *args)
    assert out1 == out2
    args_csv = args + ("--format", "csv")
    _, csv1, _ = invoke(capsys, *args_csv)
    _, csv2, _ = invoke(capsys, *args_csv)
    assert csv1 == csv2
    assert csv1.splitlines()[0] == "k,energy,node_count,bisection_width"


def test_output_file_sink(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = invoke(
        capsys, "classify", "--potential", "harmonic:omega=2", "-o", str(path)
    )
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text())["origin_class"] == "regular"
