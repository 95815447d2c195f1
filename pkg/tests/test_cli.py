import json
import math

import pytest

from diracgreen import cli
from diracgreen import coulomb as cl
from diracgreen.model import FINE_STRUCTURE, Kinematics

OSC = ["--problem", "oscillator", "--kappa", "1", "--lambda-bar", "0.1", "--omega", "1", "--epsilon", "1.01"]
COUL = ["--problem", "coulomb", "--kappa", "1", "--Z", "-1", "--energy", "-0.3"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_single_pair_smoke(capsys):
    code, out, _ = run(capsys, "eval", *OSC, "--r", "0.5", "--r-prime", "1.0")
    rows = cli.read_table(out)
    assert code == cli.EXIT_OK
    assert out.splitlines()[0] == "r,r_prime,gpp,gpm,gmp,gmm"
    assert len(rows) == 1 and all(math.isfinite(v) for v in rows[0][2:])


def test_swapped_request_transposes(capsys):
    _, a, _ = run(capsys, "eval", *COUL, "--r", "0.5", "--r-prime", "1.7")
    _, b, _ = run(capsys, "eval", *COUL, "--r", "1.7", "--r-prime", "0.5")
    (ra,), (rb,) = cli.read_table(a), cli.read_table(b)
    assert ra[2] == rb[2] and ra[5] == rb[5]
    assert ra[3] == rb[4] and ra[4] == rb[3]


def test_pole_exit_code_names_quantum_number(capsys):
    code, _, err = run(capsys, "eval", "--problem", "oscillator", "--kappa", "-1", "--lambda-bar", "0.1",
                       "--omega", "1", "--epsilon", "1.0", "--r", "0.5", "--r-prime", "1")
    assert code == cli.EXIT_POLE
    assert err.startswith("error: pole:") and "n=0" in err and len(err.strip().splitlines()) == 1


@pytest.mark.parametrize("argv", [
    ["eval", "--problem", "oscillator", "--kappa", "1", "--omega", "1", "--epsilon", "1.01", "--r-prime", "1"],
    ["eval", *OSC, "--r", "1,0.5", "--r-prime", "1"],
    ["eval", *OSC, "--r", "-1", "--r-prime", "1"],
    ["eval", *OSC, "--r", "1"],
    ["eval", "--problem", "coulomb", "--kappa", "1", "--Z", "-1", "--epsilon", "1.5", "--r-prime", "1"],
    ["eval", *OSC, "--r-prime", "1", "--xi", "0.5", "--printed"],
    ["eval", "--bogus"],
    ["spectrum", "--problem", "oscillator", "--kappa", "0", "--lambda-bar", "0.1", "--omega", "1"],
])
def test_bad_input_is_one_line(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_BAD_INPUT
    assert out == ""
    assert len(err.strip().splitlines()) == 1 and err.startswith("error: bad-input:")


def test_csv_round_trips_bit_identically(capsys):
    _, out, _ = run(capsys, "eval", *COUL, "--r-min", "0.2", "--r-max", "3", "--count", "4", "--matrix")
    rows = cli.read_table(out)
    assert len(rows) == 16
    assert rows == sorted(rows, key=lambda row: (row[0], row[1]))
    args = cli.parse(["eval", *COUL, "--r-prime", "1"])
    again = cli.evaluate_rows(cli.build_benchmark(args), [(r[0], r[1]) for r in rows], 1.0)
    assert again == rows


def test_parallel_matches_serial(capsys):
    base = ["eval", *OSC, "--r-min", "0.2", "--r-max", "3", "--count", "5", "--spacing", "linear", "--matrix"]
    _, a, _ = run(capsys, *base)
    _, b, _ = run(capsys, *base, "--workers", "2")
    assert a == b


def test_json_embeds_configuration(capsys):
    code, out, _ = run(capsys, "eval", *COUL, "--r", "0.5,1", "--r-prime", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    cfg = doc["configuration"]
    assert cfg["lambda_bar"] == FINE_STRUCTURE
    assert cfg["epsilon"] == 1.0 + FINE_STRUCTURE**2 * -0.3
    assert cfg["energy"] == -0.3 and cfg["Z"] == -1.0 and cfg["xi"] == 1.0
    assert [row["r"] for row in doc["rows"]] == [0.5, 1.0]


def test_config_file_overrides_flags(capsys, tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# oscillator run\nkappa = 2\nlambda-bar = 0.1\nomega=1\nepsilon = 1.01\n")
    _, a, _ = run(capsys, "eval", "--problem", "oscillator", "--kappa", "1", "--config", str(path),
                  "--r", "0.5", "--r-prime", "1")
    _, b, _ = run(capsys, "eval", "--problem", "oscillator", "--kappa", "2", "--lambda-bar", "0.1", "--omega", "1",
                  "--epsilon", "1.01", "--r", "0.5", "--r-prime", "1")
    assert a == b


def test_oracle_command_agrees_with_eval(capsys):
    _, a, _ = run(capsys, "eval", *COUL, "--r", "0.5", "--r-prime", "2")
    code, b, _ = run(capsys, "oracle", *COUL, "--r", "0.5", "--r-prime", "2", "--format", "json")
    (closed,) = cli.read_table(a)
    doc = json.loads(b)
    assert code == 0 and doc["wronskian_spread"] < 1e-8
    row = doc["rows"][0]
    for name, value in zip(cli.HEADER[2:], closed[2:]):
        assert row[name] == pytest.approx(value, rel=1e-6)


def test_spectrum_oscillator_negative_kappa_ground_state(capsys):
    code, out, _ = run(capsys, "spectrum", "--problem", "oscillator", "--kappa", "-1", "--lambda-bar", "0.1",
                       "--omega", "1", "--n-max", "2")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,epsilon,residual"
    assert lines[1] == "0,1.0,0.0"


def test_spectrum_coulomb_matches_sommerfeld(capsys):
    code, out, _ = run(capsys, "spectrum", "--problem", "coulomb", "--kappa", "1", "--Z", "-1", "--n-max", "5")
    levels = [float(line.split(",")[1]) for line in out.splitlines()[1:]]
    ref = cl.sommerfeld_levels(Kinematics(FINE_STRUCTURE, 0.5, 1), -1.0, 5)
    assert code == 0 and len(levels) == 6
    assert max(abs(a - b) for a, b in zip(levels, ref)) < 1e-10


def test_spectrum_coulomb_negative_kappa_is_flagged(capsys):
    code, out, err = run(capsys, "spectrum", "--problem", "coulomb", "--kappa", "-1", "--Z", "-1", "--n-max", "1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,epsilon,residual,exploratory"
    assert all(line.endswith(",1") for line in lines[1:]) and "note:" in err


def test_spectrum_repulsive_is_empty(capsys):
    code, out, err = run(capsys, "spectrum", "--problem", "coulomb", "--kappa", "1", "--Z", "1")
    assert code == 0 and out.splitlines() == ["n,epsilon,residual"] and err.startswith("note:")


def test_verify_identities_stream(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--samples", "30")
    reports = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert len([r for r in reports if r["check_id"].startswith("identity.A")]) == 8
    assert all(r["pass"] for r in reports)


def test_verify_table_format(capsys):
    code, out, _ = run(capsys, "verify", "spectrum", "--format", "table")
    assert code == 0 and out.splitlines()[0].startswith("check_id")


def test_verify_with_corruption_fails(capsys):
    code, out, _ = run(capsys, "verify", "ode", "--corrupt", "whittaker_index")
    reports = [json.loads(line) for line in out.splitlines()]
    assert code == cli.EXIT_FAIL
    assert any(not r["pass"] for r in reports)
    assert all(r["configuration"]["corruption"] == "whittaker_index" for r in reports)


def test_corrupt_flag_is_hidden(capsys):
    code, out, _ = run(capsys, "verify", "--help")
    assert code == 0 and "usage:" in out and "--corrupt" not in out
