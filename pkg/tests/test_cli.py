import csv
import io
import json
from pathlib import Path

import pytest

from mincusco.cli import main, run
from mincusco.serialize import load_cusco, load_fn, read_document

FIX = Path(__file__).parent / "fixtures"


def fx(name):
    return str(FIX / name)


def test_envelope_heaviside():
    code, out = run(["envelope", fx("heaviside.json")])
    assert code == 0
    doc = json.loads(out)
    assert doc["quasicontinuous"] is True
    assert load_cusco(doc["envelope"]) == load_cusco(read_document(fx("step.json")))


def test_envelope_continuous():
    code, out = run(["envelope", fx("identity.json")])
    F = load_cusco(json.loads(out)["envelope"])
    assert code == 0 and F.lower == F.upper == load_fn(
        read_document(fx("identity.json"))
    )


def test_envelope_not_quasicontinuous(capsys):
    code, out = run(["envelope", fx("half-step.json")])
    assert code == 2 and json.loads(out)["failures"] == ["0"]


def test_malformed_file(capsys):
    code, _ = run(["envelope", fx("malformed.json")])
    assert code == 2
    assert "malformed.json:4:3" in capsys.readouterr().err


def test_missing_file():
    assert run(["envelope", fx("nope.json")])[0] == 2


def test_unknown_subcommand():
    assert run(["frobnicate"])[0] == 2


def test_minimal():
    assert run(["minimal", fx("step.json")])[0] == 0
    code, out = run(["minimal", fx("spike.json")])
    assert code == 1 and load_cusco(json.loads(out)["smaller"]) == load_cusco(
        read_document(fx("zero.json"))
    )


def test_add():
    code, out = run(["add", fx("step.json"), fx("down-step.json")])
    assert code == 0
    assert load_cusco(json.loads(out)["sum"]) == load_cusco(
        read_document(fx("zero.json"))
    )
    assert run(["add", fx("step.json"), fx("spike.json")])[0] == 2


def test_member():
    code, out = run(["member", fx("step.json"), fx("nbhd.json")])
    assert code == 0 and json.loads(out)["member"]
    code, out = run(["member", fx("step.json"), fx("far-nbhd.json")])
    assert code == 1 and json.loads(out)["witness"] == ["lower", 0]


def test_approx_upper():
    code, out = run(["approx-upper", fx("step.json"), fx("staircase.json")])
    assert code == 0 and json.loads(out)["inside"]
    assert run(["approx-upper", fx("step.json"), fx("unit-band.json")])[0] == 2


def test_approx_vietoris():
    code, out = run(["approx-vietoris", fx("step.json"), fx("nbhd.json")])
    assert code == 0 and json.loads(out)["member"]


def test_distance():
    code, out = run(["distance", fx("step.json"), fx("zero.json")])
    assert code == 0 and json.loads(out) == {"L": "1"}


def test_ball_upper_and_lower():
    code, out = run(
        [
            "--seed",
            "5",
            "ball",
            fx("step.json"),
            fx("wide-band.json"),
            "--samples",
            "20",
        ]
    )
    doc = json.loads(out)
    assert code == 0 and doc["samples_passed"] == 20 and doc["seed"] == 5
    code, out = run(["ball", "--lower", fx("step.json"), fx("unit-band.json")])
    doc = json.loads(out)
    assert code == 0 and doc["epsilon"] == "1/2" and doc["witness"] == ["0", "1/2"]


def test_ball_is_deterministic():
    args = ["--seed", "9", "ball", fx("step.json"), fx("band.json"), "--samples", "5"]
    assert run(args) == run(args)


def test_ball_punctured_rejected():
    assert run(["ball", fx("punctured-jump.json"), fx("band.json")])[0] == 2


def test_separate():
    code, out = run(["separate", fx("step.json"), fx("zero.json")])
    doc = json.loads(out)
    assert code == 0 and doc["U"] == ["3/4", "5/4"] and doc["V"] == ["-1/4", "1/4"]
    assert run(["separate", fx("step.json"), fx("step.json")])[0] == 2


def test_game_script_widths_monotone(tmp_path):
    widths = tmp_path / "w.csv"
    code, out = run(["game", fx("shrinking-8.json"), "--widths", str(widths)])
    assert code == 0 and json.loads(out)["all_hold"]
    rows = list(csv.DictReader(io.StringIO(widths.read_text())))
    assert [int(r["round"]) for r in rows] == list(range(1, 9))
    from fractions import Fraction

    lo = [Fraction(r["min_width_exact"]) for r in rows]
    hi = [Fraction(r["max_width_exact"]) for r in rows]
    assert lo == sorted(lo, reverse=True) and hi == sorted(hi, reverse=True)


def test_game_csv_format():
    code, out = run(
        ["game", fx("shrinking-8.json"), "--format", "csv", "--rounds", "3"]
    )
    lines = out.strip().splitlines()
    assert (
        code == 0
        and lines[0].startswith("round,min_width,max_width")
        and len(lines) == 4
    )


def test_game_bad_nesting_names_round(capsys):
    code, _ = run(["game", fx("bad-nesting-3.json")])
    assert code == 2
    assert "round 3" in capsys.readouterr().err


def test_game_zero_rounds():
    assert run(["game", fx("shrinking-8.json"), "--rounds", "0"])[0] == 2


def test_game_replays_transcript(tmp_path):
    script = tmp_path / "s.json"
    code, out = run(
        [
            "game",
            "--kind",
            "choquet_vietoris",
            "--adversary",
            "alternating-pinch",
            "--rounds",
            "3",
            "--save-script",
            str(script),
        ]
    )
    assert code == 0
    t = tmp_path / "t.json"
    t.write_text(out)
    assert run(["game", str(t)]) == run(["game", str(script)])


@pytest.mark.parametrize(
    "name",
    [
        "upper-not-lower",
        "addition-not-continuous",
        "hausdorff-separation",
        "s-equals-c",
    ],
)
def test_examples(name):
    code, out = run(["examples", name, "--truncate", "6"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["example"] == name


def test_examples_csv():
    code, out = run(
        ["examples", "addition-not-continuous", "--format", "csv", "--truncate", "3"]
    )
    lines = out.strip().splitlines()
    assert (
        code == 0 and lines[0] == "# addition-not-continuous: pass" and len(lines) == 5
    )


def test_unknown_example():
    assert run(["examples", "nope"])[0] == 2


def test_entry_point_help(capsys):
    assert main(["--help"]) == 0
