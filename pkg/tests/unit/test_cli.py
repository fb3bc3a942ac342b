import json

import pandas as pd
import pytest
from mockito import unstub, when

from combcache import cli
from combcache.analysis.corollary import CorollaryViolation
from combcache.shared import fs
from combcache.shared.utils import load_jsonl


@pytest.fixture(autouse=True)
def _unstub():
    yield
    unstub()


def test_simulate(capsys):
    args = ["simulate", "--H", "4", "--r", "2", "--scheme", "asymmetric", "--g", "2"]
    assert cli.main(args) == cli.EXIT_OK

    out = capsys.readouterr().out
    assert "B=10" in out
    assert "M    = 6/5" in out
    assert "user 6: PASS" in out


def test_simulate_routing_with_random_demands(capsys):
    args = [
        "simulate", "--H", "4", "--r", "2", "--scheme", "routing",
        "--m-fraction", "1/3", "--random-demands", "2", "--seed", "5",
    ]
    assert cli.main(args) == cli.EXIT_OK
    assert capsys.readouterr().out.count("scheme=routing") == 3


def test_simulate_explicit_demand_and_dump(output_dir):
    args = [
        "simulate", "--H", "4", "--r", "2", "--N", "2", "--scheme", "baseline", "--g", "3",
        "--demand", "1,2,1,2,1,2", "--dump-transcript", "run.jsonl",
    ]
    assert cli.main(args) == cli.EXIT_OK

    records = load_jsonl(str(output_dir / fs.TRANSCRIPTS_DIR / "run.jsonl"))
    assert len([r for r in records if r["direction"] == "server_to_relay"]) == 4


@pytest.mark.parametrize(
    "args",
    [
        ["simulate", "--H", "4", "--r", "2", "--g", "2"],
        ["simulate", "--H", "4", "--r", "2", "--scheme", "baseline", "--g", "4"],
        ["simulate", "--H", "4", "--r", "2", "--N", "3", "--scheme", "baseline", "--g", "2"],
        ["simulate", "--H", "4", "--r", "2", "--scheme", "routing", "--m-fraction", "2"],
        ["simulate", "--H", "4", "--r", "2", "--scheme", "baseline", "--g", "2",
         "--demand", "1,x"],
        ["sweep", "--H", "2", "--r", "4"],
        ["sweep", "--H", "4", "--r", "2", "--schemes", "routing"],
        ["verify", "--H-range", "5:3"],
    ],
)
def test_invalid_input(args):
    assert cli.main(args) == cli.EXIT_INVALID


def test_sweep(output_dir):
    assert cli.main(["sweep", "--H", "6", "--r", "3", "--N", "20", "--output", "tradeoff.csv",
                     "--workers", "1", "--grid", "11"]) == cli.EXIT_OK

    df = pd.read_csv(output_dir / fs.TABLES_DIR / "tradeoff.csv")
    assert list(df.columns) == cli.SWEEP_COLUMNS

    points = df[df.scheme.isin(["baseline", "asymmetric"])]
    assert len(points) == 20
    row = points[(points.scheme == "asymmetric") & (points.g == 5)].iloc[0]
    assert row.M_exact == "1660/209"
    assert row.R1_exact == "84/209"
    assert (row.k1, row.k2, row.k3, row.n) == (249, 378, 1512, 1245)

    envelope = df[df.scheme == "envelope:asymmetric"]
    assert len(envelope) == 11
    assert envelope.M_exact.iloc[-1] == "20"


def test_sweep_empty_gain_range(output_dir):
    assert cli.main(["sweep", "--H", "4", "--r", "2", "--g-min", "5", "--output", "none.csv",
                     "--workers", "1"]) == cli.EXIT_OK

    df = pd.read_csv(output_dir / fs.TABLES_DIR / "none.csv")
    assert list(df.columns) == cli.SWEEP_COLUMNS
    assert len(df) == 0


def test_parser_keeps_only_given_flags():
    for args in (
        ["simulate", "--H", "4", "--r", "2"],
        ["sweep", "--H", "4", "--r", "2"],
        ["verify", "--H", "4"],
        ["compare", "--H", "4", "--r", "2"],
    ):
        given = vars(cli.build_parser().parse_args(args))
        assert all(value is not None for value in given.values())
        assert set(given) <= {"command", "H", "r"}


def test_sweep_zero_g_max_gives_header_only(output_dir):
    assert cli.main(["sweep", "--H", "4", "--r", "2", "--g-max", "0", "--output", "zero.csv",
                     "--workers", "1"]) == cli.EXIT_OK

    df = pd.read_csv(output_dir / fs.TABLES_DIR / "zero.csv")
    assert len(df) == 0


def test_config_file_overlaid_with_flags(tmp_path, output_dir):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"H": 4, "r": 2, "schemes": ["baseline"], "grid": 5}))

    args = ["sweep", "--config", str(config), "--H", "5", "--output", "cfg.csv", "--workers", "1"]
    assert cli.main(args) == cli.EXIT_OK

    df = pd.read_csv(output_dir / fs.TABLES_DIR / "cfg.csv")
    assert set(df.H) == {5}
    assert set(df.scheme) == {"baseline", "envelope:baseline"}

    assert cli.main(["sweep", "--config", str(tmp_path / "missing.json")]) == cli.EXIT_INVALID


def test_compare(capsys):
    assert cli.main(["compare", "--H", "6", "--r", "3"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "K1=10 K2=4: equal memories from g=6" in out
    assert "n_asym" in out and "1245" in out
    assert "Asymmetric strictly lower" in out


def test_compare_reports_violation(capsys):
    when(cli).corollary_check(6, 3).thenRaise(CorollaryViolation(4, "forced"))
    assert cli.main(["compare", "--H", "6", "--r", "3"]) == cli.EXIT_FAILURE
    assert "g=4: forced" in capsys.readouterr().err


def test_verify(capsys):
    assert cli.main(["verify", "--H", "4", "--r", "2", "--workers", "1"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "simulate asymmetric H=4 r=2 g=3" in out


def test_verify_counts_failures(capsys):
    when(cli).simulate_case(...).thenReturn(
        {"H": 4, "r": 2, "scheme": "baseline", "g": 1, "B": 4, "demands": 1,
         "failures": ["d=[1]: DecodeFailure: forced"]}
    )
    assert cli.main(["verify", "--H", "4", "--r", "2", "--workers", "1"]) == cli.EXIT_FAILURE
    assert "FAIL simulate baseline" in capsys.readouterr().out


def test_verify_zero_random_demands(capsys):
    args = ["verify", "--H", "4", "--r", "2", "--random-demands", "0", "--workers", "1"]
    assert cli.main(args) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "demands=1" in out
    assert "demands=6" not in out


def test_verify_default_random_demands(capsys):
    assert cli.main(["verify", "--H", "3", "--r", "1", "--workers", "1"]) == cli.EXIT_OK
    assert f"demands={1 + cli.VERIFY_RANDOM_DEMANDS}" in capsys.readouterr().out
