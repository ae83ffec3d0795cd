import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szilard import ExplicitDistribution, MixtureOfProducts
from szilard.cli import (
    cmd_entropy,
    cmd_work,
    main,
    parse_spec,
    render_spec,
    to_distribution,
)
from szilard.errors import ArityMismatch, ParseError, WeightSumError

C300_EV = 0.0179192407638041


# ----------------------------------------------------------------- parsing


def test_parse_mixture_structure():
    node = parse_spec("mix(0.5: bernoulli(1.0)^20, 0.5: bernoulli(0.5)^20)")
    dist = to_distribution(node)
    assert isinstance(dist, MixtureOfProducts)
    assert dist.n == 20
    assert dist.components == ((0.5, 1.0), (0.5, 0.5))


def test_parse_det_is_point_mass():
    dist = to_distribution(parse_spec("det(LR)"))
    assert isinstance(dist, ExplicitDistribution)
    assert dist.as_dict() == {"LR": 1.0}


def test_parse_det_all_same_letter_stays_structured():
    dist = to_distribution(parse_spec("det(LLLL)"))
    assert isinstance(dist, MixtureOfProducts)
    assert dist.components == ((1.0, 1.0),)


def test_parse_uniform_and_explicit():
    assert to_distribution(parse_spec("uniform^3")).components == ((1.0, 0.5),)
    d = to_distribution(parse_spec("explicit{LL: 0.25, LR: 0.75}"))
    assert d.as_dict() == pytest.approx({"LL": 0.25, "LR": 0.75})


def test_parse_probability_out_of_range_with_position():
    with pytest.raises(ParseError) as err:
        parse_spec("bernoulli(1.2)^5")
    assert err.value.line == 1
    assert err.value.col == 11


def test_parse_reports_expected_token():
    with pytest.raises(ParseError) as err:
        parse_spec("gaussian(0.5)^3")
    assert err.value.expected == "term"
    with pytest.raises(ParseError):
        parse_spec("bernoulli(0.5)^3 trailing")


def test_parse_weight_sum_error():
    with pytest.raises(WeightSumError):
        parse_spec("mix(0.5: bernoulli(0.5)^2, 0.6: bernoulli(0.7)^2)")


def test_parse_arity_mismatch():
    with pytest.raises(ArityMismatch):
        parse_spec("mix(0.5: bernoulli(0.5)^2, 0.5: bernoulli(0.7)^3)")
    with pytest.raises(ArityMismatch):
        parse_spec("explicit{LL: 0.5, R: 0.5}")


def test_mix_of_non_product_terms_becomes_explicit():
    d = to_distribution(parse_spec("mix(0.5: det(LRL), 0.5: uniform^3)"))
    assert isinstance(d, ExplicitDistribution)
    assert d.prob_of("LRL") == pytest.approx(0.5 + 0.5 / 8)
    assert d.prob_of("LLL") == pytest.approx(0.5 / 8)


_terms = st.one_of(
    st.builds(
        lambda q, n: f"bernoulli({q!r})^{n}",
        st.floats(min_value=0.0, max_value=1.0),
        st.integers(1, 50),
    ),
    st.builds(lambda n: f"uniform^{n}", st.integers(1, 50)),
    st.builds(
        lambda bits: "det(" + "".join("LR"[b] for b in bits) + ")",
        st.lists(st.integers(0, 1), min_size=1, max_size=8),
    ),
)


@settings(max_examples=60)
@given(_terms)
def test_roundtrip_plain_terms(text):
    node = parse_spec(text)
    assert parse_spec(render_spec(node)) == node


@settings(max_examples=60)
@given(
    st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=2, max_size=4),
    st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=4, max_size=4),
    st.integers(1, 30),
)
def test_roundtrip_mixtures(raw_weights, qs, n):
    total = math.fsum(raw_weights)
    weights = [w / total for w in raw_weights]
    text = "mix(" + ", ".join(
        f"{w!r}: bernoulli({q!r})^{n}" for w, q in zip(weights, qs)
    ) + ")"
    node = parse_spec(text)
    assert parse_spec(render_spec(node)) == node


@settings(max_examples=40)
@given(
    st.dictionaries(
        st.integers(0, 7), st.floats(min_value=0.05, max_value=1.0),
        min_size=1, max_size=8,
    )
)
def test_roundtrip_explicit(table):
    total = math.fsum(table.values())
    pairs = ", ".join(
        "".join("LR"[(i >> (2 - b)) & 1] for b in range(3)) + f": {p / total!r}"
        for i, p in table.items()
    )
    node = parse_spec("explicit{" + pairs + "}")
    assert parse_spec(render_spec(node)) == node


# ---------------------------------------------------------------- commands


def test_cmd_entropy_matches_library():
    out = cmd_entropy("bernoulli(0.7)^1000", 2e-4)
    assert out["n"] == 1000
    assert out["h_max_smooth"] == pytest.approx(931.377, abs=1e-3)
    assert out["h_min"] == pytest.approx(514.573, abs=1e-3)


def test_cmd_work_fully_known_string():
    out = cmd_work("det(LLLL)", 1e-3, 300.0)
    assert out["min_work"]["bits"] == 4.0
    assert out["min_work_executable"]["bits"] == 4.0
    expected_max = 4.0 + math.log2(1 / 1e-3) + math.log2(1 - 1e-3)
    assert out["max_work"]["bits"] == pytest.approx(expected_max, abs=1e-4)
    assert out["bennett"]["bits"] == 4.0
    assert out["shannon_limit"]["bits"] == 4.0


def test_cmd_work_reports_both_unit_systems():
    out = cmd_work("uniform^4", 1e-3, 300.0)
    assert out["work_value"]["ev"] == pytest.approx(C300_EV, rel=1e-5)
    assert out["min_work"]["joules"] == pytest.approx(0.0, abs=1e-30)
    assert out["bennett"]["bits"] == 0.0


def test_cmd_table1_rows(capsys):
    import csv as csv_mod
    import io

    assert main(["table1", "--epsilon", "2e-4", "--n", "1000"]) == 0
    text = capsys.readouterr().out
    rows = list(csv_mod.reader(io.StringIO(text)))
    assert rows[0] == ["row", "distribution", "min_work_bits", "max_work_bits",
                       "min_work_eV", "max_work_eV"]
    assert len(rows) == 5
    assert float(rows[2][4]) == pytest.approx(1.22967, abs=1e-4)
    assert float(rows[2][5]) == pytest.approx(3.43153, abs=1e-4)
    assert float(rows[4][2]) == 999.0
    assert float(rows[3][2]) <= 2.0  # half-deterministic mixture: nearly no sure work


def test_cmd_table1_byte_identical(capsys):
    main(["table1", "--epsilon", "1e-3"])
    first = capsys.readouterr().out
    main(["table1", "--epsilon", "1e-3"])
    assert capsys.readouterr().out == first


def test_cmd_figure3_convergence(capsys):
    assert main(["figure3"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "n,h_min_smooth,shannon,h_max_smooth,epsilon,p"
    last = lines[-1].split(",")
    n = int(last[0])
    assert n == 1600
    assert abs(float(last[3]) / n - 0.8813) <= 0.06
    assert abs(float(last[1]) / n - 0.8813) <= 0.06


def test_cmd_game_riskfree_clean(capsys):
    code = main(
        ["game", "--spec", "explicit{LL: 0.5, RR: 0.5}", "--epsilon", "0",
         "--seed", "9", "--samples", "2000"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["violations"] == []
    assert out["exact"]["success_prob"] == 1.0
    assert out["monte_carlo"]["success_rate"] == 1.0
    assert out["strategy"]["bets"] == [{"position": 0, "guess": "L"}]


def test_cmd_game_gambler(capsys):
    code = main(
        ["game", "--spec", "bernoulli(0.7)^3", "--strategy", "gambler",
         "--bet-size", "2", "--seed", "4", "--samples", "5000"]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["exact"]["success_prob"] == pytest.approx(0.49, abs=1e-9)
    assert len(out["strategy"]["bets"]) == 2
    mc = out["monte_carlo"]
    assert abs(mc["success_rate"] - 0.49) <= 4 * mc["stderr"]


def test_cmd_game_replay_byte_identical(capsys):
    argv = ["game", "--spec", "bernoulli(0.6)^4", "--seed", "77", "--samples", "3000"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_cli_error_envelope_parse(capsys):
    code = main(["entropy", "--spec", "bernoulli(1.2)^5"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == ""
    envelope = json.loads(captured.err)
    assert envelope["code"] == "ParseError"
    assert envelope["line"] == 1
    assert envelope["col"] == 11


def test_cli_error_envelope_missing_spec(capsys):
    code = main(["work"])
    envelope = json.loads(capsys.readouterr().err)
    assert code == 1
    assert envelope["code"] == "SzilardError"


def test_cli_spec_file(tmp_path, capsys):
    path = tmp_path / "spec.txt"
    path.write_text("uniform^2\n")
    assert main(["entropy", "--spec-file", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["shannon"] == 2.0


def test_cli_entropy_csv_format(capsys):
    main(["entropy", "--spec", "uniform^2", "--format", "csv"])
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0].startswith("n,epsilon,shannon")
    assert lines[1].startswith("2,0.001,2")


def test_cli_hidden_oracle_command(capsys):
    code = main(["oracle", "--spec", "explicit{LL: 0.5, LR: 0.3, RR: 0.2}",
                 "--epsilon", "0.25"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["brute_h_max_smooth"] == out["greedy_h_max_smooth"]
    assert out["brute_h_min_smooth"] <= out["greedy_h_min_smooth"] + 1e-6


def test_cli_table1_json_format(capsys):
    main(["table1", "--format", "json", "--n", "100"])
    rows = json.loads(capsys.readouterr().out)
    assert [r["row"] for r in rows] == [1, 2, 3, 4]
    assert rows[3]["min_work_bits"] == 99.0
