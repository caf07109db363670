import numpy as np
import pytest

from cirlab import predictors
from cirlab.eca import Configuration, Rule, evolve
from cirlab.errors import UnsupportedRule
from cirlab.predictors import (Rule90Predictor, ShiftPeriodicPredictor, get_predictor, predict, predict_rule90,
                               predict_rule158, predict_with_work, register, registered_rules, validate)

from conftest import as_black, binomial_row, ref_rows

REQUIRED = [0, 8, 32, 40, 96, 4, 12, 36, 44, 76, 2, 6, 16, 24, 90, 158]


def test_required_rules_registered():
    assert set(REQUIRED) <= set(registered_rules())


def test_examples():
    assert predict(0, 7).empty
    assert predict(4, 100).to_text() == "0:1"
    assert predict(2, 5).to_text() == "-5:1"
    assert predict(158, 4).bits == "111011101"
    assert predict(90, 4).to_text() == "-4:100000001"
    assert predict_rule158(3).bits == "1110011"
    assert predict_rule158(2).bits == "11101"
    assert predict_rule90(0).to_text() == "0:1"
    assert predict_rule90(5).bits == "10100000101"


def test_rule158_row_9_matches_reference():
    ref = ref_rows(158, 9)[9]
    assert as_black(predict_rule158(9)) == ref


def test_rule90_powers_of_two():
    for k in range(1, 9):
        n = 2**k
        row = predict_rule90(n)
        assert as_black(row) == {-n, n}
        assert as_black(row) == binomial_row(n)


def test_unsupported_rules():
    for i in (30, 110, 54):
        with pytest.raises(UnsupportedRule):
            predict(i, 3)


@pytest.mark.parametrize("index", REQUIRED + [18, 26, 82, 146, 154, 210, 218, 214])
def test_oracle_equivalence(index):
    horizon = 2048 if index in (90, 158) else 300
    pred = validate(index, horizon)
    assert pred.validated_horizon == horizon


def test_oracle_equivalence_against_reference_interpreter():
    for index in REQUIRED:
        ref = ref_rows(index, 40)
        for n in range(41):
            assert as_black(predict(index, n)) == ref[n]


def test_rule158_length_law():
    for n in range(1, 2049):
        assert predict_rule158(n).width == 2 * n + 1


def test_sliding_direction_read_from_simulation():
    p = get_predictor(2)
    assert isinstance(p, ShiftPeriodicPredictor)
    assert p.kind == "Sliding" and p.shift == -1
    assert get_predictor(16).shift == 1
    assert get_predictor(0).kind == "Vanishing"
    assert get_predictor(4).kind == "Fixed"


def test_work_bounds():
    ns = np.array([2**k for k in range(6, 12)])
    for index in (0, 8, 4, 12):
        works = {predict_with_work(index, n)[1] for n in ns}
        assert len(works) == 1
    for index in (2, 90, 158):
        works = np.array([predict_with_work(index, n)[1] for n in ns])
        assert np.all(works <= 4 * ns + 4)
    for index in (90, 158):
        works = np.array([predict_with_work(index, n)[1] for n in ns])
        slope = np.polyfit(np.log(ns), np.log(works), 1)[0]
        assert slope == pytest.approx(1.0, abs=0.05)


def test_validate_reports_mismatch():
    bad = Rule90Predictor(Rule(30), "Rule90Parity")
    register(30, lambda: bad)
    try:
        with pytest.raises(AssertionError, match="n=1"):
            validate(30, 10)
    finally:
        predictors._FACTORIES.pop(30)
        get_predictor.cache_clear()
    with pytest.raises(UnsupportedRule):
        predict(30, 1)


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        predict(90, -1)
