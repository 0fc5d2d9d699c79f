import json
import math

from hypothesis import given, settings, strategies as st

from ncqm.output import fmt, to_csv, to_json


@settings(max_examples=100)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_17_digits_round_trip(x):
    assert float(fmt(x)) == x


def test_special_values():
    assert fmt(float("nan")) == "nan"
    assert fmt(float("-inf")) == "-inf"
    assert fmt(True) == "true"
    assert fmt(3) == "3"


def test_csv_quotes_commas():
    text = to_csv(("a", "b"), [("x,y", 0.1)])
    assert text == 'a,b\n"x,y",0.10000000000000001\n'


def test_json_valid_and_ordered():
    data = {"b": 0.1, "a": [1, float("nan")], "c": {"d": "e"}}
    text = to_json(data)
    back = json.loads(text)
    assert list(back) == ["b", "a", "c"]
    assert back["b"] == 0.1
    assert back["a"][1] is None
    assert "0.10000000000000001" in text


def test_json_is_stable():
    data = {"x": math.pi, "y": [1.5, 2.5]}
    assert to_json(data) == to_json(dict(data))
