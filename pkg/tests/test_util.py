from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lce_lab.errors import ConfigError
from lce_lab.util import ceil_log2, dump_json, parse_rational, rational_str


class TestParseRational:
    @pytest.mark.parametrize(
        "raw,expect",
        [
            ("2/3", Fraction(2, 3)),
            ("-7/2", Fraction(-7, 2)),
            ("5", Fraction(5)),
            (4, Fraction(4)),
            ({"num": "5", "den": "8"}, Fraction(5, 8)),
            ({"num": 5, "den": 8}, Fraction(5, 8)),
            (" 1/3 ", Fraction(1, 3)),
        ],
    )
    def test_accepted_forms(self, raw, expect):
        assert parse_rational(raw) == expect

    @pytest.mark.parametrize(
        "raw", ["0.5", "1e-3", "a/b", {"num": "1"}, None, True, [1, 2], "1/0"]
    )
    def test_rejected_forms(self, raw):
        with pytest.raises(ConfigError):
            parse_rational(raw)

    @given(st.fractions())
    def test_round_trip(self, q):
        assert parse_rational(rational_str(q)) == q


class TestCeilLog2:
    @pytest.mark.parametrize(
        "x,expect",
        [
            (Fraction(1), 0),
            (Fraction(2), 1),
            (Fraction(12), 4),
            (Fraction(5, 2), 2),
            (Fraction(1, 3), -1),
            (Fraction(1, 4), -2),
            (Fraction(1, 1024), -10),
        ],
    )
    def test_values(self, x, expect):
        assert ceil_log2(x) == expect

    @given(st.fractions(min_value="1/100000", max_value=100000).filter(lambda q: q > 0))
    def test_tight_bracket(self, x):
        t = ceil_log2(x)
        two_t = Fraction(2) ** t
        assert two_t >= x
        assert two_t / 2 < x

    def test_rejects_nonpositive(self):
        with pytest.raises(ConfigError):
            ceil_log2(Fraction(0))


class TestDumpJson:
    def test_sorted_keys_and_newline(self):
        text = dump_json({"b": 1, "a": 2})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")
