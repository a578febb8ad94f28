from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lce_lab import (
    PrefixMachine,
    TranslationWitness,
    check_usch,
    complexity,
    identity_witness,
    machine_from_dict,
    machine_to_dict,
    measure,
    pad_width,
    set_real,
    uniformize,
)
from lce_lab.errors import (
    ConfigError,
    ConstructionError,
    MachineFormatError,
    PrefixFreeError,
)
from lce_lab.machines import OVERFLOW_ERROR, find_prefix_violation


def three_code():
    return PrefixMachine("B3", {"0": "1", "10": "10", "11": "101"})


binary = st.text(alphabet="01", min_size=0, max_size=6)


@st.composite
def prefix_free_codes(draw):
    """Grow a code tree by splitting leaves, then keep a nonempty subset."""
    codes = [""]
    for _ in range(draw(st.integers(min_value=0, max_value=8))):
        i = draw(st.integers(min_value=0, max_value=len(codes) - 1))
        parent = codes.pop(i)
        codes.extend([parent + "0", parent + "1"])
    mask = draw(st.lists(st.booleans(), min_size=len(codes), max_size=len(codes)))
    kept = [c for c, keep in zip(codes, mask) if keep]
    return kept or codes[:1]


class TestValidation:
    def test_accepts_prefix_free(self):
        three_code()

    def test_rejects_prefix_pair(self):
        with pytest.raises(PrefixFreeError) as err:
            PrefixMachine("bad", {"0": "1", "01": "1"})
        assert err.value.pair == ("0", "01")

    def test_rejects_non_binary(self):
        with pytest.raises(MachineFormatError):
            PrefixMachine("bad", {"2": "1"})

    @given(st.lists(binary, min_size=1, max_size=12, unique=True))
    def test_violation_finder_matches_all_pairs_scan(self, codes):
        brute = any(
            a != b and b.startswith(a) for a in codes for b in codes
        )
        assert (find_prefix_violation(codes) is not None) == brute


class TestMeasure:
    def test_complete_three_code_machine(self):
        assert measure(three_code()) == 1

    def test_empty_machine(self):
        assert measure(PrefixMachine("empty", {})) == 0

    def test_single_code(self):
        assert measure(PrefixMachine("half", {"0": "1"})) == Fraction(1, 2)

    @given(prefix_free_codes())
    def test_kraft_bound(self, codes):
        m = PrefixMachine("m", {c: "1" for c in codes})
        assert measure(m) <= 1


class TestComplexity:
    def test_unique_code(self):
        assert complexity(three_code(), "10") == 2

    def test_missing_output_is_none(self):
        assert complexity(three_code(), "0000") is None

    def test_min_over_competing_codes(self):
        m = PrefixMachine("m", {"0": "111", "10": "111"})
        assert complexity(m, "111") == 1


class TestUniformize:
    def test_pad_width_from_constant(self):
        assert pad_width(Fraction(1)) == 1
        assert pad_width(Fraction(3)) == 2
        assert pad_width(Fraction(5, 2)) == 2

    def test_identity_on_three_code_machine(self):
        a = uniformize(three_code(), identity_witness(Fraction(1)))
        assert a.table["110"] == "101"
        assert a.table["111"] == "110"  # 5/8 + 1/8 = 3/4
        assert a.table["00"] == "1"
        assert a.table["01"] == "1"  # 1/2 + 1/2 overflows one bit: saturate
        assert a.pad_length == 1

    def test_measure_preserved(self):
        b = three_code()
        assert measure(uniformize(b, identity_witness(Fraction(1)))) == measure(b)

    def test_constant_zero_map_uses_lowest_strings(self):
        w = TranslationWitness("zero", lambda q: Fraction(0), Fraction(1))
        a = uniformize(three_code(), w)
        assert a.table["110"] == "000" and a.table["111"] == "001"

    def test_image_outside_unit_interval_reported_per_code(self):
        w = TranslationWitness("shift", lambda q: q + 1, Fraction(1))
        with pytest.raises(ConstructionError) as err:
            uniformize(three_code(), w)
        assert set(err.value.codes) == {"0", "10", "11"}

    def test_partial_witness_rejected(self):
        w = TranslationWitness("p", lambda q: q, Fraction(1), total=False)
        with pytest.raises(ConfigError):
            uniformize(three_code(), w)

    def test_error_overflow_policy(self):
        with pytest.raises(ConstructionError):
            uniformize(three_code(), identity_witness(Fraction(1)), overflow=OVERFLOW_ERROR)

    @given(prefix_free_codes(), st.integers(min_value=1, max_value=4))
    def test_measure_preservation_and_prefix_freeness_generic(self, codes, den):
        table = {c: format(i % 4, "02b") for i, c in enumerate(codes)}
        b = PrefixMachine("b", table)
        w = TranslationWitness(f"shrink{den}", lambda q: q / den, Fraction(1, den) + 1)
        a = uniformize(b, w)  # construction validates prefix-freeness
        assert measure(a) == measure(b)
        assert len(a.table) == len(b.table) * (1 << a.pad_length)


class TestCheckUsch:
    def test_identity_transport_passes_with_pad_constant(self):
        b = three_code()
        a = uniformize(b, identity_witness(Fraction(1)))
        x = set_real(lambda i: i % 2 == 0, Fraction(2, 3), name="evens_real")
        report = check_usch(a, b, x, x, 1, 10)
        assert report.passed and report.first_failure is None
        assert [row.n for row in report.rows] == [1, 2, 3]

    def test_machine_against_itself_with_zero_constant(self):
        b = three_code()
        x = set_real(lambda i: i % 2 == 0, Fraction(2, 3), name="evens_real")
        assert check_usch(b, b, x, x, 0, 8).passed

    def test_missing_codes_fail_at_that_length(self):
        b = three_code()
        empty = PrefixMachine("empty", {})
        x = set_real(lambda i: i % 2 == 0, Fraction(2, 3), name="evens_real")
        report = check_usch(empty, b, x, x, 5, 8)
        assert not report.passed and report.first_failure == 1

    def test_complexity_transfer_along_witness(self):
        # odds-real below evens-real via q -> q/2 with constant 1: the
        # transported machine codes the reduced real's prefixes within one bit.
        alpha = set_real(lambda i: i % 2 == 1, Fraction(1, 3), name="odds_real")
        beta = set_real(lambda i: i % 2 == 0, Fraction(2, 3), name="evens_real")
        witness = TranslationWitness("halve", lambda q: q / 2, Fraction(1))
        from lce_lab.dyadic import truncate

        table = {}
        for n in range(1, 33):
            table["1" * (n - 1) + "0"] = truncate(beta.limit, n).bits
        b = PrefixMachine("codes-evens", table)
        a = uniformize(b, witness)
        report = check_usch(a, b, alpha, beta, 1, 32)
        assert report.passed
        assert len(report.rows) == 32
        for row in report.rows:
            assert row.alpha_complexity <= row.beta_complexity + 1


class TestMutationControl:
    def test_dropping_a_pad_breaks_measure_equality(self):
        b = three_code()
        a = uniformize(b, identity_witness(Fraction(1)))
        mutated = dict(a.table)
        mutated.pop("111")
        damaged = PrefixMachine("damaged", mutated, pad_length=a.pad_length)
        assert measure(damaged) != measure(b)
        assert measure(a) == measure(b)


class TestMachineFiles:
    def test_round_trip(self):
        doc = machine_to_dict(uniformize(three_code(), identity_witness(Fraction(1))))
        again = machine_from_dict(doc)
        assert again.table == {c["code"]: c["output"] for c in doc["entries"]}
        assert again.pad_length == 1

    def test_entries_sorted_for_determinism(self):
        doc = machine_to_dict(three_code())
        codes = [e["code"] for e in doc["entries"]]
        assert codes == sorted(codes)

    def test_duplicate_codes_rejected(self):
        with pytest.raises(MachineFormatError):
            machine_from_dict(
                {"entries": [{"code": "0", "output": "1"}, {"code": "0", "output": "0"}]}
            )

    def test_prefix_violation_from_file_names_pair(self):
        with pytest.raises(PrefixFreeError, match=r"prefix violation \(0, 01\)"):
            machine_from_dict(
                {"entries": [{"code": "0", "output": "1"}, {"code": "01", "output": "1"}]}
            )

    def test_malformed_documents_rejected(self):
        for doc in ({}, {"entries": "x"}, {"entries": [{"code": "0"}]}):
            with pytest.raises(MachineFormatError):
                machine_from_dict(doc)
