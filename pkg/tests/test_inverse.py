"""Permutation schedules and truncated permuted radical inverses."""

import json

import pytest
from fractions import Fraction

from rbqmc.inverse import (
    DigitValue,
    PermutationSpec,
    radical_inverse_digits,
    radical_inverse_truncated,
    truncate,
)
from rbqmc.numeration import RationalBase, expand_digits

B32 = RationalBase(3, 2)
B2 = RationalBase(2, 1)
IDENT3 = PermutationSpec.identity(3)
REV3 = PermutationSpec.reversal(3)


class TestPermutationSpec:
    def test_identity_and_reversal_tables(self):
        assert IDENT3.perm_at(1) == (0, 1, 2)
        assert REV3.perm_at(5) == (2, 1, 0)
        assert PermutationSpec.reversal(2).perm_at(1) == (1, 0)

    def test_schedule_preperiod_then_cycle(self):
        spec = PermutationSpec(
            u=3,
            preperiod=((1, 2, 0),),
            period=((0, 1, 2), (2, 1, 0)),
        )
        assert spec.perm_at(1) == (1, 2, 0)
        assert spec.perm_at(2) == (0, 1, 2)
        assert spec.perm_at(3) == (2, 1, 0)
        assert spec.perm_at(4) == (0, 1, 2)
        assert spec.perm_at(100) == spec.perm_at(2)  # same parity past preperiod

    def test_inverse_at(self):
        spec = PermutationSpec(u=3, preperiod=(), period=((1, 2, 0),))
        inv = spec.inverse_at(7)
        table = spec.perm_at(7)
        for digit in range(3):
            assert inv[table[digit]] == digit

    def test_rejects_non_permutations(self):
        with pytest.raises(ValueError):
            PermutationSpec(u=3, preperiod=(), period=((0, 0, 1),))
        with pytest.raises(ValueError):
            PermutationSpec(u=3, preperiod=((0, 1),), period=((0, 1, 2),))
        with pytest.raises(ValueError):
            PermutationSpec(u=3, preperiod=(), period=())  # period nonempty

    def test_json_roundtrip(self):
        spec = PermutationSpec(
            u=3, preperiod=((2, 0, 1),), period=((0, 1, 2), (2, 1, 0))
        )
        blob = spec.dumps()
        parsed = json.loads(blob)
        assert set(parsed) == {"u", "preperiod", "period"}
        assert PermutationSpec.loads(blob) == spec
        assert PermutationSpec.from_json(spec.to_json()) == spec


class TestRadicalInverse:
    def test_frozen_values(self):
        assert radical_inverse_truncated(5, B32, IDENT3, 4) == Fraction(32, 81)
        assert radical_inverse_truncated(1, B32, REV3, 4) == Fraction(26, 81)
        assert radical_inverse_truncated(2, B32, IDENT3, 2) == Fraction(5, 9)
        assert radical_inverse_truncated(0, B32, IDENT3, 5) == 0

    def test_van_der_corput_base_two(self):
        ident2 = PermutationSpec.identity(2)
        want = [Fraction(p, 8) for p in (0, 4, 2, 6, 1, 5, 3, 7)]
        got = [radical_inverse_truncated(n, B2, ident2, 3) for n in range(8)]
        assert got == want

    def test_matches_direct_digit_sum(self):
        # independent evaluation: sum sigma_r(a_r) u^-r over expanded digits
        spec = PermutationSpec(
            u=3, preperiod=((2, 0, 1),), period=((0, 2, 1), (1, 0, 2))
        )
        for n in range(60):
            digits = expand_digits(n, B32, 6).digits
            want = sum(
                Fraction(spec.perm_at(r)[a], 3**r)
                for r, a in enumerate(digits, start=1)
            )
            assert radical_inverse_truncated(n, B32, spec, 6) == want

    def test_truncation_step_adds_one_scaled_digit(self):
        for n in range(40):
            digits = expand_digits(n, B32, 7).digits
            for t in range(1, 6):
                lo = radical_inverse_truncated(n, B32, REV3, t)
                hi = radical_inverse_truncated(n, B32, REV3, t + 1)
                assert hi - lo == Fraction(REV3.perm_at(t + 1)[digits[t]], 3 ** (t + 1))

    def test_level_k_prefixes_are_regular(self):
        # first u^k indices cover every k-digit prefix value exactly once
        for k in (1, 2, 3):
            seen = {radical_inverse_truncated(n, B32, IDENT3, k) for n in range(3**k)}
            assert seen == {Fraction(p, 3**k) for p in range(3**k)}

    def test_denominator_is_power_of_u(self):
        for n in range(20):
            x = radical_inverse_truncated(n, B32, REV3, 4)
            assert 81 % x.denominator == 0

    def test_rejects_negative_index(self):
        with pytest.raises(ValueError):
            radical_inverse_truncated(-1, B32, IDENT3, 3)


class TestDigitValue:
    def test_digits_and_tail(self):
        dv = DigitValue(base_u=3, digits=(2, 0, 1))
        assert [dv.digit(j) for j in (1, 2, 3)] == [2, 0, 1]
        assert dv.digit(9) == 0  # implicit zero tail

    def test_truncate(self):
        dv = DigitValue(base_u=3, digits=(2, 0, 1))
        assert truncate(dv, 2) == Fraction(6, 9)
        assert truncate(dv, 3) == Fraction(19, 27)
        assert truncate(dv, 5) == Fraction(19 * 9, 3**5)

    def test_radical_inverse_digits_consistent(self):
        for n in range(30):
            dv = radical_inverse_digits(n, B32, REV3, 5)
            assert truncate(dv, 5) == radical_inverse_truncated(n, B32, REV3, 5)
