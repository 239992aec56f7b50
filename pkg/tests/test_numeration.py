"""Digit expansions in rational bases: recurrence, termination, rebuild."""

import pytest
from fractions import Fraction

from rbqmc.numeration import (
    ExpansionState,
    RationalBase,
    expand_digits,
    expansion_length,
    reconstruct,
)

BASES = [
    RationalBase(3, 2),
    RationalBase(4, 3),
    RationalBase(5, 2),
    RationalBase(5, 3),
    RationalBase(2, 1),
    RationalBase(2, 3),
]


class TestRationalBase:
    def test_parse_forms(self):
        assert RationalBase.parse("3/2") == RationalBase(3, 2)
        assert RationalBase.parse("3") == RationalBase(3, 1)
        assert RationalBase.parse(" 5 / 3 ") == RationalBase(5, 3)

    def test_str_roundtrip(self):
        assert str(RationalBase(3, 2)) == "3/2"
        assert str(RationalBase(3, 1)) == "3"
        for base in BASES:
            assert RationalBase.parse(str(base)) == base

    def test_ratio(self):
        assert RationalBase(3, 2).ratio == Fraction(3, 2)

    def test_rejects_bad_bases(self):
        with pytest.raises(ValueError):
            RationalBase(1, 1)  # u >= 2
        with pytest.raises(ValueError):
            RationalBase(4, 2)  # gcd(u, v) = 1
        with pytest.raises(ValueError):
            RationalBase(3, 0)  # v >= 1
        with pytest.raises(ValueError):
            RationalBase.parse("3/-2")


class TestRecurrence:
    def test_digit_and_remainder_recurrence(self):
        # a_r = (v z_{r-1}) mod u and z_r = (v z_{r-1} - a_r) / u, exactly
        for base in BASES:
            for z in range(-30, 31):
                state = expand_digits(z, base, 8)
                prev = z
                for r in range(1, 9):
                    a = (base.v * prev) % base.u
                    nxt = (base.v * prev - a) // base.u
                    assert state.digit(r) == a
                    assert state.remainder(r) == nxt
                    assert 0 <= a < base.u
                    prev = nxt

    def test_known_expansion_of_five(self):
        state = expand_digits(5, RationalBase(3, 2), 6)
        assert state.digits == [1, 0, 1, 2, 0, 0]
        assert state.remainders == [3, 2, 1, 0, 0, 0]
        assert state.termination_index == 4
        assert state.terminated

    def test_negative_one_never_terminates(self):
        state = expand_digits(-1, RationalBase(3, 2), 40)
        assert state.digits == [1] * 40
        assert state.remainders == [-1] * 40
        assert state.termination_index is None

    def test_u_below_v_never_terminates_for_positive(self):
        state = expand_digits(1, RationalBase(2, 3), 30)
        assert state.termination_index is None

    def test_zero_terminates_immediately(self):
        state = expand_digits(0, RationalBase(3, 2), 5)
        assert state.digits == [0] * 5
        assert state.termination_index == 0

    def test_lazy_extension_keeps_prefix(self):
        state = ExpansionState(z0=5, base=RationalBase(3, 2))
        assert state.digit(2) == 0
        first = list(state.digits)
        assert state.digit(6) == 0
        assert state.digits[:2] == first

    def test_nonnegative_terminates_when_u_exceeds_v(self):
        for base in BASES:
            if base.u <= base.v:
                continue
            for z in range(0, 200):
                assert expansion_length(z, base, 64) is not None


class TestReconstruct:
    def test_inverse_of_expansion_everywhere(self):
        # any digit prefix plus its remainder rebuilds z, all bases, z < 0 too
        for base in BASES:
            for z in range(-100, 101):
                state = expand_digits(z, base, 6)
                for j in range(7):
                    assert reconstruct(state.digits[:j], state.remainder(j), base) == z

    def test_known_value(self):
        assert reconstruct([1, 0], 2, RationalBase(3, 2)) == 5

    def test_rejects_out_of_range_digit(self):
        with pytest.raises(ValueError):
            reconstruct([3], 0, RationalBase(3, 2))

    def test_rejects_non_integer_combination(self):
        # digit string (0, 1) with remainder 0 belongs to no expansion in 3/2
        with pytest.raises(ValueError):
            reconstruct([0, 1], 0, RationalBase(3, 2))


class TestExpansionLength:
    def test_known_lengths(self):
        base = RationalBase(3, 2)
        assert expansion_length(0, base, 10) == 0
        assert expansion_length(5, base, 10) == 4
        assert expansion_length(5, base, 3) is None  # remainder not yet zero
        assert expansion_length(5, base, 4) == 4
        assert expansion_length(-1, base, 100) is None

    def test_matches_termination_index_for_positive(self):
        # final digit before termination is nonzero, so the two indices agree
        base = RationalBase(4, 3)
        for z in range(1, 80):
            state = expand_digits(z, base, 40)
            assert expansion_length(z, base, 40) == state.termination_index
