"""Permuted radical inverse in a rational base, and digit-prefix truncation.

The radical inverse of n maps its u/v-adic digits a_1, a_2, ... into [0, 1)
as sum_r sigma_r(a_r) / u^r, one permutation sigma_r per digit level.
Values are always reported truncated at an explicit level t, as an exact
Fraction with denominator dividing u^t; the untruncated limit is only a
finite sum in special cases and is never needed downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numeration import RationalBase, expand_digits


def _check_permutation(table: Sequence[int], u: int) -> tuple[int, ...]:
    t = tuple(table)
    if sorted(t) != list(range(u)):
        raise ValueError(f"{t} is not a permutation of 0..{u - 1}")
    return t


@dataclass(frozen=True)
class PermutationSpec:
    """Eventually periodic sequence of permutations of {0, ..., u-1}.

    Level r >= 1 uses preperiod[r-1] while r <= len(preperiod), then cycles
    through ``period``.  Eventually periodic specs are finitely serializable
    and cover the identity plus all standard scramblings; any object with
    ``perm_at``/``inverse_at`` methods is accepted wherever a spec is, as an
    escape hatch for programmatic permutation sequences.
    """

    u: int
    preperiod: tuple[tuple[int, ...], ...] = ()
    period: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.u < 2:
            raise ValueError("permutations need a base size u >= 2")
        object.__setattr__(
            self, "preperiod", tuple(_check_permutation(p, self.u) for p in self.preperiod)
        )
        period = tuple(_check_permutation(p, self.u) for p in self.period)
        if not period:
            raise ValueError("period must contain at least one permutation")
        object.__setattr__(self, "period", period)

    @classmethod
    def identity(cls, u: int) -> "PermutationSpec":
        return cls(u=u, period=(tuple(range(u)),))

    @classmethod
    def reversal(cls, u: int) -> "PermutationSpec":
        """sigma(x) = u - 1 - x at every level."""
        return cls(u=u, period=(tuple(range(u - 1, -1, -1)),))

    def perm_at(self, r: int) -> tuple[int, ...]:
        """The permutation applied at digit level r >= 1."""
        if r < 1:
            raise ValueError("digit levels start at 1")
        if r <= len(self.preperiod):
            return self.preperiod[r - 1]
        return self.period[(r - len(self.preperiod) - 1) % len(self.period)]

    def inverse_at(self, r: int) -> tuple[int, ...]:
        """Inverse permutation at level r."""
        table = self.perm_at(r)
        inv = [0] * self.u
        for digit, image in enumerate(table):
            inv[image] = digit
        return tuple(inv)

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "preperiod": [list(p) for p in self.preperiod],
            "period": [list(p) for p in self.period],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PermutationSpec":
        return cls(
            u=int(obj["u"]),
            preperiod=tuple(tuple(int(x) for x in p) for p in obj.get("preperiod", [])),
            period=tuple(tuple(int(x) for x in p) for p in obj["period"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "PermutationSpec":
        return cls.from_json(json.loads(text))


def perm_at(spec: PermutationSpec, r: int) -> tuple[int, ...]:
    return spec.perm_at(r)


@dataclass(frozen=True)
class DigitValue:
    """A value of [0, 1] given by prescribed base-u digits, not by magnitude.

    ``digits[j-1]`` is the level-j digit; levels beyond the explicit list
    repeat ``tail`` (tail = u - 1 expresses the admissible all-(u-1) tail,
    which a numeric rounding would collapse).
    """

    base_u: int
    digits: tuple[int, ...] = ()
    tail: int = 0

    def __post_init__(self) -> None:
        if self.base_u < 2:
            raise ValueError("base_u must be >= 2")
        object.__setattr__(self, "digits", tuple(self.digits))
        for d in (*self.digits, self.tail):
            if not 0 <= d < self.base_u:
                raise ValueError(f"digit {d} out of range for base {self.base_u}")

    def digit(self, j: int) -> int:
        if j < 1:
            raise ValueError("digit levels start at 1")
        return self.digits[j - 1] if j <= len(self.digits) else self.tail


def truncate(x: DigitValue, t: int) -> Fraction:
    """Sum of the first t prescribed digits: sum_{j<=t} x_j u^{-j}.

    This is digit truncation, not rounding; a value carrying an all-(u-1)
    tail truncates to the finite prefix sum.
    """
    if t < 1:
        raise ValueError("truncation level must be >= 1")
    u = x.base_u
    num = 0
    for j in range(1, t + 1):
        num = num * u + x.digit(j)
    return Fraction(num, u**t)


def radical_inverse_truncated(
    n: int, base: RationalBase, spec: PermutationSpec, t: int
) -> Fraction:
    """Permuted u/v-adic radical inverse of n, truncated at digit level t.

    Equals sum_{r<=t} sigma_r(a_r) / u^r where (a_r) is the u/v-adic digit
    stream of n.  Exact rational with denominator dividing u^t; lies in
    [0, 1 - u^-t].
    """
    if n < 0:
        raise ValueError("radical inverse is defined for n >= 0")
    if t < 1:
        raise ValueError("truncation level must be >= 1")
    u = base.u
    state = expand_digits(n, base, t)
    num = 0
    for r in range(1, t + 1):
        num = num * u + spec.perm_at(r)[state.digits[r - 1]]
    return Fraction(num, u**t)


def radical_inverse_digits(
    n: int, base: RationalBase, spec: PermutationSpec, t: int
) -> DigitValue:
    """The first t permuted digits of the radical inverse, as a DigitValue."""
    state = expand_digits(n, base, t)
    digits = tuple(spec.perm_at(r)[state.digits[r - 1]] for r in range(1, t + 1))
    return DigitValue(base_u=base.u, digits=digits)
