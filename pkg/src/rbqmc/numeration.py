"""Digit expansions of integers in a rational base u/v.

The expansion is driven by the recurrence z_r = (v*z_{r-1} - a_r) / u where
a_r is the unique digit in {0, ..., u-1} that makes the division exact.  All
arithmetic is unbounded-integer; digits come low-order first.  For u > v and
z >= 0 the expansion is finite; for other inputs it may stream forever, so
states extend lazily and a cap is threaded through every termination query.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class RationalBase:
    """A reduced fraction u/v with u >= 2, v >= 1 and gcd(u, v) = 1."""

    u: int
    v: int = 1

    def __post_init__(self) -> None:
        if self.u < 2:
            raise ValueError(f"numerator u must be >= 2, got {self.u}")
        if self.v < 1:
            raise ValueError(f"denominator v must be >= 1, got {self.v}")
        if math.gcd(self.u, self.v) != 1:
            raise ValueError(f"u and v must be coprime, got {self.u}/{self.v}")

    @classmethod
    def parse(cls, text: str) -> "RationalBase":
        """Parse "3/2" or "3" into a RationalBase."""
        parts = text.strip().split("/")
        if len(parts) == 1:
            return cls(int(parts[0]), 1)
        if len(parts) == 2:
            return cls(int(parts[0]), int(parts[1]))
        raise ValueError(f"cannot parse base {text!r}")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.u, self.v)

    def __str__(self) -> str:
        return f"{self.u}/{self.v}" if self.v != 1 else f"{self.u}"


@dataclass
class ExpansionState:
    """Lazily extended digit/remainder stream for one integer.

    digits[r-1] holds a_r and remainders[r-1] holds z_r.  Once a remainder
    hits zero every later digit is zero (the recurrence forces a_r = 0,
    z_r = 0 from z_{r-1} = 0), which is recorded in ``termination_index``.

    A state is cheap to extend but not thread-safe; share only after you
    stop extending it.
    """

    z0: int
    base: RationalBase
    digits: list[int] = field(default_factory=list)
    remainders: list[int] = field(default_factory=list)

    def extend_to(self, r: int) -> None:
        """Make at least r digits available."""
        u, v = self.base.u, self.base.v
        while len(self.digits) < r:
            z_prev = self.remainders[-1] if self.remainders else self.z0
            a = (v * z_prev) % u
            self.digits.append(a)
            self.remainders.append((v * z_prev - a) // u)

    def digit(self, r: int) -> int:
        """a_r for r >= 1."""
        self.extend_to(r)
        return self.digits[r - 1]

    def remainder(self, r: int) -> int:
        """z_r for r >= 0 (z_0 is the expanded integer itself)."""
        if r == 0:
            return self.z0
        self.extend_to(r)
        return self.remainders[r - 1]

    @property
    def terminated(self) -> bool:
        """True iff a zero remainder has shown up among the computed steps."""
        return self.termination_index is not None

    @property
    def termination_index(self) -> Optional[int]:
        """Smallest computed r with z_r = 0, or None if none seen yet."""
        if self.z0 == 0:
            return 0
        for i, z in enumerate(self.remainders):
            if z == 0:
                return i + 1
        return None


def expand_digits(z: int, base: RationalBase, r: int) -> ExpansionState:
    """First r digits (and remainders) of the u/v-adic expansion of z.

    Defined for every integer z, negatives included.  The returned state can
    be extended past r later without recomputing the prefix.
    """
    if r < 0:
        raise ValueError("digit count must be >= 0")
    state = ExpansionState(z0=z, base=base)
    state.extend_to(r)
    return state


def reconstruct(digits: Sequence[int], remainder: int, base: RationalBase) -> int:
    """Rebuild z from a digit prefix a_1..a_j and the remainder z_j.

    Evaluates sum_r (a_r / v) * (u/v)^(r-1) + z_j * (u/v)^j exactly.  Raises
    ValueError if the digits are out of range or the sum is not an integer
    (either means the prefix does not belong to any expansion).
    """
    u, v = base.u, base.v
    for a in digits:
        if not 0 <= a < u:
            raise ValueError(f"digit {a} out of range for base {base}")
    # Horner from the high end: value = a_1/v + (u/v) * (a_2/v + ...).
    acc = Fraction(remainder)
    ratio = base.ratio
    for a in reversed(digits):
        acc = Fraction(a, v) + ratio * acc
    if acc.denominator != 1:
        raise ValueError(
            f"digits {tuple(digits)} with remainder {remainder} do not "
            f"reconstruct an integer in base {base}"
        )
    return acc.numerator


def expansion_length(z: int, base: RationalBase, cap: int) -> Optional[int]:
    """Largest index with a nonzero digit, if the expansion ends within cap.

    Returns None when no zero remainder occurs in the first ``cap`` steps;
    infinite expansions are legitimate (z < 0, or u <= v), so this is a
    report, not an error.  z = 0 has length 0.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    if z == 0:
        return 0
    state = ExpansionState(z0=z, base=base)
    last_nonzero = 0
    for r in range(1, cap + 1):
        a = state.digit(r)
        if a != 0:
            last_nonzero = r
        if state.remainders[r - 1] == 0:
            return last_nonzero
    return None
