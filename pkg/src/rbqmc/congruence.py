"""Residue characterizations of digit-prefix interval membership.

For a box whose i-th side is the prefix interval [Y_i, Y_i + u_i^-k_i) with
Y_i given by digits y_{i,1..k_i}, membership of the level-t truncated radical
inverse of n is equivalent to a single congruence on n modulo u_i^k_i, and
joint membership across coordinates to one congruence modulo the product
(the u_i are pairwise coprime, so the residues recombine by CRT).  This
module computes those residues in closed form; tests confirm them against
exhaustive scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TYPE_CHECKING

from .inverse import PermutationSpec
from .numeration import RationalBase

if TYPE_CHECKING:
    from .sequence import GeneratorConfig


def mod_inverse(a: int, modulus: int) -> int:
    """Multiplicative inverse of a modulo ``modulus``, in [0, modulus).

    Requires gcd(a, modulus) = 1; modulus 1 yields 0 (the empty congruence).
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if modulus == 1:
        return 0
    if math.gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not invertible modulo {modulus} "
                         f"(gcd = {math.gcd(a, modulus)})")
    return pow(a, -1, modulus)


@dataclass(frozen=True)
class BoxDigits:
    """Per-coordinate digit prefixes y_{i,1..k_i} defining a prefix box.

    Side i is [Y_i, Y_i + u_i^-k_i) where Y_i = sum_j y_{i,j} u_i^-j.  Digit
    ranges are validated against the bases at the point of use.  A zero last
    digit is fine for membership residues; only the left-adjacent-interval
    operations require y_{i,k_i} > 0 (otherwise the left neighbor would fall
    outside [0, 1)).
    """

    digits: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        digits = tuple(tuple(int(d) for d in row) for row in self.digits)
        if not digits or any(len(row) < 1 for row in digits):
            raise ValueError("each coordinate needs at least one digit")
        object.__setattr__(self, "digits", digits)

    @property
    def levels(self) -> tuple[int, ...]:
        """k_i per coordinate."""
        return tuple(len(row) for row in self.digits)

    def check_bases(self, bases: Sequence[RationalBase]) -> None:
        if len(bases) != len(self.digits):
            raise ValueError("digit rows and bases disagree in dimension")
        for row, base in zip(self.digits, bases):
            for d in row:
                if not 0 <= d < base.u:
                    raise ValueError(f"digit {d} out of range for base {base}")

    def prefix_value(self, i: int, base: RationalBase) -> Fraction:
        """Left endpoint Y_i of side i."""
        num = 0
        for d in self.digits[i]:
            num = num * base.u + d
        return Fraction(num, base.u ** len(self.digits[i]))


def interval_residue(i: int, box: BoxDigits, spec: PermutationSpec,
                     base: RationalBase) -> int:
    """Residue r mod u^k_i with: truncated inverse of n lies in side i iff
    n = r mod u^k_i.

    Closed form: sum_j inv_sigma_j(y_{i,j}) * u^(j-1) * vbar^j where vbar
    inverts v modulo u^k_i.  Holds for every truncation level t >= k_i.
    """
    digits = box.digits[i]
    u, v = base.u, base.v
    k = len(digits)
    modulus = u**k
    vbar = mod_inverse(v % modulus, modulus)
    acc = 0
    upow = 1          # u^(j-1)
    vbarpow = 1       # vbar^j, updated before use
    for j, y in enumerate(digits, start=1):
        if not 0 <= y < u:
            raise ValueError(f"digit {y} out of range for base {base}")
        vbarpow = (vbarpow * vbar) % modulus
        acc = (acc + spec.inverse_at(j)[y] * upow * vbarpow) % modulus
        upow = (upow * u) % modulus
    return acc


@dataclass(frozen=True)
class ResidueSystem:
    """All residues attached to one box: per-coordinate and CRT-combined.

    ``v_inverses[i]`` inverts v_i mod u_i^k_i, ``crt_multipliers[i]`` inverts
    the product of the other moduli mod u_i^k_i, ``coordinate_residues[i]``
    characterizes side-i membership, and ``joint_residue`` (mod ``modulus``,
    the product of all u_i^k_i) characterizes simultaneous membership.
    """

    moduli: tuple[int, ...]
    v_inverses: tuple[int, ...]
    crt_multipliers: tuple[int, ...]
    coordinate_residues: tuple[int, ...]
    joint_residue: int

    @property
    def modulus(self) -> int:
        return math.prod(self.moduli)


def residue_system(box: BoxDigits, config: "GeneratorConfig") -> ResidueSystem:
    """Build the full residue system for a box under a generator config."""
    box.check_bases(config.bases)
    moduli = tuple(base.u**k for base, k in zip(config.bases, box.levels))
    total = math.prod(moduli)
    v_inverses = tuple(
        mod_inverse(base.v % mod, mod) for base, mod in zip(config.bases, moduli)
    )
    crt_multipliers = tuple(
        mod_inverse((total // mod) % mod, mod) for mod in moduli
    )
    coords = tuple(
        interval_residue(i, box, config.specs[i], config.bases[i])
        for i in range(len(moduli))
    )
    joint = 0
    for mod, mult, r in zip(moduli, crt_multipliers, coords):
        joint = (joint + mult * (total // mod) * r) % total
    return ResidueSystem(
        moduli=moduli,
        v_inverses=v_inverses,
        crt_multipliers=crt_multipliers,
        coordinate_residues=coords,
        joint_residue=joint,
    )


def joint_residue(box: BoxDigits, config: "GeneratorConfig") -> int:
    """Residue mod prod(u_i^k_i) for simultaneous membership in all sides."""
    return residue_system(box, config).joint_residue


def left_neighbor_offset(i: int, box: BoxDigits, spec: PermutationSpec,
                         base: RationalBase) -> tuple[int, int]:
    """Offset digit b and residue for the interval one slot to the left.

    The left neighbor of side i is [Y_i - u^-k_i, Y_i); it exists inside
    [0, 1) only when the level-k_i digit is positive.  b is the unique
    element of {1, ..., u-1} congruent to
    inv_sigma_k(y_k - 1) - inv_sigma_k(y_k) mod u, and the membership
    residue shifts by b * u^(k-1) * vbar^k.
    """
    digits = box.digits[i]
    u = base.u
    k = len(digits)
    y_last = digits[-1]
    if y_last == 0:
        raise ValueError(
            "left-adjacent interval undefined: the lowest-level digit is 0"
        )
    inv = spec.inverse_at(k)
    b = (inv[y_last - 1] - inv[y_last]) % u
    modulus = u**k
    vbar = mod_inverse(base.v % modulus, modulus)
    shift = (b * pow(u, k - 1, modulus) * pow(vbar, k, modulus)) % modulus
    residue = (interval_residue(i, box, spec, base) + shift) % modulus
    return b, residue


def joint_left_residue(box: BoxDigits, config: "GeneratorConfig") -> int:
    """Residue mod prod(u_i^k_i) for membership in every left neighbor.

    CRT combination of the shifted per-coordinate residues; requires every
    coordinate's lowest-level digit to be positive.
    """
    system = residue_system(box, config)
    total = system.modulus
    acc = system.joint_residue
    for i, (base, spec, mod) in enumerate(
        zip(config.bases, config.specs, system.moduli)
    ):
        k = box.levels[i]
        b, _ = left_neighbor_offset(i, box, spec, base)
        vbar = system.v_inverses[i]
        acc = (
            acc
            + system.crt_multipliers[i] * (total // base.u) * b * pow(vbar, k, mod)
        ) % total
    return acc


def fractional_sum_mod1(bases: Sequence[RationalBase], taus: Sequence[int],
                        offsets: Sequence[int]) -> Fraction:
    """sum_i b_i * vbar_i^tau_i / u_i reduced mod 1, as an exact rational.

    vbar_i inverts v_i mod u_i, tau_i must satisfy v_i^tau_i = 1 mod u_i,
    the u_i must be pairwise coprime, and b_i ranges over {1, ..., u_i - 1}.
    Under those hypotheses the sum never lands on 1/2; callers assert that.
    """
    if len(bases) < 2:
        raise ValueError("the fractional-sum test needs at least 2 coordinates")
    if not (len(bases) == len(taus) == len(offsets)):
        raise ValueError("bases, taus and offsets must have equal length")
    for a, ba in enumerate(bases):
        for bb in bases[a + 1:]:
            if math.gcd(ba.u, bb.u) != 1:
                raise ValueError(f"base numerators {ba.u}, {bb.u} not coprime")
    total = Fraction(0)
    for base, tau, b in zip(bases, taus, offsets):
        if tau < 1:
            raise ValueError("tau must be >= 1")
        if pow(base.v, tau, base.u) != 1 % base.u:
            raise ValueError(
                f"v^tau = {base.v}^{tau} is not 1 modulo u = {base.u}"
            )
        if not 1 <= b <= base.u - 1:
            raise ValueError(f"offset {b} outside 1..{base.u - 1}")
        vbar = mod_inverse(base.v % base.u, base.u)
        total += Fraction(b * pow(vbar, tau, base.u), base.u)
    return total % 1
