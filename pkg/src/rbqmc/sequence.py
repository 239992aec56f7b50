"""Multidimensional sequences of permuted radical inverses in rational bases.

Coordinate i of point n is the truncated radical inverse of n in base
u_i/v_i under permutation sequence Sigma_i; the u_i must be pairwise
coprime.  With every v_i = 1 and identity permutations this is the ordinary
Halton sequence.  Point generation is pure per index, so disjoint index
ranges may be generated concurrently.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, TextIO, Union

from .inverse import PermutationSpec, radical_inverse_truncated
from .numeration import RationalBase


class ConfigError(ValueError):
    """A generator configuration violating the base constraints."""


@dataclass(frozen=True)
class GeneratorConfig:
    """Bases and permutation sequences, one pair per coordinate."""

    bases: tuple[RationalBase, ...]
    specs: tuple[PermutationSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bases", tuple(self.bases))
        object.__setattr__(self, "specs", tuple(self.specs))
        if len(self.bases) != len(self.specs):
            raise ConfigError(
                f"{len(self.bases)} bases but {len(self.specs)} permutation specs"
            )
        if not self.bases:
            raise ConfigError("dimension must be >= 1")
        for base, spec in zip(self.bases, self.specs):
            if spec.u != base.u:
                raise ConfigError(
                    f"permutation spec on {spec.u} symbols attached to base {base}"
                )

    @property
    def s(self) -> int:
        return len(self.bases)

    @classmethod
    def identity(cls, bases: Iterable[RationalBase]) -> "GeneratorConfig":
        bases = tuple(bases)
        return cls(bases=bases, specs=tuple(PermutationSpec.identity(b.u) for b in bases))

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "bases": [{"u": b.u, "v": b.v} for b in self.bases],
            "perms": [spec.to_json() for spec in self.specs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GeneratorConfig":
        bases = tuple(RationalBase(int(b["u"]), int(b["v"])) for b in obj["bases"])
        if "perms" in obj and obj["perms"]:
            specs = tuple(PermutationSpec.from_json(p) for p in obj["perms"])
        else:
            specs = tuple(PermutationSpec.identity(b.u) for b in bases)
        config = cls(bases=bases, specs=specs)
        if "s" in obj and int(obj["s"]) != config.s:
            raise ConfigError(f"declared dimension {obj['s']} but {config.s} bases")
        return config

    @classmethod
    def load(cls, path: Union[str, Path]) -> "GeneratorConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def validate_config(config: GeneratorConfig) -> list[str]:
    """All constraint violations, as human-readable strings; empty means ok.

    RationalBase already enforces u >= 2 and gcd(u, v) = 1 per coordinate,
    so what remains is pairwise coprimality of the numerators.
    """
    problems = []
    for i in range(config.s):
        for j in range(i + 1, config.s):
            g = math.gcd(config.bases[i].u, config.bases[j].u)
            if g != 1:
                problems.append(
                    f"gcd(u_{i + 1}, u_{j + 1}) = gcd({config.bases[i].u}, "
                    f"{config.bases[j].u}) = {g}, must be 1"
                )
    return problems


def ensure_valid(config: GeneratorConfig) -> None:
    problems = validate_config(config)
    if problems:
        raise ConfigError("; ".join(problems))


@dataclass(frozen=True)
class PointSet:
    """Ordered truncated points with exact rational coordinates.

    Point k is the point of index start_index + k; coordinate i has
    denominator dividing u_i^t.  ``t`` is None for sets re-read from disk,
    where the truncation level is no longer known.
    """

    points: tuple[tuple[Fraction, ...], ...]
    t: Optional[int] = None
    start_index: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "points", tuple(tuple(Fraction(c) for c in p) for p in self.points)
        )
        if not self.points:
            raise ValueError("a point set holds at least one point")
        dims = {len(p) for p in self.points}
        if len(dims) != 1:
            raise ValueError(f"inconsistent point dimensions {sorted(dims)}")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0])


def point(config: GeneratorConfig, n: int, t: int) -> tuple[Fraction, ...]:
    """The n-th sequence point truncated at digit level t."""
    ensure_valid(config)
    return tuple(
        radical_inverse_truncated(n, base, spec, t)
        for base, spec in zip(config.bases, config.specs)
    )


def point_set(config: GeneratorConfig, n0: int, N: int, t: int) -> PointSet:
    """Points of indices n0 .. n0+N-1, in order."""
    if N < 1:
        raise ValueError("point count must be >= 1")
    ensure_valid(config)
    pts = []
    for n in range(n0, n0 + N):
        pts.append(
            tuple(
                radical_inverse_truncated(n, base, spec, t)
                for base, spec in zip(config.bases, config.specs)
            )
        )
    return PointSet(points=tuple(pts), t=t, start_index=n0)


def _format_fraction(x: Fraction, float_mode: bool) -> str:
    return repr(float(x)) if float_mode else f"{x.numerator}/{x.denominator}"


def _write_rows(ps: PointSet, fh, float_mode: bool) -> None:
    writer = csv.writer(fh)
    writer.writerow([f"x{i + 1}" for i in range(ps.dim)])
    for p in ps.points:
        writer.writerow([_format_fraction(c, float_mode) for c in p])


def write_points_csv(ps: PointSet, path_or_file: Union[str, Path, TextIO],
                     float_mode: bool = False) -> None:
    """One row per point; exact "p/q" cells unless float_mode."""
    if hasattr(path_or_file, "write"):
        _write_rows(ps, path_or_file, float_mode)
        return
    with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
        _write_rows(ps, fh, float_mode)


def read_points_csv(path: Union[str, Path]) -> PointSet:
    """Read a point-set CSV back; accepts "p/q" or decimal cells."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise ValueError(f"{path}: no data rows")
    pts = []
    for row in rows[1:]:
        pts.append(tuple(Fraction(cell) for cell in row))
    return PointSet(points=tuple(pts), t=None, start_index=0)
