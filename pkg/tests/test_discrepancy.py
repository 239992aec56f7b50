"""Exact star discrepancy: formulas, backends, guardrails, windows."""

import itertools
import random

import pytest
from fractions import Fraction

from rbqmc.discrepancy import (
    BoxSpec,
    GuardrailExceeded,
    LocalDiscrepancySum,
    box_count,
    guardrail_limit,
    perturbation_bound,
    prefix_discrepancies,
    star_discrepancy,
    star_discrepancy_1d,
)
from rbqmc.numeration import RationalBase
from rbqmc.sequence import GeneratorConfig, point_set


def brute_star(points):
    """Independent corner enumeration with Fraction arithmetic only."""
    n = len(points)
    s = len(points[0])
    cands = [sorted({p[i] for p in points} | {Fraction(1)}) for i in range(s)]
    best = Fraction(0)
    for corner in itertools.product(*cands):
        vol = Fraction(1)
        for c in corner:
            vol *= c
        closed = sum(
            1 for p in points if all(x <= c for x, c in zip(p, corner))
        )
        opened = sum(
            1 for p in points if all(x < c for x, c in zip(p, corner))
        )
        best = max(best, Fraction(closed, n) - vol, vol - Fraction(opened, n))
    return best


class TestBoxSpec:
    def test_volume_and_contains(self):
        box = BoxSpec(lowers=(Fraction(0), Fraction(1, 4)),
                      uppers=(Fraction(1, 2), Fraction(1)))
        assert box.volume == Fraction(3, 8)
        assert box.contains((Fraction(0), Fraction(1, 4)))      # closed below
        assert not box.contains((Fraction(1, 2), Fraction(1, 2)))  # open above

    def test_anchored(self):
        box = BoxSpec.anchored((Fraction(1, 3), Fraction(1, 2)))
        assert box.lowers == (Fraction(0), Fraction(0))
        assert box.volume == Fraction(1, 6)

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            BoxSpec(lowers=(Fraction(1, 2),), uppers=(Fraction(1, 2),))
        with pytest.raises(ValueError):
            BoxSpec(lowers=(Fraction(0),), uppers=(Fraction(3, 2),))


class TestOneDimensional:
    def test_known_values(self):
        assert star_discrepancy_1d([Fraction(1, 2)]) == Fraction(1, 2)
        assert star_discrepancy_1d([Fraction(1, 4), Fraction(3, 4)]) == Fraction(1, 4)
        assert star_discrepancy_1d([Fraction(0)]) == 1  # mass at the left edge

    def test_matches_brute_random(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(1, 18)
            pts = [(Fraction(rng.randint(0, 48), 48),) for _ in range(n)]
            assert star_discrepancy_1d([p[0] for p in pts]) == brute_star(pts)

    def test_scan_path_agrees(self):
        rng = random.Random(12)
        for _ in range(30):
            n = rng.randint(1, 15)
            pts = [(Fraction(rng.randint(0, 30), 30),) for _ in range(n)]
            assert star_discrepancy(pts) == star_discrepancy_1d([p[0] for p in pts])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            star_discrepancy_1d([])


class TestTwoDimensional:
    def test_single_centered_point(self):
        assert star_discrepancy([(Fraction(1, 2), Fraction(1, 2))]) == Fraction(3, 4)

    def test_point_at_upper_corner_is_never_counted(self):
        assert star_discrepancy([(Fraction(1), Fraction(1))]) == 1

    def test_matches_brute_random(self):
        rng = random.Random(13)
        for _ in range(50):
            n = rng.randint(1, 14)
            pts = [
                (Fraction(rng.randint(0, 24), 24), Fraction(rng.randint(0, 18), 18))
                for _ in range(n)
            ]
            assert star_discrepancy(pts) == brute_star(pts)

    def test_bigint_path_matches_brute(self):
        # denominators force n * prod(D) far past int64
        rng = random.Random(14)
        big = 2**40
        for _ in range(6):
            n = rng.randint(1, 5)
            pts = [
                (Fraction(rng.randint(0, big), big),
                 Fraction(rng.randint(0, big - 1), big))
                for _ in range(n)
            ]
            assert star_discrepancy(pts) == brute_star(pts)

    def test_duplicates_and_edges(self):
        pts = [(Fraction(0), Fraction(0))] * 3 + [(Fraction(1, 2), Fraction(1, 2))]
        assert star_discrepancy(pts) == brute_star(pts)


class TestHigherDimensions:
    def test_matches_brute_random_3d(self):
        rng = random.Random(15)
        for _ in range(12):
            n = rng.randint(1, 7)
            pts = [
                tuple(Fraction(rng.randint(0, 10), 10) for _ in range(3))
                for _ in range(n)
            ]
            assert star_discrepancy(pts) == brute_star(pts)

    def test_matches_brute_random_4d(self):
        rng = random.Random(16)
        for _ in range(4):
            n = rng.randint(1, 5)
            pts = [
                tuple(Fraction(rng.randint(0, 6), 6) for _ in range(4))
                for _ in range(n)
            ]
            assert star_discrepancy(pts) == brute_star(pts)

    def test_mixed_dimension_rejected(self):
        with pytest.raises(ValueError):
            star_discrepancy([(Fraction(1, 2),), (Fraction(1, 2), Fraction(1, 2))])


class TestPrefixes:
    def test_matches_per_prefix_calls(self):
        rng = random.Random(18)
        for dims, denom in ((1, 36), (2, 20), (3, 8)):
            pts = [
                tuple(Fraction(rng.randint(0, denom), denom) for _ in range(dims))
                for _ in range(12)
            ]
            got = prefix_discrepancies(pts)
            assert got == [star_discrepancy(pts[:m]) for m in range(1, 13)]

    def test_bigint_path(self):
        big = 2**40
        pts = [
            (Fraction(1, 3), Fraction(big - 1, big)),
            (Fraction(2, 3), Fraction(1, big)),
            (Fraction(1, 2), Fraction(1, 2)),
        ]
        got = prefix_discrepancies(pts)
        assert got == [star_discrepancy(pts[:m]) for m in range(1, 4)]

    def test_guardrail(self):
        pts = [(Fraction(k, 40), Fraction(k, 41)) for k in range(30)]
        with pytest.raises(GuardrailExceeded):
            prefix_discrepancies(pts, guardrail=100)


class TestGuardrail:
    def test_explicit_limit(self):
        pts = [(Fraction(k, 40), Fraction(k, 41)) for k in range(30)]
        with pytest.raises(GuardrailExceeded):
            star_discrepancy(pts, guardrail=100)

    def test_env_variable(self, monkeypatch):
        monkeypatch.setenv("RB_QMC_GUARDRAIL", "50")
        assert guardrail_limit() == 50
        pts = [(Fraction(k, 40), Fraction(k, 41)) for k in range(30)]
        with pytest.raises(GuardrailExceeded):
            star_discrepancy(pts)

    def test_argument_beats_env(self, monkeypatch):
        monkeypatch.setenv("RB_QMC_GUARDRAIL", "50")
        assert guardrail_limit(10**7) == 10**7
        pts = [(Fraction(k, 40), Fraction(k, 41)) for k in range(30)]
        # env alone would refuse this input; the explicit argument wins
        assert star_discrepancy(pts, guardrail=10**7) == brute_star(pts)

    def test_default(self, monkeypatch):
        monkeypatch.delenv("RB_QMC_GUARDRAIL", raising=False)
        assert guardrail_limit() == 10**8


class TestBoxCount:
    CONFIG = GeneratorConfig.identity((RationalBase(2, 1), RationalBase(3, 2)))

    def test_count_and_signed_sum(self):
        ps = point_set(self.CONFIG, 0, 9, 2)
        box = BoxSpec.anchored((Fraction(1, 2), Fraction(1, 3)))
        count, local = box_count(ps, box, (0, 9))
        brute = sum(1 for p in ps if p[0] < Fraction(1, 2) and p[1] < Fraction(1, 3))
        assert count == brute
        assert local.M == 9
        assert local.value == count - 9 * Fraction(1, 6)

    def test_window_respects_start_index(self):
        ps = point_set(self.CONFIG, 5, 6, 3)
        box = BoxSpec.anchored((Fraction(1), Fraction(1)))
        count, local = box_count(ps, box, (6, 9))
        assert local.M == 3
        assert count == 3  # the whole cube contains every point
        with pytest.raises(ValueError):
            box_count(ps, box, (4, 9))
        with pytest.raises(ValueError):
            box_count(ps, box, (6, 12))

    def test_label_passthrough(self):
        ps = point_set(self.CONFIG, 0, 4, 2)
        box = BoxSpec.anchored((Fraction(1, 2), Fraction(1, 2)))
        _, local = box_count(ps, box, (0, 2), j=(1, 1))
        assert isinstance(local, LocalDiscrepancySum)
        assert local.j == (1, 1)


class TestPerturbation:
    def test_sum_formula(self):
        assert perturbation_bound([Fraction(1, 8), Fraction(1, 27)]) == (
            Fraction(1, 8) + Fraction(1, 27)
        )

    def test_bounds_actual_shift(self):
        # shifting every coordinate by < delta moves D* by at most the sum
        rng = random.Random(17)
        for _ in range(20):
            n = rng.randint(1, 10)
            pts = [
                (Fraction(rng.randint(0, 15), 16), Fraction(rng.randint(0, 15), 16))
                for _ in range(n)
            ]
            delta = Fraction(1, 32)
            shifted = [
                (x + Fraction(rng.randint(0, 1), 32),
                 y + Fraction(rng.randint(0, 1), 32))
                for x, y in pts
            ]
            gap = abs(star_discrepancy(pts) - star_discrepancy(shifted))
            assert gap <= perturbation_bound([delta, delta])
