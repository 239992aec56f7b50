"""Compiled vs fallback agreement for the 2-d corner sweep."""

import os
import random
import subprocess
import sys

import numpy as np

from rbqmc._kernels import BACKEND
from rbqmc._kernels import corner_max_2d as active_kernel
from rbqmc._kernels.fallback import corner_max_2d as fallback_kernel


def random_case(rng, n_max=40):
    n = rng.randint(1, n_max)
    dx = rng.choice([7, 16, 24, 97])
    dy = rng.choice([5, 18, 30, 64])
    ax = np.array([rng.randint(0, dx) for _ in range(n)], dtype=np.int64)
    ay = np.array([rng.randint(0, dy) for _ in range(n)], dtype=np.int64)
    return ax, ay, dx, dy


class TestBackendSelection:
    def test_backend_constant(self):
        assert BACKEND in ("compiled", "fallback")

    def test_disable_flag_forces_fallback(self):
        env = dict(os.environ, RB_QMC_DISABLE_EXT="1")
        out = subprocess.run(
            [sys.executable, "-c",
             "from rbqmc._kernels import BACKEND; print(BACKEND)"],
            env=env, capture_output=True, text=True, check=True,
        )
        assert out.stdout.strip() == "fallback"


class TestAgreement:
    def test_random_batches(self):
        rng = random.Random(21)
        for _ in range(80):
            ax, ay, dx, dy = random_case(rng)
            assert active_kernel(ax, ay, dx, dy) == fallback_kernel(ax, ay, dx, dy)

    def test_degenerate_inputs(self):
        cases = [
            # single point at origin
            (np.array([0], dtype=np.int64), np.array([0], dtype=np.int64), 4, 4),
            # all points identical
            (np.full(6, 3, dtype=np.int64), np.full(6, 2, dtype=np.int64), 6, 5),
            # points sitting on the far boundary
            (np.array([8, 8, 0], dtype=np.int64),
             np.array([8, 0, 8], dtype=np.int64), 8, 8),
            # one column, many y values
            (np.zeros(10, dtype=np.int64),
             np.arange(10, dtype=np.int64), 3, 12),
        ]
        for ax, ay, dx, dy in cases:
            assert active_kernel(ax, ay, dx, dy) == fallback_kernel(ax, ay, dx, dy)

    def test_fallback_vs_exhaustive(self):
        # tiny exhaustive corner check with pure Python integers
        rng = random.Random(22)
        for _ in range(25):
            n = rng.randint(1, 8)
            dx, dy = 5, 7
            ax = [rng.randint(0, dx) for _ in range(n)]
            ay = [rng.randint(0, dy) for _ in range(n)]
            xs = sorted(set(ax) | {dx})
            ys = sorted(set(ay) | {dy})
            best = 0
            for xc in xs:
                for yc in ys:
                    closed = sum(1 for x, y in zip(ax, ay) if x <= xc and y <= yc)
                    opened = sum(1 for x, y in zip(ax, ay) if x < xc and y < yc)
                    best = max(best,
                               closed * dx * dy - n * xc * yc,
                               n * xc * yc - opened * dx * dy)
            got = fallback_kernel(
                np.array(ax, dtype=np.int64), np.array(ay, dtype=np.int64), dx, dy
            )
            assert got == best
