"""Run configuration shared by the computational engines."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    """Caps and seeds for certified computations.

    degree_cap bounds the colength certificate search, precision_cap the
    t-precision of Puiseux expansions. seed drives every deterministic
    pseudo-random choice (generic coordinate changes, test generators) so
    that reports are reproducible.
    """

    degree_cap: int = 200
    precision_cap: int = 4096
    seed: int = 0


DEFAULT = Config()


def generic_shears(seed: int):
    """Deterministic stream of invertible integer 2x2 matrices.

    Used for the "recorded generic linear coordinate change" of the
    resultant cross-check. The stream depends only on the seed.
    """
    # small fixed pool first (fast, usually generic), then a seeded walk
    pool = [(1, 1), (1, -1), (2, 1), (1, 2), (3, 1), (1, 3), (2, 3), (3, 2)]
    for a, b in pool:
        yield (1, a, b, 1) if a * b != 1 else (1, a, 0, 1)
    state = (seed * 0x9E3779B1 + 0x85EBCA77) & 0xFFFFFFFF
    while True:
        state = (state * 1103515245 + 12345) & 0x7FFFFFFF
        a = state % 11 - 5
        state = (state * 1103515245 + 12345) & 0x7FFFFFFF
        b = state % 11 - 5
        if 1 - a * b != 0:
            yield (1, a, b, 1)
