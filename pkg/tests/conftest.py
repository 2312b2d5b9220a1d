"""Shared brute-force oracles, deliberately independent of the library's own
enumeration layer: plain itertools products that the production code never
touches."""
from __future__ import annotations

from itertools import combinations, permutations

import pytest

from chiptopple.core import Configuration, make_configuration


def oracle_configurations(n: int, p: int) -> list[Configuration]:
    """Every configuration of n+1 chips on n sites with the pair at p."""
    out = []
    chips = range(1, n + 2)
    for pair in combinations(chips, 2):
        rest = [c for c in chips if c not in pair]
        for arrangement in permutations(rest):
            contents: list[int | tuple[int, int]] = []
            it = iter(arrangement)
            for site in range(1, n + 1):
                contents.append(pair if site == p else next(it))
            out.append(make_configuration(contents))
    return out


def oracle_permutations(n: int):
    return permutations(range(1, n + 1))


@pytest.fixture(scope="session")
def s32_configurations() -> list[Configuration]:
    return oracle_configurations(3, 2)
