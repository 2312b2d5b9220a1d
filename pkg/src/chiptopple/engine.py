"""Toppling dynamics on the extended path of sites 0..n+1.

A toppling removes two chips a < b from a site and sends a one site left
and b one site right. Two stabilizers are provided: a seeded random
schedule (site uniform over eligible sites, pair uniform over 2-subsets)
and the deterministic pass schedule, which topples the doubled site once
and then every other eligible site until only the doubled site remains.
Both reach the same final state; the random one exists so that tests can
exercise schedule independence.
"""
from __future__ import annotations

import dataclasses
import json
import random
from typing import Sequence

from .core import Configuration, Perm


class ConfinementError(RuntimeError):
    """A chip was about to leave the segment 0..n+1 (dynamics bug)."""


@dataclasses.dataclass(frozen=True)
class ToppleState:
    """Snapshot of the chips per site over the sites 0..n+1."""

    n: int
    chips_at: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.chips_at) != self.n + 2:
            raise ValueError("state must cover sites 0..n+1")
        chips = [c for content in self.chips_at for c in content]
        if sorted(chips) != list(range(1, self.n + 2)):
            raise ValueError(f"chips must be exactly 1..{self.n + 1}")

    @classmethod
    def from_configuration(cls, config: Configuration) -> "ToppleState":
        chips_at = ((),) + config.sites + ((),)
        return cls(n=config.n, chips_at=chips_at)

    def eligible_sites(self) -> tuple[int, ...]:
        return tuple(i for i, content in enumerate(self.chips_at) if len(content) >= 2)


def topple_step(
    state: ToppleState,
    site: int,
    pair: tuple[int, int] | None = None,
    rng: random.Random | None = None,
) -> ToppleState:
    """
    Topple one site: remove chips a < b there, put a at site-1 and b at
    site+1. ``pair`` forces the choice; with exactly two chips the step is
    deterministic; otherwise an rng must supply the 2-subset.
    """
    chips = state.chips_at[site]
    if len(chips) < 2:
        raise ValueError(f"site {site} holds {len(chips)} chips; toppling needs 2")
    if site - 1 < 0 or site + 1 > state.n + 1:
        raise ConfinementError(f"toppling site {site} would push a chip off 0..{state.n + 1}")
    if pair is not None:
        a, b = sorted(pair)
        if a not in chips or b not in chips or a == b:
            raise ValueError(f"pair {pair} not available at site {site}")
    elif len(chips) == 2:
        a, b = chips
    else:
        if rng is None:
            raise ValueError("site holds more than two chips; supply pair or rng")
        a, b = sorted(rng.sample(chips, 2))
    new = [list(content) for content in state.chips_at]
    new[site].remove(a)
    new[site].remove(b)
    new[site - 1].append(a)
    new[site + 1].append(b)
    return ToppleState(n=state.n, chips_at=tuple(tuple(sorted(c)) for c in new))


@dataclasses.dataclass(frozen=True)
class FinalState:
    """Stabilized chips: one chip on every site of 0..n+1 except one."""

    n: int
    occupancy: tuple[int, ...]  # chip per site, 0 at the empty site
    empty_site: int

    def __post_init__(self) -> None:
        if len(self.occupancy) != self.n + 2:
            raise ValueError("occupancy must cover sites 0..n+1")
        empties = [i for i, c in enumerate(self.occupancy) if c == 0]
        if empties != [self.empty_site]:
            raise ValueError("final state must have exactly one empty site")

    def permutation(self) -> Perm:
        """The resultant: occupancy read left to right, skipping the hole."""
        return tuple(c for c in self.occupancy if c != 0)

    def is_sorted(self) -> bool:
        return self.permutation() == tuple(range(1, self.n + 2))


@dataclasses.dataclass(frozen=True)
class PassSnapshot:
    left_arm: tuple[int, ...]
    active: tuple[tuple[int, ...], ...]
    right_arm: tuple[int, ...]
    topples: int


@dataclasses.dataclass(frozen=True)
class PassTrace:
    n: int
    p: int
    passes: tuple[PassSnapshot, ...]

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "left_arm": list(s.left_arm),
                    "active": [list(c) for c in s.active],
                    "right_arm": list(s.right_arm),
                    "topples": s.topples,
                }
                for s in self.passes
            ]
        )


def _working_state(config: Configuration) -> list[list[int]]:
    state: list[list[int]] = [[] for _ in range(config.n + 2)]
    for i, content in enumerate(config.sites, start=1):
        state[i] = list(content)
    return state


def _final_state(n: int, state: Sequence[Sequence[int]]) -> FinalState:
    occupancy = []
    empty = -1
    for i, chips in enumerate(state):
        if not chips:
            if empty != -1:
                raise AssertionError("more than one empty site after stabilization")
            empty = i
            occupancy.append(0)
        else:
            occupancy.append(chips[0])
    return FinalState(n=n, occupancy=tuple(occupancy), empty_site=empty)


def stabilize_random(config: Configuration, seed: int) -> tuple[FinalState, int]:
    """
    Stabilize under the seeded random schedule; the final state does not
    depend on the seed. Returns the final state and the toppling count.
    """
    rng = random.Random(seed)
    state = _working_state(config)
    eligible = [config.p]
    topples = 0
    last = config.n + 1
    while eligible:
        idx = rng.randrange(len(eligible))
        site = eligible[idx]
        chips = state[site]
        if len(chips) == 2:
            a, b = chips
            if a > b:
                a, b = b, a
            chips.clear()
            eligible[idx] = eligible[-1]
            eligible.pop()
        else:
            a, b = sorted(rng.sample(chips, 2))
            chips.remove(a)
            chips.remove(b)
            if len(chips) < 2:
                eligible[idx] = eligible[-1]
                eligible.pop()
        left = state[site - 1]
        left.append(a)
        if len(left) == 2:
            if site - 1 == 0:
                raise ConfinementError("site 0 accumulated two chips")
            eligible.append(site - 1)
        right = state[site + 1]
        right.append(b)
        if len(right) == 2:
            if site + 1 == last:
                raise ConfinementError(f"site {last} accumulated two chips")
            eligible.append(site + 1)
        topples += 1
    return _final_state(config.n, state), topples


def _arms(state: Sequence[Sequence[int]], topples: int) -> PassSnapshot:
    empties = [i for i, chips in enumerate(state) if not chips]
    if not empties:
        raise AssertionError("pass finished with no empty site")
    first, last = empties[0], empties[-1]
    left_arm = tuple(state[i][0] for i in range(first))
    right_arm = tuple(state[i][0] for i in range(last + 1, len(state)))
    active = tuple(tuple(state[i]) for i in range(first + 1, last) if state[i])
    return PassSnapshot(left_arm=left_arm, active=active, right_arm=right_arm, topples=topples)


def stabilize_passes(config: Configuration) -> tuple[FinalState, PassTrace]:
    """
    Stabilize in passes: topple the doubled site once, then every eligible
    site other than it until none remains; repeat until stable. Records a
    snapshot (left arm, active part, right arm) after each pass.
    """
    p = config.p
    state = _working_state(config)
    last = config.n + 1

    def topple_once(site: int) -> None:
        if site == 0 or site == last:
            raise ConfinementError(f"end site {site} became eligible")
        chips = state[site]
        a, b = chips[0], chips[1]
        if a > b:
            a, b = b, a
        del chips[:2]
        state[site - 1].append(a)
        state[site - 1].sort()
        state[site + 1].append(b)
        state[site + 1].sort()

    snapshots: list[PassSnapshot] = []
    while len(state[p]) >= 2:
        topple_once(p)
        topples = 1
        stack = [p - 1, p + 1]
        while stack:
            site = stack.pop()
            if site == p or len(state[site]) < 2:
                continue
            topple_once(site)
            topples += 1
            for neighbour in (site - 1, site + 1):
                if neighbour != p and len(state[neighbour]) >= 2:
                    stack.append(neighbour)
        snapshots.append(_arms(state, topples))
    for site, chips in enumerate(state):
        if len(chips) >= 2:
            raise AssertionError(f"site {site} still doubled after the last pass")
    return _final_state(config.n, state), PassTrace(n=config.n, p=p, passes=tuple(snapshots))


def resultant(config: Configuration) -> tuple[Perm, int]:
    """
    The permutation of 1..n+1 left by stabilization, read left to right
    skipping the empty site, plus the empty site's index.
    """
    final, _ = stabilize_passes(config)
    return final.permutation(), final.empty_site
