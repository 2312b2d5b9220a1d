"""Recognizers and brute-force enumerators for the permutation families counted
by poly-Bernoulli numbers, plus validation of resultant permutations.

Conventions: a Callan word over 1..U+O has underlined values 1..U and
overlined values U+1..U+O; maximal runs of underlined values must increase
and runs of overlined values must decrease. A (k,n)-Vesztergombi
permutation lives in S_{k+n} with the displacement window -k..n. Counts:
Callan(U,O) and Vesztergombi(k,n) are B(U,O) and B(n,k); the type C
families are the excedance-set family, the half-open window family, and
Callan words that start underlined.
"""
from __future__ import annotations

import dataclasses
from itertools import permutations
from typing import Iterator

from .core import Perm, left_record_values, right_record_values

DEFAULT_PERM_CAP = 9  # enumerate at most 9! permutations
AO_BIT_CAP = 20  # at most 2^20 orientations


class CapExceeded(RuntimeError):
    """An enumeration would be larger than the configured cap."""


@dataclasses.dataclass(frozen=True)
class CallanWord:
    """A Callan word: increasing underlined runs, decreasing overlined runs."""

    values: Perm
    underlined: int
    overlined: int

    def __post_init__(self) -> None:
        u, o = self.underlined, self.overlined
        if u < 1 or o < 1:
            raise ValueError("need at least one underlined and one overlined value")
        if set(self.values) != set(range(1, u + o + 1)):
            raise ValueError(f"values must be a permutation of 1..{u + o}")
        for block in self.blocks():
            if block[0] <= u and list(block) != sorted(block):
                raise ValueError(f"underlined block {block} is not increasing")
            if block[0] > u and list(block) != sorted(block, reverse=True):
                raise ValueError(f"overlined block {block} is not decreasing")

    def is_underlined(self, value: int) -> bool:
        return value <= self.underlined

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Maximal runs of same-class values, in word order."""
        out: list[list[int]] = []
        for value in self.values:
            cls = value <= self.underlined
            if out and (out[-1][0] <= self.underlined) == cls:
                out[-1].append(value)
            else:
                out.append([value])
        return tuple(tuple(b) for b in out)

    def starts_underlined(self) -> bool:
        return self.values[0] <= self.underlined


def is_callan(perm: Perm, underlined: int, overlined: int) -> bool:
    """
    Does perm (over 1..underlined+overlined) have increasing low-value runs
    and decreasing high-value runs?

    >>> is_callan((4, 3, 1, 2), 2, 2)
    True
    >>> is_callan((3, 4, 1, 2), 2, 2)
    False
    """
    if len(perm) != underlined + overlined:
        raise ValueError("length must be underlined + overlined")
    try:
        CallanWord(values=perm, underlined=underlined, overlined=overlined)
    except ValueError:
        return False
    return True


def is_vesztergombi(perm: Perm, k: int, n: int) -> bool:
    """
    Displacement window: -k <= perm_i - i <= n at every position, for perm
    in S_{k+n}.

    >>> is_vesztergombi((1, 2, 3, 4), 2, 2)
    True
    """
    if len(perm) != k + n:
        raise ValueError(f"permutation length {len(perm)} is not k + n = {k + n}")
    return all(-k <= v - i <= n for i, v in enumerate(perm, start=1))


def excedance_set(perm: Perm) -> frozenset[int]:
    """Positions i with perm_i > i."""
    return frozenset(i for i, v in enumerate(perm, start=1) if v > i)


def is_p_resultant(perm: Perm, p: int) -> bool:
    """
    Can perm in S_n arise by toppling some configuration with doubled site
    p? Holds exactly when the first n-p entries are a permutation of
    1..n-p.
    """
    n = len(perm)
    if not 1 <= p <= n - 1:
        raise ValueError(f"p outside 1..{n - 1}")
    cut = n - p
    return set(perm[:cut]) == set(range(1, cut + 1))


def validate_r_placement(perm: Perm, p: int, r: int) -> bool:
    """
    Can the resultant perm arise from a configuration whose added chip was
    r? Requires r to be a left record of the prefix when r <= n-p, and a
    right record of the suffix otherwise.
    """
    n = len(perm)
    if not 1 <= r <= n:
        raise ValueError(f"r outside 1..{n}")
    if not is_p_resultant(perm, p):
        return False
    cut = n - p
    if r <= cut:
        return r in left_record_values(perm[:cut])
    return r in right_record_values(perm[cut:])


def _check_cap(m: int, cap: int) -> None:
    if m > cap:
        raise CapExceeded(f"would enumerate {m}! permutations; cap is {cap}!")


def enumerate_family(family: str, cap: int = DEFAULT_PERM_CAP, **params: int) -> Iterator[Perm]:
    """
    Stream the members of a recognizable family, each exactly once.

    Families and their parameters:
      vesztergombi(k, n)            window -k..n in S_{k+n}
      callan(underlined, overlined) Callan words
      callan_first(underlined, overlined, first) Callan words starting
                                    with the given value
      window_c(n, k)                half-open window -k <= perm_i - i < n
      excedance_set(n, k)           excedance set exactly {1..k} in S_{n+k}
    """
    if family == "vesztergombi":
        k, n = params["k"], params["n"]
        _check_cap(k + n, cap)
        for values in permutations(range(1, k + n + 1)):
            if all(-k <= v - i <= n for i, v in enumerate(values, start=1)):
                yield values
    elif family in ("callan", "callan_first"):
        u, o = params["underlined"], params["overlined"]
        first = params.get("first")
        if family == "callan_first" and first is None:
            raise ValueError("callan_first needs a first value")
        _check_cap(u + o, cap)
        for values in permutations(range(1, u + o + 1)):
            if first is not None and values[0] != first:
                continue
            if is_callan(values, u, o):
                yield values
    elif family == "window_c":
        n, k = params["n"], params["k"]
        _check_cap(n + k, cap)
        for values in permutations(range(1, n + k + 1)):
            if all(-k <= v - i < n for i, v in enumerate(values, start=1)):
                yield values
    elif family == "excedance_set":
        n, k = params["n"], params["k"]
        _check_cap(n + k, cap)
        target = frozenset(range(1, k + 1))
        for values in permutations(range(1, n + k + 1)):
            if excedance_set(values) == target:
                yield values
    else:
        raise ValueError(f"unknown family {family!r}")


def count_family(family: str, cap: int = DEFAULT_PERM_CAP, **params: int) -> int:
    return sum(1 for _ in enumerate_family(family, cap=cap, **params))


def count_acyclic_orientations(n: int, k: int, mode: str = "all") -> int:
    """
    Brute-force count of acyclic orientations of the complete bipartite
    graph on parts of sizes n and k (2^(nk) orientations tried).

    mode 'all' counts every AO; 'unique_sink_anywhere' keeps those with
    exactly one sink; 'unique_sink_fixed_vertex' keeps those whose unique
    sink is the first vertex of the n-side part.
    """
    if mode not in ("all", "unique_sink_anywhere", "unique_sink_fixed_vertex"):
        raise ValueError(f"unknown mode {mode!r}")
    edges = [(a, n + b) for a in range(n) for b in range(k)]
    if len(edges) > AO_BIT_CAP:
        raise CapExceeded(f"{len(edges)} edges exceeds the {AO_BIT_CAP}-bit cap")
    vertices = n + k
    total = 0
    for mask in range(1 << len(edges)):
        out: list[list[int]] = [[] for _ in range(vertices)]
        indegree = [0] * vertices
        for e, (a, b) in enumerate(edges):
            src, dst = (a, b) if mask >> e & 1 else (b, a)
            out[src].append(dst)
            indegree[dst] += 1
        # Kahn peeling: acyclic iff all vertices get removed
        order = [v for v in range(vertices) if indegree[v] == 0]
        seen = 0
        while order:
            v = order.pop()
            seen += 1
            for w in out[v]:
                indegree[w] -= 1
                if indegree[w] == 0:
                    order.append(w)
        if seen != vertices:
            continue
        if mode == "all":
            total += 1
            continue
        sinks = [v for v in range(vertices) if not out[v]]
        if mode == "unique_sink_anywhere" and len(sinks) == 1:
            total += 1
        elif mode == "unique_sink_fixed_vertex" and sinks == [0]:
            total += 1
    return total
