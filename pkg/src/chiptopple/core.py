"""Permutations, chip configurations with a doubled site, and conversions between them.

Permutations use one-line notation as tuples of the values 1..n; tuple
indexing is 0-based while all the combinatorial statements below speak of
1-based positions. Configurations place the n+1 labelled chips 1..n+1 on
sites 1..n with exactly one site (the doubled site p) holding an unordered
pair. A marked configuration distinguishes one of the two chips at p as the
chip that was added on top of a permutation.
"""
from __future__ import annotations

import dataclasses
import re
from typing import Iterable, Sequence

Perm = tuple[int, ...]

# Ordered (position, value) pairs, 1-based positions; values and positions
# are strictly increasing along the list for both record directions.
RecordList = tuple[tuple[int, int], ...]


def make_permutation(values: Iterable[int]) -> Perm:
    """
    Validate one-line notation and return it as a tuple.

    >>> make_permutation([6, 2, 1, 4, 3, 5, 7])
    (6, 2, 1, 4, 3, 5, 7)
    >>> make_permutation([1, 1, 2])
    Traceback (most recent call last):
    ...
    ValueError: not a permutation of 1..3: (1, 1, 2)
    """
    perm = tuple(values)
    if not perm:
        raise ValueError("empty sequence is not a permutation")
    n = len(perm)
    if set(perm) != set(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm}")
    return perm


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def inverse(perm: Perm) -> Perm:
    """
    Positions of each value: result[v-1] is where v sits in perm (1-based).

    >>> inverse((6, 2, 1, 4, 3, 5, 7))
    (3, 2, 5, 4, 6, 1, 7)
    """
    inv = [0] * len(perm)
    for pos, value in enumerate(perm, start=1):
        inv[value - 1] = pos
    return tuple(inv)


def records(perm: Perm, direction: str = "left_max") -> RecordList:
    """
    Record positions and values of a permutation.

    ``left_max`` lists the left-to-right maxima (position j with
    perm_j = max of the prefix); ``right_min`` lists the right-to-left
    minima (perm_j = min of the suffix). The first, respectively last,
    entry is always a record.

    >>> records((4, 1, 2, 3))
    ((1, 4),)
    >>> records((5, 6), "right_min")
    ((1, 5), (2, 6))
    """
    out: list[tuple[int, int]] = []
    best: int | None = None
    if direction == "left_max":
        for pos, value in enumerate(perm, start=1):
            if best is None or value > best:
                out.append((pos, value))
                best = value
        return tuple(out)
    if direction == "right_min":
        for pos in range(len(perm), 0, -1):
            value = perm[pos - 1]
            if best is None or value < best:
                out.append((pos, value))
                best = value
        return tuple(reversed(out))
    raise ValueError(f"unknown record direction: {direction!r}")


def left_record_values(perm: Perm) -> tuple[int, ...]:
    return tuple(value for _, value in records(perm, "left_max"))


def right_record_values(perm: Perm) -> tuple[int, ...]:
    return tuple(value for _, value in records(perm, "right_min"))


def split_at(perm: Perm, p: int) -> tuple[Perm, Perm] | None:
    """
    Split perm in S_n into its first n-p entries and last p entries,
    provided the prefix is a permutation of 1..n-p. Returns None when the
    prefix condition fails (the permutation is not decomposable there).
    The right part keeps its original values n-p+1..n.

    >>> split_at((1, 2, 4, 3), 2)
    ((1, 2), (4, 3))
    >>> split_at((2, 4, 1, 3), 2) is None
    True
    """
    n = len(perm)
    if not 1 <= p <= n:
        raise ValueError(f"p out of range: {p}")
    cut = n - p
    left = perm[:cut]
    if set(left) != set(range(1, cut + 1)):
        return None
    return left, perm[cut:]


def reverse_complement_perm(perm: Perm) -> Perm:
    """Reverse the positions and complement the values v -> n+1-v."""
    n = len(perm)
    return tuple(n + 1 - v for v in reversed(perm))


@dataclasses.dataclass(frozen=True)
class Configuration:
    """
    n+1 labelled chips on sites 1..n, with an unordered pair at site p.

    ``sites[i-1]`` is the sorted tuple of chips at site i; every entry has
    length 1 except the entry at the doubled site p.
    """

    n: int
    p: int
    sites: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("configuration needs at least one site")
        if not 1 <= self.p <= self.n:
            raise ValueError(f"doubled site {self.p} outside 1..{self.n}")
        if len(self.sites) != self.n:
            raise ValueError("site list length does not match n")
        chips: list[int] = []
        for i, content in enumerate(self.sites, start=1):
            want = 2 if i == self.p else 1
            if len(content) != want:
                raise ValueError(f"site {i} holds {len(content)} chips, expected {want}")
            if list(content) != sorted(content):
                raise ValueError(f"site contents must be sorted: site {i}")
            chips.extend(content)
        if set(chips) != set(range(1, self.n + 2)) or len(chips) != self.n + 1:
            raise ValueError(f"chip labels must be exactly 1..{self.n + 1}")

    @property
    def pair(self) -> tuple[int, int]:
        return self.sites[self.p - 1]  # type: ignore[return-value]

    def position_of(self, chip: int) -> int:
        """Site of the given chip; both chips of the pair report site p."""
        for i, content in enumerate(self.sites, start=1):
            if chip in content:
                return i
        raise ValueError(f"no chip labelled {chip}")

    def chip_positions(self) -> dict[int, int]:
        pos = {}
        for i, content in enumerate(self.sites, start=1):
            for chip in content:
                pos[chip] = i
        return pos


def make_configuration(site_contents: Sequence[int | Iterable[int]]) -> Configuration:
    """
    Build a configuration from per-site contents; exactly one entry must be
    a pair, which determines the doubled site.

    >>> make_configuration([1, (3, 2), 4]).pair
    (2, 3)
    """
    sites: list[tuple[int, ...]] = []
    p = 0
    for i, content in enumerate(site_contents, start=1):
        if isinstance(content, int):
            sites.append((content,))
        else:
            chips = tuple(sorted(content))
            sites.append(chips)
            if len(chips) == 2:
                if p:
                    raise ValueError("more than one doubled site")
                p = i
    if not p:
        raise ValueError("no doubled site found")
    return Configuration(n=len(sites), p=p, sites=tuple(sites))


@dataclasses.dataclass(frozen=True)
class MarkedConfiguration:
    """A configuration with one chip of the pair at p distinguished."""

    config: Configuration
    mark: int

    def __post_init__(self) -> None:
        if self.mark not in self.config.pair:
            raise ValueError(f"mark {self.mark} is not at the doubled site")


def lift(perm: Perm, r: int, p: int) -> MarkedConfiguration:
    """
    Place chip perm_i at site i after bumping every value >= r up by one,
    then add the chip r at site p and mark it.

    >>> lifted = lift((6, 2, 1, 4, 3, 5, 7), 2, 5)
    >>> [s if len(s) > 1 else s[0] for s in lifted.config.sites]
    [7, 3, 1, 5, (2, 4), 6, 8]
    """
    n = len(perm)
    if not 1 <= r <= n + 1:
        raise ValueError(f"extra chip {r} outside 1..{n + 1}")
    if not 1 <= p <= n:
        raise ValueError(f"site {p} outside 1..{n}")
    sites: list[tuple[int, ...]] = []
    for i, value in enumerate(perm, start=1):
        chip = value if value < r else value + 1
        if i == p:
            sites.append((r, chip) if r < chip else (chip, r))
        else:
            sites.append((chip,))
    config = Configuration(n=n, p=p, sites=tuple(sites))
    return MarkedConfiguration(config=config, mark=r)


def unlift(config: Configuration) -> tuple[tuple[Perm, int], tuple[Perm, int]]:
    """
    The two (permutation, r) readings of a configuration: delete either
    chip of the pair and close the label gap. Returned with r ascending;
    ``lift`` is a left inverse of both readings.
    """
    readings = []
    for r in config.pair:
        values = []
        for i, content in enumerate(config.sites, start=1):
            rest = [c for c in content if c != r] if i == config.p else list(content)
            values.append(rest[0] if rest[0] < r else rest[0] - 1)
        readings.append((make_permutation(values), r))
    return tuple(sorted(readings, key=lambda pair: pair[1]))  # type: ignore[return-value]


def map_w(marked: MarkedConfiguration) -> Perm:
    """
    Read a marked configuration as a permutation of 1..n+1: the unmarked
    chips in site order with the mark spliced in right after site p.

    >>> map_w(lift((6, 2, 1, 4, 3, 5, 7), 2, 5))
    (7, 3, 1, 5, 4, 2, 6, 8)
    """
    config = marked.config
    out = []
    for i, content in enumerate(config.sites, start=1):
        if i == config.p:
            unmarked = [c for c in content if c != marked.mark]
            out.append(unmarked[0])
            out.append(marked.mark)
        else:
            out.append(content[0])
    return tuple(out)


def reverse_complement(config: Configuration) -> Configuration:
    """
    Reflect sites i -> n+1-i and complement chips c -> n+2-c. An involution
    carrying the doubled site p to n+1-p.
    """
    n = config.n
    sites = tuple(
        tuple(sorted(n + 2 - c for c in content)) for content in reversed(config.sites)
    )
    return Configuration(n=n, p=n + 1 - config.p, sites=sites)


def reverse_complement_marked(marked: MarkedConfiguration) -> MarkedConfiguration:
    config = reverse_complement(marked.config)
    return MarkedConfiguration(config=config, mark=marked.config.n + 2 - marked.mark)


# ---------------------------------------------------------------------------
# Text literals
#
# Configuration: comma-separated chips in site order, doubled site in
# parentheses, e.g. "7,3,1,5,(2,4),6,8"; a marked chip carries a trailing
# "*", e.g. "(2*,4)". Permutation: contiguous digits when n <= 9 (e.g.
# "6214357"), comma-separated otherwise.
# ---------------------------------------------------------------------------

_PAIR_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str) -> Perm:
    text = text.strip()
    if "," in text:
        return make_permutation(int(tok) for tok in text.split(","))
    if not text.isdigit():
        raise ValueError(f"cannot parse permutation literal: {text!r}")
    return make_permutation(int(ch) for ch in text)


def format_permutation(perm: Perm) -> str:
    if len(perm) <= 9:
        return "".join(str(v) for v in perm)
    return ",".join(str(v) for v in perm)


def _parse_site_tokens(text: str) -> tuple[list[int | tuple[int, ...]], int | None]:
    text = text.strip()
    mark: int | None = None
    match = _PAIR_RE.search(text)
    if match is None:
        raise ValueError(f"configuration literal has no doubled site: {text!r}")
    raw_pair = match.group(1)
    pair = []
    for tok in raw_pair.split(","):
        tok = tok.strip()
        if tok.endswith("*"):
            if mark is not None:
                raise ValueError("more than one marked chip")
            mark = int(tok[:-1])
            pair.append(mark)
        else:
            pair.append(int(tok))
    if len(pair) != 2:
        raise ValueError(f"doubled site must hold exactly two chips: ({raw_pair})")
    before = text[: match.start()].rstrip(", ")
    after = text[match.end() :].lstrip(", ")
    contents: list[int | tuple[int, ...]] = []
    for chunk in (before, None, after):
        if chunk is None:
            contents.append(tuple(pair))
        elif chunk:
            contents.extend(int(tok) for tok in chunk.split(","))
    return contents, mark


def parse_configuration(text: str) -> Configuration:
    contents, mark = _parse_site_tokens(text)
    if mark is not None:
        raise ValueError("unexpected marked chip in plain configuration literal")
    return make_configuration(contents)


def parse_marked_configuration(text: str) -> MarkedConfiguration:
    contents, mark = _parse_site_tokens(text)
    if mark is None:
        raise ValueError("marked configuration literal needs a '*' chip")
    return MarkedConfiguration(config=make_configuration(contents), mark=mark)


def format_configuration(config: Configuration, mark: int | None = None) -> str:
    parts = []
    for i, content in enumerate(config.sites, start=1):
        if i == config.p:
            a, b = content
            inner = ",".join(f"{c}*" if c == mark else str(c) for c in (a, b))
            parts.append(f"({inner})")
        else:
            parts.append(str(content[0]))
    return ",".join(parts)


def format_marked_configuration(marked: MarkedConfiguration) -> str:
    return format_configuration(marked.config, mark=marked.mark)
