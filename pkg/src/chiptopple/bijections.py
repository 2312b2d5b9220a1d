"""Constructive bijections.

``callan_to_vesztergombi`` sends a Callan word with U underlined and O
overlined values to a (U,O)-Vesztergombi permutation. Within each block,
every element points at its predecessor: a follower a in an underlined
block gets value pred + O + 1, a follower b in an overlined block gets
pred - U - 1, and the word's first element always gets value O+1 (so the
first word letter is recoverable as the position of O+1). The remaining
block leaders take the still-missing values: leaders of underlined blocks
receive the smallest ones in block order, leaders of overlined blocks the
rest, again ascending in block order.

``phi`` reduces a configuration toppling to a resultant perm down to the
record skeleton: non-record chips sit on forced sites, so deleting them
and relabelling leaves a smaller toppleable configuration that carries all
the remaining freedom.
"""
from __future__ import annotations

from .core import (
    Configuration,
    Perm,
    left_record_values,
    records,
    right_record_values,
)
from .families import CallanWord, is_p_resultant, is_vesztergombi


def callan_to_vesztergombi(word: CallanWord) -> Perm:
    """
    Map a Callan word to a (U,O)-Vesztergombi permutation. Word elements
    double as positions of the output.
    """
    u, o = word.underlined, word.overlined
    total = u + o
    sigma = [0] * (total + 1)  # 1-based positions
    blocks = word.blocks()
    for block in blocks:
        if block[0] <= u:
            for prev, elem in zip(block, block[1:]):
                sigma[elem] = prev + o + 1
        else:
            for prev, elem in zip(block, block[1:]):
                sigma[elem] = prev - u - 1
    sigma[word.values[0]] = o + 1
    underlined_leaders = []
    overlined_leaders = []
    for index, block in enumerate(blocks):
        if index == 0:
            continue  # the word's first element already got O+1
        if block[0] <= u:
            underlined_leaders.append(block[0])
        else:
            overlined_leaders.append(block[0])
    used = {v for v in sigma[1:] if v}
    missing = [v for v in range(1, total + 1) if v not in used]
    head, tail = missing[: len(underlined_leaders)], missing[len(underlined_leaders) :]
    for leader, value in zip(underlined_leaders, head):
        sigma[leader] = value
    for leader, value in zip(overlined_leaders, tail):
        sigma[leader] = value
    result = tuple(sigma[1:])
    if not is_vesztergombi(result, u, o):
        raise AssertionError(f"image {result} left the Vesztergombi window")
    return result


def vesztergombi_to_callan(sigma: Perm, underlined: int, overlined: int) -> CallanWord:
    """
    Invert ``callan_to_vesztergombi``: recover the block chains from the
    value offsets and reassemble the word, alternating block classes
    starting from the position of O+1.
    """
    u, o = underlined, overlined
    total = u + o
    if not is_vesztergombi(sigma, u, o):
        raise ValueError(f"{sigma} is not ({u},{o})-Vesztergombi")
    start = sigma.index(o + 1) + 1
    follower_of: dict[int, int] = {}
    underlined_leaders: list[tuple[int, int]] = []  # (assigned value, element)
    overlined_leaders: list[tuple[int, int]] = []
    for elem in range(1, total + 1):
        value = sigma[elem - 1]
        if elem == start:
            continue
        if elem <= u:
            if value >= o + 2:
                follower_of[value - o - 1] = elem
            else:
                underlined_leaders.append((value, elem))
        else:
            if value <= o - 1:
                follower_of[value + u + 1] = elem
            else:
                overlined_leaders.append((value, elem))

    def chain(head: int) -> tuple[int, ...]:
        out = [head]
        while out[-1] in follower_of:
            out.append(follower_of[out[-1]])
        return tuple(out)

    underlined_blocks = [chain(elem) for _, elem in sorted(underlined_leaders)]
    overlined_blocks = [chain(elem) for _, elem in sorted(overlined_leaders)]
    if start <= u:
        first, others, mine = chain(start), overlined_blocks, underlined_blocks
    else:
        first, others, mine = chain(start), underlined_blocks, overlined_blocks
    if not len(mine) <= len(others) <= len(mine) + 1:
        raise ValueError(f"{sigma} does not decompose into alternating blocks")
    values: list[int] = list(first)
    for index, block in enumerate(others):
        values.extend(block)
        if index < len(mine):
            values.extend(mine[index])
    word = CallanWord(values=tuple(values), underlined=u, overlined=o)
    if callan_to_vesztergombi(word) != sigma:
        raise AssertionError(f"roundtrip failed for {sigma}")
    return word


def _record_split(perm: Perm, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Left-record values of the prefix and right-record values of the suffix."""
    cut = len(perm) - p
    return left_record_values(perm[:cut]), right_record_values(perm[cut:])


def phi(config: Configuration, perm: Perm, verify: bool = False) -> Configuration:
    """
    Collapse a configuration that topples to the resultant perm onto its
    record skeleton: drop every chip (with its site) that is neither a
    left record of the prefix nor a right record of the suffix, then
    relabel the i+j surviving chips order-preservingly. The image lies in
    S(i+j-1, j) with the pair on site j.

    With ``verify=True`` the resultant of config is recomputed and checked
    against perm first.
    """
    n, p = config.n, config.p
    if len(perm) != n + 1:
        raise ValueError(f"resultant must have {n + 1} entries")
    if not is_p_resultant(perm, p):
        raise ValueError(f"{perm} is not a resultant for doubled site {p}")
    if verify:
        from .engine import resultant

        actual, _ = resultant(config)
        if actual != perm:
            raise ValueError(f"configuration topples to {actual}, not {perm}")
    lrec, rrec = _record_split(perm, p)
    keep = sorted(lrec) + sorted(rrec)
    relabel = {chip: index for index, chip in enumerate(keep, start=1)}
    sites = []
    for content in config.sites:
        kept = tuple(sorted(relabel[c] for c in content if c in relabel))
        if len(content) == 2 and len(kept) < 2:
            raise ValueError("a chip of the doubled site is not a record; resultant mismatch")
        if kept:
            sites.append(kept)
    return Configuration(n=len(sites), p=len(rrec), sites=tuple(sites))


def _infer_p(perm: Perm, i: int, j: int) -> int:
    n = len(perm) - 1
    matches = []
    for p in range(1, n + 1):
        if not is_p_resultant(perm, p):
            continue
        lrec, rrec = _record_split(perm, p)
        if len(lrec) == i and len(rrec) == j:
            matches.append(p)
    if len(matches) != 1:
        raise ValueError(
            f"cannot infer the doubled site for {perm} with record counts ({i}, {j}); "
            f"candidates {matches}"
        )
    return matches[0]


def phi_inverse(reduced: Configuration, perm: Perm, p: int | None = None) -> Configuration:
    """
    Rebuild the configuration toppling to perm from its record skeleton.
    Chips of the reduced configuration are relabelled to the record values
    of perm; each non-record then has a forced site: the one at 1-based
    position m of perm goes to site p+m-1 when it belongs to the prefix
    and to site p+m-n-1 when it belongs to the suffix. The remaining sites
    receive the skeleton in order. ``p`` may be omitted when the record
    counts determine it.
    """
    i = reduced.n + 1 - reduced.p
    j = reduced.p
    if p is None:
        p = _infer_p(perm, i, j)
    n = len(perm) - 1
    if not 1 <= p <= n:
        raise ValueError(f"p outside 1..{n}")
    if not is_p_resultant(perm, p):
        raise ValueError(f"{perm} is not a resultant for doubled site {p}")
    lrec, rrec = _record_split(perm, p)
    if len(lrec) != i or len(rrec) != j:
        raise ValueError(
            f"skeleton shape ({i},{j}) does not match the records of {perm} at p={p}"
        )
    keep = sorted(lrec) + sorted(rrec)
    relabel = {index: chip for index, chip in enumerate(keep, start=1)}
    placed: dict[int, int] = {}
    cut = n + 1 - p
    prefix_record_pos = {pos for pos, _ in records(perm[:cut], "left_max")}
    for m in range(1, cut + 1):
        if m not in prefix_record_pos:
            placed[p + m - 1] = perm[m - 1]
    suffix_record_pos = {cut + pos for pos, _ in records(perm[cut:], "right_min")}
    for m in range(cut + 1, n + 2):
        if m not in suffix_record_pos:
            placed[p + m - n - 1] = perm[m - 1]
    free_sites = [site for site in range(1, n + 1) if site not in placed]
    if len(free_sites) != reduced.n:
        raise ValueError("forced sites collide; invalid perm/skeleton combination")
    sites: list[tuple[int, ...]] = [()] * n
    for site, value in placed.items():
        sites[site - 1] = (value,)
    for skeleton_site, target in zip(reduced.sites, free_sites):
        sites[target - 1] = tuple(sorted(relabel[c] for c in skeleton_site))
    if free_sites[j - 1] != p:
        raise ValueError("doubled site would not land on p; invalid combination")
    return Configuration(n=n, p=p, sites=tuple(sites))
