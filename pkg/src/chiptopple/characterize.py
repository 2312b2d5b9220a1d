"""Closed-form toppleability tests.

A configuration stabilizes to the sorted arrangement exactly when every
chip starts inside a window around its target site; the same window on the
inverse of a permutation characterizes being toppleable for every choice
of the extra chip. None of these predicates run the dynamics; agreement
with the simulator is checked in the test suite.
"""
from __future__ import annotations

from .core import Configuration, Perm, inverse, lift


def is_p_toppleable(config: Configuration) -> bool:
    """
    Window test: chip i (1 <= i <= n+1) must sit on a site in
    [p+i-n-1, p+i-1]. Both chips of the pair count as sitting on p, where
    the window is never violated, so only the single chips constrain.
    """
    n, p = config.n, config.p
    for site, content in enumerate(config.sites, start=1):
        for chip in content:
            if not (p + chip - n - 1 <= site <= p + chip - 1):
                return False
    return True


def is_rp_toppleable(perm: Perm, r: int, p: int) -> bool:
    """Does perm with chip r added at site p topple to the identity?"""
    return is_p_toppleable(lift(perm, r, p).config)


def is_all_r_toppleable(perm: Perm, p: int) -> bool:
    """
    Is perm (r,p)-toppleable for every r in 1..n+1? Equivalent inverse
    window: p+i-n <= position of i <= p+i-1 for all values i.
    """
    n = len(perm)
    if not 1 <= p <= n:
        raise ValueError(f"site {p} outside 1..{n}")
    inv = inverse(perm)
    return all(p + i - n <= inv[i - 1] <= p + i - 1 for i in range(1, n + 1))
