"""Poly-Bernoulli numbers of types B and C and the counting formulas built on them.

Everything is exact integer arithmetic. Each of B(n,k) and C(n,k) comes in
three independent flavours (closed sum over Stirling numbers, signed
inclusion-exclusion sum, and a column recurrence) that must agree; the
default cached accessors use the closed formula. The B array is OEIS
A099594.
"""
from __future__ import annotations

from functools import cache
from math import comb, factorial
from typing import Callable, Sequence

from .core import Perm, left_record_values, right_record_values, reverse_complement_perm

METHODS = ("closed", "inclusion_exclusion", "recurrence")


@cache
def stirling2(n: int, m: int) -> int:
    """
    Stirling number of the second kind: set partitions of n elements into
    m non-empty parts. S(0,0) = 1 and S(n,m) = 0 for m > n.

    >>> [stirling2(4, m) for m in range(5)]
    [0, 1, 7, 6, 1]
    """
    if n < 0 or m < 0:
        raise ValueError("negative index")
    if n == 0 and m == 0:
        return 1
    if n == 0 or m == 0 or m > n:
        return 0
    return m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


def _b_closed(n: int, k: int) -> int:
    return sum(
        factorial(m) ** 2 * stirling2(n + 1, m + 1) * stirling2(k + 1, m + 1)
        for m in range(min(n, k) + 1)
    )


def _b_inclusion_exclusion(n: int, k: int) -> int:
    return sum(
        (-1) ** (n - m) * factorial(m) * stirling2(n, m) * (m + 1) ** k
        for m in range(n + 1)
    )


@cache
def _b_recurrence(n: int, k: int) -> int:
    if k == 0 or n == 0:
        return 1
    return _b_recurrence(n, k - 1) + sum(
        comb(n, m) * _b_recurrence(n - (m - 1), k - 1) for m in range(1, n + 1)
    )


def _c_closed(n: int, k: int) -> int:
    return sum(
        factorial(m) ** 2 * stirling2(n + 1, m + 1) * stirling2(k, m)
        for m in range(min(n, k) + 1)
    )


def _c_inclusion_exclusion(n: int, k: int) -> int:
    # The sum runs over the second index: the same sum over the first one
    # produces the transposed array (it disagrees with C(2,1) = 3 already).
    return sum(
        (-1) ** (k + m) * factorial(m) * (m + 1) ** n * stirling2(k + 1, m + 1)
        for m in range(k + 1)
    )


@cache
def _c_recurrence(n: int, k: int) -> int:
    if k == 0:
        return 1
    if n == 0:
        return 0
    return sum(comb(n, m) * _c_recurrence(n - m + 1, k - 1) for m in range(1, n + 1))


_B_METHODS: dict[str, Callable[[int, int], int]] = {
    "closed": _b_closed,
    "inclusion_exclusion": _b_inclusion_exclusion,
    "recurrence": _b_recurrence,
}

_C_METHODS: dict[str, Callable[[int, int], int]] = {
    "closed": _c_closed,
    "inclusion_exclusion": _c_inclusion_exclusion,
    "recurrence": _c_recurrence,
}


def poly_bernoulli_B(n: int, k: int, method: str = "closed") -> int:
    """
    Type B poly-Bernoulli number B(n,k).

    closed: sum over m of (m!)^2 S(n+1,m+1) S(k+1,m+1);
    inclusion_exclusion: sum over m of (-1)^(n-m) m! S(n,m) (m+1)^k;
    recurrence: B(n,k+1) = B(n,k) + sum_m binom(n,m) B(n-m+1,k) with the
    column B(n,0) = 1.

    >>> poly_bernoulli_B(2, 2)
    14
    >>> poly_bernoulli_B(5, 5)
    329462
    """
    if n < 0 or k < 0:
        raise ValueError("negative index")
    try:
        fn = _B_METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return fn(n, k)


def poly_bernoulli_C(n: int, k: int, method: str = "closed") -> int:
    """
    Type C poly-Bernoulli number C(n,k).

    closed: sum over m of (m!)^2 S(n+1,m+1) S(k,m);
    inclusion_exclusion: sum over m of (-1)^(k+m) m! (m+1)^n S(k+1,m+1);
    recurrence: C(n,k+1) = sum_m binom(n,m) C(n-m+1,k) for n >= 1, with
    C(n,0) = 1 and C(0,k) = 0 for k >= 1.

    >>> poly_bernoulli_C(2, 2)
    7
    >>> poly_bernoulli_C(5, 5)
    164731
    """
    if n < 0 or k < 0:
        raise ValueError("negative index")
    try:
        fn = _C_METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return fn(n, k)


@cache
def b_number(n: int, k: int) -> int:
    """Cached B(n,k) via the closed formula."""
    return _b_closed(n, k)


@cache
def c_number(n: int, k: int) -> int:
    """Cached C(n,k) via the closed formula."""
    return _c_closed(n, k)


def forward_difference(f: Callable[[int], int], order: int, at: int) -> int:
    """
    Iterated forward difference of an integer family: order m at base x is
    sum over j of (-1)^(m-j) binom(m,j) f(x+j); order 0 is f itself.

    >>> forward_difference(lambda n: n * n, 2, 0)
    2
    """
    if order < 0:
        raise ValueError("negative order")
    return sum((-1) ** (order - j) * comb(order, j) * f(at + j) for j in range(order + 1))


def binomial_transform(prefix: Sequence[int]) -> tuple[int, ...]:
    """
    Alternating binomial transform: b_n = sum_k (-1)^k binom(n,k) a_k.
    Involutive on sequences; related to forward differences by
    Delta^m f at 0 = (-1)^m b_m.

    >>> binomial_transform((1, 1, 1))
    (1, 0, 0)
    >>> binomial_transform((1, 2, 4))
    (1, -1, 1)
    """
    return tuple(
        sum((-1) ** k * comb(n, k) * prefix[k] for k in range(n + 1))
        for n in range(len(prefix))
    )


def count_toppleable_configs(n: int, p: int) -> int:
    """
    Configurations of n+1 chips on n sites (pair at p) that topple to the
    sorted arrangement: B(n-p+1, p)/2. B is even there, so the division is
    exact; a remainder would mean the kernel is broken.
    """
    if not 1 <= p <= n:
        raise ValueError(f"p outside 1..{n}")
    value = b_number(n - p + 1, p)
    if value % 2:
        raise ArithmeticError(f"B({n - p + 1},{p}) = {value} is odd")
    return value // 2


def count_rp_toppleable(n: int, p: int, r: int, method: str = "delta") -> int:
    """
    Number of permutations of 1..n that topple to the identity when chip r
    is added at site p.

    delta: Delta^(r-1) B(n-p+1-r, p) in the first index for r <= n-p+1,
    the mirrored parameters (n+1-p, n+2-r) otherwise. c_sum: binomially
    weighted sums of type C numbers, split along the same boundary.

    >>> count_rp_toppleable(5, 2, 3)
    22
    """
    if not 1 <= p <= n or not 1 <= r <= n + 1:
        raise ValueError(f"(p, r) = ({p}, {r}) outside range for n = {n}")
    if method == "delta":
        if r > n - p + 1:
            return count_rp_toppleable(n, n + 1 - p, n + 2 - r, method)
        return forward_difference(lambda i: b_number(i, p), r - 1, n - p + 1 - r)
    if method == "c_sum":
        if r <= n - p + 1:
            top = n - p + 1 - r
            return sum(comb(top, i) * c_number(p, n - p - i) for i in range(top + 1))
        top = r - n + p - 2
        return sum(comb(top, i) * c_number(n - p + 1, p - i - 1) for i in range(top + 1))
    raise ValueError(f"unknown method {method!r}")


def count_all_r_toppleable(n: int, p: int) -> int:
    """Permutations toppleable for every extra chip value: C(p, n-p)."""
    if not 1 <= p <= n:
        raise ValueError(f"p outside 1..{n}")
    return c_number(p, n - p)


def count_resultant_class(i: int, j: int) -> int:
    """
    Configurations toppling to any fixed resultant whose left part has i
    records and right part j records: B(i,j)/2.
    """
    if i < 1 or j < 1:
        raise ValueError("record counts must be at least 1")
    value = b_number(i, j)
    if value % 2:
        raise ArithmeticError(f"B({i},{j}) = {value} is odd")
    return value // 2


def count_N_pi(perm: Perm, r: int, p: int) -> int:
    """
    Number of permutations of 1..n-1 that topple to the resultant perm (in
    S_n) when chip r is added at site p.

    For r <= n-p, with the left-record values of the prefix splitting into
    a records below r and b above it and k right-records in the suffix,
    this is Delta^a B(b,k) in the first index; at r = n-p it collapses to
    C(k, a). Larger r goes through the reverse-complement symmetry.
    Raises when perm is not a resultant reachable with chip r.
    """
    from .families import is_p_resultant, validate_r_placement

    n = len(perm)
    if not 1 <= p <= n - 1 or not 1 <= r <= n:
        raise ValueError(f"(p, r) = ({p}, {r}) outside range for a resultant in S_{n}")
    if not is_p_resultant(perm, p):
        raise ValueError(f"{perm} is not decomposable at prefix length {n - p}")
    if not validate_r_placement(perm, p, r):
        raise ValueError(f"chip {r} cannot produce resultant {perm} at site {p}")
    if r > n - p:
        return count_N_pi(reverse_complement_perm(perm), n + 1 - r, n - p)
    prefix = perm[: n - p]
    suffix = perm[n - p :]
    lrecords = left_record_values(prefix)
    a = sum(1 for v in lrecords if v < r)
    b = sum(1 for v in lrecords if v > r)
    k = len(right_record_values(suffix))
    return forward_difference(lambda i: b_number(i, k), a, b)
