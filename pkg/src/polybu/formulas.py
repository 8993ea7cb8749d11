"""Closed-form mod-2 evaluators for monogenic and two-gene codes.

Nothing here consults the cohomology engine; the two are compared in tests
and in ``polybu verify``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .genetics import dominates, theta

MAX_K = 16


def binom_mod2(a: int, b: int) -> int:
    """Parity of C(a, b), with C(a, b) = (-1)^b C(b - a - 1, b) for a < 0."""
    if b < 0:
        raise ValueError("lower index must be nonnegative")
    if a < 0:
        a = b - a - 1
    return 1 if b & ~a == 0 else 0


def block_sizes(gee: Sequence[int]) -> list[int]:
    """Block sizes g_i - g_{i-1} (g_0 = 0), lowest block first.

    The i-th size is paired with the i-th theta entry, the same indexing the
    S_k suffix condition uses.  Pairing the top block first instead disagrees
    with the cohomology engine already for <{1,3,6}>.
    """
    g = [0] + sorted(gee)
    return [g[i] - g[i - 1] for i in range(1, len(g))]


def s_k_completions(base: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """All B >= 0 with sum ``total`` such that B + base lies in S_k."""
    k = len(base)
    if k > MAX_K:
        raise ValueError(f"gee size {k} exceeds the supported {MAX_K}")
    out = [0] * k

    def rec(pos, used, suffix):
        # pos walks from the last coordinate down; suffix is the running
        # suffix sum of B + base
        if pos < 0:
            if used == total:
                yield tuple(out)
            return
        i = k - pos
        room = i - suffix - base[pos]
        for b in range(0, min(room, total - used) + 1):
            out[pos] = b
            yield from rec(pos - 1, used + b, suffix + base[pos] + b)
        out[pos] = 0

    if all(x >= 0 for x in base):
        yield from rec(k - 1, 0, 0)


def _weight(a: Sequence[int], bvec: Sequence[int]) -> int:
    w = 1
    for ai, bi in zip(a, bvec):
        w &= binom_mod2(ai + bi - 2, bi)
        if not w:
            break
    return w


def davis_phi(gee: Sequence[int], n: int, subset: Iterable[int]) -> int:
    """phi(R^{n-3-|J|} V_J) for the monogenic code with gee ``gee``."""
    g = sorted(gee)
    J = sorted(subset)
    if J and (not g or J[-1] > g[-1]):
        raise ValueError(f"{J} is not a subgee of {g}")
    if not dominates(J, g):
        raise ValueError(f"{J} is not a subgee of {g}")
    k = len(g)
    if len(J) > n - 3:
        raise ValueError("subgee larger than the top degree")
    th = theta(J, g)
    a = block_sizes(g)
    acc = 0
    for bvec in s_k_completions(th, k - len(J)):
        acc ^= _weight(a, bvec)
    return acc


def _check_two_gene(gee: Sequence[int], b: int, n: int) -> list[int]:
    g = sorted(gee)
    if not g:
        raise ValueError("first gee must be nonempty")
    if len(set(g)) != len(g) or g[0] < 1:
        raise ValueError(f"bad gee {gee}")
    if g[-1] >= b:
        raise ValueError(f"need max gee {g[-1]} < b = {b}")
    if b > n - 1:
        raise ValueError(f"b = {b} must lie in [n-1] for n = {n}")
    return g


def extended_Rm(gee: Sequence[int], b: int, n: int) -> int:
    """phi(R^{n-3}) for the code <gee+{n}, {b,n}> with all of gee below b.

    With a single-element gee the code collapses to <{b,n}> and the value is
    (b - 1) mod 2.
    """
    g = _check_two_gene(gee, b, n)
    k = len(g)
    a = block_sizes(g)
    acc = 0
    for bvec in s_k_completions([0] * k, k):
        acc ^= _weight(a, bvec)
    return acc ^ ((b - g[-1]) & 1)


def phi_two_gene(gee: Sequence[int], b: int, n: int, subset: Iterable[int]) -> int:
    """phi(R^{m-|P|} V_P) for a subgee P dominated by the larger gee, 1 <= |P| <= k-1.

    The value is the same Davis sum as in the monogenic case.
    """
    g = _check_two_gene(gee, b, n)
    P = sorted(subset)
    if not 1 <= len(P) <= len(g) - 1:
        raise ValueError(f"|P| must lie in 1..{len(g) - 1}")
    if not dominates(P, g):
        raise ValueError(f"{P} is not dominated by {g}")
    return davis_phi(g, n, P)


def tidy_by_parity(gee: Sequence[int], b: int, n: int) -> str | None:
    """``"Tidy"`` when R^{n-3} vanishes by the two-gene formula, else no conclusion."""
    return "Tidy" if extended_Rm(gee, b, n) == 0 else None
