"""Genetic codes, the dominance order, subgees, supports, blocks and theta vectors."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .lengths import LengthVector, from_mask, genetic_code, is_generic, to_mask


class CodeError(ValueError):
    """Malformed genetic-code text or an invalid antichain."""


def dominates(small: Iterable[int], big: Iterable[int]) -> bool:
    """``small <= big`` in the dominance order.

    The elements of ``small`` are matched in order against the ``len(small)``
    largest elements of ``big``.
    """
    a = sorted(small)
    b = sorted(big)
    if len(a) > len(b):
        return False
    return all(x <= y for x, y in zip(a, b[len(b) - len(a):]))


def dominates_mask(small: int, big: int) -> bool:
    # bitwise form of the greedy test: scanning from the top, the number of
    # elements of ``small`` seen never exceeds that of ``big``
    count = 0
    top = max(small.bit_length(), big.bit_length())
    for i in range(top - 1, -1, -1):
        count += (big >> i & 1) - (small >> i & 1)
        if count < 0:
            return False
    return True


@dataclass(frozen=True)
class GeneticCode:
    n: int
    genes: tuple[frozenset[int], ...]

    def __init__(self, n: int, genes: Iterable[Iterable[int]]):
        object.__setattr__(self, "n", int(n))
        canon = sorted({frozenset(g) for g in genes}, key=lambda g: (-len(g), sorted(g)))
        object.__setattr__(self, "genes", tuple(canon))

    def __str__(self) -> str:
        return ",".join("{" + ",".join(map(str, sorted(g))) + "}" for g in self.genes)

    def sort_key(self):
        return (self.n, [sorted(g) for g in self.genes])

    @property
    def is_monogenic(self) -> bool:
        return len(self.genes) == 1

    @cached_property
    def poset(self) -> "SubgeePoset":
        return SubgeePoset(self)


def parse_code(text: str, n: int | None = None) -> GeneticCode:
    """Parse ``"{2,4,9},{6,9}"``; ``n`` defaults to the largest element."""
    body = text.strip().strip("<>⟨⟩ ")
    if not body:
        raise CodeError("empty genetic code")
    if re.fullmatch(r"[\d\s,{}]*", body) is None:
        raise CodeError(f"unexpected characters in code {text!r}")
    groups = re.findall(r"\{([^{}]*)\}", body)
    leftover = re.sub(r"\{[^{}]*\}", "", body).replace(",", "").strip()
    if not groups or leftover:
        raise CodeError(f"cannot parse genetic code {text!r}")
    genes = []
    for grp in groups:
        toks = [t.strip() for t in grp.split(",") if t.strip()]
        if not toks:
            raise CodeError("empty gene")
        gene = [int(t) for t in toks]
        if len(set(gene)) != len(gene):
            raise CodeError(f"repeated element in gene {{{grp}}}")
        genes.append(gene)
    top = max(max(g) for g in genes)
    if n is None:
        n = top
    code = GeneticCode(n, genes)
    status = validate_code(code)
    if not status.valid:
        raise CodeError("; ".join(status.problems))
    return code


@dataclass
class CodeStatus:
    valid: bool
    problems: list[str] = field(default_factory=list)


def validate_code(code: GeneticCode) -> CodeStatus:
    problems = []
    n = code.n
    if n < 3:
        problems.append(f"n={n} is below 3")
    if not code.genes:
        problems.append("no genes")
    for g in code.genes:
        if any(not 1 <= x <= n for x in g):
            problems.append(f"gene {_fmt(g)} has elements outside [1, {n}]")
        if n not in g:
            problems.append(f"gene {_fmt(g)} is missing n={n}")
    for g, h in itertools.permutations(code.genes, 2):
        if dominates(g, h):
            problems.append(f"{_fmt(g)} <= {_fmt(h)}")
    return CodeStatus(not problems, problems)


def _fmt(g) -> str:
    return "{" + ",".join(map(str, sorted(g))) + "}"


def gees(code: GeneticCode) -> list[frozenset[int]]:
    return [g - {code.n} for g in code.genes]


def down_covers(mask: int, width: int):
    """Immediate predecessors of ``mask`` in the dominance order on [width]."""
    m = mask
    while m:
        low = m & -m
        m ^= low
        yield mask ^ low
        if low > 1 and not mask & (low >> 1):
            yield mask ^ low ^ (low >> 1)


class SubgeePoset:
    """All subgees of a code, stored as bitmasks over ``[n-1]``."""

    def __init__(self, code: GeneticCode):
        self.code = code
        self.n = code.n
        self.width = code.n - 1
        self.gee_masks = [to_mask(g, self.n) for g in gees(code)]
        seen = set(self.gee_masks)
        stack = list(self.gee_masks)
        while stack:
            cur = stack.pop()
            for nxt in down_covers(cur, self.width):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        self.masks = sorted(seen, key=lambda m: (m.bit_count(), m))
        self._set = frozenset(seen)
        self.k = max(m.bit_count() for m in self.masks)
        self._support: dict[int, int] = {}

    def __contains__(self, mask: int) -> bool:
        return mask in self._set

    def __len__(self) -> int:
        return len(self.masks)

    def of_size(self, i: int) -> list[int]:
        return [m for m in self.masks if m.bit_count() == i]

    def as_sets(self) -> list[frozenset[int]]:
        return [from_mask(m) for m in self.masks]

    def is_subgee(self, subset: Iterable[int]) -> bool:
        return to_mask(subset, self.width) in self._set if _in_range(subset, self.width) else False

    def support_mask(self, mask: int) -> int:
        if mask not in self._set:
            raise ValueError(f"{sorted(from_mask(mask))} is not a subgee")
        if mask not in self._support:
            sup = 0
            for s in range(self.width):
                bit = 1 << s
                if not mask & bit and (mask | bit) in self._set:
                    sup |= bit
            self._support[mask] = sup
        return self._support[mask]

    def restricted(self, t: int, p: int, s: int) -> list[int]:
        """Subgees of size ``t`` containing ``p`` and avoiding element ``s``."""
        sbit = 1 << (s - 1)
        return [m for m in self.masks if m.bit_count() == t and m & p == p and not m & sbit]


def _in_range(subset, width) -> bool:
    return all(1 <= i <= width for i in subset)


def subgees(code: GeneticCode) -> SubgeePoset:
    return code.poset


def support(poset: SubgeePoset, subset: Iterable[int]) -> frozenset[int]:
    if not _in_range(subset, poset.width):
        raise ValueError(f"{sorted(subset)} is not a subgee")
    return from_mask(poset.support_mask(to_mask(subset, poset.width)))


def theta(subset: Iterable[int], gee: Sequence[int]) -> tuple[int, ...]:
    """Counts of ``subset`` inside each block ``(g_{i-1}, g_i]``, with ``g_0 = 0``."""
    g = sorted(gee)
    counts = [0] * len(g)
    for j in subset:
        if not g or j > g[-1] or j < 1:
            raise ValueError(f"element {j} is outside (0, {g[-1] if g else 0}]")
        lo = 0
        for i, top in enumerate(g):
            if lo < j <= top:
                counts[i] += 1
                break
            lo = top
    return tuple(counts)


def in_S_k(vec: Sequence[int]) -> bool:
    """Every suffix of length i sums to at most i."""
    if any(b < 0 for b in vec):
        raise ValueError("entries must be nonnegative")
    acc = 0
    for i, b in enumerate(reversed(vec), start=1):
        acc += b
        if acc > i:
            return False
    return True


def blocks(code: GeneticCode) -> list[tuple[int, int]] | None:
    """Half-open blocks ``(lo, hi]`` cut out by the largest gee.

    Defined for monogenic codes and for two-gene codes whose second gee is a
    singleton lying above the first gee; ``None`` otherwise.
    """
    gs = sorted(gees(code), key=len, reverse=True)
    main = sorted(gs[0])
    edges = [0] + main
    out = [(edges[i], edges[i + 1]) for i in range(len(main))]
    if len(gs) == 1:
        return out
    if len(gs) == 2 and len(gs[1]) == 1:
        (b,) = gs[1]
        top = main[-1] if main else 0
        if b > top:
            return out + [(top, b)]
    return None


def block_of(blks: list[tuple[int, int]], s: int) -> int | None:
    for i, (lo, hi) in enumerate(blks):
        if lo < s <= hi:
            return i
    return None


def realize_code(code: GeneticCode, search_bound: int) -> LengthVector | None:
    """Brute-force search for a length vector realizing ``code``.

    Sorted vectors with entries at most ``search_bound`` are tried in order of
    largest entry, then lexicographically; the first match is returned.
    """
    n = code.n
    for top in range(1, search_bound + 1):
        for head in itertools.combinations_with_replacement(range(1, top + 1), n - 1):
            v = LengthVector(head + (top,))
            if not is_generic(v):
                continue
            if genetic_code(v) == code:
                return v
    return None


def lp_realize(code: GeneticCode) -> LengthVector | None:
    """Decide realizability by linear programming and return an exact witness.

    Every ``J + {n}`` (J inside ``[n-1]``) must be short exactly when J is a
    subgee; margins of 1 make the strict inequalities closed, and scaling the
    LP solution by ``n`` before rounding keeps every margin positive.
    """
    import numpy as np
    from scipy.optimize import linprog

    n = code.n
    poset = code.poset
    width = n - 1
    rows = []
    rhs = []
    for mask in range(1 << width):
        signs = np.array([-1.0] * n)
        for i in range(width):
            if mask >> i & 1:
                signs[i] = 1.0
        signs[n - 1] = 1.0
        # signs . alpha = sum(I) - sum(complement)
        if mask in poset:
            rows.append(signs)
            rhs.append(-1.0)
        else:
            rows.append(-signs)
            rhs.append(-1.0)
    for i in range(n - 1):
        r = np.zeros(n)
        r[i], r[i + 1] = 1.0, -1.0
        rows.append(r)
        rhs.append(0.0)
    res = linprog(
        np.ones(n),
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        bounds=[(1, None)] * n,
        method="highs",
    )
    if res.status != 0:
        return None
    for scale in (1, 2, n, 2 * n, 4 * n):
        cand = LengthVector(tuple(max(1, int(round(x * scale))) for x in res.x))
        if is_generic(cand) and genetic_code(cand) == code:
            return cand
    # LP claimed feasibility but no rounding verified; treat as unrealized
    return None
