"""Length vectors: parsing, genericity, short subsets and the genetic code.

Subsets of ``[n]`` are passed around as iterables of 1-based indices in the
public API; internally they are bitmasks with bit ``i - 1`` standing for
element ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

MAX_N = 24


class LengthError(ValueError):
    """Invalid length-vector input."""

    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


class NonGenericError(ValueError):
    """Some subset has exactly half the total length."""


@dataclass(frozen=True)
class LengthVector:
    lengths: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.lengths)
        if len(vals) < 3:
            raise LengthError(f"need at least 3 sides, got {len(vals)}")
        if len(vals) > MAX_N:
            raise LengthError(f"at most {MAX_N} sides are supported, got {len(vals)}")
        for x in vals:
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise LengthError(f"non-integer length {x!r}", str(x))
            if x <= 0:
                raise LengthError(f"nonpositive length {x}", str(x))
        object.__setattr__(self, "lengths", tuple(sorted(int(x) for x in vals)))

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def total(self) -> int:
        return sum(self.lengths)

    def __str__(self) -> str:
        return ",".join(map(str, self.lengths))


def parse_lengths(text: str) -> LengthVector:
    """Parse ``"3,1,1,1"`` into a sorted :class:`LengthVector`."""
    if not text or not text.strip():
        raise LengthError("empty length vector")
    values = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            val = int(tok)
        except ValueError:
            raise LengthError(f"non-integer token {tok!r}", tok) from None
        if val <= 0:
            raise LengthError(f"nonpositive length {tok!r}", tok)
        values.append(val)
    if len(values) < 3:
        raise LengthError(f"need at least 3 sides, got {len(values)}")
    return LengthVector(tuple(values))


def to_mask(indices: Iterable[int], n: int) -> int:
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise IndexError(f"index {i} outside [1, {n}]")
        mask |= 1 << (i - 1)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def subset_sum(v: LengthVector, mask: int) -> int:
    return sum(a for i, a in enumerate(v.lengths) if mask >> i & 1)


def is_short(v: LengthVector, subset: Iterable[int]) -> bool:
    mask = to_mask(subset, v.n)
    s = subset_sum(v, mask)
    return s < v.total - s


def is_generic(v: LengthVector) -> bool:
    """True iff no subset has the same length as its complement."""
    total = v.total
    if total % 2:
        return True
    half = total // 2
    # reachable subset sums, capped at half
    reach = 1
    cap = (1 << (half + 1)) - 1
    for a in v.lengths:
        reach = (reach | (reach << a)) & cap
        if reach >> half & 1:
            return False
    return True


def _subset_sums(vals: list[int]) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for a in vals:
        sums = np.concatenate([sums, sums + a])
    return sums


def short_with_n(v: LengthVector) -> np.ndarray:
    """Boolean array over masks J of [n-1]: is J + {n} short."""
    rest = list(v.lengths[:-1])
    sums = _subset_sums(rest) + v.lengths[-1]
    return 2 * sums < v.total


def maximal_masks(short: np.ndarray, width: int) -> list[int]:
    """Masks in a dominance-downward-closed family with no short cover.

    Covers of J are J plus one new element, or J with some i replaced by
    i + 1 (when i + 1 is free and still inside ``[width]``).
    """
    size = 1 << width
    masks = np.arange(size, dtype=np.int64)
    maximal = short.copy()
    for j in range(width):
        bit = 1 << j
        free = (masks & bit) == 0
        maximal[free] &= ~short[masks[free] | bit]
        if j + 1 < width:
            up = 1 << (j + 1)
            movable = ((masks & bit) != 0) & ((masks & up) == 0)
            maximal[movable] &= ~short[masks[movable] ^ bit ^ up]
    return [int(m) for m in np.nonzero(maximal)[0]]


def genetic_code(v: LengthVector):
    """Genetic code of a generic vector, or ``None`` when ``{n}`` is long.

    ``None`` means the moduli space is empty; it is a status, not an error.
    """
    from .genetics import GeneticCode

    if not is_generic(v):
        raise NonGenericError(f"length vector {v} is not generic")
    short = short_with_n(v)
    if not short[0]:
        return None
    nbit = 1 << (v.n - 1)
    genes = [from_mask(m | nbit) for m in maximal_masks(short, v.n - 1)]
    return GeneticCode(v.n, genes)


def reduce_by_subset(v: LengthVector, subset: Iterable[int], check: bool = True) -> LengthVector:
    """Merge the sides in ``subset`` into the last side.

    ``subset`` must lie in ``[n-1]``, and with ``check`` set ``subset + {n}``
    must be short (otherwise the merged vector has an empty moduli space).
    The result keeps the remaining sides and appends the combined side.
    """
    n = v.n
    mask = to_mask(subset, n)
    if mask >> (n - 1) & 1:
        raise ValueError("subset must not contain n")
    nmask = mask | 1 << (n - 1)
    s = subset_sum(v, nmask)
    if check and not s < v.total - s:
        raise ValueError(f"{sorted(from_mask(nmask))} is not short")
    kept = [a for i, a in enumerate(v.lengths[:-1]) if not mask >> i & 1]
    return LengthVector(tuple(kept) + (s,))
