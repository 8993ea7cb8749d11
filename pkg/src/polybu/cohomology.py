"""Mod-2 cohomology of the unoriented polygon space from its genetic code.

The ring is generated by R and V_1..V_{n-1} in degree 1.  Modulo the square
relation V_i^2 = R V_i and the vanishing of V_S for non-subgees S, degree d
has the basis R^{d-|S|} V_S over subgees with |S| <= d.  A degree-d vector
is therefore an int bitset over *subgees*, and multiplication by R is the
identity on bitsets.  The relation spaces I_0 <= I_1 <= ... <= I_m are nested
as bitsets, so degree d only has to add V_i * (what is new in I_{d-1}) and
the seed relations

    E_S = sum_{T subgee, T disjoint from S} R^{d-|T|} V_T,   d = n - |S| - 2.

Columns are ordered by (|S| descending, mask ascending) and each relation is
pivoted on its lowest set bit, so R^d (the last column) is only a pivot when
R^d = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .genetics import GeneticCode, SubgeePoset
from .lengths import from_mask, to_mask


class InconsistentRingError(RuntimeError):
    """The presentation does not give a Poincare duality algebra."""


@dataclass(frozen=True)
class Monomial:
    r_power: int
    vars: frozenset[int]

    @property
    def degree(self) -> int:
        return self.r_power + len(self.vars)

    def __str__(self) -> str:
        parts = []
        if self.r_power:
            parts.append("R" if self.r_power == 1 else f"R^{self.r_power}")
        if self.vars:
            parts.append("V_{" + ",".join(map(str, sorted(self.vars))) + "}")
        return "*".join(parts) or "1"


@dataclass
class DegreeSpace:
    degree: int
    span_size: int
    rank: int
    basis: list[int]  # subgee masks of the quotient basis monomials
    pivots: dict[int, int]  # pivot bit -> relation row (echelon form)

    @property
    def quotient_rank(self) -> int:
        return self.span_size - self.rank

    def basis_monomials(self) -> list[Monomial]:
        return [Monomial(self.degree - m.bit_count(), from_mask(m)) for m in self.basis]


def _popparity(x: int) -> int:
    return x.bit_count() & 1


class CohomologyRing:
    def __init__(self, code: GeneticCode, check: bool = True):
        self.code = code
        self.poset: SubgeePoset = code.poset
        self.n = code.n
        self.m = code.n - 3
        cols = sorted(self.poset.masks, key=lambda s: (-s.bit_count(), s))
        self.cols = cols
        self.col_bit = {s: 1 << i for i, s in enumerate(cols)}
        self._bit_col = {1 << i: s for i, s in enumerate(cols)}
        # bitset of all columns with |S| <= d
        self._upto = []
        for d in range(self.m + 1):
            mask = 0
            for s in cols:
                if s.bit_count() <= d:
                    mask |= self.col_bit[s]
            self._upto.append(mask)
        self._vmaps = self._build_vmaps()
        self.spaces: list[DegreeSpace] = []
        self._build()
        self._phi_mask = self._compute_phi() if self.spaces[-1].quotient_rank == 1 else None
        if check:
            self.check()

    # -- construction -----------------------------------------------------

    def _build_vmaps(self):
        """Per generator V_i: list of (source bit, target bit) pairs."""
        maps = []
        for i in range(self.poset.width):
            ibit = 1 << i
            pairs = {}
            for s in self.cols:
                t = s | ibit
                if t in self.poset:
                    pairs[self.col_bit[s]] = self.col_bit[t]
            maps.append(pairs)
        return maps

    def mul_v(self, vec: int, i: int) -> int:
        """Multiply a bitset by V_i (``i`` is 1-based)."""
        pairs = self._vmaps[i - 1]
        out = 0
        while vec:
            low = vec & -vec
            vec ^= low
            tgt = pairs.get(low)
            if tgt is not None:
                out ^= tgt
        return out

    def seed(self, s_mask: int) -> tuple[int, int]:
        """(degree, bitset) of the relation E_S for a nonempty subgee S."""
        d = self.n - s_mask.bit_count() - 2
        vec = 0
        for t in self.cols:
            if not t & s_mask and t.bit_count() <= d:
                vec |= self.col_bit[t]
        return d, vec

    def _build(self):
        seeds_at: dict[int, list[int]] = {}
        for s in self.poset.masks:
            if s:
                d, vec = self.seed(s)
                if 0 <= d <= self.m:
                    seeds_at.setdefault(d, []).append(vec)
        pivots: dict[int, int] = {}
        fresh: list[int] = []
        for d in range(self.m + 1):
            cands = []
            for row in fresh:
                for i in range(1, self.poset.width + 1):
                    prod = self.mul_v(row, i)
                    if prod:
                        cands.append(prod)
            cands.extend(seeds_at.get(d, ()))
            fresh = []
            for vec in cands:
                vec = _reduce(vec, pivots)
                if vec:
                    pivots[vec & -vec] = vec
                    fresh.append(vec)
            upto = self._upto[d]
            basis = [s for s in self.cols if self.col_bit[s] & upto and self.col_bit[s] not in pivots]
            span = upto.bit_count()
            self.spaces.append(DegreeSpace(d, span, span - len(basis), basis, dict(pivots)))

    def _compute_phi(self) -> int:
        """Bitset of columns S with phi(R^{m-|S|} V_S) = 1."""
        top = self.spaces[self.m]
        (q,) = top.basis
        phi = self.col_bit[q]
        # back-substitute from the highest pivot down; every other bit of a
        # pivot row sits above its pivot and is already resolved
        for p in sorted(top.pivots, reverse=True):
            row = top.pivots[p]
            if _popparity((row ^ p) & phi):
                phi |= p
        return phi

    # -- queries ----------------------------------------------------------

    def _mask(self, subset) -> int:
        if isinstance(subset, int):
            return subset
        return to_mask(subset, self.poset.width)

    def vector(self, terms: Iterable, degree: int) -> int:
        """Bitset of a sum of degree-``degree`` monomials given by their V-sets."""
        vec = 0
        for s in terms:
            s = self._mask(s)
            if s not in self.poset:
                continue
            if s.bit_count() > degree:
                raise ValueError(f"V_{sorted(from_mask(s))} has degree above {degree}")
            vec ^= self.col_bit[s]
        return vec

    def normal_form(self, degree: int, vec: int) -> int:
        return _reduce_full(vec, self.spaces[degree].pivots)

    def class_of(self, a: int, subset) -> tuple[int, ...]:
        """Coordinates of R^a V_S in the quotient basis of degree a + |S|."""
        s = self._mask(subset)
        d = a + s.bit_count()
        if a < 0 or d > self.m:
            raise ValueError(f"degree {d} outside 0..{self.m}")
        if s not in self.poset:
            raise ValueError(f"{sorted(from_mask(s))} is not a subgee")
        nf = self.normal_form(d, self.col_bit[s])
        return tuple(1 if nf & self.col_bit[b] else 0 for b in self.spaces[d].basis)

    def is_zero(self, degree: int, vec: int) -> bool:
        return self.normal_form(degree, vec) == 0

    def phi_vec(self, vec: int) -> int:
        if self._phi_mask is None:
            raise InconsistentRingError("top degree is not one-dimensional")
        return _popparity(vec & self._phi_mask)

    def phi_eval(self, a: int, subset) -> int:
        s = self._mask(subset)
        if a + s.bit_count() != self.m:
            raise ValueError(f"phi lives in degree {self.m}, got {a + s.bit_count()}")
        if s not in self.poset:
            return 0
        return self.phi_vec(self.col_bit[s])

    def phi_sum(self, terms: Iterable) -> int:
        """phi of a sum of top-degree monomials R^{m-|S|} V_S."""
        return self.phi_vec(self.vector(terms, self.m))

    def product_mask(self, s: int, u: int) -> int | None:
        """V-set of V_S * V_U after squaring out, or None when it vanishes."""
        t = s | u
        return t if t in self.poset else None

    def pairing_matrix(self, d: int) -> list[list[int]]:
        left = self.spaces[d].basis
        right = self.spaces[self.m - d].basis
        phi = self._phi_mask
        if phi is None:
            raise InconsistentRingError("top degree is not one-dimensional")
        out = []
        for s in left:
            row = []
            for u in right:
                t = s | u
                row.append(1 if t in self.poset and phi & self.col_bit[t] else 0)
            out.append(row)
        return out

    def sw_height(self) -> int:
        empty = self.col_bit[0]
        h = 0
        for d in range(self.m + 1):
            if self.is_zero(d, empty):
                break
            h = d
        return h

    def ranks(self) -> list[int]:
        return [sp.quotient_rank for sp in self.spaces]

    def check(self):
        """Raise unless degrees 0 and m are one-dimensional and duality is perfect."""
        r = self.ranks()
        if r[0] != 1 or r[self.m] != 1:
            raise InconsistentRingError(
                f"code {self.code} not realizable or presentation violated: "
                f"rank H^0={r[0]}, rank H^{self.m}={r[self.m]}"
            )
        for d in range(self.m + 1):
            mat = self.pairing_matrix(d)
            if len(mat) != r[self.m - d] or gf2_rank(_rows_to_ints(mat)) != len(mat):
                raise InconsistentRingError(
                    f"code {self.code} not realizable or presentation violated: "
                    f"pairing H^{d} x H^{self.m - d} is degenerate"
                )

    def diagnostics(self) -> dict:
        return {
            str(sp.degree): {
                "span_size": sp.span_size,
                "rank": sp.rank,
                "quotient_rank": sp.quotient_rank,
            }
            for sp in self.spaces
        }


def _reduce(vec: int, pivots: dict[int, int]) -> int:
    """Clear leading pivot bits until the lowest bit is free (echelon insert)."""
    while vec:
        low = vec & -vec
        row = pivots.get(low)
        if row is None:
            return vec
        vec ^= row
    return 0


def _reduce_full(vec: int, pivots: dict[int, int]) -> int:
    out = 0
    while vec:
        low = vec & -vec
        row = pivots.get(low)
        if row is None:
            out |= low
            vec ^= low
        else:
            vec ^= row
    return out


def _rows_to_ints(mat) -> list[int]:
    return [sum(bit << j for j, bit in enumerate(row)) for row in mat]


def gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    for v in rows:
        v = _reduce(v, pivots)
        if v:
            pivots[v & -v] = v
    return len(pivots)


def build_ring(code: GeneticCode, check: bool = True) -> CohomologyRing:
    return CohomologyRing(code, check=check)


def sw_height(ring: CohomologyRing) -> int:
    return ring.sw_height()


def class_of(ring: CohomologyRing, a: int, subset) -> tuple[int, ...]:
    return ring.class_of(a, subset)


def phi_eval(ring: CohomologyRing, a: int, subset) -> int:
    return ring.phi_eval(a, subset)


def pairing_matrix(ring: CohomologyRing, d: int) -> list[list[int]]:
    return ring.pairing_matrix(d)
