"""Quasi-equilateral vectors (1, ..., 1, r): Kamiyama's height and the residue tables.

Residue-table rows are keyed by the height offset ``j - 1``: row ``j - 1``
holds the classes where the height is ``n - 3 - (j - 1)``.  Internally the
algorithm tracks residues of ``n - 2``; :attr:`ResidueTable.rows` reports
residues of ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import binom_mod2
from .genetics import GeneticCode


class QuasiEqError(ValueError):
    pass


@dataclass(frozen=True)
class QuasiEqParams:
    n: int
    r: int

    def __post_init__(self):
        if self.n < 4:
            raise QuasiEqError(f"n = {self.n} must be at least 4")
        if self.r < 1:
            raise QuasiEqError(f"r = {self.r} must be positive")
        if (self.n - self.r) % 2:
            raise QuasiEqError(f"r = {self.r} and n = {self.n} differ in parity (not generic)")
        if self.r > self.n - 2:
            raise QuasiEqError(f"r = {self.r} exceeds n - 2 = {self.n - 2}")

    @property
    def D(self) -> int:
        return self.n - 2

    @property
    def e(self) -> int:
        return (self.n - self.r) // 2 - 1

    @property
    def t(self) -> int | None:
        return self.e.bit_length() - 1 if self.e >= 1 else None


def valid_pairs(max_n: int, min_n: int = 4):
    for n in range(min_n, max_n + 1):
        for r in range(n - 2, 0, -2):
            yield n, r


def k_of(n: int, r: int) -> int:
    p = QuasiEqParams(n, r)
    if p.e == 0:
        raise QuasiEqError("k(n, r) is undefined for e = 0 (r = n - 2)")
    return max(i for i in range(p.e) if binom_mod2(p.D - p.e + i, i))


def kamiyama_height(n: int, r: int) -> int:
    p = QuasiEqParams(n, r)
    if binom_mod2(p.D, p.e):
        return n - 3
    return (n + r) // 2 + k_of(n, r) - 2


def genetic_code_quasieq(n: int, r: int) -> GeneticCode:
    """The single gene {n-e, ..., n}."""
    e = QuasiEqParams(n, r).e
    return GeneticCode(n, [range(n - e, n + 1)])


def _bits(x: int) -> list[int]:
    return [i for i in range(x.bit_length()) if x >> i & 1]


@dataclass
class ResidueTable:
    e: int
    modulus: int
    A: list[frozenset[int]]  # residues of n - 2
    B: list[frozenset[int]]
    C: list[frozenset[int]]

    @property
    def rows(self) -> dict[int, list[int]]:
        """Height offset -> sorted residues of n; offsets with no residue are absent."""
        out = {}
        for j, bset in enumerate(self.B):
            if bset:
                out[j] = sorted((x + 2) % self.modulus for x in bset)
        return out


def residue_table(e: int) -> ResidueTable:
    """Residue classes of n (mod 2^{t+1}) for each height, by the Lucas recurrences."""
    if e < 1:
        raise QuasiEqError("the residue algorithm needs e >= 1")
    t = e.bit_length() - 1
    mod = 1 << (t + 1)
    # A_1: n - 2 covers the binary digits of e
    A = [frozenset(x for x in range(mod) if x & e == e)]
    for j in range(1, e + 1):
        kk = e - (j - 1)
        prev = A[-1]
        if kk % 2:
            nxt = prev | {(q + 1) % mod for q in prev}
        else:
            p1 = _bits(kk)[0]
            step = 1 << p1
            keep = {x for x in prev if (x - (j - 1)) % step == 0}
            shift = {(x + 1) % mod for x in prev if (x - (j - 1)) % step == step - 1}
            nxt = frozenset(keep | shift)
        A.append(frozenset(nxt))
    B, C = [], []
    covered: frozenset[int] = frozenset()
    for a in A:
        b = a - covered
        covered = covered | b
        B.append(b)
        C.append(covered)
    return ResidueTable(e, mod, A, B, C)


def residue_tables(emax: int = 6, emin: int = 2) -> dict[int, dict[int, list[int]]]:
    return {e: residue_table(e).rows for e in range(emin, emax + 1)}


def direct_rows(e: int, periods: int = 2) -> dict[int, list[int]]:
    """The same table recomputed from :func:`kamiyama_height` on concrete n."""
    mod = residue_table(e).modulus
    rows: dict[int, set[int]] = {}
    n0 = 2 * e + 3  # smallest n with r = n - 2(e + 1) >= 1
    for n in range(n0, n0 + periods * mod):
        r = n - 2 * (e + 1)
        off = n - 3 - kamiyama_height(n, r)
        rows.setdefault(off, set()).add(n % mod)
    return {k: sorted(v) for k, v in sorted(rows.items())}


def table_mismatches(emax: int = 6, emin: int = 2) -> list[str]:
    out = []
    for e in range(emin, emax + 1):
        alg, direct = residue_table(e).rows, direct_rows(e)
        if alg != direct:
            out.append(f"e={e}: algorithm {alg} != direct {direct}")
    return out


@dataclass
class SmallRFacts:
    height: int
    coindex: tuple[int, int]
    index: tuple[int, int] | None
    rule: str


def small_r_bounds(n: int, r: int) -> SmallRFacts | None:
    """Exact height and coindex bounds for r = 1, 2 at the special n."""
    QuasiEqParams(n, r)
    m = n - 3
    for s in range(1, n.bit_length() + 1):
        if r == 1 and n == (1 << (s + 1)) - 1:
            h = (1 << s) - 2
            return SmallRFacts(h, (h, h), None, f"r=1, n=2^{s + 1}-1: coind = ht = 2^{s}-2")
        if r == 1 and n == (1 << s) + 1:
            h = (1 << s) - 2
            return SmallRFacts(h, ((1 << (s - 1)) - 1, h), (m, m), f"r=1, n=2^{s}+1: ht = 2^{s}-2")
        if r == 2 and n == (1 << (s + 1)) - 2:
            h = (1 << s) - 2
            return SmallRFacts(h, (h, h), None, f"r=2, n=2^{s + 1}-2: coind = ht = 2^{s}-2")
        if r == 2 and n == 1 << s:
            h = (1 << s) - 3
            return SmallRFacts(h, ((1 << (s - 1)) - 1, h), (h, h), f"r=2, n=2^{s}: ind = ht = 2^{s}-3")
    return None
