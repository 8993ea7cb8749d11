"""Formula-versus-engine sweeps behind ``polybu verify``."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cohomology import InconsistentRingError, build_ring
from .formulas import davis_phi, extended_Rm, phi_two_gene
from .genetics import GeneticCode, dominates_mask, lp_realize, to_mask
from .lengths import LengthVector, from_mask, genetic_code
from .quasieq import genetic_code_quasieq, kamiyama_height, valid_pairs

FAMILIES = ("monogenic", "two-gene", "quasieq")


@dataclass
class SweepResult:
    family: str
    max_n: int
    codes: int = 0
    skipped: int = 0  # antichains with no realizing length vector
    checks: int = 0
    mismatches: list[str] = field(default_factory=list)

    def merge(self, other: "SweepResult"):
        self.codes += other.codes
        self.skipped += other.skipped
        self.checks += other.checks
        self.mismatches.extend(other.mismatches)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "max_n": self.max_n,
            "codes": self.codes,
            "skipped_unrealizable": self.skipped,
            "checks": self.checks,
            "mismatches": len(self.mismatches),
            "details": self.mismatches,
        }


def monogenic_codes(n: int):
    for k in range(0, n - 1):
        for g in itertools.combinations(range(1, n), k):
            yield GeneticCode(n, [set(g) | {n}])


def two_gene_codes(n: int):
    for b in range(3, n):
        for k in range(2, b):
            for g in itertools.combinations(range(1, b), k):
                yield GeneticCode(n, [set(g) | {n}, {b, n}])


def check_monogenic(code: GeneticCode) -> SweepResult:
    res = SweepResult("monogenic", code.n)
    if lp_realize(code) is None:
        res.skipped = 1
        return res
    res.codes = 1
    try:
        ring = build_ring(code)
    except InconsistentRingError as exc:
        res.mismatches.append(str(exc))
        return res
    (gene,) = code.genes
    gee = sorted(gene - {code.n})
    for J in code.poset.masks:
        if J.bit_count() > ring.m:
            continue
        res.checks += 1
        want = ring.phi_eval(ring.m - J.bit_count(), J)
        got = davis_phi(gee, code.n, from_mask(J))
        if want != got:
            res.mismatches.append(f"{code}: J={sorted(from_mask(J))} davis={got} engine={want}")
    return res


def check_two_gene(code: GeneticCode) -> SweepResult:
    res = SweepResult("two-gene", code.n)
    if lp_realize(code) is None:
        res.skipped = 1
        return res
    res.codes = 1
    try:
        ring = build_ring(code)
    except InconsistentRingError as exc:
        res.mismatches.append(str(exc))
        return res
    n = code.n
    big, small = code.genes
    gee = sorted(big - {n})
    (b,) = small - {n}
    res.checks += 1
    want = ring.phi_eval(ring.m, 0)
    got = extended_Rm(gee, b, n)
    if want != got:
        res.mismatches.append(f"{code}: R^m formula={got} engine={want}")
    gmask = to_mask(gee, n)
    for P in code.poset.masks:
        if not 1 <= P.bit_count() <= len(gee) - 1 or not dominates_mask(P, gmask):
            continue
        res.checks += 1
        want = ring.phi_eval(ring.m - P.bit_count(), P)
        got = phi_two_gene(gee, b, n, from_mask(P))
        if want != got:
            res.mismatches.append(f"{code}: P={sorted(from_mask(P))} formula={got} engine={want}")
    return res


def check_quasieq(pair: tuple[int, int]) -> SweepResult:
    n, r = pair
    res = SweepResult("quasieq", n)
    res.codes = 1
    code = genetic_code_quasieq(n, r)
    res.checks += 2
    from_lengths = genetic_code(LengthVector((1,) * (n - 1) + (r,)))
    if from_lengths != code:
        res.mismatches.append(f"(n={n}, r={r}): lengths code {from_lengths} != {code}")
    try:
        ring = build_ring(code)
    except InconsistentRingError as exc:
        res.mismatches.append(str(exc))
        return res
    h, k = ring.sw_height(), kamiyama_height(n, r)
    if h != k:
        res.mismatches.append(f"(n={n}, r={r}): Kamiyama {k} != engine {h}")
    return res


def _items(family: str, max_n: int):
    if family == "monogenic":
        return check_monogenic, [c for n in range(4, max_n + 1) for c in monogenic_codes(n)]
    if family == "two-gene":
        return check_two_gene, [c for n in range(5, max_n + 1) for c in two_gene_codes(n)]
    if family == "quasieq":
        return check_quasieq, list(valid_pairs(max_n))
    raise ValueError(f"unknown family {family!r}")


def sweep(family: str, max_n: int, jobs: int = 1) -> SweepResult:
    fn, items = _items(family, max_n)
    total = SweepResult(family, max_n)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(fn, items, chunksize=8))
    else:
        parts = map(fn, items)
    for part in parts:
        total.merge(part)
    return total
