"""Structural identities of the computed ring, phrased as quotient-vector equalities.

Each checker returns a list of failure strings (empty when the identity holds),
so sweeps can aggregate them without stopping at the first problem.
"""

from __future__ import annotations

from .cohomology import CohomologyRing, gf2_rank
from .genetics import block_of, blocks
from .lengths import from_mask


def _bits(mask: int):
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _name(mask: int) -> str:
    return "{" + ",".join(map(str, sorted(from_mask(mask)))) + "}"


def rank_failures(ring: CohomologyRing) -> list[str]:
    r = ring.ranks()
    out = []
    if r[0] != 1:
        out.append(f"{ring.code}: rank H^0 = {r[0]}")
    if r[ring.m] != 1:
        out.append(f"{ring.code}: rank H^m = {r[ring.m]}")
    return out


def pairing_failures(ring: CohomologyRing) -> list[str]:
    out = []
    for d in range(ring.m + 1):
        mat = ring.pairing_matrix(d)
        size = ring.spaces[ring.m - d].quotient_rank
        rows = [sum(b << j for j, b in enumerate(row)) for row in mat]
        if len(mat) != size or gf2_rank(rows) != size:
            out.append(f"{ring.code}: pairing in degree {d} is not invertible")
    return out


def top_subgee_failures(ring: CohomologyRing) -> list[str]:
    """phi(R^{m-|J|} V_J) = 1 for every subgee J of maximum size."""
    k = ring.poset.k
    if k > ring.m:
        return []
    return [f"{ring.code}: phi(R^(m-{k}) V_{_name(J)}) = 0"
            for J in ring.poset.of_size(k) if ring.phi_eval(ring.m - k, J) != 1]


def equal_top_class_failures(ring: CohomologyRing) -> list[str]:
    k = ring.poset.k
    if k > ring.m:
        return []
    tops = ring.poset.of_size(k)
    ref = ring.class_of(ring.m - k, tops[0])
    return [f"{ring.code}: R^(m-k) V_{_name(S)} differs from V_{_name(tops[0])}"
            for S in tops[1:] if ring.class_of(ring.m - k, S) != ref]


def key_identity_failures(ring: CohomologyRing) -> list[str]:
    """R^{m-|P|} V_P equals the sum over S in S_t(P, s), |P| < t <= k."""
    out = []
    m, poset = ring.m, ring.poset
    for P in poset.masks:
        if not P or P.bit_count() > m:
            continue
        lhs = ring.normal_form(m, ring.col_bit[P])
        for s in _bits(poset.support_mask(P)):
            terms = [S for t in range(P.bit_count() + 1, min(poset.k, m) + 1)
                     for S in poset.restricted(t, P, s)]
            rhs = ring.normal_form(m, ring.vector(terms, m))
            if lhs != rhs:
                out.append(f"{ring.code}: key identity fails for P={_name(P)}, s={s}")
    return out


def same_block_failures(ring: CohomologyRing) -> list[str]:
    blks = blocks(ring.code)
    if blks is None:
        return []
    out = []
    m, poset = ring.m, ring.poset
    for P in poset.masks:
        r = P.bit_count()
        if r > poset.k - 1 or r + 1 > m:
            continue
        by_block: dict[int, list[int]] = {}
        for s in _bits(poset.support_mask(P)):
            b = block_of(blks, s)
            if b is not None:
                by_block.setdefault(b, []).append(s)
        for members in by_block.values():
            ref = ring.class_of(m - r - 1, P | 1 << (members[0] - 1))
            for s in members[1:]:
                if ring.class_of(m - r - 1, P | 1 << (s - 1)) != ref:
                    out.append(f"{ring.code}: P={_name(P)}, {members[0]} and {s} give different classes")
    return out


def e_vanishing_failures(ring: CohomologyRing) -> list[str]:
    out = []
    m = ring.m
    for P in ring.poset.masks:
        if not P:
            continue
        terms = [T for T in ring.poset.masks if not T & P and T.bit_count() <= m]
        if not ring.is_zero(m, ring.vector(terms, m)):
            out.append(f"{ring.code}: E_{_name(P)} is nonzero in degree m")
    return out


def monotone_height_failures(ring: CohomologyRing) -> list[str]:
    zero = [ring.is_zero(d, ring.col_bit[0]) for d in range(ring.m + 1)]
    for d in range(ring.m):
        if zero[d] and not zero[d + 1]:
            return [f"{ring.code}: R^{d} = 0 but R^{d + 1} != 0"]
    return []


CHECKS = {
    "ranks": rank_failures,
    "pairing": pairing_failures,
    "top subgee normalization": top_subgee_failures,
    "equal top classes": equal_top_class_failures,
    "key identity": key_identity_failures,
    "same block": same_block_failures,
    "E_P vanishing": e_vanishing_failures,
    "monotone height": monotone_height_failures,
}


def all_failures(ring: CohomologyRing) -> dict[str, list[str]]:
    return {name: fn(ring) for name, fn in CHECKS.items()}
