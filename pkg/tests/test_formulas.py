import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polybu.cohomology import build_ring
from polybu.formulas import (binom_mod2, block_sizes, davis_phi, extended_Rm, phi_two_gene, s_k_completions,
                             tidy_by_parity)
from polybu.genetics import GeneticCode, in_S_k, lp_realize
from polybu.verify import check_monogenic, check_two_gene, monogenic_codes, sweep, two_gene_codes


def generalized_binom(a, b):
    """a (a-1) ... (a-b+1) / b!, exact for any integer a."""
    num = 1
    for i in range(b):
        num *= a - i
    return num // math.factorial(b)


def test_binom_examples():
    assert all(binom_mod2(n, 0) == 1 for n in range(-5, 40))
    assert binom_mod2(5, 3) == 0 and binom_mod2(7, 2) == 1


def test_binom_matches_exact_integers():
    for a in range(65):
        for b in range(a + 1):
            assert binom_mod2(a, b) == math.comb(a, b) % 2


@given(st.integers(-80, -1), st.integers(0, 40))
def test_binom_negative_upper_index(a, b):
    assert binom_mod2(a, b) == generalized_binom(a, b) % 2


@given(st.integers(1, 30), st.integers(0, 20))
def test_reflection_identity(a, b):
    assert binom_mod2(a + b - 2, b) == binom_mod2(1 - a, b)


def test_binom_rejects_negative_lower():
    with pytest.raises(ValueError):
        binom_mod2(3, -1)


def test_block_sizes_bottom_first():
    assert block_sizes([1, 3, 6]) == [1, 2, 3]
    assert block_sizes([2, 4]) == [2, 2]


@given(st.lists(st.integers(0, 2), min_size=1, max_size=5), st.integers(0, 6))
def test_completions_match_bruteforce(base, total):
    k = len(base)
    want = {B for B in itertools.product(range(total + 1), repeat=k)
            if sum(B) == total and in_S_k([x + y for x, y in zip(B, base)])}
    got = list(s_k_completions(base, total))
    assert len(got) == len(set(got)) and set(got) == want


def test_davis_examples():
    for b in range(1, 12):
        assert davis_phi([b], b + 3, []) == (b - 1) % 2
    assert davis_phi([2, 4], 9, []) == 0
    assert sorted(s_k_completions((0, 0), 2)) == [(1, 1), (2, 0)]
    for J in ([1, 2], [2, 4], [1, 3]):
        assert davis_phi([2, 4], 9, J) == 1


def test_davis_rejects_non_subgee():
    with pytest.raises(ValueError):
        davis_phi([2, 4], 9, [5])
    with pytest.raises(ValueError):
        davis_phi([2, 4], 9, [3, 4])


def test_one_three_six_by_hand():
    # <{1,3,6,n}> at n = 7: R^4 vanishes by direct reduction
    assert davis_phi([1, 3, 6], 7, []) == 0
    assert build_ring(GeneticCode(7, [{1, 3, 6, 7}])).phi_eval(4, 0) == 0


def test_extended_examples():
    for b in range(5, 14):
        assert extended_Rm([2, 4], b, b + 3) == (b - 2) % 2
    assert extended_Rm([2, 4], 5, 8) == 1 and extended_Rm([2, 4], 6, 9) == 0
    for low in range(1, 6):
        for b in range(low + 1, 8):
            assert extended_Rm([low], b, 9) == (b - 1) % 2


def test_extended_rejects_interleaved():
    with pytest.raises(ValueError):
        extended_Rm([2, 6], 5, 9)
    with pytest.raises(ValueError):
        extended_Rm([2, 4], 9, 9)


def test_phi_two_gene_examples():
    assert phi_two_gene([2, 4], 6, 9, [1]) == build_ring(GeneticCode(9, [{2, 4, 9}, {6, 9}])).phi_eval(5, 1)
    with pytest.raises(ValueError):
        phi_two_gene([2, 4], 6, 9, [5])
    with pytest.raises(ValueError):
        phi_two_gene([2, 4], 6, 9, [1, 2])


def test_tidy_by_parity():
    assert tidy_by_parity([2, 4], 6, 9) == "Tidy"
    assert tidy_by_parity([2, 4], 5, 8) is None
    assert tidy_by_parity([2], 5, 8) == "Tidy"


def test_monogenic_oracle_equivalence():
    res = sweep("monogenic", 9)
    assert res.mismatches == [] and res.checks > 5000


def test_two_gene_oracle_equivalence():
    res = sweep("two-gene", 10, jobs=2)
    assert res.mismatches == [] and res.checks > 15000


def test_singleton_two_gene_codes_against_engine():
    # k = 1 first gee: the code <{b',n},{b,n}> collapses onto <{b,n}>
    for n in range(5, 10):
        for low in range(1, n - 2):
            for b in range(low + 1, n):
                code = GeneticCode(n, [{low, n}, {b, n}])
                if lp_realize(code) is None:
                    continue
                assert extended_Rm([low], b, n) == build_ring(code).phi_eval(n - 3, 0)


def test_sweep_helpers_report_unrealizable():
    code = GeneticCode(5, [{2, 4, 5}])
    assert check_monogenic(code).skipped == 1
    assert check_two_gene(next(iter(two_gene_codes(6)))).codes in (0, 1)
    # every gee inside [n-1] except [n-1] itself, whose gene [n] is never short
    assert sum(1 for _ in monogenic_codes(5)) == 2 ** 4 - 1
