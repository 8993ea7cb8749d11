import pytest

from polybu.classify import (FAILS, HOLDS, NONTIDY, TIDY, UNKNOWN, ConsistencyError, EmptySpaceError,
                             baseline_bounds, bu_verdicts, classify, special_case_verdicts, topology_annotation)
from polybu.genetics import GeneticCode, parse_code
from polybu.lengths import LengthVector, NonGenericError
from polybu.quasieq import genetic_code_quasieq


def code(text, n=None):
    return parse_code(text, n)


def g_pattern(i, n=9):
    head = list(range(1, n - 4))
    gee = list(range(1, n - 3)) if i == 1 else head + [{2: n - 3, 3: n - 2, 4: n - 1}[i]]
    return GeneticCode(n, [gee + [n]])


def test_baseline_examples():
    idx, co, _ = baseline_bounds(GeneticCode(7, [{7}]), 4)
    assert idx == (4, 4) and co == (4, 4)
    idx, co, _ = baseline_bounds(code("{3,7}"), 3)
    assert idx == (3, 3) and co == (3, 3)
    idx, co, _ = baseline_bounds(code("{2,4,9},{6,9}"), 5)
    assert idx == (5, 5) and co == (5, 5)
    idx, co, rules = baseline_bounds(code("{1,2,3,4,9}"), 2)
    assert idx == (2, 5) and co == (2, 2) and any("dim forces ind < dim" in r for r in rules)


def test_baseline_rejects_impossible_height():
    with pytest.raises(ConsistencyError):
        baseline_bounds(code("{3,7}"), 1)


@pytest.mark.parametrize("text, ind, coind, tidy", [
    ("{2,7}", 4, 3, NONTIDY),
    ("{3,7}", 3, 3, TIDY),
    ("{3,5}", 1, 1, TIDY),
    ("{1,5}", 1, 1, TIDY),
    ("{2,5}", 2, 1, NONTIDY),
    ("{4,5}", 2, 1, NONTIDY),
])
def test_singleton_gee_verdicts(text, ind, coind, tidy):
    rep = classify(code(text))
    assert rep.index == (ind, ind) and rep.coindex == (coind, coind) and rep.tidiness == tidy


def test_n_six_left_to_baseline():
    assert special_case_verdicts(code("{2,6}")) == []
    assert classify(code("{3,6}")).tidiness == TIDY  # b odd: baseline already pins everything
    rep = classify(code("{2,6}"))
    assert rep.index == (3, 3) and rep.coindex == (2, 3) and rep.tidiness == UNKNOWN


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_g_patterns(i):
    rep = classify(g_pattern(i))
    if i in (1, 3):
        assert rep.tidiness == TIDY and rep.height == 1
    else:
        assert rep.tidiness == NONTIDY and rep.coindex == (1, 1) and rep.index == (2, 2)


def test_bu_verdicts():
    assert classify(GeneticCode(7, [{7}])).bu_top == HOLDS
    rep = classify(code("{3,7}"))
    assert rep.bu_top == FAILS and rep.bu_max_guaranteed == 3
    assert classify(code("{2,7}")).bu_top == HOLDS
    rep.bu_top = UNKNOWN
    assert bu_verdicts(rep).bu_top == FAILS


def test_topology_annotations():
    assert topology_annotation(GeneticCode(7, [{7}])) == "M ≅ S⁴, M̄ ≅ RP⁴"
    assert topology_annotation(code("{4,8}")) == "M ≅ ♯₄(S¹×S⁴)"
    assert topology_annotation(code("{2,5}")) == "M ≅ Σ₂ (genus-2 surface)"
    assert topology_annotation(code("{2,4,9},{6,9}")) is None


def test_classify_length_vectors():
    rep = classify(LengthVector((1, 1, 1, 1, 1, 1, 3)))
    assert str(rep.genetic_code) == "{6,7}" and rep.m == 4 and rep.height == 4
    assert rep.index == (4, 4) and rep.coindex == (3, 3) and rep.tidiness == NONTIDY
    rep = classify(LengthVector((1, 1, 1, 2)))
    assert rep.height == 1 and rep.index == rep.coindex == (1, 1)
    assert rep.tidiness == TIDY and rep.bu_top == HOLDS


def test_quasi_nine_three():
    rep = classify(LengthVector((1,) * 8 + (3,)))
    assert rep.height == 6 == rep.m and rep.bu_top == HOLDS and rep.coindex == (4, 6)
    assert rep.conjecture["label"] == "CONJECTURE" and rep.conjecture["value"] == 4
    assert not rep.conjecture["proven"]


def test_quasi_small_r_refinement():
    rep = classify(genetic_code_quasieq(7, 1))
    assert rep.height == 2 and rep.coindex == (2, 2)


def test_classify_errors():
    with pytest.raises(NonGenericError):
        classify(LengthVector((1, 1, 1, 1)))
    with pytest.raises(EmptySpaceError):
        classify(LengthVector((1, 1, 1, 5)))
    with pytest.raises(ValueError):
        classify(GeneticCode(7, [{6, 7}, {5, 7}]))


def test_report_serialization_order():
    d = classify(code("{2,7}")).to_dict()
    assert list(d) == ["n", "m", "lengths", "genetic_code", "height", "index", "coindex", "tidiness",
                       "bu_top", "bu_max_guaranteed", "annotations", "provenance", "conjecture", "consistency"]


def test_reports_respect_chain_and_refinements(realizable_codes):
    # classify raises on any refinement contradicting the baseline, so reaching
    # the asserts already shows consistency on every code
    for c in realizable_codes:
        rep = classify(c)
        assert rep.consistent, (c, rep.consistency)
        lo, hi = rep.coindex
        assert 0 <= lo <= hi <= rep.height <= rep.index[0] <= rep.index[1] <= rep.m
        assert (rep.bu_top == HOLDS) == (rep.height == rep.m)
        assert rep.bu_max_guaranteed == rep.index[0]
        if rep.tidiness == TIDY:
            assert rep.coindex == rep.index == (rep.height, rep.height)
        if rep.tidiness == NONTIDY:
            assert rep.coindex[1] < rep.index[0]


def test_singleton_tidiness_rule():
    for n in [5] + list(range(7, 12)):
        for b in range(1, n - 1 if n > 5 else n):
            want = TIDY if b % 2 else NONTIDY
            if n == 5:
                want = TIDY if b in (1, 3) else NONTIDY
            assert classify(GeneticCode(n, [{b, n}])).tidiness == want, (n, b)
    for n in range(4, 12):
        assert classify(GeneticCode(n, [{n}])).tidiness == TIDY
