"""Height, index/coindex intervals, tidiness and Borsuk-Ulam verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import CohomologyRing, build_ring
from .formulas import davis_phi, extended_Rm
from .genetics import GeneticCode, gees, validate_code
from .lengths import LengthVector, NonGenericError, genetic_code, is_generic
from .quasieq import kamiyama_height, small_r_bounds

TIDY, NONTIDY, UNKNOWN = "Tidy", "NonTidy", "Unknown"
HOLDS, FAILS = "Holds", "Fails"


class ConsistencyError(RuntimeError):
    """Two proven rules (or a rule and the engine) disagree."""


class EmptySpaceError(ValueError):
    """The longest side is at least the sum of the others, so the space is empty."""


Interval = tuple[int, int]


@dataclass
class Refinement:
    rule: str
    index: Interval | None = None
    coindex: Interval | None = None


@dataclass
class AnalysisReport:
    n: int
    m: int
    genetic_code: GeneticCode
    height: int
    index: Interval
    coindex: Interval
    tidiness: str
    bu_top: str
    bu_max_guaranteed: int
    annotations: list[str] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)
    conjecture: dict | None = None
    consistency: list[str] = field(default_factory=list)
    lengths: LengthVector | None = None

    @property
    def consistent(self) -> bool:
        return not self.consistency

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "lengths": list(self.lengths.lengths) if self.lengths else None,
            "genetic_code": str(self.genetic_code),
            "height": self.height,
            "index": {"lo": self.index[0], "hi": self.index[1]},
            "coindex": {"lo": self.coindex[0], "hi": self.coindex[1]},
            "tidiness": self.tidiness,
            "bu_top": self.bu_top,
            "bu_max_guaranteed": self.bu_max_guaranteed,
            "annotations": list(self.annotations),
            "provenance": list(self.provenance),
            "conjecture": self.conjecture,
            "consistency": {"ok": self.consistent, "conflicts": list(self.consistency)},
        }
        return out


def _intersect(a: Interval, b: Interval, what: str, rule: str) -> Interval:
    lo, hi = max(a[0], b[0]), min(a[1], b[1])
    if lo > hi:
        raise ConsistencyError(f"{what} {list(b)} from '{rule}' contradicts {list(a)}")
    return lo, hi


def smallest_gee(code: GeneticCode) -> int:
    return min(len(g) for g in gees(code))


def baseline_bounds(code: GeneticCode, height: int) -> tuple[Interval, Interval, list[str]]:
    """(index, coindex, rules) from the chain inequality and the smallest-gee embedding."""
    n = code.n
    m = n - 3
    lo = max(0, n - 3 - smallest_gee(code))
    rules = ["chain: 0 <= coind <= ht <= ind <= dim"]
    if lo > 0:
        rules.append(f"coind >= n-3-l = {lo} (smallest gee of size {smallest_gee(code)}: parallel sides span a sphere)")
    if lo > height:
        raise ConsistencyError(f"coindex lower bound {lo} exceeds height {height}")
    coindex = (lo, height)
    if height == m:
        index = (m, m)
        rules.append("ht = dim forces ind = dim")
    elif height == m - 1:
        index = (m - 1, m - 1)
        rules.append("ht = dim-1 forces ind = dim-1")
    else:
        index = (height, m - 1)
        rules.append("ht < dim forces ind < dim")
    return index, coindex, rules


def _code_shape(code: GeneticCode):
    return sorted((sorted(g) for g in gees(code)), key=lambda g: (-len(g), g))


def _g_pattern(code: GeneticCode) -> int | None:
    n = code.n
    if n < 5 or not code.is_monogenic:
        return None
    (gee,) = _code_shape(code)
    head = list(range(1, n - 4))
    if gee == list(range(1, n - 3)):
        return 1
    for i, tail in ((2, n - 3), (3, n - 2), (4, n - 1)):
        if gee == head + [tail]:
            return i
    return None


def special_case_verdicts(code: GeneticCode) -> list[Refinement]:
    n = code.n
    m = n - 3
    shape = _code_shape(code)
    out = []
    if shape == [[]]:
        out.append(Refinement("<{n}>: M is a sphere, coind = ind = n-3 (tidy)", (m, m), (m, m)))
        return out
    if len(shape) == 1 and len(shape[0]) == 1:
        (b,) = shape[0]
        ind = n - 4 if b % 2 else n - 3
        if n >= 7:
            out.append(Refinement(
                "<{b,n}>, n >= 7: ind = n-4 for odd b, n-3 for even b; coind = n-4",
                (ind, ind), (n - 4, n - 4)))
        elif n == 5:
            out.append(Refinement(
                f"<{{{b},5}}>: M is the genus-{b} surface, tidy iff genus is 1 or 3",
                (ind, ind), (1, 1)))
    g = _g_pattern(code)
    if g is not None and n >= 6:
        if g in (1, 3):
            out.append(Refinement(f"G{g} pattern: projection to a genus-{g} surface gives ind <= 1, coind >= 1", (1, 1), (1, 1)))
        else:
            out.append(Refinement(f"G{g} pattern: ind = 2, coind = 1", (2, 2), (1, 1)))
    tg = _two_gene(code)
    if tg is not None:
        gee, b = tg
        if extended_Rm(gee, b, n) == 0:
            out.append(Refinement("two-gene R^m formula vanishes: ht = ind = coind = n-4", (m - 1, m - 1), (m - 1, m - 1)))
    qe = _quasieq_r(code)
    if qe is not None:
        facts = small_r_bounds(n, qe)
        if facts is not None:
            out.append(Refinement(f"quasi-equilateral {facts.rule}", facts.index, facts.coindex))
    return out


def _two_gene(code: GeneticCode):
    """(gee, b) for codes <{g_1..g_k,n},{b,n}> with k >= 2 and g_k < b."""
    shape = _code_shape(code)
    if len(shape) != 2 or len(shape[1]) != 1 or len(shape[0]) < 2:
        return None
    gee, (b,) = shape
    if gee[-1] >= b:
        return None
    return gee, b


def _quasieq_r(code: GeneticCode) -> int | None:
    """r when the code is the one of (1, ..., 1, r), else None."""
    if not code.is_monogenic:
        return None
    n = code.n
    (gee,) = _code_shape(code)
    e = len(gee)
    if gee != list(range(n - e, n)):
        return None
    r = n - 2 * e - 2
    return r if r >= 1 else None


def closed_form_checks(code: GeneticCode, ring: CohomologyRing) -> tuple[list[str], list[str]]:
    """Compare every applicable closed form with the engine: (rules, conflicts)."""
    n, m = code.n, ring.m
    rules, conflicts = [], []
    top = ring.phi_eval(m, 0)
    if code.is_monogenic:
        (gee,) = _code_shape(code)
        val = davis_phi(gee, n, [])
        rules.append(f"Davis formula: phi(R^m) = {val}")
        if val != top:
            conflicts.append(f"Davis formula gives phi(R^m) = {val}, engine gives {top}")
        r = _quasieq_r(code)
        if r is not None:
            h = kamiyama_height(n, r)
            rules.append(f"Kamiyama height for (1,...,1,{r}): {h}")
            if h != ring.sw_height():
                conflicts.append(f"Kamiyama height {h} != engine height {ring.sw_height()}")
    tg = _two_gene(code)
    if tg is not None:
        val = extended_Rm(tg[0], tg[1], n)
        rules.append(f"two-gene formula: phi(R^m) = {val}")
        if val != top:
            conflicts.append(f"two-gene formula gives phi(R^m) = {val}, engine gives {top}")
    return rules, conflicts


def _sup(k: int) -> str:
    return str(k).translate(str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻"))


def _sub(k: int) -> str:
    return str(k).translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉"))


def topology_annotation(code: GeneticCode) -> str | None:
    n = code.n
    m = n - 3
    shape = _code_shape(code)
    if shape == [[]]:
        return f"M ≅ S{_sup(m)}, M̄ ≅ RP{_sup(m)}"
    if len(shape) == 1 and len(shape[0]) == 1:
        (b,) = shape[0]
        if n == 5:
            return f"M ≅ Σ{_sub(b)} (genus-{b} surface)"
        text = f"M ≅ ♯{_sub(b)}(S¹×S{_sup(m - 1)})"
        if b == n - 1:
            text += f", M̄ ≅ ♯{_sub(n)}RP{_sup(m)}"
        return text
    return None


def classify(obj, ring: CohomologyRing | None = None) -> AnalysisReport:
    """Full analysis of a length vector or a genetic code."""
    lengths = None
    if isinstance(obj, LengthVector):
        lengths = obj
        if not is_generic(obj):
            raise NonGenericError(f"length vector {obj} is not generic")
        code = genetic_code(obj)
        if code is None:
            raise EmptySpaceError(f"length vector {obj} has a long side: the space is empty")
    else:
        code = obj
        status = validate_code(code)
        if not status.valid:
            raise ValueError("; ".join(status.problems))
    ring = ring if ring is not None else build_ring(code)
    n, m = code.n, ring.m
    height = ring.sw_height()
    provenance = [f"engine: Stiefel-Whitney height {height} (R^{height} != 0"
                  + (f", R^{height + 1} = 0)" if height < m else ", top degree)")]
    checks, conflicts = closed_form_checks(code, ring)
    provenance += checks
    index, coindex, rules = baseline_bounds(code, height)
    provenance += rules
    for ref in special_case_verdicts(code):
        if ref.index is not None:
            index = _intersect(index, ref.index, "index", ref.rule)
        if ref.coindex is not None:
            coindex = _intersect(coindex, ref.coindex, "coindex", ref.rule)
        provenance.append(ref.rule)
    if not coindex[0] <= coindex[1] <= height <= index[0] <= index[1] <= m:
        raise ConsistencyError(f"chain violated: coind {coindex}, ht {height}, ind {index}")
    if coindex[0] == coindex[1] == index[0] == index[1]:
        tidiness = TIDY
    elif coindex[1] < index[0]:
        tidiness = NONTIDY
    else:
        tidiness = UNKNOWN
    bu_top = HOLDS if height == m else FAILS
    annotations = []
    topo = topology_annotation(code)
    if topo:
        annotations.append(topo)
    l = smallest_gee(code)
    guess = n - 3 - l
    conjecture = None
    if coindex[0] <= guess <= coindex[1]:
        conjecture = {
            "label": "CONJECTURE",
            "statement": "coind = n - 3 - (size of smallest gee)",
            "value": guess,
            "proven": coindex == (guess, guess),
        }
    return AnalysisReport(
        n=n, m=m, genetic_code=code, height=height, index=index, coindex=coindex,
        tidiness=tidiness, bu_top=bu_top, bu_max_guaranteed=index[0],
        annotations=annotations, provenance=provenance, conjecture=conjecture,
        consistency=conflicts, lengths=lengths,
    )


def bu_verdicts(report: AnalysisReport) -> AnalysisReport:
    """Recompute the Borsuk-Ulam fields from height and index."""
    report.bu_top = HOLDS if report.height == report.m else FAILS
    report.bu_max_guaranteed = report.index[0]
    return report
