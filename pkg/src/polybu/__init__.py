"""Borsuk-Ulam indices of planar polygon spaces from their genetic codes."""

from .classify import AnalysisReport, classify
from .cohomology import CohomologyRing, build_ring
from .genetics import GeneticCode, parse_code
from .lengths import LengthVector, genetic_code, parse_lengths
from .quasieq import genetic_code_quasieq, kamiyama_height

__all__ = [
    "AnalysisReport",
    "CohomologyRing",
    "GeneticCode",
    "LengthVector",
    "build_ring",
    "classify",
    "genetic_code",
    "genetic_code_quasieq",
    "kamiyama_height",
    "parse_code",
    "parse_lengths",
]

__version__ = "0.1.0"
