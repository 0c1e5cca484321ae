"""Locally repairable codes used as exact regenerating codes."""

from .field import GF, FieldElement, Rational
from .lrc import (
    ConstructionPlan,
    LinearCode,
    LrcParams,
    build_generator,
    construct_mds,
    fixture_example,
    plan_construction,
)

__all__ = [
    "GF",
    "FieldElement",
    "Rational",
    "ConstructionPlan",
    "LinearCode",
    "LrcParams",
    "build_generator",
    "construct_mds",
    "fixture_example",
    "plan_construction",
]
