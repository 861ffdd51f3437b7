"""Triangular fuzzy numbers and the linguistic comparison scale.

A triangular fuzzy number is an ordered triple ``(l, m, u)``: full membership
at the modal value ``m``, linearly decaying to zero at the lower bound ``l``
and upper bound ``u``.  Pairwise judgments are expressed with five linguistic
terms, each mapped to a fixed triple on the [0, 1] preference scale together
with its additive complement for the reverse direction of the comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal


class UnknownTermError(ValueError):
    """Raised for a linguistic label that is not one of the five scale terms."""

    def __init__(self, term: str):
        self.term = term
        super().__init__(
            f"unknown linguistic term {term!r}; valid terms: "
            + ", ".join(CANONICAL_TERMS)
        )


def _decimal_complement(x: float) -> float:
    # 1 - x evaluated on the shortest decimal reading of x, so that printed
    # scale constants complement each other bit-exactly (binary 1.0 - 0.55
    # is 0.44999999999999996, not the 0.45 the scale table prints).
    return float(Decimal(1) - Decimal(repr(x)))


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Ordered triple (l, m, u) carrying a fuzzy judgment or weight."""

    l: float
    m: float
    u: float

    def __post_init__(self):
        for name, value in (("l", self.l), ("m", self.m), ("u", self.u)):
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"component {name} must be finite, got {value!r}")
        if not self.l <= self.m <= self.u:
            raise ValueError(
                f"components must satisfy l <= m <= u, got ({self.l}, {self.m}, {self.u})"
            )

    def __iter__(self):
        yield self.l
        yield self.m
        yield self.u

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.l, self.m, self.u)

    def membership(self, x: float) -> float:
        """Degree to which ``x`` belongs to this number, in [0, 1].

        Piecewise linear: rises on [l, m], peaks at m, falls on [m, u],
        zero outside the support.  A collapsed corner (l == m or m == u)
        keeps membership 1 at the coincident point.
        """
        if x == self.m:
            return 1.0
        if x < self.l or x > self.u:
            return 0.0
        if x < self.m:
            return (x - self.l) / (self.m - self.l)
        return (self.u - x) / (self.u - self.m)

    def __add__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        return TriangularFuzzyNumber(
            self.l + other.l, self.m + other.m, self.u + other.u
        )

    def __sub__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        # Interval-style subtraction: the support widens by the operand's.
        return TriangularFuzzyNumber(
            self.l - other.u, self.m - other.m, self.u - other.l
        )

    def __mul__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        # Component-wise product keeps l <= m <= u only for nonnegative operands.
        if self.l < 0 or other.l < 0:
            raise ValueError("multiplication requires nonnegative operands")
        return TriangularFuzzyNumber(
            self.l * other.l, self.m * other.m, self.u * other.u
        )

    def __truediv__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        if other.l <= 0:
            raise ZeroDivisionError(
                "division requires a strictly positive divisor in all components"
            )
        if self.l < 0:
            raise ValueError("division requires a nonnegative dividend")
        return TriangularFuzzyNumber(
            self.l / other.u, self.m / other.m, self.u / other.l
        )

    def reciprocal(self) -> "TriangularFuzzyNumber":
        """Multiplicative reciprocal (1/u, 1/m, 1/l)."""
        if self.l <= 0:
            raise ZeroDivisionError("reciprocal requires strictly positive components")
        return TriangularFuzzyNumber(1.0 / self.u, 1.0 / self.m, 1.0 / self.l)

    def complement(self) -> "TriangularFuzzyNumber":
        """Additive complement (1-u, 1-m, 1-l) on the [0, 1] preference scale.

        Evaluated in decimal space, so complements of printed scale constants
        are bit-exact and complementing twice is the identity for decimally
        quantized components.  This is the reverse-direction entry of a
        pairwise judgment; contrast with :meth:`reciprocal`.
        """
        if self.l < 0 or self.u > 1:
            raise ValueError("complement is defined for components in [0, 1] only")
        return TriangularFuzzyNumber(
            _decimal_complement(self.u),
            _decimal_complement(self.m),
            _decimal_complement(self.l),
        )


#: Shorthand used throughout the package.
TFN = TriangularFuzzyNumber

#: Self-comparison value: the fixed point of the complement.
INDIFFERENCE = TFN(0.5, 0.5, 0.5)


@dataclass(frozen=True)
class LinguisticTerm:
    """One row of the judgment scale: a label, its triple, and the complement."""

    name: str
    scale: TriangularFuzzyNumber
    reciprocal_scale: TriangularFuzzyNumber


TERMS: tuple[LinguisticTerm, ...] = (
    LinguisticTerm("Equally Important", TFN(0.5, 0.5, 0.55), TFN(0.45, 0.5, 0.5)),
    LinguisticTerm("Slightly Important", TFN(0.55, 0.6, 0.65), TFN(0.35, 0.4, 0.45)),
    LinguisticTerm("Important", TFN(0.65, 0.7, 0.75), TFN(0.25, 0.3, 0.35)),
    LinguisticTerm("Very Important", TFN(0.75, 0.8, 0.85), TFN(0.15, 0.2, 0.25)),
    LinguisticTerm("Absolutely Important", TFN(0.85, 0.9, 0.9), TFN(0.1, 0.1, 0.15)),
)

CANONICAL_TERMS: tuple[str, ...] = tuple(t.name for t in TERMS)

_TERMS_BY_KEY = {t.name.casefold(): t for t in TERMS}


def scale_of(term: str) -> LinguisticTerm:
    """Look up a linguistic term, case-insensitively, by its canonical spelling."""
    found = _TERMS_BY_KEY.get(term.strip().casefold())
    if found is None:
        raise UnknownTermError(term)
    return found
