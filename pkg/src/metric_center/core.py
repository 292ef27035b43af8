"""Shared value types: nonnegative extended reals and descriptor bundles.

Every engine in this package reports distances, radii and diameters as
``ExtReal`` values.  Two numeric regimes exist and are kept strictly apart:

* ``exact``  -- payload is a ``fractions.Fraction`` (the line engine),
* ``float``  -- payload is a binary float (grid and finite-sample engines).

``+inf`` belongs to both regimes; it is the radius of clopen and of empty
subsets.  Comparing a finite exact value against a finite float raises,
because such a comparison silently decides a theorem with the wrong
arithmetic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol, runtime_checkable
import math

__all__ = [
    "ExtReal",
    "RegimeError",
    "ext_cmp",
    "ext_min",
    "ext_max",
    "DescriptorReport",
    "report_consistency_check",
]


class RegimeError(TypeError):
    """Raised when exact and float payloads meet in one comparison."""


@dataclass(frozen=True, order=False)
class ExtReal:
    """A nonnegative extended real: a finite payload or plus infinity.

    Finite payloads are either exact rationals or floats, never both in
    one comparison.  Negative payloads are rejected at construction; every
    quantity this type carries is a distance, a radius or a diameter.
    """

    value: object = None  # Fraction, float, or None for +inf
    regime: str = "inf"   # "exact" | "float" | "inf"

    def __post_init__(self):
        if self.regime == "inf":
            if self.value is not None:
                raise ValueError("infinite ExtReal carries no payload")
            return
        if self.regime == "exact":
            if not isinstance(self.value, Fraction):
                raise TypeError("exact ExtReal requires a Fraction payload")
        elif self.regime == "float":
            if not isinstance(self.value, float) or not math.isfinite(self.value):
                raise TypeError("float ExtReal requires a finite float payload")
        else:
            raise ValueError(f"unknown regime {self.regime!r}")
        if self.value < 0:
            raise ValueError(f"negative payload {self.value!r} rejected")

    # -- constructors -------------------------------------------------

    @staticmethod
    def exact(value) -> "ExtReal":
        """Wrap an int, Fraction or decimal-free string as an exact value."""
        return ExtReal(Fraction(value), "exact")

    @staticmethod
    def from_float(value: float) -> "ExtReal":
        if math.isinf(value):
            return INF
        return ExtReal(float(value), "float")

    @staticmethod
    def infinity() -> "ExtReal":
        return INF

    # -- predicates ----------------------------------------------------

    @property
    def is_infinite(self) -> bool:
        return self.regime == "inf"

    @property
    def is_finite(self) -> bool:
        return self.regime != "inf"

    # -- conversions ---------------------------------------------------

    def __float__(self) -> float:
        if self.is_infinite:
            return math.inf
        return float(self.value)

    def serialize(self) -> str:
        """'p/q' for rationals, shortest round-trip decimal for floats, 'inf'."""
        if self.is_infinite:
            return "inf"
        if self.regime == "exact":
            return str(self.value)  # Fraction renders as 'p/q' or 'p'
        return repr(self.value)

    @staticmethod
    def parse(text: str, regime: str) -> "ExtReal":
        text = text.strip()
        if text == "inf":
            return INF
        if regime == "exact":
            return ExtReal.exact(Fraction(text))
        return ExtReal.from_float(float(text))

    def __repr__(self):
        return f"ExtReal({self.serialize()})"

    # -- ordering (total within one regime) ----------------------------

    def __lt__(self, other):
        return ext_cmp(self, other) < 0

    def __le__(self, other):
        return ext_cmp(self, other) <= 0

    def __gt__(self, other):
        return ext_cmp(self, other) > 0

    def __ge__(self, other):
        return ext_cmp(self, other) >= 0

    def __eq__(self, other):
        if not isinstance(other, ExtReal):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        return self.regime == other.regime and self.value == other.value

    def __hash__(self):
        if self.is_infinite:
            return hash(math.inf)
        return hash((self.regime, self.value))


INF = ExtReal(None, "inf")


def ext_cmp(a: ExtReal, b: ExtReal) -> int:
    """Three-way comparison. Infinity dominates every finite value.

    Finite exact vs finite float is a usage error, not a coercion.
    """
    if not isinstance(a, ExtReal) or not isinstance(b, ExtReal):
        raise TypeError("ext_cmp compares ExtReal values")
    if a.is_infinite and b.is_infinite:
        return 0
    if a.is_infinite:
        return 1
    if b.is_infinite:
        return -1
    if a.regime != b.regime:
        raise RegimeError(
            f"cannot compare {a.regime} payload {a.serialize()} "
            f"with {b.regime} payload {b.serialize()}"
        )
    if a.value < b.value:
        return -1
    if a.value > b.value:
        return 1
    return 0


def ext_min(a: ExtReal, b: ExtReal) -> ExtReal:
    return a if ext_cmp(a, b) <= 0 else b


def ext_max(a: ExtReal, b: ExtReal) -> ExtReal:
    return a if ext_cmp(a, b) >= 0 else b


@runtime_checkable
class PointSetHandle(Protocol):
    """Minimal protocol every engine's point-set handle satisfies."""

    @property
    def is_empty(self) -> bool: ...

    def is_subset_of(self, other) -> bool: ...


@dataclass(frozen=True)
class DescriptorReport:
    """The full descriptor bundle one engine computes for one subset.

    Point-set fields hold engine-specific handles (interval sets on the
    line, index masks on finite samples, cell masks on grids).  ``notes``
    records engine caveats, e.g. that finite samples always attain their
    suprema so an empty center cannot arise there.
    """

    subset: object
    boundary: object
    interior_nonempty: bool
    clopen: bool
    center: object
    radius: ExtReal
    semi_radius: ExtReal
    quasi_center: object
    quasi_radius: ExtReal
    semi_quasi_radius: ExtReal
    diameter: ExtReal
    engine: str = "unknown"
    scale: float | None = None  # resolution h for sampled engines
    notes: tuple = ()


def report_consistency_check(r: DescriptorReport) -> list:
    """Return the list of violated report invariants (empty when consistent).

    Checked clauses:
      * on a nonclopen subset the center is nonempty iff the radius is finite;
      * semi-radius never exceeds radius, semi-quasi-radius never exceeds
        quasi-radius, and semi-quasi-radius never exceeds radius;
      * center and quasi-center are contained in the subset.
    """
    violations = []
    if not r.clopen:
        center_nonempty = not r.center.is_empty
        if center_nonempty and r.radius.is_infinite:
            violations.append(
                "center nonempty but radius infinite on a nonclopen subset")
        if not center_nonempty and r.radius.is_finite:
            violations.append(
                "radius finite but center empty on a nonclopen subset")
    try:
        if ext_cmp(r.semi_radius, r.radius) > 0:
            violations.append("semi-radius exceeds radius")
        if ext_cmp(r.semi_quasi_radius, r.quasi_radius) > 0:
            violations.append("semi-quasi-radius exceeds quasi-radius")
        if ext_cmp(r.semi_quasi_radius, r.radius) > 0:
            violations.append("semi-quasi-radius exceeds radius")
    except RegimeError:
        violations.append("mixed numeric regimes inside one report")
    if not r.center.is_subset_of(r.subset):
        violations.append("center not contained in subset")
    if not r.quasi_center.is_subset_of(r.subset):
        violations.append("quasi-center not contained in subset")
    return violations
