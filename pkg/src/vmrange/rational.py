"""Exact rational scalars and fixed-dimension rational vectors.

Scalars are plain ``fractions.Fraction`` values: arbitrary precision, always
in lowest terms with a positive denominator, and every arithmetic operation
is exact.  Nothing in this package ever rounds; floats are rejected at the
boundary so they cannot leak in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from ``"num/den"``, a decimal string, or an int.

    Floats are refused: by the time a float exists the decimal literal has
    already been rounded to binary, so accepting it would silently break
    exactness ("0.55" parses to 11/20, while float 0.55 does not equal it).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("cannot interpret bool as a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(
            "refusing float %r: pass the literal as a string to keep it exact" % (value,)
        )
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("invalid rational %r: %s" % (value, exc)) from None
    raise TypeError("cannot interpret %r as a rational" % (value,))


def format_rational(value: Fraction) -> str:
    """Render ``num/den``, or just ``num`` for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


@dataclass(frozen=True)
class RatVector:
    """A point of Q^m; all componentwise operations check dimension agreement."""

    components: tuple[Fraction, ...]

    def __init__(self, components: Iterable[RationalLike]):
        object.__setattr__(
            self, "components", tuple(parse_rational(c) for c in components)
        )

    def __hash__(self) -> int:
        # Fraction hashing is costly; vectors are dict keys all over the
        # enumeration code, so compute once.
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.components)
            object.__setattr__(self, "_hash", h)
        return h

    @staticmethod
    def zero(dim: int) -> "RatVector":
        return RatVector((ZERO,) * dim)

    @staticmethod
    def parse(value: Union[str, Sequence[RationalLike]], dim: int | None = None) -> "RatVector":
        """Parse from ``"a,b,c"`` (entries may be ``num/den`` or decimals) or a list."""
        if isinstance(value, str):
            parts: Sequence[RationalLike] = [p for p in value.split(",") if p.strip()]
        else:
            parts = value
        vec = RatVector(parts)
        if dim is not None and vec.dim != dim:
            raise ValueError("expected a vector of dimension %d, got %d" % (dim, vec.dim))
        return vec

    @property
    def dim(self) -> int:
        return len(self.components)

    def _check_dim(self, other: "RatVector") -> None:
        if self.dim != other.dim:
            raise ValueError(
                "dimension mismatch: %d vs %d" % (self.dim, other.dim)
            )

    def __add__(self, other: "RatVector") -> "RatVector":
        self._check_dim(other)
        return RatVector(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: "RatVector") -> "RatVector":
        self._check_dim(other)
        return RatVector(a - b for a, b in zip(self.components, other.components))

    def __neg__(self) -> "RatVector":
        return RatVector(-a for a in self.components)

    def scale(self, factor: RationalLike) -> "RatVector":
        f = parse_rational(factor)
        return RatVector(f * a for a in self.components)

    __rmul__ = scale

    def dot(self, other: "RatVector") -> Fraction:
        self._check_dim(other)
        return sum(
            (a * b for a, b in zip(self.components, other.components)), ZERO
        )

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.components)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, index: int) -> Fraction:
        return self.components[index]

    def sort_key(self) -> tuple[Fraction, ...]:
        """Lexicographic key; used wherever point sets need a canonical order."""
        return self.components

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.components]

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return "RatVector(%s)" % (self,)


def vec(*components: RationalLike) -> RatVector:
    """Shorthand constructor: ``vec(30, 40, 10)`` or ``vec("7/5", 1, "-8/5")``."""
    return RatVector(components)


def vector_sum(vectors: Iterable[RatVector], dim: int) -> RatVector:
    total = RatVector.zero(dim)
    for v in vectors:
        total = total + v
    return total


def common_denominator(vectors: Iterable[RatVector]) -> int:
    """Least common denominator of every component of every vector."""
    from math import gcd

    den = 1
    for v in vectors:
        for c in v:
            den = den * c.denominator // gcd(den, c.denominator)
    return den


def as_scaled_ints(v: RatVector, den: int) -> tuple[int, ...] | None:
    """v * den as an integer tuple, or None if v is not on that lattice."""
    out = []
    for c in v:
        scaled = c * den
        if scaled.denominator != 1:
            return None
        out.append(scaled.numerator)
    return tuple(out)


def from_scaled_ints(values: Sequence[int], den: int) -> RatVector:
    return RatVector(Fraction(x, den) for x in values)
