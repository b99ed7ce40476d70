"""Generator-form model of a finite nonnegative vector measure.

A measure is described by an ordered list of generators.  A generator is
either an atomless segment (constant density: any fraction t of it is
realizable, with measure t times the generator's vector) or an atom (all or
nothing).  A measurable subset is represented, up to measure equivalence, by
one fraction per generator; this captures every measure value the modeled
space can produce, exactly.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .rational import (
    ONE,
    ZERO,
    RatVector,
    RationalLike,
    format_rational,
    parse_rational,
)


class GeneratorKind(enum.Enum):
    SEGMENT = "segment"
    ATOM = "atom"


@dataclass(frozen=True)
class Generator:
    """One building block of a measure, carrying its total measure vector."""

    kind: GeneratorKind
    vector: RatVector
    label: str = ""

    def is_atom(self) -> bool:
        return self.kind is GeneratorKind.ATOM

    def is_null(self) -> bool:
        """Massless generators never affect membership or extremality."""
        return self.vector.is_zero()


def segment(components: Iterable[RationalLike], label: str = "") -> Generator:
    return Generator(GeneratorKind.SEGMENT, RatVector(components), label)


def atom(components: Iterable[RationalLike], label: str = "") -> Generator:
    return Generator(GeneratorKind.ATOM, RatVector(components), label)


@dataclass(frozen=True)
class MeasureSpec:
    """An ordered list of generators of a common dimension."""

    dimension: int
    generators: tuple[Generator, ...]

    def __init__(self, dimension: int, generators: Iterable[Generator]):
        object.__setattr__(self, "dimension", int(dimension))
        object.__setattr__(self, "generators", tuple(generators))

    def __len__(self) -> int:
        return len(self.generators)

    def labels(self) -> list[str]:
        return [g.label or ("g%d" % (i + 1)) for i, g in enumerate(self.generators)]

    def vectors(self) -> list[RatVector]:
        return [g.vector for g in self.generators]

    def atom_indices(self) -> list[int]:
        """Indices of atoms that actually carry mass."""
        return [
            i
            for i, g in enumerate(self.generators)
            if g.is_atom() and not g.is_null()
        ]

    def segment_indices(self) -> list[int]:
        return [
            i
            for i, g in enumerate(self.generators)
            if not g.is_atom() and not g.is_null()
        ]

    def is_purely_atomic(self) -> bool:
        return all(g.is_atom() for g in self.generators)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]
    warnings: tuple[str, ...]


def validate(spec: MeasureSpec) -> ValidationReport:
    """Report structural problems; never raises."""
    violations: list[str] = []
    warnings: list[str] = []
    if spec.dimension < 1:
        violations.append("dimension must be at least 1, got %d" % spec.dimension)
    if not spec.generators:
        violations.append("a measure needs at least one generator")
    for i, gen in enumerate(spec.generators):
        name = gen.label or ("g%d" % (i + 1))
        if gen.vector.dim != spec.dimension:
            violations.append(
                "generator %s: dimension mismatch (%d, spec has %d)"
                % (name, gen.vector.dim, spec.dimension)
            )
            continue
        for k, c in enumerate(gen.vector):
            if c < 0:
                violations.append(
                    "generator %s: negative component %s at position %d"
                    % (name, format_rational(c), k)
                )
        if gen.is_null():
            warnings.append("generator %s carries no mass" % name)
    return ValidationReport(not violations, tuple(violations), tuple(warnings))


def total_measure(spec: MeasureSpec) -> RatVector:
    """Componentwise sum of all generator vectors: the measure of the whole space."""
    total = RatVector.zero(spec.dimension)
    for gen in spec.generators:
        total = total + gen.vector
    return total


def is_atomless(spec: MeasureSpec) -> bool:
    """True iff no mass sits on an atom (null atoms do not count)."""
    return not spec.atom_indices()


@dataclass(frozen=True)
class SubsetWitness:
    """Per-generator fractions t representing a measurable set with measure
    sum(t_i * p^i).  Atom fractions must be 0 or 1."""

    fractions: tuple[Fraction, ...]

    def __init__(self, fractions: Iterable[RationalLike]):
        object.__setattr__(
            self, "fractions", tuple(parse_rational(f) for f in fractions)
        )

    @staticmethod
    def zeros(n: int) -> "SubsetWitness":
        return SubsetWitness((ZERO,) * n)

    @staticmethod
    def ones(n: int) -> "SubsetWitness":
        return SubsetWitness((ONE,) * n)

    def complement(self) -> "SubsetWitness":
        return SubsetWitness(ONE - t for t in self.fractions)

    def validate_for(self, spec: MeasureSpec) -> None:
        if len(self.fractions) != len(spec.generators):
            raise ValueError(
                "witness has %d fractions for %d generators"
                % (len(self.fractions), len(spec.generators))
            )
        for i, (t, gen) in enumerate(zip(self.fractions, spec.generators)):
            if not (0 <= t <= 1):
                raise ValueError(
                    "fraction %s for generator %d is outside [0, 1]"
                    % (format_rational(t), i + 1)
                )
            if gen.is_atom() and not gen.is_null() and t != 0 and t != 1:
                raise ValueError(
                    "atom %s cannot be split: fraction %s"
                    % (gen.label or i + 1, format_rational(t))
                )

    def to_json(self) -> dict:
        return {"fractions": [format_rational(t) for t in self.fractions]}

    @staticmethod
    def from_json(data: dict) -> "SubsetWitness":
        return SubsetWitness(data["fractions"])


def measure_of(spec: MeasureSpec, witness: SubsetWitness) -> RatVector:
    """Exact measure of the set a witness describes."""
    witness.validate_for(spec)
    total = RatVector.zero(spec.dimension)
    for t, gen in zip(witness.fractions, spec.generators):
        if t:
            total = total + gen.vector.scale(t)
    return total


# ---------------------------------------------------------------------------
# JSON spec files
#
# { "dimension": m,
#   "generators": [ {"kind": "segment"|"atom", "label": str,
#                    "vector": ["num/den" | decimal string, ...]}, ... ] }
#
# Rationals are written as "num/den" strings; decimal strings are accepted on
# input only and parsed exactly.


class SpecFormatError(ValueError):
    """Malformed spec/family/table JSON; message carries the failing field."""


def spec_to_json(spec: MeasureSpec) -> dict:
    return {
        "dimension": spec.dimension,
        "generators": [
            {
                "kind": gen.kind.value,
                "label": gen.label or ("g%d" % (i + 1)),
                "vector": gen.vector.to_json(),
            }
            for i, gen in enumerate(spec.generators)
        ],
    }


def _rational_field(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except (TypeError, ValueError) as exc:
        raise SpecFormatError("%s: %s" % (where, exc)) from None


def spec_from_json(data: object) -> MeasureSpec:
    if not isinstance(data, dict):
        raise SpecFormatError("spec root: expected an object")
    try:
        dimension = int(data["dimension"])
    except (KeyError, TypeError, ValueError):
        raise SpecFormatError("spec.dimension: expected an integer") from None
    raw_gens = data.get("generators")
    if not isinstance(raw_gens, list) or not raw_gens:
        raise SpecFormatError("spec.generators: expected a non-empty list")
    gens: list[Generator] = []
    for i, item in enumerate(raw_gens):
        where = "generators[%d]" % i
        if not isinstance(item, dict):
            raise SpecFormatError("%s: expected an object" % where)
        kind_text = item.get("kind")
        try:
            kind = GeneratorKind(kind_text)
        except ValueError:
            raise SpecFormatError(
                '%s.kind: expected "segment" or "atom", got %r' % (where, kind_text)
            ) from None
        raw_vec = item.get("vector")
        if not isinstance(raw_vec, list):
            raise SpecFormatError("%s.vector: expected a list" % where)
        comps = [
            _rational_field(c, "%s.vector[%d]" % (where, k))
            for k, c in enumerate(raw_vec)
        ]
        label = item.get("label") or ("g%d" % (i + 1))
        if not isinstance(label, str):
            raise SpecFormatError("%s.label: expected a string" % where)
        gens.append(Generator(kind, RatVector(comps), label))
    spec = MeasureSpec(dimension, gens)
    report = validate(spec)
    if not report.ok:
        raise SpecFormatError("; ".join(report.violations))
    return spec


def loads_json_exact(text: str) -> object:
    """json.loads with float literals parsed as exact rationals."""
    return json.loads(text, parse_float=Fraction)


def load_spec(path: str) -> MeasureSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = loads_json_exact(fh.read())
        except json.JSONDecodeError as exc:
            raise SpecFormatError("%s: %s" % (path, exc)) from None
    return spec_from_json(data)


def dump_spec(spec: MeasureSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_json(spec), fh, indent=2, sort_keys=True)
        fh.write("\n")
