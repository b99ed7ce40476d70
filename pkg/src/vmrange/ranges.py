"""The range of a vector measure: membership with witnesses, extreme points,
support maxima, subset-sum enumeration for purely atomic measures, and the
zonogon boundary for two-dimensional atomless measures.

For an atomless generator-form measure the range is the zonotope
{ sum t_i p^i : t_i in [0, 1] }, so membership is exact linear feasibility.
Atoms contribute all-or-nothing and are handled by exhaustive enumeration of
their subset sums, each reduced to a pure feasibility program on the
segments.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .linprog import (
    EnumerationLimitError,
    MAX_BINARY_VARS,
    coordinate_range,
    make_program,
    solve_feasibility,
)
from .measure import MeasureSpec, SubsetWitness, is_atomless, total_measure
from .rational import (
    ONE,
    ZERO,
    RatVector,
    as_scaled_ints,
    common_denominator,
    format_rational,
    from_scaled_ints,
)
from .geometry import Polygon2D


class NotAtomicError(ValueError):
    """Raised when an enumeration requires a purely atomic measure."""


class AtomsPresentError(ValueError):
    """Raised when an operation requires an atomless measure."""


@functools.lru_cache(maxsize=128)
def _atom_subset_sums(
    vectors: tuple[RatVector, ...], dim: int
) -> tuple[int, dict[tuple[int, ...], tuple[int, ...]]]:
    """All subset sums of the given atom vectors (as integer tuples over a
    common denominator), each mapped to the lexicographically first 0/1
    pattern realizing it.  Dict order is the lexicographic order of those
    patterns."""
    den = common_denominator(vectors)
    ints = [as_scaled_ints(v, den) for v in vectors]
    states: dict[tuple[int, ...], tuple[int, ...]] = {(0,) * dim: ()}
    for iv in ints:
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        for total, bits in states.items():
            if total not in nxt:
                nxt[total] = bits + (0,)
            key = tuple(a + b for a, b in zip(total, iv))
            if key not in nxt:
                nxt[key] = bits + (1,)
        states = nxt
    return den, states


def _split_generators(spec: MeasureSpec) -> tuple[list[int], list[int]]:
    """(mass-carrying segment indices, mass-carrying atom indices)."""
    return spec.segment_indices(), spec.atom_indices()


def _segment_program(spec, seg_idx, target: RatVector):
    vectors = [spec.generators[i].vector for i in seg_idx]
    equalities = [
        ([v[k] for v in vectors], target[k]) for k in range(spec.dimension)
    ]
    return make_program(len(seg_idx), equalities, lower=0, upper=1)


def range_contains(spec: MeasureSpec, q: RatVector) -> Optional[SubsetWitness]:
    """A witness t with sum(t_i p^i) = q, or None if q is outside the range."""
    if q.dim != spec.dimension:
        raise ValueError("point dimension %d, measure dimension %d" % (q.dim, spec.dimension))
    seg_idx, atom_idx = _split_generators(spec)
    if len(atom_idx) > MAX_BINARY_VARS:
        raise EnumerationLimitError(
            "%d atoms exceed the enumeration bound of %d" % (len(atom_idx), MAX_BINARY_VARS)
        )
    atom_vecs = tuple(spec.generators[i].vector for i in atom_idx)
    den, sums = _atom_subset_sums(atom_vecs, spec.dimension)
    if not seg_idx:
        key = as_scaled_ints(q, den)
        bits = sums.get(key) if key is not None else None
        if bits is None:
            return None
        return _assemble_witness(spec, seg_idx, atom_idx, (), bits)
    for atom_total, bits in sums.items():
        resid = q - from_scaled_ints(atom_total, den)
        res = solve_feasibility(_segment_program(spec, seg_idx, resid))
        if res.feasible:
            return _assemble_witness(spec, seg_idx, atom_idx, res.witness, bits)
    return None


def _assemble_witness(spec, seg_idx, atom_idx, seg_values, atom_bits) -> SubsetWitness:
    fractions = [ZERO] * len(spec.generators)
    for i, value in zip(seg_idx, seg_values):
        fractions[i] = value
    for i, bit in zip(atom_idx, atom_bits):
        fractions[i] = Fraction(bit)
    return SubsetWitness(fractions)


@dataclass(frozen=True)
class ExtremeReport:
    is_extreme: bool
    reason: str

    def __bool__(self) -> bool:
        return self.is_extreme


def is_extreme_point(spec: MeasureSpec, q: RatVector) -> ExtremeReport:
    """Extremality via the preimage polytope { t in [0,1]^n : sum t_i p^i = q }.

    q is extreme exactly when that polytope is a single point with all
    coordinates 0 or 1 (mass-carrying generators only): a fractional or
    non-unique coordinate lets q move both ways along that generator.
    """
    if range_contains(spec, q) is None:
        return ExtremeReport(False, "not in range")
    active = [i for i, g in enumerate(spec.generators) if not g.is_null()]
    vectors = [spec.generators[i].vector for i in active]
    equalities = [
        ([v[k] for v in vectors], q[k]) for k in range(spec.dimension)
    ]
    prog = make_program(len(active), equalities, lower=0, upper=1)
    for pos, i in enumerate(active):
        lo, hi = coordinate_range(prog, pos)
        label = spec.generators[i].label or ("g%d" % (i + 1))
        if lo != hi:
            return ExtremeReport(
                False,
                "generator %s admits fractions in [%s, %s]"
                % (label, format_rational(lo), format_rational(hi)),
            )
        if lo != 0 and lo != 1:
            return ExtremeReport(
                False,
                "generator %s is pinned to the fractional value %s"
                % (label, format_rational(lo)),
            )
    return ExtremeReport(True, "unique preimage with 0/1 fractions")


@dataclass(frozen=True)
class SupportResult:
    value: Fraction
    witness: SubsetWitness
    unique: bool
    scores: tuple[Fraction, ...]


def support_argmax(spec: MeasureSpec, direction: RatVector) -> SupportResult:
    """Maximize direction . mu(Z) over all subsets: take exactly the
    generators with positive score.  The maximizer is unique iff no
    mass-carrying generator scores zero."""
    if direction.dim != spec.dimension:
        raise ValueError("direction dimension mismatch")
    scores = tuple(direction.dot(g.vector) for g in spec.generators)
    fractions = [ONE if s > 0 else ZERO for s in scores]
    value = sum((s for s in scores if s > 0), ZERO)
    unique = all(
        s != 0 or g.is_null() for s, g in zip(scores, spec.generators)
    )
    return SupportResult(value, SubsetWitness(fractions), unique, scores)


def enumerate_atomic_range(
    spec: MeasureSpec, max_atoms: int = MAX_BINARY_VARS
) -> tuple[RatVector, ...]:
    """All subset sums of a purely atomic measure, deduplicated and sorted."""
    if not spec.is_purely_atomic():
        raise NotAtomicError("measure has a non-atomic generator")
    atom_idx = spec.atom_indices()
    if len(atom_idx) > max_atoms:
        raise EnumerationLimitError(
            "%d atoms exceed the enumeration bound of %d" % (len(atom_idx), max_atoms)
        )
    vectors = [spec.generators[i].vector for i in atom_idx]
    den = common_denominator(vectors)
    sums = {(0,) * spec.dimension}
    for v in vectors:
        iv = as_scaled_ints(v, den)
        sums |= {tuple(a + b for a, b in zip(s, iv)) for s in sums}
    return tuple(from_scaled_ints(s, den) for s in sorted(sums))


def _primitive_direction(v: RatVector) -> tuple[int, int]:
    den = v[0].denominator * v[1].denominator // gcd(
        v[0].denominator, v[1].denominator
    )
    a, b = int(v[0] * den), int(v[1] * den)
    g = gcd(a, b)
    return a // g, b // g


def zonogon_vertices(spec: MeasureSpec) -> Polygon2D:
    """Boundary of the range of a 2-dimensional atomless measure.

    Generators are merged by direction and sorted by increasing slope (all
    lie in the first quadrant); walking them forward and then backward yields
    the counterclockwise vertex ring starting at the origin.
    """
    if spec.dimension != 2:
        raise ValueError("zonogon construction needs dimension 2")
    if not is_atomless(spec):
        raise AtomsPresentError("zonogon construction needs an atomless measure")
    merged: dict[tuple[int, int], RatVector] = {}
    for g in spec.generators:
        if g.is_null():
            continue
        key = _primitive_direction(g.vector)
        merged[key] = merged[key] + g.vector if key in merged else g.vector
    # ascending slope; vertical directions (x = 0) come last
    ordered = sorted(
        merged.values(),
        key=lambda v: (v[0] == 0, v[1] / v[0] if v[0] else ZERO),
    )
    origin = RatVector.zero(2)
    if not ordered:
        return Polygon2D((origin,))
    if len(ordered) == 1:
        return Polygon2D((origin, ordered[0]))
    ring = [origin]
    cur = origin
    for v in ordered:
        cur = cur + v
        ring.append(cur)
    for v in ordered[:-1]:
        cur = cur - v
        ring.append(cur)
    return Polygon2D(tuple(ring))
