"""Membership in the union of ranges over all subsets with a fixed measure p,
and in the intersection of the range with its shift by -(mu(X) - p).

Membership in the union reduces to a three-cell feasibility program: split
every generator into fractions (alpha, beta, gamma) summing to one, where
alpha is the part inside the probed subset Z, alpha+beta the part inside the
ambient set Y with measure p, and gamma the rest.  Atoms must put their whole
mass in a single cell and are handled by exhaustive enumeration of cell
assignments, each reduced to a pure feasibility program on the segments.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .geometry import Polygon2D, cross, intersect_convex, polygon_equals
from .linprog import EnumerationLimitError, make_program, solve_feasibility
from .measure import (
    Generator,
    GeneratorKind,
    MeasureSpec,
    SubsetWitness,
    is_atomless,
    measure_of,
    total_measure,
)
from .ranges import (
    NotAtomicError,
    _primitive_direction,
    enumerate_atomic_range,
    range_contains,
    zonogon_vertices,
)
from .rational import (
    ONE,
    ZERO,
    RatVector,
    as_scaled_ints,
    common_denominator,
    from_scaled_ints,
)

MAX_THREE_CELL_ATOMS = 12
MAX_ENUM_ATOMS = 20

_CELLS = (0, 1, 2)  # inside Z, inside Y but not Z, outside Y


@dataclass(frozen=True)
class ThreeCellWitness:
    """Per-generator cell fractions proving q is reachable inside a set of
    measure p: sum(alpha_i p^i) = q and sum((alpha_i + beta_i) p^i) = p."""

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]

    def subset_fractions(self) -> SubsetWitness:
        """The ambient set Y with measure p."""
        return SubsetWitness(a + b for a, b in zip(self.alpha, self.beta))

    def inner_fractions(self) -> SubsetWitness:
        """The probed subset Z of Y with measure q."""
        return SubsetWitness(self.alpha)

    def reflected(self) -> "ThreeCellWitness":
        """Witness for p - q: swap the roles of Z and Y minus Z."""
        return ThreeCellWitness(self.beta, self.alpha, self.gamma)

    def verify(self, spec: MeasureSpec, p: RatVector, q: RatVector) -> bool:
        n = len(spec.generators)
        if not (len(self.alpha) == len(self.beta) == len(self.gamma) == n):
            return False
        sum_a = RatVector.zero(spec.dimension)
        sum_ab = RatVector.zero(spec.dimension)
        for a, b, c, gen in zip(self.alpha, self.beta, self.gamma, spec.generators):
            if a < 0 or b < 0 or c < 0 or a + b + c != 1:
                return False
            if gen.is_atom() and not gen.is_null() and ONE not in (a, b, c):
                return False
            if a:
                sum_a = sum_a + gen.vector.scale(a)
            if a + b:
                sum_ab = sum_ab + gen.vector.scale(a + b)
        return sum_a == q and sum_ab == p

    def to_json(self) -> dict:
        return {
            "alpha": [str(x) for x in self.alpha],
            "beta": [str(x) for x in self.beta],
            "gamma": [str(x) for x in self.gamma],
        }

    @staticmethod
    def from_json(data: dict) -> "ThreeCellWitness":
        return ThreeCellWitness(
            tuple(Fraction(x) for x in data["alpha"]),
            tuple(Fraction(x) for x in data["beta"]),
            tuple(Fraction(x) for x in data["gamma"]),
        )


@dataclass(frozen=True)
class SubrangeResult:
    witness: Optional[ThreeCellWitness]
    p_in_range: bool

    def __bool__(self) -> bool:
        return self.witness is not None

    @property
    def flags(self) -> tuple[str, ...]:
        if self.witness is not None:
            return ()
        if not self.p_in_range:
            return ("p-not-in-range",)
        return ("q-not-in-subrange",)


@functools.lru_cache(maxsize=64)
def _three_cell_states(
    vectors: tuple[RatVector, ...], dim: int
) -> tuple[int, dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[int, ...]]]:
    """Distinct (cell-Z sum, cell-Y sum) contributions of all atom cell
    assignments as integer tuples over a common denominator, each mapped to
    its lexicographically first assignment."""
    den = common_denominator(vectors)
    ints = [as_scaled_ints(v, den) for v in vectors]
    zero = (0,) * dim
    states: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[int, ...]] = {
        (zero, zero): ()
    }
    for iv in ints:
        nxt: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[int, ...]] = {}
        for (in_z, in_y), cells in states.items():
            both = tuple(a + b for a, b in zip(in_y, iv))
            for cell, key in (
                (0, (tuple(a + b for a, b in zip(in_z, iv)), both)),
                (1, (in_z, both)),
                (2, (in_z, in_y)),
            ):
                if key not in nxt:
                    nxt[key] = cells + (cell,)
        states = nxt
    return den, states


def _three_cell_program(vectors: list[RatVector], q_resid: RatVector, p_resid: RatVector):
    """Segment variables (alpha_i, beta_i, slack_i) per generator; the row
    alpha + beta + slack = 1 keeps every fraction in [0, 1]."""
    n = len(vectors)
    dim = q_resid.dim
    equalities = []
    for i in range(n):
        row = [ZERO] * (3 * n)
        row[3 * i] = row[3 * i + 1] = row[3 * i + 2] = ONE
        equalities.append((row, ONE))
    for k in range(dim):
        row = [ZERO] * (3 * n)
        for i, v in enumerate(vectors):
            row[3 * i] = v[k]
        equalities.append((row, q_resid[k]))
    for k in range(dim):
        row = [ZERO] * (3 * n)
        for i, v in enumerate(vectors):
            row[3 * i + 1] = v[k]
        equalities.append((row, p_resid[k]))
    return make_program(3 * n, equalities, lower=0, upper=None)


def subrange_contains(spec: MeasureSpec, p: RatVector, q: RatVector) -> SubrangeResult:
    """Decide whether q lies in the range of some subset with measure p."""
    if p.dim != spec.dimension or q.dim != spec.dimension:
        raise ValueError("p and q must match the measure dimension")
    seg_idx = spec.segment_indices()
    atom_idx = spec.atom_indices()
    if len(atom_idx) > MAX_THREE_CELL_ATOMS:
        raise EnumerationLimitError(
            "%d atoms exceed the three-cell enumeration bound of %d"
            % (len(atom_idx), MAX_THREE_CELL_ATOMS)
        )
    atom_vecs = tuple(spec.generators[i].vector for i in atom_idx)
    den, states = _three_cell_states(atom_vecs, spec.dimension)
    seg_vecs = [spec.generators[i].vector for i in seg_idx]
    witness = None
    if not seg_idx:
        qi, pi = as_scaled_ints(q, den), as_scaled_ints(p, den)
        cells = states.get((qi, pi)) if qi is not None and pi is not None else None
        if cells is not None:
            witness = _assemble_three_cell(spec, seg_idx, atom_idx, (), cells)
    else:
        for (in_z, in_y), cells in states.items():
            z_vec = from_scaled_ints(in_z, den)
            y_vec = from_scaled_ints(in_y, den)
            prog = _three_cell_program(seg_vecs, q - z_vec, (p - q) - (y_vec - z_vec))
            res = solve_feasibility(prog)
            if res.feasible:
                witness = _assemble_three_cell(
                    spec, seg_idx, atom_idx, res.witness, cells
                )
                break
    if witness is not None:
        return SubrangeResult(witness, True)
    return SubrangeResult(None, range_contains(spec, p) is not None)


def _assemble_three_cell(spec, seg_idx, atom_idx, seg_values, atom_cells) -> ThreeCellWitness:
    n = len(spec.generators)
    alpha = [ZERO] * n
    beta = [ZERO] * n
    gamma = [ONE] * n  # null generators go to the outside cell
    for pos, i in enumerate(seg_idx):
        alpha[i] = seg_values[3 * pos]
        beta[i] = seg_values[3 * pos + 1]
        gamma[i] = seg_values[3 * pos + 2]
    for i, cell in zip(atom_idx, atom_cells):
        if cell == 0:
            alpha[i], gamma[i] = ONE, ZERO
        elif cell == 1:
            beta[i], gamma[i] = ONE, ZERO
    return ThreeCellWitness(tuple(alpha), tuple(beta), tuple(gamma))


@dataclass(frozen=True)
class QSetResult:
    witness_q: Optional[SubsetWitness]
    witness_shifted: Optional[SubsetWitness]

    @property
    def in_qset(self) -> bool:
        return self.witness_q is not None and self.witness_shifted is not None

    def __bool__(self) -> bool:
        return self.in_qset


def qset_contains(spec: MeasureSpec, p: RatVector, q: RatVector) -> QSetResult:
    """q lies in the range and so does q + mu(X) - p (the shifted copy)."""
    if p.dim != spec.dimension or q.dim != spec.dimension:
        raise ValueError("p and q must match the measure dimension")
    w1 = range_contains(spec, q)
    if w1 is None:
        return QSetResult(None, None)
    w2 = range_contains(spec, q + total_measure(spec) - p)
    return QSetResult(w1, w2)


def reflect(p: RatVector, q: RatVector) -> RatVector:
    """Reflection through p/2, the symmetry center of both sets."""
    return p - q


# ---------------------------------------------------------------------------
# purely atomic enumerations


def _atomic_setup(spec: MeasureSpec, max_atoms: int):
    """(mass-carrying atom indices, per-mask integer sums, denominator)."""
    if not spec.is_purely_atomic():
        raise NotAtomicError("enumeration requires a purely atomic measure")
    atom_idx = spec.atom_indices()
    if len(atom_idx) > max_atoms:
        raise EnumerationLimitError(
            "%d atoms exceed the enumeration bound of %d" % (len(atom_idx), max_atoms)
        )
    vectors = [spec.generators[i].vector for i in atom_idx]
    den = common_denominator(vectors)
    ints = [as_scaled_ints(v, den) for v in vectors]
    n = len(vectors)
    sums = [(0,) * spec.dimension] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        prev = sums[mask ^ low]
        sums[mask] = tuple(a + b for a, b in zip(prev, ints[low.bit_length() - 1]))
    return atom_idx, sums, den


def enumerate_measure_p_subsets(
    spec: MeasureSpec, p: RatVector, max_atoms: int = MAX_ENUM_ATOMS
) -> tuple[SubsetWitness, ...]:
    """All subsets of a purely atomic measure with measure exactly p."""
    atom_idx, sums, den = _atomic_setup(spec, max_atoms)
    n = len(atom_idx)
    target = as_scaled_ints(p, den)
    out = []
    if target is not None:
        for mask in range(1 << n):
            if sums[mask] == target:
                fractions = [ZERO] * len(spec.generators)
                for j in range(n):
                    if mask >> j & 1:
                        fractions[atom_idx[j]] = ONE
                out.append(SubsetWitness(fractions))
    return tuple(sorted(out, key=lambda w: w.fractions))


def enumerate_subrange_atomic(
    spec: MeasureSpec, p: RatVector, max_atoms: int = MAX_ENUM_ATOMS
) -> tuple[RatVector, ...]:
    """Union of subset sums over every subset Y with measure p: enumerate
    the sets Y, then every subset of each Y."""
    atom_idx, sums, den = _atomic_setup(spec, max_atoms)
    n = len(atom_idx)
    target = as_scaled_ints(p, den)
    values: set[tuple[int, ...]] = set()
    if target is not None:
        for mask in range(1 << n):
            if sums[mask] != target:
                continue
            sub = mask
            while True:
                values.add(sums[sub])
                if sub == 0:
                    break
                sub = (sub - 1) & mask
    return tuple(from_scaled_ints(s, den) for s in sorted(values))


def enumerate_qset_atomic(
    spec: MeasureSpec, p: RatVector, max_atoms: int = MAX_ENUM_ATOMS
) -> tuple[RatVector, ...]:
    """Values v in the range with v + mu(X) - p also in the range."""
    _, sums, den = _atomic_setup(spec, max_atoms)
    everything = set(sums)
    shift = as_scaled_ints(total_measure(spec) - p, den)
    if shift is None:
        return ()
    kept = [
        v
        for v in sorted(everything)
        if tuple(a + b for a, b in zip(v, shift)) in everything
    ]
    return tuple(from_scaled_ints(v, den) for v in kept)


# ---------------------------------------------------------------------------
# shift-intersection polygon and maximal subsets (dimension 2)


def qset_polygon(spec: MeasureSpec, p: RatVector) -> Polygon2D:
    """Intersection of the zonogon with its translate by p - mu(X)."""
    zone = zonogon_vertices(spec)
    shifted = zone.translate(p - total_measure(spec))
    return intersect_convex(zone, shifted)


@dataclass(frozen=True)
class MaximalSubsetResult:
    """Search outcome for a subset Z* with measure p whose range covers the
    whole subrange.  ``certified`` means the equality was checked exactly;
    a missing certificate is never a nonexistence proof unless
    ``nonexistence_proven`` is set (exhaustive atomic enumeration)."""

    witness: Optional[SubsetWitness]
    certified: bool
    nonexistence_proven: bool
    method: str

    def __bool__(self) -> bool:
        return self.witness is not None


def _scaled_zonogon(spec: MeasureSpec, fractions) -> Polygon2D:
    scaled = MeasureSpec(
        2,
        [
            Generator(GeneratorKind.SEGMENT, g.vector.scale(t), g.label)
            for g, t in zip(spec.generators, fractions)
        ],
    )
    return zonogon_vertices(scaled)


def _preimage_vertices(spec: MeasureSpec, p: RatVector) -> list[tuple[Fraction, ...]]:
    """Basic feasible solutions of { t in [0,1]^n : sum t_i p^i = p } for a
    2-dimensional measure: at most two fractional coordinates, the rest 0/1."""
    active = [i for i, g in enumerate(spec.generators) if not g.is_null()]
    vecs = [spec.generators[i].vector for i in active]
    n = len(active)
    found: set[tuple[Fraction, ...]] = set()

    def emit(partial: dict[int, Fraction]) -> None:
        t = [ZERO] * len(spec.generators)
        for pos, val in partial.items():
            t[active[pos]] = val
        found.add(tuple(t))

    for fr_size in (0, 1, 2):
        for fr in itertools.combinations(range(n), fr_size):
            rest = [j for j in range(n) if j not in fr]
            for bits in itertools.product((0, 1), repeat=len(rest)):
                resid = p
                for j, bit in zip(rest, bits):
                    if bit:
                        resid = resid - vecs[j]
                sol = _solve_fractional(fr, vecs, resid)
                if sol is None:
                    continue
                partial = {j: Fraction(bit) for j, bit in zip(rest, bits)}
                partial.update(sol)
                emit(partial)
    return sorted(found)


def _solve_fractional(fr, vecs, resid) -> Optional[dict[int, Fraction]]:
    if len(fr) == 0:
        return {} if resid.is_zero() else None
    if len(fr) == 1:
        v = vecs[fr[0]]
        if cross(v, resid) != 0:
            return None
        t = resid[0] / v[0] if v[0] else resid[1] / v[1]
        return {fr[0]: t} if 0 <= t <= 1 else None
    va, vb = vecs[fr[0]], vecs[fr[1]]
    det = cross(va, vb)
    if det == 0:
        return None  # parallel pair: any vertex here shows up with fewer fractionals
    ta = cross(resid, vb) / det
    tb = cross(va, resid) / det
    if 0 <= ta <= 1 and 0 <= tb <= 1:
        return {fr[0]: ta, fr[1]: tb}
    return None


def _decompose_target_zonogon(
    spec: MeasureSpec, p: RatVector, target: Polygon2D
) -> Optional[tuple[Fraction, ...]]:
    """Read fractions off the target polygon: walk its boundary from the
    origin to p and match each edge vector against a generator direction."""
    verts = target.vertices
    if not verts:
        return None
    n = len(spec.generators)
    if len(verts) == 1:
        return (ZERO,) * n if verts[0].is_zero() and p.is_zero() else None
    classes: dict[tuple[int, int], list[int]] = {}
    for i, g in enumerate(spec.generators):
        if not g.is_null():
            classes.setdefault(_primitive_direction(g.vector), []).append(i)
    origin = RatVector.zero(2)
    try:
        start = verts.index(origin)
    except ValueError:
        return None
    edges: list[RatVector] = []
    cur = start
    walked = origin
    for _ in range(len(verts)):
        if walked == p:
            break
        nxt = (cur + 1) % len(verts)
        step = verts[nxt] - verts[cur]
        edges.append(step)
        walked = walked + step
        cur = nxt
    if walked != p:
        return None
    fractions = [ZERO] * n
    for step in edges:
        members = classes.get(_primitive_direction(step))
        if members is None:
            return None
        total = RatVector.zero(2)
        for i in members:
            total = total + spec.generators[i].vector
        share = step[0] / total[0] if total[0] else step[1] / total[1]
        if not 0 <= share <= 1:
            return None
        remaining = share * (total[0] if total[0] else total[1])
        for i in members:
            size = spec.generators[i].vector[0] or spec.generators[i].vector[1]
            take = min(ONE, remaining / size)
            fractions[i] = take
            remaining -= take * size
        if remaining != 0:
            return None
    return tuple(fractions)


def maximal_subset_search(spec: MeasureSpec, p: RatVector) -> MaximalSubsetResult:
    """Look for a subset of measure p whose range is the whole subrange.

    Purely atomic measures are settled exhaustively (so a negative answer is
    a proof).  For 2-dimensional atomless measures the subrange equals the
    shift-intersection polygon, which gives an exact certificate: candidates
    are tried until one's scaled zonogon matches that polygon.
    """
    if p.dim != spec.dimension:
        raise ValueError("p must match the measure dimension")
    if spec.is_purely_atomic():
        subsets = enumerate_measure_p_subsets(spec, p)
        union = enumerate_subrange_atomic(spec, p)
        for witness in subsets:
            sub = MeasureSpec(
                spec.dimension,
                [
                    Generator(g.kind, g.vector.scale(t), g.label)
                    for g, t in zip(spec.generators, witness.fractions)
                ],
            )
            if enumerate_atomic_range(sub) == union:
                return MaximalSubsetResult(witness, True, False, "atomic-enumeration")
        return MaximalSubsetResult(None, False, True, "atomic-enumeration")
    if spec.dimension != 2 or not is_atomless(spec):
        raise ValueError(
            "maximal-subset search handles purely atomic measures and "
            "2-dimensional atomless measures"
        )
    target = qset_polygon(spec, p)
    vertices = _preimage_vertices(spec, p)
    for t in vertices:
        if polygon_equals(_scaled_zonogon(spec, t), target):
            return MaximalSubsetResult(SubsetWitness(t), True, False, "basic-solution")
    lambdas = (
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(2, 3),
        Fraction(1, 4),
        Fraction(3, 4),
    )
    for a_idx in range(len(vertices)):
        for b_idx in range(a_idx + 1, len(vertices)):
            va, vb = vertices[a_idx], vertices[b_idx]
            for lam in lambdas:
                t = tuple(lam * x + (1 - lam) * y for x, y in zip(va, vb))
                if polygon_equals(_scaled_zonogon(spec, t), target):
                    return MaximalSubsetResult(
                        SubsetWitness(t), True, False, "pair-combination"
                    )
    t = _decompose_target_zonogon(spec, p, target)
    if t is not None and measure_of(spec, SubsetWitness(t)) == p:
        if polygon_equals(_scaled_zonogon(spec, t), target):
            return MaximalSubsetResult(SubsetWitness(t), True, False, "edge-decomposition")
    return MaximalSubsetResult(None, False, False, "exhausted")
