"""Partition feasibility and purification.

Given target vectors p^a, does a measurable partition {X^a} with
mu(X^a) = p^a exist?  In the generator model a partition is a row-stochastic
matrix of fractions (one row per generator, one column per target) whose
columns hit the targets; atoms must be assigned whole to a single cell.

A transition probability that is constant on each generator purifies by
solving exactly that partition problem for the targets it induces.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linprog import EnumerationLimitError, make_program, solve_feasibility
from .measure import MeasureSpec, SpecFormatError, is_atomless, total_measure
from .ranges import range_contains
from .rational import (
    ONE,
    ZERO,
    RatVector,
    RationalLike,
    format_rational,
    parse_rational,
)

MAX_FAMILY_SIZE = 20
MAX_ATOM_ASSIGNMENTS = 1 << 20


@dataclass(frozen=True)
class TargetFamily:
    """Labelled target vectors p^a, one per cell of the wanted partition."""

    labels: tuple[str, ...]
    targets: tuple[RatVector, ...]

    def __init__(self, items: Iterable[tuple[str, RatVector]]):
        pairs = list(items)
        if not pairs:
            raise ValueError("a target family cannot be empty")
        object.__setattr__(self, "labels", tuple(label for label, _ in pairs))
        object.__setattr__(self, "targets", tuple(vec for _, vec in pairs))

    def __len__(self) -> int:
        return len(self.targets)

    def items(self) -> list[tuple[str, RatVector]]:
        return list(zip(self.labels, self.targets))

    def to_json(self) -> dict:
        return {
            "targets": [
                {"label": label, "vector": vec.to_json()}
                for label, vec in self.items()
            ]
        }

    @staticmethod
    def from_json(data: object) -> "TargetFamily":
        if not isinstance(data, dict) or not isinstance(data.get("targets"), list):
            raise SpecFormatError('family root: expected {"targets": [...]}')
        pairs = []
        for i, item in enumerate(data["targets"]):
            where = "targets[%d]" % i
            if not isinstance(item, dict) or "vector" not in item:
                raise SpecFormatError("%s: expected an object with a vector" % where)
            label = item.get("label", "t%d" % (i + 1))
            try:
                vec = RatVector(item["vector"])
            except (TypeError, ValueError) as exc:
                raise SpecFormatError("%s.vector: %s" % (where, exc)) from None
            pairs.append((str(label), vec))
        return TargetFamily(pairs)


@dataclass(frozen=True)
class PartitionWitness:
    """Row-stochastic fractions; rows follow the generator order, columns the
    target order.  Atom rows are one-hot."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def column_measure(self, spec: MeasureSpec, col: int) -> RatVector:
        out = RatVector.zero(spec.dimension)
        for row, gen in zip(self.matrix, spec.generators):
            if row[col]:
                out = out + gen.vector.scale(row[col])
        return out

    def verify(self, spec: MeasureSpec, family: TargetFamily) -> bool:
        if len(self.matrix) != len(spec.generators):
            return False
        for row, gen in zip(self.matrix, spec.generators):
            if len(row) != len(family):
                return False
            if any(x < 0 for x in row) or sum(row) != 1:
                return False
            if gen.is_atom() and not gen.is_null() and ONE not in row:
                return False
        return all(
            self.column_measure(spec, a) == target
            for a, target in enumerate(family.targets)
        )

    def to_json(self) -> dict:
        return {
            "matrix": [[format_rational(x) for x in row] for row in self.matrix]
        }

    @staticmethod
    def from_json(data: dict) -> "PartitionWitness":
        return PartitionWitness(
            tuple(tuple(parse_rational(x) for x in row) for row in data["matrix"])
        )


@dataclass(frozen=True)
class TransitionTable:
    """Transition probabilities constant on each generator: one probability
    row per generator over the action labels."""

    actions: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def validate_for(self, spec: MeasureSpec) -> None:
        if len(self.rows) != len(spec.generators):
            raise ValueError(
                "table has %d rows for %d generators"
                % (len(self.rows), len(spec.generators))
            )
        for i, row in enumerate(self.rows):
            if len(row) != len(self.actions):
                raise ValueError("row %d has %d entries for %d actions"
                                 % (i + 1, len(row), len(self.actions)))
            if any(x < 0 for x in row):
                raise ValueError("row %d has a negative probability" % (i + 1))
            if sum(row) != 1:
                raise ValueError("row %d does not sum to 1" % (i + 1))

    def to_json(self) -> dict:
        return {
            "actions": list(self.actions),
            "rows": [[format_rational(x) for x in row] for row in self.rows],
        }

    @staticmethod
    def from_json(data: object) -> "TransitionTable":
        if (
            not isinstance(data, dict)
            or not isinstance(data.get("actions"), list)
            or not isinstance(data.get("rows"), list)
        ):
            raise SpecFormatError('table root: expected {"actions": [...], "rows": [...]}')
        try:
            rows = tuple(
                tuple(parse_rational(x) for x in row) for row in data["rows"]
            )
        except (TypeError, ValueError) as exc:
            raise SpecFormatError("table rows: %s" % exc) from None
        return TransitionTable(tuple(str(a) for a in data["actions"]), rows)


@dataclass(frozen=True)
class NecessaryConditionReport:
    holds: bool
    total_matches: bool
    failures: tuple[tuple[tuple[str, ...], RatVector], ...]
    """Subsets of target labels whose sum escapes the range."""

    def __bool__(self) -> bool:
        return self.holds


def check_necessary_condition(
    spec: MeasureSpec, family: TargetFamily, max_family: int = MAX_FAMILY_SIZE
) -> NecessaryConditionReport:
    """The targets must sum to mu(X), and every sub-collection's sum must lie
    in the range.  Both are necessary for a partition in any dimension."""
    if len(family) > max_family:
        raise EnumerationLimitError(
            "family of %d targets exceeds the subset bound of %d"
            % (len(family), max_family)
        )
    total_matches = (
        sum(family.targets, RatVector.zero(spec.dimension)) == total_measure(spec)
    )
    failures = []
    for size in range(1, len(family) + 1):
        for combo in itertools.combinations(range(len(family)), size):
            subset_sum = RatVector.zero(spec.dimension)
            for a in combo:
                subset_sum = subset_sum + family.targets[a]
            if range_contains(spec, subset_sum) is None:
                failures.append(
                    (tuple(family.labels[a] for a in combo), subset_sum)
                )
    return NecessaryConditionReport(
        total_matches and not failures, total_matches, tuple(failures)
    )


def _atom_assignment_states(
    vectors: tuple[RatVector, ...], ncells: int, dim: int
) -> dict[tuple[RatVector, ...], tuple[int, ...]]:
    """Distinct per-cell contribution profiles of atom-to-cell assignments,
    keyed to the lexicographically first assignment realizing each."""
    zero = tuple(RatVector.zero(dim) for _ in range(ncells))
    states: dict[tuple[RatVector, ...], tuple[int, ...]] = {zero: ()}
    for v in vectors:
        nxt: dict[tuple[RatVector, ...], tuple[int, ...]] = {}
        for profile, cells in states.items():
            for cell in range(ncells):
                key = tuple(
                    contrib + v if c == cell else contrib
                    for c, contrib in enumerate(profile)
                )
                if key not in nxt:
                    nxt[key] = cells + (cell,)
        states = nxt
    return states


def partition_feasible(
    spec: MeasureSpec, family: TargetFamily
) -> Optional[PartitionWitness]:
    """An exact partition witness, or None when no partition exists.

    Segments may split fractionally across the cells; atoms are assigned
    whole, enumerated exhaustively in lexicographic order.
    """
    for target in family.targets:
        if target.dim != spec.dimension:
            raise ValueError("target dimension mismatch")
    ncells = len(family)
    seg_idx = spec.segment_indices()
    atom_idx = spec.atom_indices()
    if ncells ** len(atom_idx) > MAX_ATOM_ASSIGNMENTS:
        raise EnumerationLimitError(
            "%d^%d atom assignments exceed the enumeration bound"
            % (ncells, len(atom_idx))
        )
    atom_vecs = tuple(spec.generators[i].vector for i in atom_idx)
    seg_vecs = [spec.generators[i].vector for i in seg_idx]
    states = _atom_assignment_states(atom_vecs, ncells, spec.dimension)
    for profile, cells in states.items():
        residuals = [t - c for t, c in zip(family.targets, profile)]
        seg_values = _solve_segment_partition(spec, seg_vecs, residuals)
        if seg_values is not None:
            return _assemble_partition(spec, seg_idx, atom_idx, seg_values, cells, ncells)
    return None


def _solve_segment_partition(spec, seg_vecs, residuals) -> Optional[tuple]:
    n, ncells = len(seg_vecs), len(residuals)
    if n == 0:
        return () if all(r.is_zero() for r in residuals) else None
    nv = n * ncells  # variable (i, a) at index i * ncells + a
    equalities = []
    for i in range(n):
        row = [ZERO] * nv
        for a in range(ncells):
            row[i * ncells + a] = ONE
        equalities.append((row, ONE))
    for a, resid in enumerate(residuals):
        for k in range(spec.dimension):
            row = [ZERO] * nv
            for i, v in enumerate(seg_vecs):
                row[i * ncells + a] = v[k]
            equalities.append((row, resid[k]))
    res = solve_feasibility(make_program(nv, equalities, lower=0, upper=1))
    return res.witness if res.feasible else None


def _assemble_partition(spec, seg_idx, atom_idx, seg_values, atom_cells, ncells):
    rows = []
    seg_pos = {i: pos for pos, i in enumerate(seg_idx)}
    atom_pos = {i: pos for pos, i in enumerate(atom_idx)}
    for i in range(len(spec.generators)):
        if i in seg_pos:
            base = seg_pos[i] * ncells
            rows.append(tuple(seg_values[base + a] for a in range(ncells)))
        elif i in atom_pos:
            cell = atom_cells[atom_pos[i]]
            rows.append(tuple(ONE if a == cell else ZERO for a in range(ncells)))
        else:
            # massless generator: park it in the first cell
            rows.append((ONE,) + (ZERO,) * (ncells - 1))
    return PartitionWitness(tuple(rows))


@dataclass(frozen=True)
class PurificationResult:
    targets: TargetFamily
    witness: PartitionWitness


def purify(spec: MeasureSpec, table: TransitionTable) -> PurificationResult:
    """Replace a generator-constant transition probability by a deterministic
    assignment inducing the same action measures p^a = sum_i pi(a|i) p^i.

    Atomless measures only: an atom randomizing over several actions has no
    deterministic counterpart.
    """
    table.validate_for(spec)
    if not is_atomless(spec):
        raise ValueError(
            "purification hypothesis violated: the measure has atoms"
        )
    targets = []
    for a, action in enumerate(table.actions):
        vec = RatVector.zero(spec.dimension)
        for gen, row in zip(spec.generators, table.rows):
            if row[a]:
                vec = vec + gen.vector.scale(row[a])
        targets.append((action, vec))
    family = TargetFamily(targets)
    witness = partition_feasible(spec, family)
    if witness is None:  # pragma: no cover - the table itself is a valid split
        raise RuntimeError("internal error: induced targets must be feasible")
    return PurificationResult(family, witness)


def load_family(path: str) -> TargetFamily:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.loads(fh.read(), parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise SpecFormatError("%s: %s" % (path, exc)) from None
    return TargetFamily.from_json(data)


def load_table(path: str) -> TransitionTable:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.loads(fh.read(), parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise SpecFormatError("%s: %s" % (path, exc)) from None
    return TransitionTable.from_json(data)
