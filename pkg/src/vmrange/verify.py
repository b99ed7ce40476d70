"""The built-in verification battery.

Runs every reference fact of the bundled fixtures plus five seeded random
property suites: convexity of the subrange union, its containment in the
shift-intersection, reflection symmetry through p/2, the planar equality of
subrange and shift-intersection, and agreement of the feasibility predicates
with brute-force enumeration on purely atomic measures.

Everything is exact and deterministic: a fixed master seed derives one
integer sub-seed per suite, so two runs produce identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .fixtures import (
    ATOM_TARGET,
    ATOMS_THREE_QSET,
    ATOMS_THREE_RANGE,
    ATOMS_THREE_SUBRANGE,
    DENSITY_TOTAL,
    EXTREME_POINT,
    HALF,
    HALF_SUBSETS,
    PROBE_POINT,
    PROBE_WITNESS,
    RELAXED_SOLUTION,
    SHIFTED_PROBE_POINT,
    SHIFTED_PROBE_WITNESS,
    SUPPORT_DIRECTION,
    SUPPORT_SCORES,
    SUPPORT_VALUE,
    SUPPORT_WITNESS,
    atoms_1d_four,
    atoms_1d_three,
    density_3d,
    triple_family,
)
from .linprog import coordinate_range, make_program, optimize, solve_feasibility
from .measure import (
    Generator,
    GeneratorKind,
    MeasureSpec,
    SubsetWitness,
    measure_of,
    segment,
    total_measure,
)
from .partition import check_necessary_condition, partition_feasible
from .ranges import (
    enumerate_atomic_range,
    is_extreme_point,
    range_contains,
    support_argmax,
)
from .rational import ONE, ZERO, RatVector
from .subrange import (
    enumerate_measure_p_subsets,
    enumerate_qset_atomic,
    enumerate_subrange_atomic,
    maximal_subset_search,
    qset_contains,
    qset_polygon,
    reflect,
    subrange_contains,
)

DEFAULT_SEED = 20260810


@dataclass(frozen=True)
class Claim:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class BatteryReport:
    seed: int
    claims: list[Claim]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def failures(self) -> list[Claim]:
        return [c for c in self.claims if not c.passed]

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "claims": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.claims
            ],
        }


class _Battery:
    def __init__(self, seed: int):
        self.seed = seed
        self.claims: list[Claim] = []

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.claims.append(Claim(name, bool(passed), detail))

    def report(self) -> BatteryReport:
        return BatteryReport(self.seed, self.claims)


# ---------------------------------------------------------------------------
# random instances


def _frac(rng: random.Random, den_max: int, span: int) -> Fraction:
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(0, span * den), den)


def _unit_frac(rng: random.Random, den_max: int = 20) -> Fraction:
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(0, den), den)


def _random_atomless(rng: random.Random, dim: int) -> MeasureSpec:
    while True:
        n = rng.randint(2, 6)
        gens = [
            segment([_frac(rng, 20, 3) for _ in range(dim)], "g%d" % (i + 1))
            for i in range(n)
        ]
        spec = MeasureSpec(dim, gens)
        if not total_measure(spec).is_zero():
            return spec


def _random_atomic(rng: random.Random) -> MeasureSpec:
    dim = rng.choice((1, 1, 2))
    n = rng.randint(2, 10)
    gens = []
    for i in range(n):
        gens.append(
            Generator(
                GeneratorKind.ATOM,
                RatVector([_frac(rng, 12, 2) for _ in range(dim)]),
                str(i + 1),
            )
        )
    return MeasureSpec(dim, gens)


def _random_witness(rng: random.Random, spec: MeasureSpec) -> SubsetWitness:
    return SubsetWitness([_unit_frac(rng) for _ in spec.generators])


def _sub_witness(rng: random.Random, base: SubsetWitness) -> SubsetWitness:
    """A random witness componentwise below ``base``: a subset of its set."""
    return SubsetWitness([t * _unit_frac(rng) for t in base.fractions])


def _preimage_witnesses(rng, spec, p, count=2) -> list[SubsetWitness]:
    """Distinct witnesses of p found by optimizing random directions over the
    preimage polytope; exercises genuinely different ambient sets."""
    vectors = [g.vector for g in spec.generators]
    equalities = [
        ([v[k] for v in vectors], p[k]) for k in range(spec.dimension)
    ]
    prog = make_program(len(vectors), equalities, lower=0, upper=1)
    out = []
    for _ in range(count):
        direction = [rng.randint(-5, 5) for _ in vectors]
        res = optimize(prog, [Fraction(d) for d in direction], "max")
        out.append(SubsetWitness(res.witness))
    return out


# ---------------------------------------------------------------------------
# fixture claims


def _fixture_claims(b: _Battery) -> None:
    spec = density_3d()

    total = total_measure(spec)
    b.check("range.total-measure", total == DENSITY_TOTAL, str(total))
    w = range_contains(spec, PROBE_POINT)
    b.check("range.contains-probe", w is not None and measure_of(spec, w) == PROBE_POINT)
    b.check(
        "range.probe-witness-reverifies",
        measure_of(spec, PROBE_WITNESS) == PROBE_POINT,
    )
    w2 = range_contains(spec, SHIFTED_PROBE_POINT)
    b.check(
        "range.contains-shifted-probe",
        w2 is not None and measure_of(spec, w2) == SHIFTED_PROBE_POINT,
    )
    b.check(
        "range.shifted-witness-reverifies",
        measure_of(spec, SHIFTED_PROBE_WITNESS) == SHIFTED_PROBE_POINT
        and SHIFTED_PROBE_POINT == PROBE_POINT + DENSITY_TOTAL - EXTREME_POINT,
    )

    ext = is_extreme_point(spec, EXTREME_POINT)
    b.check("extreme.point-is-extreme", ext.is_extreme, ext.reason)
    sup = support_argmax(spec, SUPPORT_DIRECTION)
    b.check("support.value", sup.value == SUPPORT_VALUE, str(sup.value))
    b.check("support.scores", sup.scores == SUPPORT_SCORES)
    b.check("support.witness", sup.witness == SUPPORT_WITNESS and sup.unique)

    sr = subrange_contains(spec, EXTREME_POINT, PROBE_POINT)
    b.check("subrange.probe-excluded", sr.witness is None and sr.p_in_range, str(sr.flags))
    gens3 = [g.vector for g in spec.generators[:3]]
    eqs = [([v[k] for v in gens3], PROBE_POINT[k]) for k in range(3)]
    boxed = solve_feasibility(make_program(3, eqs, lower=0, upper=1))
    free_prog = make_program(3, eqs, lower=None, upper=None)
    free = solve_feasibility(free_prog)
    pinned = all(
        coordinate_range(free_prog, j) == (RELAXED_SOLUTION[j], RELAXED_SOLUTION[j])
        for j in range(3)
    )
    b.check(
        "subrange.relaxed-system-pinned",
        (not boxed.feasible)
        and free.feasible
        and free.witness == RELAXED_SOLUTION
        and pinned,
        str(free.witness),
    )
    qs = qset_contains(spec, EXTREME_POINT, PROBE_POINT)
    b.check(
        "qset.probe-included",
        qs.in_qset
        and measure_of(spec, qs.witness_q) == PROBE_POINT
        and measure_of(spec, qs.witness_shifted) == SHIFTED_PROBE_POINT,
    )

    fam = triple_family()
    cond = check_necessary_condition(spec, fam)
    b.check(
        "partition.necessary-condition-holds",
        cond.holds and cond.total_matches,
        "failures: %d" % len(cond.failures),
    )
    b.check("partition.infeasible", partition_feasible(spec, fam) is None)

    four = atoms_1d_four()
    subsets = enumerate_measure_p_subsets(four, HALF)
    b.check(
        "atoms4.half-subsets",
        subsets == tuple(sorted(HALF_SUBSETS, key=lambda t: t.fractions)),
        "%d subsets" % len(subsets),
    )
    ranges = [
        enumerate_atomic_range(
            MeasureSpec(
                1,
                [
                    Generator(g.kind, g.vector.scale(t), g.label)
                    for g, t in zip(four.generators, wit.fractions)
                ],
            )
        )
        for wit in subsets
    ]
    incomparable = not set(ranges[0]) <= set(ranges[1]) and not set(
        ranges[1]
    ) <= set(ranges[0])
    search = maximal_subset_search(four, HALF)
    b.check(
        "atoms4.maximal-subset-nonexistence",
        incomparable and search.witness is None and search.nonexistence_proven,
        search.method,
    )

    three = atoms_1d_three()
    rng_enum = enumerate_atomic_range(three)
    b.check("atoms3.range-enumeration", rng_enum == ATOMS_THREE_RANGE, str([str(v) for v in rng_enum]))
    sub_enum = enumerate_subrange_atomic(three, ATOM_TARGET)
    b.check(
        "atoms3.subrange-enumeration",
        sub_enum == ATOMS_THREE_SUBRANGE,
        str([str(v) for v in sub_enum]),
    )
    qset_enum = enumerate_qset_atomic(three, ATOM_TARGET)
    b.check("atoms3.qset-enumeration", qset_enum == ATOMS_THREE_QSET, str([str(v) for v in qset_enum]))
    b.check(
        "atoms3.strict-inclusion",
        set(sub_enum) < set(qset_enum),
    )


# ---------------------------------------------------------------------------
# property suites


def _convexity_suite(b: _Battery, seed: int) -> None:
    """Subrange union convexity: rational convex combinations of members stay
    members.  100 random atomless measures, 10 pairs each, 3 weights."""
    rng = random.Random(seed * 1000003 + 7)
    lambdas = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))
    failures = 0
    trials = 0
    for _ in range(100):
        spec = _random_atomless(rng, rng.choice((2, 3)))
        base = _random_witness(rng, spec)
        p = measure_of(spec, base)
        pool = [base] + _preimage_witnesses(rng, spec, p)
        for _ in range(10):
            w1, w2 = rng.choice(pool), rng.choice(pool)
            q1 = measure_of(spec, _sub_witness(rng, w1))
            q2 = measure_of(spec, _sub_witness(rng, w2))
            for lam in lambdas:
                probe = q1.scale(lam) + q2.scale(1 - lam)
                trials += 1
                if subrange_contains(spec, p, probe).witness is None:
                    failures += 1
    b.check(
        "random.subrange-convexity",
        failures == 0,
        "%d combinations, %d failures" % (trials, failures),
    )


def _qset_cover_suite(b: _Battery, seed: int) -> None:
    """Every subrange member also lies in the shift-intersection."""
    rng = random.Random(seed * 1000003 + 8)
    failures = 0
    for _ in range(100):
        spec = _random_atomless(rng, rng.choice((2, 3)))
        base = _random_witness(rng, spec)
        p = measure_of(spec, base)
        q = measure_of(spec, _sub_witness(rng, base))
        if not qset_contains(spec, p, q).in_qset:
            failures += 1
    b.check("random.qset-covers-subrange", failures == 0, "100 samples, %d failures" % failures)


def _symmetry_suite(b: _Battery, seed: int) -> None:
    """Reflection through p/2 preserves membership in both sets, with the
    witness map that swaps the inner and complementary cells."""
    rng = random.Random(seed * 1000003 + 9)
    points = 0
    failures = 0
    for _ in range(25):
        spec = _random_atomless(rng, rng.choice((2, 3)))
        base = _random_witness(rng, spec)
        p = measure_of(spec, base)
        total = total_measure(spec)
        probes = [
            measure_of(spec, _sub_witness(rng, base)),
            p - measure_of(spec, _sub_witness(rng, base)),
            p,
            RatVector.zero(spec.dimension),
            p + total,
        ]
        probes += [
            RatVector([_frac(rng, 10, 2) for _ in range(spec.dimension)])
            for _ in range(3)
        ]
        for x in probes:
            points += 1
            mirror = reflect(p, x)
            r1 = subrange_contains(spec, p, x)
            r2 = subrange_contains(spec, p, mirror)
            ok = (r1.witness is None) == (r2.witness is None)
            if r1.witness is not None:
                ok = ok and r1.witness.reflected().verify(spec, p, mirror)
            ok = ok and qset_contains(spec, p, x).in_qset == qset_contains(
                spec, p, mirror
            ).in_qset
            if not ok:
                failures += 1
    b.check(
        "random.reflection-symmetry",
        failures == 0,
        "%d points, %d failures" % (points, failures),
    )


def _planar_suite(b: _Battery, seed: int) -> None:
    """In dimension 2 the subrange equals the shift-intersection polygon:
    polygon vertices are subrange members, and points outside the polygon
    fail both predicates."""
    rng = random.Random(seed * 1000003 + 10)
    vertex_checks = vertex_failures = 0
    samples = sample_failures = 0
    exterior = 0
    for _ in range(50):
        spec = _random_atomless(rng, 2)
        base = _random_witness(rng, spec)
        p = measure_of(spec, base)
        poly = qset_polygon(spec, p)
        for v in poly.vertices:
            vertex_checks += 1
            if subrange_contains(spec, p, v).witness is None:
                vertex_failures += 1
        total = total_measure(spec)
        box = [
            RatVector(
                (
                    total[0] * Fraction(rng.randint(0, 24), 16),
                    total[1] * Fraction(rng.randint(0, 24), 16),
                )
            )
            for _ in range(2)
        ]
        box.append(total + RatVector((1, 1)))
        for x in box:
            samples += 1
            inside = poly.contains(x)
            if not inside:
                exterior += 1
            in_sub = subrange_contains(spec, p, x).witness is not None
            in_q = qset_contains(spec, p, x).in_qset
            if inside != in_sub or inside != in_q:
                sample_failures += 1
    b.check(
        "planar.qset-vertices-in-subrange",
        vertex_failures == 0,
        "%d vertices, %d failures" % (vertex_checks, vertex_failures),
    )
    b.check(
        "planar.sample-consistency",
        sample_failures == 0 and exterior >= 50,
        "%d samples (%d exterior), %d failures" % (samples, exterior, sample_failures),
    )


def _atomic_oracle_suite(b: _Battery, seed: int) -> None:
    """On purely atomic measures the feasibility predicates must agree
    pointwise with brute-force enumeration over all subset pairs."""
    rng = random.Random(seed * 1000003 + 11)
    disagreements = 0
    points = 0
    for _ in range(100):
        spec = _random_atomic(rng)
        values = enumerate_atomic_range(spec)
        p = rng.choice(values)
        if rng.randint(0, 9) == 0:
            p = p + RatVector([Fraction(1, 7)] * spec.dimension)  # usually escapes
        sub_set = set(enumerate_subrange_atomic(spec, p))
        q_set = set(enumerate_qset_atomic(spec, p))
        shift = total_measure(spec) - p
        candidates = set(values)
        candidates |= {v - shift for v in values}
        for q in sorted(candidates, key=lambda r: r.sort_key()):
            points += 1
            if (subrange_contains(spec, p, q).witness is not None) != (q in sub_set):
                disagreements += 1
            if qset_contains(spec, p, q).in_qset != (q in q_set):
                disagreements += 1
    b.check(
        "atomic.oracle-agreement",
        disagreements == 0,
        "%d membership queries, %d disagreements" % (points, disagreements),
    )


def run_battery(seed: int = DEFAULT_SEED) -> BatteryReport:
    b = _Battery(seed)
    _fixture_claims(b)
    _convexity_suite(b, seed)
    _qset_cover_suite(b, seed)
    _symmetry_suite(b, seed)
    _planar_suite(b, seed)
    _atomic_oracle_suite(b, seed)
    return b.report()
