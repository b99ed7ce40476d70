"""Built-in measures and reference values used by the verification battery,
the test suite and the ``fixtures`` CLI subcommand.

``density_3d`` is a 3-dimensional atomless measure given by a piecewise
constant density on six unit intervals; it separates the subrange from the
shift-intersection and defeats the partition condition.  The two small
one-dimensional atomic measures defeat maximal subsets and the
subrange/shift-intersection equality.
"""

from __future__ import annotations

from fractions import Fraction

from .measure import MeasureSpec, SubsetWitness, atom, segment
from .partition import TargetFamily, TransitionTable
from .rational import RatVector, vec


def density_3d() -> MeasureSpec:
    """Six constant-density segments in dimension 3; total mass (110,130,125)."""
    return MeasureSpec(
        3,
        [
            segment((30, 40, 10), "[0,1)"),
            segment((40, 10, 20), "[1,2)"),
            segment((10, 20, 20), "[2,3)"),
            segment((10, 20, 30), "[3,4)"),
            segment((15, 10, 20), "[4,5)"),
            segment((5, 30, 25), "[5,6)"),
        ],
    )


DENSITY_TOTAL = vec(110, 130, 125)

# p: an extreme point of the range (the first three segments in full)
EXTREME_POINT = vec(80, 70, 50)

# q: inside the shift-intersection for p but outside the subrange
PROBE_POINT = vec(56, 29, 31)

# direction whose supporting line touches the range exactly at EXTREME_POINT
SUPPORT_DIRECTION = vec("7/5", 1, "-8/5")
SUPPORT_SCORES = (
    Fraction(66),
    Fraction(34),
    Fraction(2),
    Fraction(-14),
    Fraction(-1),
    Fraction(-3),
)
SUPPORT_VALUE = Fraction(102)
SUPPORT_WITNESS = SubsetWitness((1, 1, 1, 0, 0, 0))

# subset realizing PROBE_POINT inside the full range
PROBE_WITNESS = SubsetWitness(("42/115", "229/230", "33/460", 0, "3/10", 0))

# subset realizing PROBE_POINT + total - EXTREME_POINT = (86, 89, 106)
SHIFTED_PROBE_POINT = vec(86, 89, 106)
SHIFTED_PROBE_WITNESS = SubsetWitness(("15/46", "45/46", "209/230", 1, 1, "3/5"))

# the only solution of the first-three-segments system for PROBE_POINT,
# once the [0,1] box is dropped; its middle entry exceeds 1
RELAXED_SOLUTION = (Fraction(3, 10), Fraction(11, 10), Fraction(3, 10))


def triple_family() -> TargetFamily:
    """Three targets that pass the necessary condition yet admit no partition
    of density_3d: the first two sum to EXTREME_POINT while the first equals
    PROBE_POINT, which no subset of measure EXTREME_POINT can contain."""
    return TargetFamily(
        [
            ("a", vec(56, 29, 31)),
            ("b", vec(24, 41, 19)),
            ("c", vec(30, 60, 75)),
        ]
    )


def atoms_1d_four() -> MeasureSpec:
    """Four atoms with masses .1, .4, .2, .3; no maximal subset at p = 1/2."""
    return MeasureSpec(
        1,
        [
            atom(("1/10",), "1"),
            atom(("2/5",), "2"),
            atom(("1/5",), "3"),
            atom(("3/10",), "4"),
        ],
    )


HALF = vec("1/2")
HALF_SUBSETS = (
    SubsetWitness((1, 1, 0, 0)),
    SubsetWitness((0, 0, 1, 1)),
)


def atoms_1d_three() -> MeasureSpec:
    """Three atoms with masses .1, .55, .35; at p = .55 the subrange is a
    strict subset of the shift-intersection."""
    return MeasureSpec(
        1,
        [
            atom(("1/10",), "1"),
            atom(("11/20",), "2"),
            atom(("7/20",), "3"),
        ],
    )


ATOM_TARGET = vec("11/20")
ATOMS_THREE_RANGE = tuple(
    vec(x) for x in ("0", "1/10", "7/20", "9/20", "11/20", "13/20", "9/10", "1")
)
ATOMS_THREE_QSET = tuple(vec(x) for x in ("0", "1/10", "9/20", "11/20"))
# The empty subset of the unique measure-11/20 set contributes 0, so the
# subrange is {0, 11/20}; reflection through p/2 forces the same.
ATOMS_THREE_SUBRANGE = (vec("0"), vec("11/20"))


def uniform_two_action_table() -> TransitionTable:
    half = Fraction(1, 2)
    return TransitionTable(
        ("left", "right"),
        tuple((half, half) for _ in range(6)),
    )


def named_fixture_specs() -> dict[str, MeasureSpec]:
    return {
        "density3d": density_3d(),
        "atoms4": atoms_1d_four(),
        "atoms3": atoms_1d_three(),
    }
