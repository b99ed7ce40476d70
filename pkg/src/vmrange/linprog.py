"""Exact rational linear feasibility and optimization over box-and-equality
systems, with exhaustive enumeration over binary variables.

The solver is a two-phase primal simplex with Bland's rule, so it cannot
cycle and identical programs always produce identical witnesses.  There are
no tolerances anywhere: the tableau is kept as integer rows with one
denominator per row, and every verdict or witness re-verifies by exact
substitution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .rational import ONE, ZERO, RationalLike, parse_rational

MAX_BINARY_VARS = 25

Bound = Optional[Fraction]


class LinearProgramError(Exception):
    pass


class InfeasibleError(LinearProgramError):
    pass


class UnboundedError(LinearProgramError):
    pass


class EnumerationLimitError(LinearProgramError):
    """Too many binary variables for exhaustive enumeration."""


@dataclass(frozen=True)
class FeasibilityProgram:
    """Find x with  A x = b,  lower <= x <= upper,  x_j in {0,1} for binary j.

    ``None`` bounds mean unbounded on that side.
    """

    num_vars: int
    equalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    lower: tuple[Bound, ...]
    upper: tuple[Bound, ...]
    binary: frozenset[int]


def make_program(
    num_vars: int,
    equalities: Iterable[tuple[Sequence[RationalLike], RationalLike]] = (),
    lower: object = 0,
    upper: object = 1,
    binary: Iterable[int] = (),
) -> FeasibilityProgram:
    """Build a program; scalar bounds broadcast, ``None`` means unbounded."""

    def expand(bound) -> tuple[Bound, ...]:
        if bound is None or isinstance(bound, (int, str, Fraction)):
            one = None if bound is None else parse_rational(bound)
            return (one,) * num_vars
        out = []
        for b in bound:
            out.append(None if b is None else parse_rational(b))
        if len(out) != num_vars:
            raise ValueError("bounds length %d != %d variables" % (len(out), num_vars))
        return tuple(out)

    eqs = []
    for coeffs, rhs in equalities:
        row = tuple(parse_rational(c) for c in coeffs)
        if len(row) != num_vars:
            raise ValueError(
                "equality with %d coefficients for %d variables" % (len(row), num_vars)
            )
        eqs.append((row, parse_rational(rhs)))
    lo, hi = expand(lower), expand(upper)
    bins = frozenset(int(j) for j in binary)
    for j in bins:
        if not 0 <= j < num_vars:
            raise ValueError("binary index %d out of range" % j)
    for j in range(num_vars):
        if lo[j] is not None and hi[j] is not None and lo[j] > hi[j]:
            raise ValueError("variable %d has empty bounds" % j)
        if j in bins:
            if (lo[j] is not None and lo[j] < 0) or (hi[j] is not None and hi[j] > 1):
                raise ValueError("binary variable %d must have bounds within [0, 1]" % j)
    return FeasibilityProgram(num_vars, tuple(eqs), lo, hi, bins)


@dataclass(frozen=True)
class FarkasCertificate:
    """Equality multipliers y proving infeasibility: the best value z.x can
    reach over the box, with z = y.A, still falls short of y.b."""

    multipliers: tuple[Fraction, ...]

    def verify(self, prog: FeasibilityProgram) -> bool:
        if len(self.multipliers) != len(prog.equalities):
            return False
        z = [ZERO] * prog.num_vars
        rhs = ZERO
        for y, (coeffs, b) in zip(self.multipliers, prog.equalities):
            rhs += y * b
            if y:
                for j, c in enumerate(coeffs):
                    z[j] += y * c
        box_max = ZERO
        for j, zj in enumerate(z):
            if zj > 0:
                if prog.upper[j] is None:
                    return False
                box_max += zj * prog.upper[j]
            elif zj < 0:
                if prog.lower[j] is None:
                    return False
                box_max += zj * prog.lower[j]
        return box_max < rhs


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]]
    certificate: Optional[FarkasCertificate]

    def __bool__(self) -> bool:
        return self.feasible


@dataclass(frozen=True)
class OptimizeResult:
    value: Fraction
    witness: tuple[Fraction, ...]


def witness_satisfies(prog: FeasibilityProgram, witness: Sequence[Fraction]) -> bool:
    """Exact re-verification: zero residual on every equality and bound."""
    if len(witness) != prog.num_vars:
        return False
    for j, x in enumerate(witness):
        if prog.lower[j] is not None and x < prog.lower[j]:
            return False
        if prog.upper[j] is not None and x > prog.upper[j]:
            return False
        if j in prog.binary and x != 0 and x != 1:
            return False
    for coeffs, rhs in prog.equalities:
        if sum((c * x for c, x in zip(coeffs, witness)), ZERO) != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# standard form


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class _Standardized:
    """Rewrite l <= x <= u as nonnegative variables plus bound rows."""

    def __init__(self, prog: FeasibilityProgram):
        self.prog = prog
        self.exprs: list[tuple] = []
        ncols = 0
        bound_rows: list[tuple[int, Fraction]] = []  # (u column, width); slack added later
        for j in range(prog.num_vars):
            lo, hi = prog.lower[j], prog.upper[j]
            if lo is not None and hi is not None and lo == hi:
                self.exprs.append(("const", lo))
            elif lo is not None:
                self.exprs.append(("shift", ncols, lo))
                if hi is not None:
                    bound_rows.append((ncols, hi - lo))
                ncols += 1
            elif hi is not None:
                self.exprs.append(("mirror", ncols, hi))
                ncols += 1
            else:
                self.exprs.append(("free", ncols, ncols + 1))
                ncols += 2
        self.slack_of_row: dict[int, int] = {}
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        self.eq_sign: list[Fraction] = []
        for coeffs, b in prog.equalities:
            row = [ZERO] * ncols
            acc = b
            for j, a in enumerate(coeffs):
                if not a:
                    continue
                expr = self.exprs[j]
                if expr[0] == "const":
                    acc -= a * expr[1]
                elif expr[0] == "shift":
                    row[expr[1]] += a
                    acc -= a * expr[2]
                elif expr[0] == "mirror":
                    row[expr[1]] -= a
                    acc -= a * expr[2]
                else:
                    row[expr[1]] += a
                    row[expr[2]] -= a
            if acc < 0:
                rows.append([-v for v in row])
                rhs.append(-acc)
                self.eq_sign.append(-ONE)
            else:
                rows.append(row)
                rhs.append(acc)
                self.eq_sign.append(ONE)
        self.num_eq_rows = len(rows)
        self.ncols = ncols + len(bound_rows)
        for i in range(self.num_eq_rows):
            rows[i] = rows[i] + [ZERO] * len(bound_rows)
        for k, (col, width) in enumerate(bound_rows):
            row = [ZERO] * self.ncols
            row[col] = ONE
            row[ncols + k] = ONE  # slack
            rows.append(row)
            rhs.append(width)
            self.slack_of_row[self.num_eq_rows + k] = ncols + k
        self.rows = rows
        self.rhs = rhs

    def to_point(self, std: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = []
        for expr in self.exprs:
            if expr[0] == "const":
                out.append(expr[1])
            elif expr[0] == "shift":
                out.append(expr[2] + std[expr[1]])
            elif expr[0] == "mirror":
                out.append(expr[2] - std[expr[1]])
            else:
                out.append(std[expr[1]] - std[expr[2]])
        return tuple(out)

    def std_cost(self, objective: Sequence[Fraction]) -> list[Fraction]:
        cost = [ZERO] * self.ncols
        for j, c in enumerate(objective):
            if not c:
                continue
            expr = self.exprs[j]
            if expr[0] == "shift":
                cost[expr[1]] += c
            elif expr[0] == "mirror":
                cost[expr[1]] -= c
            elif expr[0] == "free":
                cost[expr[1]] += c
                cost[expr[2]] -= c
            # "const" contributes nothing to pivoting decisions
        return cost


class _Tableau:
    """Integer-row simplex tableau: row i stores value cells/den exactly."""

    def __init__(self, std: _Standardized):
        self.std = std
        self.m = len(std.rows)
        self.art0 = std.ncols
        self.nart = std.num_eq_rows
        self.width = std.ncols + self.nart + 1
        self.rows: list[list[int]] = []
        self.dens: list[int] = []
        self.basis: list[int] = []
        for i in range(self.m):
            vals = list(std.rows[i]) + [ZERO] * self.nart + [std.rhs[i]]
            if i < std.num_eq_rows:
                vals[self.art0 + i] = ONE
            den = 1
            for v in vals:
                if v:
                    den = _lcm(den, v.denominator)
            self.dens.append(den)
            self.rows.append([int(v * den) for v in vals])
            if i < std.num_eq_rows:
                self.basis.append(self.art0 + i)
            else:
                self.basis.append(std.slack_of_row[i])

    @staticmethod
    def _normalize(den: int, cells: list[int]) -> tuple[int, list[int]]:
        g = den
        for c in cells:
            if c:
                g = gcd(g, c)
                if g == 1:
                    return den, cells
        if g > 1:
            return den // g, [c // g for c in cells]
        return den, cells

    def _pivot(self, leave: int, enter: int, red: list[int], rden: int) -> tuple[list[int], int]:
        prow = self.rows[leave]
        pv = prow[enter]
        if pv < 0:
            prow = [-c for c in prow]
            pv = -pv
        for i in range(self.m):
            if i == leave:
                continue
            ri = self.rows[i]
            f = ri[enter]
            if f:
                cells = [c * pv - f * pr for c, pr in zip(ri, prow)]
                self.dens[i], self.rows[i] = self._normalize(self.dens[i] * pv, cells)
        f = red[enter]
        if f:
            cells = [c * pv - f * pr for c, pr in zip(red, prow)]
            rden, red = self._normalize(rden * pv, cells)
        self.dens[leave], self.rows[leave] = self._normalize(pv, prow)
        self.basis[leave] = enter
        return red, rden

    def _bland(self, red: list[int], rden: int, allow) -> tuple[list[int], int]:
        """Minimize, entering the smallest admissible column with negative
        reduced cost; smallest-basic-index tie-break on the ratio test."""
        last = self.width - 1
        while True:
            enter = -1
            for j in range(last):
                if red[j] < 0 and allow(j):
                    enter = j
                    break
            if enter < 0:
                return red, rden
            leave, bn, bd, bvar = -1, 0, 0, -1
            for i in range(self.m):
                a = self.rows[i][enter]
                if a > 0:
                    rn = self.rows[i][last]
                    if (
                        leave < 0
                        or rn * bd < bn * a
                        or (rn * bd == bn * a and self.basis[i] < bvar)
                    ):
                        bn, bd, leave, bvar = rn, a, i, self.basis[i]
            if leave < 0:
                raise UnboundedError("objective is unbounded over the feasible set")
            red, rden = self._pivot(leave, enter, red, rden)

    def phase1(self) -> Fraction:
        # reduced costs for min(sum of artificials); initial basis is identity
        rden = 1
        for i in range(self.std.num_eq_rows):
            rden = _lcm(rden, self.dens[i])
        red = [0] * self.width
        for i in range(self.std.num_eq_rows):
            f = rden // self.dens[i]
            for j, c in enumerate(self.rows[i]):
                if c:
                    red[j] -= f * c
        for k in range(self.nart):
            red[self.art0 + k] += rden
        rden, red = self._normalize(rden, red)
        art0 = self.art0
        red, rden = self._bland(red, rden, lambda j: j < art0)
        self._phase1_red = (red, rden)
        total = ZERO
        last = self.width - 1
        for i in range(self.m):
            if self.basis[i] >= art0:
                total += Fraction(self.rows[i][last], self.dens[i])
        return total

    def infeasibility_duals(self) -> list[Fraction]:
        """Phase-1 duals of the equality rows (cost 1 on artificials)."""
        red, rden = self._phase1_red
        return [
            ONE - Fraction(red[self.art0 + k], rden)
            for k in range(self.std.num_eq_rows)
        ]

    def purge_artificials(self) -> None:
        """Pivot zero-value artificials out of the basis; drop redundant rows."""
        i = 0
        while i < self.m:
            if self.basis[i] >= self.art0:
                enter = -1
                for j in range(self.art0):
                    if self.rows[i][j]:
                        enter = j
                        break
                if enter < 0:
                    del self.rows[i], self.dens[i], self.basis[i]
                    self.m -= 1
                    continue
                dummy = [0] * self.width
                self._pivot(i, enter, dummy, 1)
            i += 1

    def phase2(self, cost: Sequence[Fraction]) -> None:
        """Minimize cost (given over standard columns) from the current basis."""
        red_f = [cost[j] if j < len(cost) else ZERO for j in range(self.width)]
        red_f[-1] = ZERO
        for i in range(self.m):
            b = self.basis[i]
            cb = cost[b] if b < len(cost) else ZERO
            if cb:
                di = self.dens[i]
                for j, c in enumerate(self.rows[i]):
                    if c:
                        red_f[j] -= cb * Fraction(c, di)
        rden = 1
        for v in red_f:
            if v:
                rden = _lcm(rden, v.denominator)
        red = [int(v * rden) for v in red_f]
        art0 = self.art0
        self._bland(red, rden, lambda j: j < art0)

    def solution(self) -> list[Fraction]:
        x = [ZERO] * self.std.ncols
        last = self.width - 1
        for i in range(self.m):
            if self.basis[i] < self.std.ncols:
                x[self.basis[i]] = Fraction(self.rows[i][last], self.dens[i])
        return x


def _solve_continuous(
    prog: FeasibilityProgram,
    objective: Optional[Sequence[Fraction]] = None,
    sense: str = "min",
):
    """Phase 1 (+ optional phase 2).  Returns FeasibilityResult when no
    objective is given, else an OptimizeResult; raises on infeasible/unbounded
    optimization."""
    std = _Standardized(prog)
    tab = _Tableau(std)
    if tab.phase1() != 0:
        duals = tab.infeasibility_duals()
        mult = tuple(s * y for s, y in zip(std.eq_sign, duals))
        cert = FarkasCertificate(mult)
        if not cert.verify(prog):  # pragma: no cover - exact duals always verify
            cert = None
        if objective is None:
            return FeasibilityResult(False, None, cert)
        raise InfeasibleError("program is infeasible")
    tab.purge_artificials()
    if objective is None:
        x = std.to_point(tab.solution())
        if not witness_satisfies(prog, x):  # pragma: no cover - exactness guard
            raise LinearProgramError("internal error: witness failed re-verification")
        return FeasibilityResult(True, x, None)
    obj = [parse_rational(c) for c in objective]
    cost = std.std_cost(obj)
    if sense == "max":
        cost = [-c for c in cost]
    tab.phase2(cost)
    x = std.to_point(tab.solution())
    if not witness_satisfies(prog, x):  # pragma: no cover - exactness guard
        raise LinearProgramError("internal error: witness failed re-verification")
    value = sum((c * v for c, v in zip(obj, x)), ZERO)
    return OptimizeResult(value, x)


# ---------------------------------------------------------------------------
# binary enumeration


def _assignments(prog: FeasibilityProgram, limit: int):
    order = sorted(prog.binary)
    if len(order) > limit:
        raise EnumerationLimitError(
            "%d binary variables exceed the enumeration bound of %d"
            % (len(order), limit)
        )
    for bits in itertools.product((0, 1), repeat=len(order)):
        ok = True
        for j, bit in zip(order, bits):
            lo, hi = prog.lower[j], prog.upper[j]
            if (lo is not None and bit < lo) or (hi is not None and bit > hi):
                ok = False
                break
        if ok:
            yield dict(zip(order, bits))


def _pin(prog: FeasibilityProgram, fixing: dict[int, int]) -> FeasibilityProgram:
    lo = list(prog.lower)
    hi = list(prog.upper)
    for j, bit in fixing.items():
        lo[j] = hi[j] = Fraction(bit)
    return FeasibilityProgram(
        prog.num_vars, prog.equalities, tuple(lo), tuple(hi), frozenset()
    )


def solve_feasibility(
    prog: FeasibilityProgram, max_binary_vars: int = MAX_BINARY_VARS
) -> FeasibilityResult:
    """Exact verdict; a returned witness substitutes back with zero residual.

    Binary variables are handled by exhaustive enumeration in lexicographic
    assignment order, so the first feasible assignment is deterministic.
    """
    if not prog.binary:
        return _solve_continuous(prog)
    for fixing in _assignments(prog, max_binary_vars):
        res = _solve_continuous(_pin(prog, fixing))
        if res.feasible:
            return FeasibilityResult(True, res.witness, None)
    return FeasibilityResult(False, None, None)


def optimize(
    prog: FeasibilityProgram,
    objective: Sequence[RationalLike],
    sense: str = "max",
    max_binary_vars: int = MAX_BINARY_VARS,
) -> OptimizeResult:
    """Exact optimum and one optimizer over the feasible set."""
    if sense not in ("max", "min"):
        raise ValueError('sense must be "max" or "min"')
    obj = [parse_rational(c) for c in objective]
    if len(obj) != prog.num_vars:
        raise ValueError("objective length mismatch")
    if not prog.binary:
        return _solve_continuous(prog, obj, sense)
    best: Optional[OptimizeResult] = None
    for fixing in _assignments(prog, max_binary_vars):
        try:
            res = _solve_continuous(_pin(prog, fixing), obj, sense)
        except InfeasibleError:
            continue
        if best is None:
            best = res
        elif sense == "max" and res.value > best.value:
            best = res
        elif sense == "min" and res.value < best.value:
            best = res
    if best is None:
        raise InfeasibleError("program is infeasible")
    return best


def coordinate_range(
    prog: FeasibilityProgram, var_index: int, max_binary_vars: int = MAX_BINARY_VARS
) -> tuple[Fraction, Fraction]:
    """Exact min and max of one variable over the feasible set."""
    if not 0 <= var_index < prog.num_vars:
        raise ValueError("variable index out of range")
    objective = [ZERO] * prog.num_vars
    objective[var_index] = ONE
    lo = optimize(prog, objective, "min", max_binary_vars)
    hi = optimize(prog, objective, "max", max_binary_vars)
    return lo.value, hi.value
