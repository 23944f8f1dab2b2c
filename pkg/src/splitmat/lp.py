"""
Exact linear programming over the rationals.

A dense two-phase tableau simplex with Bland's rule on `fractions.Fraction`
entries. It solves

    minimize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x_j >= 0 (j not free)

and never touches floating point, so optimal values and solutions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Collection, Sequence

from splitmat.linalg import Number, to_fraction
from splitmat.logging import logger

ZERO = Fraction(0)
ONE = Fraction(1)


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LinprogResult:
    status: LPStatus
    x: list[Fraction] | None = None
    fun: Fraction | None = None
    pivots: int = 0

    @property
    def success(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class _Tableau:
    rows: list[list[Fraction]]
    rhs: list[Fraction]
    basis: list[int]
    pivots: int

    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, c: int):
        row = self.rows[r]
        value = row[c]
        if value != ONE:
            row = [v / value if v else v for v in row]
            self.rows[r] = row
            self.rhs[r] /= value
        for i, other in enumerate(self.rows):
            if i == r or not (factor := other[c]):
                continue
            self.rows[i] = [a - factor * b if b else a for a, b in zip(other, row)]
            self.rhs[i] -= factor * self.rhs[r]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction], columns: range) -> list:
        reduced = list(cost[: columns.stop])
        for i, b in enumerate(self.basis):
            if weight := cost[b]:
                row = self.rows[i]
                for j in columns:
                    if row[j]:
                        reduced[j] -= weight * row[j]
        return reduced

    def optimize(self, cost: Sequence[Fraction], columns: range) -> bool:
        """Bland's rule; returns False when the objective is unbounded below."""
        while True:
            reduced = self.reduced_costs(cost, columns)
            in_basis = set(self.basis)
            entering = next(
                (j for j in columns if j not in in_basis and reduced[j] < 0), None
            )
            if entering is None:
                return True
            candidates = [
                (self.rhs[i] / self.rows[i][entering], self.basis[i], i)
                for i in range(len(self.rows))
                if self.rows[i][entering] > 0
            ]
            if not candidates:
                return False
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)


def linprog(
    c: Sequence[Number],
    A_ub: Sequence[Sequence[Number]] = (),
    b_ub: Sequence[Number] = (),
    A_eq: Sequence[Sequence[Number]] = (),
    b_eq: Sequence[Number] = (),
    free: Collection[int] = (),
) -> LinprogResult:
    num_vars = len(c)
    free = set(free)

    # structural columns: x_j, plus -x_j for free variables
    columns: list[tuple[int, int]] = [(j, 1) for j in range(num_vars)]
    columns += [(j, -1) for j in sorted(free)]
    width = len(columns)

    def expand(row: Sequence[Number]) -> list[Fraction]:
        values = [to_fraction(v) for v in row]
        return [sign * values[j] for j, sign in columns]

    constraints: list[tuple[list[Fraction], Fraction, bool]] = []
    constraints += [(expand(row), to_fraction(b), True) for row, b in zip(A_ub, b_ub)]
    constraints += [(expand(row), to_fraction(b), False) for row, b in zip(A_eq, b_eq)]

    num_slack = sum(1 for _, _, is_ub in constraints if is_ub)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    needs_artificial: list[int] = []
    slack = width
    for row, b, is_ub in constraints:
        full = row + [ZERO] * num_slack
        if is_ub:
            full[slack] = ONE
        if b < 0:
            full = [-v for v in full]
            b = -b
        if is_ub and full[slack] == ONE:
            basis.append(slack)
        else:
            basis.append(-1)
            needs_artificial.append(len(rows))
        if is_ub:
            slack += 1
        rows.append(full)
        rhs.append(b)

    real_width = width + num_slack
    for position, r in enumerate(needs_artificial):
        for i, row in enumerate(rows):
            row.append(ONE if i == r else ZERO)
        basis[r] = real_width + position
    tableau = _Tableau(rows, rhs, basis)
    total_width = real_width + len(needs_artificial)

    if needs_artificial:
        phase_one = [ZERO] * real_width + [ONE] * len(needs_artificial)
        tableau.optimize(phase_one, range(total_width))
        if sum(tableau.rhs[i] for i, b in enumerate(tableau.basis) if b >= real_width):
            logger.debug("lp infeasible after %s pivots", tableau.pivots)
            return LinprogResult(LPStatus.INFEASIBLE, pivots=tableau.pivots)
        _drive_out_artificials(tableau, real_width)

    cost = [to_fraction(c[j]) * sign for j, sign in columns]
    cost += [ZERO] * (total_width - width)
    if not tableau.optimize(cost, range(real_width)):
        return LinprogResult(LPStatus.UNBOUNDED, pivots=tableau.pivots)

    values = [ZERO] * total_width
    for i, b in enumerate(tableau.basis):
        values[b] = tableau.rhs[i]
    x = [ZERO] * num_vars
    for position, (j, sign) in enumerate(columns):
        x[j] += sign * values[position]
    fun = sum((to_fraction(c[j]) * x[j] for j in range(num_vars)), ZERO)
    logger.debug("lp optimal value %s after %s pivots", fun, tableau.pivots)
    return LinprogResult(LPStatus.OPTIMAL, x=x, fun=fun, pivots=tableau.pivots)


def _drive_out_artificials(tableau: _Tableau, real_width: int):
    redundant = []
    for i, b in enumerate(tableau.basis):
        if b < real_width:
            continue
        row = tableau.rows[i]
        column = next((j for j in range(real_width) if row[j]), None)
        if column is None:
            redundant.append(i)
        else:
            tableau.pivot(i, column)
    for i in reversed(redundant):
        del tableau.rows[i]
        del tableau.rhs[i]
        del tableau.basis[i]
