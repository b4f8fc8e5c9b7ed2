"""Exact linear programming over the rationals.

Every cone query in this package (coherence, membership, previsions)
reduces to a small feasibility or optimization problem with Fraction
coefficients.  The solver is a two-phase simplex with Bland's pivot
rule: exact arithmetic throughout, guaranteed termination, and a
deterministic outcome for a given problem.

Strict inequalities never appear here.  Callers that need "not all
zero" or "strictly positive" encode it with a normalization row such
as sum(lambda) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

Rational = Fraction

NONNEG = "nonneg"
FREE = "free"
MAXIMIZE = "max"
MINIMIZE = "min"

INFEASIBLE = "infeasible"
FEASIBLE = "feasible"
BOUNDED = "bounded"
UNBOUNDED = "unbounded"


class MalformedProblemError(ValueError):
    """Raised for problems with no variables or undeclared names in a row."""


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def _freeze_row(coeffs: Mapping[str, object], rhs, names: frozenset[str]):
    frozen = []
    for name, c in coeffs.items():
        if name not in names:
            raise MalformedProblemError(f"row references undeclared variable {name!r}")
        c = _rat(c)
        if c != 0:
            frozen.append((name, c))
    return tuple(frozen), _rat(rhs)


class LpProblem:
    """Immutable exact-rational LP.

    variables: sequence of (name, sign) with sign "nonneg" or "free".
    equalities / inequalities: sequences of (coeffs, rhs) where coeffs maps
    variable names to rationals; an inequality row means coeffs . x <= rhs.
    objective: optional (coeffs, direction) with direction "max" or "min";
    None means a pure feasibility problem.
    """

    __slots__ = ("variables", "equalities", "inequalities", "objective")

    def __init__(self, variables, equalities=(), inequalities=(), objective=None):
        variables = tuple((str(n), s) for n, s in variables)
        if not variables:
            raise MalformedProblemError("a problem needs at least one variable")
        seen = set()
        for name, sign in variables:
            if sign not in (NONNEG, FREE):
                raise MalformedProblemError(f"unknown sign constraint {sign!r}")
            if name in seen:
                raise MalformedProblemError(f"duplicate variable {name!r}")
            seen.add(name)
        names = frozenset(seen)
        self.variables = variables
        self.equalities = tuple(_freeze_row(c, r, names) for c, r in equalities)
        self.inequalities = tuple(_freeze_row(c, r, names) for c, r in inequalities)
        if objective is None:
            self.objective = None
        else:
            coeffs, direction = objective
            if direction not in (MAXIMIZE, MINIMIZE):
                raise MalformedProblemError(f"unknown objective direction {direction!r}")
            row, _ = _freeze_row(coeffs, 0, names)
            self.objective = (row, direction)

    def __repr__(self):
        kind = "feasibility" if self.objective is None else self.objective[1]
        return (f"LpProblem({len(self.variables)} vars, {len(self.equalities)} eq, "
                f"{len(self.inequalities)} ineq, {kind})")


@dataclass(frozen=True)
class LpOutcome:
    """Certified result of solve().

    witness assigns a Rational to every variable and satisfies every
    constraint exactly.  For bounded problems, value is attained by the
    witness.  For unbounded problems, ray is a direction that keeps all
    constraints satisfied from the witness and strictly improves the
    objective for every positive step.
    """

    status: str
    witness: Optional[dict[str, Fraction]] = None
    value: Optional[Fraction] = None
    ray: Optional[dict[str, Fraction]] = None

    @property
    def is_feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    """Dense simplex tableau with Bland's rule.

    Columns: one per nonnegative variable, a (plus, minus) pair per free
    variable, then one slack per inequality, then one artificial per row
    that needs one.  All entries are Fractions.
    """

    def __init__(self, problem: LpProblem):
        self.problem = problem
        self.var_cols: dict[str, tuple[int, ...]] = {}
        ncols = 0
        for name, sign in problem.variables:
            if sign == NONNEG:
                self.var_cols[name] = (ncols,)
                ncols += 1
            else:
                self.var_cols[name] = (ncols, ncols + 1)
                ncols += 2
        self.n_struct = ncols

        zero = Fraction(0)
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        slack_of_row: list[int | None] = []

        def dense(coeffs) -> list[Fraction]:
            row = [zero] * self.n_struct
            for name, c in coeffs:
                cols = self.var_cols[name]
                row[cols[0]] += c
                if len(cols) == 2:
                    row[cols[1]] -= c
            return row

        for coeffs, b in problem.equalities:
            rows.append(dense(coeffs))
            rhs.append(b)
            slack_of_row.append(None)
        n_ineq = len(problem.inequalities)
        for k, (coeffs, b) in enumerate(problem.inequalities):
            rows.append(dense(coeffs))
            rhs.append(b)
            slack_of_row.append(k)
        # Slack block.
        one = Fraction(1)
        for i, row in enumerate(rows):
            row.extend([zero] * n_ineq)
            k = slack_of_row[i]
            if k is not None:
                row[self.n_struct + k] = one
        ncols = self.n_struct + n_ineq

        # Normalize to rhs >= 0, then pick an initial basis: a slack with
        # coefficient +1 where available, an artificial otherwise.
        self.basis: list[int] = []
        art_rows = []
        for i, row in enumerate(rows):
            if rhs[i] < 0:
                rows[i] = [-c for c in row]
                rhs[i] = -rhs[i]
            k = slack_of_row[i]
            if k is not None and rows[i][self.n_struct + k] == one:
                self.basis.append(self.n_struct + k)
            else:
                art_rows.append(i)
                self.basis.append(-1)  # placeholder
        self.n_before_art = ncols
        for i in art_rows:
            for row in rows:
                row.append(zero)
            rows[i][ncols] = one
            self.basis[i] = ncols
            ncols += 1
        self.A = rows
        self.b = rhs
        self.ncols = ncols

    # -- pivoting ------------------------------------------------------

    def _pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        if piv != 1:
            inv = 1 / piv
            self.A[i] = [c * inv for c in self.A[i]]
            self.b[i] *= inv
        row_i = self.A[i]
        b_i = self.b[i]
        for k, row in enumerate(self.A):
            if k == i:
                continue
            f = row[j]
            if f:
                self.A[k] = [c - f * d for c, d in zip(row, row_i)]
                self.b[k] -= f * b_i
        f = self.red[j]
        if f:
            self.red = [c - f * d for c, d in zip(self.red, row_i)]
            self.objval += f * b_i
        self.basis[i] = j

    def _set_costs(self, costs: list[Fraction]) -> None:
        """Install a maximize objective and price out the current basis."""
        red = list(costs)
        objval = Fraction(0)
        for i, col in enumerate(self.basis):
            f = red[col]
            if f:
                red = [c - f * d for c, d in zip(red, self.A[i])]
                objval += f * self.b[i]
        # Basic columns now have reduced cost exactly zero.
        self.red = red
        self.objval = objval

    def _bland(self, allowed: int) -> str:
        """Run Bland's rule over columns [0, allowed); returns optimal/unbounded."""
        while True:
            enter = -1
            for j in range(allowed):
                if self.red[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best = None
            for i, row in enumerate(self.A):
                a = row[enter]
                if a > 0:
                    ratio = self.b[i] / a
                    if best is None or ratio < best or (
                            ratio == best and self.basis[i] < self.basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                self.unbounded_col = enter
                return "unbounded"
            self._pivot(leave, enter)

    # -- phases --------------------------------------------------------

    def phase_one(self) -> bool:
        zero = Fraction(0)
        if self.ncols == self.n_before_art:
            self._set_costs([zero] * self.ncols)
            return True
        costs = [zero] * self.ncols
        for j in range(self.n_before_art, self.ncols):
            costs[j] = Fraction(-1)
        self._set_costs(costs)
        self._bland(self.ncols)
        if self.objval != 0:
            return False
        # Drive any zero-valued artificial out of the basis, or drop its
        # row if it is identically zero over the real columns.
        drop = []
        for i in range(len(self.A)):
            if self.basis[i] >= self.n_before_art:
                for j in range(self.n_before_art):
                    if self.A[i][j] != 0:
                        self._pivot(i, j)
                        break
                else:
                    drop.append(i)
        for i in reversed(drop):
            del self.A[i]
            del self.b[i]
            del self.basis[i]
        # Forget the artificial block.
        self.A = [row[: self.n_before_art] for row in self.A]
        self.ncols = self.n_before_art
        return True

    def phase_two(self) -> str:
        coeffs, direction = self.problem.objective
        zero = Fraction(0)
        costs = [zero] * self.ncols
        flip = -1 if direction == MINIMIZE else 1
        for name, c in coeffs:
            cols = self.var_cols[name]
            costs[cols[0]] += flip * c
            if len(cols) == 2:
                costs[cols[1]] -= flip * c
        self._set_costs(costs)
        return self._bland(self.ncols)

    # -- extraction ----------------------------------------------------

    def _col_values(self) -> list[Fraction]:
        vals = [Fraction(0)] * self.ncols
        for i, col in enumerate(self.basis):
            if col < self.ncols:
                vals[col] = self.b[i]
        return vals

    def witness(self) -> dict[str, Fraction]:
        vals = self._col_values()
        out = {}
        for name, _ in self.problem.variables:
            cols = self.var_cols[name]
            v = vals[cols[0]]
            if len(cols) == 2:
                v -= vals[cols[1]]
            out[name] = v
        return out

    def ray(self) -> dict[str, Fraction]:
        j = self.unbounded_col
        delta = [Fraction(0)] * self.ncols
        delta[j] = Fraction(1)
        for i, col in enumerate(self.basis):
            a = self.A[i][j]
            if a and col < self.ncols:
                delta[col] = -a
        out = {}
        for name, _ in self.problem.variables:
            cols = self.var_cols[name]
            v = delta[cols[0]]
            if len(cols) == 2:
                v -= delta[cols[1]]
            out[name] = v
        return out


def solve(problem: LpProblem) -> LpOutcome:
    """Solve exactly; deterministic for a fixed problem."""
    tab = _Tableau(problem)
    if not tab.phase_one():
        return LpOutcome(INFEASIBLE)
    if problem.objective is None:
        return LpOutcome(FEASIBLE, witness=tab.witness())
    status = tab.phase_two()
    if status == "unbounded":
        return LpOutcome(UNBOUNDED, witness=tab.witness(), ray=tab.ray())
    value = tab.objval
    if problem.objective[1] == MINIMIZE:
        value = -value
    return LpOutcome(BOUNDED, witness=tab.witness(), value=value)
