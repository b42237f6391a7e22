"""Two-phase primal simplex over exact rationals or doubles.

Standard form only: maximize c.x subject to A x = b, x >= 0.  Bland's
pivot rule throughout, which guarantees termination in exact mode;
float mode runs the same code with epsilon comparisons and an iteration
cap (a stall raises NumericalFailure rather than returning a wrong
"optimal").
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .errors import InvalidArgument, NumericalFailure

FLOAT_EPS = 1e-9


@dataclass(frozen=True)
class LpInstance:
    objective: tuple      # c (maximize)
    A: tuple              # m rows of length n
    b: tuple
    exact: bool = True

    def __post_init__(self):
        n = len(self.objective)
        if n == 0 or len(self.A) == 0:
            raise InvalidArgument("need at least one row and one column")
        if any(len(row) != n for row in self.A):
            raise InvalidArgument("constraint row length mismatch")
        if len(self.b) != len(self.A):
            raise InvalidArgument("right-hand side length mismatch")
        if self.exact:
            data = list(self.objective) + list(self.b) + \
                [v for row in self.A for v in row]
            if not all(isinstance(v, (int, Fraction)) for v in data):
                raise InvalidArgument("exact instances need rational data")

    @property
    def m(self):
        return len(self.A)

    @property
    def n(self):
        return len(self.objective)


@dataclass(frozen=True)
class LpSolution:
    status: str                      # optimal | infeasible | unbounded
    x: Optional[tuple] = None
    objective_value: Optional[object] = None
    dual: Optional[tuple] = None
    basis: Optional[tuple] = None


def _num(v, exact):
    return Fraction(v) if exact else float(v)


def _pivot(T, basis, row, col):
    pr = T[row]
    pv = pr[col]
    T[row] = [v / pv for v in pr]
    pr = T[row]
    for i, r in enumerate(T):
        if i != row and r[col] != 0:
            f = r[col]
            T[i] = [a - f * c for a, c in zip(r, pr)]
    basis[row] = col


def _run(T, basis, cost, ncols, eps, cap):
    """Bland-rule simplex on an explicit tableau (rhs in the last column).
    Returns 'optimal' or 'unbounded'."""
    iters = 0
    while True:
        iters += 1
        if cap is not None and iters > cap:
            raise NumericalFailure(
                f"no convergence within {cap} simplex iterations")
        entering = None
        for j in range(ncols):
            if j in basis:
                continue
            r = cost[j] - sum(cost[basis[i]] * T[i][j]
                              for i in range(len(T)))
            if r > eps:
                entering = j
                break
        if entering is None:
            return "optimal"
        leaving = None
        best_ratio = None
        for i in range(len(T)):
            a = T[i][entering]
            if a > eps:
                ratio = T[i][-1] / a
                if (best_ratio is None or ratio < best_ratio or
                        (ratio == best_ratio and basis[i] < basis[leaving])):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            return "unbounded"
        _pivot(T, basis, leaving, entering)


def solve(instance: LpInstance) -> LpSolution:
    exact = instance.exact
    eps = Fraction(0) if exact else FLOAT_EPS
    m, n = instance.m, instance.n
    cap = None if exact else 10 * (m + n) ** 2

    A = [[_num(v, exact) for v in row] for row in instance.A]
    b = [_num(v, exact) for v in instance.b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0

    # Phase I: artificial columns n..n+m-1
    T = [A[i] + [one if j == i else zero for j in range(m)] + [b[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    cost1 = [zero] * n + [-one] * m
    _run(T, basis, cost1, n + m, eps, cap)
    infeas = sum(T[i][-1] for i in range(len(T)) if basis[i] >= n)
    infeas_tol = 0 if exact else FLOAT_EPS * _scale(instance)
    if infeas > infeas_tol:
        return LpSolution(status="infeasible")

    # drive leftover artificials out of the basis; drop redundant rows
    keep_rows = list(range(m))
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n)
                        if abs(T[i][j]) > (eps if not exact else 0)
                        and j not in basis), None)
            if col is None:
                del T[i], basis[i], keep_rows[i]
                continue
            _pivot(T, basis, i, col)
        i += 1

    # Phase II on the original columns
    T2 = [row[:n] + [row[-1]] for row in T]
    cost2 = [_num(v, exact) for v in instance.objective]
    status = _run(T2, basis, cost2, n, eps, cap)
    if status == "unbounded":
        return LpSolution(status="unbounded")

    x = [zero] * n
    for i, bi in enumerate(basis):
        x[bi] = T2[i][-1]
    value = sum(c * v for c, v in zip(cost2, x))
    dual = _dual_from_basis(instance, basis, keep_rows, exact)
    return LpSolution(status="optimal", x=tuple(x), objective_value=value,
                      dual=dual, basis=tuple(basis))


def _scale(instance):
    return max([1.0] + [abs(float(v)) for v in instance.b])


def _dual_from_basis(instance, basis, keep_rows, exact):
    """Multipliers y with y.A_B = c_B, solved from the original data;
    dropped redundant rows get y = 0."""
    k = len(basis)
    AT = [[_num(instance.A[keep_rows[i]][basis[j]], exact)
           for i in range(k)] for j in range(k)]
    cB = [_num(instance.objective[bi], exact) for bi in basis]
    if exact:
        y = linalg.solve_square(AT, cB)
    else:
        import numpy as np
        try:
            y = list(np.linalg.solve(np.array(AT, dtype=float),
                                     np.array(cB, dtype=float)))
        except np.linalg.LinAlgError:
            y = None
    if y is None:
        return None
    full = [Fraction(0) if exact else 0.0] * instance.m
    for i, row in enumerate(keep_rows):
        full[row] = y[i]
    return tuple(full)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.ok


def verify_certificate(instance: LpInstance, solution: LpSolution,
                       tol: float = FLOAT_EPS) -> VerifyResult:
    """Re-check an optimality certificate by pure re-evaluation: primal
    feasibility, dual feasibility (reduced costs <= 0), and zero duality
    gap.  Shares no state with the solver."""
    if solution.status != "optimal":
        return VerifyResult(False, "not an optimality claim")
    if solution.x is None or solution.dual is None:
        return VerifyResult(False, "missing primal or dual vector")
    exact = instance.exact
    eps = 0 if exact else tol * _scale(instance)
    x, y = solution.x, solution.dual
    for xi in x:
        if xi < -eps:
            return VerifyResult(False, "primal infeasible")
    for row, rhs in zip(instance.A, instance.b):
        resid = sum(a * v for a, v in zip(row, x)) - rhs
        if abs(resid) > eps:
            return VerifyResult(False, "primal infeasible")
    for j in range(instance.n):
        reduced = instance.objective[j] - sum(
            instance.A[i][j] * y[i] for i in range(instance.m))
        if reduced > eps:
            return VerifyResult(False, "dual infeasible")
    gap = sum(c * v for c, v in zip(instance.objective, x)) - \
        sum(bi * yi for bi, yi in zip(instance.b, y))
    if abs(gap) > eps:
        return VerifyResult(False, "duality gap")
    if solution.objective_value is not None:
        diff = sum(c * v for c, v in zip(instance.objective, x)) - \
            solution.objective_value
        if abs(diff) > eps:
            return VerifyResult(False, "duality gap")
    return VerifyResult(True)


def dump_lp(instance: LpInstance) -> str:
    """Debug dump: one line per row, rationals as p/q."""
    def fmt(v):
        return str(Fraction(v)) if instance.exact else repr(float(v))
    lines = ["max " + " ".join(fmt(c) for c in instance.objective)]
    for row, rhs in zip(instance.A, instance.b):
        lines.append(" ".join(fmt(v) for v in row) + " = " + fmt(rhs))
    return "\n".join(lines) + "\n"
