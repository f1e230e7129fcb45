"""Exact rational feasibility for homogeneous sign systems.

A system holds strict rows (<v,x> > 0), weak rows (<v,x> >= 0) and
equality rows (<v,x> = 0) over one dimension.  Feasibility is decided
by maximising a slack t with <v,x> >= t on every strict row inside the
box -1 <= x_j <= 1; the system is feasible exactly when the optimum is
positive.  All pivoting is exact rational simplex with Bland's rule, so
termination and soundness are unconditional.

The module also provides cone membership (is a target a nonnegative
combination of given generators), implemented as a revised phase-1
simplex.  Inference uses it heavily, so its inner loop works on sparse
integer columns where possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import Rational, Vector

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class HomogeneousSystem:
    """Conjunction of strict, weak and equality constraints through the origin."""

    dim: int
    strict: tuple[Vector, ...] = ()
    weak: tuple[Vector, ...] = ()
    equalities: tuple[Vector, ...] = ()

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        for group in (self.strict, self.weak, self.equalities):
            for v in group:
                if v.dim != self.dim:
                    raise ValueError(
                        f"row dimension {v.dim} does not match system dimension {self.dim}"
                    )

    def augmented(
        self,
        strict: Sequence[Vector] = (),
        weak: Sequence[Vector] = (),
        equalities: Sequence[Vector] = (),
    ) -> "HomogeneousSystem":
        return HomogeneousSystem(
            self.dim,
            self.strict + tuple(strict),
            self.weak + tuple(weak),
            self.equalities + tuple(equalities),
        )

    @property
    def size(self) -> int:
        return len(self.strict) + len(self.weak) + len(self.equalities)


class _Tableau:
    """Dense exact simplex on min c.z s.t. Az = b, z >= 0 with Bland's rule."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction]) -> None:
        self.n = len(rows[0]) if rows else 0
        self.m = len(rows)
        self.rows: list[list[Fraction]] = []
        for row, b in zip(rows, rhs):
            if b < 0:
                self.rows.append([-x for x in row] + [-b])
            else:
                self.rows.append(list(row) + [b])
        # one artificial per row forms the starting basis
        total = self.n + self.m
        for i, row in enumerate(self.rows):
            art = [_ZERO] * self.m
            art[i] = _ONE
            row[self.n : self.n] = art
        self.total = total
        self.basis = [self.n + i for i in range(self.m)]

    def _phase(self, cost: list[Fraction], allow: int) -> Fraction:
        """Run simplex to optimality for the given cost over columns < allow."""
        obj = list(cost) + [_ZERO]
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.rows[i]
                for j in range(self.total + 1):
                    if row[j]:
                        obj[j] -= cb * row[j]
        while True:
            enter = -1
            for j in range(allow):
                if j not in self.basis and obj[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return -obj[self.total]
            leave = -1
            best: Fraction | None = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[self.total] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                raise ArithmeticError("unbounded objective in exact simplex")
            self._pivot(leave, enter)
            cb = cost[enter]
            piv = self.rows[leave]
            factor = obj[enter]
            if factor:
                for j in range(self.total + 1):
                    if piv[j]:
                        obj[j] -= factor * piv[j]

    def _pivot(self, leave: int, enter: int) -> None:
        piv = self.rows[leave]
        inv = _ONE / piv[enter]
        self.rows[leave] = [x * inv for x in piv]
        piv = self.rows[leave]
        for i, row in enumerate(self.rows):
            if i == leave:
                continue
            f = row[enter]
            if f:
                self.rows[i] = [x - f * y for x, y in zip(row, piv)]
        self.basis[leave] = enter

    def solve(self, cost: list[Fraction]) -> tuple[bool, list[Fraction], Fraction]:
        """Phase 1 then phase 2.  Returns (feasible, solution, objective)."""
        phase1 = [_ZERO] * self.n + [_ONE] * self.m
        infeas = self._phase(phase1, self.total)
        if infeas > 0:
            return False, [], _ZERO
        # pivot surviving zero-value artificials out where possible
        for i in range(self.m):
            if self.basis[i] >= self.n:
                row = self.rows[i]
                for j in range(self.n):
                    if row[j]:
                        self._pivot(i, j)
                        break
        full = list(cost) + [_ZERO] * self.m
        value = self._phase(full, self.n)
        z = [_ZERO] * self.n
        for i, bi in enumerate(self.basis):
            if bi < self.n:
                z[bi] = self.rows[i][self.total]
        return True, z, value


def _max_slack(system: HomogeneousSystem) -> tuple[Fraction, Vector | None]:
    """Optimum of max t with strict rows held at >= t inside the unit box."""
    n = system.dim
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    slack_rows: list[list[Fraction]] = []

    def shifted(v: Vector, t_plus: Fraction, t_minus: Fraction) -> None:
        # <v, u - 1> >= t  becomes  <v,u> - tp + tm - s = <v, 1>
        row = [Fraction(c) for c in v.coords] + [t_plus, t_minus]
        rows.append(row)
        rhs.append(sum(v.coords, _ZERO))

    for v in system.strict:
        shifted(v, Fraction(-1), _ONE)
    for v in system.weak:
        shifted(v, _ZERO, _ZERO)
    for v in system.equalities:
        # exact equalities run as paired weak rows
        shifted(v, _ZERO, _ZERO)
        shifted(-v, _ZERO, _ZERO)
    surplus = len(rows)
    for j in range(n):
        row = [_ZERO] * (n + 2)
        row[j] = _ONE
        rows.append(row)
        rhs.append(Fraction(2))
    rows.append([_ZERO] * n + [_ONE, _ZERO])
    rhs.append(_ONE)

    m = len(rows)
    width = n + 2 + surplus + (m - surplus)
    tableau_rows = []
    for i, row in enumerate(rows):
        ext = row + [_ZERO] * (surplus + (m - surplus))
        if i < surplus:
            ext[n + 2 + i] = Fraction(-1)
        else:
            ext[n + 2 + surplus + (i - surplus)] = _ONE
        tableau_rows.append(ext)

    cost = [_ZERO] * width
    cost[n] = Fraction(-1)  # maximise t = tp - tm by minimising tm - tp
    cost[n + 1] = _ONE
    tab = _Tableau(tableau_rows, rhs)
    ok, z, value = tab.solve(cost)
    if not ok:
        return Fraction(-1), None
    t_star = -value
    witness = Vector([z[j] - 1 for j in range(n)])
    return t_star, witness


def feasible(system: HomogeneousSystem) -> bool:
    """True iff some x satisfies every strict, weak and equality row."""
    t_star, _ = _max_slack(system)
    return t_star > 0


def interior_witness(system: HomogeneousSystem) -> Vector | None:
    """A rational point satisfying the system, or None when infeasible.

    Strict rows hold with the best uniform margin available inside the
    unit box, which keeps the witness away from the cell boundary.
    """
    t_star, witness = _max_slack(system)
    if t_star > 0:
        return witness
    return None


class ConeSolver:
    """Membership oracle for the cone of a fixed generator list.

    member(target) answers whether target is a nonnegative rational
    combination of the generators, returning one such combination as a
    {generator index: coefficient} dict, or None.  Phase-1 revised
    simplex with Bland's rule; exact throughout.
    """

    def __init__(self, generators: Sequence[Vector], dim: int) -> None:
        self.dim = dim
        self.cols: list[list[tuple[int, Fraction]]] = []
        for g in generators:
            if g.dim != dim:
                raise ValueError("generator dimension mismatch")
            self.cols.append([(i, c) for i, c in enumerate(g.coords) if c])

    def member(self, target: Vector) -> dict[int, Fraction] | None:
        n = self.dim
        m = len(self.cols)
        b = [Fraction(c) for c in target.coords]
        sgn = [1 if x >= 0 else -1 for x in b]
        # artificial column i is sgn[i] * e_i, so the all-artificial basis
        # carries xB = |b| >= 0 and its inverse is diag(sgn) itself
        binv: list[list[Fraction]] = [
            [Fraction(sgn[i]) if i == j else _ZERO for j in range(n)]
            for i in range(n)
        ]
        xb = [abs(x) for x in b]
        basis = [m + i for i in range(n)]  # ids: 0..m-1 generators, m.. artificials

        def column(ident: int) -> list[tuple[int, Fraction]]:
            if ident < m:
                return self.cols[ident]
            i = ident - m
            return [(i, Fraction(sgn[i]))]

        while True:
            art_rows = [k for k, bi in enumerate(basis) if bi >= m]
            if not any(xb[k] for k in art_rows):
                break  # artificial mass zero: membership certified
            y = [_ZERO] * n
            for k in art_rows:
                row = binv[k]
                for i in range(n):
                    if row[i]:
                        y[i] += row[i]
            enter = -1
            for j in range(m):
                if j in basis:
                    continue
                acc = _ZERO
                for i, c in self.cols[j]:
                    if y[i]:
                        acc += y[i] * c
                if acc > 0:
                    enter = j
                    break
            if enter < 0:
                for j in range(m, m + n):
                    if j in basis:
                        continue
                    i = j - m
                    if _ONE - y[i] * sgn[i] < 0:
                        enter = j
                        break
            if enter < 0:
                return None  # optimum positive: target outside the cone
            col = column(enter)
            d = [_ZERO] * n
            for i, c in col:
                for k in range(n):
                    if binv[k][i]:
                        d[k] += binv[k][i] * c
            leave = -1
            best: Fraction | None = None
            for k in range(n):
                if d[k] > 0:
                    ratio = xb[k] / d[k]
                    if best is None or ratio < best or (
                        ratio == best and basis[k] < basis[leave]
                    ):
                        best = ratio
                        leave = k
            if leave < 0:
                raise ArithmeticError("phase-1 objective unbounded")
            inv = _ONE / d[leave]
            brow = [v * inv for v in binv[leave]]
            bx = xb[leave] * inv
            for k in range(n):
                if k == leave:
                    continue
                f = d[k]
                if f:
                    row = binv[k]
                    binv[k] = [a - f * bb for a, bb in zip(row, brow)]
                    xb[k] -= f * bx
            binv[leave] = brow
            xb[leave] = bx
            basis[leave] = enter

        coeffs: dict[int, Fraction] = {}
        for k, bi in enumerate(basis):
            if bi < m and xb[k]:
                coeffs[bi] = coeffs.get(bi, _ZERO) + xb[k]
        return coeffs


def cone_member(
    generators: Sequence[Vector], target: Vector
) -> dict[int, Fraction] | None:
    """One-shot nonnegative-combination test; see ConeSolver."""
    if target.is_zero():
        return {}
    if not generators:
        return None
    return ConeSolver(generators, target.dim).member(target)
