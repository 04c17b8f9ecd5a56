"""Exact rational linear algebra and linear feasibility with Farkas output.

Two engines live here:

* ``solve_affine``: reduced row echelon over Q (via the fraction-free
  integer kernel), returning a particular solution plus a nullspace basis.

* ``lp_feasible``: decides ``{y : a_p . y + c_p >= 0 for all p}`` exactly.
  The system is passed to a phase-1 simplex on its Gale transpose
  ``{mu >= 0 : sum mu_p a_p = 0, sum mu_p c_p = -1}``, which keeps the
  basis size at ``width+1`` regardless of how many constraint rows there
  are.  Bland's smallest-index rule is used for both the entering and the
  leaving variable, so runs are deterministic and termination is
  guaranteed.  An infeasible outcome carries the Farkas multipliers read
  off the optimal basis; a feasible outcome carries a witness recovered
  from the phase-1 dual vector.

All pivoting is done in integer arithmetic (tableaus carry a common
denominator); rationals appear only at the interface.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

from .kernels import dot_int, ffgj, matvec_int, pivot_update, scan_entering


@dataclass
class RatMatrix:
    """Dense rational matrix; entries[i][j] is row i, column j."""

    rows: int
    cols: int
    entries: list[list[Fraction]]

    @staticmethod
    def zeros(rows: int, cols: int) -> "RatMatrix":
        return RatMatrix(rows, cols, [[Fraction(0)] * cols for _ in range(rows)])

    @staticmethod
    def from_rows(entries: Sequence[Sequence]) -> "RatMatrix":
        rows = [[Fraction(x) for x in row] for row in entries]
        ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged rows")
        return RatMatrix(len(rows), ncols, rows)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        e = self.entries
        return all(
            e[i][j] == e[j][i] for i in range(self.rows) for j in range(i)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (
            other.rows,
            other.cols,
            other.entries,
        )


@dataclass
class AffineSolution:
    """A particular solution and a basis of the homogeneous solutions."""

    particular: list[Fraction]
    nullspace: list[list[Fraction]]


def _scaled_int_row(row: Sequence[Fraction]) -> list[int]:
    """Clear denominators of a rational row (a positive row rescale)."""
    scale = lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * scale) for x in row]


def solve_affine(
    matrix: Union[RatMatrix, Sequence[Sequence]], rhs: Sequence
) -> AffineSolution | None:
    """Solve ``matrix @ x = rhs`` exactly; None when inconsistent.

    The nullspace basis vectors have a 1 in their free column and are
    linearly independent by construction.
    """
    if not isinstance(matrix, RatMatrix):
        matrix = RatMatrix.from_rows(matrix)
    rhs = [Fraction(x) for x in rhs]
    if len(rhs) != matrix.rows:
        raise ValueError(f"rhs length {len(rhs)} != {matrix.rows} rows")
    ncols = matrix.cols
    work = [
        _scaled_int_row(list(row) + [b]) for row, b in zip(matrix.entries, rhs)
    ]
    piv_cols, den = ffgj(work, ncols)
    for r in range(len(piv_cols), matrix.rows):
        if work[r][ncols] != 0:
            return None
    particular = [Fraction(0)] * ncols
    for r, c in enumerate(piv_cols):
        particular[c] = Fraction(work[r][ncols], den)
    pivot_set = set(piv_cols)
    nullspace = []
    for cf in range(ncols):
        if cf in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[cf] = Fraction(1)
        for r, c in enumerate(piv_cols):
            v[c] = Fraction(-work[r][cf], den)
        nullspace.append(v)
    return AffineSolution(particular=particular, nullspace=nullspace)


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix."""
    work = [_scaled_int_row([Fraction(x) for x in row]) for row in rows]
    if not work:
        return 0
    piv_cols, _ = ffgj(work, len(work[0]))
    return len(piv_cols)


@dataclass
class Feasible:
    witness: list[Fraction]


@dataclass
class Infeasible:
    multipliers: list[Fraction]


LpOutcome = Union[Feasible, Infeasible]

Constraint = tuple[Sequence, object]  # (a_p, c_p) meaning a_p . y + c_p >= 0


def _normalized_int_row(a: Sequence[Fraction], c: Fraction) -> tuple[list[int], Fraction]:
    """Integerize (a, c) by a positive scalar; returns (row, scalar)."""
    row = list(a) + [c]
    scale = lcm(*(x.denominator for x in row))
    ints = [int(x * scale) for x in row]
    g = gcd(*ints) if any(ints) else 1
    if g > 1:
        ints = [x // g for x in ints]
        scale = Fraction(scale, g)
    return ints, Fraction(scale)


def _phase1_pi(tableau: list[list[int]], basis: list[int], m: int) -> list[int]:
    # Price vector (times the tableau denominator): artificial columns cost
    # 1, real columns cost 0, so pi is the sum of the artificial basic rows.
    pi = [0] * m
    for r in range(m):
        if basis[r] < 0:
            row = tableau[r]
            for j in range(m):
                pi[j] += row[j]
    return pi


def _ratio_leaving(
    tableau: list[list[int]], u: list[int], basis: list[int], m: int, ncols: int
) -> int:
    """Bland leaving row: lexicographic (min ratio, smallest basic index)."""
    best = -1
    for r in range(m):
        if u[r] <= 0:
            continue
        if best < 0:
            best = r
            continue
        lhs = tableau[r][m - 1] * u[best]
        rhs = tableau[best][m - 1] * u[r]
        if lhs < rhs:
            best = r
        elif lhs == rhs:
            key_r = basis[r] if basis[r] >= 0 else ncols + r
            key_b = basis[best] if basis[best] >= 0 else ncols + best
            if key_r < key_b:
                best = r
    if best < 0:
        raise RuntimeError("phase-1 objective unbounded; input is corrupt")
    return best


def _lp_feasible_int(rows: Sequence[Sequence[int]]):
    """Feasibility of integer rows ``[a..., c]`` meaning ``a . y + c >= 0``.

    Returns ``("feasible", pi, pi_w)`` with scaled witness ``y = -pi/pi_w``
    (all integers, ``pi_w > 0``) or ``("infeasible", {row_index: Fraction})``
    with the nonzero Farkas multipliers.
    """
    width = len(rows[0]) - 1
    if all(row[width] >= 0 for row in rows):
        return ("feasible", [0] * width, 1)
    m = width + 1
    cols = [list(row[:width]) + [-row[width]] for row in rows]
    # tableau = den * B^{-1}; the right-hand side e_{m-1} makes the last
    # tableau column double as den * B^{-1} b, so no augmentation is kept.
    tableau = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    den = 1
    basis = [-1] * m  # -1: artificial variable of that row
    while True:
        pi = _phase1_pi(tableau, basis, m)
        j = scan_entering(cols, pi)
        if j < 0:
            break
        u = matvec_int(tableau, cols[j], m)
        r = _ratio_leaving(tableau, u, basis, m, len(cols))
        den = pivot_update(tableau, u, r, den)
        basis[r] = j
    objective = sum(tableau[r][m - 1] for r in range(m) if basis[r] < 0)
    if objective == 0:
        multipliers = {}
        for r in range(m):
            if basis[r] >= 0 and tableau[r][m - 1] != 0:
                multipliers[basis[r]] = Fraction(tableau[r][m - 1], den)
        acc = [0] * (width + 1)
        for p, mu in multipliers.items():
            row = rows[p]
            for j in range(width + 1):
                acc[j] += mu * row[j]
        if any(acc[:width]) or acc[width] >= 0:
            raise RuntimeError("Farkas multipliers failed re-verification")
        return ("infeasible", multipliers)
    pi = _phase1_pi(tableau, basis, m)
    if pi[width] <= 0:
        raise RuntimeError("phase-1 dual has non-positive homogenizer")
    return ("feasible", pi[:width], pi[width])


def lp_feasible(constraints: Sequence[Constraint]) -> LpOutcome:
    """Decide ``{y : a_p . y + c_p >= 0 for all p}`` exactly.

    The empty system is feasible with the zero witness.  Infeasible
    outcomes carry one multiplier per constraint with
    ``sum mu_p a_p = 0`` and ``sum mu_p c_p < 0``, re-verified before
    returning.
    """
    if not constraints:
        return Feasible(witness=[])
    parsed = []
    width = None
    for a, c in constraints:
        a = [Fraction(x) for x in a]
        if width is None:
            width = len(a)
        elif len(a) != width:
            raise ValueError("constraint rows have differing widths")
        parsed.append((a, Fraction(c)))
    int_rows = []
    scales = []
    for a, c in parsed:
        row, scale = _normalized_int_row(a, c)
        int_rows.append(row)
        scales.append(scale)
    outcome = _lp_feasible_int(int_rows)
    if outcome[0] == "infeasible":
        multipliers = [Fraction(0)] * len(parsed)
        for p, mu in outcome[1].items():
            multipliers[p] = mu * scales[p]
        return Infeasible(multipliers=multipliers)
    _, pi, pi_w = outcome
    witness = [Fraction(-z, pi_w) for z in pi]
    for a, c in parsed:
        value = sum(x * y for x, y in zip(a, witness)) + c
        if value < 0:
            raise RuntimeError("feasibility witness failed re-verification")
    return Feasible(witness=witness)
