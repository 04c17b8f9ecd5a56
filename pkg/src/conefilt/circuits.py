"""Recognition and exact nonnegativity of circuit forms.

A circuit form is supported on the vertex set of a simplex of even
exponents plus a single extra exponent lying strictly inside that
simplex, with positive vertex coefficients and unique positive
barycentric weights.  ``analyze`` recovers that structure or reports the
first violated condition (evenness, positivity, count, independence,
interiority — in that order, matching the definition).

Nonnegativity of a circuit form is decided by comparing the inner
coefficient against the circuit number ``Theta = prod (f_l / lambda_l) ^
lambda_l``.  ``Theta`` is generally irrational, so the comparison raises
both sides to the power ``N = lcm`` of the weight denominators and
compares exact rationals; no roots are ever evaluated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Union

from .forms import Form, coefficient_string
from .linalg import matrix_rank, solve_affine
from .monomials import Exponent, basis


class Verdict(enum.Enum):
    PSD_STRICT = "strict"
    PSD_BOUNDARY = "boundary"
    NOT_PSD = "not_psd"


@dataclass(frozen=True)
class CircuitDecomposition:
    """The simplex-plus-inner-point structure of a circuit form.

    Vertex data is sorted by rank in the half-degree monomial basis;
    ``lambdas`` are the barycentric weights of the inner exponent and
    ``j_top`` the largest vertex rank.
    """

    n: int
    d: int
    vertex_ranks: tuple[int, ...]
    vertex_coeffs: tuple[Fraction, ...]
    inner_exponent: Exponent
    inner_coeff: Fraction
    lambdas: tuple[Fraction, ...]
    j_top: int


@dataclass(frozen=True)
class NotCircuit:
    """Why a form is not a circuit form; ``condition`` names the first
    violated clause of the definition."""

    condition: str
    reason: str


AnalyzeResult = Union[CircuitDecomposition, NotCircuit]


def _barycentric(points: list[Exponent], target: Exponent):
    """Affine weights of target over points: unique solution or None.

    Returns (weights, unique) where unique is False when the points are
    affinely dependent (weights then are one valid solution).
    """
    nrows = len(target) + 1
    matrix = [[Fraction(1)] * len(points)]
    for i in range(len(target)):
        matrix.append([Fraction(p[i]) for p in points])
    rhs = [Fraction(1)] + [Fraction(t) for t in target]
    assert len(matrix) == nrows
    sol = solve_affine(matrix, rhs)
    if sol is None:
        return None, True
    return sol.particular, not sol.nullspace


def analyze(f: Form) -> AnalyzeResult:
    """Circuit decomposition of ``f``, or the first failed condition."""
    if f.degree % 2:
        raise ValueError(f"degree {f.degree} is odd; circuit forms have degree 2d")
    d = f.degree // 2
    support = f.support()
    odd = [e for e in support if any(x % 2 for x in e)]
    if len(odd) > 1:
        return NotCircuit(
            "evenness",
            f"{len(odd)} support exponents have odd entries; only the inner term may",
        )
    if len(odd) == 1:
        inner = odd[0]
        vertices = [e for e in support if e != inner]
    else:
        inner, vertices = _find_interior_point(support)
        if inner is None:
            return NotCircuit(
                "count",
                "support is not a vertex set plus one interior exponent (no inner term)",
            )
    if len(vertices) < 2:
        return NotCircuit("count", "fewer than two vertex exponents")
    bad = [e for e in vertices if f.terms[e] <= 0]
    if bad:
        return NotCircuit(
            "positivity", f"vertex exponent {bad[0]} has non-positive coefficient"
        )
    if len(vertices) > f.n + 2:
        return NotCircuit(
            "count",
            f"{len(vertices)} vertices exceed the simplex bound n+2 = {f.n + 2}",
        )
    homogenized = [[1] + list(v) for v in vertices]
    if matrix_rank(homogenized) != len(vertices):
        return NotCircuit("independence", "vertex exponents are affinely dependent")
    lambdas, unique = _barycentric(vertices, inner)
    assert unique  # vertices independent
    if lambdas is None or any(l < 0 for l in lambdas):
        # The inner candidate lies outside the simplex, so it is itself a
        # hull vertex; with odd entries that breaks evenness, with even
        # entries the support has no interior point.
        if any(x % 2 for x in inner):
            return NotCircuit(
                "evenness", "the odd-entry support exponent is a hull vertex"
            )
        return NotCircuit("count", "support has no interior exponent")
    if any(l == 0 for l in lambdas):
        return NotCircuit(
            "interiority", "inner exponent lies on a proper face, not strictly inside"
        )
    half_basis = basis(f.n, d)
    ranked = sorted(
        zip(vertices, lambdas),
        key=lambda item: half_basis.rank_index[_half(item[0])],
    )
    vertex_ranks = tuple(half_basis.rank_index[_half(v)] for v, _ in ranked)
    return CircuitDecomposition(
        n=f.n,
        d=d,
        vertex_ranks=vertex_ranks,
        vertex_coeffs=tuple(f.terms[v] for v, _ in ranked),
        inner_exponent=inner,
        inner_coeff=f.terms[inner],
        lambdas=tuple(lam for _, lam in ranked),
        j_top=vertex_ranks[-1],
    )


def _half(exponent: Exponent) -> Exponent:
    return tuple(x // 2 for x in exponent)


def _find_interior_point(support: list[Exponent]):
    """All-even support: the unique exponent strictly inside the others'
    simplex, if there is one."""
    for p in support:
        others = [e for e in support if e != p]
        if len(others) < 2:
            continue
        lambdas, unique = _barycentric(others, p)
        if lambdas is not None and unique and all(l > 0 for l in lambdas):
            return p, others
    return None, None


def circuit_nonnegativity(cd: CircuitDecomposition) -> Verdict:
    """Exact circuit-number test.

    With ``Theta = prod (f_l / lambda_l)^lambda_l``: an even inner exponent
    is nonnegative iff ``f_b >= -Theta``, an odd one iff ``|f_b| <= Theta``;
    equality is the boundary verdict.  Both sides are raised to the lcm of
    the weight denominators, so only rationals are compared.
    """
    power = lcm(*(lam.denominator for lam in cd.lambdas))
    theta_pow = Fraction(1)
    for coeff, lam in zip(cd.vertex_coeffs, cd.lambdas):
        theta_pow *= (coeff / lam) ** int(lam * power)
    g = cd.inner_coeff
    even_inner = all(x % 2 == 0 for x in cd.inner_exponent)
    if even_inner and g >= 0:
        return Verdict.PSD_STRICT
    lhs = abs(g) ** power
    if lhs < theta_pow:
        return Verdict.PSD_STRICT
    if lhs == theta_pow:
        return Verdict.PSD_BOUNDARY
    return Verdict.NOT_PSD


def j_of(cd: CircuitDecomposition) -> int:
    """Largest vertex rank in the half-degree basis."""
    return cd.j_top


def decomposition_to_json(cd: CircuitDecomposition, verdict: Verdict) -> dict:
    return {
        "vertex_ranks": list(cd.vertex_ranks),
        "vertex_coefficients": [coefficient_string(c) for c in cd.vertex_coeffs],
        "inner_exponent": list(cd.inner_exponent),
        "inner_coefficient": coefficient_string(cd.inner_coeff),
        "lambdas": [coefficient_string(l) for l in cd.lambdas],
        "j": cd.j_top,
        "psd": verdict.value,
    }
