"""Explicit separating forms for every strictly increasing chain step.

Three classical nonnegative-but-not-SOS circuit forms seed everything:
the Motzkin ternary sextic, the Choi-Lam ternary sextic and the Choi-Lam
quaternary quartic.  Embedding them along chosen variables (and
multiplying by squared variables) produces, for each level i of the
strict chain, a form lying in C_{i+1} but not C_i:

* degree 4 (n >= 3): three embedding patterns of the quartic, selected
  by the shape of the degree-2 monomial at rank n+i;
* degree 6: five patterns of the two sextics and a lifted quartic,
  selected by the degree-3 monomial at rank n+i (for n = 2 this
  degenerates to the four-member ternary family);
* degree >= 8: multiply a lower-degree separator by X_l^2, where l is
  the leading variable of the monomial at rank n+i+1 (top levels), or by
  X_0^2 (levels already present one degree down).

Every record is validated at construction: the form must be a
nonnegative circuit whose top vertex rank equals n + level + 1.  That
rank identity is what places the form at its level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import (
    CircuitDecomposition,
    Verdict,
    analyze,
    circuit_nonnegativity,
)
from .filtration import collapsed_prefix, is_hilbert_case
from .forms import Form, serialize_form
from .monomials import basis, basis_size


def base_motzkin() -> Form:
    """X0^4 X1^2 + X0^2 X1^4 + X2^6 - 3 X0^2 X1^2 X2^2."""
    return Form.from_terms(
        2, 6, [((4, 2, 0), 1), ((2, 4, 0), 1), ((0, 0, 6), 1), ((2, 2, 2), -3)]
    )


def base_choi_lam_sextic() -> Form:
    """X0^4 X1^2 + X1^4 X2^2 + X2^4 X0^2 - 3 X0^2 X1^2 X2^2."""
    return Form.from_terms(
        2, 6, [((4, 2, 0), 1), ((0, 4, 2), 1), ((2, 0, 4), 1), ((2, 2, 2), -3)]
    )


def base_choi_lam_quartic() -> Form:
    """X0^2 X1^2 + X0^2 X2^2 + X1^2 X2^2 + X3^4 - 4 X0 X1 X2 X3."""
    return Form.from_terms(
        3,
        4,
        [
            ((2, 2, 0, 0), 1),
            ((2, 0, 2, 0), 1),
            ((0, 2, 2, 0), 1),
            ((0, 0, 0, 4), 1),
            ((1, 1, 1, 1), -4),
        ],
    )


def _motzkin_in(n: int, a: int, b: int, c: int) -> Form:
    return base_motzkin().rename_variables({0: a, 1: b, 2: c}, n)


def _choi_lam_sextic_in(n: int, a: int, b: int, c: int) -> Form:
    return base_choi_lam_sextic().rename_variables({0: a, 1: b, 2: c}, n)


def _choi_lam_quartic_in(n: int, a: int, b: int, c: int, e: int) -> Form:
    return base_choi_lam_quartic().rename_variables({0: a, 1: b, 2: c, 3: e}, n)


@dataclass(frozen=True)
class SeparatorRecord:
    """A form in C_{level+1} but not C_{level}, with its construction trace."""

    level: int
    form: Form
    provenance: dict

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "form": serialize_form(self.form),
            "provenance": self.provenance,
        }


def _record(n: int, level: int, form: Form, provenance: dict) -> SeparatorRecord:
    cd = analyze(form)
    if not isinstance(cd, CircuitDecomposition):
        raise RuntimeError(
            f"generated separator is not a circuit form: {cd.reason}"
        )
    verdict = circuit_nonnegativity(cd)
    if verdict not in (Verdict.PSD_STRICT, Verdict.PSD_BOUNDARY):
        raise RuntimeError("generated separator is not nonnegative")
    if cd.j_top != n + level + 1:
        raise RuntimeError(
            f"generated separator has top rank {cd.j_top}, expected {n + level + 1}"
        )
    return SeparatorRecord(level=level, form=form, provenance=provenance)


def quartic_separator(n: int, i: int) -> SeparatorRecord:
    """Level-i separating quartic in n+1 variables, n >= 3.

    The embedding pattern is chosen by the degree-2 monomial at rank n+i:
    X_j X_n, X_j X_l (1 < j <= l < n) or the second-to-last monomial.
    """
    if n < 3:
        raise ValueError(f"separating quartics need n >= 3, got n={n}")
    k2 = basis_size(n, 2) - 1
    if not n <= i <= k2 - n - 1:
        raise ValueError(f"level {i} out of range {n}..{k2 - n - 1}")
    m = basis(n, 2).unrank(n + i)
    nz = [(pos, e) for pos, e in enumerate(m) if e]
    if len(nz) == 1:
        a = nz[0][0]  # m = X_a^2 with 2 <= a <= n-1
        form = _choi_lam_quartic_in(n, 1, a, a + 1, 0)
        case, vars_ = 2, (1, a, a + 1, 0)
    else:
        (a, _), (b, _) = nz
        if b == n and a == n - 1:
            form = _choi_lam_quartic_in(n, 0, 1, n - 1, n)
            case, vars_ = 3, (0, 1, n - 1, n)
        elif b == n:
            form = _choi_lam_quartic_in(n, 0, a, n, a + 1)
            case, vars_ = 1, (0, a, n, a + 1)
        else:
            form = _choi_lam_quartic_in(n, 1, a, b + 1, 0)
            case, vars_ = 2, (1, a, b + 1, 0)
    provenance = {
        "construction": "choi_lam_quartic",
        "case": case,
        "variables": list(vars_),
    }
    return _record(n, i, form, provenance)


def sextic_separator(n: int, i: int) -> SeparatorRecord:
    """Level-i separating sextic in n+1 variables, n >= 2.

    Five embedding patterns keyed by the degree-3 monomial at rank n+i;
    at n = 2 only four patterns occur and they reproduce the ternary
    family (two Motzkin embeddings and two Choi-Lam sextic embeddings).
    """
    if n < 2:
        raise ValueError(f"separating sextics need n >= 2, got n={n}")
    k2 = basis_size(n, 2) - 1
    k3 = basis_size(n, 3) - 1
    if not k2 - n <= i <= k3 - n - 1:
        raise ValueError(f"level {i} out of range {k2 - n}..{k3 - n - 1}")
    m = basis(n, 3).unrank(n + i)
    if m[0]:
        # rank n+i = k2 is the last monomial divisible by X0: X0 Xn^2
        form = _motzkin_in(n, 0, n, 1)
        provenance = {"construction": "motzkin", "case": 1, "variables": [0, n, 1]}
        return _record(n, i, form, provenance)
    nz = [(pos, e) for pos, e in enumerate(m) if e]
    if len(nz) == 1:
        a = nz[0][0]  # m = X_a^3, a <= n-1
        form = _choi_lam_sextic_in(n, 0, a, a + 1)
        prov = {"construction": "choi_lam_sextic", "case": 2, "variables": [0, a, a + 1]}
    elif len(nz) == 2 and nz[0][1] == 2:
        (a, _), (b, _) = nz  # m = X_a^2 X_b
        if b == n:
            form = _choi_lam_sextic_in(n, 0, a + 1, a)
            prov = {
                "construction": "choi_lam_sextic",
                "case": 3,
                "variables": [0, a + 1, a],
            }
        else:
            form = _choi_lam_sextic_in(n, 0, a, b + 1)
            prov = {
                "construction": "choi_lam_sextic",
                "case": 2,
                "variables": [0, a, b + 1],
            }
    elif len(nz) == 2:
        (a, _), (b, _) = nz  # m = X_a X_b^2
        if b == n:
            form = _motzkin_in(n, 0, a, a + 1)
            prov = {"construction": "motzkin", "case": 4, "variables": [0, a, a + 1]}
        else:
            form = _choi_lam_quartic_in(n, a, b, b + 1, 0).mul_monomial_square(a)
            prov = {
                "construction": "monomial_square_lift",
                "variable": a,
                "case": 5,
                "base": {
                    "construction": "choi_lam_quartic",
                    "variables": [a, b, b + 1, 0],
                },
            }
    else:
        (a, _), (b, _), (c, _) = nz  # m = X_a X_b X_c
        if c == n:
            form = _choi_lam_sextic_in(n, 0, b + 1, a)
            prov = {
                "construction": "choi_lam_sextic",
                "case": 3,
                "variables": [0, b + 1, a],
            }
        else:
            form = _choi_lam_quartic_in(n, a, b, c + 1, 0).mul_monomial_square(a)
            prov = {
                "construction": "monomial_square_lift",
                "variable": a,
                "case": 5,
                "base": {
                    "construction": "choi_lam_quartic",
                    "variables": [a, b, c + 1, 0],
                },
            }
    return _record(n, i, form, prov)


def degree_jump(n: int, d_target: int, i: int) -> SeparatorRecord:
    """Separator at a level that first appears at degree ``d_target``.

    The degree-``d_target`` monomial at rank n+i+1 is free of X0; dividing
    out its leading variable X_l lands on the rank that pins a separator
    one degree down, whose product with X_l^2 has top rank n+i+1 again.
    """
    if n < 2 or d_target < 4:
        raise ValueError(f"degree jumps need n >= 2 and degree >= 4")
    k_prev = basis_size(n, d_target - 1) - 1
    k_cur = basis_size(n, d_target) - 1
    if not k_prev - n <= i <= k_cur - n - 1:
        raise ValueError(
            f"level {i} out of range {k_prev - n}..{k_cur - n - 1} at degree {d_target}"
        )
    m = basis(n, d_target).unrank(n + i + 1)
    if m[0]:
        raise RuntimeError(f"rank {n + i + 1} monomial unexpectedly divisible by X0")
    l = next(pos for pos in range(1, n + 1) if m[pos])
    reduced = list(m)
    reduced[l] -= 1
    j = basis(n, d_target - 1).rank_index[tuple(reduced)] - n - 1
    base = separator(n, d_target - 1, j)
    form = base.form.mul_monomial_square(l)
    provenance = {
        "construction": "degree_jump",
        "variable": l,
        "base": base.provenance,
    }
    return _record(n, i, form, provenance)


def separator(n: int, d: int, i: int) -> SeparatorRecord:
    """The level-i separating form of degree 2d in n+1 variables."""
    if is_hilbert_case(n, d):
        raise ValueError(
            f"(n, d) = ({n}, {d}) has no separating forms: the chain collapses"
        )
    k = basis_size(n, d) - 1
    low = collapsed_prefix(n)
    if not low <= i <= k - n - 1:
        raise ValueError(f"level {i} out of range {low}..{k - n - 1}")
    if d == 2:
        return quartic_separator(n, i)
    if d == 3:
        if i >= basis_size(n, 2) - 1 - n:
            return sextic_separator(n, i)
    elif i >= basis_size(n, d - 1) - 1 - n:
        return degree_jump(n, d, i)
    base = separator(n, d - 1, i)
    form = base.form.mul_monomial_square(0)
    provenance = {
        "construction": "monomial_square_lift",
        "variable": 0,
        "base": base.provenance,
    }
    return _record(n, i, form, provenance)


def complete_set(n: int, d: int) -> list[SeparatorRecord]:
    """One separator per strict chain step; mu+1 records in total."""
    if is_hilbert_case(n, d):
        raise ValueError(
            f"(n, d) = ({n}, {d}) has no separating forms: the chain collapses"
        )
    k = basis_size(n, d) - 1
    return [separator(n, d, i) for i in range(collapsed_prefix(n), k - n)]
