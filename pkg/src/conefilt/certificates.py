"""Gram-matrix certificates: membership and non-membership, both replayable.

The Gram map sends a symmetric matrix ``A`` (indexed by the degree-d
monomial basis) to the form ``(m_0..m_k) A (m_0..m_k)^t``.  Its fiber
over ``f`` is an affine space computed exactly here: because each matrix
position contributes to a single product exponent, the defining system
decouples per degree-2d exponent and the fiber has a closed-form
particular solution and kernel basis (the generic solver in ``linalg``
re-derives the same fiber in the tests).

* Membership at level i: a Gram matrix of ``f`` supported on the leading
  ``(n+i+1) x (n+i+1)`` block, together with an exact nonnegativity
  verdict for ``f``.  Such a banded matrix exists iff every support
  exponent of ``f`` is a product of two basis monomials of rank <= n+i.

* Non-membership at level i: finitely many points of the level-i variety
  (sampled in the chart ``z_0 = 1``; trailing coordinates are free) such
  that no Gram matrix in the fiber is nonnegative on all of them.  The
  impossibility is established by an exact LP and shipped as Farkas
  multipliers.  Finite sampling cannot prove membership, so a feasible
  LP yields the honest outcome ``None`` (unknown).

``verify_certificate`` replays either certificate from scratch: it
re-evaluates the Gram map, the band condition, the variety equations and
the multiplier combination, and independently re-validates the fiber it
reconstructs (image, kernel, dimension count, linear independence), so a
defect anywhere in the producing path cannot survive verification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Union

from .circuits import (
    CircuitDecomposition,
    Verdict,
    analyze,
    circuit_nonnegativity,
)
from .forms import Form, coefficient_string
from .linalg import RatMatrix, _lp_feasible_int
from .kernels import dot_int
from .monomials import MonomialBasis, basis


class CertificateError(ValueError):
    """Invalid certificate input or a form without usable PSD evidence."""


@dataclass
class GramFiber:
    """The affine space of Gram matrices of one form."""

    n: int
    d: int
    k: int
    particular: RatMatrix
    kernel_basis: list[RatMatrix]

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)


@dataclass(frozen=True)
class VarietyPoint:
    """A rational point of the level-i variety in the chart z_0 = 1."""

    level: int
    z: tuple


@dataclass
class MembershipCertificate:
    level: int
    gram: RatMatrix
    psd_evidence: Verdict


@dataclass
class FarkasCertificate:
    level: int
    points: list[VarietyPoint]
    multipliers: list[Fraction]


Certificate = Union[MembershipCertificate, FarkasCertificate]


@dataclass(frozen=True)
class SampleSchedule:
    """Deterministic point schedule for the non-membership search.

    Chart coordinates run over the integer grid ``[-grid_radius,
    grid_radius]^n`` plus the unit and all-ones directions; free tail
    coordinates take the values ``0, +-1, +-2^e1, +-2^e2`` one coordinate
    at a time.  While the LP stays feasible the tail exponents double,
    up to ``max_tail_exponent`` (large tails emulate the limit points of
    the variety).  A nonzero seed shuffles the constraint order, which
    may select a different (equally valid) certificate.
    """

    grid_radius: int = 3
    tail_exponents: tuple[int, int] = (8, 16)
    max_tail_exponent: int = 64
    seed: int = 0

    def rounds(self) -> list[tuple[int, ...]]:
        out = [self.tail_exponents]
        e1, e2 = self.tail_exponents
        while 2 * e2 <= self.max_tail_exponent:
            e1, e2 = 2 * e1, 2 * e2
            out.append((e1, e2))
        return out


def _weight(s: int, t: int) -> int:
    return 1 if s == t else 2


def _sym_matrix(k: int, entries: dict[tuple[int, int], Fraction]) -> RatMatrix:
    m = RatMatrix.zeros(k + 1, k + 1)
    for (s, t), value in entries.items():
        m.entries[s][t] = value
        m.entries[t][s] = value
    return m


def gram_fiber(f: Form) -> GramFiber:
    """Particular Gram matrix and kernel basis of the Gram map at ``f``.

    For each degree-2d exponent the defining equation involves only the
    matrix positions whose basis ranks sum to it; the first such position
    carries the coefficient and every further position contributes one
    kernel vector with two nonzero entries.
    """
    if f.degree % 2 or f.degree < 2:
        raise ValueError(f"need even degree >= 2, got {f.degree}")
    d = f.degree // 2
    bas = basis(f.n, d)
    bas2 = basis(f.n, 2 * d)
    k = bas.k
    particular: dict[tuple[int, int], Fraction] = {}
    kernel: list[RatMatrix] = []
    for beta in bas2.exponents:
        decomps = bas.product_decompositions(beta, k)
        s0, t0 = decomps[0]
        coeff = f.coefficient(beta)
        if coeff:
            particular[(s0, t0)] = coeff / _weight(s0, t0)
        for s, t in decomps[1:]:
            kernel.append(
                _sym_matrix(
                    k,
                    {
                        (s0, t0): Fraction(_weight(s, t)),
                        (s, t): Fraction(-_weight(s0, t0)),
                    },
                )
            )
    return GramFiber(
        n=f.n, d=d, k=k, particular=_sym_matrix(k, particular), kernel_basis=kernel
    )


def gram_map(matrix: RatMatrix, n: int, d: int) -> Form:
    """The form represented by a symmetric matrix over the degree-d basis."""
    bas = basis(n, d)
    if matrix.rows != bas.k + 1 or matrix.cols != bas.k + 1:
        raise ValueError(f"matrix is not {bas.k + 1} x {bas.k + 1}")
    acc: dict[tuple, Fraction] = {}
    for s in range(matrix.rows):
        row = matrix.entries[s]
        for t in range(s, matrix.cols):
            value = row[t]
            if value:
                beta = tuple(a + b for a, b in zip(bas.exponents[s], bas.exponents[t]))
                acc[beta] = acc.get(beta, Fraction(0)) + _weight(s, t) * value
    return Form.from_terms(n, 2 * d, acc.items())


def psd_evidence(f: Form) -> Verdict:
    """Exact nonnegativity evidence, or CertificateError.

    Circuit forms are decided by the circuit-number test.  Forms whose
    support is entirely even with positive coefficients are nonnegative
    as sums of even monomials and count as strict evidence.
    """
    result = analyze(f)
    if isinstance(result, CircuitDecomposition):
        verdict = circuit_nonnegativity(result)
        if verdict is Verdict.NOT_PSD:
            raise CertificateError("form fails the circuit nonnegativity test")
        return verdict
    if f.terms and all(
        all(x % 2 == 0 for x in e) for e in f.terms
    ) and all(c > 0 for c in f.terms.values()):
        return Verdict.PSD_STRICT
    raise CertificateError(
        f"no nonnegativity evidence for this form ({result.reason})"
    )


def banded_gram(f: Form, level: int) -> MembershipCertificate | None:
    """Gram matrix of ``f`` confined to the leading block of size n+level+1.

    Returns None when some support exponent admits no decomposition
    within the block (the form lies outside the corresponding product
    span, so the method cannot place it at this level).
    """
    verdict = psd_evidence(f)
    d = f.degree // 2
    bas = basis(f.n, d)
    if not 0 <= level <= bas.k - f.n:
        raise ValueError(f"level {level} out of range 0..{bas.k - f.n}")
    bound = f.n + level
    entries: dict[tuple[int, int], Fraction] = {}
    for beta, coeff in f.terms.items():
        decomps = bas.product_decompositions(beta, bound)
        if not decomps:
            return None
        s0, t0 = decomps[0]
        entries[(s0, t0)] = coeff / _weight(s0, t0)
    return MembershipCertificate(
        level=level, gram=_sym_matrix(bas.k, entries), psd_evidence=verdict
    )


def _canon_num(value):
    """Normalize to int when integral, Fraction otherwise."""
    f = Fraction(value)
    return f.numerator if f.denominator == 1 else f


def sample_point(n: int, d: int, level: int, x_prime, tail) -> VarietyPoint:
    """Variety point from chart coordinates and free tail coordinates.

    The leading ``n + level + 1`` entries are the basis monomials at
    ``(1, x')``, which makes every quadric up to the level vanish; the
    remaining entries are copied from ``tail``.
    """
    bas = basis(n, d)
    if not 0 <= level <= bas.k - n:
        raise ValueError(f"level {level} out of range 0..{bas.k - n}")
    x_prime = [_canon_num(v) for v in x_prime]
    tail = [_canon_num(v) for v in tail]
    if len(x_prime) != n:
        raise ValueError(f"chart point length {len(x_prime)} != {n}")
    if len(tail) != bas.k - n - level:
        raise ValueError(f"tail length {len(tail)} != {bas.k - n - level}")
    x = [1] + x_prime
    z = []
    for alpha in bas.exponents[: n + level + 1]:
        value = 1
        for coord, e in zip(x, alpha):
            if e:
                value *= coord**e
        z.append(_canon_num(value))
    z.extend(tail)
    return VarietyPoint(level=level, z=tuple(z))


# --- the constraint system of the non-membership search ---------------------


def _functional_entries(matrix: RatMatrix) -> list[tuple[int, int, Fraction]]:
    """Upper-triangle nonzeros weighted so that q_A(z) = sum c * z_s * z_t."""
    out = []
    for s in range(matrix.rows):
        row = matrix.entries[s]
        for t in range(s, matrix.cols):
            if row[t]:
                out.append((s, t, _weight(s, t) * row[t]))
    return out


def evaluate_quadratic(matrix: RatMatrix, z) -> Fraction:
    """q_A(z) = z A z^t, exactly."""
    total = Fraction(0)
    for s, t, c in _functional_entries(matrix):
        total += c * z[s] * z[t]
    return Fraction(total)


class _ConstraintPool:
    """Deduplicated integer constraint rows over the fiber coordinates."""

    def __init__(self, fiber: GramFiber):
        self.k = fiber.k
        self.a0 = _functional_entries(fiber.particular)
        kernel = [_functional_entries(b) for b in fiber.kernel_basis]
        # kernel entries are integers by construction; flatten to indices
        # into the per-point product table
        self.kernel_flat = [
            [(s * (self.k + 1) + t, int(c)) for s, t, c in entries]
            for entries in kernel
        ]
        self.rows: list[list[int]] = []
        self.points: list[VarietyPoint] = []
        self.scales: list[Fraction] = []
        self._seen: set[tuple] = set()

    def add(self, point: VarietyPoint) -> None:
        z = point.z
        k1 = self.k + 1
        table = {}
        row = []
        for entries in self.kernel_flat:
            value = 0
            for idx, c in entries:
                prod = table.get(idx)
                if prod is None:
                    prod = z[idx // k1] * z[idx % k1]
                    table[idx] = prod
                value += c * prod
            row.append(value)
        const = Fraction(0)
        for s, t, c in self.a0:
            const += c * z[s] * z[t]
        row.append(const)
        den = 1
        for value in row:
            if isinstance(value, Fraction):
                den = den * value.denominator // gcd(den, value.denominator)
        ints = [int(v * den) if isinstance(v, Fraction) else v * den for v in row]
        g = gcd(*ints) if any(ints) else 1
        if g > 1:
            ints = [x // g for x in ints]
        key = tuple(ints)
        if key in self._seen:
            return
        self._seen.add(key)
        self.rows.append(ints)
        self.points.append(point)
        self.scales.append(Fraction(den, g))

    def permute(self, order: list[int]) -> None:
        self.rows = [self.rows[i] for i in order]
        self.points = [self.points[i] for i in order]
        self.scales = [self.scales[i] for i in order]


def _chart_points(n: int, radius: int) -> list[tuple[int, ...]]:
    """Integer grid plus unit and all-ones directions, zeros deduplicated."""
    seen = {}
    values = list(range(-radius, radius + 1))
    stack = [()]
    for _ in range(n):
        stack = [p + (v,) for p in stack for v in values]
    for p in stack:
        seen[p] = None
    for i in range(n):
        for sign in (1, -1):
            unit = tuple(sign if j == i else 0 for j in range(n))
            seen[unit] = None
    for sign in (1, -1):
        seen[tuple(sign for _ in range(n))] = None
    return list(seen)


def non_membership(
    f: Form, level: int, schedule: SampleSchedule | None = None
) -> FarkasCertificate | None:
    """Prove ``f`` has no level-``level`` nonnegative Gram matrix, or None.

    Constraints ``q_A(z_p) >= 0`` over the fiber coordinates are sampled
    per the schedule; an infeasible LP yields Farkas multipliers that are
    re-verified before being returned.  A feasible LP at every
    escalation stage returns None: the finite sample proves nothing
    either way (membership at this level may still fail).
    """
    if schedule is None:
        schedule = SampleSchedule()
    d = f.degree // 2
    bas = basis(f.n, d)
    if not 1 <= level <= bas.k - f.n - 1:
        raise ValueError(f"level {level} out of range 1..{bas.k - f.n - 1}")
    fiber = gram_fiber(f)
    pool = _ConstraintPool(fiber)
    tail_len = bas.k - f.n - level
    rng = random.Random(schedule.seed)

    charts = _chart_points(f.n, schedule.grid_radius)
    # visit contact points of f first: certificates live near its zeros
    charts.sort(key=lambda p: (abs(f.evaluate((1,) + p)), p))
    seen_tails: set[tuple] = set()

    def tails_for(exponents: tuple[int, ...]) -> list[tuple[int, ...]]:
        values = [1, -1]
        for e in exponents:
            values.extend((2**e, -(2**e)))
        out = []
        zero = tuple([0] * tail_len)
        if zero not in seen_tails:
            seen_tails.add(zero)
            out.append(zero)
        for pos in range(tail_len):
            for v in values:
                tail = tuple(v if j == pos else 0 for j in range(tail_len))
                if tail not in seen_tails:
                    seen_tails.add(tail)
                    out.append(tail)
        return out

    for exponents in schedule.rounds():
        new_tails = tails_for(exponents)
        for chart in charts:
            for tail in new_tails:
                pool.add(sample_point(f.n, d, level, chart, tail))
        if not pool.rows:
            continue
        if schedule.seed:
            order = list(range(len(pool.rows)))
            rng.shuffle(order)
            pool.permute(order)
        result = _search_infeasible(pool)
        if result is not None:
            indices, multipliers = result
            cert = FarkasCertificate(
                level=level,
                points=[pool.points[i] for i in indices],
                multipliers=[multipliers[i] * pool.scales[i] for i in indices],
            )
            ok, why = verify_certificate(f, cert)
            if not ok:
                raise RuntimeError(f"produced Farkas certificate is invalid: {why}")
            return cert
    return None


_BATCH = 512


def _search_infeasible(pool: _ConstraintPool):
    """Grow a prefix of the pool until its LP is infeasible or all rows hold.

    Returns (row indices, {index: multiplier}) or None when the full pool
    is feasible.
    """
    rows = pool.rows
    width = len(rows[0]) - 1
    active = min(_BATCH, len(rows))
    while True:
        outcome = _lp_feasible_int(rows[:active])
        if outcome[0] == "infeasible":
            multipliers = outcome[1]
            return sorted(multipliers), multipliers
        _, pi, pi_w = outcome
        # violated iff a.y + c < 0 for y = -pi/pi_w, i.e. dot(row, probe) > 0
        probe = list(pi) + [-pi_w]
        violated = -1
        for idx in range(active, len(rows)):
            if dot_int(rows[idx], probe) > 0:
                violated = idx
                break
        if violated < 0:
            return None
        active = min(len(rows), max(violated + 1, 2 * active))


# --- verification ------------------------------------------------------------


def _independent_by_private_coordinate(vectors: list[list[tuple[int, int]]]) -> bool:
    """Linear independence via a coordinate owned by a single vector each.

    ``vectors`` hold (flat index, value) pairs.  If every vector has a
    coordinate at which it is the only nonzero one, any vanishing linear
    combination must have all coefficients zero.
    """
    count: dict[int, int] = {}
    for vec in vectors:
        for idx, _ in vec:
            count[idx] = count.get(idx, 0) + 1
    return all(any(count[idx] == 1 for idx, _ in vec) for vec in vectors)


def _check_fiber(f: Form, fiber: GramFiber) -> str | None:
    """Independent validation that ``fiber`` is the full Gram fiber of f."""
    d = fiber.d
    if gram_map(fiber.particular, f.n, d) != f:
        return "particular matrix does not map to the form"
    size = fiber.k + 1
    expected = size * (size + 1) // 2 - len(basis(f.n, 2 * d))
    if len(fiber.kernel_basis) != expected:
        return f"kernel basis has {len(fiber.kernel_basis)} vectors, expected {expected}"
    flat = []
    for b in fiber.kernel_basis:
        if not gram_map(b, f.n, d).is_zero():
            return "kernel basis vector does not map to zero"
        flat.append(
            [(s * size + t, c) for s, t, c in _functional_entries(b)]
        )
    if not _independent_by_private_coordinate(flat):
        from .linalg import matrix_rank

        dense = []
        for vec in flat:
            row = [Fraction(0)] * (size * size)
            for idx, c in vec:
                row[idx] = c
            dense.append(row)
        if matrix_rank(dense) != len(flat):
            return "kernel basis vectors are linearly dependent"
    return None


def verify_certificate(f: Form, cert: Certificate) -> tuple[bool, str]:
    """Replay a certificate against a form; (ok, reason).

    Shares no conclusions with the producing code: the Gram map, band
    shape, variety equations, fiber validity and multiplier combination
    are all recomputed from the inputs.
    """
    try:
        if isinstance(cert, MembershipCertificate):
            return _verify_membership(f, cert)
        if isinstance(cert, FarkasCertificate):
            return _verify_farkas(f, cert)
    except (ValueError, ArithmeticError, IndexError) as exc:
        return False, f"verification error: {exc}"
    return False, f"unknown certificate type {type(cert).__name__}"


def _verify_membership(f: Form, cert: MembershipCertificate) -> tuple[bool, str]:
    if f.degree % 2 or f.degree < 2:
        return False, "form degree is not an even number >= 2"
    d = f.degree // 2
    bas = basis(f.n, d)
    if not 0 <= cert.level <= bas.k - f.n:
        return False, f"level {cert.level} out of range"
    gram = cert.gram
    if gram.rows != bas.k + 1 or gram.cols != bas.k + 1:
        return False, "gram matrix has the wrong size"
    if not gram.is_symmetric():
        return False, "gram matrix is not symmetric"
    bound = f.n + cert.level
    for s in range(bas.k + 1):
        for t in range(bas.k + 1):
            if max(s, t) > bound and gram.entries[s][t] != 0:
                return False, f"entry ({s},{t}) violates the band condition"
    if gram_map(gram, f.n, d) != f:
        return False, "gram matrix does not represent the form"
    try:
        verdict = psd_evidence(f)
    except CertificateError as exc:
        return False, str(exc)
    if verdict is not cert.psd_evidence:
        return False, "stored nonnegativity verdict does not match recomputation"
    return True, "ok"


def _verify_farkas(f: Form, cert: FarkasCertificate) -> tuple[bool, str]:
    if f.degree % 2 or f.degree < 2:
        return False, "form degree is not an even number >= 2"
    d = f.degree // 2
    bas = basis(f.n, d)
    k = bas.k
    if not 1 <= cert.level <= k - f.n - 1:
        return False, f"level {cert.level} out of range"
    if not cert.points or len(cert.points) != len(cert.multipliers):
        return False, "points and multipliers do not pair up"
    if any(mu < 0 for mu in cert.multipliers):
        return False, "negative multiplier"
    if all(mu == 0 for mu in cert.multipliers):
        return False, "all multipliers are zero"
    quadrics = [bas.quadric_spec(i) for i in range(1, cert.level + 1)]
    for point in cert.points:
        if point.level != cert.level:
            return False, "point level does not match certificate level"
        z = point.z
        if len(z) != k + 1:
            return False, "point has the wrong length"
        if z[0] != 1:
            return False, "point is outside the z0 = 1 chart"
        for q in quadrics:
            if z[0] * z[f.n + q.i] - z[q.s] * z[q.t] != 0:
                return False, f"point violates the level-{q.i} quadric"
    fiber = gram_fiber(f)
    defect = _check_fiber(f, fiber)
    if defect:
        return False, f"fiber reconstruction failed: {defect}"
    kernel_entries = [_functional_entries(b) for b in fiber.kernel_basis]
    a0_entries = _functional_entries(fiber.particular)
    combo = [Fraction(0)] * len(kernel_entries)
    const = Fraction(0)
    for point, mu in zip(cert.points, cert.multipliers):
        if mu == 0:
            continue
        z = point.z
        for m, entries in enumerate(kernel_entries):
            value = Fraction(0)
            for s, t, c in entries:
                value += c * z[s] * z[t]
            combo[m] += mu * value
        c_p = Fraction(0)
        for s, t, c in a0_entries:
            c_p += c * z[s] * z[t]
        const += mu * c_p
    if any(combo):
        return False, "multiplier combination does not cancel the fiber directions"
    if const >= 0:
        return False, "multiplier combination is not negative on the constant term"
    return True, "ok"


# --- JSON interchange ---------------------------------------------------------


def _parse_rat(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise CertificateError(f"bad rational literal {text!r}") from exc
    raise CertificateError(f"bad rational literal {text!r}")


def _num_string(value) -> str:
    return coefficient_string(Fraction(value))


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, MembershipCertificate):
        return {
            "kind": "member",
            "level": cert.level,
            "psd": cert.psd_evidence.value,
            "gram": [[_num_string(x) for x in row] for row in cert.gram.entries],
        }
    if isinstance(cert, FarkasCertificate):
        return {
            "kind": "nonmember",
            "level": cert.level,
            "points": [[_num_string(x) for x in p.z] for p in cert.points],
            "multipliers": [_num_string(mu) for mu in cert.multipliers],
        }
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def certificate_from_json(doc) -> Certificate:
    if not isinstance(doc, dict):
        raise CertificateError("certificate document must be a JSON object")
    kind = doc.get("kind")
    level = doc.get("level")
    if not isinstance(level, int):
        raise CertificateError("certificate level must be an int")
    if kind == "member":
        gram = doc.get("gram")
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise CertificateError("gram must be a matrix")
        entries = [[_parse_rat(x) for x in row] for row in gram]
        if any(len(row) != len(entries) for row in entries):
            raise CertificateError("gram matrix is not square")
        psd = doc.get("psd")
        try:
            verdict = Verdict(psd)
        except ValueError as exc:
            raise CertificateError(f"bad psd verdict {psd!r}") from exc
        return MembershipCertificate(
            level=level,
            gram=RatMatrix(len(entries), len(entries), entries),
            psd_evidence=verdict,
        )
    if kind == "nonmember":
        points = doc.get("points")
        multipliers = doc.get("multipliers")
        if not isinstance(points, list) or not isinstance(multipliers, list):
            raise CertificateError("points and multipliers must be lists")
        parsed_points = [
            VarietyPoint(
                level=level, z=tuple(_canon_num(_parse_rat(x)) for x in p)
            )
            for p in points
        ]
        return FarkasCertificate(
            level=level,
            points=parsed_points,
            multipliers=[_parse_rat(x) for x in multipliers],
        )
    raise CertificateError(f"unknown certificate kind {kind!r}")
