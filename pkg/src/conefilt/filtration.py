"""Level arithmetic for the cone chain between the SOS and PSD cones.

For each pair (n, d) the chain ``C_0 <= ... <= C_{k-n}`` either collapses
entirely (the classical equality cases: binary forms, quadratic forms,
ternary quartics) or collapses only on a prefix and is strictly
increasing afterwards.  ``profile`` reports that layout together with
``mu``, the number of strictly separating intermediate cones.

``level_bounds`` places a nonnegative circuit form in the chain from its
top vertex rank ``j``: membership in ``C_{j-n}`` always holds, and the
exact level ``j - n - 1`` may be claimed only under caller-asserted
extremality and non-SOS-ness (both are needed; neither is decidable
here).
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import Verdict, analyze, circuit_nonnegativity, NotCircuit
from .forms import Form
from .monomials import basis_size


def is_hilbert_case(n: int, d: int) -> bool:
    """True when every PSD form of this signature is a sum of squares."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    return n == 1 or d == 1 or (n, d) == (2, 2)


def collapsed_prefix(n: int) -> int:
    """Largest c with C_0 = ... = C_c in any non-collapsing case."""
    return 3 if n == 2 else n


@dataclass(frozen=True)
class FiltrationProfile:
    n: int
    d: int
    k: int
    hilbert: bool
    collapsed_prefix: int
    strict_chain: tuple[int, ...]
    mu: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "hilbert": self.hilbert,
            "collapsed_prefix": self.collapsed_prefix,
            "strict_chain": list(self.strict_chain),
            "mu": self.mu,
        }


def profile(n: int, d: int) -> FiltrationProfile:
    """Chain layout for (n, d): collapse prefix, strict chain, mu."""
    k = basis_size(n, d) - 1
    if is_hilbert_case(n, d):
        return FiltrationProfile(
            n=n,
            d=d,
            k=k,
            hilbert=True,
            collapsed_prefix=k - n,
            strict_chain=(),
            mu=0,
        )
    c = collapsed_prefix(n)
    mu = (k - n) - (n + 1) - (1 if n == 2 else 0)
    return FiltrationProfile(
        n=n,
        d=d,
        k=k,
        hilbert=False,
        collapsed_prefix=c,
        strict_chain=tuple(range(c, k - n + 1)),
        mu=mu,
    )


@dataclass(frozen=True)
class LevelReport:
    """Placement of a PSD circuit form in the chain.

    ``kind`` is one of ``sos`` (inside the SOS cone), ``upper_member``
    (``value`` is an index i with f in C_i), or ``exact`` (``value`` is
    the level i with f in C_{i+1} but not C_i).
    """

    kind: str
    value: int | None
    j_top: int
    assumed_extremal: bool
    assumed_not_sos: bool

    def to_json(self) -> dict:
        doc: dict = {"classification": self.kind, "j": self.j_top}
        if self.kind == "exact":
            doc["exact"] = self.value
        elif self.kind == "upper_member":
            doc["upper_member"] = self.value
        doc["assumptions"] = {
            "extremal": self.assumed_extremal,
            "not_sos": self.assumed_not_sos,
        }
        return doc


class ClassificationError(ValueError):
    """Input is not a nonnegative circuit form, or assertions contradict
    what the chain arithmetic allows."""


def level_bounds(
    f: Form, assert_extremal: bool = False, assert_not_sos: bool = False
) -> LevelReport:
    """Chain placement of ``f`` from its top vertex rank.

    Raises ClassificationError when ``f`` is not a PSD circuit form, when
    non-SOS-ness is asserted in a collapsing case, or when the asserted
    non-SOS-ness contradicts the rank floor (j >= 6 for n = 2, j >= 2n+1
    for n >= 3).
    """
    cd = analyze(f)
    if isinstance(cd, NotCircuit):
        raise ClassificationError(f"not a circuit form ({cd.condition}): {cd.reason}")
    verdict = circuit_nonnegativity(cd)
    if verdict is Verdict.NOT_PSD:
        raise ClassificationError("circuit form is not nonnegative")
    n, j = f.n, cd.j_top
    if assert_not_sos:
        if is_hilbert_case(n, cd.d):
            raise ClassificationError(
                f"(n, d) = ({n}, {cd.d}) admits no PSD form that is not SOS"
            )
        floor = 6 if n == 2 else 2 * n + 1
        if j < floor:
            raise ClassificationError(
                f"asserted non-SOS circuit form must have j >= {floor}, got j = {j}"
            )
    if assert_extremal and assert_not_sos:
        return LevelReport(
            kind="exact",
            value=j - n - 1,
            j_top=j,
            assumed_extremal=True,
            assumed_not_sos=True,
        )
    if j <= n - 1:
        return LevelReport(
            kind="sos",
            value=None,
            j_top=j,
            assumed_extremal=assert_extremal,
            assumed_not_sos=assert_not_sos,
        )
    return LevelReport(
        kind="upper_member",
        value=j - n,
        j_top=j,
        assumed_extremal=assert_extremal,
        assumed_not_sos=assert_not_sos,
    )
