"""Exponent combinatorics for the degree-d monomial basis.

Monomials in ``n+1`` variables of total degree ``d`` are ordered by
descending lexicographic order on their exponent vectors, so rank 0 is
``X0^d`` and the last rank is ``Xn^d``.  With this convention the first
``k(n, d-1)+1`` monomials of degree ``d`` are exactly the multiples of
``X0``, which the degree-lifting constructions rely on (the "prefix law"
in the tests).

Also computed here are the index pairs ``(s_i, t_i)`` that define the
quadrics ``q_i(Z) = Z_0 Z_{n+i} - Z_{s_i} Z_{t_i}`` cutting out the
varieties between projective space and the Veronese variety.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

Exponent = tuple[int, ...]


def basis_size(n: int, d: int) -> int:
    """Number of monomials of degree d in n+1 variables, binom(n+d, n)."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    return math.comb(n + d, n)


def _descending_exponents(nvars: int, degree: int) -> Iterator[Exponent]:
    if nvars == 1:
        yield (degree,)
        return
    for head in range(degree, -1, -1):
        for tail in _descending_exponents(nvars - 1, degree - head):
            yield (head,) + tail


@dataclass(frozen=True)
class QuadricSpec:
    """Level-i quadric Z0*Z_{n+i} - Z_s*Z_t with s minimal."""

    i: int
    s: int
    t: int


class MonomialBasis:
    """The ordered degree-d monomial basis for n+1 variables.

    Attributes:
        n: number of variables minus one.
        d: total degree.
        k: top rank, ``basis_size(n, d) - 1``.
        exponents: exponent tuples in descending lex order.
        rank_index: inverse map, exponent tuple -> rank.
    """

    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d
        self.k = basis_size(n, d) - 1
        self.exponents: list[Exponent] = list(_descending_exponents(n + 1, d))
        self.rank_index: dict[Exponent, int] = {
            e: j for j, e in enumerate(self.exponents)
        }

    def __len__(self) -> int:
        return self.k + 1

    def unrank(self, j: int) -> Exponent:
        """Exponent at rank j."""
        if not 0 <= j <= self.k:
            raise ValueError(f"rank {j} out of range 0..{self.k}")
        return self.exponents[j]

    def rank(self, alpha: Exponent) -> int:
        """Rank of an exponent, by closed-form counting.

        Counts the exponents that are lex-greater: for each position, the
        choices of a larger leading entry, each contributing a binomial
        count of completions.
        """
        alpha = tuple(alpha)
        if len(alpha) != self.n + 1:
            raise ValueError(f"exponent length {len(alpha)} != {self.n + 1}")
        if any(a < 0 for a in alpha) or sum(alpha) != self.d:
            raise ValueError(f"exponent {alpha} does not have degree {self.d}")
        r = 0
        remaining = self.d
        for pos in range(self.n):
            free = self.n - pos  # positions strictly to the right
            for v in range(remaining, alpha[pos], -1):
                r += math.comb(remaining - v + free - 1, free - 1)
            remaining -= alpha[pos]
        return r

    def quadric_spec(self, i: int) -> QuadricSpec:
        """Minimal-s split of alpha_0 + alpha_{n+i} into alpha_s + alpha_t."""
        if not 1 <= i <= self.k - self.n:
            raise ValueError(f"level {i} out of range 1..{self.k - self.n}")
        target = _add(self.exponents[0], self.exponents[self.n + i])
        for s in range(1, self.k + 1):
            gamma = _sub(target, self.exponents[s])
            if gamma is None:
                continue
            t = self.rank_index.get(gamma)
            if t is not None and t >= s:
                return QuadricSpec(i=i, s=s, t=t)
        raise RuntimeError(f"no quadric split at level {i}")  # unreachable

    def product_decompositions(
        self, beta: Exponent, bound: int
    ) -> list[tuple[int, int]]:
        """All pairs (s, t), s <= t <= bound, with alpha_s + alpha_t = beta.

        ``beta`` must have degree 2d.  Pairs come out in ascending order.
        """
        beta = tuple(beta)
        if len(beta) != self.n + 1 or sum(beta) != 2 * self.d:
            raise ValueError(f"{beta} is not a degree-{2 * self.d} exponent")
        if not 0 <= bound <= self.k:
            raise ValueError(f"bound {bound} out of range 0..{self.k}")
        pairs = []
        for s in range(bound + 1):
            gamma = _sub(beta, self.exponents[s])
            if gamma is None:
                continue
            t = self.rank_index.get(gamma)
            if t is not None and s <= t <= bound:
                pairs.append((s, t))
        return pairs


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent | None:
    out = tuple(x - y for x, y in zip(a, b))
    return out if all(x >= 0 for x in out) else None


@lru_cache(maxsize=None)
def basis(n: int, d: int) -> MonomialBasis:
    """Cached MonomialBasis constructor; bases are immutable."""
    return MonomialBasis(n, d)
