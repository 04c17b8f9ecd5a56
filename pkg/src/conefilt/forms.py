"""Sparse homogeneous polynomials over the rationals.

Coefficients are ``fractions.Fraction`` throughout; there is no floating
point anywhere in the package.  A ``Form`` is immutable by convention:
nothing mutates ``terms`` after construction and all operations return
new instances.

The JSON interchange schema is::

    {"variables": <n+1>, "degree": <total degree>,
     "terms": [{"exponent": [..ints..], "coefficient": "p/q or integer"}]}

Coefficient strings are exact rational literals; ``1.5`` is rejected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .monomials import Exponent

_RAT_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class FormParseError(ValueError):
    """Malformed form JSON."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficient {value!r} is not an exact rational")


@dataclass(frozen=True)
class Form:
    """A homogeneous polynomial: variable count, degree, exponent -> coeff."""

    n: int
    degree: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    @staticmethod
    def from_terms(
        n: int, degree: int, terms: Iterable[tuple[Exponent, object]]
    ) -> "Form":
        """Build a form, validating homogeneity and dropping zero terms."""
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        if degree < 0:
            raise ValueError(f"negative degree {degree}")
        acc: dict[Exponent, Fraction] = {}
        for exponent, coeff in terms:
            exponent = tuple(exponent)
            if len(exponent) != n + 1:
                raise ValueError(f"exponent {exponent} has length != {n + 1}")
            if any(e < 0 for e in exponent):
                raise ValueError(f"negative entry in exponent {exponent}")
            if sum(exponent) != degree:
                raise ValueError(
                    f"exponent {exponent} has degree {sum(exponent)}, expected {degree}"
                )
            c = acc.get(exponent, Fraction(0)) + _as_fraction(coeff)
            if c == 0:
                acc.pop(exponent, None)
            else:
                acc[exponent] = c
        return Form(n=n, degree=degree, terms=_canonical(acc))

    def support(self) -> list[Exponent]:
        """Support exponents in descending lex order."""
        return list(self.terms)

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, point) -> Fraction:
        """Exact value at a rational point of length n+1."""
        point = [Fraction(p) for p in point]
        if len(point) != self.n + 1:
            raise ValueError(f"point length {len(point)} != {self.n + 1}")
        total = Fraction(0)
        for exponent, coeff in self.terms.items():
            term = coeff
            for x, e in zip(point, exponent):
                if e:
                    term *= x**e
            total += term
        return total

    def mul_monomial_square(self, l: int) -> "Form":
        """The form X_l^2 * self; degree rises by 2, support size is kept."""
        if not 0 <= l <= self.n:
            raise ValueError(f"variable index {l} out of range 0..{self.n}")
        shifted = {}
        for exponent, coeff in self.terms.items():
            e = list(exponent)
            e[l] += 2
            shifted[tuple(e)] = coeff
        return Form(n=self.n, degree=self.degree + 2, terms=_canonical(shifted))

    def rename_variables(self, images: dict[int, int], n: int) -> "Form":
        """Substitute variable i -> X_{images[i]} into an n+1 variable ring.

        ``images`` must be injective on the variables actually used.
        """
        renamed: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            e = [0] * (n + 1)
            for i, power in enumerate(exponent):
                if power:
                    e[images[i]] += power
            key = tuple(e)
            if key in renamed:
                raise ValueError("variable images collide")
            renamed[key] = coeff
        return Form(n=n, degree=self.degree, terms=_canonical(renamed))

    def scaled(self, c) -> "Form":
        c = Fraction(c)
        if c == 0:
            return Form(n=self.n, degree=self.degree, terms={})
        return Form(
            n=self.n,
            degree=self.degree,
            terms={e: c * v for e, v in self.terms.items()},
        )

    def __add__(self, other: "Form") -> "Form":
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("incompatible forms")
        merged = dict(self.terms)
        for e, c in other.terms.items():
            s = merged.get(e, Fraction(0)) + c
            if s == 0:
                merged.pop(e, None)
            else:
                merged[e] = s
        return Form(n=self.n, degree=self.degree, terms=_canonical(merged))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.n == other.n
            and self.degree == other.degree
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self):
        return hash((self.n, self.degree, tuple(self.terms.items())))


def _canonical(terms: dict[Exponent, Fraction]) -> dict[Exponent, Fraction]:
    """Descending-lex term order; deterministic serialization and hashing."""
    return {e: terms[e] for e in sorted(terms, reverse=True)}


def coefficient_string(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_coefficient(text: str) -> Fraction:
    if not isinstance(text, str) or not _RAT_RE.match(text):
        raise FormParseError(f"bad rational literal {text!r}")
    value = Fraction(text)
    if value == 0:
        raise FormParseError("zero coefficients may not be stored")
    return value


def serialize_form(form: Form) -> dict:
    """JSON-ready dict in the interchange schema (terms in canonical order)."""
    return {
        "variables": form.n + 1,
        "degree": form.degree,
        "terms": [
            {"exponent": list(e), "coefficient": coefficient_string(c)}
            for e, c in form.terms.items()
        ],
    }


def parse_form(doc) -> Form:
    """Parse the interchange schema; raises FormParseError on any defect."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise FormParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormParseError("form document must be a JSON object")
    try:
        variables = doc["variables"]
        degree = doc["degree"]
        raw_terms = doc["terms"]
    except KeyError as exc:
        raise FormParseError(f"missing key {exc}") from exc
    if not isinstance(variables, int) or variables < 2:
        raise FormParseError(f"variables must be an int >= 2, got {variables!r}")
    if not isinstance(degree, int) or degree < 0:
        raise FormParseError(f"degree must be a non-negative int, got {degree!r}")
    if not isinstance(raw_terms, list):
        raise FormParseError("terms must be a list")
    seen: set[Exponent] = set()
    terms = []
    for entry in raw_terms:
        if not isinstance(entry, dict):
            raise FormParseError(f"term {entry!r} is not an object")
        exponent = entry.get("exponent")
        if (
            not isinstance(exponent, list)
            or len(exponent) != variables
            or not all(isinstance(e, int) and e >= 0 for e in exponent)
        ):
            raise FormParseError(f"bad exponent {exponent!r}")
        if sum(exponent) != degree:
            raise FormParseError(
                f"exponent {exponent} has degree {sum(exponent)}, expected {degree}"
            )
        key = tuple(exponent)
        if key in seen:
            raise FormParseError(f"duplicate exponent {exponent}")
        seen.add(key)
        terms.append((key, parse_coefficient(entry.get("coefficient"))))
    return Form.from_terms(variables - 1, degree, terms)
