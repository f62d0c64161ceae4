"""Sparse Laurent polynomials in x, y, z."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .coefficients import INTEGERS, CoefficientRing, RingMismatch

Monomial = tuple[int, int, int]


class LaurentPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, ring: CoefficientRing = INTEGERS):
        self.ring = ring
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            c = ring.normalize(c)
            if c:
                clean[tuple(mono)] = c  # type: ignore[index]
        self.terms = clean

    @classmethod
    def constant(cls, c: int, ring: CoefficientRing = INTEGERS) -> LaurentPoly:
        return cls({(0, 0, 0): c}, ring)

    @classmethod
    def monomial(cls, i: int, j: int, k: int, c: int = 1, ring: CoefficientRing = INTEGERS) -> LaurentPoly:
        return cls({(i, j, k): c}, ring)

    @classmethod
    def zero(cls, ring: CoefficientRing = INTEGERS) -> LaurentPoly:
        return cls({}, ring)

    def _check(self, other: LaurentPoly) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return LaurentPoly(out, self.ring)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({m: -c for m, c in self.terms.items()}, self.ring)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({m: c * other for m, c in self.terms.items()}, self.ring)
        self._check(other)
        out: dict[Monomial, int] = {}
        for (i1, j1, k1), c1 in self.terms.items():
            for (i2, j2, k2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2, k1 + k2)
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly(out, self.ring)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPoly.constant(1, self.ring)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.constant(other, self.ring)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def substitute_signs(self, sx: int = 1, sy: int = 1, sz: int = 1) -> LaurentPoly:
        """Replace x by x^sx etc., with each sign in {+1, -1}."""
        return LaurentPoly({(sx * i, sy * j, sz * k): c for (i, j, k), c in self.terms.items()}, self.ring)

    def shift(self, i: int, j: int, k: int) -> LaurentPoly:
        return LaurentPoly({(a + i, b + j, c + k): v for (a, b, c), v in self.terms.items()}, self.ring)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0, 0)}

    def constant_term(self) -> int:
        return self.terms.get((0, 0, 0), 0)

    def change_ring(self, ring: CoefficientRing) -> LaurentPoly:
        return LaurentPoly(self.terms, ring)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            factors = [
                (v if e == 1 else f"{v}^{e}") for v, e in zip("xyz", mono) if e
            ]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({self}, {self.ring})"


def lsum(polys: Iterable[LaurentPoly], ring: CoefficientRing = INTEGERS) -> LaurentPoly:
    total = LaurentPoly.zero(ring)
    for p in polys:
        total = total + p
    return total


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*((?:[xyz](?:\^\{?-?\d+\}?)?\s*\*?\s*)*)")
_VAR = re.compile(r"([xyz])(?:\^\{?(-?\d+)\}?)?")


def parse_laurent(text: str, ring: CoefficientRing = INTEGERS) -> LaurentPoly:
    """Parse sums like ``4 + x + x^{-1}`` or ``xyz^-1 - 2*y^2``."""
    text = text.replace(" ", "")
    terms: dict[Monomial, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial at {text[pos:]!r}")
        sign, coeff, body = m.groups()
        if not coeff and not body:
            raise ValueError(f"empty term in {text!r}")
        c = int(coeff) if coeff else 1
        if sign == "-":
            c = -c
        exps = [0, 0, 0]
        for var, e in _VAR.findall(body):
            exps["xyz".index(var)] += int(e) if e else 1
        mono = (exps[0], exps[1], exps[2])
        terms[mono] = terms.get(mono, 0) + c
        pos = m.end()
    return LaurentPoly(terms, ring)
