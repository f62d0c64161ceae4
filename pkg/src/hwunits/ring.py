"""Sparse group-ring arithmetic over ZZ and ZZ/n for the Hantzsche-Wendt group."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .coefficients import INTEGERS, CoefficientRing, RingMismatch, modulo
from .group import (
    IDENTITY,
    SIGMA,
    TAU,
    GroupElement,
    GroupEndomorphism,
    Tag,
    canonical_sorted,
    element,
    format_element,
    inv,
    mul,
    parse_element,
)
from .laurent import LaurentPoly


class Character(NamedTuple):
    """A sign character of P, determined by its values on a and b."""

    on_a: int = -1
    on_b: int = -1

    def __call__(self, g: GroupElement) -> int:
        return (1, self.on_a, self.on_b, self.on_a * self.on_b)[g.t]


CHI = Character(-1, -1)


class RingElement:
    """A finitely supported map P -> coefficient ring; zero coefficients are never stored."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, coeffs: Mapping[GroupElement, int] | None = None, ring: CoefficientRing = INTEGERS):
        self.ring = ring
        self.coeffs: dict[GroupElement, int] = {}
        for g, c in (coeffs or {}).items():
            c = ring.normalize(c)
            if c:
                self.coeffs[g] = c

    @classmethod
    def _raw(cls, coeffs: dict[GroupElement, int], ring: CoefficientRing) -> RingElement:
        # caller guarantees normalized, nonzero coefficients
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, ring: CoefficientRing = INTEGERS) -> RingElement:
        return cls({}, ring)

    @classmethod
    def one(cls, ring: CoefficientRing = INTEGERS) -> RingElement:
        return cls({IDENTITY: 1}, ring)

    @classmethod
    def from_group(cls, g: GroupElement, c: int = 1, ring: CoefficientRing = INTEGERS) -> RingElement:
        return cls({g: c}, ring)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, GroupElement]], ring: CoefficientRing = INTEGERS) -> RingElement:
        acc: dict[GroupElement, int] = {}
        for c, g in terms:
            acc[g] = acc.get(g, 0) + c
        return cls(acc, ring)

    def _check(self, other: RingElement) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"cannot combine elements over {self.ring} and {other.ring}")

    def _coerce(self, other: RingElement | int) -> RingElement:
        if isinstance(other, int):
            return RingElement.one(self.ring) * other if other else RingElement.zero(self.ring)
        self._check(other)
        return other

    def __add__(self, other: RingElement | int) -> RingElement:
        other = self._coerce(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return RingElement(out, self.ring)

    __radd__ = __add__

    def __neg__(self) -> RingElement:
        return RingElement({g: -c for g, c in self.coeffs.items()}, self.ring)

    def __sub__(self, other: RingElement | int) -> RingElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> RingElement:
        return (-self) + other

    def __mul__(self, other: RingElement | int) -> RingElement:
        if isinstance(other, int):
            return RingElement({g: c * other for g, c in self.coeffs.items()}, self.ring)
        if isinstance(other, GroupElement):
            return RingElement({mul(g, other): c for g, c in self.coeffs.items()}, self.ring)
        self._check(other)
        return convolve(self, other)

    def __rmul__(self, other: int | GroupElement) -> RingElement:
        if isinstance(other, GroupElement):
            return RingElement({mul(other, g): c for g, c in self.coeffs.items()}, self.ring)
        return self * other

    def __pow__(self, n: int) -> RingElement:
        if n < 0:
            raise ValueError("negative powers need an explicit inverse")
        result = RingElement.one(self.ring)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == RingElement.one(self.ring) * other
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, g: GroupElement) -> int:
        return self.coeffs.get(g, 0)

    def support(self) -> list[GroupElement]:
        return support(self)

    def change_ring(self, ring: CoefficientRing) -> RingElement:
        return RingElement(self.coeffs, ring)

    def lift(self) -> RingElement:
        """Same coefficients (as representatives) viewed over ZZ."""
        return RingElement._raw(dict(self.coeffs), INTEGERS)

    def to_components(self) -> ComponentForm:
        return ComponentForm.from_element(self)

    def terms(self) -> list[tuple[int, GroupElement]]:
        return [(self.coeffs[g], g) for g in support(self)]

    def to_text(self, header: bool = True) -> str:
        lines = [f"# ring: {self.ring}"] if header else []
        lines += [f"{c} * {format_element(g)}" for c, g in self.terms()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, ring: CoefficientRing | None = None) -> RingElement:
        declared = None
        terms = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("ring:"):
                    declared = CoefficientRing.parse(body[5:])
                continue
            if "*" in line:
                c, g = line.split("*", 1)
                terms.append((int(c), parse_element(g)))
            else:
                terms.append((1, parse_element(line)))
        return cls.from_terms(terms, ring or declared or INTEGERS)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            format_element(g) if c == 1 else f"{c}*{format_element(g)}" for c, g in self.terms()
        )

    def __repr__(self) -> str:
        return f"RingElement({self}, {self.ring})"


def convolve(u: RingElement, v: RingElement) -> RingElement:
    ring = u.ring
    acc: dict[GroupElement, int] = {}
    get = acc.get
    for g, c in u.coeffs.items():
        for h, d in v.coeffs.items():
            gh = mul(g, h)
            acc[gh] = get(gh, 0) + c * d
    return RingElement(acc, ring)


def support(u: RingElement) -> list[GroupElement]:
    return canonical_sorted(u.coeffs)


def apply_endo_ring(u: RingElement, f: GroupEndomorphism) -> RingElement:
    acc: dict[GroupElement, int] = {}
    for g, c in u.coeffs.items():
        h = f(g)
        acc[h] = acc.get(h, 0) + c
    return RingElement(acc, u.ring)


def star(u: RingElement) -> RingElement:
    return RingElement._raw({inv(g): c for g, c in u.coeffs.items()}, u.ring)


def theta(u: RingElement, character: Character = CHI, sigma: GroupEndomorphism = SIGMA) -> RingElement:
    """``sum n_g g -> sum chi(g) n_g sigma(g)``."""
    return RingElement({sigma(g): character(g) * c for g, c in u.coeffs.items()}, u.ring)


def tau_ring(u: RingElement, tau: GroupEndomorphism = TAU) -> RingElement:
    return apply_endo_ring(u, tau)


def star_theta(u: RingElement, character: Character = CHI) -> RingElement:
    return theta(star(u), character)


@dataclass(frozen=True)
class UnitaryReport:
    left: bool
    right: bool

    def __bool__(self) -> bool:
        return self.left and self.right


def is_theta_unitary(u: RingElement, character: Character = CHI) -> UnitaryReport:
    adj = star_theta(u, character)
    one = RingElement.one(u.ring)
    return UnitaryReport(left=adj * u == one, right=u * adj == one)


def is_trivial_unit(u: RingElement) -> tuple[int, GroupElement] | None:
    if len(u.coeffs) != 1:
        return None
    ((g, c),) = u.coeffs.items()
    return (c, g) if u.ring.is_unit(c) else None


def reduce_mod(u: RingElement, n: int) -> RingElement:
    if n < 2:
        raise ValueError(f"invalid modulus {n}")
    if u.ring.modulus is not None and u.ring.modulus % n:
        raise ValueError(f"{n} does not divide {u.ring.modulus}")
    return RingElement(u.coeffs, modulo(n))


def verify_inverse_pair(u: RingElement, v: RingElement) -> bool:
    one = RingElement.one(u.ring)
    return u * v == one and v * u == one


@dataclass(frozen=True)
class ComponentForm:
    """``u = p + q a + r b + s ab`` with Laurent polynomials on the left."""

    p: LaurentPoly
    q: LaurentPoly
    r: LaurentPoly
    s: LaurentPoly

    @property
    def ring(self) -> CoefficientRing:
        return self.p.ring

    def parts(self) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]:
        return (self.p, self.q, self.r, self.s)

    @classmethod
    def from_element(cls, u: RingElement) -> ComponentForm:
        buckets: list[dict] = [{}, {}, {}, {}]
        for g, c in u.coeffs.items():
            buckets[g.t][(g.i, g.j, g.k)] = c
        return cls(*(LaurentPoly(b, u.ring) for b in buckets))

    def to_element(self) -> RingElement:
        coeffs = {}
        for tag, poly in zip(Tag, self.parts()):
            for (i, j, k), c in poly.terms.items():
                coeffs[element(i, j, k, tag)] = c
        return RingElement(coeffs, self.ring)

    def sizes(self) -> tuple[int, int, int, int]:
        return tuple(len(p) for p in self.parts())  # type: ignore[return-value]
