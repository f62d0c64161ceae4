"""The group ring F_2[D], D the infinite dihedral group, and Mirowicz's unitary units."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .group import (
    D_B,
    D_IDENTITY,
    DihedralElement,
    GroupEndomorphism,
    dihedral_inv,
    dihedral_mul,
    project_dihedral,
)
from .ring import RingElement, apply_endo_ring


class DihedralRingElement:
    """An element of F_2[D], stored as its support."""

    __slots__ = ("support",)

    def __init__(self, support: Iterable[DihedralElement] = ()):
        acc: set[DihedralElement] = set()
        for g in support:
            acc ^= {g}
        self.support = frozenset(acc)

    @classmethod
    def one(cls) -> DihedralRingElement:
        return cls([D_IDENTITY])

    def __add__(self, other: DihedralRingElement) -> DihedralRingElement:
        out = DihedralRingElement()
        out.support = self.support ^ other.support
        return out

    def __mul__(self, other: DihedralRingElement) -> DihedralRingElement:
        return DihedralRingElement(dihedral_mul(g, h) for g in self.support for h in other.support)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == (DihedralRingElement.one() if other % 2 else DihedralRingElement())
        if not isinstance(other, DihedralRingElement):
            return NotImplemented
        return self.support == other.support

    def __hash__(self) -> int:
        return hash(self.support)

    def __len__(self) -> int:
        return len(self.support)

    def sorted_support(self) -> list[DihedralElement]:
        return sorted(self.support, key=lambda g: (g.e, abs(g.m), g.m))

    def __str__(self) -> str:
        return " + ".join(str(g) for g in self.sorted_support()) or "0"

    def __repr__(self) -> str:
        return f"DihedralRingElement({self})"


def d_star(w: DihedralRingElement) -> DihedralRingElement:
    return DihedralRingElement(dihedral_inv(g) for g in w.support)


def is_unitary(w: DihedralRingElement) -> bool:
    return w * d_star(w) == 1


def _a(m: int) -> DihedralElement:
    return DihedralElement(m, 0)


def epsilon(i: int, j: int) -> DihedralRingElement:
    """``b^j + (a^-i + a^i)(1 + b)``."""
    if i < 0 or j not in (0, 1):
        raise ValueError("epsilon needs i >= 0 and j in {0, 1}")
    pair = DihedralRingElement([_a(-i), _a(i)])
    one_plus_b = DihedralRingElement([D_IDENTITY, D_B])
    return DihedralRingElement([D_B if j else D_IDENTITY]) + pair * one_plus_b


def project_ring(u: RingElement) -> DihedralRingElement:
    if u.ring.modulus != 2:
        raise ValueError(f"projection to F_2[D] needs coefficients mod 2, got {u.ring.describe()}")
    return DihedralRingElement(project_dihedral(g) for g in u.coeffs)


@dataclass(frozen=True)
class EpsilonForm:
    """``b^j + sum_{i in I} (a^-i + a^i)(1 + b)``."""

    j: int = 0
    indices: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(self.indices))
        if self.j not in (0, 1):
            raise ValueError("j must be 0 or 1")
        if any(i < 1 for i in self.indices):
            raise ValueError("indices must be positive")

    def element(self) -> DihedralRingElement:
        w = DihedralRingElement([D_B if self.j else D_IDENTITY])
        for i in self.indices:
            w = w + epsilon(i, 0) + DihedralRingElement.one()
        return w

    def as_tuple(self) -> tuple[int, tuple[int, ...]]:
        return self.j, tuple(sorted(self.indices))

    def expression(self) -> str:
        """The same element written as a product of Mirowicz units."""
        factors = ["b"] * self.j + [f"eps({i},0)" for i in sorted(self.indices)]
        return " * ".join(factors) or "1"

    def __str__(self) -> str:
        return f"(j={self.j}, I={{{', '.join(map(str, sorted(self.indices)))}}})"


class DecompositionError(ValueError):
    pass


def decompose_unitary(w: DihedralRingElement) -> EpsilonForm:
    """Read off ``(j, I)`` from the a-only part and the b-part of ``w``."""
    if not is_unitary(w):
        raise DecompositionError(f"not unitary: {w}")
    c0 = {g.m for g in w.support if not g.e}
    c1 = {g.m for g in w.support if g.e}
    if c0 ^ c1 != {0}:
        raise DecompositionError(f"unitary but not of Mirowicz form: {w}")
    j = 1 if 0 in c1 else 0
    rest = c1 - {0} if j else c0 - {0}
    indices = {m for m in rest if m > 0}
    if rest != indices | {-m for m in indices}:
        raise DecompositionError(f"unitary but not of Mirowicz form (asymmetric support): {w}")
    form = EpsilonForm(j, frozenset(indices))
    if form.element() != w:
        raise DecompositionError(f"recomposition mismatch for {w}")
    return form


def endo_index_map(k: int, l: int, f: EpsilonForm) -> EpsilonForm:
    """Image under ``a -> a^(2k+1), b -> b^(2l+1)``: every index i becomes (2k+1) i."""
    scale = abs(2 * k + 1)
    out: set[int] = set()
    for i in f.indices:
        out ^= {scale * i}
    return EpsilonForm(f.j, frozenset(out))


def dihedral_endo(k: int, l: int):
    """The map on D induced by ``a -> a^(2k+1), b -> b^(2l+1)`` (b^odd = b)."""

    def apply(g: DihedralElement) -> DihedralElement:
        return DihedralElement((2 * k + 1) * g.m, g.e)

    return apply


def apply_dihedral_endo(w: DihedralRingElement, k: int, l: int) -> DihedralRingElement:
    f = dihedral_endo(k, l)
    return DihedralRingElement(f(g) for g in w.support)


@dataclass(frozen=True)
class Separation:
    verdict: str
    witness: int | None
    reason: str


def orbit_separation(u: EpsilonForm, v: EpsilonForm) -> Separation:
    """Can ``v`` be ruled out of the orbit of ``u`` under the odd-power endomorphisms?

    Odd multiples of indices that are 2 mod 4 stay 2 mod 4, so an index of ``v``
    divisible by 4 separates them.
    """
    if u.indices and all(i % 4 == 2 for i in u.indices):
        witness = next((i for i in sorted(v.indices) if i % 4 == 0), None)
        if witness is not None:
            return Separation(
                "separated",
                witness,
                f"every image index of {sorted(u.indices)} is 2 mod 4, but {witness} is 0 mod 4",
            )
    return Separation("inconclusive", None, "no index of the target is forced outside the orbit")


def projected_endo_matches(u: RingElement, endo: GroupEndomorphism, k: int, l: int) -> bool:
    """pi(endo(u)) against the index map, for endo = a -> a^(2k+1), b -> b^(2l+1)."""

    lhs = decompose_unitary(project_ring(apply_endo_ring(u, endo)))
    rhs = endo_index_map(k, l, decompose_unitary(project_ring(u)))
    return lhs == rhs
