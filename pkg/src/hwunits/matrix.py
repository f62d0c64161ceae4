"""The 4x4 representation of the group ring over Laurent polynomials in x, y, z."""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .coefficients import INTEGERS, CoefficientRing, RingMismatch
import random
from dataclasses import dataclass

from .group import A, AB, B, IDENTITY, GroupElement, mul, random_element
from .laurent import LaurentPoly, parse_laurent
from .ring import CHI, Character, RingElement

_BASIS = (IDENTITY, A, B, AB)


class LaurentMatrix:
    __slots__ = ("ring", "rows")

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]], ring: CoefficientRing = INTEGERS):
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("LaurentMatrix is always 4x4")
        self.ring = ring
        self.rows = tuple(tuple(entry.change_ring(ring) for entry in row) for row in rows)

    @classmethod
    def identity(cls, ring: CoefficientRing = INTEGERS) -> LaurentMatrix:
        one, zero = LaurentPoly.constant(1, ring), LaurentPoly.zero(ring)
        return cls([[one if r == c else zero for c in range(4)] for r in range(4)], ring)

    @classmethod
    def zero(cls, ring: CoefficientRing = INTEGERS) -> LaurentMatrix:
        return cls([[LaurentPoly.zero(ring)] * 4 for _ in range(4)], ring)

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], ring: CoefficientRing = INTEGERS) -> LaurentMatrix:
        return cls([[parse_laurent(e, ring) for e in row] for row in rows], ring)

    def __getitem__(self, idx: tuple[int, int]) -> LaurentPoly:
        r, c = idx
        return self.rows[r][c]

    def _check(self, other: LaurentMatrix) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        self._check(other)
        return LaurentMatrix(
            [[self.rows[r][c] + other.rows[r][c] for c in range(4)] for r in range(4)], self.ring
        )

    def __neg__(self) -> LaurentMatrix:
        return self.map(lambda e: -e)

    def __mul__(self, other: LaurentMatrix | int) -> LaurentMatrix:
        if isinstance(other, int):
            return self.map(lambda e: e * other)
        self._check(other)
        out = []
        for r in range(4):
            row = []
            for c in range(4):
                acc = LaurentPoly.zero(self.ring)
                for m in range(4):
                    left, right = self.rows[r][m], other.rows[m][c]
                    if left and right:
                        acc = acc + left * right
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out, self.ring)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def map(self, f: Callable[[LaurentPoly], LaurentPoly]) -> LaurentMatrix:
        return LaurentMatrix([[f(e) for e in row] for row in self.rows], self.ring)

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix([[self.rows[c][r] for c in range(4)] for r in range(4)], self.ring)

    def change_ring(self, ring: CoefficientRing) -> LaurentMatrix:
        return LaurentMatrix(self.rows, ring)

    def __str__(self) -> str:
        return "\n".join("[ " + " | ".join(str(e) for e in row) + " ]" for row in self.rows)

    def __repr__(self) -> str:
        return f"LaurentMatrix(\n{self}\n)"


def det(m: LaurentMatrix) -> LaurentPoly:
    """Exact determinant by cofactor (Leibniz) expansion; no division."""
    total = LaurentPoly.zero(m.ring)
    for perm in itertools.permutations(range(4)):
        entries = [m.rows[r][perm[r]] for r in range(4)]
        if not all(entries):
            continue
        term = entries[0]
        for e in entries[1:]:
            term = term * e
        total = total + (term if _parity(perm) == 0 else -term)
    return total


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
    return inversions & 1


# ---------------------------------------------------------------------------
# representations

# Generator matrices exactly as published; rows and columns indexed by the
# coset basis (1, a, b, ab).
PUBLISHED_GENERATORS = {
    "a": (("0", "1", "0", "0"), ("x", "0", "0", "0"), ("0", "0", "0", "x^-1 z^-1"), ("0", "0", "y^-1 z", "0")),
    "b": (("0", "0", "1", "0"), ("0", "0", "0", "1"), ("y", "0", "0", "0"), ("0", "y^-1", "0", "0")),
}


def induced_matrix(g: GroupElement, ring: CoefficientRing = INTEGERS) -> LaurentMatrix:
    """Right multiplication by ``g`` on the free left module with basis (1, a, b, ab).

    Row ``t`` holds the coordinates of ``t * g``; with row vectors this gives
    ``M(g) M(h) = M(gh)``.
    """
    rows = [[LaurentPoly.zero(ring) for _ in range(4)] for _ in range(4)]
    for t in _BASIS:
        h = mul(t, g)
        rows[t.t][h.t] = LaurentPoly.monomial(h.i, h.j, h.k, 1, ring)
    return LaurentMatrix(rows, ring)


class Representation:
    """A homomorphism P -> GL_4 determined by the images of ``a`` and ``b``."""

    def __init__(self, name: str, rho_a: LaurentMatrix, rho_b: LaurentMatrix):
        self.name = name
        self.rho_a = rho_a.change_ring(INTEGERS)
        self.rho_b = rho_b.change_ring(INTEGERS)
        self.rho_a_inv = mat_star(self.rho_a)
        self.rho_b_inv = mat_star(self.rho_b)
        self._cache: dict[GroupElement, LaurentMatrix] = {}

    def inverse_ok(self) -> bool:
        one = LaurentMatrix.identity()
        return self.rho_a * self.rho_a_inv == one and self.rho_b * self.rho_b_inv == one

    def _power(self, base: LaurentMatrix, base_inv: LaurentMatrix, n: int) -> LaurentMatrix:
        result = LaurentMatrix.identity()
        step = base if n >= 0 else base_inv
        for _ in range(abs(n)):
            result = result * step
        return result

    def group(self, g: GroupElement) -> LaurentMatrix:
        cached = self._cache.get(g)
        if cached is not None:
            return cached
        a, ai, b, bi = self.rho_a, self.rho_a_inv, self.rho_b, self.rho_b_inv
        x, xi = a * a, ai * ai
        y, yi = b * b, bi * bi
        ab = a * b
        z, zi = ab * ab, mat_star(ab * ab)
        tags = (LaurentMatrix.identity(), a, b, ab)
        m = self._power(x, xi, g.i) * self._power(y, yi, g.j) * self._power(z, zi, g.k) * tags[g.t]
        self._cache[g] = m
        return m

    def ring_element(self, u: RingElement) -> LaurentMatrix:
        total = LaurentMatrix.zero(u.ring)
        for g, c in u.coeffs.items():
            total = total + self.group(g).change_ring(u.ring) * c
        return total

    def __repr__(self) -> str:
        return f"<Representation {self.name}>"


def mat_star(m: LaurentMatrix) -> LaurentMatrix:
    """Transpose and invert x, y, z."""
    return m.transpose().map(lambda e: e.substitute_signs(-1, -1, -1))


def mat_conjugate_diag(m: LaurentMatrix, diag: Sequence[LaurentPoly], diag_inv: Sequence[LaurentPoly]) -> LaurentMatrix:
    """``D M D^-1`` for a diagonal ``D``."""
    return LaurentMatrix(
        [[diag[r] * m.rows[r][c] * diag_inv[c] if m.rows[r][c] else m.rows[r][c] for c in range(4)] for r in range(4)],
        m.ring,
    )


def mat_theta(m: LaurentMatrix, character: Character = CHI) -> LaurentMatrix:
    """Conjugate by ``diag(1, chi(a), chi(b) y^-1, chi(ab) y)``, then invert y.

    For the character a -> +1, b -> -1 the diagonal is (1, 1, -y^-1, -y).
    """
    chis = (1, character.on_a, character.on_b, character.on_a * character.on_b)
    ys = (0, 0, -1, 1)
    diag = [LaurentPoly.monomial(0, ys[t], 0, chis[t], m.ring) for t in range(4)]
    diag_inv = [LaurentPoly.monomial(0, -ys[t], 0, chis[t], m.ring) for t in range(4)]
    return mat_conjugate_diag(m, diag, diag_inv).map(lambda e: e.substitute_signs(1, -1, 1))


PUBLISHED = Representation(
    "published",
    LaurentMatrix.from_strings(PUBLISHED_GENERATORS["a"]),
    LaurentMatrix.from_strings(PUBLISHED_GENERATORS["b"]),
)
INDUCED = Representation("induced", induced_matrix(A), induced_matrix(B))


@dataclass
class HomomorphismReport:
    name: str
    pairs: int
    failures: list[tuple[GroupElement, GroupElement]]

    @property
    def passed(self) -> bool:
        return not self.failures


def homomorphism_suite(rep: Representation, pairs: int = 500, seed: int = 0, bound: int = 3) -> HomomorphismReport:
    """Check ``rho(g) rho(h) = rho(gh)`` on random pairs."""
    rng = random.Random(seed)
    failures = []
    for _ in range(pairs):
        g, h = random_element(rng, bound), random_element(rng, bound)
        if rep.group(g) * rep.group(h) != rep.group(mul(g, h)):
            failures.append((g, h))
    return HomomorphismReport(rep.name, pairs, failures)


_ACTIVE: list[Representation] = []


def active_representation(pairs: int = 500) -> Representation:
    """The first of (published, induced) that passes the homomorphism suite."""
    if not _ACTIVE:
        for rep in (PUBLISHED, INDUCED):
            if homomorphism_suite(rep, pairs).passed:
                _ACTIVE.append(rep)
                break
        else:
            raise RuntimeError("no candidate representation is a homomorphism")
    return _ACTIVE[0]


def rho_group(g: GroupElement) -> LaurentMatrix:
    return active_representation().group(g)


def rho_ring(u: RingElement) -> LaurentMatrix:
    return active_representation().ring_element(u)
