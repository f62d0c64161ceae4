"""Exact arithmetic in the Hantzsche-Wendt group and the infinite dihedral group.

Every element of P is stored in the normal form ``x^i y^j z^k t`` where
``x = a^2``, ``y = b^2``, ``z = (ab)^2`` generate the translation lattice
and ``t`` is one of the coset representatives ``1, a, b, ab``.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, NamedTuple, Sequence


class Tag(enum.IntEnum):
    """Coset representative of P modulo the lattice <x, y, z>."""

    E = 0
    A = 1
    B = 2
    AB = 3

    @property
    def symbol(self) -> str:
        return ("1", "a", "b", "ab")[self]


# Conjugation by a coset tag acts on lattice exponents by a sign pattern:
# a negates (j, k), b negates (i, k), ab negates (i, j).
_ACTION = (
    (1, 1, 1),
    (1, -1, -1),
    (-1, 1, -1),
    (-1, -1, 1),
)

# Lattice part of t1 * t2; the tag part is t1 ^ t2. Derived from the affine
# model a = ((1/2, 0, 0), diag(1,-1,-1)), b = ((0, 1/2, 1/2), diag(-1,1,-1))
# with x = e1, y = e2, z = -e3 (tests re-derive it).
_COCYCLE = (
    ((0, 0, 0), (0, 0, 0), (0, 0, 0), (0, 0, 0)),
    ((0, 0, 0), (1, 0, 0), (0, 0, 0), (1, 0, 0)),
    ((0, 0, 0), (-1, 1, -1), (0, 1, 0), (-1, 0, -1)),
    ((0, 0, 0), (0, -1, 1), (0, -1, 0), (0, 0, 1)),
)

_TAGS = tuple(Tag)
_CHI_TAG = (1, -1, -1, 1)


class GroupElement(NamedTuple):
    """``x^i y^j z^k t`` in normal form."""

    i: int
    j: int
    k: int
    t: Tag

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, GroupElement):
            return NotImplemented
        return mul(self, other)

    def __invert__(self) -> GroupElement:
        return inv(self)

    def __pow__(self, n: int) -> GroupElement:
        return power(self, n)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"GroupElement({format_element(self)!r})"

    def sort_key(self) -> tuple[int, int, int, int]:
        return (int(self.t), self.i, self.j, self.k)

    @property
    def is_identity(self) -> bool:
        return self == IDENTITY


def element(i: int = 0, j: int = 0, k: int = 0, t: Tag | int = Tag.E) -> GroupElement:
    return GroupElement(int(i), int(j), int(k), _TAGS[int(t)])


IDENTITY = element()
A = element(t=Tag.A)
B = element(t=Tag.B)
AB = element(t=Tag.AB)
X = element(1, 0, 0)
Y = element(0, 1, 0)
Z = element(0, 0, 1)


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    t1 = g.t
    s = _ACTION[t1]
    c = _COCYCLE[t1][h.t]
    return GroupElement(
        g.i + s[0] * h.i + c[0],
        g.j + s[1] * h.j + c[1],
        g.k + s[2] * h.k + c[2],
        _TAGS[t1 ^ h.t],
    )


def inv(g: GroupElement) -> GroupElement:
    # (v t)^-1 = t^-1 v^-1 = alpha_t(-v) * t^-1, and t^-1 = c(t, t)^-1 t
    t = g.t
    s = _ACTION[t]
    c = _COCYCLE[t][t]
    return GroupElement(-s[0] * g.i - c[0], -s[1] * g.j - c[1], -s[2] * g.k - c[2], t)


def power(g: GroupElement, n: int) -> GroupElement:
    if n < 0:
        g, n = inv(g), -n
    result = IDENTITY
    while n:
        if n & 1:
            result = mul(result, g)
        g = mul(g, g)
        n >>= 1
    return result


def product(elements: Iterable[GroupElement]) -> GroupElement:
    result = IDENTITY
    for g in elements:
        result = mul(result, g)
    return result


def conj(g: GroupElement, h: GroupElement) -> GroupElement:
    """``g^h = h^-1 g h``."""
    return mul(mul(inv(h), g), h)


def chi(g: GroupElement) -> int:
    """Sign character with a -> -1, b -> -1."""
    return _CHI_TAG[g.t]


def relations_hold(a: GroupElement, b: GroupElement) -> bool:
    """Whether ``a^{2b} = a^{-2}`` and ``b^{2a} = b^{-2}`` hold for the given pair."""
    a2, b2 = mul(a, a), mul(b, b)
    return conj(a2, b) == inv(a2) and conj(b2, a) == inv(b2)


class RelationError(ValueError):
    pass


class GroupEndomorphism:
    """Endomorphism of P given by the images of ``a`` and ``b``."""

    __slots__ = ("image_a", "image_b", "name", "_x", "_y", "_z", "_tags")

    def __init__(self, image_a: GroupElement, image_b: GroupElement, name: str | None = None):
        if not relations_hold(image_a, image_b):
            raise RelationError(
                f"images a -> {image_a}, b -> {image_b} violate the defining relations"
            )
        self.image_a = image_a
        self.image_b = image_b
        self.name = name
        fab = mul(image_a, image_b)
        self._x = mul(image_a, image_a)
        self._y = mul(image_b, image_b)
        self._z = mul(fab, fab)
        self._tags = (IDENTITY, image_a, image_b, fab)

    def __call__(self, g: GroupElement) -> GroupElement:
        return apply_endo(self, g)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupEndomorphism):
            return NotImplemented
        return (self.image_a, self.image_b) == (other.image_a, other.image_b)

    def __hash__(self) -> int:
        return hash((self.image_a, self.image_b))

    def compose(self, other: GroupEndomorphism) -> GroupEndomorphism:
        """``self`` after ``other``."""
        return GroupEndomorphism(self(other.image_a), self(other.image_b))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<GroupEndomorphism{label}: a -> {self.image_a}, b -> {self.image_b}>"


def apply_endo(f: GroupEndomorphism, g: GroupElement) -> GroupElement:
    return mul(
        mul(mul(power(f._x, g.i), power(f._y, g.j)), power(f._z, g.k)),
        f._tags[g.t],
    )


IDENTITY_ENDO = GroupEndomorphism(A, B, "id")
SIGMA = GroupEndomorphism(A, inv(B), "sigma")
# tau exactly as written (a -> a^-1, b -> x^2 b^-1), and the form under which
# the known units are actually invariant (a -> a^-1, b -> b^-1).
TAU_LITERAL = GroupEndomorphism(inv(A), mul(power(X, 2), inv(B)), "tau: a -> a^-1, b -> x^2 b^-1")
TAU = GroupEndomorphism(inv(A), inv(B), "tau: a -> a^-1, b -> b^-1")


def power_endo(i: int, j: int) -> GroupEndomorphism:
    """The endomorphism ``a -> a^i, b -> b^j`` (valid for odd i, j)."""
    return GroupEndomorphism(power(A, i), power(B, j), f"a->a^{i}, b->b^{j}")


def _self_check() -> None:
    if not relations_hold(A, B):
        raise AssertionError("cocycle table violates the defining relations of P")
    if mul(A, A) != X or mul(B, B) != Y or mul(AB, AB) != Z or mul(A, B) != AB:
        raise AssertionError("cocycle table disagrees with x=a^2, y=b^2, z=(ab)^2")


_self_check()


# ---------------------------------------------------------------------------
# text syntax

_FACTOR = re.compile(r"^([xyz])(?:\^\(?(-?\d+)\)?)?$")


def format_element(g: GroupElement) -> str:
    parts = []
    for name, e in zip("xyz", (g.i, g.j, g.k)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    if g.t != Tag.E or not parts:
        parts.append(g.t.symbol)
    return " ".join(parts)


def parse_element(text: str) -> GroupElement:
    """Parse ``x^i y^j z^k t`` (any factor may be omitted)."""
    exps = {"x": 0, "y": 0, "z": 0}
    tag = Tag.E
    tokens = text.replace("*", " ").split()
    if not tokens:
        raise ValueError("empty group element")
    for n, tok in enumerate(tokens):
        if tok in ("1", "e"):
            continue
        if tok in ("a", "b", "ab"):
            if n != len(tokens) - 1:
                raise ValueError(f"coset tag {tok!r} must come last in {text!r}")
            tag = {"a": Tag.A, "b": Tag.B, "ab": Tag.AB}[tok]
            continue
        m = _FACTOR.match(tok)
        if not m:
            raise ValueError(f"cannot parse factor {tok!r} in {text!r}")
        exps[m.group(1)] += int(m.group(2)) if m.group(2) is not None else 1
    return element(exps["x"], exps["y"], exps["z"], tag)


# ---------------------------------------------------------------------------
# word-metric balls over {a, b, ab}^{+-1}

GENERATORS = (A, inv(A), B, inv(B), AB, inv(AB))
BALL_CAP = 40


class BallCapExceeded(ValueError):
    pass


class _BallCache:
    def __init__(self) -> None:
        self.length: dict[GroupElement, int] = {IDENTITY: 0}
        self.spheres: list[list[GroupElement]] = [[IDENTITY]]

    def grow_to(self, r: int) -> None:
        while len(self.spheres) <= r:
            shell: list[GroupElement] = []
            n = len(self.spheres)
            for g in self.spheres[-1]:
                for s in GENERATORS:
                    h = mul(g, s)
                    if h not in self.length:
                        self.length[h] = n
                        shell.append(h)
            shell.sort(key=GroupElement.sort_key)
            self.spheres.append(shell)


_BALLS = _BallCache()


def sphere(r: int, cap: int = BALL_CAP) -> list[GroupElement]:
    if r < 0:
        raise ValueError("radius must be non-negative")
    if r > cap:
        raise BallCapExceeded(f"radius {r} exceeds cap {cap}")
    _BALLS.grow_to(r)
    return list(_BALLS.spheres[r])


def ball(r: int, cap: int = BALL_CAP) -> list[GroupElement]:
    """Elements of word length <= r, graded by length then (t, i, j, k)."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    if r > cap:
        raise BallCapExceeded(f"radius {r} exceeds cap {cap}")
    _BALLS.grow_to(r)
    out: list[GroupElement] = []
    for shell in _BALLS.spheres[: r + 1]:
        out.extend(shell)
    return out


def word_length(g: GroupElement, cap: int = BALL_CAP) -> int:
    r = 0
    while g not in _BALLS.length:
        r = len(_BALLS.spheres)
        if r > cap:
            raise BallCapExceeded(f"{g} has word length beyond cap {cap}")
        _BALLS.grow_to(r)
    return _BALLS.length[g]


def canonical_key(g: GroupElement) -> tuple[int, int, int, int, int]:
    return (word_length(g),) + g.sort_key()


def canonical_sorted(elements: Iterable[GroupElement]) -> list[GroupElement]:
    return sorted(elements, key=canonical_key)


def radius_of(elements: Iterable[GroupElement]) -> int:
    return max((word_length(g) for g in elements), default=0)


# ---------------------------------------------------------------------------
# infinite dihedral group D = <a, b | b^2, a^b = a^-1>


class DihedralElement(NamedTuple):
    """``a^m b^e``."""

    m: int
    e: int

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, DihedralElement):
            return NotImplemented
        return dihedral_mul(self, other)

    def __invert__(self) -> DihedralElement:
        return dihedral_inv(self)

    def __str__(self) -> str:
        if self.m == 0:
            return "b" if self.e else "1"
        s = "a" if self.m == 1 else f"a^{self.m}"
        return s + (" b" if self.e else "")


D_IDENTITY = DihedralElement(0, 0)
D_A = DihedralElement(1, 0)
D_B = DihedralElement(0, 1)


def dihedral_mul(g: DihedralElement, h: DihedralElement) -> DihedralElement:
    return DihedralElement(g.m - h.m if g.e else g.m + h.m, g.e ^ h.e)


def dihedral_inv(g: DihedralElement) -> DihedralElement:
    return g if g.e else DihedralElement(-g.m, 0)


_PI_TAG = (D_IDENTITY, D_A, D_B, DihedralElement(1, 1))


def project_dihedral(g: GroupElement) -> DihedralElement:
    """The quotient map a -> a, b -> b; x -> a^2 and y, z -> 1."""
    return dihedral_mul(DihedralElement(2 * g.i, 0), _PI_TAG[g.t])


def random_element(rng, bound: int = 5) -> GroupElement:
    return element(
        rng.randint(-bound, bound),
        rng.randint(-bound, bound),
        rng.randint(-bound, bound),
        rng.randrange(4),
    )


def from_word(word: Sequence[str] | str) -> GroupElement:
    """Multiply out a word in the letters a, b, A (=a^-1), B (=b^-1)."""
    letters = {"a": A, "b": B, "A": inv(A), "B": inv(B)}
    return product(letters[c] for c in word)
