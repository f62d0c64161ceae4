"""Explicit units of the group ring and checks of their claimed properties."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache

import sympy

from .coefficients import GF2, INTEGERS, CoefficientRing, modulo
from .group import A, B, TAU, TAU_LITERAL, Z, GroupEndomorphism, mul, power
from .laurent import LaurentPoly, parse_laurent
from .ring import (
    CHI,
    Character,
    ComponentForm,
    RingElement,
    is_theta_unitary,
    is_trivial_unit,
    star_theta,
    tau_ring,
    verify_inverse_pair,
)

# Murray's unit with t=0, w=1, left-multiplied by az and right-multiplied by b^-1:
#   u = 1 + (1 - z^-1)^(p-2) * (P + Q a + R b + S ab)
# Each component is a sum of products of the listed factors. As printed, P
# lacks the factor z^-1; without it u is not a unit of F_p P for any p (its
# determinant under the induced representation is non-constant).
MURRAY_COMPONENTS_AS_PRINTED: dict[str, list[list[str]]] = {
    "1": [["4 + x + x^{-1} + y + y^{-1}"]],
    "a": [["1 + y^{-1}", "x^{-1} + y"], ["1 + x^{-1}", "1 + z^{-1}"]],
    "b": [["1 + x^{-1}", "x + y^{-1}"], ["1 + y^{-1}", "1 + z"]],
    "ab": [["1 + x^{-1}", "1 + y", "z^{-1}", "1 + z^{-1}"]],
}
MURRAY_COMPONENTS: dict[str, list[list[str]]] = {
    **MURRAY_COMPONENTS_AS_PRINTED,
    "1": [["4 + x + x^{-1} + y + y^{-1}", "z^{-1}"]],
}
MURRAY_PREFACTOR = "1 - z^{-1}"

U57_COMPONENTS_AS_PRINTED: dict[str, str] = {
    "1": "xyz^{-1}+x^{-1}z^{-1}+xy^{-1}z^{-1}+y^{-2}+1+x^{-2}+yz^{-1}+y^{2}+y^{-1}z^{-1}+x^{-1}yz^{-1}"
    "+x^{-1}y^{-1}z^{-1}+xyz+xy^{-1}z+x^{2}+xz^{-1}+x^{-1}yz+x^{-1}y^{-1}z",
    "a": "y^{-1}z^{2}+xz+x^{-1}y^{-1}z^{2}+yz^{2}+x^{-1}yz^{2}+xy+y^{2}z+y^{-1}+x^{-1}y+x^{-1}y^{-2}z"
    "+yz+x^{-1}y^{-1}z+x^{-2}y^{-1}+1+x^{-2}z+x^{-1}",
    "b": "y^{-1}z+x^{-1}y^{-1}+xy^{-1}z+x^{-2}y^{-1}+x^{2}+x^{-1}z+z+x^{-1}y^{-1}z^{-1}+x+xyz"
    "+xy^{-1}z^{-1}+x^{-1}z^{-1}+y+x^{-1}y^{-2}z+xz^{-1}+y^{-2}",
    "ab": "x^{-1}z^{-2}+yz^{-2}+z^{-2}+x^{-1}yz^{-3}+x^{-1}z^{-3}+yz^{-3}+z^{-3}+x^{-1}yz^{-2}",
}

U67_COMPONENTS_AS_PRINTED: dict[str, str] = {
    "1": "xyz^{-1}+xy^{-1}z^{-1}+y^{-2}+1+xy+xz+xy^{-1}+y^{2}+y^{-1}z^{-1}+yz^{-1}+x^{-1}yz^{-1}"
    "+x^{-1}y^{-1}z^{-1}+xyz+x^{-1}z+x^{-1}y+xy^{-1}z+x^{-1}y^{-1}+x^{-1}yz+x^{-1}y^{-1}z",
    "a": "y^{-2}+xy^{-1}+xz+y^{-1}+z+y+x^{-1}y^{-1}+x^{-1}z+x^{-2}yz+x^{-1}y+xy^{-1}z+z^{-1}"
    "+x^{-1}z^{-1}+yz+x^{-1}y^{-1}z+x^{-2}+y^{-1}z^{-1}+x^{-1}y^{-1}z^{-1}+yz^{-1}+x+x^{-1}yz^{-1}"
    "+x^{-2}z+x^{-1}y^{2}+x^{-2}y",
    "b": "xy^{-1}z+x^{-1}z+xz+xy^{-2}z^{-1}+y+x^{-1}yz^{-1}+x^{-1}y^{-1}z+y^{-2}",
    "ab": "z^{-1}+xz^{-1}+xyz^{-2}+x^{-2}yz^{-1}+xz^{-2}+x^{-1}yz^{-3}+x^{-2}z^{-1}+x^{-1}yz^{-1}"
    "+x^{-2}yz^{-2}+x^{-1}z^{-3}+yz^{-3}+x^{-1}z^{-1}+yz^{-1}+x^{-2}z^{-2}+z^{-3}+xyz^{-1}",
}

_TAG_ORDER = ("1", "a", "b", "ab")

# The displayed 57- and 67-term elements only become units once the a- and
# ab-components are multiplied by z^-1 and z respectively.
DISPLAY_Z_SHIFT: dict[str, int] = {"1": 0, "a": -1, "b": 0, "ab": 1}


def _factored_sum(products: list[list[str]], ring: CoefficientRing) -> LaurentPoly:
    total = LaurentPoly.zero(ring)
    for factors in products:
        term = LaurentPoly.constant(1, ring)
        for f in factors:
            term = term * parse_laurent(f, ring)
        total = total + term
    return total


def _murray_components(p: int, ring: CoefficientRing, table: dict[str, list[list[str]]]) -> ComponentForm:
    pre = parse_laurent(MURRAY_PREFACTOR, ring) ** (p - 2)
    parts = [pre * _factored_sum(table[t], ring) for t in _TAG_ORDER]
    parts[0] = parts[0] + LaurentPoly.constant(1, ring)
    return ComponentForm(*parts)


def _check_prime(p: int) -> None:
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"murray_unit needs a prime characteristic, got {p}")


@lru_cache(maxsize=None)
def murray_unit(p: int) -> RingElement:
    _check_prime(p)
    return _murray_components(p, modulo(p), MURRAY_COMPONENTS).to_element()


@lru_cache(maxsize=None)
def murray_unit_as_printed(p: int) -> RingElement:
    _check_prime(p)
    return _murray_components(p, modulo(p), MURRAY_COMPONENTS_AS_PRINTED).to_element()


def murray_unit_integer_lift(p: int) -> RingElement:
    """The same formula evaluated over ZZ (the unit property holds only mod p)."""
    _check_prime(p)
    return _murray_components(p, INTEGERS, MURRAY_COMPONENTS).to_element()


def _from_display(components: dict[str, str], corrected: bool = True) -> RingElement:
    parts = []
    for t in _TAG_ORDER:
        poly = parse_laurent(components[t], GF2)
        parts.append(poly.shift(0, 0, DISPLAY_Z_SHIFT[t]) if corrected else poly)
    return ComponentForm(*parts).to_element()


@lru_cache(maxsize=None)
def u57() -> RingElement:
    return _from_display(U57_COMPONENTS_AS_PRINTED)


@lru_cache(maxsize=None)
def u67() -> RingElement:
    return _from_display(U67_COMPONENTS_AS_PRINTED)


@lru_cache(maxsize=None)
def u57_as_printed() -> RingElement:
    return _from_display(U57_COMPONENTS_AS_PRINTED, corrected=False)


@lru_cache(maxsize=None)
def u67_as_printed() -> RingElement:
    return _from_display(U67_COMPONENTS_AS_PRINTED, corrected=False)


@dataclass(frozen=True)
class UnitClaims:
    theta_unitary_left: bool
    theta_unitary_right: bool
    tau_symmetric: bool
    nontrivial: bool
    unit: bool
    support_size: int

    @property
    def theta_unitary(self) -> bool:
        return self.theta_unitary_left and self.theta_unitary_right

    @property
    def all_hold(self) -> bool:
        return self.theta_unitary and self.tau_symmetric and self.nontrivial and self.unit

    def as_dict(self) -> dict:
        d = asdict(self)
        d["theta_unitary"] = self.theta_unitary
        d["all_hold"] = self.all_hold
        return d


def verify_unit_claims(
    u: RingElement,
    character: Character = CHI,
    tau: GroupEndomorphism = TAU,
) -> UnitClaims:
    report = is_theta_unitary(u, character)
    return UnitClaims(
        theta_unitary_left=report.left,
        theta_unitary_right=report.right,
        tau_symmetric=tau_ring(u, tau) == u,
        nontrivial=is_trivial_unit(u) is None,
        unit=verify_inverse_pair(u, star_theta(u, character)),
        support_size=len(u),
    )


def passman_endo(t: int, w: int) -> GroupEndomorphism:
    """The automorphism ``a -> z^(w-t) a, b -> z^w b``."""
    return GroupEndomorphism(mul(power(Z, w - t), A), mul(power(Z, w), B), f"passman(t={t}, w={w})")


CHARACTERS = tuple(Character(sa, sb) for sa in (-1, 1) for sb in (-1, 1))
TAUS = (TAU_LITERAL, TAU)


@dataclass(frozen=True)
class Convention:
    character: Character
    tau: GroupEndomorphism
    claims: UnitClaims

    def as_dict(self) -> dict:
        return {
            "chi(a)": self.character.on_a,
            "chi(b)": self.character.on_b,
            "tau": self.tau.name,
            "all_hold": self.claims.all_hold,
            "theta_unitary": self.claims.theta_unitary,
            "tau_symmetric": self.claims.tau_symmetric,
        }


def resolve_conventions(u: RingElement) -> list[Convention]:
    """Evaluate the claims under every sign character and both readings of tau.

    Over ZZ/2 the characters are indistinguishable, so only one is tried.
    """
    characters = CHARACTERS[:1] if u.ring.modulus == 2 else CHARACTERS
    return [Convention(ch, t, verify_unit_claims(u, ch, t)) for ch in characters for t in TAUS]
