"""Lifting inverse pairs ``u' u = 1 (mod n)`` to larger moduli.

From ``u0' u0 = 1 + n w`` over ZZ, the pair ``u = u0 + n v``, ``u' = u0' + n v'``
satisfies ``u' u = 1 (mod pn)`` exactly when ``w + v' u0 + u0' v = 0 (mod p)``,
a linear system in the coefficients of v and v'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from .coefficients import INTEGERS, modulo
from .group import GroupElement, ball, canonical_sorted, radius_of
from .linalg import Solution, solve_mod_p
from .ring import CHI, Character, RingElement, is_trivial_unit, reduce_mod, star_theta
from .units import murray_unit

DEFAULT_RADIUS_CAP = 6


class LiftError(ValueError):
    pass


def _residual(u0: RingElement, u0_prime: RingElement, n: int) -> RingElement:
    """``w`` with ``u0' u0 = 1 + n w`` over ZZ."""
    prod = u0_prime.lift() * u0.lift() - 1
    bad = [g for g, c in prod.coeffs.items() if c % n]
    if bad:
        raise LiftError(f"u0' u0 is not 1 modulo {n}")
    return RingElement({g: c // n for g, c in prod.coeffs.items()}, INTEGERS)


@dataclass
class LiftState:
    u0: RingElement
    u0_prime: RingElement
    n: int
    w: RingElement = field(init=False)
    q: int = field(init=False)

    def __post_init__(self):
        if self.u0.ring != modulo(self.n) or self.u0_prime.ring != modulo(self.n):
            raise LiftError(f"both elements must live over ZZ/{self.n}")
        self.w = _residual(self.u0, self.u0_prime, self.n)
        self.q = radius_of(set(self.u0.coeffs) | set(self.u0_prime.coeffs) | set(self.w.coeffs))


@dataclass
class StepReport:
    p: int
    n: int
    r: int
    rows: int
    cols: int
    rank: int
    consistent: bool
    u: RingElement | None = None
    u_prime: RingElement | None = None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "modulus": self.n,
            "radius": self.r,
            "rows": self.rows,
            "cols": self.cols,
            "rank": self.rank,
            "consistent": self.consistent,
        }


def _column_map(elements: list[GroupElement]) -> dict[GroupElement, int]:
    return {g: k for k, g in enumerate(elements)}


def lift_step(state: LiftState, p: int, r: int) -> StepReport:
    """Solve ``w + v' u0 + u0' v = 0 (mod p)`` with v, v' supported on ball(r)."""
    if state.n % p or not sympy.isprime(p):
        raise LiftError(f"{p} is not a prime dividing {state.n}")
    B_r = ball(r)
    rows = _column_map(ball(state.q + r))
    u0 = state.u0.lift()
    u0p = state.u0_prime.lift()
    a = np.zeros((len(rows), 2 * len(B_r)), dtype=np.int64)
    for k, h in enumerate(B_r):
        for g, c in (u0p * h).coeffs.items():  # u0' v
            a[rows[g], k] += c
        for g, c in (h * u0).coeffs.items():  # v' u0
            a[rows[g], len(B_r) + k] += c
    b = np.zeros(len(rows), dtype=np.int64)
    for g, c in state.w.coeffs.items():
        if g not in rows:
            raise LiftError("w is not supported in ball(q + r)")
        b[rows[g]] = -c
    sol = solve_mod_p(a % p, b % p, p)
    report = StepReport(p, state.n, r, sol.rows, sol.cols, sol.rank, sol.consistent)
    if not sol.consistent:
        return report
    x = sol.x
    v = RingElement({h: int(x[k]) for k, h in enumerate(B_r)}, INTEGERS)
    vp = RingElement({h: int(x[len(B_r) + k]) for k, h in enumerate(B_r)}, INTEGERS)
    m = state.n * p
    u = (u0 + v * state.n).change_ring(modulo(m))
    u_prime = (u0p + vp * state.n).change_ring(modulo(m))
    if u_prime * u != 1:
        raise LiftError(f"lifted pair fails u'u = 1 mod {m}")
    report.u, report.u_prime = u, u_prime
    return report


def lift_with_escalation(state: LiftState, p: int, radius_cap: int = DEFAULT_RADIUS_CAP) -> list[StepReport]:
    """Try r = 0, 1, ... up to the cap; the last report is the successful one if any."""
    reports = []
    for r in range(radius_cap + 1):
        rep = lift_step(state, p, r)
        reports.append(rep)
        if rep.consistent:
            break
    return reports


def crt_combine(u_m: RingElement, u_n: RingElement) -> RingElement:
    m, n = u_m.ring.modulus, u_n.ring.modulus
    if m is None or n is None:
        raise ValueError("crt_combine needs two modular elements")
    if math.gcd(m, n) != 1:
        raise ValueError(f"moduli {m} and {n} are not coprime")
    coeffs = {}
    for g in set(u_m.coeffs) | set(u_n.coeffs):
        coeffs[g] = int(sympy.ntheory.modular.crt([m, n], [u_m[g], u_n[g]])[0])
    return RingElement(coeffs, modulo(m * n))


@dataclass
class LiftResult:
    n: int
    u: RingElement | None
    u_prime: RingElement | None
    steps: list[StepReport]
    verified: bool
    failure: str | None = None

    def as_dict(self) -> dict:
        return {
            "modulus": self.n,
            "verified": self.verified,
            "failure": self.failure,
            "support_u": len(self.u) if self.u is not None else None,
            "support_u_prime": len(self.u_prime) if self.u_prime is not None else None,
            "steps": [s.as_dict() for s in self.steps],
        }


def seed_pair(p: int) -> tuple[RingElement, RingElement]:
    u = murray_unit(p)
    return u, star_theta(u)


def lift_to_modulus(n: int, radius_cap: int = DEFAULT_RADIUS_CAP) -> LiftResult:
    """Inverse pair modulo n: Murray seeds per prime, CRT, then one lift per extra prime factor."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    factors = sympy.factorint(n)
    primes = sorted(factors)
    u, up = seed_pair(primes[0])
    mod = primes[0]
    for p in primes[1:]:
        v, vp = seed_pair(p)
        u, up = crt_combine(u, v), crt_combine(up, vp)
        mod *= p
    steps: list[StepReport] = []
    for p in primes:
        for _ in range(factors[p] - 1):
            reports = lift_with_escalation(LiftState(u, up, mod), p, radius_cap)
            steps.extend(reports)
            if not reports[-1].consistent:
                return LiftResult(n, None, None, steps, False, f"no lift mod {mod * p} up to radius {radius_cap}")
            u, up, mod = reports[-1].u, reports[-1].u_prime, mod * p
    verified = up * u == 1 and reduce_mod(up.lift() * u.lift(), n) == 1
    return LiftResult(n, u, up, steps, verified)


# ---------------------------------------------------------------------------
# twisted mod-4 probe


@dataclass
class ProbeReport:
    r: int
    rows: int
    cols: int
    rank: int
    consistent: bool
    residual_self_adjoint: bool
    seed_trivial: bool
    solution: RingElement | None = None
    verified: bool | None = None

    @property
    def nontrivial_solution(self) -> bool:
        return self.consistent and not self.seed_trivial and bool(self.verified)

    def as_dict(self) -> dict:
        return {
            "radius": self.r,
            "rows": self.rows,
            "cols": self.cols,
            "rank": self.rank,
            "consistent": self.consistent,
            "w_self_adjoint": self.residual_self_adjoint,
            "seed_trivial": self.seed_trivial,
            "nontrivial_solution": self.nontrivial_solution,
            "solution_support": len(self.solution) if self.solution is not None else None,
            "verified": self.verified,
        }


def probe_system(u0: RingElement, r: int, character: Character = CHI):
    """Matrix, right-hand side, unknown support and residual of the twisted mod-2 system."""
    if u0.ring != modulo(2):
        raise LiftError("the probe starts from an element over ZZ/2")
    adj = star_theta(u0, character)
    if adj * u0 != 1:
        raise LiftError("u0 is not theta-unitary modulo 2")
    U0 = u0.lift()
    U0adj = star_theta(U0, character)
    w = U0adj * U0 - 1
    w = RingElement({g: c // 2 for g, c in w.coeffs.items()}, INTEGERS)
    B_r = ball(r)
    rows_set = set(w.coeffs)
    cols = []
    for h in B_r:
        hv = RingElement.from_group(h, 1, INTEGERS)
        # u0^{*theta} v + v^{*theta} u0 for v = h
        col = U0adj * hv + star_theta(hv, character) * U0
        cols.append(col)
        rows_set |= set(col.coeffs)
    rows = _column_map(canonical_sorted(rows_set))
    a = np.zeros((len(rows), len(B_r)), dtype=np.int64)
    for k, col in enumerate(cols):
        for g, c in col.coeffs.items():
            a[rows[g], k] += c
    b = np.zeros(len(rows), dtype=np.int64)
    for g, c in w.coeffs.items():
        b[rows[g]] = -c
    return a, b, B_r, w


def twisted_lift_probe(u0: RingElement, r: int, character: Character = CHI) -> ProbeReport:
    """Look for u = u0 + 2v with ``u^{*theta} u = 1 (mod 4)``, v on ball(r)."""
    a, b, B_r, w = probe_system(u0, r, character)
    self_adjoint = star_theta(w, character) == w
    sol: Solution = solve_mod_p(a % 2, b % 2, 2)
    report = ProbeReport(
        r, sol.rows, sol.cols, sol.rank, sol.consistent, self_adjoint, is_trivial_unit(u0) is not None
    )
    if sol.consistent:
        v = RingElement({h: int(sol.x[k]) for k, h in enumerate(B_r)}, INTEGERS)
        u = (u0.lift() + v * 2).change_ring(modulo(4))
        report.solution = u
        report.verified = star_theta(u, character) * u == 1
    return report
