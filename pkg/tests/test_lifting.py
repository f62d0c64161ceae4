import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from hwunits.coefficients import INTEGERS, modulo
from hwunits.group import A, B, IDENTITY, ball
from hwunits.lifting import (
    LiftError,
    LiftState,
    crt_combine,
    lift_step,
    lift_to_modulus,
    lift_with_escalation,
    probe_system,
    seed_pair,
    twisted_lift_probe,
)
from hwunits.linalg import rank_mod_p, solve_mod_p
from hwunits.ring import RingElement, is_trivial_unit, star_theta
from hwunits.units import murray_unit


def sympy_rank(a: np.ndarray, p: int) -> int:
    dm = DomainMatrix([[GF(p)(int(v)) for v in row] for row in a.tolist()], a.shape, GF(p))
    return dm.rank()


def test_solve_mod_p_small():
    a = np.array([[1, 1], [1, 0], [0, 1]])
    sol = solve_mod_p(a, np.array([0, 1, 1]), 2)
    assert sol.consistent and sol.rank == 2
    assert ((a @ sol.x) % 2 == [0, 1, 1]).all()
    assert not solve_mod_p(a, np.array([1, 1, 1]), 2).consistent


def test_rank_matches_sympy():
    rng = np.random.default_rng(0)
    for p in (2, 3, 5):
        for _ in range(10):
            a = rng.integers(0, p, size=(rng.integers(1, 9), rng.integers(1, 9)))
            assert rank_mod_p(a, p) == sympy_rank(a, p)


def test_crt_combine():
    u2 = RingElement({A: 1}, modulo(2))
    u3 = RingElement({A: 2, B: 1}, modulo(3))
    c = crt_combine(u2, u3)
    assert c.ring == modulo(6)
    assert c[A] == 5 and c[B] == 4
    assert c.change_ring(modulo(2)) == u2 and c.change_ring(modulo(3)) == u3
    with pytest.raises(ValueError):
        crt_combine(u2, RingElement({A: 1}, modulo(4)))


def test_seed_pair_is_inverse():
    for p in (2, 3, 5):
        u, up = seed_pair(p)
        assert up * u == 1


def test_zero_residual_lifts_at_radius_zero():
    one = RingElement.one(modulo(2))
    state = LiftState(one, one, 2)
    assert state.w == 0
    rep = lift_step(state, 2, 0)
    assert rep.consistent and rep.u_prime * rep.u == 1


def test_state_rejects_non_inverse():
    with pytest.raises(LiftError):
        LiftState(RingElement({A: 1}, modulo(2)), RingElement.one(modulo(2)), 2)


def test_lift_step_rejects_bad_prime():
    u, up = seed_pair(2)
    with pytest.raises(LiftError):
        lift_step(LiftState(u, up, 2), 3, 0)


def test_undersized_radius_reports_inconsistency():
    u, up = seed_pair(2)
    reports = lift_with_escalation(LiftState(u, up, 2), 2, radius_cap=1)
    assert [r.r for r in reports] == [0, 1]
    assert not any(r.consistent for r in reports)
    assert all(r.rank <= min(r.rows, r.cols) for r in reports)


def test_lift_mod_6_is_pure_crt():
    result = lift_to_modulus(6)
    assert result.verified and result.steps == []
    assert result.u.ring == modulo(6)
    assert result.u.change_ring(modulo(2)) == murray_unit(2)
    assert result.u.change_ring(modulo(3)) == murray_unit(3)


def test_lift_mod_4():
    result = lift_to_modulus(4)
    assert result.verified
    assert [s.r for s in result.steps] == [0, 1, 2, 3, 4]
    assert [s.consistent for s in result.steps] == [False] * 4 + [True]
    assert [s.rows for s in result.steps] == [len(ball(6 + r)) for r in range(5)]
    assert [s.cols for s in result.steps] == [2 * len(ball(r)) for r in range(5)]
    assert result.u_prime * result.u == 1
    assert result.u.change_ring(modulo(2)) == murray_unit(2)


def test_lift_cap_failure_reported():
    result = lift_to_modulus(4, radius_cap=2)
    assert not result.verified and result.u is None and "radius 2" in result.failure


def test_lift_rejects_small_modulus():
    with pytest.raises(ValueError):
        lift_to_modulus(1)


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_twisted_probe_murray(r):
    u0 = murray_unit(2)
    rep = twisted_lift_probe(u0, r)
    a, b, B_r, w = probe_system(u0, r)
    assert rep.cols == len(B_r)
    assert rep.residual_self_adjoint
    assert not rep.seed_trivial
    assert rep.rank == sympy_rank(a % 2, 2)
    augmented = np.concatenate([a % 2, (b % 2).reshape(-1, 1)], axis=1)
    assert rep.consistent == (sympy_rank(augmented, 2) == rep.rank)
    # observed: no twisted-unitary lift with v on ball(r), r <= 3
    assert not rep.consistent and not rep.nontrivial_solution


def test_probe_rank_monotone():
    ranks = [twisted_lift_probe(murray_unit(2), r).rank for r in range(4)]
    assert ranks == sorted(ranks)


def test_probe_trivial_seed_is_consistent():
    rep = twisted_lift_probe(RingElement.one(modulo(2)), 1)
    assert rep.consistent and rep.seed_trivial and rep.verified
    assert not rep.nontrivial_solution


def test_probe_rejects_non_unitary():
    with pytest.raises(LiftError):
        twisted_lift_probe(RingElement({IDENTITY: 1, A: 1}, modulo(2)), 0)
    with pytest.raises(LiftError):
        twisted_lift_probe(murray_unit(3), 0)


def test_probe_residual_definition():
    u0 = murray_unit(2)
    _, _, _, w = probe_system(u0, 0)
    U = u0.lift()
    assert star_theta(U) * U == w * 2 + 1
    assert is_trivial_unit(u0) is None
    assert w.ring == INTEGERS
