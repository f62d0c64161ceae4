import itertools
import random
import sys
from pathlib import Path

import pytest

from hwunits.coefficients import GF2
from hwunits.group import A, B, IDENTITY, TAU, X, ball, format_element, inv, mul, random_element
from hwunits.ring import RingElement, is_trivial_unit, star_theta
from hwunits.sat import (
    BRUTE_FORCE_CAP,
    CnfInstance,
    SearchSpec,
    SolverError,
    SpecError,
    _Builder,
    brute_force,
    build_system,
    decode_unit,
    encode_cnf,
    parse_dimacs,
    parse_model,
    search,
    solve_external,
    solve_inprocess,
    support_from_lines,
    theta_partner,
    write_dimacs,
)
from hwunits.units import murray_unit

SHIM = f"{sys.executable} {Path(__file__).with_name('fake_solver.py')} {{cnf}}"


def models(clauses, n):
    for bits in itertools.product([False, True], repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            yield bits


def test_and_gate_clauses():
    b = _Builder(2)
    w = b.and_gate(1, 2)
    assert len(b.clauses) == 3
    for bits in models(b.clauses, 3):
        assert bits[w - 1] == (bits[0] and bits[1])
    assert b.and_gate(1, 2) == w and len(b.clauses) == 3


def test_single_literal_parity_is_unit_clause():
    b = _Builder(1)
    b.parity([1], 1)
    assert b.clauses == [[1]]
    b = _Builder(1)
    b.parity([1], 0)
    assert b.clauses == [[-1]]


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("target", [0, 1])
def test_parity_chain(k, target):
    b = _Builder(k)
    b.parity(list(range(1, k + 1)), target)
    seen = set()
    for bits in models(b.clauses, b.top):
        assert sum(bits[:k]) % 2 == target
        seen.add(bits[:k])
    assert len(seen) == 2 ** (k - 1)


def test_empty_parity():
    b = _Builder(0)
    b.parity([], 0)
    assert b.clauses == []
    b.parity([], 1)
    assert not list(models(b.clauses, b.top))


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_at_least_two(k):
    b = _Builder(k)
    b.at_least_two(list(range(1, k + 1)))
    seen = {bits[:k] for bits in models(b.clauses, b.top)}
    expected = {bits for bits in itertools.product([False, True], repeat=k) if sum(bits) >= 2}
    assert seen == expected


def test_dimacs_round_trip():
    spec = SearchSpec((IDENTITY, A, B, X))
    cnf = encode_cnf(build_system(spec))
    text = write_dimacs(cnf)
    assert "c var 1 u[1]" in text
    back = parse_dimacs(text)
    assert back.num_vars == cnf.num_vars and back.clauses == cnf.clauses
    assert back.var_map == {k: v for k, v in cnf.var_map.items() if v <= cnf.num_unknowns}


def test_dimacs_errors():
    with pytest.raises(ValueError):
        parse_dimacs("1 2 0\n")
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 2 1\n1 2\n")
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 2 2\n1 2 0\n")
    with pytest.raises(ValueError):
        CnfInstance(2, [[3]])


def test_system_counts():
    S = ball(1)
    system = build_system(SearchSpec(tuple(S)))
    T = {inv(s) for s in S}
    assert system.product_count == len(S) * len(T)
    assert {g for g, _, _ in system.constraints} <= {mul(t, s) for t in T for s in S}
    assert system.num_unknowns == len(S) + len(T)


def test_theta_mode_halves_unknowns():
    S = tuple(ball(2))
    plain = build_system(SearchSpec(S))
    twisted = build_system(SearchSpec(S, theta_unitary=True))
    assert twisted.num_unknowns * 2 == plain.num_unknowns


def test_theta_partner_matches_star_theta():
    rng = random.Random(4)
    for _ in range(50):
        g = random_element(rng)
        u = RingElement.from_group(g, 1, GF2)
        assert star_theta(u) == RingElement.from_group(theta_partner(g), 1, GF2)


@pytest.mark.parametrize("p_mode", ["theta", "plain", "theta-tau"])
def test_murray_support_satisfies_system(p_mode):
    u = murray_unit(2)
    S = tuple(u.coeffs)
    kwargs = {"theta": dict(theta_unitary=True), "plain": dict(), "theta-tau": dict(theta_unitary=True, tau_symmetric=True)}[p_mode]
    if p_mode == "plain":
        kwargs["companion"] = tuple(star_theta(u).coeffs)
    spec = SearchSpec(S, exclude_trivial=True, **kwargs)
    system = build_system(spec)
    bits = [True] * system.num_unknowns
    assert system.evaluate(bits)
    got, companion = decode_unit(bits, spec, system)
    assert got == u and companion * u == 1
    result = search(spec, solver="pysat")
    assert result.status == "SAT" and result.unit * result.companion == 1


def test_tau_instability_is_reported():
    spec = SearchSpec((IDENTITY, B), tau_symmetric=True)
    with pytest.raises(SpecError, match=format_element(B)):
        build_system(spec)


def test_from_radius_tau_core_is_stable():
    spec = SearchSpec.from_radius(3, tau_symmetric=True)
    members = set(spec.support)
    assert all(TAU(g) in members for g in members)
    build_system(spec)


def test_brute_force_two_element_support():
    g = mul(A, B)
    assert brute_force(SearchSpec((g, mul(g, X)))) == RingElement.from_group(g, 1, GF2)
    assert brute_force(SearchSpec((g, mul(g, X)), exclude_trivial=True)) is None


def test_brute_force_cap():
    with pytest.raises(SpecError):
        brute_force(SearchSpec(tuple(ball(3))), cap=10)


def test_ball_one_has_no_nontrivial_unit():
    for flags in ({}, {"theta_unitary": True}):
        result = search(SearchSpec.from_radius(1, exclude_trivial=True, **flags))
        assert result.status == "UNSAT"
        assert search(SearchSpec.from_radius(1, exclude_trivial=True, **flags), solver="pysat").status == "UNSAT"


def oracle_search(spec: SearchSpec) -> bool:
    """Enumerate u and v directly in the group ring."""
    S = spec.support
    T = spec.companion_support
    for ubits in itertools.product([0, 1], repeat=len(S)):
        u = RingElement({s: 1 for s, b in zip(S, ubits) if b}, GF2)
        if spec.exclude_trivial and len(u) < 2:
            continue
        if spec.tau_symmetric and any((TAU(s) in u.coeffs) != (s in u.coeffs) for s in S):
            continue
        if spec.theta_unitary:
            if star_theta(u) * u == 1:
                return True
            continue
        for vbits in itertools.product([0, 1], repeat=len(T)):
            v = RingElement({t: 1 for t, b in zip(T, vbits) if b}, GF2)
            if v * u == 1 and u * v == 1:
                return True
    return False


def test_random_specs_agree_with_oracle():
    rng = random.Random(17)
    murray = list(murray_unit(2).coeffs)
    checked = 0
    while checked < 50:
        pool = murray if rng.random() < 0.5 else ball(2)
        S = rng.sample(pool, rng.randint(1, 5))
        theta = rng.random() < 0.5
        spec = SearchSpec(tuple(S), theta_unitary=theta, exclude_trivial=rng.random() < 0.5)
        system = build_system(spec)
        if system.num_unknowns > 12:
            continue
        expected = oracle_search(spec)
        assert (brute_force(spec) is not None) == expected
        assert (search(spec, solver="pysat").status == "SAT") == expected
        checked += 1


def test_tau_specs_agree_with_oracle():
    rng = random.Random(23)
    pool = [g for g in ball(2)]
    for _ in range(20):
        seeds = rng.sample(pool, 3)
        S = tuple({*seeds, *(TAU(g) for g in seeds)})
        spec = SearchSpec(S, theta_unitary=True, tau_symmetric=True, exclude_trivial=True)
        assert (search(spec, solver="pysat").status == "SAT") == oracle_search(spec)


def test_external_solver_shim(tmp_path):
    u = murray_unit(2)
    spec = SearchSpec(tuple(u.coeffs), theta_unitary=True, exclude_trivial=True)
    path = tmp_path / "m.cnf"
    result = search(spec, solver=SHIM, cnf_path=str(path))
    assert result.status == "SAT" and result.method == "external"
    assert result.unit * result.companion == 1 and is_trivial_unit(result.unit) is None
    assert parse_dimacs(path.read_text()).num_vars == result.cnf_vars
    unsat = search(SearchSpec.from_radius(1, exclude_trivial=True), solver=SHIM)
    assert unsat.status == "UNSAT"


def test_external_solver_errors():
    cnf = CnfInstance(1, [[1]])
    with pytest.raises(SolverError):
        solve_external(cnf, "no-such-solver-binary {cnf}")
    with pytest.raises(SolverError):
        solve_external(cnf, "cat")
    with pytest.raises(SolverError):
        solve_external(cnf, f"{sys.executable} -c 'import sys; sys.exit(3)' {{cnf}}")


def test_inprocess_solver():
    assert solve_inprocess(CnfInstance(1, [[1], [-1]])).status == "UNSAT"
    assert solve_inprocess(CnfInstance(2, [[1], [-2]])).assignment == {1: True, 2: False}


def test_parse_model():
    r = parse_model("c comment\ns SATISFIABLE\nv 1 -2\nv 3 0\n")
    assert r.status == "SAT" and r.assignment == {1: True, 2: False, 3: True}
    assert parse_model("s UNSATISFIABLE\n").satisfiable is False
    assert parse_model("s UNKNOWN\n").satisfiable is None
    for bad in ("", "v 1 0\n", "s SATISFIABLE\n", "s MAYBE\n", "s SATISFIABLE\nv 1 x 0\n"):
        with pytest.raises(SolverError):
            parse_model(bad)


def test_decode_requires_all_unknowns():
    spec = SearchSpec((IDENTITY, A))
    with pytest.raises(SpecError):
        decode_unit({1: True}, spec)


def test_support_from_lines():
    assert support_from_lines(["# comment", "1", "", "x^-1 y z^-1 ab"]) == [IDENTITY, mul(B, A)]


def test_brute_force_cap_constant():
    assert BRUTE_FORCE_CAP == 24


def test_identity_row_present_when_one_not_in_products():
    # S = {b}, T = {b}: T S = {y}, so there is no way to reach 1
    spec = SearchSpec((B,), companion=(B,))
    system = build_system(spec)
    assert system.constraints[0][:2] == (IDENTITY, 1)
    assert brute_force(spec) is None
    assert search(spec, solver="pysat").status == "UNSAT"
