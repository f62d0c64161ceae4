import random

import pytest

from hwunits.coefficients import GF2, INTEGERS, modulo
from hwunits.group import A, B, IDENTITY, X, mul, random_element
from hwunits.laurent import LaurentPoly
from hwunits.matrix import (
    INDUCED,
    PUBLISHED,
    PUBLISHED_GENERATORS,
    LaurentMatrix,
    active_representation,
    det,
    homomorphism_suite,
    induced_matrix,
    mat_star,
    mat_theta,
    rho_group,
    rho_ring,
)
from hwunits.ring import Character, RingElement, star, theta
from hwunits.units import murray_unit, u57, u57_as_printed, u67, u67_as_printed


def random_ring_element(rng, ring, terms=4):
    return RingElement({random_element(rng, 2): rng.randint(1, 5) for _ in range(terms)}, ring)


def test_identity_maps_to_identity():
    assert rho_group(IDENTITY) == LaurentMatrix.identity()
    assert det(LaurentMatrix.identity()) == 1


def test_published_a_matrix_transcribed():
    m = PUBLISHED.rho_a
    assert m[1, 0] == LaurentPoly.monomial(1, 0, 0)
    assert m[2, 3] == LaurentPoly.monomial(-1, 0, -1)
    assert m[3, 2] == LaurentPoly.monomial(0, -1, 1)


def test_published_a_squared():
    sq = PUBLISHED.rho_a * PUBLISHED.rho_a
    diag = [sq[i, i] for i in range(4)]
    assert diag == [LaurentPoly.monomial(1, 0, 0)] * 2 + [LaurentPoly.monomial(-1, -1, 0)] * 2


def test_published_matrices_fail_relation():
    report = homomorphism_suite(PUBLISHED, pairs=100)
    assert not report.passed


def test_induced_agrees_with_published_except_one_entry():
    diff = [
        (g, r, c)
        for g, pub, ind in (("a", PUBLISHED.rho_a, INDUCED.rho_a), ("b", PUBLISHED.rho_b, INDUCED.rho_b))
        for r in range(4)
        for c in range(4)
        if pub[r, c] != ind[r, c]
    ]
    assert diff == [("a", 2, 3)]
    assert INDUCED.rho_a[2, 3] == LaurentPoly.monomial(-1, 1, -1)


def test_active_representation_is_induced():
    assert active_representation() is INDUCED
    assert homomorphism_suite(INDUCED, pairs=500).passed


def test_rho_a_squared_is_rho_x():
    assert rho_group(A) * rho_group(A) == rho_group(X)


def test_rho_group_matches_induced_matrix():
    rng = random.Random(2)
    for _ in range(50):
        g = random_element(rng)
        assert rho_group(g) == induced_matrix(g)


def test_det_multiplicative():
    rng = random.Random(8)
    for _ in range(5):
        u, v = random_ring_element(rng, modulo(5)), random_ring_element(rng, modulo(5))
        assert det(rho_ring(u * v)) == det(rho_ring(u)) * det(rho_ring(v))


def test_rho_ring_multiplicative():
    rng = random.Random(9)
    for _ in range(10):
        u, v = random_ring_element(rng, INTEGERS), random_ring_element(rng, INTEGERS)
        assert rho_ring(u * v) == rho_ring(u) * rho_ring(v)


def test_det_murray_constant():
    d = det(rho_ring(murray_unit(3)))
    assert d.is_constant() and d.constant_term() in (1, 2)
    assert det(rho_ring(murray_unit(2))) == 1


def test_det_u57_u67():
    for u in (u57(), u67()):
        assert det(rho_ring(u)) == 1
    # the uncorrected tables are not units, and their determinants show it
    for u in (u57_as_printed(), u67_as_printed()):
        d = det(rho_ring(u))
        assert d.ring == GF2 and not d.is_constant()


def test_mat_star():
    one = LaurentMatrix.identity()
    assert mat_star(one) == one
    rng = random.Random(10)
    for _ in range(20):
        u = random_ring_element(rng, INTEGERS)
        m = rho_ring(u)
        assert mat_star(mat_star(m)) == m
        assert mat_star(m) == rho_ring(star(u))


def test_mat_theta_on_a():
    ra = rho_ring(RingElement.from_group(A))
    assert mat_theta(ra) == rho_ring(theta(RingElement.from_group(A)))
    assert mat_theta(ra) == ra * -1


@pytest.mark.parametrize("character", [Character(-1, -1), Character(1, -1), Character(-1, 1), Character(1, 1)])
def test_mat_theta_matches_theta(character):
    rng = random.Random(11)
    for _ in range(20):
        u = random_ring_element(rng, modulo(7))
        m = rho_ring(u)
        assert mat_theta(m, character) == rho_ring(theta(u, character))
        assert mat_theta(mat_theta(m, character), character) == m


def test_published_conjugation_realises_other_character():
    # conjugating by diag(1, 1, -y^-1, -y) is the character a -> +1, b -> -1
    ch = Character(1, -1)
    rng = random.Random(12)
    u = random_ring_element(rng, INTEGERS)
    assert mat_theta(rho_ring(u), ch) == rho_ring(theta(u, ch))
    assert mat_theta(rho_ring(u), ch) != rho_ring(theta(u))


def test_published_generator_table_shape():
    for rows in PUBLISHED_GENERATORS.values():
        assert len(rows) == 4 and all(len(r) == 4 for r in rows)
