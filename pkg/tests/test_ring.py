import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exspec import gl2, ring
from exspec.ring import INF, PolyAB, RingElement

PRIMES = (3, 5, 7)


def mono(p, a, b, c=0, d=0):
    return RingElement.monomial(p, a, b, c, d)


@pytest.mark.parametrize("p", PRIMES)
def test_reduce_examples(p):
    assert ring.reduce(p, (p, 0, 0, 0)) == mono(p, 1, 0, 1)
    assert ring.reduce(p, (0, 0, 0, 0)) == RingElement.one(p)
    C = ring.C(p)
    assert ring.reduce(p, (p - 1, p - 1, 0, 0)) == C * ring.Y1(p) + C * ring.Y2(p) - C * C


@pytest.mark.parametrize("p", PRIMES)
def test_multiply_examples(p):
    y1, y2 = ring.y1(p), ring.y2(p)
    assert ring.Y1(p) * y2 == mono(p, p - 1, 1)
    assert y1 * ring.Y1(p) == mono(p, 1, 0, 1)
    C = ring.C(p)
    rhs = C * ring.Y1(p) + C * ring.Y2(p) - ring.reduce(p, (p - 1, p - 1, 0, 0))
    assert C * C == ring.Y1(p) ** 2 + ring.Y2(p) ** 2 - ring.Y1(p) * ring.Y2(p)
    assert C * C == rhs


def test_graded_basis_examples():
    assert ring.graded_basis(5, 0) == (ring.Monomial(0, 0, 0, 0),)
    assert ring.dim(7, 2) == 2
    basis = ring.graded_basis(5, 8)
    assert len(basis) == 6
    assert ring.Monomial(0, 0, 1, 0) in basis
    assert sum(1 for m in basis if m.a + m.b == 4) == 5
    assert ring.graded_basis(5, 7) == ()


@pytest.mark.parametrize("p", PRIMES)
def test_normal_y_count(p):
    normal = [(a, b) for a in range(p) for b in range(p) if (a, b) != (p - 1, p - 1)]
    assert len(normal) == p * p - 1
    s_count = sum(i + 1 for i in range(p))
    t_count = sum(p - i for i in range(1, p - 1))
    assert s_count + t_count == p * p - 1


@pytest.mark.parametrize("p", PRIMES)
def test_restrict_examples(p):
    A = 3 % p or 1
    assert ring.restrict(ring.y2(p), A) == PolyAB(p, {(1, 0): A})
    for line in ring.lines(p):
        assert ring.restrict(RingElement.one(p), line) == PolyAB(p, {(0, 0): 1})
    dickson = (PolyAB.y(p) * PolyAB.u(p) ** p - PolyAB.y(p) ** p * PolyAB.u(p)) ** (p - 1)
    for line in ring.lines(p):
        assert ring.restrict(ring.D2(p), line) == dickson


@pytest.mark.parametrize("p", PRIMES)
def test_dickson_restrictions_invariant(p):
    gens = gl2.named_group(p, "GL2").generators
    for x in (ring.D1(p), ring.D2(p)):
        for line in ring.lines(p):
            f = ring.restrict(x, line)
            assert all(gl2.poly_act(g, f) == f for g in gens)


@pytest.mark.parametrize("p", PRIMES)
def test_restriction_detects(p):
    for n in range(0, 61, 2):
        assert ring.joint_restriction_rank(p, n) == ring.dim(p, n)


@pytest.mark.parametrize("p", PRIMES)
def test_random_products_restrict(p):
    rng = random.Random(p)
    for _ in range(200):
        x, y = (
            ring.from_vector(p, n, [rng.randrange(p) for _ in range(ring.dim(p, n))])
            for n in (2 * rng.randrange(16), 2 * rng.randrange(16))
        )
        for line in ring.lines(p):
            assert ring.restrict(x * y, line) == ring.restrict(x, line) * ring.restrict(y, line)


def _monomials_up_to(p, top):
    return [RingElement.monomial(p, *m) for n in range(0, top + 1, 2) for m in ring.graded_basis(p, n)]


def test_assoc_comm_exhaustive_p3():
    p = 3
    monos = _monomials_up_to(p, 10)
    for x, y in product(monos, repeat=2):
        assert x * y == y * x
    for x, y, z in product(monos[:14], repeat=3):
        assert (x * y) * z == x * (y * z)


@st.composite
def monomial_triple(draw):
    p = draw(st.sampled_from(PRIMES))
    out = []
    for _ in range(3):
        n = draw(st.integers(0, 10)) * 2
        basis = ring.graded_basis(p, n)
        out.append(RingElement.monomial(p, *draw(st.sampled_from(basis))))
    return out


@given(monomial_triple())
def test_assoc_comm(triple):
    x, y, z = triple
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@pytest.mark.parametrize("p", PRIMES)
def test_dickson_span_rank(p):
    n = 2 * (p * p - 1)
    gens = [ring.V(p) * s for s in ring.y_monomials(p, p - 1)]
    assert ring.span_subspace(p, n, gens, "D", strict=True).rank == p
    assert ring.span_subspace(p, 0, [RingElement.one(p)], "Fp").rank == 1


def test_integral_basis():
    for n in range(0, 40, 2):
        assert ring.integral_basis(3, n) == ring.graded_basis(3, n)
    assert ring.integral_basis(5, 4) == ring.graded_basis(5, 4) + (ring.BClass(0, 2),)
    assert ring.integral_basis(5, 5) == ()


def test_vector_round_trip():
    p, n = 7, 40
    rng = random.Random(1)
    vec = [rng.randrange(p) for _ in range(ring.dim(p, n))]
    assert ring.to_vector(ring.from_vector(p, n, vec), n).tolist() == vec


def test_bad_inputs():
    with pytest.raises(ValueError):
        ring.check_prime(17)
    with pytest.raises(ValueError):
        ring.check_line(5, 5)
    assert ring.check_line(5, INF) == INF
    with pytest.raises(ValueError):
        ring.y1(3) + ring.y1(5)
