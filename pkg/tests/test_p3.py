from hypothesis import given
from hypothesis import strategies as st

from exspec import fusion, gamma, gl2, p3, ring
from exspec.fusion import L2, X
from exspec.gl2 import MatrixGroup
from exspec.p3 import P3Element

P = 3
a1, a2 = P3Element.a(1), P3Element.a(2)
y1, y2 = P3Element.of(ring.y1(P)), P3Element.of(ring.y2(P))


def test_relation_examples():
    assert a1 * a2 == P3Element.of(ring.y1(P) * ring.y2(P))
    assert P3Element.of(ring.RingElement.one(P)) * a1 == a1
    shared = ring.y1(P) ** 2 + ring.y2(P) ** 2 - ring.C(P)
    assert a1 * a1 == a2 * y1 == P3Element.of(shared)
    fourth = (a1 * a1) * (a1 * a1)
    assert not fourth.extra
    assert ring.to_vector(fourth.red, 8).shape == (ring.dim(P, 8),)
    assert ring.dim(P, 4) == 4


_GENS = [a1, a2, y1, y2, P3Element.of(ring.C(P)), P3Element.of(ring.v(P)), P3Element.a(1, 1)]


@given(st.lists(st.sampled_from(_GENS), min_size=2, max_size=4))
def test_restriction_is_multiplicative(factors):
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    for A in ring.lines(P):
        want = p3.p3_restrict(factors[0], A)
        for f in factors[1:]:
            want = want * p3.p3_restrict(f, A)
        assert p3.p3_restrict(prod, A) == want


@given(st.sampled_from(_GENS), st.sampled_from(_GENS), st.sampled_from(_GENS))
def test_associative_commutative(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


def test_quotient_examples():
    assert dict(p3.p3_quotient_factors(2)) == {gamma.EE(1, 1): 1}
    assert dict(p3.p3_quotient_factors(8)) == {gamma.EE(1, 0): 1}
    assert dict(p3.p3_quotient_factors(4)) == {}


def test_lowest_degree_examples():
    assert p3.lowest_half_degree(X(2, 1)) == 5
    assert p3.lowest_half_degree(X(1, 0)) == 7
    assert p3.lowest_half_degree(L2(0)) == 10


def test_pairing_examples():
    n1, s1 = fusion.sv_module(P, 1, 0)
    n2, s2 = fusion.sv_module(P, 1, 1)
    for gens, want in (([gl2.identity()], 2), ([gl2.diag(P, 1, -1)], 1)):
        H = MatrixGroup(P, gens)
        assert gl2.invariants(H, s1, n1).rank == gl2.invariants(H, s2, n2).rank == want
    assert fusion.p3_pairing_check()
