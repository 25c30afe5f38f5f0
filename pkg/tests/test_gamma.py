import pytest

from exspec import gamma, ring
from exspec.gamma import AA, CP, EE, TRIV

PRIMES = (3, 5, 7)


@pytest.mark.parametrize("p", PRIMES)
def test_simple_dims(p):
    assert gamma.simple_dim(EE(p - 1, 0), p) == p
    assert gamma.simple_dim(CP(0), p) == p + 1
    assert gamma.simple_dim(TRIV, p) == 1
    assert gamma.simple_dim(EE(0, 1), p) == 1
    assert gamma.simple_dim(AA(0), p) == p + 1


@pytest.mark.parametrize("p", PRIMES)
def test_labels_parse_round_trip(p):
    for label in gamma.all_labels(p):
        assert gamma.parse_label(str(label)) == label
    with pytest.raises(ValueError):
        EE(p, 0).validate(p)
    with pytest.raises(ValueError):
        gamma.parse_label("XX(1)")


@pytest.mark.parametrize("p", PRIMES)
def test_gamma_examples(p):
    assert gamma.gamma_basis(p, TRIV, 0).rank == 1
    assert all(gamma.gamma_basis(p, TRIV, n).rank == 0 for n in range(2, 40, 2))
    for q in range(1, p - 1):
        space = gamma.gamma_basis(p, EE(0, q), 2 * p * q)
        assert space.rank == 1
        assert ring.to_vector(ring.v(p) ** q, 2 * p * q) in space
    for i in range(1, p - 1):
        assert gamma.gamma_basis(p, CP(i), 2 * i).rank == i + 1


def test_direct_sum_examples():
    assert gamma.check_gamma_direct_sum(3, 60).ok
    assert gamma.check_gamma_direct_sum(5, 160).ok
    rep = gamma.check_gamma_direct_sum(5, 9)
    assert rep.degrees_checked == 5 and rep.ok


@pytest.mark.parametrize("p", PRIMES)
def test_ideal_examples(p):
    assert all(gamma.I_basis(p, n).rank == 0 for n in range(0, 2 * p + 2, 2))
    assert gamma.I_basis(p, 2 * p + 2).rank == 2
    assert gamma.L_basis(p, 0).rank == 1
    assert ring.to_vector(ring.v(p), 2 * p) in gamma.L_basis(p, 2 * p)
    for i in range(p - 1):
        assert all(gamma.i_cap_gamma_basis(p, CP(i), n).rank == 0 for n in range(0, 60, 2))


def test_ideal_p3_degree_10():
    assert gamma.I_basis(3, 10).rank == 3


def test_nilpotent_examples():
    assert all(gamma.N_basis(3, n).rank == 0 for n in range(0, 40, 2))
    assert gamma.N_basis(5, 4, 2).rank == 1
    assert gamma.N_basis(5, 4, 1).rank == 0


@pytest.mark.parametrize("p", PRIMES)
def test_low_degree_factors(p):
    assert gamma.factor_total(p, gamma.hefp_factors(p, 1)) == 2
    assert gamma.factor_total(p, gamma.hefp_factors(p, 2)) == 4
    assert gamma.hefp_factors(p, 2)[EE(1, 1)] == 1
    for s in gamma.all_labels(p):
        assert gamma.summand_dim(p, s, 0) == (1 if s == TRIV else 0)


@pytest.mark.parametrize("p", PRIMES)
def test_first_degrees(p):
    assert gamma.first_degree(p, EE(p - 1, 0), "HE") == 2 * (p * p - 1)
    assert gamma.first_degree(p, EE(0, 0), "HE") == 2 * p * (p - 1)
    bound = 2 * (p + 2) * (p - 1)
    for s in gamma.all_labels(p):
        n = gamma.first_degree(p, s, "HE")
        assert n is not None and n <= bound
        assert gamma.first_degree(p, s, "HEFP") <= 2 * (p * p - 2)


@pytest.mark.parametrize("p", PRIMES)
def test_blocks_are_independent(p):
    # strict spans raise on any collision among the products
    for n in range(0, 2 * (p + 2) * (p - 1) + 1, 2):
        for s in gamma.all_labels(p):
            gamma.gamma_basis(p, s, n)
            gamma.i_cap_gamma_basis(p, s, n)


@pytest.mark.parametrize("p", PRIMES)
def test_factor_totals_match_direct_count(p):
    for n in range(0, 2 * (p * p - 2) + 1):
        assert gamma.factor_total(p, gamma.hefp_factors(p, n)) == gamma.hefp_dim_direct(p, n)


def test_unknown_space():
    with pytest.raises(ValueError):
        gamma.factors(5, 2, "HG")
