import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from exspec.fp import (
    DimensionError,
    ModulusError,
    Subspace,
    intersect,
    join,
    kernel_stack,
    member,
    rank,
    rref_basis,
)


def test_rref_examples():
    assert rref_basis([], 3, 5).rank == 0
    s = rref_basis([(1, 0), (2, 0)], 2, 5)
    assert s.rank == 1
    assert s.basis.tolist() == [[1, 0]]
    assert rref_basis([(1, 1), (1, 2)], 2, 3).rank == 2


def test_kernel_examples():
    assert kernel_stack([], 4, 5).rank == 4
    eye = np.eye(3, dtype=np.int64)
    assert kernel_stack([eye - eye], 3, 7) == Subspace.full(7, 3)
    k = kernel_stack([np.array([[1, 1], [0, 0]])], 2, 7)
    assert k.basis.tolist() == [[1, 6]]


def test_intersection_examples():
    a = rref_basis([(1, 2, 3)], 3, 5)
    assert intersect(a, a) == a
    assert intersect(rref_basis([(1, 0)], 2, 5), rref_basis([(0, 1)], 2, 5)).rank == 0
    both = rref_basis([(1, 0), (0, 1)], 2, 5)
    diag = rref_basis([(1, 1)], 2, 5)
    assert intersect(both, diag) == diag


def test_membership_examples():
    line = rref_basis([(1, 0)], 2, 7)
    assert member((0, 0), line)
    assert not member((1, 1), line)
    assert member((2, 4), rref_basis([(1, 2)], 2, 7))


def test_mismatches_raise():
    with pytest.raises(ModulusError):
        join(Subspace.zero(3, 2), Subspace.zero(5, 2))
    with pytest.raises(DimensionError):
        join(Subspace.zero(3, 2), Subspace.zero(3, 3))
    with pytest.raises(ValueError):
        rref_basis([(1,)], 1, 4)


@st.composite
def subspace_pair(draw):
    p = draw(st.sampled_from([3, 5, 7]))
    dim = draw(st.integers(1, 60))

    def vecs():
        k = draw(st.integers(0, min(dim, 8)))
        return [draw(st.lists(st.integers(0, p - 1), min_size=dim, max_size=dim)) for _ in range(k)]

    return p, dim, vecs(), vecs()


@given(subspace_pair())
def test_modular_law(data):
    p, dim, u, w = data
    a, b = rref_basis(u, dim, p), rref_basis(w, dim, p)
    assert intersect(a, b).rank + join(a, b).rank == a.rank + b.rank
    assert intersect(a, b) <= a and a <= join(a, b)


@given(subspace_pair())
def test_rref_idempotent(data):
    p, dim, u, _ = data
    a = rref_basis(u, dim, p)
    again = rref_basis(a.basis, dim, p)
    assert np.array_equal(again.basis, a.basis)
    assert again.pivots == a.pivots


@given(subspace_pair())
def test_kernel_rank(data):
    p, dim, u, w = data
    maps = [np.array(u, dtype=np.int64).reshape(-1, dim), np.array(w, dtype=np.int64).reshape(-1, dim)]
    k = kernel_stack(maps, dim, p)
    stacked = np.vstack(maps)
    assert k.rank == dim - rank(stacked, p)
    # second pass: every kernel vector is killed
    assert not ((stacked @ k.basis.T) % p).any()
