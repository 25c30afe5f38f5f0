"""Dense linear algebra over a prime field F_p.

Everything here works on integer numpy arrays holding residues in
``[0, p)``.  A :class:`Subspace` is a row space stored in reduced row echelon
form with unit pivots, so two subspaces of the same ambient space are equal
exactly when their bases are equal entrywise.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

DTYPE = np.int64


class DimensionError(ValueError):
    """Vectors or matrices of incompatible shape were combined."""


class ModulusError(ValueError):
    """Objects over different prime fields were combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def check_modulus(p: int) -> int:
    p = int(p)
    if p < 3 or not is_prime(p):
        raise ModulusError(f"modulus must be an odd prime, got {p}")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=DTYPE)
    for x in range(1, p):
        table[x] = pow(x, p - 2, p)
    table.flags.writeable = False
    return table


def as_matrix(rows, ncols: int, p: int) -> np.ndarray:
    """Coerce a list of vectors (or a 2-d array) into a reduced ``(k, ncols)`` array."""
    if isinstance(rows, np.ndarray):
        mat = rows.astype(DTYPE, copy=True)
        if mat.ndim == 1:
            mat = mat.reshape(1, -1) if mat.size else mat.reshape(0, ncols)
    else:
        rows = list(rows)
        if not rows:
            return np.zeros((0, ncols), dtype=DTYPE)
        for r in rows:
            if len(r) != ncols:
                raise DimensionError(f"vector of length {len(r)} in ambient dimension {ncols}")
        mat = np.array(rows, dtype=DTYPE).reshape(len(rows), ncols)
    if mat.ndim != 2 or mat.shape[1] != ncols:
        raise DimensionError(f"expected {ncols} columns, got shape {mat.shape}")
    return mat % p


def row_reduce(mat: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Return ``(R, pivots)`` with ``R`` the nonzero rows of the RREF of ``mat``."""
    a = np.array(mat, dtype=DTYPE) % p
    nrows, ncols = a.shape
    inv = inverse_table(p)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        if a[r, c] != 1:
            a[r] = (a[r] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(row_reduce(mat, p)[1])


class Subspace:
    """Row space of F_p^n in canonical reduced form.

    Instances are immutable; ``basis`` is a read-only array whose rows are the
    RREF basis vectors and ``pivots`` the (strictly increasing) pivot columns.
    """

    __slots__ = ("p", "ambient_dim", "basis", "pivots")

    def __init__(self, p: int, ambient_dim: int, basis: np.ndarray, pivots: tuple[int, ...]):
        basis = np.ascontiguousarray(basis, dtype=DTYPE)
        basis.flags.writeable = False
        self.p = p
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls(p, ambient_dim, np.zeros((0, ambient_dim), dtype=DTYPE), ())

    @classmethod
    def full(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls(p, ambient_dim, np.eye(ambient_dim, dtype=DTYPE), tuple(range(ambient_dim)))

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return self.rank

    def _check_compatible(self, other: "Subspace") -> None:
        if self.p != other.p:
            raise ModulusError(f"moduli differ: {self.p} vs {other.p}")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, ambient_dim={self.ambient_dim}, rank={self.rank})"

    def __contains__(self, x) -> bool:
        return member(x, self)

    def __add__(self, other: "Subspace") -> "Subspace":
        return join(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(member(row, other) for row in self.basis)

    def annihilator(self) -> np.ndarray:
        """Rows ``N`` with ``x`` in this space iff ``N @ x == 0 (mod p)``."""
        return _nullspace_rows(self.basis, self.pivots, self.ambient_dim, self.p)

    def reduce_vector(self, x) -> np.ndarray:
        """Residue of ``x`` after clearing every pivot coordinate."""
        v = np.asarray(x, dtype=DTYPE) % self.p
        if v.shape != (self.ambient_dim,):
            raise DimensionError(f"vector of length {v.size} in ambient dimension {self.ambient_dim}")
        for row, c in zip(self.basis, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def coordinates(self, x) -> np.ndarray:
        """Coefficients of ``x`` in terms of ``basis``; raises if ``x`` is not a member."""
        v = np.asarray(x, dtype=DTYPE) % self.p
        if self.reduce_vector(v).any():
            raise ValueError("vector is not in the subspace")
        return v[list(self.pivots)] if self.pivots else np.zeros(0, dtype=DTYPE)


def _nullspace_rows(rref: np.ndarray, pivots: tuple[int, ...], ncols: int, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : rref @ x = 0}`` given an RREF matrix."""
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    out = np.zeros((len(free), ncols), dtype=DTYPE)
    for k, f in enumerate(free):
        out[k, f] = 1
        for row, c in zip(rref, pivots):
            out[k, c] = (-row[f]) % p
    return out


def _make(mat: np.ndarray, ambient_dim: int, p: int) -> Subspace:
    if mat.shape[0] == 0:
        return Subspace.zero(p, ambient_dim)
    basis, pivots = row_reduce(mat, p)
    return Subspace(p, ambient_dim, basis, pivots)


def rref_basis(vectors, ambient_dim: int, p: int) -> Subspace:
    """Canonical reduced basis of the span of ``vectors`` inside F_p^ambient_dim."""
    p = check_modulus(p)
    return _make(as_matrix(vectors, ambient_dim, p), ambient_dim, p)


def kernel_stack(maps, domain_dim: int, p: int) -> Subspace:
    """Common kernel ``{x : M x = 0 for all M in maps}`` of matrices acting on columns."""
    p = check_modulus(p)
    mats = [as_matrix(m, domain_dim, p) for m in maps]
    mats = [m for m in mats if m.shape[0]]
    if not mats:
        return Subspace.full(p, domain_dim)
    stacked = np.vstack(mats)
    red, pivots = row_reduce(stacked, p)
    null = _nullspace_rows(red, pivots, domain_dim, p)
    return _make(null, domain_dim, p)


def join(a: Subspace, b: Subspace) -> Subspace:
    a._check_compatible(b)
    return _make(np.vstack([a.basis, b.basis]), a.ambient_dim, a.p)


def span_all(spaces, ambient_dim: int, p: int) -> Subspace:
    mats = [s.basis for s in spaces if s.rank]
    if not mats:
        return Subspace.zero(p, ambient_dim)
    return _make(np.vstack(mats), ambient_dim, p)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Largest subspace contained in both ``a`` and ``b``."""
    a._check_compatible(b)
    if a.rank == 0 or b.rank == 0:
        return Subspace.zero(a.p, a.ambient_dim)
    return kernel_stack([a.annihilator(), b.annihilator()], a.ambient_dim, a.p)


def member(x, s: Subspace) -> bool:
    return not s.reduce_vector(x).any()


def preimage(mat: np.ndarray, target: Subspace, domain_dim: int) -> Subspace:
    """``{x : mat @ x in target}`` for ``mat`` of shape ``(target.ambient_dim, domain_dim)``."""
    p = target.p
    mat = np.asarray(mat, dtype=DTYPE) % p
    if mat.shape != (target.ambient_dim, domain_dim):
        raise DimensionError(f"map of shape {mat.shape} does not land in ambient {target.ambient_dim}")
    ann = target.annihilator()
    if ann.shape[0] == 0:
        return Subspace.full(p, domain_dim)
    return kernel_stack([(ann @ mat) % p], domain_dim, p)


def restrict_to(space: Subspace, maps) -> Subspace:
    """Vectors of ``space`` killed by every matrix in ``maps`` (maps act on columns)."""
    p = space.p
    if space.rank == 0:
        return space
    conds = []
    for m in maps:
        m = np.asarray(m, dtype=DTYPE) % p
        # condition on coefficients c of x = c @ basis: m @ basis.T @ c = 0
        conds.append((m @ space.basis.T) % p)
    coeffs = kernel_stack(conds, space.rank, p)
    if coeffs.rank == 0:
        return Subspace.zero(p, space.ambient_dim)
    return _make((coeffs.basis @ space.basis) % p, space.ambient_dim, p)
