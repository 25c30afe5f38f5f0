"""GL_2(F_p): named subgroups, their action on H*(E) and H*(A), invariants, line orbits.

The action is the substitution

    y1 -> g11 y1 + g12 y2,   y2 -> g21 y1 + g22 y2,   C -> C,   v -> det(g) v,

written as a matrix on column coordinates of a graded piece.  Composition
reverses order, ``act(g) @ act(h) == act(h g)``, so this is a right action.
On H*(A) = F_p[y, u] the same formula is used with (y, u) in place of (y1, y2).
Lines A_i correspond to column vectors (1, i) and A_inf to (0, 1).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import NamedTuple

import numpy as np

from . import ring
from .fp import DTYPE, Subspace, restrict_to
from .ring import INF


class Mat2(NamedTuple):
    g11: int
    g12: int
    g21: int
    g22: int

    def normalized(self, p: int) -> "Mat2":
        return Mat2(self.g11 % p, self.g12 % p, self.g21 % p, self.g22 % p)

    def det(self, p: int) -> int:
        return (self.g11 * self.g22 - self.g12 * self.g21) % p

    def rows(self) -> list[list[int]]:
        return [[self.g11, self.g12], [self.g21, self.g22]]

    @classmethod
    def from_rows(cls, rows, p: int) -> "Mat2":
        (a, b), (c, d) = rows
        g = cls(int(a), int(b), int(c), int(d)).normalized(p)
        if g.det(p) == 0:
            raise ValueError(f"singular matrix {rows} mod {p}")
        return g


def mat_mul(p: int, g: Mat2, h: Mat2) -> Mat2:
    return Mat2(
        (g.g11 * h.g11 + g.g12 * h.g21) % p,
        (g.g11 * h.g12 + g.g12 * h.g22) % p,
        (g.g21 * h.g11 + g.g22 * h.g21) % p,
        (g.g21 * h.g12 + g.g22 * h.g22) % p,
    )


def identity() -> Mat2:
    return Mat2(1, 0, 0, 1)


def diag(p: int, a: int, b: int) -> Mat2:
    return Mat2(a % p, 0, 0, b % p)


def scalar(p: int, a: int) -> Mat2:
    return diag(p, a, a)


W = Mat2(0, 1, 1, 0)


def primitive_root(p: int) -> int:
    """Smallest generator of F_p^x."""
    order = p - 1
    factors = {q for q in range(2, order + 1) if order % q == 0 and all(q % r for r in range(2, q))}
    for x in range(2, p):
        if all(pow(x, order // q, p) != 1 for q in factors):
            return x
    return 1  # not reached for odd primes


class GroupTooLarge(ValueError):
    """Element enumeration was requested for a group above the size limit."""


ENUMERATION_LIMIT = 20000


class MatrixGroup:
    """Subgroup of GL_2(F_p) given by generators; elements are enumerated on demand."""

    __slots__ = ("p", "generators", "name", "_elements")

    def __init__(self, p: int, generators, name: str = "custom"):
        self.p = p
        self.generators = tuple(g.normalized(p) if isinstance(g, Mat2) else Mat2.from_rows(g, p) for g in generators)
        for g in self.generators:
            if g.det(p) == 0:
                raise ValueError(f"singular generator {g}")
        self.name = name
        self._elements = None

    def __repr__(self) -> str:
        return f"MatrixGroup(p={self.p}, name={self.name!r}, generators={list(self.generators)})"

    def elements(self, limit: int = ENUMERATION_LIMIT) -> frozenset:
        if self._elements is None:
            self._elements = closure(self.p, self.generators, limit)
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, g) -> bool:
        g = g.normalized(self.p) if isinstance(g, Mat2) else Mat2.from_rows(g, self.p)
        return g in self.elements()

    def with_generators(self, *extra: Mat2, name: str = "custom") -> "MatrixGroup":
        return MatrixGroup(self.p, self.generators + tuple(extra), name)


def closure(p: int, generators, limit: int = ENUMERATION_LIMIT) -> frozenset:
    """All products of ``generators`` (a finite group, so inverses come for free)."""
    seen = {identity()}
    frontier = [identity()]
    gens = [g.normalized(p) for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(p, x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise GroupTooLarge(f"group exceeds {limit} elements")
        frontier = nxt
    return frozenset(seen)


GROUP_NAMES = ("T", "Tw", "H", "Hw", "SL2", "SL2:2", "GL2")


@lru_cache(maxsize=None)
def named_group(p: int, name: str) -> MatrixGroup:
    """T, T<w>, H, H<w>, SL_2, SL_2:2 = {det = +-1} and GL_2 by fixed generator sets."""
    p = ring.check_prime(p)
    xi = primitive_root(p)
    if name in ("T", "Tw"):
        gens = [scalar(p, xi), diag(p, xi, 1)]
    elif name in ("H", "Hw"):
        if (p - 1) % 3:
            raise ValueError(f"the subgroup {name} needs 3 | p-1, but p = {p}")
        gens = [scalar(p, xi), diag(p, pow(xi, 3, p), 1)]
    elif name in ("SL2", "SL2:2", "GL2"):
        gens = [Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1)]
        if name == "SL2:2":
            gens.append(diag(p, 1, -1))
        elif name == "GL2":
            gens.append(diag(p, xi, 1))
    else:
        raise ValueError(f"unknown group name {name!r}; expected one of {GROUP_NAMES}")
    if name in ("Tw", "Hw"):
        gens.append(W)
    return MatrixGroup(p, gens, name)


# action on H*(E)


@lru_cache(maxsize=None)
def _y_image(p: int, g: Mat2, a: int, b: int) -> tuple:
    """Normal form of (g11 y1 + g12 y2)^a (g21 y1 + g22 y2)^b as ``((a', b', dc), coef)``."""
    raw: dict = {}
    for j in range(a + 1):
        cj = comb(a, j) * pow(g.g11, j, p) * pow(g.g12, a - j, p)
        if cj % p == 0:
            continue
        for k in range(b + 1):
            ck = comb(b, k) * pow(g.g21, k, p) * pow(g.g22, b - k, p)
            if ck % p == 0:
                continue
            key = (j + k, a + b - j - k)
            raw[key] = (raw.get(key, 0) + cj * ck) % p
    out: dict = {}
    for (ea, eb), coef in raw.items():
        if not coef:
            continue
        for mono, c2 in ring._reduce_y(p, ea, eb):
            out[mono] = (out.get(mono, 0) + coef * c2) % p
    return tuple((m, c) for m, c in out.items() if c)


def act(g: Mat2, x: ring.RingElement) -> ring.RingElement:
    """Apply the substitution of ``g`` to a ring element."""
    p = x.p
    g = g.normalized(p)
    det = g.det(p)
    out: dict = {}
    for m, coef in x.terms.items():
        scale = coef * pow(det, m.d, p)
        for (a, b, dc), c2 in _y_image(p, g, m.a, m.b):
            key = ring.Monomial(a, b, m.c + dc, m.d)
            out[key] = (out.get(key, 0) + scale * c2) % p
    return ring.RingElement(p, out)


@lru_cache(maxsize=None)
def act_matrix(p: int, g: Mat2, n: int) -> np.ndarray:
    """Matrix of the action of ``g`` on H^n(E); column j is the image of basis element j."""
    if n % 2:
        raise ValueError(f"odd degree {n}: H*(E) is concentrated in even degrees")
    g = g.normalized(p)
    basis = ring.graded_basis(p, n)
    idx = ring.basis_index(p, n)
    det = g.det(p)
    mat = np.zeros((len(basis), len(basis)), dtype=DTYPE)
    for j, m in enumerate(basis):
        scale = pow(det, m.d, p)
        for (a, b, dc), c2 in _y_image(p, g, m.a, m.b):
            i = idx[ring.Monomial(a, b, m.c + dc, m.d)]
            mat[i, j] = (mat[i, j] + scale * c2) % p
    mat.flags.writeable = False
    return mat


def _fixed_conditions(mats: list[np.ndarray], p: int) -> list[np.ndarray]:
    out = []
    for m in mats:
        cond = np.array(m, dtype=DTYPE)
        np.fill_diagonal(cond, cond.diagonal() - 1)
        out.append(cond % p)
    return out


def invariants(group: MatrixGroup, space: Subspace, n: int) -> Subspace:
    """Vectors of ``space`` (inside H^n(E)) fixed by every generator of ``group``."""
    p = group.p
    if space.ambient_dim != ring.dim(p, n):
        raise ValueError(f"space has ambient {space.ambient_dim}, but dim H^{n}(E) = {ring.dim(p, n)}")
    mats = [act_matrix(p, g, n) for g in group.generators]
    return restrict_to(space, _fixed_conditions(mats, p))


# action on H*(A) = F_p[y, u]


@lru_cache(maxsize=None)
def poly_act_matrix(p: int, g: Mat2, n: int) -> np.ndarray:
    """Action of ``g`` on H^n(A) in the basis y^j u^(n/2 - j), j = 0..n/2."""
    if n % 2:
        raise ValueError(f"odd degree {n}")
    g = g.normalized(p)
    half = n // 2
    mat = np.zeros((half + 1, half + 1), dtype=DTYPE)
    for j in range(half + 1):
        # image of y^j u^(half-j)
        a, b = j, half - j
        for s in range(a + 1):
            cs = comb(a, s) * pow(g.g11, s, p) * pow(g.g12, a - s, p) % p
            if cs % p == 0:
                continue
            for t in range(b + 1):
                ct = comb(b, t) * pow(g.g21, t, p) * pow(g.g22, b - t, p) % p
                mat[s + t, j] = (int(mat[s + t, j]) + cs * ct) % p
    mat.flags.writeable = False
    return mat


def poly_act(g: Mat2, f: ring.PolyAB) -> ring.PolyAB:
    p = f.p
    y = ring.PolyAB(p, {(1, 0): g.g11, (0, 1): g.g12})
    u = ring.PolyAB(p, {(1, 0): g.g21, (0, 1): g.g22})
    out = ring.PolyAB(p)
    for (ey, eu), c in f.terms.items():
        out = out + ((y**ey) * (u**eu)).scale(c)
    return out


def poly_invariants(group: MatrixGroup, n: int) -> Subspace:
    p = group.p
    full = Subspace.full(p, ring.poly_dim(n))
    if full.ambient_dim == 0:
        return full
    mats = [poly_act_matrix(p, g, n) for g in group.generators]
    return restrict_to(full, _fixed_conditions(mats, p))


# lines


def line_vector(p: int, A) -> tuple[int, int]:
    A = ring.check_line(p, A)
    return (0, 1) if A == INF else (1, A)


def line_of(p: int, vec) -> object:
    x, y = vec[0] % p, vec[1] % p
    if x == 0:
        if y == 0:
            raise ValueError("zero vector spans no line")
        return INF
    return (y * pow(x, p - 2, p)) % p


def act_on_line(p: int, g: Mat2, A):
    x, y = line_vector(p, A)
    return line_of(p, (g.g11 * x + g.g12 * y, g.g21 * x + g.g22 * y))


def line_sort_key(A):
    return (1, 0) if A == INF else (0, A)


def orbit_classes(group: MatrixGroup) -> list[tuple]:
    """Orbits of ``group`` on {A_0, ..., A_{p-1}, A_inf}, each sorted, in sorted order."""
    p = group.p
    remaining = set(ring.lines(p))
    orbits = []
    for A in sorted(remaining, key=line_sort_key):
        if A not in remaining:
            continue
        orbit = {A}
        frontier = [A]
        while frontier:
            nxt = []
            for B in frontier:
                for g in group.generators:
                    Bg = act_on_line(p, g, B)
                    if Bg not in orbit:
                        orbit.add(Bg)
                        nxt.append(Bg)
            frontier = nxt
        remaining -= orbit
        orbits.append(tuple(sorted(orbit, key=line_sort_key)))
    return orbits


# subgroups


def all_subgroups(group: MatrixGroup, limit: int = 200) -> list[frozenset]:
    """Every subgroup of a small enumerated group, as frozensets of elements.

    Subgroups are grown from the cyclic ones by adjoining one element at a
    time; every subgroup of a finite group arises this way.
    """
    p = group.p
    elems = sorted(group.elements())
    if len(elems) > limit:
        raise GroupTooLarge(f"group of order {len(elems)} exceeds the subgroup-enumeration limit {limit}")
    index = {g: i for i, g in enumerate(elems)}
    table = [[index[mat_mul(p, g, h)] for h in elems] for g in elems]

    def generate(gens):
        seen = {0} if elems[0] == identity() else {index[identity()]}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                row = table[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    gens_of = {}
    for i in range(len(elems)):
        sub = generate([i])
        gens_of.setdefault(sub, (i,))
    frontier = list(gens_of)
    while frontier:
        nxt = []
        for sub in frontier:
            gens = gens_of[sub]
            for i in range(len(elems)):
                if i in sub:
                    continue
                bigger = generate(gens + (i,))
                if bigger not in gens_of:
                    gens_of[bigger] = gens + (i,)
                    nxt.append(bigger)
        frontier = nxt
    out = [frozenset(elems[i] for i in sub) for sub in gens_of]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def subgroups_of_order(group: MatrixGroup, k: int, limit: int = 200) -> list[MatrixGroup]:
    order = group.order()
    if k <= 0 or order % k:
        return []
    out = []
    for sub in all_subgroups(group, limit):
        if len(sub) == k:
            mg = MatrixGroup(group.p, sorted(sub), f"{group.name}[{k}]")
            mg._elements = sub
            out.append(mg)
    return out
