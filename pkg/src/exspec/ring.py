"""The graded ring H*(E) of the extraspecial group p^{1+2}_+ and its restrictions.

H*(E) is the mod-p reduction of the integral cohomology modulo nilpotents.  It
is generated by y1, y2 (degree 2), C (degree 2p-2) and v (degree 2p) with

    y1^p y2 = y1 y2^p,   C y_i = y_i^p,   C^2 = Y1^2 + Y2^2 - Y1 Y2,

where Y_i = y_i^(p-1).  As a module over F_p[C, v] it is free on the p^2 - 1
monomials y1^a y2^b with a, b <= p-1 and (a, b) != (p-1, p-1); these, times
powers of C and v, are the normal monomials used throughout.

Monomials are ``(a, b, c, d)`` exponent tuples of ``y1, y2, C, v``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import NamedTuple, Union

import numpy as np

from .fp import DTYPE, Subspace, check_modulus, rank, rref_basis

SUPPORTED_PRIMES = (3, 5, 7, 11, 13)

INF = "inf"


class LinearDependenceError(ValueError):
    """A span R{x_1..x_r} was requested but the products are not independent."""


def check_prime(p: int) -> int:
    p = check_modulus(p)
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p = {p} is outside the supported range {SUPPORTED_PRIMES}")
    return p


def lines(p: int) -> list:
    """Labels of the maximal elementary abelian subgroups A_0..A_{p-1}, A_inf."""
    return list(range(p)) + [INF]


def check_line(p: int, A) -> Union[int, str]:
    if A == INF:
        return INF
    if isinstance(A, str):
        if A.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        A = int(A)
    if isinstance(A, (bool, float)) or not 0 <= int(A) < p:
        raise ValueError(f"invalid subgroup label {A!r} for p = {p}")
    return int(A)


class Monomial(NamedTuple):
    a: int  # y1
    b: int  # y2
    c: int  # C
    d: int  # v

    def degree(self, p: int) -> int:
        return 2 * (self.a + self.b) + (2 * p - 2) * self.c + 2 * p * self.d

    def is_normal(self, p: int) -> bool:
        return self.a < p and self.b < p and (self.a, self.b) != (p - 1, p - 1)


def monomial_degree(p: int, a: int, b: int, c: int, d: int) -> int:
    return 2 * (a + b) + (2 * p - 2) * c + 2 * p * d


@lru_cache(maxsize=None)
def _reduce_y(p: int, a: int, b: int) -> tuple:
    """Normal form of y1^a y2^b as ``((a', b', extra C power), coef)`` pairs."""
    c = 0
    if a >= p:
        k = (a - 1) // (p - 1)
        a -= k * (p - 1)
        c += k
    if b >= p:
        k = (b - 1) // (p - 1)
        b -= k * (p - 1)
        c += k
    if (a, b) == (p - 1, p - 1):
        # Y1 Y2 = C Y1 + C Y2 - C^2
        return (((p - 1, 0, c + 1), 1), ((0, p - 1, c + 1), 1), ((0, 0, c + 2), p - 1))
    return (((a, b, c), 1),)


class RingElement:
    """An F_p-linear combination of normal monomials of H*(E)."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms=None):
        self.p = p
        clean = {}
        if terms:
            for m, coef in terms.items():
                coef %= p
                if coef:
                    clean[m if isinstance(m, Monomial) else Monomial(*m)] = coef
        self.terms = clean

    @classmethod
    def _raw(cls, p: int, terms: dict) -> "RingElement":
        out = cls.__new__(cls)
        out.p = p
        out.terms = terms
        return out

    # construction helpers

    @classmethod
    def one(cls, p: int) -> "RingElement":
        return cls._raw(p, {Monomial(0, 0, 0, 0): 1})

    @classmethod
    def zero(cls, p: int) -> "RingElement":
        return cls._raw(p, {})

    @classmethod
    def monomial(cls, p: int, a: int = 0, b: int = 0, c: int = 0, d: int = 0, coef: int = 1) -> "RingElement":
        """The (normalised) element coef * y1^a y2^b C^c v^d."""
        out = reduce(p, (a, b, c, d))
        return out.scale(coef) if coef != 1 else out

    # arithmetic

    def _check(self, other: "RingElement") -> None:
        if self.p != other.p:
            raise ValueError(f"prime mismatch: {self.p} vs {other.p}")

    def __add__(self, other):
        if isinstance(other, int):
            other = RingElement.one(self.p).scale(other)
        self._check(other)
        p = self.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = (terms.get(m, 0) + c) % p
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return RingElement._raw(p, terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return RingElement._raw(p, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = RingElement.one(self.p).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: int) -> "RingElement":
        k %= self.p
        if k == 0:
            return RingElement.zero(self.p)
        return RingElement._raw(self.p, {m: (c * k) % self.p for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "RingElement":
        result = RingElement.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RingElement.one(self.p).scale(other) if other else RingElement.zero(self.p)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.p, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection

    def degrees(self) -> set[int]:
        return {m.degree(self.p) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous")
        return degs.pop()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_order_key):
            coef = self.terms[m]
            factors = []
            for name, e in zip(("y1", "y2", "C", "v"), m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mon = "*".join(factors) or "1"
            parts.append(mon if coef == 1 else f"{coef}*{mon}")
        return " + ".join(parts)


def _order_key(m: Monomial):
    return (m.d, m.c, m.a, m.b)


def reduce(p: int, raw) -> RingElement:
    """Normal form of the monomial y1^a y2^b C^c v^d given as an exponent tuple."""
    a, b, c, d = raw
    if min(a, b, c, d) < 0:
        raise ValueError(f"negative exponent in {raw}")
    terms = {}
    for (a2, b2, dc), coef in _reduce_y(p, a, b):
        terms[Monomial(a2, b2, c + dc, d)] = coef
    return RingElement._raw(p, terms)


def multiply(x: RingElement, y: RingElement) -> RingElement:
    x._check(y)
    p = x.p
    out: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            cc = c1 * c2
            c = m1.c + m2.c
            d = m1.d + m2.d
            for (a, b, dc), coef in _reduce_y(p, m1.a + m2.a, m1.b + m2.b):
                key = Monomial(a, b, c + dc, d)
                out[key] = (out.get(key, 0) + cc * coef) % p
    return RingElement._raw(p, {m: c for m, c in out.items() if c})


# named elements


def y1(p: int) -> RingElement:
    return RingElement.monomial(p, a=1)


def y2(p: int) -> RingElement:
    return RingElement.monomial(p, b=1)


def C(p: int) -> RingElement:
    return RingElement.monomial(p, c=1)


def v(p: int) -> RingElement:
    return RingElement.monomial(p, d=1)


def Y1(p: int) -> RingElement:
    return RingElement.monomial(p, a=p - 1)


def Y2(p: int) -> RingElement:
    return RingElement.monomial(p, b=p - 1)


def V(p: int) -> RingElement:
    return RingElement.monomial(p, d=p - 1)


def D1(p: int) -> RingElement:
    return C(p) ** p + V(p)


def D2(p: int) -> RingElement:
    return C(p) * V(p)


def deg_D1(p: int) -> int:
    return 2 * p * (p - 1)


def deg_D2(p: int) -> int:
    return 2 * (p * p - 1)


# graded pieces


# optional persistent store with load(p, n) / save(p, n, monomials)
_BASIS_STORE = None


def set_basis_store(store) -> None:
    global _BASIS_STORE
    _BASIS_STORE = store
    graded_basis.cache_clear()
    basis_index.cache_clear()


@lru_cache(maxsize=None)
def graded_basis(p: int, n: int) -> tuple:
    """Normal monomials of degree ``n`` ordered by ``(d, c, a, b)``."""
    if n < 0 or n % 2:
        return ()
    if _BASIS_STORE is not None:
        stored = _BASIS_STORE.load(p, n)
        if stored is not None and all(m.degree(p) == n and m.is_normal(p) for m in stored):
            return stored
        out = _compute_basis(p, n)
        _BASIS_STORE.save(p, n, out)
        return out
    return _compute_basis(p, n)


def _compute_basis(p: int, n: int) -> tuple:
    half = n // 2
    out = []
    for d in range(half // p + 1):
        for c in range((half - p * d) // (p - 1) + 1):
            s = half - p * d - (p - 1) * c
            for a in range(max(0, s - (p - 1)), min(s, p - 1) + 1):
                b = s - a
                if (a, b) != (p - 1, p - 1):
                    out.append(Monomial(a, b, c, d))
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(p: int, n: int) -> dict:
    return {m: i for i, m in enumerate(graded_basis(p, n))}


def dim(p: int, n: int) -> int:
    return len(graded_basis(p, n))


def to_vector(x: RingElement, n: int) -> np.ndarray:
    idx = basis_index(x.p, n)
    vec = np.zeros(len(idx), dtype=DTYPE)
    for m, c in x.terms.items():
        try:
            vec[idx[m]] = c
        except KeyError:
            raise ValueError(f"term {m} does not have degree {n}") from None
    return vec


def from_vector(p: int, n: int, vec) -> RingElement:
    basis = graded_basis(p, n)
    return RingElement(p, {basis[i]: int(c) for i, c in enumerate(vec) if int(c) % p})


def full_space(p: int, n: int) -> Subspace:
    return Subspace.full(p, dim(p, n))


def y_monomials(p: int, i: int) -> list[RingElement]:
    """Basis of S^i, the degree-2i part of F_p[y1, y2] (0 <= i <= p-1)."""
    return [RingElement.monomial(p, a, i - a) for a in range(i, -1, -1)]


def t_monomials(p: int, i: int) -> list[RingElement]:
    """Basis y1^(p-1) y2^i, ..., y1^i y2^(p-1) of T^i (1 <= i <= p-2)."""
    return [RingElement.monomial(p, a, p - 1 + i - a) for a in range(p - 1, i - 1, -1)]


# restriction to the maximal elementary abelian subgroups


class PolyAB:
    """Element of H*(A) = F_p[y, u]; terms are keyed by ``(e_y, e_u)``."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms=None):
        self.p = p
        self.terms = {k: c % p for k, c in (terms or {}).items() if c % p}

    def __add__(self, other: "PolyAB") -> "PolyAB":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return PolyAB(self.p, terms)

    def __sub__(self, other: "PolyAB") -> "PolyAB":
        return self + other.scale(-1)

    def scale(self, k: int) -> "PolyAB":
        return PolyAB(self.p, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return PolyAB(self.p, out)

    def __pow__(self, k: int) -> "PolyAB":
        result = PolyAB(self.p, {(0, 0): 1})
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyAB):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.p, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*y^{a}*u^{b}" for (a, b), c in sorted(self.terms.items()))

    @classmethod
    def y(cls, p: int) -> "PolyAB":
        return cls(p, {(1, 0): 1})

    @classmethod
    def u(cls, p: int) -> "PolyAB":
        return cls(p, {(0, 1): 1})


@lru_cache(maxsize=None)
def _v_image(p: int, d: int) -> tuple:
    """Terms of (u^p - y^(p-1) u)^d as ``((e_y, e_u), coef)``."""
    return tuple((((p - 1) * k, p * (d - k) + k), (comb(d, k) * (-1) ** k) % p) for k in range(d + 1) if comb(d, k) % p)


def _line_coef(p: int, A, a: int, b: int) -> int:
    if A == INF:
        return 1 if a == 0 else 0
    return pow(A, b, p) if b else 1


def restrict(x: RingElement, A) -> PolyAB:
    """Image of ``x`` under restriction to A_i (i in F_p) or A_inf."""
    p = x.p
    A = check_line(p, A)
    out: dict = {}
    for m, coef in x.terms.items():
        lc = _line_coef(p, A, m.a, m.b)
        if not lc:
            continue
        ey0 = m.a + m.b + (p - 1) * m.c
        for (ey, eu), vc in _v_image(p, m.d):
            key = (ey0 + ey, eu)
            out[key] = (out.get(key, 0) + coef * lc * vc) % p
    return PolyAB(p, out)


def poly_dim(n: int) -> int:
    return n // 2 + 1 if n >= 0 and n % 2 == 0 else 0


def poly_to_vector(f: PolyAB, n: int) -> np.ndarray:
    """Coordinates in the basis y^j u^(n/2 - j), j = 0..n/2."""
    vec = np.zeros(poly_dim(n), dtype=DTYPE)
    for (ey, eu), c in f.terms.items():
        if 2 * (ey + eu) != n:
            raise ValueError(f"term y^{ey} u^{eu} does not have degree {n}")
        vec[ey] = c
    return vec


@lru_cache(maxsize=None)
def restriction_matrix(p: int, n: int, A) -> np.ndarray:
    """Matrix of res^E_A : H^n(E) -> H^n(A) acting on column coordinates."""
    A = check_line(p, A)
    basis = graded_basis(p, n)
    mat = np.zeros((poly_dim(n), len(basis)), dtype=DTYPE)
    for j, m in enumerate(basis):
        lc = _line_coef(p, A, m.a, m.b)
        if not lc:
            continue
        ey0 = m.a + m.b + (p - 1) * m.c
        for (ey, _), vc in _v_image(p, m.d):
            mat[ey0 + ey, j] = (mat[ey0 + ey, j] + lc * vc) % p
    mat.flags.writeable = False
    return mat


def joint_restriction_rank(p: int, n: int) -> int:
    mats = [restriction_matrix(p, n, A) for A in lines(p)]
    if not mats or mats[0].shape[1] == 0:
        return 0
    return rank(np.vstack(mats), p)


# coefficient rings and R{x_1, ..., x_r} spans

COEFFICIENT_RINGS = ("A", "D", "D+", "C", "C+", "D1", "v", "V", "Fp", "Cv", "yC")


@lru_cache(maxsize=None)
def _dickson_monomial(p: int, i: int, j: int) -> RingElement:
    return (D1(p) ** i) * (D2(p) ** j)


@lru_cache(maxsize=None)
def coefficient_monomials(p: int, ring: str, m: int) -> tuple:
    """Monomial basis of the degree-``m`` part of a coefficient subalgebra.

    ``A`` is F_p[C, V]; ``D`` is the Dickson algebra F_p[D1, D2] (``D+`` its
    positive part); ``C``, ``D1``, ``v``, ``V`` are the polynomial rings on one
    generator (``C+`` the positive part of F_p[C]); ``Cv`` is F_p[C, v];
    ``yC`` is the subalgebra generated by y1, y2, C; ``Fp`` is the ground field.
    """
    if m < 0 or m % 2:
        return ()
    half = m // 2
    mono = RingElement.monomial
    if ring == "Fp":
        return (RingElement.one(p),) if m == 0 else ()
    if ring in ("C", "C+"):
        if half % (p - 1) or (ring == "C+" and half == 0):
            return ()
        return (mono(p, c=half // (p - 1)),)
    if ring == "v":
        return (mono(p, d=half // p),) if half % p == 0 else ()
    if ring == "V":
        k = p * (p - 1)
        return (mono(p, d=(p - 1) * (half // k)),) if half % k == 0 else ()
    if ring == "A":
        out = []
        k = p * (p - 1)
        for j in range(half // k + 1):
            rest = half - k * j
            if rest % (p - 1) == 0:
                out.append(mono(p, c=rest // (p - 1), d=(p - 1) * j))
        return tuple(out)
    if ring == "Cv":
        out = []
        for d in range(half // p + 1):
            rest = half - p * d
            if rest % (p - 1) == 0:
                out.append(mono(p, c=rest // (p - 1), d=d))
        return tuple(out)
    if ring in ("D", "D+", "D1"):
        k1, k2 = p * (p - 1), p * p - 1
        out = []
        for j in range(half // k2 + 1):
            if ring == "D1" and j:
                break
            rest = half - k2 * j
            if rest % k1 == 0:
                i = rest // k1
                if ring == "D+" and i == 0 and j == 0:
                    continue
                out.append(_dickson_monomial(p, i, j))
        return tuple(out)
    if ring == "yC":
        return tuple(RingElement._raw(p, {mm: 1}) for mm in graded_basis(p, m) if mm.d == 0)
    raise ValueError(f"unknown coefficient ring {ring!r}")


def span_vectors(p: int, n: int, generators, ring: str) -> np.ndarray:
    """All products r*g in degree ``n`` (r a coefficient monomial) as coordinate rows."""
    rows = []
    for g in generators:
        if not g:
            continue
        if not g.is_homogeneous():
            raise ValueError(f"generator {g!r} is not homogeneous")
        dg = g.degree()
        for r in coefficient_monomials(p, ring, n - dg):
            rows.append(to_vector(r * g, n))
    if not rows:
        return np.zeros((0, dim(p, n)), dtype=DTYPE)
    return np.vstack(rows)


def span_subspace(p: int, n: int, generators, ring: str, strict: bool = False) -> Subspace:
    """Degree-``n`` part of R{g_1, ..., g_r}.

    With ``strict`` the products are required to be linearly independent (the
    meaning of the braces notation); a collision raises LinearDependenceError.
    """
    rows = span_vectors(p, n, generators, ring)
    space = rref_basis(rows, dim(p, n), p)
    if strict and space.rank != rows.shape[0]:
        raise LinearDependenceError(
            f"{ring}{{...}} in degree {n}: {rows.shape[0]} products span only rank {space.rank}"
        )
    return space


# the integral model F_p (x) H^even(E, Z) = H*(E) + N


class BClass(NamedTuple):
    """The nilpotent class v^k b_i (2 <= i <= p-2) of degree 2pk + 2i."""

    k: int
    i: int

    def degree(self, p: int) -> int:
        return 2 * p * self.k + 2 * self.i


IntegralMonomial = Union[Monomial, BClass]


@lru_cache(maxsize=None)
def nil_basis(p: int, n: int) -> tuple:
    if n < 0 or n % 2:
        return ()
    half = n // 2
    out = []
    for i in range(2, p - 1):
        if (half - i) >= 0 and (half - i) % p == 0:
            out.append(BClass((half - i) // p, i))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def integral_basis(p: int, n: int) -> tuple:
    """Basis of the degree-``n`` part of F_p (x) H^even(E, Z)."""
    return graded_basis(p, n) + nil_basis(p, n)
