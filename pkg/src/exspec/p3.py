"""The case p = 3: the extra non-nilpotent classes a1', a2' in degree 2.

Modulo nilpotents, H*(E, F_3) = H*(E) + F_3[v]{a1', a2'}.  Products of extra
classes with y1, y2, C land in H*(E):

    a1' y1 = a2' y2 = a1' a2' = y1 y2
    a1' y2 = a2' y1 = (a1')^2 = (a2')^2 = y1^2 + y2^2 - C
    a1' C = y1^2 y2,   a2' C = y1 y2^2

The value of the shared class y1^2 + y2^2 - C is forced by detection: a1'
restricts to i*y on A_i (i = 1, 2) and a2' to y, both vanish on A_0 and A_inf.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

import numpy as np

from . import gamma, gl2, ring
from .fp import DTYPE, kernel_stack
from .fusion import L1, L2, SummandLabel, X, simple_of
from .gl2 import Mat2
from .ring import INF, PolyAB, RingElement

P = 3


def _require_p3(p: int) -> None:
    if p != P:
        raise ValueError(f"the extended ring is only modelled for p = 3, got p = {p}")


@lru_cache(maxsize=None)
def _shared() -> RingElement:
    return ring.y1(P) ** 2 + ring.y2(P) ** 2 - ring.C(P)


@lru_cache(maxsize=None)
def _y_times_a() -> dict:
    """``(generator, j) -> f * a_j'`` for f in y1, y2, C."""
    y1y2 = ring.y1(P) * ring.y2(P)
    r = _shared()
    return {
        ("y1", 1): y1y2,
        ("y2", 1): r,
        ("C", 1): RingElement.monomial(P, 2, 1),
        ("y1", 2): r,
        ("y2", 2): y1y2,
        ("C", 2): RingElement.monomial(P, 1, 2),
    }


class P3Element:
    """``red + sum c * v^k a_j'`` with ``red`` in H*(E) and extra terms keyed by ``(k, j)``."""

    __slots__ = ("red", "extra")

    def __init__(self, red: RingElement | None = None, extra=None):
        self.red = red if red is not None else RingElement.zero(P)
        _require_p3(self.red.p)
        self.extra = {k: c % P for k, c in (extra or {}).items() if c % P}
        for k, j in self.extra:
            if k < 0 or j not in (1, 2):
                raise ValueError(f"invalid extra class v^{k} a{j}'")

    @classmethod
    def a(cls, j: int, k: int = 0) -> "P3Element":
        """The class v^k a_j'."""
        return cls(None, {(k, j): 1})

    @classmethod
    def of(cls, x: RingElement) -> "P3Element":
        return cls(x)

    def __add__(self, other: "P3Element") -> "P3Element":
        extra = Counter(self.extra)
        for key, c in other.extra.items():
            extra[key] += c
        return P3Element(self.red + other.red, extra)

    def __neg__(self) -> "P3Element":
        return P3Element(-self.red, {k: -c for k, c in self.extra.items()})

    def __sub__(self, other: "P3Element") -> "P3Element":
        return self + (-other)

    def scale(self, s: int) -> "P3Element":
        return P3Element(self.red.scale(s), {k: c * s for k, c in self.extra.items()})

    def __mul__(self, other: "P3Element") -> "P3Element":
        return p3_multiply(self, other)

    def __pow__(self, k: int) -> "P3Element":
        out = P3Element(RingElement.one(P))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, P3Element):
            return NotImplemented
        return self.red == other.red and self.extra == other.extra

    def __hash__(self) -> int:
        return hash((self.red, frozenset(self.extra.items())))

    def __repr__(self) -> str:
        parts = [repr(self.red)] if self.red else []
        for (k, j), c in sorted(self.extra.items()):
            mon = f"a{j}'" + (f"*v^{k}" if k > 1 else "*v" if k == 1 else "")
            parts.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(parts) or "0"


def _mono_times_a(m: ring.Monomial, k: int, j: int) -> P3Element:
    """The product (y1^a y2^b C^c v^d) * (v^k a_j')."""
    table = _y_times_a()
    for name, field in (("y1", "a"), ("y2", "b"), ("C", "c")):
        if getattr(m, field):
            rest = m._replace(**{field: getattr(m, field) - 1})
            red = RingElement.monomial(P, rest.a, rest.b, rest.c, rest.d + k) * table[(name, j)]
            return P3Element(red)
    return P3Element(None, {(m.d + k, j): 1})


def _a_times_a(i: int, j: int) -> RingElement:
    return ring.y1(P) * ring.y2(P) if i != j else _shared()


def p3_multiply(x: P3Element, y: P3Element) -> P3Element:
    out = P3Element(x.red * y.red)
    for (k, j), c in y.extra.items():
        for m, cm in x.red.terms.items():
            out = out + _mono_times_a(m, k, j).scale(c * cm)
    for (k, j), c in x.extra.items():
        for m, cm in y.red.terms.items():
            out = out + _mono_times_a(m, k, j).scale(c * cm)
    for (k1, i), c1 in x.extra.items():
        for (k2, j), c2 in y.extra.items():
            out = out + P3Element((ring.v(P) ** (k1 + k2)) * _a_times_a(i, j).scale(c1 * c2))
    return out


def p3_restrict(x: P3Element, A) -> PolyAB:
    A = ring.check_line(P, A)
    out = ring.restrict(x.red, A)
    if A in (0, INF):
        return out
    vimg = ring.restrict(ring.v(P), A)
    for (k, j), c in x.extra.items():
        coef = A if j == 1 else 1
        out = out + (vimg**k) * PolyAB(P, {(1, 0): coef * c})
    return out


# the quotient F_3[v] (x) (S^1 (x) det) and its composition factors


def extra_action_matrix(g: Mat2, k: int) -> np.ndarray:
    """Action of g on span{v^k a1', v^k a2'} modulo H*(E): like y_j v^{k+1}."""
    g = g.normalized(P)
    det = pow(g.det(P), k + 1, P)
    # column j holds the image of v^k a_j'
    return (det * np.array([[g.g11, g.g21], [g.g12, g.g22]], dtype=DTYPE)) % P


def _sub_action(g: Mat2, n: int, idx: list) -> np.ndarray:
    mat = gl2.act_matrix(P, g, n)
    sub = mat[np.ix_(idx, idx)]
    rest = np.delete(mat[:, idx], idx, axis=0)
    if rest.any():
        raise ValueError("the chosen monomials do not span a submodule")
    return sub


def hom_dim(mats1: list, mats2: list, p: int) -> int:
    """dim Hom_G(M1, M2) for G generated by the given pairs of action matrices."""
    d1, d2 = mats1[0].shape[0], mats2[0].shape[0]
    conds = []
    for a, b in zip(mats1, mats2):
        # b X - X a = 0 with X stored column-major (vec)
        conds.append((np.kron(np.eye(d1, dtype=DTYPE), b) - np.kron(a.T, np.eye(d2, dtype=DTYPE))) % p)
    return kernel_stack(conds, d1 * d2, p).rank


def _simple_model(label: gamma.SimpleLabel) -> list:
    """Action matrices of the GL_2(F_3) generators on S^i v^q."""
    i, q = label.i, label.q
    n = 2 * i + 2 * P * q
    basis = ring.basis_index(P, n)
    idx = sorted(basis[ring.Monomial(a, i - a, 0, q)] for a in range(i + 1))
    return [_sub_action(g, n, idx) for g in gl2.named_group(P, "GL2").generators]


def p3_quotient_factors(n: int) -> Counter:
    """Composition factors of degree n of (H*(E, F_3) mod nilpotents) / H*(E)."""
    if n < 2 or (n - 2) % (2 * P):
        return Counter()
    k = (n - 2) // (2 * P)
    gens = gl2.named_group(P, "GL2").generators
    module = [extra_action_matrix(g, k) for g in gens]
    out = Counter()
    for label in gamma.all_labels(P):
        if label.kind != "EE" or gamma.simple_dim(label, P) != 2:
            continue
        if hom_dim(module, _simple_model(label), P):
            out[label] += 1
    if sum(out.values()) != 1:
        raise ArithmeticError(f"degree {n}: expected one simple factor, found {dict(out)}")
    return out


# lowest degrees of the summands of BE


TABLE_LABELS = (L1(1), L1(0), L2(1), L2(0), X(0, 0), X(0, 1), X(1, 0), X(1, 1), X(2, 0), X(2, 1))


def lowest_half_degree(label: SummandLabel, space: str = "HE") -> int | None:
    """Least k > 0 with H^{2k}(X) nonzero, X the summand of BE."""
    s = simple_of(label)
    for n in range(2, gamma.search_bound(P) + 1, 2):
        if gamma.summand_dim(P, s, n, space):
            return n // 2
    return None


def p3_lowest_degree_table(space: str = "HE") -> dict:
    return {lab: lowest_half_degree(lab, space) for lab in TABLE_LABELS}


def x00_series_matches_dickson(max_degree: int) -> list:
    """Degrees n <= max_degree where dim H^n(X_{0,0}) differs from the D^+ monomial count."""
    bad = []
    for n in range(0, max_degree + 1, 2):
        got = gamma.summand_dim(P, gamma.EE(0, 0), n, "HE") + p3_quotient_factors(n).get(gamma.EE(0, 0), 0)
        want = len(ring.coefficient_monomials(P, "D+", n))
        if got != want:
            bad.append((n, got, want))
    return bad
