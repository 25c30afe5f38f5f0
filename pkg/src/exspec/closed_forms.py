"""Closed-form answers that the computations are checked against.

Written out independently of the multiplicity calculus: splittings of the
L_3(p)-type fusion systems, the p = 7 lists and inclusion differences, and
explicit invariant bases for the torus-type subgroups.
"""

from __future__ import annotations

from . import ring
from .fusion import L1, L2, X, SplitMultiset
from .ring import RingElement

M2 = SplitMultiset.of(L1(0), L2(0))


def _third(p: int) -> int | None:
    return (p - 1) // 3 if (p - 1) % 3 == 0 else None


def _l2_pair(p: int) -> SplitMultiset:
    m = _third(p)
    return SplitMultiset.of(L2(m), L2(2 * m)) if m else SplitMultiset()


def torus_form(p: int) -> SplitMultiset:
    """W = T, radicals A_0 and A_inf."""
    terms = [X(0, 0), (2, X(p - 1, 0))] + [X(2 * i, p - 1 - i) for i in range(1, (p - 1) // 2 + 1)]
    return SplitMultiset.of(*terms) + M2 + _l2_pair(p)


def torus_w_form(p: int) -> SplitMultiset:
    """W = T<w>, radicals A_0 and A_inf forming one class."""
    terms = [X(0, 0), X(p - 1, 0)] + [X(4 * j, p - 1 - 2 * j) for j in range(1, (p - 1) // 4 + 1)]
    return SplitMultiset.of(*terms) + M2 + _l2_pair(p)


def _require_third(p: int) -> tuple[int, int]:
    m = _third(p)
    if m is None:
        raise ValueError(f"needs 3 | p-1, but p = {p}")
    return m, m // 2


def h_form(p: int) -> SplitMultiset:
    """W = H, radicals A_0 and A_inf in separate classes."""
    m, n = _require_third(p)
    terms = [X(0, 0), (4, X(p - 1, 0))]
    terms += [(2, X(2 * i, 3 * n - i)) for i in range(n, 3 * n)]
    terms += [X(2 * i, 3 * m - i) for i in range(1, m)]
    terms += [(3, X(2 * i, 3 * m - i)) for i in range(m, 3 * n + 1)]
    return SplitMultiset.of(*terms) + (M2 + _l2_pair(p)).scale(3)


def hw_form(p: int) -> SplitMultiset:
    """W = H<w>, radicals A_0 and A_inf forming one class."""
    m, n = _require_third(p)
    terms = [X(0, 0), (2, X(p - 1, 0))]
    terms += [X(2 * i, 3 * n - i) for i in range(n, 3 * n)]
    terms += [X(4 * j, 3 * m - 2 * j) for j in range(1, 3 * n // 2 + 1)]
    terms += [X(2 * i, p - 1 - i) for i in range(m, 3 * n + 1)]
    return SplitMultiset.of(*terms) + (M2 + _l2_pair(p)).scale(2)


# p = 7 lists, written out term by term

L_TILDE = SplitMultiset.of(L2(2), L2(4))

P7_LISTS = {
    "T": SplitMultiset.of(X(0, 0), X(2, 5), X(4, 4), (2, X(6, 0)), X(6, 3)) + M2 + L_TILDE,
    "Tw": SplitMultiset.of(X(0, 0), X(4, 4), X(6, 0)) + M2 + L_TILDE,
    "H": SplitMultiset.of(X(0, 0), (2, X(2, 2)), X(2, 5), (2, X(4, 1)), (3, X(4, 4)), (4, X(6, 0)), (3, X(6, 3)))
    + (M2 + L_TILDE).scale(3),
    "Hw": SplitMultiset.of(X(0, 0), X(2, 2), X(4, 1), (2, X(4, 4)), (2, X(6, 0)), X(6, 3)) + (M2 + L_TILDE).scale(2),
}

P7_LIST_PRESETS = {"T": "L3(7).3", "Tw": "L3(7).S3", "H": "L3(7)", "Hw": "L3(7):2"}

Y = SplitMultiset.of(X(2, 2), X(6, 0), X(6, 3))
Y_PRIME = SplitMultiset.of(X(2, 5), X(6, 0), X(6, 3))
Z = SplitMultiset.of(X(4, 1), X(4, 4))


def _sum(*parts) -> SplitMultiset:
    out = SplitMultiset()
    for k, part in parts:
        out = out + part.scale(k)
    return out


YZML = _sum((1, Y), (1, Z), (1, M2), (1, L_TILDE))

# (larger, smaller, expected split(larger) - split(smaller)); ON -> RV1 is listed
# twice because RV1 sits at both ends of the diagram
P7_DIAGRAM = (
    ("L3(7).S3", "RV1", M2 + L_TILDE),
    ("L3(7).3", "L3(7).S3", Y_PRIME),
    ("ON", "RV1", YZML),
    ("L3(7):2", "L3(7).S3", YZML),
    ("L3(7)", "L3(7).3", YZML.scale(2)),
    ("L3(7):2", "ON", M2 + L_TILDE),
    ("L3(7)", "L3(7):2", _sum((1, Y), (1, Y_PRIME), (1, Z), (1, M2), (1, L_TILDE))),
    ("ON", "RV1", YZML),
    ("L3(7):2b", "Fi24", _sum((1, Y), (1, Z), (1, M2), (2, L_TILDE))),
    ("L3(7)b", "Fi24'", _sum((1, Y), (1, Y_PRIME), (2, Z), (2, M2), (3, L_TILDE))),
    ("Fi24", "RV1", M2),
    ("Fi24'", "Fi24", Y),
)

ON_MINUS_FI24 = _sum((1, Y), (1, Z), (1, L_TILDE))

# m(G,2)_m = m(G,2)_{2m} with radicals A_0, A_inf
L2_TABLE = {"H": 3, "Hw": 2, "T": 1, "Tw": 1}


# invariant bases


def _mono(p: int, a: int, b: int, d: int = 0) -> RingElement:
    return RingElement.monomial(p, a, b, 0, d)


def torus_invariants(p: int, name: str, l: int, k: int) -> list:
    """Basis of (S^l v^k)^T or (S^l v^k)^{T<w>}."""
    if l == k == 0:
        return [RingElement.one(p)]
    if name == "T":
        if l == p - 1 and k == 0:
            return [_mono(p, p - 1, 0), _mono(p, 0, p - 1)]
        if l % 2 == 0 and 1 <= l // 2 <= (p - 1) // 2 and k == p - 1 - l // 2:
            i = l // 2
            return [_mono(p, i, i, p - 1 - i)]
        return []
    if name == "Tw":
        if l == p - 1 and k == 0:
            return [_mono(p, p - 1, 0) + _mono(p, 0, p - 1)]
        if l % 4 == 0 and 1 <= l // 4 <= (p - 1) // 4 and k == p - 1 - l // 2:
            j = l // 4
            return [_mono(p, 2 * j, 2 * j, p - 1 - 2 * j)]
        return []
    raise ValueError(name)


def h_invariants(p: int, name: str, l: int, k: int) -> list:
    """Basis of (S^l v^k)^H or (S^l v^k)^{H<w>}."""
    m, n = _require_third(p)

    def mono(a, b, d=0):
        return _mono(p, a, b, d)

    if l == k == 0:
        return [RingElement.one(p)]
    if l % 2:
        return []
    i = l // 2
    if name == "H":
        if l == p - 1 and k == 0:
            return [mono(p - 1, 0), mono(2 * m, m), mono(m, 2 * m), mono(0, p - 1)]
        if n <= i < 3 * n and k == 3 * n - i:
            return [mono(i - n, i + n, k), mono(i + n, i - n, k)]
        if 1 <= i < m and k == p - 1 - i:
            return [mono(i, i, 3 * m - i)]
        if m <= i <= 3 * n and k == p - 1 - i:
            return [mono(i - m, i + m, k), mono(i, i, k), mono(i + m, i - m, k)]
        return []
    if name == "Hw":
        if l == p - 1 and k == 0:
            return [mono(p - 1, 0) + mono(0, p - 1), mono(2 * m, m) + mono(m, 2 * m)]
        if n <= i < 3 * n and k == 3 * n - i:
            sign = (-1) ** (3 * n - i)
            return [mono(i - n, i + n, k) + mono(i + n, i - n, k).scale(sign)]
        if 1 <= i < m and k == p - 1 - i:
            return [mono(i, i, k)] if i % 2 == 0 else []
        if m <= i <= 3 * n and k == p - 1 - i:
            if i % 2 == 0:
                return [mono(i - m, i + m, k) + mono(i + m, i - m, k), mono(i, i, k)]
            return [mono(i - m, i + m, k) - mono(i + m, i - m, k)]
        return []
    raise ValueError(name)


def cs_invariants(p: int, name: str, twice: bool) -> list:
    """Basis of ((C S^q + T^q) v^q)^W for q = m (or 2m when ``twice``)."""
    m, _ = _require_third(p)

    def raw(a, b, d):
        return ring.reduce(p, (a, b, 0, d))

    if not twice:
        d = m
        table = {
            "T": [raw(2 * m, 2 * m, d)],
            "H": [raw(4 * m, 0, d), raw(3 * m, m, d), raw(2 * m, 2 * m, d), raw(m, 3 * m, d), raw(0, 4 * m, d)],
            "Tw": [raw(2 * m, 2 * m, d)],
            "Hw": [raw(4 * m, 0, d) + raw(0, 4 * m, d), raw(3 * m, m, d) + raw(m, 3 * m, d), raw(2 * m, 2 * m, d)],
        }
    else:
        d = 2 * m
        table = {
            "T": [raw(4 * m, m, d)],
            "H": [raw(5 * m, 0, d), raw(4 * m, m, d), raw(3 * m, 2 * m, d), raw(2 * m, 3 * m, d), raw(0, 5 * m, d)],
            "Tw": [raw(4 * m, m, d)],
            "Hw": [raw(5 * m, 0, d) + raw(0, 5 * m, d), raw(3 * m, 2 * m, d) + raw(2 * m, 3 * m, d), raw(4 * m, m, d)],
        }
    return table[name]
