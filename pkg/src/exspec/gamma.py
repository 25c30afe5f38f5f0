"""Simple-module labels, the subspaces Gamma_S, and composition-factor series.

Each simple A_p(E,E)-module S has an explicit subspace Gamma_S of H*(E) whose
degree-n part has dimension (multiplicity of S in H^n(E)) * dim S.  Labels:

    EE(i, q)  S(E, E, S^i (x) det^q),            0 <= i <= p-1, 0 <= q <= p-2
    AA(q)     S(E, A, S(A)^{p-1} (x) det^q),     0 <= q <= p-2
    CP(i)     S(E, C_p, U_i),                    0 <= i <= p-2
    TRIV      S(E, 1, F_p)

Rings named in the block tables are those of :func:`ring.coefficient_monomials`.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import ring
from .fp import Subspace, rref_basis, span_all
from .ring import RingElement

KINDS = ("EE", "AA", "CP", "TRIV")


class SimpleLabel(NamedTuple):
    kind: str
    i: int = 0
    q: int = 0

    def __str__(self) -> str:
        if self.kind == "EE":
            return f"EE({self.i},{self.q})"
        if self.kind == "AA":
            return f"AA({self.q})"
        if self.kind == "CP":
            return f"CP({self.i})"
        return "TRIV"

    def validate(self, p: int) -> "SimpleLabel":
        ok = {
            "EE": 0 <= self.i <= p - 1 and 0 <= self.q <= p - 2,
            "AA": self.i == 0 and 0 <= self.q <= p - 2,
            "CP": self.q == 0 and 0 <= self.i <= p - 2,
            "TRIV": self.i == 0 and self.q == 0,
        }.get(self.kind, False)
        if not ok:
            raise ValueError(f"invalid simple-module label {self!r} for p = {p}")
        return self


def EE(i: int, q: int) -> SimpleLabel:
    return SimpleLabel("EE", i, q)


def AA(q: int) -> SimpleLabel:
    return SimpleLabel("AA", 0, q)


def CP(i: int) -> SimpleLabel:
    return SimpleLabel("CP", i, 0)


TRIV = SimpleLabel("TRIV")

_LABEL_RE = re.compile(r"^\s*(EE|AA|CP|TRIV)\s*(?:\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\))?\s*$")


def parse_label(text: str) -> SimpleLabel:
    m = _LABEL_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse simple-module label {text!r}")
    kind, a, b = m.groups()
    if kind == "TRIV":
        return TRIV
    if kind == "EE":
        if b is None:
            raise ValueError(f"EE needs two indices: {text!r}")
        return EE(int(a), int(b))
    if a is None or b is not None:
        raise ValueError(f"{kind} takes exactly one index: {text!r}")
    return AA(int(a)) if kind == "AA" else CP(int(a))


@lru_cache(maxsize=None)
def all_labels(p: int) -> tuple:
    out = [EE(i, q) for i in range(p) for q in range(p - 1)]
    out += [AA(q) for q in range(p - 1)]
    out += [CP(i) for i in range(p - 1)]
    out.append(TRIV)
    return tuple(out)


def simple_dim(label: SimpleLabel, p: int) -> int:
    if label.kind == "EE":
        return label.i + 1
    if label.kind == "AA":
        return p + 1
    if label.kind == "CP":
        return p + 1 if label.i == 0 else label.i + 1
    return 1


# generator tables


def _times(gens, factor: RingElement) -> list:
    return [factor * g for g in gens]


def _ee_parts(p: int, i: int, q: int):
    """The subspaces S = S^i v^q and T = T^{p-i-1} v^s of the two-block case."""
    s = (i + q) % (p - 1)
    S = _times(ring.y_monomials(p, i), ring.v(p) ** q)
    T = _times(ring.t_monomials(p, p - i - 1), ring.v(p) ** s)
    return S, T


def _ee_branch(p: int, i: int, q: int) -> str:
    m = p - 1
    if q == 0 and (2 * i) % m == 0:
        return "q=2i=0"
    if q == 0:
        return "q=0,2i!=0"
    if i == q and (3 * i) % m == 0:
        return "i=q,3i=0"
    if i == q:
        return "i=q,3i!=0"
    if (q + 2 * i) % m == 0:
        return "q+2i=0"
    return "generic"


def ee_branch(p: int, i: int, q: int) -> str:
    """Which of the six cases of the two-block table applies to EE(i, q)."""
    return _ee_branch(p, i, q)


def ee_cap_branch(p: int, i: int, q: int) -> str:
    """The eight-way refinement used for the intersection with I."""
    m = p - 1
    b = _ee_branch(p, i, q)
    if b == "i=q,3i!=0":
        return b + (",2i=0" if (2 * i) % m == 0 else ",2i!=0")
    if b == "generic":
        return b + (",i+q=0" if (i + q) % m == 0 else ",i+q!=0")
    return b


_EE_BLOCKS = {
    # branch: ((ring for S, multiply S by V?), (ring for T, multiply T by V?))
    "q=2i=0": (("A", True), ("D", True)),
    "q=0,2i!=0": (("A", True), ("A", False)),
    "i=q,3i=0": (("D", False), ("D", True)),
    "i=q,3i!=0": (("D", False), ("A", False)),
    "q+2i=0": (("A", False), ("D", True)),
    "generic": (("A", False), ("A", False)),
    # refinements for I cap Gamma
    "i=q,3i!=0,2i!=0": (("D", False), ("A", False)),
    "i=q,3i!=0,2i=0": (("D", False), ("A", True)),
    "generic,i+q!=0": (("A", False), ("A", False)),
    "generic,i+q=0": (("A", False), ("A", True)),
}


def _ee_blocks(p: int, i: int, q: int, branch: str) -> list:
    S, T = _ee_parts(p, i, q)
    (rs, vs), (rt, vt) = _EE_BLOCKS[branch]
    Vp = ring.V(p)
    return [(rs, _times(S, Vp) if vs else S), (rt, _times(T, Vp) if vt else T)]


def _aa_generators(p: int, q: int) -> list:
    Cp = ring.C(p)
    out = []
    for j in range(p):
        cj = Cp**j
        if q == 0:
            base = [Cp] + ring.y_monomials(p, p - 1)
            factor = ring.D2(p) * cj
        else:
            base = _times(ring.y_monomials(p, q), Cp) + ring.t_monomials(p, q)
            factor = (ring.v(p) ** q) * cj
        out += _times(base, factor)
    return out


@lru_cache(maxsize=None)
def gamma_blocks(p: int, label: SimpleLabel) -> tuple:
    """Gamma_S as a tuple of ``(coefficient ring, generators)`` blocks."""
    label.validate(p)
    k, i, q = label
    if k == "TRIV":
        return (("Fp", (RingElement.one(p),)),)
    if k == "CP":
        gens = [ring.C(p)] + ring.y_monomials(p, p - 1) if i == 0 else ring.y_monomials(p, i)
        return (("C", tuple(gens)),)
    if k == "AA":
        return (("D", tuple(_aa_generators(p, q))),)
    vq = ring.v(p) ** q
    if i == 0:
        if q == 0:
            return (("D+", (RingElement.one(p),)),)
        return (("A", (vq,)),)
    if i == p - 1:
        top = ring.y_monomials(p, p - 1)
        if q == 0:
            return (("D", tuple(_times(top, ring.V(p)))),)
        return (("A", tuple(_times(top, vq))),)
    return tuple((r, tuple(g)) for r, g in _ee_blocks(p, i, q, _ee_branch(p, i, q)))


@lru_cache(maxsize=None)
def i_cap_gamma_blocks(p: int, label: SimpleLabel) -> tuple:
    """Closed-form description of I cap Gamma_S, in the same block format."""
    label.validate(p)
    k, i, q = label
    if k in ("TRIV", "CP"):
        return ()
    if k == "AA":
        return gamma_blocks(p, label)
    if i == 0:
        if q == 0:
            return (("D", (ring.D2(p) ** 2,)),)
        return (("A", ((ring.C(p) ** 2) * ring.v(p) ** q,)),)
    if i == p - 1:
        return gamma_blocks(p, label)
    return tuple((r, tuple(g)) for r, g in _ee_blocks(p, i, q, ee_cap_branch(p, i, q)))


def _blocks_space(p: int, n: int, blocks, strict: bool) -> Subspace:
    total = ring.dim(p, n)
    if n % 2 or n < 0:
        return Subspace.zero(p, total)
    rows = [ring.span_vectors(p, n, gens, r) for r, gens in blocks]
    rows = [r for r in rows if r.shape[0]]
    if not rows:
        return Subspace.zero(p, total)
    stacked = np.vstack(rows)
    space = rref_basis(stacked, total, p)
    if strict and space.rank != stacked.shape[0]:
        raise ring.LinearDependenceError(f"degree {n}: {stacked.shape[0]} generating products span rank {space.rank}")
    return space


@lru_cache(maxsize=None)
def gamma_basis(p: int, label: SimpleLabel, n: int) -> Subspace:
    """Degree-n part of Gamma_S; the generating products are required to be independent."""
    return _blocks_space(p, n, gamma_blocks(p, label), strict=True)


@lru_cache(maxsize=None)
def i_cap_gamma_basis(p: int, label: SimpleLabel, n: int) -> Subspace:
    return _blocks_space(p, n, i_cap_gamma_blocks(p, label), strict=True)


def gamma_product_count(p: int, label: SimpleLabel, n: int) -> int:
    """Number of generating products r*g in degree n (no independence check)."""
    if n % 2 or n < 0:
        return 0
    return sum(ring.span_vectors(p, n, g, r).shape[0] for r, g in gamma_blocks(p, label))


class DirectSumReport(NamedTuple):
    p: int
    max_degree: int
    degrees_checked: int
    violations: tuple  # (n, sum of ranks, joined rank, dim H^n)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_gamma_direct_sum(p: int, max_degree: int) -> DirectSumReport:
    """Check H^n(E) = (+)_S Gamma_S^n degreewise for every even n <= max_degree."""
    bad = []
    count = 0
    for n in range(0, max_degree + 1, 2):
        count += 1
        spaces = [gamma_basis(p, s, n) for s in all_labels(p)]
        total = ring.dim(p, n)
        summed = sum(s.rank for s in spaces)
        joined = span_all(spaces, total, p).rank
        if summed != total or joined != total:
            bad.append((n, summed, joined, total))
    return DirectSumReport(p, max_degree, count, tuple(bad))


# the ideal I = (y1 v, y2 v) and its complement L


@lru_cache(maxsize=None)
def I_basis(p: int, n: int) -> Subspace:
    total = ring.dim(p, n)
    m = n - 2 * p - 2
    if n % 2 or m < 0:
        return Subspace.zero(p, total)
    gens = [ring.y1(p) * ring.v(p), ring.y2(p) * ring.v(p)]
    rows = [ring.to_vector(g * RingElement._raw(p, {b: 1}), n) for g in gens for b in ring.graded_basis(p, m)]
    return rref_basis(rows, total, p)


def L_blocks(p: int) -> tuple:
    Cp, vp = ring.C(p), ring.v(p)
    low = []
    for k in range(1, p - 1):
        low += [vp**k, Cp * vp**k]
    return (
        ("yC", (RingElement.one(p),)),
        ("V", tuple(low)),
        ("D1", (ring.D1(p),)),
        ("D1", (ring.D2(p),)),
    )


@lru_cache(maxsize=None)
def L_basis(p: int, n: int) -> Subspace:
    return _blocks_space(p, n, L_blocks(p), strict=True)


# the nilpotent part N = F_p[v]{b_2, ..., b_{p-2}} of the integral model


def nil_label(p: int, b: ring.BClass) -> SimpleLabel:
    return EE(0, (b.k + b.i) % (p - 1))


def N_basis(p: int, n: int, q: int | None = None) -> Subspace:
    """Span of the classes v^k b_i of degree n (and det-weight q when given).

    Coordinates are those of :func:`ring.nil_basis`.
    """
    nb = ring.nil_basis(p, n)
    rows = []
    for j, b in enumerate(nb):
        if q is None or nil_label(p, b).q == q % (p - 1):
            vec = [0] * len(nb)
            vec[j] = 1
            rows.append(vec)
    return rref_basis(rows, len(nb), p)


# composition-factor series

SPACES = ("HE", "I", "N", "HEFP")


def _quotients(p: int, ranks: dict, n: int) -> Counter:
    out = Counter()
    for label, r in ranks.items():
        if not r:
            continue
        d = simple_dim(label, p)
        if r % d:
            raise ArithmeticError(f"rank {r} of {label} in degree {n} is not a multiple of dim {d}")
        out[label] = r // d
    return out


@lru_cache(maxsize=None)
def he_factors(p: int, n: int) -> Counter:
    """Composition factors of H^n(E)."""
    if n < 0 or n % 2:
        return Counter()
    return _quotients(p, {s: gamma_basis(p, s, n).rank for s in all_labels(p)}, n)


@lru_cache(maxsize=None)
def i_factors(p: int, n: int) -> Counter:
    """Composition factors of I^n."""
    if n < 0 or n % 2:
        return Counter()
    return _quotients(p, {s: i_cap_gamma_basis(p, s, n).rank for s in all_labels(p)}, n)


@lru_cache(maxsize=None)
def n_factors(p: int, n: int) -> Counter:
    return Counter(nil_label(p, b) for b in ring.nil_basis(p, n))


@lru_cache(maxsize=None)
def hefp_factors(p: int, n: int) -> Counter:
    """Composition factors of H^n(E, F_p), assembled from H*(E), N and the shifted ideal I."""
    if n < 0:
        return Counter()
    if n % 2 == 0:
        return he_factors(p, n) + n_factors(p, n) + i_factors(p, n + 2 * p)
    out = i_factors(p, n + 2 * p - 1) + n_factors(p, n + 1) + he_factors(p, n + 1)
    out.pop(TRIV, None)
    return out


def factors(p: int, n: int, space: str = "HEFP") -> Counter:
    if space == "HE":
        return he_factors(p, n)
    if space == "I":
        return i_factors(p, n)
    if space == "N":
        return n_factors(p, n)
    if space == "HEFP":
        return hefp_factors(p, n)
    raise ValueError(f"unknown space {space!r}; expected one of {SPACES}")


def factor_total(p: int, counts: Counter) -> int:
    return sum(c * simple_dim(s, p) for s, c in counts.items())


def hefp_dim_direct(p: int, n: int) -> int:
    """dim H^n(E, F_p) from the integral model and the rank of I, bypassing Gamma_S."""
    if n < 0:
        return 0
    if n % 2 == 0:
        return len(ring.integral_basis(p, n)) + I_basis(p, n + 2 * p).rank
    positive = ring.dim(p, n + 1) if n + 1 > 0 else 0
    return I_basis(p, n + 2 * p - 1).rank + len(ring.nil_basis(p, n + 1)) + positive


def summand_dim(p: int, label: SimpleLabel, n: int, space: str = "HEFP") -> int:
    """dim H^n(X_S): the multiplicity of S in degree n of the chosen series."""
    return factors(p, n, space).get(label, 0)


def search_bound(p: int) -> int:
    return 2 * (p + 2) * (p - 1) + 2 * p


def first_degree(p: int, label: SimpleLabel, space: str = "HE") -> int | None:
    """Least degree n in which ``label`` occurs, or None if it never does below the bound."""
    label.validate(p)
    step = 1 if space == "HEFP" else 2
    for n in range(0, search_bound(p) + 1, step):
        if factors(p, n, space).get(label, 0):
            return n
    return None
