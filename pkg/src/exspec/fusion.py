"""Fusion systems on E and the multiplicities of summands in the stable splitting of BG.

A fusion system is described by W_G(E) <= GL_2(F_p) (by generators) and the
radical subgroups among A_0..A_{p-1}, A_inf, grouped into classes each carrying
its automizer W_G(A).  Summand labels:

    X(i, q)   dominant summand for S(E, E, S^i (x) det^q)
    L1(q)     summand for S(E, C_p, U_q); its multiplicity is m(G,1)_q
    L2(q)     summand for S(E, A, S(A)^{p-1} (x) det^q); multiplicity m(G,2)_q

M(2) stands for L1(0) v L2(0).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from . import gamma, gl2, ring
from .fp import Subspace, restrict_to, rref_basis
from .gl2 import Mat2, MatrixGroup
from .ring import INF

# summand labels and multisets


class SummandLabel(NamedTuple):
    kind: str  # "X", "L1" or "L2"
    i: int = 0
    q: int = 0

    def __str__(self) -> str:
        if self.kind == "X":
            return f"X_{{{self.i},{self.q}}}"
        return f"L({1 if self.kind == 'L1' else 2},{self.q})"

    def key(self) -> str:
        return f"{self.i},{self.q}" if self.kind == "X" else str(self.q)


def X(i: int, q: int) -> SummandLabel:
    return SummandLabel("X", i, q)


def L1(q: int) -> SummandLabel:
    return SummandLabel("L1", 0, q)


def L2(q: int) -> SummandLabel:
    return SummandLabel("L2", 0, q)


_KIND_ORDER = {"X": 0, "L1": 1, "L2": 2}


def _label_order(s: SummandLabel):
    return (_KIND_ORDER[s.kind], s.i, s.q)


class SplitMultiset:
    """Integer multiplicities over summand labels (negative entries allowed for differences)."""

    __slots__ = ("counts",)

    def __init__(self, counts=None):
        self.counts = {k: int(v) for k, v in dict(counts or {}).items() if int(v)}

    @classmethod
    def of(cls, *terms) -> "SplitMultiset":
        """Build from labels or ``(count, label)`` pairs; repeated labels add up."""
        c = Counter()
        for t in terms:
            if isinstance(t, SummandLabel):
                c[t] += 1
            else:
                k, lab = t
                if isinstance(lab, SplitMultiset):
                    for l2, v in lab.counts.items():
                        c[l2] += k * v
                else:
                    c[lab] += k
        return cls(c)

    def __getitem__(self, label: SummandLabel) -> int:
        return self.counts.get(label, 0)

    def __add__(self, other: "SplitMultiset") -> "SplitMultiset":
        c = Counter(self.counts)
        for k, v in other.counts.items():
            c[k] += v
        return SplitMultiset(c)

    def __sub__(self, other: "SplitMultiset") -> "SplitMultiset":
        return self + other.scale(-1)

    def scale(self, k: int) -> "SplitMultiset":
        return SplitMultiset({lab: k * v for lab, v in self.counts.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SplitMultiset):
            return NotImplemented
        return self.counts == other.counts

    def __hash__(self) -> int:
        return hash(frozenset(self.counts.items()))

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.counts.values())

    def labels(self) -> list:
        return sorted(self.counts, key=_label_order)

    def to_dict(self) -> dict:
        out = {"X": {}, "L1": {}, "L2": {}}
        for lab in self.labels():
            out[lab.kind][lab.key()] = self.counts[lab]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SplitMultiset":
        c = {}
        for kind in ("X", "L1", "L2"):
            for key, v in data.get(kind, {}).items():
                if kind == "X":
                    i, q = (int(t) for t in key.split(","))
                    c[X(i, q)] = v
                else:
                    c[SummandLabel(kind, 0, int(key))] = v
        unknown = set(data) - {"X", "L1", "L2"}
        if unknown:
            raise ValueError(f"unknown summand kinds {sorted(unknown)}")
        return cls(c)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __repr__(self) -> str:
        return f"SplitMultiset({self.wedge()})"

    def wedge(self) -> str:
        """Human-readable wedge, grouping matching L(1,0), L(2,0) pairs as M(2)."""
        counts = dict(self.counts)
        m2 = max(0, min(counts.get(L1(0), 0), counts.get(L2(0), 0)))
        tokens = []
        if m2:
            counts[L1(0)] -= m2
            counts[L2(0)] -= m2
            tokens.append(((1, -1, -1), _coef(m2) + "M(2)"))
        for lab, v in counts.items():
            if v:
                tokens.append((_label_order(lab), _coef(v) + str(lab)))
        return " v ".join(t for _, t in sorted(tokens)) or "*"


def _coef(v: int) -> str:
    return "" if v == 1 else f"{v}"


# fusion descriptors

WA_NAMES = ("SL2:2", "GL2")


@dataclass(frozen=True)
class RadicalClass:
    lines: tuple
    wa: object  # "SL2:2", "GL2" or a tuple of Mat2 generators

    def group(self, p: int) -> MatrixGroup:
        if isinstance(self.wa, str):
            return gl2.named_group(p, self.wa)
        return MatrixGroup(p, self.wa, "custom")


class DescriptorError(ValueError):
    """A fusion-system descriptor is malformed or inconsistent."""


@dataclass(frozen=True)
class FusionDescriptor:
    p: int
    we: tuple  # generators of W_G(E), as Mat2
    radicals: tuple  # RadicalClass entries
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        p = ring.check_prime(self.p)
        object.__setattr__(self, "we", tuple(g.normalized(p) for g in self.we))
        for g in self.we:
            if g.det(p) == 0:
                raise DescriptorError(f"singular generator {g.rows()}")
        seen = set()
        orbit_of = {}
        for orb in self.orbits():
            for A in orb:
                orbit_of[A] = orb
        clean = []
        for rc in self.radicals:
            lines = tuple(sorted({ring.check_line(p, A) for A in rc.lines}, key=gl2.line_sort_key))
            if not lines:
                raise DescriptorError("empty radical class")
            if seen & set(lines):
                raise DescriptorError(f"radical classes overlap in {sorted(seen & set(lines), key=gl2.line_sort_key)}")
            for A in lines:
                if not set(orbit_of[A]) <= set(lines):
                    raise DescriptorError(f"radical class {list(lines)} is not a union of W_G(E)-orbits")
            seen |= set(lines)
            wa = rc.wa
            if isinstance(wa, str):
                if wa not in WA_NAMES:
                    raise DescriptorError(f"unknown automizer {wa!r}")
            else:
                wa = tuple(g.normalized(p) if isinstance(g, Mat2) else Mat2.from_rows(g, p) for g in wa)
                sl2 = gl2.named_group(p, "SL2")
                if not all(g in MatrixGroup(p, wa).elements() for g in sl2.generators):
                    raise DescriptorError("a radical automizer must contain SL_2(F_p)")
            clean.append(RadicalClass(lines, wa))
        object.__setattr__(self, "radicals", tuple(clean))

    def we_group(self) -> MatrixGroup:
        return MatrixGroup(self.p, self.we, self.name)

    def orbits(self) -> list:
        return gl2.orbit_classes(MatrixGroup(self.p, self.we))

    def radical_lines(self) -> list:
        return [A for rc in self.radicals for A in rc.lines]

    # serialization

    def to_dict(self) -> dict:
        rads = []
        for rc in self.radicals:
            wa = rc.wa if isinstance(rc.wa, str) else [g.rows() for g in rc.wa]
            rads.append({"lines": [str(A) for A in rc.lines], "wa": wa})
        return {"p": self.p, "we": [g.rows() for g in self.we], "radicals": rads}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, name: str = "custom") -> "FusionDescriptor":
        try:
            p = int(data["p"])
            we = [Mat2.from_rows(g, p) for g in data["we"]]
            rads = []
            for rc in data["radicals"]:
                wa = rc.get("wa", "SL2:2")
                if not isinstance(wa, str):
                    wa = tuple(Mat2.from_rows(g, p) for g in wa)
                rads.append(RadicalClass(tuple(rc["lines"]), wa))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DescriptorError):
                raise
            raise DescriptorError(f"malformed descriptor: {exc}") from exc
        return cls(p, tuple(we), tuple(rads), name)

    @classmethod
    def from_json(cls, text: str, name: str = "custom") -> "FusionDescriptor":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"descriptor is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise DescriptorError("descriptor must be a JSON object")
        return cls.from_dict(data, name)


# presets

_P7 = 7


def _m(p: int, rows) -> Mat2:
    return Mat2.from_rows(rows, p)


def _p7_table() -> dict:
    p = _P7
    I3 = gl2.scalar(p, 3)
    u = gl2.diag(p, -1, 1)
    w = gl2.W
    s = gl2.diag(p, 2, 4)
    T = gl2.named_group(p, "T").generators
    Tw = gl2.named_group(p, "Tw").generators
    ends = ("0", INF)
    mid = tuple(str(i) for i in range(1, p))
    return {
        "L3(7)": ((I3, u), [((0,), "SL2:2"), ((INF,), "SL2:2")]),
        "L3(7)b": ((I3, w), [((1,), "SL2:2"), ((6,), "SL2:2")]),
        "L3(7):2": ((I3, u, w), [(ends, "SL2:2")]),
        "L3(7):2b": ((I3, u, w), [((1, 6), "SL2:2")]),
        "ON": ((I3, u, w), [(ends, "SL2:2"), ((1, 6), "SL2:2")]),
        "L3(7).3": (T, [((0,), "GL2"), ((INF,), "GL2")]),
        "L3(7).S3": (Tw, [(ends, "GL2")]),
        "Fi24'": ((I3, s, w), [((1, 2, 4), "SL2:2"), ((3, 5, 6), "SL2:2")]),
        "Fi24": (Tw, [(mid, "SL2:2")]),
        "RV1": (Tw, [(ends, "GL2"), (mid, "SL2:2")]),
    }


GENERIC_PRESETS = ("L3p", "L3p:2", "L3p.3", "L3p.S3")
P7_PRESETS = ("L3(7)", "L3(7)b", "L3(7):2", "L3(7):2b", "ON", "L3(7).3", "L3(7).S3", "Fi24'", "Fi24", "RV1")
PRESET_NAMES = GENERIC_PRESETS + P7_PRESETS


def _cube_det_automizer(p: int) -> tuple:
    """Generators of {g : det g is a cube}, the automizer of A in L_3(p) when 3 | p-1."""
    xi = gl2.primitive_root(p)
    return gl2.named_group(p, "SL2").generators + (gl2.diag(p, pow(xi, 3, p), 1),)


@lru_cache(maxsize=None)
def preset(name: str, p: int | None = None) -> FusionDescriptor:
    if name in P7_PRESETS:
        if p not in (None, _P7):
            raise DescriptorError(f"preset {name} is only defined for p = 7")
        we, rads = _p7_table()[name]
        return FusionDescriptor(_P7, tuple(we), tuple(RadicalClass(tuple(l), wa) for l, wa in rads), name)
    if name not in GENERIC_PRESETS:
        raise DescriptorError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}")
    if p is None:
        raise DescriptorError(f"preset {name} needs a prime")
    p = ring.check_prime(p)
    threefold = (p - 1) % 3 == 0
    if name in ("L3p", "L3p:2"):
        base = "H" if threefold else "T"
        wa = _cube_det_automizer(p) if threefold else "GL2"
    else:
        base = "T"
        wa = "GL2"
    twisted = name in ("L3p:2", "L3p.S3")
    we = gl2.named_group(p, base + ("w" if twisted else "")).generators
    rads = [((0, INF), wa)] if twisted else [((0,), wa), ((INF,), wa)]
    return FusionDescriptor(p, tuple(we), tuple(RadicalClass(l, wa) for l, wa in rads), f"{name}@{p}")


# multiplicity calculus


def _we_fixed(F: FusionDescriptor, space: Subspace, n: int) -> Subspace:
    return gl2.invariants(MatrixGroup(F.p, F.we), space, n)


@lru_cache(maxsize=None)
def hg_space(F: FusionDescriptor, n: int) -> Subspace:
    """{x in H^n(E)^{W_E} : res_A x in H^n(A)^{W_A} for every radical A}."""
    p = F.p
    inv = _we_fixed(F, ring.full_space(p, n), n)
    if inv.rank == 0:
        return inv
    conds = []
    for rc in F.radicals:
        target = gl2.poly_invariants(rc.group(p), n)
        ann = target.annihilator()
        if ann.shape[0] == 0:
            continue
        for A in rc.lines:
            conds.append((ann @ ring.restriction_matrix(p, n, A)) % p)
    return restrict_to(inv, conds)


def hg_dim(F: FusionDescriptor, n: int) -> int:
    """dim H^n(G) for the fusion system F (zero in odd degrees of the reduced model)."""
    if n < 0 or n % 2:
        return 0
    return hg_space(F, n).rank


def _span_space(p: int, n: int, elems) -> Subspace:
    return rref_basis([ring.to_vector(e, n) for e in elems], ring.dim(p, n), p)


def sv_module(p: int, i: int, q: int):
    """Degree and subspace of S^i v^q."""
    n = 2 * i + 2 * p * q
    vq = ring.v(p) ** q
    return n, _span_space(p, n, [vq * s for s in ring.y_monomials(p, i)])


def cst_module(p: int, q: int):
    """Degree and subspace of (C S^q + T^q) v^q, a copy of the module of L(2,q)."""
    n = 2 * (p - 1) + 2 * q + 2 * p * q
    Cp, vq = ring.C(p), ring.v(p) ** q
    gens = [Cp * s * vq for s in ring.y_monomials(p, q)] + [t * vq for t in ring.t_monomials(p, q)]
    return n, _span_space(p, n, gens)


def _check_range(p: int, i: int | None, q: int) -> None:
    if i is not None and not 0 <= i <= p - 1:
        raise ValueError(f"i = {i} outside 0..{p - 1}")
    if not 0 <= q <= p - 2:
        raise ValueError(f"q = {q} outside 0..{p - 2}")


def n_mult(F: FusionDescriptor, i: int, q: int) -> int:
    """Multiplicity of X(i, q): dim (S^i v^q)^{W_E}."""
    _check_range(F.p, i, q)
    n, space = sv_module(F.p, i, q)
    return _we_fixed(F, space, n).rank


def m1_mult(F: FusionDescriptor, q: int) -> int:
    """Multiplicity of L(1, q): dim H^{2q}(G), or dim H^{2(p-1)}(G) when q = 0."""
    _check_range(F.p, None, q)
    return hg_dim(F, 2 * (F.p - 1) if q == 0 else 2 * q)


def m2_zero(F: FusionDescriptor) -> int:
    """Multiplicity of L(2, 0): number of W_E-classes of A's minus number of radical classes."""
    return len(F.orbits()) - len(F.radicals)


def m2_space(F: FusionDescriptor, q: int) -> Subspace:
    p = F.p
    n, space = cst_module(p, q)
    inv = _we_fixed(F, space, n)
    maps = [ring.restriction_matrix(p, n, A) for A in F.radical_lines()]
    return restrict_to(inv, maps)


def m2_mult(F: FusionDescriptor, q: int) -> int:
    """Multiplicity of L(2, q), 1 <= q <= p-2: invariants of (CS^q+T^q)v^q killed on radical A's."""
    if not 1 <= q <= F.p - 2:
        raise ValueError(f"q = {q} outside 1..{F.p - 2}")
    return m2_space(F, q).rank


@lru_cache(maxsize=None)
def split(F: FusionDescriptor) -> SplitMultiset:
    """Multiplicity of every summand of BE in BG."""
    p = F.p
    c = {}
    for i in range(p):
        for q in range(p - 1):
            c[X(i, q)] = n_mult(F, i, q)
    for q in range(p - 1):
        c[L1(q)] = m1_mult(F, q)
    c[L2(0)] = m2_zero(F)
    for q in range(1, p - 1):
        c[L2(q)] = m2_mult(F, q)
    return SplitMultiset(c)


def be_split(p: int) -> SplitMultiset:
    """Multiplicities in BE itself: each summand occurs dim S times."""
    p = ring.check_prime(p)
    c = {}
    for label in gamma.all_labels(p):
        d = gamma.simple_dim(label, p)
        if label.kind == "EE":
            c[X(label.i, label.q)] = d
        elif label.kind == "CP":
            c[L1(label.i)] = d
        elif label.kind == "AA":
            c[L2(label.q)] = d
    return SplitMultiset(c)


def summand_of(label: gamma.SimpleLabel) -> SummandLabel | None:
    if label.kind == "EE":
        return X(label.i, label.q)
    if label.kind == "CP":
        return L1(label.i)
    if label.kind == "AA":
        return L2(label.q)
    return None


def simple_of(label: SummandLabel) -> gamma.SimpleLabel:
    if label.kind == "X":
        return gamma.EE(label.i, label.q)
    if label.kind == "L1":
        return gamma.CP(label.q)
    return gamma.AA(label.q)


def compare(F1: FusionDescriptor, F2: FusionDescriptor) -> SplitMultiset:
    if F1.p != F2.p:
        raise ValueError(f"prime mismatch: {F1.p} vs {F2.p}")
    return split(F1) - split(F2)


def default_bound(p: int) -> int:
    return 8 if p == 3 else p * p - 1


def first_dim_difference(F1: FusionDescriptor, F2: FusionDescriptor, bound: int | None = None):
    """Least half-degree k <= bound with dim H^{2k}(G1) != dim H^{2k}(G2), else None."""
    if F1.p != F2.p:
        raise ValueError(f"prime mismatch: {F1.p} vs {F2.p}")
    bound = default_bound(F1.p) if bound is None else bound
    for k in range(bound + 1):
        if hg_dim(F1, 2 * k) != hg_dim(F2, 2 * k):
            return k
    return None


def equivalence_by_dims(F1: FusionDescriptor, F2: FusionDescriptor, bound: int | None = None) -> bool:
    """True iff dim H^{2k}(G1) = dim H^{2k}(G2) for every half-degree k <= bound."""
    return first_dim_difference(F1, F2, bound) is None


def hg_dim_from_split(F: FusionDescriptor, n: int) -> int:
    """dim H^n(G) recomputed as sum over summands of multiplicity * dim H^n(X_S) in the reduced ring.

    Independent of :func:`hg_dim`; the trivial summand contributes in degree 0.
    """
    p = F.p
    if n == 0:
        return 1
    total = 0
    counts = gamma.he_factors(p, n)
    sp = split(F)
    for label, c in counts.items():
        s = summand_of(label)
        if s is not None:
            total += sp[s] * c
    return total


# order-24 subgroups of T<w> and the p = 3 pairing


def order24_subgroups_check() -> bool:
    """Every order-24 subgroup of T<w> (p = 7) contains diag(-1, 1) and diag(1, -1)."""
    p = _P7
    G = gl2.named_group(p, "Tw")
    subs = gl2.subgroups_of_order(G, 24)
    need = (gl2.diag(p, -1, 1), gl2.diag(p, 1, -1))
    return bool(subs) and all(all(g in s.elements() for g in need) for s in subs)


def p3_pairing_report() -> list:
    """``(order, dim (S^1)^H, dim (S^1 det)^H)`` over all 3'-subgroups H of GL_2(F_3)."""
    p = 3
    G = gl2.named_group(p, "GL2")
    n1, s1 = sv_module(p, 1, 0)
    n2, s2 = sv_module(p, 1, 1)
    out = []
    for sub in gl2.all_subgroups(G):
        if len(sub) % 3 == 0:
            continue
        H = MatrixGroup(p, sorted(sub))
        out.append((len(sub), gl2.invariants(H, s1, n1).rank, gl2.invariants(H, s2, n2).rank))
    return out


def p3_pairing_check() -> bool:
    return all(a == b for _, a, b in p3_pairing_report())
