"""Named verification suites.

Each suite recomputes a family of results from scratch and compares them
with exact integers or with the closed forms in :mod:`exspec.closed_forms`.
Suites have a descriptive name plus short numbered aliases used on the
command line.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import closed_forms as cf
from . import fusion, gamma, gl2, p3, ring
from .fp import rref_basis, span_all
from .fusion import FusionDescriptor, RadicalClass, X
from .gl2 import MatrixGroup
from .ring import INF


class SuiteUnavailable(ValueError):
    """The suite does not exist or does not apply at the requested prime."""


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    p: int
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "p": self.p,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def no_mismatches(name: str, bad, detail_ok: str = "") -> Check:
    """Passing iff ``bad`` is empty/falsy; the detail shows the first offenders."""
    if isinstance(bad, bool):
        return Check(name, bad, detail_ok)
    bad = list(bad)
    return Check(name, not bad, detail_ok if not bad else f"{len(bad)} mismatches, first {bad[:3]}")


def equals(name: str, got, want) -> Check:
    return Check(name, got == want, f"got {got}" if got == want else f"got {got}, expected {want}")


# ring

RING_MAX_DEGREE = 60
RANDOM_PRODUCTS = 200


def _random_element(rng: random.Random, p: int, n: int) -> ring.RingElement:
    return ring.from_vector(p, n, [rng.randrange(p) for _ in range(ring.dim(p, n))])


def ring_oracle(p: int, max_degree: int = RING_MAX_DEGREE, products: int = RANDOM_PRODUCTS, seed: int = 0) -> list:
    bad_rank = [
        (n, ring.joint_restriction_rank(p, n), ring.dim(p, n))
        for n in range(0, max_degree + 1, 2)
        if ring.joint_restriction_rank(p, n) != ring.dim(p, n)
    ]
    rng = random.Random(seed * 1000 + p)
    bad_mult = []
    for _ in range(products):
        n1 = 2 * rng.randrange(max_degree // 4 + 1)
        n2 = 2 * rng.randrange(max_degree // 4 + 1)
        x, y = _random_element(rng, p, n1), _random_element(rng, p, n2)
        xy = x * y
        for A in ring.lines(p):
            if ring.restrict(xy, A) != ring.restrict(x, A) * ring.restrict(y, A):
                bad_mult.append((n1, n2, A))
                break
    return [
        no_mismatches(f"joint restriction injective, even n <= {max_degree}", bad_rank),
        no_mismatches(f"{products} random products commute with restriction", bad_mult),
    ]


# gamma decomposition and the ideal I


def direct_sum_bound(p: int) -> int:
    return 2 * (p + 2) * (p - 1)


def gamma_direct_sum(p: int) -> list:
    rep = gamma.check_gamma_direct_sum(p, direct_sum_bound(p))
    return [no_mismatches(f"sum of Gamma_S^n is H^n(E) for {rep.degrees_checked} even degrees", list(rep.violations))]


def _even(p: int):
    return range(0, direct_sum_bound(p) + 1, 2)


def ideal_complement(p: int) -> list:
    bad = []
    for n in _even(p):
        I, L = gamma.I_basis(p, n), gamma.L_basis(p, n)
        total = ring.dim(p, n)
        if I.rank + L.rank != total or (I + L).rank != total:
            bad.append((n, I.rank, L.rank, total))
    return [no_mismatches("H^n(E) = I^n + L^n directly", bad)]


def ideal_cap_table(p: int) -> list:
    bad, indivisible = [], []
    for n in _even(p):
        I = gamma.I_basis(p, n)
        for s in gamma.all_labels(p):
            table = gamma.i_cap_gamma_basis(p, s, n)
            G = gamma.gamma_basis(p, s, n)
            if table != (G & I):
                bad.append((n, str(s)))
            d = gamma.simple_dim(s, p)
            if table.rank % d or G.rank % d:
                indivisible.append((n, str(s), G.rank, table.rank))
    return [
        no_mismatches("tabulated I cap Gamma_S equals the computed intersection", bad),
        no_mismatches("Gamma_S and I cap Gamma_S ranks are multiples of dim S", indivisible),
    ]


def ideal_direct_sum(p: int) -> list:
    bad = []
    for n in _even(p):
        I = gamma.I_basis(p, n)
        parts = [gamma.i_cap_gamma_basis(p, s, n) for s in gamma.all_labels(p)]
        summed = sum(x.rank for x in parts)
        joined = span_all(parts, ring.dim(p, n), p)
        if summed != I.rank or joined != I:
            bad.append((n, summed, joined.rank, I.rank))
    return [no_mismatches("I^n is the direct sum of the I cap Gamma_S^n", bad)]


def _late_labels(p: int, space: str, bound: int) -> list:
    out = []
    for s in gamma.all_labels(p):
        n = gamma.first_degree(p, s, space)
        if n is None or n > bound:
            out.append((str(s), n))
    return out


def assembly(p: int) -> list:
    top = 2 * (p * p - 2)
    bad = []
    for n in range(top + 1):
        got = gamma.factor_total(p, gamma.hefp_factors(p, n))
        want = gamma.hefp_dim_direct(p, n)
        if got != want:
            bad.append((n, got, want))
    low = [gamma.factor_total(p, gamma.hefp_factors(p, n)) for n in (1, 2)]
    late = _late_labels(p, "HEFP", top)
    late_he = _late_labels(p, "HE", direct_sum_bound(p))
    return [
        no_mismatches(f"factor totals equal the direct count for n <= {top}", bad),
        equals("dim H^1, dim H^2 of H*(E, F_p)", low, [2, 4]),
        no_mismatches(f"every simple module occurs in H^n(E, F_p) for some n <= {top}", late),
        no_mismatches(f"every simple module occurs in H^n(E) for some n <= {direct_sum_bound(p)}", late_he),
    ]


# invariant tables


def _invariant_basis(p: int, name: str, n: int, space):
    return gl2.invariants(gl2.named_group(p, name), space, n)


def _basis_matches(p: int, n: int, computed, elems) -> bool:
    if not elems:
        return computed.rank == 0
    want = rref_basis([ring.to_vector(e, n) for e in elems], ring.dim(p, n), p)
    return computed == want and want.rank == len(elems)


def _sv_table(p: int, names) -> list:
    bad = []
    for name in names:
        for l in range(p):
            for k in range(p - 1):
                n, space = fusion.sv_module(p, l, k)
                computed = _invariant_basis(p, name, n, space)
                want = cf.torus_invariants(p, name, l, k) if name in ("T", "Tw") else cf.h_invariants(p, name, l, k)
                if not _basis_matches(p, n, computed, want):
                    bad.append((name, l, k, computed.rank, len(want)))
    return bad


def torus_invariants(p: int) -> list:
    return [no_mismatches("(S^l v^k)^T and (S^l v^k)^{T<w>} bases", _sv_table(p, ("T", "Tw")))]


def h_invariants(p: int) -> list:
    return [no_mismatches("(S^l v^k)^H bases", _sv_table(p, ("H",)))]


def hw_invariants(p: int) -> list:
    return [no_mismatches("(S^l v^k)^{H<w>} bases", _sv_table(p, ("Hw",)))]


CS_ORDER = ("T", "H", "Tw", "Hw")


def _cs(p: int, twice: bool) -> list:
    m = (p - 1) // 3
    q = 2 * m if twice else m
    n, space = fusion.cst_module(p, q)
    dims, bad = [], []
    for name in CS_ORDER:
        computed = _invariant_basis(p, name, n, space)
        dims.append(computed.rank)
        if not _basis_matches(p, n, computed, cf.cs_invariants(p, name, twice)):
            bad.append(name)
    label = "2m" if twice else "m"
    central = MatrixGroup(p, [gl2.scalar(p, gl2.primitive_root(p))])
    return [
        Check(f"diag(xi, xi) fixes all of (CS^q + T^q) v^q, q = {label}", gl2.invariants(central, space, n) == space),
        no_mismatches(f"((CS^q + T^q) v^q)^W bases, q = {label}", bad),
        equals(f"dims over (T, H, T<w>, H<w>), q = {label}", dims, [1, 5, 1, 3]),
    ]


def cs_m_invariants(p: int) -> list:
    return _cs(p, False)


def cs_2m_invariants(p: int) -> list:
    return _cs(p, True)


# multiplicity calculus


def applicable_presets(p: int) -> list:
    names = list(fusion.GENERIC_PRESETS)
    if p == 7:
        names += list(fusion.P7_PRESETS)
    return [fusion.preset(name, p) for name in names]


def l2_vanishing(p: int) -> list:
    xi = gl2.primitive_root(p)
    central = gl2.scalar(p, xi)
    bad, tested = [], 0
    for F in applicable_presets(p):
        if central not in F.we_group().elements():
            continue
        for q in range(1, p - 1):
            if pow(xi, 3 * q, p) != 1:
                tested += 1
                if fusion.m2_mult(F, q):
                    bad.append((F.name, q))
    return [no_mismatches(f"m(G,2)_q = 0 whenever xi^(3q) != 1 ({tested} cases)", bad)]


def table_descriptor(p: int, name: str) -> FusionDescriptor:
    """W_E from the named torus-type group, radicals A_0 and A_inf with automizer GL_2."""
    we = gl2.named_group(p, name).generators
    rads = [((0, INF), "GL2")] if name.endswith("w") else [((0,), "GL2"), ((INF,), "GL2")]
    return FusionDescriptor(p, we, tuple(RadicalClass(l, wa) for l, wa in rads), name)


def l2_table(p: int) -> list:
    m = (p - 1) // 3
    checks = []
    for name, want in cf.L2_TABLE.items():
        F = table_descriptor(p, name)
        checks.append(
            equals(
                f"m(G,2)_m = m(G,2)_2m for W = {name}", [fusion.m2_mult(F, m), fusion.m2_mult(F, 2 * m)], [want, want]
            )
        )
    return checks


def multiplicity_identities(p: int) -> list:
    presets = applicable_presets(p)
    bad_zero = [
        (F.name, fusion.m2_zero(F), fusion.m1_mult(F, 0)) for F in presets if fusion.m2_zero(F) != fusion.m1_mult(F, 0)
    ]
    bad_triv = [F.name for F in presets if fusion.n_mult(F, 0, 0) != 1]
    top = 2 * (p * p - 1)
    bad_series = [
        (F.name, n)
        for F in presets
        for n in range(0, top + 1, 2)
        if fusion.hg_dim(F, n) != fusion.hg_dim_from_split(F, n)
    ]
    return [
        no_mismatches("m(G,2)_0 = m(G,1)_0 for every preset", bad_zero),
        no_mismatches("X_{0,0} occurs once for every preset", bad_triv),
        no_mismatches(f"dim H^n(G) equals the count from the splitting, n <= {top}", bad_series),
    ]


# splittings


def _split_check(name: str, F: FusionDescriptor, want) -> Check:
    got = fusion.split(F)
    if got == want:
        return Check(name, True, got.wedge())
    return Check(name, False, f"difference {(got - want).wedge()}")


def torus_splitting(p: int) -> list:
    checks = [_split_check("L3p.3 splitting", fusion.preset("L3p.3", p), cf.torus_form(p))]
    if (p - 1) % 3:
        checks.append(_split_check("L3p splitting (3 does not divide p-1)", fusion.preset("L3p", p), cf.torus_form(p)))
    return checks


def torus_w_splitting(p: int) -> list:
    checks = [_split_check("L3p.S3 splitting", fusion.preset("L3p.S3", p), cf.torus_w_form(p))]
    if (p - 1) % 3:
        checks.append(
            _split_check("L3p:2 splitting (3 does not divide p-1)", fusion.preset("L3p:2", p), cf.torus_w_form(p))
        )
    return checks


def h_splitting(p: int) -> list:
    return [_split_check("L3p splitting", fusion.preset("L3p", p), cf.h_form(p))]


def hw_splitting(p: int) -> list:
    return [_split_check("L3p:2 splitting", fusion.preset("L3p:2", p), cf.hw_form(p))]


def p7_splittings(p: int) -> list:
    return [
        _split_check(f"{fusion.preset(n).name} list", fusion.preset(n), cf.P7_LISTS[k])
        for k, n in cf.P7_LIST_PRESETS.items()
    ]


def p7_diagram(p: int) -> list:
    checks = []
    for big, small, want in cf.P7_DIAGRAM:
        got = fusion.compare(fusion.preset(big), fusion.preset(small))
        ok = got == want and got.is_nonnegative()
        checks.append(
            Check(f"{big} - {small}", ok, got.wedge() if ok else f"got {got.wedge()}, expected {want.wedge()}")
        )
    got = fusion.compare(fusion.preset("ON"), fusion.preset("Fi24"))
    checks.append(Check("ON - Fi24", got == cf.ON_MINUS_FI24, got.wedge()))
    return checks


def fi24_subgroups(p: int) -> list:
    G = gl2.named_group(7, "Tw")
    subs = gl2.subgroups_of_order(G, 24)
    return [
        equals("order of T<w>", G.order(), 72),
        Check(
            f"all {len(subs)} subgroups of order 24 contain diag(-1,1) and diag(1,-1)", fusion.order24_subgroups_check()
        ),
    ]


# p = 3

P3_TABLE = {
    fusion.L1(1): 1,
    fusion.L1(0): 2,
    fusion.L2(1): 6,
    fusion.L2(0): 10,
    X(0, 0): 6,
    X(0, 1): 3,
    X(1, 0): 7,
    X(1, 1): 3,
    X(2, 0): 8,
    X(2, 1): 5,
}


def p3_lowest_degrees(p: int) -> list:
    table = p3.p3_lowest_degree_table()
    checks = [equals(f"lowest half-degree of {lab}", table[lab], want) for lab, want in P3_TABLE.items()]
    h8 = [gamma.summand_dim(3, fusion.simple_of(lab), 8, "HE") for lab in (X(0, 1), X(1, 1))]
    checks.append(equals("H^8 of X_{0,1}, X_{1,1}", h8, [0, 1]))
    return checks


P3_QUOTIENT_MAX = 120


def p3_quotient_rule(n: int) -> dict:
    """Expected factors of the extra classes: S^1 det^(k+1) in degree 2 + 6k, nothing elsewhere."""
    if n < 2 or (n - 2) % 6:
        return {}
    k = (n - 2) // 6
    return {gamma.EE(1, (k + 1) % 2): 1}


def p3_quotient(p: int) -> list:
    bad = [n for n in range(P3_QUOTIENT_MAX + 1) if dict(p3.p3_quotient_factors(n)) != p3_quotient_rule(n)]
    return [no_mismatches(f"extra-class factors follow the mod 12 rule through degree {P3_QUOTIENT_MAX}", bad)]


def p3_dickson(p: int) -> list:
    return [
        no_mismatches(
            f"dim H^n(X_00) equals the D+ monomial count, n <= {P3_QUOTIENT_MAX}",
            p3.x00_series_matches_dickson(P3_QUOTIENT_MAX),
        )
    ]


def p3_pairing(p: int) -> list:
    report = fusion.p3_pairing_report()
    return [Check(f"(S^1)^H and (S^1 det)^H agree over {len(report)} 3'-subgroups", fusion.p3_pairing_check())]


def synthetic_descriptors(p: int = 3) -> list:
    """Fusion systems with W_E a 2-group and radical classes with automizer GL_2.

    A W_E-orbit qualifies as a radical class when its line stabilizer in W_E
    has order (p-1)^2, the order needed for W_E to normalize a GL_2 automizer.
    """
    G = gl2.named_group(p, "GL2")
    out, seen = [], set()
    for sub in gl2.all_subgroups(G):
        k = len(sub)
        if k & (k - 1):
            continue
        W = MatrixGroup(p, sorted(sub))
        good = []
        for orb in gl2.orbit_classes(W):
            stab = [g for g in W.elements() if gl2.act_on_line(p, g, orb[0]) == orb[0]]
            if len(stab) == (p - 1) ** 2:
                good.append(orb)
        for r in range(len(good) + 1):
            for chosen in combinations(good, r):
                key = (frozenset(sub), frozenset(chosen))
                if key in seen:
                    continue
                seen.add(key)
                rads = tuple(RadicalClass(orb, "GL2") for orb in chosen)
                out.append(FusionDescriptor(p, tuple(sorted(sub)), rads, f"W{k}.{len(out)}"))
    return out


DIM_CRITERION_HALF_DEGREE = 8


def dim_criterion(p: int) -> list:
    descs = synthetic_descriptors(p)
    top = 40
    bad_series = [
        (F.name, n) for F in descs for n in range(0, top, 2) if fusion.hg_dim(F, n) != fusion.hg_dim_from_split(F, n)
    ]
    violations, direction, first8 = [], [], 0
    for F1, F2 in combinations(descs, 2):
        same = fusion.equivalence_by_dims(F1, F2)
        if same != (fusion.split(F1) == fusion.split(F2)):
            violations.append((F1.name, F2.name))
        diff = fusion.compare(F1, F2)
        if not same and fusion.first_dim_difference(F1, F2) == DIM_CRITERION_HALF_DEGREE:
            first8 += 1
            big, small = (F1, F2) if diff.is_nonnegative() else (F2, F1)
            n = 2 * DIM_CRITERION_HALF_DEGREE
            gap = diff if big is F1 else diff.scale(-1)
            if fusion.hg_dim(big, n) <= fusion.hg_dim(small, n) or gap.labels() != [X(2, 0)]:
                direction.append((F1.name, F2.name))
    return [
        Check(f"{len(descs)} synthetic descriptors", len(descs) > 1),
        no_mismatches(f"dim H^n(G) equals the count from the splitting, n < {top}", bad_series),
        no_mismatches("dims agree through half-degree 8 iff the splittings agree", violations),
        Check(f"{first8} pairs first differ at half-degree 8", first8 > 0),
        no_mismatches("such pairs differ by copies of X_{2,0} and the larger splitting has the larger H^16", direction),
    ]


# registry


@dataclass(frozen=True)
class Suite:
    name: str
    aliases: tuple
    run: Callable
    primes: tuple = ring.SUPPORTED_PRIMES
    needs_third: bool = False
    description: str = ""

    def default_p(self) -> int:
        return 7 if 7 in self.primes else self.primes[0]

    def unavailable(self, p: int) -> str | None:
        if p not in self.primes:
            return f"suite {self.name} runs only at p in {list(self.primes)}"
        if self.needs_third and (p - 1) % 3:
            return f"suite {self.name} needs 3 | p-1, but p = {p}"
        return None


_ALL_BUT_3 = (5, 7, 11, 13)
_THIRD = (7, 13)

SUITES = (
    Suite("ring-oracle", (), ring_oracle, description="restriction detection and random products"),
    Suite("gamma-direct-sum", ("prop-2.5",), gamma_direct_sum, description="H(E) as the direct sum of the Gamma_S"),
    Suite("ideal-complement", ("lem-3.2",), ideal_complement, description="H(E) = I + L"),
    Suite("ideal-cap-table", ("lem-3.3",), ideal_cap_table, description="tabulated I cap Gamma_S"),
    Suite("ideal-direct-sum", ("lem-3.4",), ideal_direct_sum, description="I as the direct sum of the I cap Gamma_S"),
    Suite("assembly", ("thm-1.1",), assembly, description="composition factors of H(E, F_p)"),
    Suite("torus-invariants", ("lem-4.8",), torus_invariants, _THIRD, True),
    Suite("h-invariants", ("lem-4.9",), h_invariants, _THIRD, True),
    Suite("hw-invariants", ("lem-4.10",), hw_invariants, _THIRD, True),
    Suite("l2-vanishing", ("lem-4.11",), l2_vanishing, _ALL_BUT_3),
    Suite("cs-m-invariants", ("lem-4.12",), cs_m_invariants, _THIRD, True),
    Suite("cs-2m-invariants", ("lem-4.13",), cs_2m_invariants, _THIRD, True),
    Suite("l2-table", ("prop-4.12",), l2_table, _THIRD, True),
    Suite("multiplicity-identities", (), multiplicity_identities, _ALL_BUT_3),
    Suite("torus-splitting", ("thm-4.13",), torus_splitting, _ALL_BUT_3),
    Suite("torus-w-splitting", ("thm-4.14",), torus_w_splitting, _ALL_BUT_3),
    Suite("h-splitting", ("thm-4.15",), h_splitting, _THIRD, True),
    Suite("hw-splitting", ("thm-4.16",), hw_splitting, _THIRD, True),
    Suite("p7-splittings", ("ex-4.17",), p7_splittings, (7,)),
    Suite("p7-diagram", ("thm-4.19",), p7_diagram, (7,)),
    Suite("fi24-subgroups", ("rem-4.18",), fi24_subgroups, (7,)),
    Suite("p3-lowest-degrees", ("p3-table",), p3_lowest_degrees, (3,)),
    Suite("p3-quotient", ("prop-5.2",), p3_quotient, (3,)),
    Suite("p3-dickson", ("cor-5.3",), p3_dickson, (3,)),
    Suite("p3-pairing", (), p3_pairing, (3,)),
    Suite("dim-criterion", ("thm-5.4",), dim_criterion, (3,)),
)

_BY_NAME = {s.name: s for s in SUITES} | {a: s for s in SUITES for a in s.aliases}


def suite_names() -> list:
    return [s.name for s in SUITES]


def get_suite(name: str) -> Suite:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise SuiteUnavailable(f"unknown suite {name!r}; choose from {', '.join(sorted(_BY_NAME))} or all") from None


def applicable_suites(p: int) -> list:
    return [s for s in SUITES if s.unavailable(p) is None]


def run_suite(name: str, p: int | None = None) -> SuiteResult:
    suite = get_suite(name)
    p = suite.default_p() if p is None else p
    reason = suite.unavailable(p)
    if reason:
        raise SuiteUnavailable(reason)
    start = time.perf_counter()
    checks = suite.run(p)
    return SuiteResult(suite.name, p, checks, time.perf_counter() - start)


def run_all(p: int) -> list:
    ring.check_prime(p)
    return [run_suite(s.name, p) for s in applicable_suites(p)]
