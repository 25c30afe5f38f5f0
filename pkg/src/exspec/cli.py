"""Command-line front end.

    exspec dims --p 5 --max-half-degree 10 --space HE
    exspec split --preset 'L3(7).3' --format json
    exspec compare --preset ON --preset Fi24
    exspec verify gamma-direct-sum --p 3

Exit status: 0 on success, 1 when a check fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cache, fusion, gamma, gl2, p3, ring, verify
from .fusion import DescriptorError, FusionDescriptor

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _SystemAction(argparse.Action):
    """Collect --preset and --descriptor into one ordered list."""

    def __call__(self, parser, namespace, value, option_string=None):
        items = list(getattr(namespace, "systems", None) or [])
        items.append((self.dest, value))
        namespace.systems = items


# output


def _emit(payload: dict, fmt: str, tsv_rows=None, header=None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
        return
    if header:
        print("\t".join(header))
    for row in tsv_rows or []:
        print("\t".join(str(x) for x in row))


def _format(args, default: str) -> str:
    return args.format or default


# argument helpers


def _prime(args, default: int = 7) -> int:
    p = default if args.p is None else args.p
    try:
        return ring.check_prime(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_descriptor(path: str) -> FusionDescriptor:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read descriptor {path}: {exc.strerror}") from None
    return FusionDescriptor.from_json(text, name=path)


def _systems(args, p_default=None) -> list:
    out = []
    for kind, value in getattr(args, "systems", None) or []:
        if kind == "preset":
            out.append(fusion.preset(value, args.p if args.p is not None else p_default))
        else:
            out.append(_load_descriptor(value))
    if args.p is not None:
        for F in out:
            if F.p != args.p:
                raise UsageError(f"{F.name} is defined at p = {F.p}, not {args.p}")
    return out


def _one_system(args) -> FusionDescriptor:
    systems = _systems(args)
    if len(systems) != 1:
        raise UsageError("give exactly one --preset or --descriptor")
    return systems[0]


# commands


def cmd_dims(args) -> int:
    space = args.space
    K = args.max_half_degree
    if space == "HG":
        F = _one_system(args)
        p = F.p
        rows = [(2 * k, fusion.hg_dim(F, 2 * k)) for k in range(K + 1)]
    else:
        if getattr(args, "systems", None):
            raise UsageError("--preset/--descriptor only apply with --space HG")
        p = _prime(args)
        if space == "HE":
            rows = [(2 * k, ring.dim(p, 2 * k)) for k in range(K + 1)]
        elif space == "I":
            rows = [(2 * k, gamma.I_basis(p, 2 * k).rank) for k in range(K + 1)]
        else:
            rows = [(n, gamma.hefp_dim_direct(p, n)) for n in range(2 * K + 1)]
    payload = {
        "command": "dims",
        "p": p,
        "space": space,
        "max_half_degree": K,
        "rows": [{"degree": n, "dim": d} for n, d in rows],
    }
    _emit(payload, _format(args, "tsv"), rows, ("degree", "dim"))
    return EXIT_OK


def _factor_text(counts) -> str:
    return " ".join(f"{s}" if c == 1 else f"{s}x{c}" for s, c in sorted(counts.items())) or "-"


def cmd_series(args) -> int:
    if args.space == "HG":
        raise UsageError("series is defined for HE, I and HEFP")
    p = _prime(args)
    step = 1 if args.space == "HEFP" else 2
    rows = []
    for n in range(0, 2 * args.max_half_degree + 1, step):
        counts = gamma.factors(p, n, args.space)
        rows.append((n, gamma.factor_total(p, counts), counts))
    payload = {
        "command": "series",
        "p": p,
        "space": args.space,
        "max_half_degree": args.max_half_degree,
        "rows": [{"degree": n, "dim": d, "factors": {str(s): c for s, c in sorted(f.items())}} for n, d, f in rows],
    }
    tsv = [(n, d, _factor_text(f)) for n, d, f in rows]
    _emit(payload, _format(args, "tsv"), tsv, ("degree", "dim", "factors"))
    return EXIT_OK


def _group(args):
    if getattr(args, "systems", None):
        F = _one_system(args)
        return F.p, F.we_group()
    p = _prime(args)
    try:
        return p, gl2.named_group(p, args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _basis_strings(p: int, n: int, space) -> list:
    return [repr(ring.from_vector(p, n, row)) for row in space.basis]


def cmd_invariants(args) -> int:
    p, G = _group(args)
    rows = []
    if args.module == "S":
        ls = range(p) if args.l is None else [args.l]
        ks = range(p - 1) if args.k is None else [args.k]
        for l in ls:
            for k in ks:
                if not (0 <= l <= p - 1 and 0 <= k <= p - 2):
                    raise UsageError(f"need 0 <= l <= {p - 1} and 0 <= k <= {p - 2}")
                n, space = fusion.sv_module(p, l, k)
                inv = gl2.invariants(G, space, n)
                rows.append({"l": l, "k": k, "degree": n, "dim": inv.rank, "basis": _basis_strings(p, n, inv)})
    else:
        qs = range(1, p - 1) if args.k is None else [args.k]
        for q in qs:
            if not 1 <= q <= p - 2:
                raise UsageError(f"need 1 <= q <= {p - 2}")
            n, space = fusion.cst_module(p, q)
            inv = gl2.invariants(G, space, n)
            rows.append({"q": q, "degree": n, "dim": inv.rank, "basis": _basis_strings(p, n, inv)})
    payload = {"command": "invariants", "p": p, "group": G.name, "module": args.module, "rows": rows}
    keys = ("l", "k") if args.module == "S" else ("q",)
    tsv = [[r[k] for k in keys] + [r["degree"], r["dim"], "; ".join(r["basis"]) or "-"] for r in rows]
    _emit(payload, _format(args, "json"), tsv, keys + ("degree", "dim", "basis"))
    return EXIT_OK


def cmd_gamma_check(args) -> int:
    p = _prime(args)
    top = verify.direct_sum_bound(p) if args.max_degree is None else args.max_degree
    rep = gamma.check_gamma_direct_sum(p, top)
    payload = {
        "command": "gamma-check",
        "p": p,
        "max_degree": top,
        "degrees_checked": rep.degrees_checked,
        "violations": [list(v) for v in rep.violations],
        "passed": rep.ok,
    }
    _emit(
        payload,
        _format(args, "json"),
        [(p, top, rep.degrees_checked, "PASS" if rep.ok else "FAIL")],
        ("p", "max_degree", "degrees", "result"),
    )
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_mult(args) -> int:
    F = _one_system(args)
    p = F.p
    n = {f"{i},{q}": fusion.n_mult(F, i, q) for i in range(p) for q in range(p - 1)}
    m1 = {str(q): fusion.m1_mult(F, q) for q in range(p - 1)}
    m2 = {"0": fusion.m2_zero(F)} | {str(q): fusion.m2_mult(F, q) for q in range(1, p - 1)}
    payload = {"command": "mult", "name": F.name, "p": p, "n": n, "m1": m1, "m2": m2}
    tsv = (
        [("n", k, v) for k, v in n.items()]
        + [("m1", k, v) for k, v in m1.items()]
        + [("m2", k, v) for k, v in m2.items()]
    )
    _emit(payload, _format(args, "json"), tsv, ("kind", "index", "value"))
    return EXIT_OK


def _split_entry(F: FusionDescriptor) -> dict:
    sp = fusion.split(F)
    return {"name": F.name, "p": F.p, "descriptor": F.to_dict(), "split": sp.to_dict(), "wedge": sp.wedge()}


def cmd_split(args) -> int:
    systems = _systems(args)
    if not systems:
        raise UsageError("give at least one --preset or --descriptor")
    results = [_split_entry(F) for F in systems]
    payload = {"command": "split", "results": results}
    tsv = []
    for F in systems:
        sp = fusion.split(F)
        tsv += [(F.name, str(lab), sp[lab]) for lab in sp.labels()]
    _emit(payload, _format(args, "json"), tsv, ("system", "summand", "multiplicity"))
    return EXIT_OK


def cmd_compare(args) -> int:
    systems = _systems(args)
    if len(systems) != 2:
        raise UsageError("compare needs exactly two fusion systems")
    F1, F2 = systems
    if F1.p != F2.p:
        raise UsageError(f"prime mismatch: {F1.p} vs {F2.p}")
    diff = fusion.compare(F1, F2)
    bound = fusion.default_bound(F1.p) if args.max_half_degree is None else args.max_half_degree
    payload = {
        "command": "compare",
        "p": F1.p,
        "first": F1.name,
        "second": F2.name,
        "difference": diff.to_dict(),
        "wedge": diff.wedge(),
        "nonnegative": diff.is_nonnegative(),
        "max_half_degree": bound,
        "first_dim_difference": fusion.first_dim_difference(F1, F2, bound),
    }
    tsv = [(str(lab), diff[lab]) for lab in diff.labels()]
    _emit(payload, _format(args, "json"), tsv, ("summand", "difference"))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        rows = [(s.name, ",".join(s.aliases) or "-", ",".join(map(str, s.primes))) for s in verify.SUITES]
        _emit(
            {"command": "verify", "suites": [{"name": n, "aliases": a, "primes": q} for n, a, q in rows]},
            _format(args, "tsv"),
            rows,
            ("suite", "aliases", "primes"),
        )
        return EXIT_OK
    name = args.suite_name or args.suite
    if not name:
        raise UsageError("name a suite, or use 'all'")
    try:
        if name == "all":
            p = _prime(args)
            results = verify.run_all(p)
        else:
            suite = verify.get_suite(name)
            results = [verify.run_suite(name, suite.default_p() if args.p is None else _prime(args))]
    except verify.SuiteUnavailable as exc:
        raise UsageError(str(exc)) from None
    passed = all(r.passed for r in results)
    payload = {
        "command": "verify",
        "suite": name,
        "p": results[0].p if results else args.p,
        "passed": passed,
        "suites": [r.to_dict() for r in results],
    }
    tsv = [(r.suite, c.name, "PASS" if c.passed else "FAIL", c.detail) for r in results for c in r.checks]
    _emit(payload, _format(args, "json"), tsv, ("suite", "check", "result", "detail"))
    return EXIT_OK if passed else EXIT_FAIL


def cmd_p3_table(args) -> int:
    if args.p not in (None, 3):
        raise UsageError("p3-table is only defined at p = 3")
    if args.space not in ("HE", "HEFP"):
        raise UsageError("p3-table uses --space HE or HEFP")
    table = p3.p3_lowest_degree_table(args.space)
    rows = [{"summand": str(lab), "half_degree": k} for lab, k in table.items()]
    payload = {"command": "p3-table", "p": 3, "space": args.space, "rows": rows}
    _emit(payload, _format(args, "json"), [(r["summand"], r["half_degree"]) for r in rows], ("summand", "half_degree"))
    return EXIT_OK


# parser


def _common(parser) -> None:
    parser.add_argument("--p", type=int, default=None, help="prime (3, 5, 7, 11 or 13)")
    parser.add_argument("--format", choices=("json", "tsv"), default=None)
    parser.add_argument("--cache-dir", default=None, help=f"basis cache directory ({cache.ENV_VAR} takes precedence)")


def _system_flags(parser) -> None:
    parser.add_argument(
        "--preset", action=_SystemAction, metavar="NAME", help=f"one of {', '.join(fusion.PRESET_NAMES)}"
    )
    parser.add_argument("--descriptor", action=_SystemAction, metavar="PATH", help="fusion descriptor JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exspec", description="Cohomology and stable splittings over p^{1+2}_+.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimensions of a graded ring, degree by degree")
    _common(p)
    p.add_argument("--max-half-degree", type=int, default=10)
    p.add_argument("--space", choices=("HE", "I", "HEFP", "HG"), default="HE")
    _system_flags(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("series", help="composition factors degree by degree")
    _common(p)
    p.add_argument("--max-half-degree", type=int, default=10)
    p.add_argument("--space", choices=("HE", "I", "HEFP", "HG"), default="HE")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("invariants", help="invariants of a matrix group on S^l v^k or (CS^q + T^q) v^q")
    _common(p)
    p.add_argument("--group", default="T", help=f"one of {', '.join(gl2.GROUP_NAMES)}")
    p.add_argument("--module", choices=("S", "CST"), default="S")
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="power of v (q for --module CST)")
    _system_flags(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("gamma-check", help="check the Gamma_S direct-sum decomposition")
    _common(p)
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(func=cmd_gamma_check)

    for name, func, text in (
        ("mult", cmd_mult, "multiplicities n, m1, m2 of one fusion system"),
        ("split", cmd_split, "stable splitting of BG"),
        ("compare", cmd_compare, "difference of two splittings"),
    ):
        p = sub.add_parser(name, help=text)
        _common(p)
        _system_flags(p)
        if name == "compare":
            p.add_argument("--max-half-degree", type=int, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p)
    p.add_argument("suite_name", nargs="?", default=None, metavar="SUITE")
    p.add_argument("--suite", default=None)
    p.add_argument("--list", action="store_true", help="list suites, their aliases and primes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("p3-table", help="lowest degrees of the summands of BE at p = 3")
    _common(p)
    p.add_argument("--space", choices=("HE", "HEFP"), default="HE")
    p.set_defaults(func=cmd_p3_table)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cache.install(cache.resolve_dir(args.cache_dir))
    try:
        return args.func(args)
    except (UsageError, DescriptorError) as exc:
        print(f"exspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        cache.install(None)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
