"""Command line interface: ``qdeform {charpoly,freeness,verify,reproduce}``.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 resource
bound, 4 precondition (e.g. a basis requested for a non-chordal graph).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import arrangement as A
from .charpoly import (
    CharpolyCache,
    SizeBoundError,
    charpoly_mobius,
    charpoly_subsets,
    complement_count,
    delta53_formula,
    skeleton_charpoly_formula,
    verify_congruence,
    verify_identity_prop43,
    verify_q_delcon,
    verify_q_delcon_monomial,
)
from .combinat import (
    Graph,
    SimplicialComplex,
    all_graphs,
    complete_graph,
    complex_from_facets,
    cycle_graph,
    empty_graph,
    mcs_peo,
    path_graph,
    petersen_graph,
    skeleton_complex,
)
from .freeness import (
    basis_graphic,
    basis_monomial,
    basis_qdef,
    chordal_filtration,
    saito_certify,
    supersolvable_verify,
    terao_factor_check,
)
from .gf import FieldError, field_make, field_of_order, smallest_field_with_root
from .polyalg import format_expanded, format_factored, int_root_split

SCHEMA = 1

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND, EXIT_PRECONDITION = 0, 1, 2, 3, 4


class ParseError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# inputs


_NAMED_GRAPH = re.compile(r"^(K|P|C|E|all)(\d+)$")


def read_graph_text(text: str, n: int | None = None) -> Graph:
    """Edge list "u v" per line; a lone integer line declares the vertex count."""
    edges = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {raw!r}") from None
        if len(nums) == 1 and declared is None and not edges:
            declared = nums[0]
        elif len(nums) == 2:
            edges.append((nums[0], nums[1]))
        else:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
    size = n or declared or max((max(e) for e in edges), default=0)
    try:
        return Graph.make(size, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_graphs(spec: str, n: int | None = None) -> list[tuple[str, Graph]]:
    """A file path or a family name: K5, P4, C4, E5 (empty), all5, petersen."""
    m = _NAMED_GRAPH.match(spec)
    if m:
        kind, size = m.group(1), int(m.group(2))
        if kind == "all":
            return [(f"G{i}", g) for i, g in enumerate(all_graphs(size))]
        maker = {"K": complete_graph, "P": path_graph, "C": cycle_graph, "E": empty_graph}[kind]
        return [(spec, maker(size))]
    if spec == "petersen":
        return [(spec, petersen_graph())]
    path = Path(spec)
    if not path.exists():
        raise ParseError(f"no such graph file or family: {spec}")
    return [(path.stem, read_graph_text(path.read_text(), n))]


_NAMED_SKELETON = re.compile(r"^delta(\d+),(\d+)$")


def read_complex_json(data) -> SimplicialComplex:
    try:
        n = int(data["n"])
        facets = [list(map(int, f)) for f in data.get("facets", [])]
        return complex_from_facets(n, facets)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad complex description: {exc}") from None


def load_complex(spec: str) -> tuple[str, SimplicialComplex]:
    m = _NAMED_SKELETON.match(spec)
    if m:
        return spec, skeleton_complex(int(m.group(1)), int(m.group(2)))
    path = Path(spec)
    if not path.exists():
        raise ParseError(f"no such complex file: {spec}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{spec}: {exc}") from None
    return path.stem, read_complex_json(data)


def resolve_field(args, r: int | None = None, q: int | None = None):
    """Field from --q / --p --e, or the smallest field with an r-th root of unity."""
    try:
        if q is not None:
            return field_of_order(q)
        if getattr(args, "p", None) is not None:
            return field_make(args.p, args.e or 1)
        if r is not None:
            return smallest_field_with_root(r)
    except FieldError as exc:
        raise ParseError(str(exc)) from None
    return None


def _qs(args) -> list[int]:
    if args.q:
        return list(args.q)
    if getattr(args, "p", None) is not None:
        return [args.p ** (args.e or 1)]
    return []


def build_from_args(args, q_override=None):
    """(label, arrangement, graph-or-None, builder name)."""
    q = q_override if q_override is not None else (args.q[0] if args.q else None)
    if args.arrangement:
        try:
            return "arrangement", A.Arrangement.from_json(Path(args.arrangement).read_text()), None, "file"
        except (OSError, KeyError, ValueError) as exc:
            raise ParseError(f"bad arrangement file: {exc}") from None
    if args.complex:
        label, cx = load_complex(args.complex)
        spec = resolve_field(args, q=q) or field_make(2)
        return label, A.build_qdef_complex(cx, spec), None, "qdef-complex"
    if args.graph:
        graphs = load_graphs(args.graph, args.n)
        if len(graphs) != 1:
            raise ParseError("this command takes a single graph")
        label, g = graphs[0]
        return label, _build_graph(args, g, q), g, args_builder(args)
    raise ParseError("one of --graph, --complex, --arrangement is required")


def args_builder(args) -> str:
    if getattr(args, "monomial_r", None) is not None:
        return "monomial0" if args.simplified else "monomial"
    if getattr(args, "sgq", False):
        return "sgq"
    if getattr(args, "qdef", False):
        return "qdef"
    return "graphic"


def _build_graph(args, g: Graph, q):
    kind = args_builder(args)
    if kind in ("monomial", "monomial0"):
        r = args.monomial_r
        spec = resolve_field(args, q=q) or resolve_field(args, r=r)
        if (spec.q - 1) % r:
            raise PreconditionError(f"{spec} has no primitive {r}-th root of unity")
        return A.build_monomial(g, r, spec, simplified=(kind == "monomial0"))
    if kind == "sgq":
        return A.build_sgq(g, resolve_field(args, q=q) or field_make(2))
    if kind == "qdef":
        return A.build_qdef_graph(g, resolve_field(args, q=q) or field_make(2))
    return A.build_graphic(g, resolve_field(args, q=q) or field_make(7))


# ---------------------------------------------------------------------------
# output helpers


def poly_json(p):
    roots, rest = int_root_split(p)
    return {
        "coeffs": list(p.coeffs),
        "factored": format_factored(p),
        "integer_roots": roots,
        "residual": list(rest.coeffs),
    }


def emit(args, payload: dict, lines: list[str]):
    if getattr(args, "json", False):
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _map(args, fn, items):
    jobs = max(1, getattr(args, "jobs", 1) or 1)
    if jobs == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# commands


def cmd_charpoly(args) -> int:
    label, arr, _, builder = build_from_args(args)
    chi = charpoly_mobius(arr)
    roots, rest = int_root_split(chi)
    lines = [format_factored(chi)]
    payload = {
        "command": "charpoly",
        "input": label,
        "builder": builder,
        "field": {"p": arr.spec.p, "e": arr.spec.e},
        "dim": arr.dim,
        "hyperplanes": len(arr),
        "charpoly": poly_json(chi),
    }
    if args.verbose:
        lines.append(f"expanded: {format_expanded(chi)}")
        lines.append(f"hyperplanes: {len(arr)} in dimension {arr.dim} over {arr.spec}")
        if rest.degree >= 1:
            lines.append(f"does not split over Z: residual {format_expanded(rest)}")
    ok = True
    if args.oracle:
        checks = {}
        if len(arr) <= 20:
            checks["subsets"] = charpoly_subsets(arr) == chi
        for k in (1, 2):
            try:
                checks[f"points_k{k}"] = complement_count(arr, k) == chi(arr.spec.q**k)
            except SizeBoundError:
                pass
        payload["oracle"] = checks
        for name, good in checks.items():
            lines.append(f"{'PASS' if good else 'FAIL'} oracle {name}")
        ok = all(checks.values())
    emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_freeness(args) -> int:
    if not args.graph:
        raise ParseError("freeness needs --graph")
    graphs = load_graphs(args.graph, args.n)
    if len(graphs) != 1:
        raise ParseError("freeness takes a single graph")
    label, g = graphs[0]
    peo = mcs_peo(g)
    builder = args_builder(args)
    if peo is None:
        lines = [
            "not chordal",
            "not chordal => graphic arrangement, q-deformation and M(G, r) are not free "
            "(chordality is equivalent to freeness for these families)",
        ]
        emit(args, {"command": "freeness", "input": label, "chordal": False}, lines)
        return EXIT_PRECONDITION
    q = args.q[0] if args.q else None
    arr = _build_graph(args, g, q)
    spec = arr.spec
    if builder == "graphic":
        basis = basis_graphic(g, peo, spec)
    elif builder == "qdef":
        basis = basis_qdef(g, peo, spec)
    elif builder == "monomial":
        basis = basis_monomial(g, peo, args.monomial_r, spec)
    elif builder == "sgq":
        # S_G^q coincides with M(G, q - 1) over GF(q)
        basis = basis_monomial(g, peo, spec.q - 1, spec)
    else:
        raise PreconditionError(f"no explicit basis for builder {builder}")
    res = saito_certify(basis, arr)
    degrees = [t.degree() for t in basis]
    lines = [
        f"peo: {' '.join(map(str, peo.order))}",
        f"basis degrees: {tuple(degrees)}",
        f"saito: {'basis' if res.exponents is not None else 'not a basis'} ({res.reason})",
    ]
    payload = {
        "command": "freeness",
        "input": label,
        "builder": builder,
        "field": {"p": spec.p, "e": spec.e},
        "chordal": True,
        "peo": list(peo.order),
        "degrees": degrees,
        "saito": res.exponents is not None,
        "saito_reason": res.reason,
    }
    ok = res.exponents is not None
    if ok:
        terao = terao_factor_check(arr, res.exponents)
        lines.append(f"exponents: {res.exponents}")
        lines.append(f"terao factorization: {'PASS' if terao else 'FAIL'}")
        payload["exponents"] = list(res.exponents)
        payload["terao"] = terao
        ok = terao
    emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _verify_prop43(args):
    if not args.graph:
        raise ParseError("prop43 needs --graph")
    graphs = load_graphs(args.graph, args.n)
    cases = []
    if args.monomial_r:
        for r in args.monomial_r_list:
            spec = resolve_field(args, r=r)
            cases += [(lbl, g, spec, "monomial", r) for lbl, g in graphs]
    else:
        qs = _qs(args) or [2]
        for q in qs:
            spec = field_of_order(q)
            cases += [(lbl, g, spec, "sgq", None) for lbl, g in graphs]

    def run(case):
        lbl, g, spec, mode, r = case
        rep = verify_identity_prop43(g, spec, mode, r)
        rep.name = f"{lbl} {rep.name} q={spec.q}"
        return rep

    return _map(args, run, cases)


def _verify_qdelcon(args):
    reports = []
    cache = CharpolyCache()
    if args.complex:
        _, cx = load_complex(args.complex)
        from itertools import combinations

        for q in _qs(args) or [2]:
            spec = field_of_order(q)
            edges = [e for e in combinations(range(1, cx.n + 1), 2) if cx.is_maximal(e)]
            reports += _map(args, lambda e: verify_q_delcon(cx, e, spec, chi=cache), edges)
    elif args.graph:
        graphs = load_graphs(args.graph, args.n)
        rs = args.monomial_r_list or [1, 2, 3]
        cases = [(g, e, r) for r in rs for _, g in graphs for e in g.sorted_edges()]
        reports += _map(
            args,
            lambda c: verify_q_delcon_monomial(c[0], c[1], c[2], smallest_field_with_root(c[2]), chi=cache),
            cases,
        )
    else:
        raise ParseError("qdelcon needs --complex or --graph")
    return reports


def _verify_congruence(args):
    if not args.complex:
        raise ParseError("congruence needs --complex")
    _, cx = load_complex(args.complex)
    ks = args.k or [0, 1, 2]
    cases = [(q, k) for q in (_qs(args) or [2]) for k in ks]
    return _map(args, lambda c: verify_congruence(cx, field_of_order(c[0]), c[1]), cases)


def _verify_supersolvable(args):
    if not args.graph:
        raise ParseError("supersolvable needs --graph")
    reports = []
    from .charpoly import Report

    for lbl, g in load_graphs(args.graph, args.n):
        peo = mcs_peo(g)
        if peo is None:
            raise PreconditionError(f"{lbl} is not chordal")
        arr = _build_graph(args, g, args.q[0] if args.q else None)
        res = supersolvable_verify(arr, chordal_filtration(g, peo, arr))
        reports.append(
            Report(
                f"{lbl} supersolvable filtration ({args_builder(args)})",
                res.ok,
                {"product": res.product, "chi": res.charpoly, "reason": res.reason},
            )
        )
    return reports


def _report_json(rep):
    out = {"name": rep.name, "holds": rep.holds}
    for k, v in rep.values.items():
        out[k] = poly_json(v) if hasattr(v, "coeffs") else v
    return out


def cmd_verify(args) -> int:
    handler = {
        "prop43": _verify_prop43,
        "qdelcon": _verify_qdelcon,
        "congruence": _verify_congruence,
        "supersolvable": _verify_supersolvable,
    }[args.check]
    if args.monomial_r is not None:
        args.monomial_r_list = [args.monomial_r]
    else:
        args.monomial_r_list = []
    reports = handler(args)
    lines = [rep.line() for rep in reports]
    passed = sum(r.holds for r in reports)
    lines.append(f"{passed}/{len(reports)} passed")
    emit(
        args,
        {"command": "verify", "check": args.check, "results": [_report_json(r) for r in reports]},
        lines,
    )
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


DELTA53_EXPECTED = {
    2: "(t-1)(t-2)(t-4)(t-8)(t-10)",
    3: "(t-1)(t-3)(t-9)(t-25)(t-27)",
    4: "(t-1)(t-4)(t-16)(t^2-104t+2722)",
    5: "(t-1)(t-5)(t-25)(t^2-174t+7661)",
}


def cmd_reproduce(args) -> int:
    rows = []
    if args.name == "delta53":
        cx = skeleton_complex(5, 3)
        for q, expected in DELTA53_EXPECTED.items():
            chi = charpoly_mobius(A.build_qdef_complex(cx, field_of_order(q)))
            got = format_factored(chi)
            _, rest = int_root_split(chi)
            note = f"residual constant {rest.coeffs[0]} does not split" if rest.degree >= 1 else "splits"
            rows.append({"q": q, "expected": expected, "computed": got, "match": got == expected and chi == delta53_formula(q), "note": note})
    elif args.name == "skeleton":
        l = args.l or 4
        for q in _qs(args) or [2, 3, 4]:
            chi = charpoly_mobius(A.build_qdef_complex(skeleton_complex(l, l - 1), field_of_order(q)))
            formula = skeleton_charpoly_formula(l, q)
            rows.append(
                {
                    "q": q,
                    "l": l,
                    "expected": format_factored(formula),
                    "computed": format_factored(chi),
                    "match": chi == formula and chi(q ** (l - 2)) == 0,
                    "note": f"chi(q^{l - 2}) = {chi(q ** (l - 2))}",
                }
            )
    elif args.name == "exponents-b":
        l = args.l or 4
        g = complete_graph(l)
        spec = smallest_field_with_root(2)
        peo = mcs_peo(g)
        res = saito_certify(basis_monomial(g, peo, 2, spec), A.build_monomial(g, 2, spec))
        expected = tuple(range(1, 2 * l, 2))
        rows.append({"l": l, "expected": str(expected), "computed": str(res.exponents), "match": res.exponents == expected, "note": "type B reflection arrangement"})
    else:
        raise ParseError(f"unknown table {args.name}")
    lines = []
    for row in rows:
        tag = "match" if row["match"] else "MISMATCH"
        head = " ".join(f"{k}={row[k]}" for k in ("q", "l") if k in row)
        lines.append(f"{head}  expected: {row['expected']}  computed: {row['computed']}  {tag}  [{row['note']}]")
    emit(args, {"command": "reproduce", "name": args.name, "rows": rows}, lines)
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------------------


def _add_input(p, verify=False):
    p.add_argument("--graph", help="edge-list file or family (K5, P4, C4, E5, all5, petersen)")
    p.add_argument("--complex", help="complex JSON {'n':..,'facets':[..]} or deltaL,K")
    if not verify:
        p.add_argument("--arrangement", help="arrangement JSON file")
    p.add_argument("--n", type=int, help="vertex count for edge-list input")


def _add_field(p):
    p.add_argument("--q", type=int, action="append", help="field order (prime power); repeatable")
    p.add_argument("--p", type=int, help="characteristic")
    p.add_argument("--e", type=int, help="extension degree (with --p)")
    p.add_argument("--field", choices=["auto"], help="smallest field with the needed root of unity")


def _add_builder(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--graphic", action="store_true", help="graphic arrangement (default)")
    g.add_argument("--qdef", action="store_true", help="q-deformation over cliques")
    g.add_argument("--sgq", action="store_true", help="1-dimensional q-deformation S_G^q")
    g.add_argument("--monomial-r", "--r", type=int, dest="monomial_r", help="graphic monomial arrangement M(G, r)")
    p.add_argument("--simplified", action="store_true", help="drop coordinate hyperplanes (M^0)")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qdeform", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", help="characteristic polynomial")
    _add_input(p)
    _add_field(p)
    _add_builder(p)
    p.add_argument("--oracle", action="store_true", help="cross-check by subsets and point counts")
    p.add_argument("--json", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("freeness", help="explicit basis, Saito and Terao checks")
    _add_input(p)
    _add_field(p)
    _add_builder(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_freeness)

    p = sub.add_parser("verify", help="identity checks with PASS/FAIL lines")
    p.add_argument("check", choices=["prop43", "qdelcon", "congruence", "supersolvable"])
    _add_input(p, verify=True)
    p.set_defaults(arrangement=None)
    _add_field(p)
    _add_builder(p)
    p.add_argument("--k", type=int, action="append", help="evaluation exponent (congruence); repeatable")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="tables: delta53, skeleton, exponents-b")
    p.add_argument("name", choices=["delta53", "skeleton", "exponents-b"])
    p.add_argument("--l", type=int)
    _add_field(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (PreconditionError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
