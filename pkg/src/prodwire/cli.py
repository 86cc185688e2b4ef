"""Command-line front end.

Subcommands build guest/host labelings, evaluate wirelength through the
mutually checking routes, and verify pinned scenarios.  Machine formats
(csv, json) are byte-stable across identical invocations.

Exit codes: 0 success or certified; 1 verification mismatch or balance
infeasibility (a finding); 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .graphs import cartesian_product, make_cycle, make_path
from .labeling import (
    ALGO_ROTATION,
    ALGO_SOLVER,
    ALGORITHMS,
    InfeasibleBalanceError,
    format_guest,
    format_guest_machine,
    format_host_machine,
    format_host_table,
    guest_labeling,
    host_labeling_solver,
    make_host_labeling,
    verify_balance,
)
from .multipartite import MultipartiteSpec
from .oracle import PERMUTATION_CEILING, min_wirelength_exhaustive
from .product import build_cut_family, parse_product_spec, route_cut_usage
from .wirelength import (
    Embedding,
    dilation,
    evaluate_labeling,
    host_edge_congestions,
    identity_embedding,
    max_edge_congestion,
    minimum_wirelength_formula,
    wirelength_by_distance,
    wirelength_lower_bound,
)

FORMATS = ("text", "csv", "json")


def _default_format() -> str:
    fmt = os.environ.get("PRODWIRE_FORMAT", "text")
    return fmt if fmt in FORMATS else "text"


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def cmd_guest(args) -> int:
    spec = MultipartiteSpec(log_parts=args.p, log_total=args.r)
    gl = guest_labeling(spec)
    if args.format == "text":
        print(
            f"complete multipartite guest: {spec.num_parts} parts "
            f"of size {spec.part_size}"
        )
        print(format_guest(gl), end="")
    elif args.format == "csv":
        print("label,part")
        for label in range(1, spec.num_vertices + 1):
            print(f"{label},{gl.part_of(label)}")
    else:
        _emit_json(
            {
                "log_parts": args.p,
                "log_total": args.r,
                "parts": gl.parts(),
            }
        )
    return 0


def cmd_host(args) -> int:
    spec = parse_product_spec(args.spec, relax=args.relax)
    cuts = build_cut_family(spec)
    labeling, report = make_host_labeling(spec, args.p, args.algo, cuts)
    if args.format == "text":
        print(f"host {spec.token}: labeling by {args.algo}")
        print(format_host_table(labeling), end="")
        print(f"balance for 2^{args.p} classes: " + ("PASS" if report.passed else "FAIL"))
        for dim, cut_id, spread in report.offending:
            print(f"  offending cut: dim {dim}, cut {cut_id}, class spread {spread}")
    elif args.format == "csv":
        n = spec.num_dims
        print("label," + ",".join(f"x{i}" for i in range(1, n + 1)))
        for line in format_host_machine(labeling).splitlines():
            print(",".join(line.split()))
    else:
        _emit_json(
            {
                "spec": spec.token,
                "algo": args.algo,
                "labels": [
                    [label, *labeling.place(label)]
                    for label in range(1, spec.vertex_count + 1)
                ],
                "balance_passed": report.passed,
                "offending_cuts": [list(e) for e in report.offending],
            }
        )
    return 0 if report.passed else 1


def _labeling_for_eval(spec, log_classes, algo, cuts):
    if algo == ALGO_SOLVER:
        return host_labeling_solver(spec, log_classes, cuts), ALGO_SOLVER
    labeling, report = make_host_labeling(spec, log_classes, algo, cuts)
    return labeling, algo


def cmd_wirelength(args) -> int:
    spec = parse_product_spec(args.spec, relax=args.relax)
    cuts = build_cut_family(spec)
    if args.method in ("formula", "bound"):
        if args.method == "formula":
            value = minimum_wirelength_formula(spec, args.p, relax=args.relax)
        else:
            value = wirelength_lower_bound(spec, args.p, cuts, relax=args.relax)
        if args.format == "text":
            print(f"{args.method}: {value}")
        elif args.format == "csv":
            print("method,value")
            print(f"{args.method},{value}")
        else:
            _emit_json({"spec": spec.token, "method": args.method, "value": value})
        return 0
    labeling, algo = _labeling_for_eval(spec, args.p, args.algo, cuts)
    report = evaluate_labeling(
        spec, labeling, args.p, algo=algo, cuts=cuts, relax=args.relax
    )
    if args.method == "distance":
        value = report.wl_distance
    elif args.method == "congestion":
        value = report.wl_congestion
    else:
        value = None
    if value is not None:
        if args.format == "text":
            print(f"{args.method}: {value}")
        elif args.format == "csv":
            print("method,value")
            print(f"{args.method},{value}")
        else:
            _emit_json({"spec": spec.token, "method": args.method, "value": value})
        return 0
    # method == all
    if args.format == "text":
        print(report.to_text(), end="")
    elif args.format == "csv":
        print(report.to_csv(), end="")
    else:
        _emit_json(report.to_json_obj())
    return 0 if report.certified else 1


def cmd_bound(args) -> int:
    spec = parse_product_spec(args.spec, relax=args.relax)
    value = wirelength_lower_bound(spec, args.p, relax=args.relax)
    if args.format == "text":
        print(f"bound: {value}")
    elif args.format == "csv":
        print("method,value")
        print(f"bound,{value}")
    else:
        _emit_json({"spec": spec.token, "method": "bound", "value": value})
    return 0


# --------------------------------------------------------------------------
# verify: pinned scenarios and generic product verification
# --------------------------------------------------------------------------


def _verify_fig1() -> tuple[bool, list[str]]:
    """3x3 torus embedded row-major into the 9-path."""
    guest = cartesian_product([make_cycle(3), make_cycle(3)])
    host = make_path(9)
    emb = Embedding(guest=guest, host=host, assignment=tuple(range(1, 10)))
    wl = wirelength_by_distance(emb)
    dil = dilation(emb)
    mec = max_edge_congestion(emb)
    lines = [
        _check_line("wirelength", wl, 48),
        _check_line("dilation", dil, 6),
        _check_line("max edge congestion", mec, 8),
    ]
    return wl == 48 and dil == 6 and mec == 8, lines


def _verify_product_scenario(
    token: str, log_classes: int, expected_wl: int, brute_force: bool
) -> tuple[bool, list[str]]:
    spec = parse_product_spec(token)
    cuts = build_cut_family(spec)
    labeling = host_labeling_solver(spec, log_classes, cuts)
    report = evaluate_labeling(spec, labeling, log_classes, algo="auto", cuts=cuts)
    lines = [
        _check_line("wl by distance", report.wl_distance, expected_wl),
        _check_line("wl by congestion", report.wl_congestion, expected_wl),
        _check_line("wl by formula", report.wl_formula, expected_wl),
        _check_line("lower bound", report.lower_bound, expected_wl),
        _check_line("certified", report.certified, True),
    ]
    ok = report.certified and report.wl_distance == expected_wl
    if brute_force:
        emb = identity_embedding(spec, labeling, log_classes)
        best, _ = min_wirelength_exhaustive(emb.guest, emb.host)
        lines.append(_check_line("exhaustive minimum", best, expected_wl))
        ok = ok and best == expected_wl
    return ok, lines


def _check_line(name: str, got, expected) -> str:
    mark = "PASS" if got == expected else "FAIL"
    return f"{mark} {name}: {got} (expected {expected})"


SCENARIOS = {
    "fig1": lambda args: _verify_fig1(),
    "q3-k44": lambda args: _verify_product_scenario("P1,P1,P1", 1, 24, True),
    "cyl-16": lambda args: _verify_product_scenario("P1,P1,C2", 1, 128, False),
}


def _verify_generic(args) -> tuple[bool, list[str]]:
    spec = parse_product_spec(args.spec, relax=args.relax)
    if args.p is None:
        raise ValueError("generic verification needs --p")
    lines = []
    ok = True
    cuts = build_cut_family(spec)
    try:
        cuts.validate_partition()
        lines.append("PASS cut family partitions the host edges")
    except ValueError as exc:
        lines.append(f"FAIL cut family: {exc}")
        ok = False
    labeling = host_labeling_solver(spec, args.p, cuts)
    balance = verify_balance(spec, labeling, args.p, cuts)
    lines.append(
        ("PASS" if balance.passed else "FAIL") + " balance contract"
    )
    ok = ok and balance.passed
    report = evaluate_labeling(
        spec, labeling, args.p, algo="auto", cuts=cuts, relax=args.relax
    )
    values = {
        "distance": report.wl_distance,
        "congestion": report.wl_congestion,
        "formula": report.wl_formula,
        "bound": report.lower_bound,
    }
    agree = len({v for v in values.values() if v is not None}) == 1
    lines.append(
        ("PASS" if agree else "FAIL")
        + " route agreement: "
        + " ".join(f"{k}={v}" for k, v in values.items())
    )
    ok = ok and agree
    if spec.vertex_count <= 64:
        violations = _routing_contract_violations(spec, cuts)
        lines.append(
            ("PASS" if not violations else "FAIL")
            + f" routing contract ({spec.vertex_count}^2 pairs)"
        )
        ok = ok and not violations
    if spec.vertex_count <= min(args.oracle_ceiling, PERMUTATION_CEILING) or (
        args.oracle_ceiling > PERMUTATION_CEILING
        and spec.vertex_count <= args.oracle_ceiling
    ):
        emb = identity_embedding(spec, labeling, args.p)
        best, _ = min_wirelength_exhaustive(
            emb.guest, emb.host, ceiling=args.oracle_ceiling
        )
        lines.append(_check_line("exhaustive minimum", best, report.wl_distance))
        ok = ok and best == report.wl_distance
    return ok, lines


def _routing_contract_violations(spec, cuts) -> list[str]:
    from .product import coord_of_index, crossing_cuts

    out = []
    n = spec.vertex_count
    coords = [coord_of_index(spec, i) for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            usage = route_cut_usage(spec, cuts, coords[a], coords[b])
            separating = crossing_cuts(spec, coords[a], coords[b])
            if set(usage) != separating or any(c != 1 for c in usage.values()):
                out.append(f"pair {a + 1},{b + 1}")
                if len(out) > 5:
                    return out
    return out


def cmd_verify(args) -> int:
    if args.spec in SCENARIOS:
        ok, lines = SCENARIOS[args.spec](args)
    else:
        ok, lines = _verify_generic(args)
    for line in lines:
        print(line)
    print("VERIFIED" if ok else "MISMATCH")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodwire",
        description=(
            "Exact wirelength of complete multipartite guests embedded in "
            "Cartesian products of paths and cycles."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fmt_kwargs = dict(choices=FORMATS, default=_default_format())

    g = sub.add_parser("guest", help="print the guest partite labeling")
    g.add_argument("--p", type=int, required=True, help="log2 of the part count")
    g.add_argument("--r", type=int, required=True, help="log2 of the vertex count")
    g.add_argument("--format", **fmt_kwargs)
    g.set_defaults(func=cmd_guest)

    h = sub.add_parser("host", help="print a host labeling and balance report")
    h.add_argument("--spec", required=True, help="factors, e.g. P1,P1,C2")
    h.add_argument("--p", type=int, required=True, help="log2 of the class count")
    h.add_argument("--algo", choices=ALGORITHMS, default=ALGO_ROTATION)
    h.add_argument("--relax", action="store_true", help="allow/reorder small specs")
    h.add_argument("--format", **fmt_kwargs)
    h.set_defaults(func=cmd_host)

    w = sub.add_parser("wirelength", help="evaluate the minimum wirelength")
    w.add_argument("--spec", required=True)
    w.add_argument("--p", type=int, required=True)
    w.add_argument(
        "--method",
        choices=("all", "distance", "congestion", "formula", "bound"),
        default="all",
    )
    w.add_argument("--algo", choices=ALGORITHMS, default=ALGO_SOLVER)
    w.add_argument("--relax", action="store_true")
    w.add_argument("--format", **fmt_kwargs)
    w.set_defaults(func=cmd_wirelength)

    b = sub.add_parser("bound", help="print the wirelength lower bound")
    b.add_argument("--spec", required=True)
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--relax", action="store_true")
    b.add_argument("--format", **fmt_kwargs)
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser(
        "verify",
        help="run a pinned scenario (fig1, q3-k44, cyl-16) or verify a spec",
    )
    v.add_argument("--spec", required=True, help="scenario name or factor tokens")
    v.add_argument("--p", type=int, default=None)
    v.add_argument("--relax", action="store_true")
    v.add_argument("--oracle-ceiling", type=int, default=PERMUTATION_CEILING)
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleBalanceError as exc:
        print(f"finding: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
