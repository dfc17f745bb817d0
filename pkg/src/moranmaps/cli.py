"""Command-line front end: `moran <check|analyze|render|map|transport> ...`.

Exit statuses: 0 on success, 1 when a hypothesis or verification check
fails, 2 on usage or config errors.  Failures carry a reason code on stderr.
"""

import argparse
import sys

from . import errors
from .address import format_address, parse_address
from .config import format_rational, parse_config
from .maps import lipschitz_bounds, validate_map
from .structure import UNCONSTRAINED, approximation, check_hypotheses, components
from .svg import render_svg
from .transport import (
    addresses_at,
    build_context,
    components_at,
    decompose_image,
    find_preserving_cylinder,
    phi,
)

VERIFICATION_ERRORS = (
    errors.BoundViolated,
    errors.BudgetExceeded,
    errors.DecompositionFails,
    errors.GammaUndefined,
    errors.IdentityViolated,
    errors.NotApplicable,
    errors.NotFoundWithinDepth,
    errors.TouchingCylinders,
    errors.WscFails,
)


def _load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise errors.ParseError(f"cannot read config {path}: {exc}") from None


def _emit(data, out_path):
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


def _fmt_eta0(eta0):
    if eta0 is UNCONSTRAINED:
        return "unconstrained (all siblings touch)"
    if eta0 is None:
        return "undefined"
    return format_rational(eta0)


def _report_lines(name, report):
    yield f"[{name}]"
    yield f"beta: {report.beta}"
    yield f"gamma: {format_rational(report.gamma) if report.gamma is not None else 'undefined (' + report.gamma_error + ')'}"
    yield f"eta0: {_fmt_eta0(report.eta0)}"
    yield f"condition (i) bounded branching: {'pass' if report.bounded_branching else 'FAIL'}"
    yield f"condition (ii) gap ratio > 1: {'pass' if report.gap_ratio_ok else 'FAIL'}"
    verdict = "pass" if report.separation_ok else "FAIL"
    if report.separation_vacuous:
        verdict += " (vacuous)"
    yield f"condition (iii) weak separation: {verdict}"


def cmd_check(cfg, args):
    reports = [("source", check_hypotheses(cfg.source_schedule, cfg.source_layout))]
    if (cfg.target_schedule, cfg.target_layout) != (cfg.source_schedule, cfg.source_layout):
        reports.append(("target", check_hypotheses(cfg.target_schedule, cfg.target_layout)))
    for name, report in reports:
        for line in _report_lines(name, report):
            print(line)
    return 0 if all(r.all_pass for _, r in reports) else 1


def _component_rows(cfg, depth):
    rows = []
    for rank in range(depth + 1):
        comps = components(
            approximation(cfg.source_schedule, cfg.source_layout, rank, cfg.node_budget)
        )
        prev = None
        for comp in comps:
            gap = "" if prev is None else format_rational(comp.span.left - prev.span.right)
            rows.append(
                (
                    str(rank),
                    format_rational(comp.span.left),
                    format_rational(comp.span.right),
                    str(comp.member_count),
                    gap,
                )
            )
            prev = comp
    return rows


def cmd_analyze(cfg, args):
    if args.emit == "csv":
        lines = ["rank,span_left,span_right,member_count,left_neighbor_gap"]
        lines += [",".join(row) for row in _component_rows(cfg, args.depth)]
        _emit(("\n".join(lines) + "\n").encode(), args.out)
    else:
        _emit(_render_scene(cfg, args.depth), args.out)
    return 0


def _render_scene(cfg, depth):
    approxes = [
        approximation(cfg.source_schedule, cfg.source_layout, k, cfg.node_budget)
        for k in range(depth + 1)
    ]
    ratios = None
    if cfg.has_map:
        ctx = build_context(cfg.build_map())
        deepest = approxes[-1]
        ratios = [
            (box, phi(ctx, sigma).phi)
            for sigma, box in zip(deepest.addresses, deepest.intervals)
        ]
    return render_svg(approxes, ratios)


def cmd_render(cfg, args):
    _emit(_render_scene(cfg, args.depth), args.out)
    return 0


def cmd_map_validate(cfg, args):
    problems = validate_map(cfg.build_map())
    if not problems:
        print("ok")
        return 0
    for code, msg in problems:
        print(f"{code}: {msg}", file=sys.stderr)
    return 1


def cmd_map_lipschitz(cfg, args):
    m = cfg.build_map()
    problems = validate_map(m)
    if problems:
        for code, msg in problems:
            print(f"{code}: {msg}", file=sys.stderr)
        return 1
    bounds = lipschitz_bounds(m, args.depth)
    print(f"lower: {format_rational(bounds.lower)}")
    print(f"upper: {format_rational(bounds.upper)}")
    print(f"depth: {bounds.depth_used}")
    return 0


def cmd_transport_constants(cfg, args):
    m = cfg.build_map()
    ctx = build_context(m, bound_depth=args.depth)
    bounds = lipschitz_bounds(m, max(args.depth, m.section_depth))
    print(f"beta: {ctx.beta}")
    print(f"gamma: {format_rational(ctx.gamma) if ctx.gamma is not None else 'undefined'}")
    print(f"eta0: {_fmt_eta0(ctx.eta0)}")
    print(f"C_lower: {format_rational(bounds.lower)}")
    print(f"C_upper: {format_rational(bounds.upper)}")
    try:
        print(f"p0: {ctx.p0}")
        print(f"epsilon: {format_rational(ctx.epsilon)}")
    except errors.NotApplicable as exc:
        print(f"p0: not applicable ({exc})")
    return 0


def cmd_transport_phi(cfg, args):
    ctx = build_context(cfg.build_map())
    lines = ["address,mu_mass,nu_image_mass,phi"]
    for k in range(args.depth + 1):
        for sigma in addresses_at(ctx.source_schedule, k):
            rec = phi(ctx, sigma)
            lines.append(
                f"{format_address(sigma)},{format_rational(rec.mu_mass)},"
                f"{format_rational(rec.nu_mass)},{format_rational(rec.phi)}"
            )
    _emit(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def cmd_transport_locus(cfg, args):
    ctx = build_context(cfg.build_map())
    sigma = parse_address(args.cylinder)
    addr, ratio = find_preserving_cylinder(
        ctx, sigma, args.max_depth, args.certify_depth
    )
    label = format_address(addr) if addr else "(root)"
    print(f"{label}  ratio {format_rational(ratio)}")
    return 0


def cmd_transport_decompose(cfg, args):
    ctx = build_context(cfg.build_map())
    p0 = ctx.p0
    status = 0
    for comp in components_at(ctx.source_schedule, ctx.source_layout, args.rank):
        dec = decompose_image(ctx, comp, p0)
        flag = "ok" if dec.within_bound else "BOUND EXCEEDED"
        print(
            f"component [{format_rational(comp.span.left)}, {format_rational(comp.span.right)}]"
            f" -> h={dec.h} parts of rank {args.rank + p0} in ancestor"
            f" [{format_rational(dec.ancestor.span.left)}, {format_rational(dec.ancestor.span.right)}]"
            f" (h <= {dec.h_bound}: {flag})"
        )
        if not dec.within_bound:
            status = 1
    return status


def build_parser():
    parser = argparse.ArgumentParser(
        prog="moran",
        description="Exact analysis of homogeneous Moran sets and section-pairing maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default="moran.toml", help="path to TOML config")

    p = sub.add_parser("check", help="verify the main-theorem hypotheses")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", help="component table or picture at a depth")
    common(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--emit", choices=("csv", "svg"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("render", help="SVG of interval rows plus ratio strip")
    common(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("map", help="section-pairing map operations")
    msub = p.add_subparsers(dest="map_command", required=True)
    mp = msub.add_parser("validate")
    common(mp)
    mp.set_defaults(func=cmd_map_validate)
    mp = msub.add_parser("lipschitz")
    common(mp)
    mp.add_argument("--depth", type=int, default=6)
    mp.set_defaults(func=cmd_map_lipschitz)

    p = sub.add_parser("transport", help="pushforward-measure analysis")
    tsub = p.add_subparsers(dest="transport_command", required=True)
    tp = tsub.add_parser("constants")
    common(tp)
    tp.add_argument("--depth", type=int, default=6)
    tp.set_defaults(func=cmd_transport_constants)
    tp = tsub.add_parser("phi")
    common(tp)
    tp.add_argument("--depth", type=int, default=4)
    tp.add_argument("--emit", choices=("csv",), default="csv")
    tp.add_argument("--out", default=None)
    tp.set_defaults(func=cmd_transport_phi)
    tp = tsub.add_parser("locus")
    common(tp)
    tp.add_argument("--cylinder", default="")
    tp.add_argument("--max-depth", type=int, default=20)
    tp.add_argument("--certify-depth", type=int, default=6)
    tp.set_defaults(func=cmd_transport_locus)
    tp = tsub.add_parser("decompose")
    common(tp)
    tp.add_argument("--rank", type=int, default=2)
    tp.set_defaults(func=cmd_transport_decompose)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        return args.func(cfg, args)
    except (errors.ParseError, errors.ValidationError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    except VERIFICATION_ERRORS as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
