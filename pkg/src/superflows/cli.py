"""Command-line surface: classification runs, verification suites, reports.

Machine output (JSON lines, TSV) goes to stdout alone; human-oriented text is
a separate format, never mixed onto the same stream.  Every sampled run is
seeded and prints its seed, so identical config plus seed reproduces the
report byte for byte.  Exit status 0 means every check in the run met its
tolerance; 1 means some check failed; argparse reports usage errors with 2.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import engine, flows, selftest, symmetry
from .matgroup import alpha_group

_DEF_TRANSLATION_TOL = {"parabolic": 1e-10, "level0": 1e-10}


def _parse_m_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    m = int(text)
    return m, m


def _make_flow(args) -> flows.ClosedFormFlow:
    if args.family in ("radical_x", "radical_y"):
        if args.k is None:
            raise SystemExit("--k is required for the radical families")
        return flows.ClosedFormFlow(args.family, args.k)
    return flows.ClosedFormFlow(args.family)


def _emit(lines, args):
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _record_lines(records, args, seed):
    if args.format == "json":
        return [
            json.dumps({**r.as_dict(), "seed": seed}, sort_keys=True)
            for r in records
        ]
    lines = [f"seed={seed}"]
    for r in records:
        lines.append(
            f"{r.flow}  {r.check}: n={r.n_samples}  max_residual={r.max_residual:.3e}"
        )
    return lines


def cmd_classify(args) -> int:
    lo, hi = _parse_m_range(args.m)
    rows = engine.classify_alpha(lo, hi)
    if args.format == "json":
        lines = [json.dumps(row.as_dict(), sort_keys=True) for row in rows]
    elif args.format == "tsv":
        lines = ["m\tgroup_order\tstatus\tdenom_degree\tfield\treduction"]
        for row in rows:
            lines.append(
                "\t".join(
                    [
                        str(row.m),
                        str(row.group_order),
                        row.status,
                        "" if row.denom_degree is None else str(row.denom_degree),
                        row.field.to_text() if row.field else "",
                        "" if row.reduction is None else str(row.reduction),
                    ]
                )
            )
    else:
        lines = []
        for row in rows:
            field = row.field.pretty() if row.field else "-"
            extra = f"  (reduces to m={row.reduction})" if row.reduction else ""
            lines.append(
                f"m={row.m:<3d} |G|={row.group_order:<3d} {row.status:<10s} "
                f"denom_deg={row.denom_degree if row.denom_degree is not None else '-':<3} "
                f"field={field}{extra}"
            )
    _emit(lines, args)
    return 0


def cmd_solve(args) -> int:
    group = alpha_group(args.m)
    verdict = engine.find_superflow(group, max_denom_degree=args.max_degree)
    if args.format == "json":
        payload = {
            "m": args.m,
            "group_order": group.order,
            "status": verdict.status,
            "denom_degree": verdict.denom_degree,
            "dimension": verdict.dimension,
            "field": verdict.field.to_text() if verdict.field else None,
        }
        _emit([json.dumps(payload, sort_keys=True)], args)
    else:
        _emit([f"{verdict.describe()}, |G| = {group.order}"], args)
    return 0


def cmd_verify_flow(args) -> int:
    flow = _make_flow(args)
    rng = random.Random(args.seed)
    triples = [
        (flow.sample_point(rng), flow.sample_time(rng), flow.sample_time(rng))
        for _ in range(args.samples)
    ]
    record = flows.verify_translation(flow, triples)
    tol = args.tol if args.tol is not None else _DEF_TRANSLATION_TOL.get(flow.family, 1e-9)
    _emit(_record_lines([record], args, args.seed), args)
    return 0 if record.max_residual <= tol else 1


def cmd_verify_pde(args) -> int:
    flow = _make_flow(args)
    field = flow.vector_field()
    rng = random.Random(args.seed)
    points = [flow.sample_point(rng) for _ in range(args.samples)]
    pde = flows.verify_pde(flow, field, points)
    worst = 0.0
    for p in [flow.sample_point(rng) for _ in range(args.samples)]:
        fd = flows.extract_vector_field(flow, p)
        exact = field.eval_field(p)
        scale = max(1.0, max(abs(v) for v in exact))
        worst = max(worst, max(abs(a - b) for a, b in zip(fd, exact)) / scale)
    extraction = flows.VerificationRecord(
        flow.label, "vector_field_extraction", args.samples, worst, None
    )
    tol = args.tol if args.tol is not None else 1e-6
    _emit(_record_lines([pde, extraction], args, args.seed), args)
    return 0 if pde.max_residual <= tol and worst <= 1e-7 else 1


def cmd_orbits(args) -> int:
    rng = random.Random(args.seed)
    cases = [
        (flows.OrbitFunction("coordinate_y"), flows.ClosedFormFlow("radical_x", 1).vector_field(), 0.5),
        (flows.OrbitFunction("coordinate_x"), flows.ClosedFormFlow("radical_y", 1).vector_field(), 0.5),
        (flows.OrbitFunction("nonalgebraic_example"), flows.nonalgebraic_field(), 0.3),
    ]
    tol = args.tol if args.tol is not None else 1e-6
    records, ok = [], True
    for orbit, field, t_end in cases:
        path = flows.integrate_trajectory(field, (1.0, 1.0), t_end, args.steps)
        drift = flows.orbit_residual(orbit, path)
        records.append(
            flows.VerificationRecord(orbit.kind, "orbit_conservation", args.steps, drift, None)
        )
        points = [(rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5)) for _ in range(args.samples)]
        ode = flows.verify_orbit_ode(orbit, field, points)
        records.append(ode)
        ok = ok and drift <= tol and ode.max_residual <= tol
    _emit(_record_lines(records, args, args.seed), args)
    return 0 if ok else 1


_FAMILY_FLOWS = {
    "gamma_4k3": lambda k: flows.ClosedFormFlow("radical_x", k),
    "gamma_4k1": lambda k: flows.ClosedFormFlow("radical_y", k),
    "delta_tilde": lambda k: flows.ClosedFormFlow("parabolic"),
    "gamma_sph": lambda k: flows.ClosedFormFlow("sph_inf"),
}

_FAMILY_MAKERS = {
    "gamma_4k3": lambda k: symmetry.gamma_4k3(k),
    "gamma_4k1": lambda k: symmetry.gamma_4k1(k),
    "delta_tilde": lambda k: symmetry.delta_tilde(),
    "gamma_sph": lambda k: symmetry.gamma_sph(),
}


def cmd_symmetry(args) -> int:
    if args.family in ("gamma_4k3", "gamma_4k1") and args.k is None:
        raise SystemExit("--k is required for the diagonal power families")
    k = args.k if args.k is not None else 0
    flow = _FAMILY_FLOWS[args.family](k)
    family = _FAMILY_MAKERS[args.family](k)
    tol = args.tol if args.tol is not None else 1e-8
    rng = random.Random(args.seed)
    samples = [(flow.sample_point(rng), flow.sample_time(rng)) for _ in range(20)]
    worst, all_passed = 0.0, True
    for _ in range(args.draws):
        member = family.matrix_numeric(family.sample_params(rng))
        ok, resid = symmetry.check_flow_symmetry(member, flow, samples, tol=tol)
        worst = max(worst, resid)
        all_passed = all_passed and ok
    report = {
        "flow": flow.label,
        "family": family.label,
        "n_draws": args.draws,
        "all_passed": all_passed,
        "worst_residual": worst,
        "seed": args.seed,
    }
    if args.format == "json":
        _emit([json.dumps(report, sort_keys=True)], args)
    else:
        _emit(
            [
                f"seed={args.seed}",
                f"{flow.label}  {family.label}: draws={args.draws} "
                f"all_passed={all_passed} worst_residual={worst:.3e}",
            ],
            args,
        )
    return 0 if all_passed else 1


def cmd_selftest(args) -> int:
    results = selftest.run_all()
    if args.format == "json":
        lines = [
            json.dumps(
                {
                    "criterion": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                    "elapsed_s": round(r.elapsed, 3),
                },
                sort_keys=True,
            )
            for r in results
        ]
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.elapsed:.2f}s)  {r.detail}"
            for r in results
        ]
        passed = sum(r.passed for r in results)
        lines.append(f"{passed}/{len(results)} criteria passed")
    _emit(lines, args)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superflows",
        description="decide, construct, and verify 2-d projective superflows",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples_default=100):
        p.add_argument("--samples", type=int, default=samples_default)
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("text", "json", "tsv"), default="text")

    p = sub.add_parser("classify", help="superflow verdicts for alpha groups over an m range")
    p.add_argument("--m", required=True, help="single m or a range lo..hi")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="superflow verdict for one alpha group")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-flow", help="translation-equation residual for one flow")
    p.add_argument("--family", choices=flows.FAMILIES, required=True)
    p.add_argument("--k", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify_flow)

    p = sub.add_parser("verify-pde", help="flow PDE residual and field extraction")
    p.add_argument("--family", choices=flows.FAMILIES, required=True)
    p.add_argument("--k", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify_pde)

    p = sub.add_parser("orbits", help="orbit-function conservation along RK4 paths")
    p.add_argument("--steps", type=int, default=1500)
    common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("symmetry", help="sampled verification of a symmetry family")
    p.add_argument("--family", choices=sorted(_FAMILY_MAKERS), required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--draws", type=int, default=20)
    common(p)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("selftest", help="run every acceptance criterion")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
