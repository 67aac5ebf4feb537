"""Command-line surface: dimension reports, verdicts, scans, and lab utilities.

Verbs:
    dims             sampled dimension report for one architecture
    check            theorem-condition verdict with its evidence
    scan             exhaustive grid scan with disagreement flags
    veronese-secant  sampled secant dimension of a Veronese variety
    power-indep      random power-independence trials
    relations        linear relations on a composite Veronese image

Exit codes: 0 success, 2 invalid architecture, 3 sampling exhausted, 4 I/O
error.  NV_SEED overrides --seed; NV_THREADS sizes the scan worker pool.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .domains import PrimeField, RATIONALS, random_prime
from .errors import ArchitectureError, NeurovarError, SamplingExhausted
from .network import gauge_fix, validate
from .rank import (
    DEFAULT_SEED,
    DEFAULT_TRIES,
    DimReport,
    derive_seed,
    generic_rank,
    neurovariety_stats,
)
from .scan import ScanSpec, emit_report, scan
from .theory import expected_secant_dim, ah_secant_defective, theorem_verdict
from .veronese import composite_veronese, empirical_secant_dim, image_linear_relations, power_threshold_scan

DIMS_KEYS = (
    "arch",
    "degrees",
    "expdim",
    "expdim_refined",
    "dim_actual",
    "fiber_dim",
    "defective",
    "verdict",
    "trials",
    "seed",
    "domain",
    "prime",
    "pivot",
)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(v) for v in text.split(",")]


def _add_sampling_args(sub):
    sub.add_argument("--tries", type=int, default=DEFAULT_TRIES)
    sub.add_argument("--seed", type=int, default=None, help="sampling seed (NV_SEED overrides)")
    sub.add_argument("--field", choices=("prime", "rational"), default="prime")
    sub.add_argument("--prime", default="auto", help="'auto' or an explicit prime modulus")


def _add_output_args(sub):
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--out", default=None, help="write output to this path")


def _resolve_seed(args) -> int:
    env = os.environ.get("NV_SEED")
    if env is not None:
        return int(env)
    if args.seed is not None:
        return args.seed
    return DEFAULT_SEED


def _resolve_domain(args, seed: int):
    if args.field == "rational":
        return RATIONALS
    if args.prime == "auto":
        return PrimeField(random_prime(derive_seed(seed, "prime")))
    return PrimeField(int(args.prime))


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        raise SystemExit(4)


def _dims_record(report: DimReport, verdict_label: str) -> dict:
    pivots = report.pivots
    return {
        "arch": list(report.arch.widths),
        "degrees": list(report.arch.degrees),
        "expdim": report.expdim_general,
        "expdim_refined": report.expdim_refined,
        "dim_actual": report.dim_actual,
        "fiber_dim": report.fiber_dim,
        "defective": report.defective,
        "verdict": verdict_label,
        "trials": report.trials,
        "seed": report.seed,
        "domain": report.domain_kind,
        "prime": str(report.prime) if report.prime is not None else None,
        "pivot": pivots[0] if len(pivots) == 1 else list(pivots),
    }


def cmd_dims(args) -> int:
    seed = _resolve_seed(args)
    arch = validate(_int_list(args.widths), _int_list(args.degrees or ""))
    domain = _resolve_domain(args, seed)
    report = neurovariety_stats(arch, tries=args.tries, seed=seed, domain=domain)
    verdict_label = theorem_verdict(arch).label() if arch.depth >= 2 else "NotApplicable"

    if args.confirm_rational and args.field == "prime":
        confirm_seed = derive_seed(seed, "confirm-rational")
        rational_rank, _ = generic_rank(
            gauge_fix(arch), tries=3, seed=confirm_seed, domain=RATIONALS
        )
        if rational_rank != report.dim_actual:
            print(
                f"warning: rational re-check rank {rational_rank} != "
                f"prime-field rank {report.dim_actual}",
                file=sys.stderr,
            )
            return 1

    record = _dims_record(report, verdict_label)
    if args.json:
        _write_out(json.dumps(record, indent=2) + "\n", args.out)
    else:
        lines = [
            f"architecture      {arch.label()}",
            f"expdim            {report.expdim_general}",
            f"expdim_refined    {report.expdim_refined if report.expdim_refined is not None else '-'}",
            f"dim_actual        {report.dim_actual}",
            f"fiber_dim         {report.fiber_dim}",
            f"defective         {str(report.defective).lower()}",
            f"verdict           {verdict_label}",
            f"trials/seed       {report.trials}/{report.seed}",
            f"domain            {report.domain_kind}"
            + (f" (p={report.prime})" if report.prime is not None else ""),
            f"pivot             {record['pivot']}",
            f"witness           {report.witness}",
        ]
        _write_out("\n".join(lines) + "\n", args.out)
    return 0


def cmd_check(args) -> int:
    arch = validate(_int_list(args.widths), _int_list(args.degrees or ""))
    if arch.depth < 2:
        print("error: theorem conditions need at least one hidden layer", file=sys.stderr)
        return 2
    verdict = theorem_verdict(arch)
    record = {
        "arch": list(arch.widths),
        "degrees": list(arch.degrees),
        "verdict": verdict.label(),
        "room": [
            {"layer": lv.layer, "lhs": lv.lhs, "rhs": lv.rhs, "holds": lv.holds}
            for lv in verdict.room.levels
        ],
        "last_veronese": {
            "nvars": verdict.ah_query[0],
            "deg": verdict.ah_query[1],
            "secant_order": verdict.ah_query[2],
            "defective": verdict.ah_defective,
        },
        "condition3": (
            {
                "single_output_expdim": verdict.condition3.single_output_expdim,
                "parameter_count": verdict.condition3.parameter_count,
                "holds": verdict.condition3.holds,
            }
            if verdict.condition3 is not None
            else None
        ),
    }
    if args.json:
        _write_out(json.dumps(record, indent=2) + "\n", args.out)
    else:
        lines = [f"architecture      {arch.label()}", f"verdict           {verdict.label()}"]
        for lv in verdict.room.levels:
            cmp = "<" if lv.holds else ">="
            lines.append(f"room level {lv.layer}      {lv.lhs} {cmp} {lv.rhs}")
        q = verdict.ah_query
        lines.append(
            f"last Veronese     V^{q[0]-1}_{q[1]} secant order {q[2]}: "
            + ("defective" if verdict.ah_defective else "not defective")
        )
        if verdict.condition3 is not None:
            c3 = verdict.condition3
            lines.append(
                f"condition (iii)   single-output expdim {c3.single_output_expdim} "
                f"vs parameters {c3.parameter_count}: {'holds' if c3.holds else 'fails'}"
            )
        _write_out("\n".join(lines) + "\n", args.out)
    return 0


def cmd_scan(args) -> int:
    seed = _resolve_seed(args)
    spec = ScanSpec(
        depths=tuple(_int_list(args.depths)),
        min_width=args.min_width,
        max_width=args.max_width,
        max_out_width=args.max_out,
        min_degree=args.min_degree,
        max_degree=args.max_degree,
        tries=args.tries,
        seed=seed,
        field=args.field,
        prime=None if args.prime == "auto" else int(args.prime),
        max_free=args.max_free,
        max_ambient=args.max_ambient,
    )
    rows = scan(spec)
    fmt = "csv" if args.csv else "json"
    text = emit_report(rows, fmt=fmt, path=args.out)
    if args.out is None:
        sys.stdout.write(text)
    disagreements = [r for r in rows if not r.agreement]
    errors = [r for r in rows if r.error]
    print(
        f"scanned {len(rows)} architectures: "
        f"{len(disagreements)} disagreements, {len(errors)} errors",
        file=sys.stderr,
    )
    for r in disagreements:
        print(f"  disagreement: {r.arch.label()}", file=sys.stderr)
    if errors:
        return 3
    return 0


def cmd_veronese_secant(args) -> int:
    seed = _resolve_seed(args)
    domain = _resolve_domain(args, seed)
    dim = empirical_secant_dim(
        args.nvars, args.deg, args.secant, tries=args.tries, seed=seed, domain=domain
    )
    expected = expected_secant_dim(args.nvars, args.deg, args.secant)
    record = {
        "nvars": args.nvars,
        "deg": args.deg,
        "secant_order": args.secant,
        "expected_dim": expected,
        "dim": dim,
        "defective": dim < expected,
        "table_defective": ah_secant_defective(args.nvars, args.deg, args.secant),
        "trials": args.tries,
        "seed": seed,
        "domain": domain.kind,
        "prime": str(domain.p) if isinstance(domain, PrimeField) else None,
    }
    if args.json:
        _write_out(json.dumps(record, indent=2) + "\n", args.out)
    else:
        _write_out(
            f"Sec_{args.secant}(V^{args.nvars - 1}_{args.deg}): dim {dim} "
            f"(expected {expected}) -> "
            + ("defective" if record["defective"] else "not defective")
            + "\n",
            args.out,
        )
    return 0


def cmd_power_indep(args) -> int:
    seed = _resolve_seed(args)
    report = power_threshold_scan(
        args.vars,
        args.count,
        args.form_degree,
        args.trials,
        seed=seed,
        power=args.power,
        find_min_power=args.find_min,
    )
    record = {
        "vars": report.nvars,
        "count": report.count,
        "form_degree": report.form_degree,
        "power": report.power,
        "trials": report.trials,
        "independent": report.independent,
        "all_independent": report.all_independent,
        "min_powers": list(report.min_powers) if report.min_powers is not None else None,
        "seed": seed,
    }
    if args.json:
        _write_out(json.dumps(record, indent=2) + "\n", args.out)
    else:
        _write_out(
            f"{report.independent}/{report.trials} instances independent at power "
            f"r={report.power}\n",
            args.out,
        )
    return 0


def cmd_relations(args) -> int:
    seed = _resolve_seed(args)
    cv = composite_veronese(args.nvars, _int_list(args.degrees))
    basis = image_linear_relations(cv, oversample=args.oversample, seed=seed)
    record = {
        "nvars": args.nvars,
        "degrees": _int_list(args.degrees),
        "ambient": cv.ambient,
        "kernel_dim": len(basis),
        "relations": [str(b) for b in basis],
        "seed": seed,
    }
    if args.json:
        _write_out(json.dumps(record, indent=2) + "\n", args.out)
    else:
        lines = [f"ambient coordinates: {cv.ambient}", f"kernel dimension: {len(basis)}"]
        lines += [f"  {b}" for b in basis]
        _write_out("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neurovar",
        description="Exact dimension computations for polynomial neural network varieties",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    dims = subs.add_parser("dims", help="sampled dimension report for one architecture")
    dims.add_argument("-n", "--widths", required=True, help="comma-separated widths n0,n1,...")
    dims.add_argument("-d", "--degrees", default="", help="comma-separated degrees d1,...")
    _add_sampling_args(dims)
    dims.add_argument(
        "--confirm-rational",
        action="store_true",
        help="re-verify the sampled rank over the rationals",
    )
    _add_output_args(dims)
    dims.set_defaults(func=cmd_dims)

    check = subs.add_parser("check", help="theorem-condition verdict with evidence")
    check.add_argument("-n", "--widths", required=True)
    check.add_argument("-d", "--degrees", default="")
    _add_output_args(check)
    check.set_defaults(func=cmd_check)

    sc = subs.add_parser("scan", help="exhaustive scan over bounded architectures")
    sc.add_argument("--depths", default="2,3", help="comma-separated depths L")
    sc.add_argument("--min-width", type=int, default=1)
    sc.add_argument("--max-width", type=int, default=4)
    sc.add_argument("--max-out", type=int, default=2, help="output width bound")
    sc.add_argument("--min-degree", type=int, default=2)
    sc.add_argument("--max-degree", type=int, default=4)
    sc.add_argument("--max-free", type=int, default=64, help="free-weight pre-filter")
    sc.add_argument("--max-ambient", type=int, default=20_000, help="ambient pre-filter")
    _add_sampling_args(sc)
    sc.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    sc.add_argument("--out", default=None)
    sc.set_defaults(func=cmd_scan)

    vs = subs.add_parser("veronese-secant", help="sampled secant dimension of a Veronese")
    vs.add_argument("-n", "--nvars", type=int, required=True, help="variable count")
    vs.add_argument("-d", "--deg", type=int, required=True, help="Veronese degree")
    vs.add_argument("-s", "--secant", type=int, required=True, help="secant order")
    _add_sampling_args(vs)
    _add_output_args(vs)
    vs.set_defaults(func=cmd_veronese_secant)

    pi = subs.add_parser("power-indep", help="power independence of random forms")
    pi.add_argument("--vars", type=int, required=True, help="number of variables")
    pi.add_argument("--count", type=int, required=True, help="number of forms k")
    pi.add_argument("--form-degree", type=int, required=True, help="common degree s")
    pi.add_argument("--trials", type=int, default=50)
    pi.add_argument("--power", type=int, default=None, help="power r (default k-1)")
    pi.add_argument("--find-min", action="store_true", help="record minimal independent power")
    pi.add_argument("--seed", type=int, default=None)
    _add_output_args(pi)
    pi.set_defaults(func=cmd_power_indep)

    rel = subs.add_parser("relations", help="linear relations on a composite Veronese image")
    rel.add_argument("-n", "--nvars", type=int, required=True, help="source variable count")
    rel.add_argument("-d", "--degrees", required=True, help="comma-separated stage degrees")
    rel.add_argument("--oversample", type=int, default=None)
    rel.add_argument("--seed", type=int, default=None)
    _add_output_args(rel)
    rel.set_defaults(func=cmd_relations)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ArchitectureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SamplingExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except NeurovarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
