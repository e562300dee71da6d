"""Command-line interface: ``equigeodesic <command> [space] [options]``.

Commands
--------
spaces      list the supported families, or describe one space
check       structural validation of a space (exit 1 on failure)
gen-system  emit the bilinear equigeodesic system
verify      verify cataloged solution families (exit 1 if any fails)
solve       random-restart numeric search plus a catalog match report

Exit codes are 0 on success, 1 when a check or verification fails and 2 for
usage or input errors.  Relative ``--output`` paths are resolved against
``$EQUIGEODESIC_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import catalog, engine, homspace, solver
from .errors import EquigeodesicError, FamilyNotFoundError

OUTPUT_ENV = "EQUIGEODESIC_OUTPUT_DIR"
_SINGLE_PARAM = {"stiefel-v2", "sphere-u", "sphere-sp"}


class UsageError(Exception):
    pass


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _params(text):
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# helpers


def _resolve_space(args, required=True):
    if getattr(args, "space_file", None):
        if args.space:
            raise UsageError("give either a space name or --space-file")
        config = homspace.load_space_file(args.space_file)
        return config, None
    if not args.space:
        if required:
            raise UsageError("a space name (or --space-file) is required")
        return None, None
    if args.space not in homspace.FAMILIES:
        raise UsageError(f"unknown space {args.space!r}; run 'spaces' for the list")
    if args.params is not None and args.n is not None:
        raise UsageError("give either --params or --n")
    params = args.params if args.params is not None else ((args.n,) if args.n is not None else ())
    if args.n is not None and args.space not in _SINGLE_PARAM:
        raise UsageError(f"--n applies to {', '.join(sorted(_SINGLE_PARAM))}")
    return homspace.build_space(args.space, params), None


def _partition(args, config):
    if args.partition and args.metric not in (None, "generic"):
        raise UsageError("give either --partition or --metric")
    if args.partition:
        return homspace.MetricClassPartition.parse(args.partition, config).canonical(config)
    if args.metric in (None, "generic"):
        return homspace.MetricClassPartition.singleton(config)
    return homspace.named_partition(config, args.metric)


def _output_path(path):
    p = Path(path)
    if not p.is_absolute() and os.environ.get(OUTPUT_ENV):
        p = Path(os.environ[OUTPUT_ENV]) / p
    return p


def _csv(rows, header):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(args, payload, human, rows, header):
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        text = _csv(rows, header)
    else:
        text = human.rstrip("\n") + "\n"
    if args.output:
        path = _output_path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_spaces(args):
    family = args.family or args.space
    if family is None:
        entries = [{"family": f, "params": homspace.family_help(f)} for f in homspace.FAMILIES]
        human = "\n".join(f"{e['family']:<12} {e['params']}" for e in entries)
        cat = catalog.catalog_spaces()
        human += "\n\ncataloged solution families:\n" + "\n".join(f"  {label:<28} metric={m}" for _, label, m in cat)
        payload = {"families": entries, "catalog": [{"space": s, "metric": m} for _, s, m in cat]}
        _emit(args, payload, human, [(e["family"], e["params"]) for e in entries], ("family", "params"))
        return 0
    if family not in homspace.FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    args.space = family
    needs_params = family not in ("wallach-u3", "wallach-sp3")
    if needs_params and args.params is None and args.n is None:
        payload = {"family": family, "params": homspace.family_help(family)}
        _emit(args, payload, f"{family}: {payload['params']}", [(family, payload["params"])], ("family", "params"))
        return 0
    config, _ = _resolve_space(args)
    info = config.describe()
    info["module_dims"] = list(config.module_dims())
    presets = homspace.metric_presets(config)
    info["metrics"] = [
        {"name": p.name, "lambdas": list(p.lambdas), "partition": str(p.partition)} for p in presets
    ]
    lines = [f"{config.name}: dim g = {info['dim_g']}, dim h = {info['dim_h']}, dim m = {config.dim_m}"]
    lines.append("module dims: (" + ", ".join(str(d) for d in config.module_dims()) + ")")
    for mod in info["modules"]:
        lines.append(f"  {mod['label']:<6} dim {mod['dim']:<3} {' '.join(mod['basis'])}")
    lines.append("variables: " + " ".join(config.variables))
    for p in presets:
        lines.append(f"metric {p.name}: {tuple(round(x, 12) for x in p.lambdas)} classes {p.partition}")
    rows = [(m["label"], m["dim"], " ".join(m["basis"])) for m in info["modules"]]
    _emit(args, info, "\n".join(lines), rows, ("module", "dim", "basis"))
    return 0


def cmd_check(args):
    config, _ = _resolve_space(args)
    residuals = config.invariant_residuals()
    checks = [{"check": k, "residual": v, "passed": v <= 1e-12} for k, v in sorted(residuals.items())]
    reports = []
    if config.family.startswith("wallach") or len(config.modules) == 3:
        reports.append(homspace.validate_wallach(config))
    ok = all(c["passed"] for c in checks) and all(r.passed for r in reports)
    payload = {
        "space": config.name,
        "passed": ok,
        "invariants": checks,
        "reports": [r.to_dict() for r in reports],
    }
    lines = [f"{config.name}: {'PASS' if ok else 'FAIL'}"]
    lines += [f"  {'ok  ' if c['passed'] else 'FAIL'} {c['check']:<14} residual {c['residual']:.2e}" for c in checks]
    for r in reports:
        lines.append(("  " + r.summary()).replace("\n", "\n  "))
    rows = [(c["check"], c["residual"], c["passed"]) for c in checks]
    for r in reports:
        rows += [(f"{r.name}:{c.lhs}", c.computed, c.match) for c in r.checks]
    _emit(args, payload, "\n".join(lines), rows, ("check", "value", "passed"))
    return 0 if ok else 1


def cmd_gen_system(args):
    config, _ = _resolve_space(args)
    part = _partition(args, config)
    system = engine.generate_system(config, part)
    lines = [f"{config.name}, classes {part}: {len(system)} equations"]
    lines += [f"  {t}" for t in system.render()]
    if system.dropped_pairs:
        lines.append("identically zero cross pairs: " + ", ".join(f"({a}, {b})" for a, b in system.dropped_pairs))
    rows = [
        (i + 1, "|".join(eq.source_pair), system.variables[eq.target], eq.render(system.variables))
        for i, eq in enumerate(system.equations)
    ]
    _emit(args, system.to_dict(), "\n".join(lines), rows, ("index", "source_pair", "target", "equation"))
    return 0


def cmd_verify(args):
    config, _ = _resolve_space(args)
    metric = args.metric or "generic"
    families = catalog.list_families(config, metric)
    if args.family:
        families = [catalog.find_family(families, args.family)]
    reports = [catalog.verify_family(config, f, args.samples, args.tol, args.seed) for f in families]
    ok = all(r.passed for r in reports)
    passed = sum(r.passed for r in reports)
    payload = {
        "space": config.name,
        "metric": metric,
        "seed": args.seed,
        "passed": ok,
        "families": [r.to_dict() for r in reports],
    }
    lines = [r.summary() for r in reports]
    lines.append(f"{passed}/{len(reports)} families pass ({config.name}, metric {metric}, seed {args.seed})")
    rows = [
        (r.family_id, r.passed, r.claim, r.samples, r.max_cross_residual, r.max_metric_residual) for r in reports
    ]
    _emit(args, payload, "\n".join(lines), rows, ("family", "passed", "claim", "samples", "cross", "metric"))
    return 0 if ok else 1


def cmd_solve(args):
    config, _ = _resolve_space(args)
    part = _partition(args, config)
    result = solver.solve_space(
        config, part, restarts=args.restarts, tol=args.tol, seed=args.seed, threshold=args.threshold
    )
    metric = args.metric or ("generic" if part.is_singleton() else None)
    report = None
    if metric is not None:
        try:
            report = solver.exhaustiveness_report(config, result, catalog.list_families(config, metric))
        except FamilyNotFoundError:
            report = None
    payload = result.to_dict()
    if report is not None:
        payload["catalog_match"] = {**report, "matched": {str(k): v for k, v in report["matched"].items()}}
    supports = sorted({tuple(sorted(s.support)) for s in result.solutions})
    lines = [
        f"{config.name}, classes {part}: {result.converged_count}/{result.restarts_used} restarts converged "
        f"(seed {args.seed}), {len(result.solutions)} distinct up to sign"
    ]
    lines.append("support patterns: " + ("; ".join("{" + ", ".join(s) + "}" for s in supports) or "none"))
    lines.append(f"multi-module solutions: {len(result.multi_module())}")
    if report is not None:
        lines.append(
            f"catalog match: {len(report['matched'])} matched, {len(report['unmatched'])} unmatched"
        )
    rows = [
        (i, s.residual, "|".join(sorted(s.support)), " ".join(f"{v:.12g}" for v in s.values))
        for i, s in enumerate(result.solutions)
    ]
    _emit(args, payload, "\n".join(lines), rows, ("index", "residual", "support", "coordinates"))
    return 0


COMMANDS = {
    "spaces": cmd_spaces,
    "check": cmd_check,
    "gen-system": cmd_gen_system,
    "verify": cmd_verify,
    "solve": cmd_solve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equigeodesic", description="Equigeodesic vectors on homogeneous spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, space_required=True):
        p.add_argument("space", nargs="?", help="space family, see 'spaces'")
        p.add_argument("--params", type=_params, help="comma-separated family parameters, e.g. 1,3,2")
        p.add_argument("--n", type=_positive_int, help="the single parameter of stiefel-v2 and the spheres")
        p.add_argument("--space-file", help="JSON file with 'family' and 'params'")
        p.add_argument("--format", choices=("human", "json", "csv"), default="human")
        p.add_argument("--output", help=f"write here instead of stdout (relative to ${OUTPUT_ENV} if set)")

    p = sub.add_parser("spaces", help="list families or describe one space")
    common(p)
    p.add_argument("--family", help="family to describe")

    p = sub.add_parser("check", help="validate a space")
    common(p)

    p = sub.add_parser("gen-system", help="emit the bilinear system")
    common(p)
    p.add_argument("--partition", help="metric classes, e.g. 'so(3),m12|m13,m23'")
    p.add_argument("--metric", choices=("generic", "einstein", "jensen"))

    p = sub.add_parser("verify", help="verify cataloged families")
    common(p)
    p.add_argument("--metric", choices=("generic", "einstein", "jensen"))
    p.add_argument("--family", help="family id or index")
    p.add_argument("--samples", type=_positive_int, default=100)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    p.add_argument("--seed", type=_nonnegative_int, default=0)

    p = sub.add_parser("solve", help="numeric search for equigeodesic vectors")
    common(p)
    p.add_argument("--partition", help="metric classes, e.g. 'm0|m1,m2'")
    p.add_argument("--metric", choices=("generic", "einstein", "jensen"))
    p.add_argument("--restarts", type=_positive_int, default=1000)
    p.add_argument("--tol", type=_positive_float, default=1e-12)
    p.add_argument("--threshold", type=_positive_float, default=1e-6)
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, EquigeodesicError) as exc:
        print(f"equigeodesic {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"equigeodesic {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
