"""Batch entry point: load a config, run a verification suite, emit a report.

Subcommands: verify, bianchi, gradcheck, action, reduce.  Config paths may
use the form builtin:NAME to address a packaged instance.  Exit status is
nonzero iff a check failed (2 for config errors).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import forms_io, groups, report
from .algebra import StructureError
from .config import ConfigError, LoadedConfig, load_config
from .crossed import induced_crossed_module
from .forms import integrate_box_quadrature
from .gauge import (
    bianchi_residuals,
    field_eq_residuals,
    flat_bianchi_residuals,
    random_connection,
)
from .invariants import ProjectionError, invariance_residual
from .reductions import reduced_residuals, reduction_applicable
from .variational import (
    bump,
    bulk_pairing,
    central_difference_exact,
    convergence_order,
    first_variation_exact,
    gradcheck_report,
    random_variation,
)

SWEEP_STEPS = (Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000))


def _stamp(entry: dict, t0: float, enabled: bool) -> dict:
    """Attach wall-clock timing when requested (breaks byte-reproducibility)."""
    if enabled:
        entry["timing_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    return entry


def _triple_or_none(cfg: LoadedConfig):
    try:
        return cfg.invariant_triple(), None
    except ProjectionError as exc:
        return None, str(exc)


def cmd_verify(cfg: LoadedConfig, args) -> dict:
    checks: list[dict] = []
    M = cfg.data.module
    if M is not None:
        rep = M.axiom_report(cfg.data.axioms_disabled)
        for name, res in rep.results.items():
            if res.skipped:
                checks.append(report.check_entry(f"axiom/{name}", status="skipped", reason=res.reason))
            else:
                checks.append(report.residual_check(f"axiom/{name}", res.residual))
        T, why = _triple_or_none(cfg)
        if T is None:
            checks.append(
                report.check_entry("invariance/triple", status="fail", reason=why)
            )
        else:
            inv = invariance_residual(T, M)
            for name, res in inv.results.items():
                if res.skipped:
                    checks.append(
                        report.check_entry(f"invariance/{name}", status="skipped", reason=res.reason)
                    )
                else:
                    checks.append(report.residual_check(f"invariance/{name}", res.residual))
        if rep.all_passed():
            induced = induced_crossed_module(M, cfg.data.axioms_disabled)
            for name, res in induced.axiom_report().results.items():
                checks.append(report.residual_check(f"induced/{name}", res.residual))
        else:
            checks.append(
                report.check_entry(
                    "induced/crossed-module", status="skipped", reason="axiom check failed"
                )
            )
    else:
        checks.append(
            report.check_entry(
                "axiom/differential", status="skipped", reason="no [algebras] section"
            )
        )
    if cfg.data.finite is not None:
        for name, (bad, total) in groups.exhaustive_checks(cfg.data.finite).items():
            checks.append(
                report.check_entry(
                    f"finite/{name}",
                    Fraction(bad),
                    "pass" if bad == 0 else "fail",
                    extra={"cases": total},
                )
            )
    else:
        checks.append(
            report.check_entry("finite/tables", status="skipped", reason="no [finite] section")
        )
    return report.make_report("verify", cfg.source, {}, checks)


def _require_module(cfg: LoadedConfig):
    if cfg.data.module is None:
        raise ConfigError("algebras", "this command needs a differential instance")
    return cfg.data.module


def _gauge_dim(cfg: LoadedConfig, args) -> int:
    dim = args.dim if args.dim is not None else cfg.dim
    if dim < 4:
        raise ConfigError("ambient.dim", "gauge commands need dim >= 4")
    if dim > 6:
        raise ConfigError("ambient.dim", "dim > 6 is not supported")
    return dim


def _resolve_run_params(cfg: LoadedConfig, args):
    """Flags beat the config's [defaults]; both beat the global defaults."""
    if args.seeds is None:
        args.seeds = cfg.default_seeds
    if args.degree_cap is None:
        args.degree_cap = cfg.default_degree_cap
    if args.seeds < 1:
        raise ConfigError("seeds", "must be >= 1")


def cmd_bianchi(cfg: LoadedConfig, args) -> dict:
    M = _require_module(cfg)
    dim = _gauge_dim(cfg, args)
    _resolve_run_params(cfg, args)
    checks: list[dict] = []
    flat_ok = M.has_trivial_alpha() and M.has_trivial_beta()
    if cfg.a_wedge_a == "matrix-rep":
        # the declared representation must reproduce the half-bracket square
        from .gauge import a_wedge_a

        worst = Fraction(0)
        for seed in range(1, min(args.seeds, 5) + 1):
            a = random_connection(M, dim, seed, args.degree_cap).a
            diff = a_wedge_a(M, a, "matrix-rep", cfg.data.rep_g) - a_wedge_a(M, a)
            worst = max(worst, diff.max_abs_coeff())
        checks.append(report.residual_check("gauge/a-wedge-a-routes-agree", worst))
    for seed in range(1, args.seeds + 1):
        t0 = time.perf_counter()
        conn = random_connection(M, dim, seed, args.degree_cap)
        r1, r2, r3 = bianchi_residuals(M, conn)
        worst = max(r1.max_abs_coeff(), r2.max_abs_coeff(), r3.max_abs_coeff())
        checks.append(
            _stamp(report.residual_check(f"bianchi/seed-{seed}", worst), t0, args.timings)
        )
        if flat_ok:
            t0 = time.perf_counter()
            f1, f2, f3 = flat_bianchi_residuals(M, conn)
            worst = max(f1.max_abs_coeff(), f2.max_abs_coeff(), f3.max_abs_coeff())
            checks.append(
                _stamp(
                    report.residual_check(f"bianchi-flat/seed-{seed}", worst),
                    t0,
                    args.timings,
                )
            )
    if not flat_ok:
        checks.append(
            report.check_entry(
                "bianchi-flat",
                status="skipped",
                reason="alpha or beta is nontrivial",
            )
        )
    params = {"seeds": args.seeds, "degree_cap": args.degree_cap, "dim": dim}
    return report.make_report("bianchi", cfg.source, params, checks)


def cmd_gradcheck(cfg: LoadedConfig, args) -> tuple[dict, list[tuple[float, float]]]:
    M = _require_module(cfg)
    dim = _gauge_dim(cfg, args)
    _resolve_run_params(cfg, args)
    T, why = _triple_or_none(cfg)
    if T is None:
        raise ConfigError("invariants", f"no invariant triple: {why}")
    checks: list[dict] = []
    sweep_rows: list[tuple[float, float]] = []
    for seed in range(1, args.seeds + 1):
        t0 = time.perf_counter()
        conn = random_connection(M, dim, seed, args.degree_cap)
        v = bump(random_variation(M, dim, 10_000 + seed))
        extra: dict = {}
        if seed == 1:
            # full report with the per-channel breakdown on the first seed
            gr = gradcheck_report(M, conn, v, T)
            exact, bulk = gr.exact_linear_coefficient, gr.bulk_pairing_value
            extra["channels"] = {
                name: [str(e), str(b)] for name, (e, b) in sorted(gr.per_channel.items())
            }
        else:
            exact = first_variation_exact(M, conn, v, T)
            bulk = bulk_pairing(M, conn, v, T)
        extra.update({"linear_term": str(exact), "bulk_pairing": str(bulk)})
        checks.append(
            _stamp(
                report.residual_check(f"gradcheck/seed-{seed}", abs(exact - bulk), extra=extra),
                t0,
                args.timings,
            )
        )
        if args.float_sweep and not sweep_rows:
            probe = central_difference_exact(M, conn, v, T, SWEEP_STEPS[0])
            if probe != bulk:
                for step in SWEEP_STEPS:
                    quotient = central_difference_exact(M, conn, v, T, step)
                    sweep_rows.append((float(step), float(abs(quotient - bulk))))
                order = convergence_order(sweep_rows)
                ok = order is not None and abs(order - 2.0) <= 0.2
                checks.append(
                    report.check_entry(
                        "gradcheck/sweep-order",
                        status="pass" if ok else "fail",
                        extra={"order": order, "seed": seed, "sweep": sweep_rows},
                    )
                )
    if args.float_sweep and not sweep_rows:
        checks.append(
            report.check_entry(
                "gradcheck/sweep-order",
                status="skipped",
                reason="central differences are exact for every sampled seed (no cubic term)",
            )
        )
    params = {
        "seeds": args.seeds,
        "degree_cap": args.degree_cap,
        "dim": dim,
        "float_sweep": bool(args.float_sweep),
    }
    return report.make_report("gradcheck", cfg.source, params, checks), sweep_rows


def cmd_action(cfg: LoadedConfig, args) -> dict:
    M = _require_module(cfg)
    dim = _gauge_dim(cfg, args)
    _resolve_run_params(cfg, args)
    T, why = _triple_or_none(cfg)
    if T is None:
        raise ConfigError("invariants", f"no invariant triple: {why}")
    from .gauge import fake_flat_witness, is_fake_flat
    from .variational import action, action_integrand

    checks: list[dict] = []

    def eval_one(tag: str, conn):
        t0 = time.perf_counter()
        value = action(M, conn, T)
        quad = integrate_box_quadrature(action_integrand(M, conn, T))
        exact_f = float(value)
        rel = abs(quad - exact_f) / max(abs(exact_f), 1e-30)
        ok = value >= 0 and rel <= 1e-10
        checks.append(
            _stamp(
                report.check_entry(
                    tag,
                    status="pass" if ok else "fail",
                    extra={
                        "value": str(value),
                        "value_float": exact_f,
                        "quadrature": quad,
                        "quadrature_rel_err": rel,
                    },
                ),
                t0,
                args.timings,
            )
        )

    if args.connection:
        eval_one("action/file", forms_io.load_connection(M, args.connection))
    elif args.witness_out:
        conn = fake_flat_witness(
            M,
            dim,
            1,
            alpha_right_inverse=cfg.data.alpha_right_inverse,
            beta_right_inverse=cfg.data.beta_right_inverse,
            degree_cap=args.degree_cap,
        )
        forms_io.save_connection(conn, args.witness_out)
        flags = is_fake_flat(M, conn)
        checks.append(
            report.check_entry(
                "action/witness-fake-flat",
                status="pass" if flags == (True, True) else "fail",
                extra={"flags": list(flags), "path": args.witness_out},
            )
        )
        eval_one("action/witness", conn)
    else:
        for seed in range(1, args.seeds + 1):
            eval_one(f"action/seed-{seed}", random_connection(M, dim, seed, args.degree_cap))
    params = {"seeds": args.seeds, "degree_cap": args.degree_cap, "dim": dim}
    return report.make_report("action", cfg.source, params, checks)


def cmd_reduce(cfg: LoadedConfig, args) -> dict:
    M = _require_module(cfg)
    dim = _gauge_dim(cfg, args)
    _resolve_run_params(cfg, args)
    target = cfg.data.reduction
    if target is None:
        raise ConfigError("reduction.target", "config declares no reduction target")
    reason = reduction_applicable(M, target)
    if reason:
        raise ConfigError("reduction.target", reason)
    T, why = _triple_or_none(cfg)
    if T is None:
        raise ConfigError("invariants", f"no invariant triple: {why}")
    channels = {"a": 0, "b": 1, "c": 2}
    checks: list[dict] = []
    for seed in range(1, args.seeds + 1):
        t0 = time.perf_counter()
        conn = random_connection(M, dim, seed, args.degree_cap)
        general = field_eq_residuals(M, conn, T)
        direct = reduced_residuals(M, T, target, conn)
        worst = Fraction(0)
        for channel, form in direct.items():
            diff = general[channels[channel]] - form
            worst = max(worst, diff.max_abs_coeff())
        checks.append(
            _stamp(
                report.residual_check(
                    f"reduce/{target}/seed-{seed}", worst, extra={"channels": sorted(direct)}
                ),
                t0,
                args.timings,
            )
        )
    params = {"seeds": args.seeds, "degree_cap": args.degree_cap, "dim": dim, "target": target}
    return report.make_report("reduce", cfg.source, params, checks)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higherym",
        description="verification suites for 3-connection gauge structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gauge_flags=True):
        p.add_argument("config", help="config path or builtin:NAME")
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--timings", action="store_true", help="include wall-clock timings")
        if gauge_flags:
            p.add_argument("--seeds", type=int, default=None, help="default 50 (or config [defaults])")
            p.add_argument("--degree-cap", type=int, default=None, dest="degree_cap",
                           help="default 3 (or config [defaults])")
            p.add_argument("--dim", type=int, default=None)

    common(sub.add_parser("verify", help="axiom, invariance and finite-surface checks"), gauge_flags=False)
    common(sub.add_parser("bianchi", help="differential identities on random connections"))
    p = sub.add_parser("gradcheck", help="exact first variation against the bulk pairing")
    common(p)
    p.add_argument("--float-sweep", action="store_true", dest="float_sweep")
    p = sub.add_parser("action", help="action values with quadrature cross-check")
    common(p)
    p.add_argument("--connection", help="load the connection from a forms file")
    p.add_argument("--witness-out", dest="witness_out",
                   help="construct a fake-flat witness, save it here, and evaluate it")
    common(sub.add_parser("reduce", help="general machinery against the declared reduced theory"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        sweep_rows: list = []
        if args.command == "verify":
            rep = cmd_verify(cfg, args)
        elif args.command == "bianchi":
            rep = cmd_bianchi(cfg, args)
        elif args.command == "gradcheck":
            rep, sweep_rows = cmd_gradcheck(cfg, args)
        elif args.command == "action":
            rep = cmd_action(cfg, args)
        elif args.command == "reduce":
            rep = cmd_reduce(cfg, args)
        else:  # pragma: no cover
            raise ConfigError("command", f"unknown command {args.command!r}")
    except (ConfigError, StructureError, forms_io.FormFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.emit(rep, args.out)
    if sweep_rows and args.out:
        csv_path = args.out + ".sweep.csv"
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write("step,discrepancy\n")
            for step, err in sweep_rows:
                fh.write(f"{step},{err}\n")
    return report.exit_code(rep)


if __name__ == "__main__":
    sys.exit(main())
