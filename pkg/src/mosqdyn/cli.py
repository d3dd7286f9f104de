"""Command line interface.

Subcommands:

    simulate   iterate the reduced map, print a verdict, dump the orbit
    classify   spectral report for the extinction state as JSON
    sweep      grid scan: classification vs simulated verdict agreement
    certify    run the certificate battery for one parameter set
    compare    discrete orbit next to the continuous flow

Exit codes: 0 success, 2 invalid parameters/config (argparse errors
included), 3 I/O failure, 4 a verification or agreement failure.

Options may come from a config file (--config PATH, lines of
"key = value", # comments allowed, keys named like the long options);
explicit command line flags override config values.  Commands that draw
randomness take --seed, falling back to the MOSQDYN_SEED environment
variable, then to the built-in default; the seed in effect is echoed.
File outputs are written atomically (temp file in the target directory,
then rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import IntegrationError, VerificationError
from .ioutil import atomic_write_json, atomic_write_lines, atomic_write_text, fmt
from .model import Mode, Parameters, State, validate_parameters
from .ode import OdeConfig, equilibrium_report, integrate_flow
from .simplex import (
    check_interval_map_range,
    count_two_cycles_on_grid,
    scan_periodic_points,
    two_cycle_certificate,
)
from .spectral import (
    Classification,
    classify_origin,
    find_fixed_points,
    origin_eigenvalues,
    stability_inequalities,
)
from .trajectory import (
    Orbit,
    OrbitConfig,
    Verdict,
    check_decreasing_totals,
    check_growth_lower_bound,
    iterate_general,
    iterate_orbit,
    orbit_to_csv,
)

__all__ = ["main", "DEFAULT_SEED"]

DEFAULT_SEED = 12345


# ---------------------------------------------------------------- config


def _config_tokens(path: str) -> list[str]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    tokens: list[str] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("_", "-")
        value = value.strip()
        if not key:
            raise ValueError(f"{path}:{lineno}: empty key")
        if key == "config":
            raise ValueError(f"{path}:{lineno}: config files cannot nest")
        if not value:
            raise ValueError(f"{path}:{lineno}: empty value for {key!r}")
        tokens.append("--" + key)
        tokens.extend(value.split())
    return tokens


def _expand_config(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    if argv.count("--config") > 1:
        raise ValueError("--config may be given at most once")
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise ValueError("--config requires a path")
    if idx == 0:
        raise ValueError("--config must follow a subcommand")
    path = argv[idx + 1]
    head = argv[:idx]
    tail = argv[idx + 2 :]
    # config tokens go right after the subcommand so that explicit flags,
    # parsed later, win
    return [head[0]] + _config_tokens(path) + head[1:] + tail


def _resolve_seed(args: argparse.Namespace) -> int:
    seed = getattr(args, "seed", None)
    if seed is not None:
        return seed
    env = os.environ.get("MOSQDYN_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"MOSQDYN_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


# ---------------------------------------------------------------- parser


def _add_rate_flags(sp: argparse.ArgumentParser, with_mortality: bool = True) -> None:
    sp.add_argument("--alpha", type=float, required=True, help="emergence rate, in (0, 1]")
    sp.add_argument("--beta", type=float, required=True, help="egg production rate, > 0")
    sp.add_argument("--mu", type=float, required=True, help="adult mortality, in (0, 1]")
    if with_mortality:
        sp.add_argument("--d0", type=float, default=0.0, help="density-independent larval mortality (default 0)")
        sp.add_argument("--d1", type=float, default=0.0, help="density-dependent larval mortality (default 0)")


def _add_start_flags(sp: argparse.ArgumentParser, required: bool, default: float = 1.0) -> None:
    if required:
        sp.add_argument("--x0", type=float, required=True, help="initial larval count")
        sp.add_argument("--y0", type=float, required=True, help="initial adult count")
    else:
        sp.add_argument("--x0", type=float, default=default, help=f"initial larval count (default {default})")
        sp.add_argument("--y0", type=float, default=default, help=f"initial adult count (default {default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mosqdyn",
        description="Simulate and certify the two-stage wild mosquito population model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="iterate the reduced map and report the verdict")
    _add_rate_flags(sp)
    _add_start_flags(sp, required=True)
    sp.add_argument("--steps", type=int, default=1_000_000, help="iteration budget (default 1000000)")
    sp.add_argument("--conv-tol", type=float, default=1e-8, help="detection tolerance (default 1e-8)")
    sp.add_argument("--div-threshold", type=float, default=1e9, help="larval escape threshold (default 1e9)")
    sp.add_argument("--record-every", type=int, default=1, help="record every k-th step (default 1)")
    sp.add_argument("--confirm-window", type=int, default=100, help="recorded steps confirming survival (default 100)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv", help="orbit dump format (default csv)")
    sp.add_argument("--out", type=str, default=None, help="output path (default: orbit to stdout)")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("classify", help="spectral report for the extinction state (JSON)")
    _add_rate_flags(sp)
    sp.add_argument("--tol", type=float, default=1e-9, help="unit-circle tolerance (default 1e-9)")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("sweep", help="grid scan comparing classification with simulated fate")
    sp.add_argument("--alpha-range", type=float, nargs=3, required=True, metavar=("LO", "HI", "N"),
                    help="emergence rate grid: low, high, count")
    sp.add_argument("--beta-range", type=float, nargs=3, required=True, metavar=("LO", "HI", "N"),
                    help="egg production grid: low, high, count")
    sp.add_argument("--mu-range", type=float, nargs=3, required=True, metavar=("LO", "HI", "N"),
                    help="adult mortality grid: low, high, count")
    sp.add_argument("--d0", type=float, default=0.0, help="fixed density-independent larval mortality")
    sp.add_argument("--d1", type=float, default=0.0, help="fixed density-dependent larval mortality")
    _add_start_flags(sp, required=False)
    sp.add_argument("--steps", type=int, default=1_000_000, help="iteration budget per cell (default 1000000)")
    sp.add_argument("--conv-tol", type=float, default=1e-8)
    sp.add_argument("--div-threshold", type=float, default=1e9)
    sp.add_argument("--record-every", type=int, default=16, help="recording stride per cell (default 16)")
    sp.add_argument("--tol", type=float, default=1e-9, help="unit-circle tolerance for classification")
    sp.add_argument("--out", type=str, required=True, help="CSV output path")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("certify", help="run the certificate battery for one parameter set")
    _add_rate_flags(sp)
    _add_start_flags(sp, required=False)
    sp.add_argument("--steps", type=int, default=1_000_000, help="iteration budget for orbit certificates")
    sp.add_argument("--conv-tol", type=float, default=1e-8)
    sp.add_argument("--div-threshold", type=float, default=1e9)
    sp.add_argument("--p-max", type=int, default=8, help="highest period scanned (default 8)")
    sp.add_argument("--grid", type=int, default=10_000, help="interval scan grid size (default 10000)")
    sp.add_argument("--trials", type=int, default=0, help="additional randomized parameter trials (default 0)")
    sp.add_argument("--seed", type=int, default=None, help="RNG seed for --trials")
    sp.add_argument("--out", type=str, default=None, help="optional JSON certificate dump")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("compare", help="discrete orbit next to the continuous flow")
    _add_rate_flags(sp)
    _add_start_flags(sp, required=True)
    sp.add_argument("--steps", type=int, default=500, help="discrete steps (default 500)")
    sp.add_argument("--record-every", type=int, default=1)
    sp.add_argument("--conv-tol", type=float, default=1e-8)
    sp.add_argument("--div-threshold", type=float, default=1e9)
    sp.add_argument("--t-end", type=float, default=500.0, help="integration horizon (default 500)")
    sp.add_argument("--dt", type=float, default=0.01, help="integrator step (default 0.01)")
    sp.add_argument("--out", type=str, default=None, help="CSV output path (default stdout)")
    sp.set_defaults(func=cmd_compare)

    return parser


# ------------------------------------------------------------- simulate


def _census_json(orbit: Orbit) -> dict:
    c = orbit.monitors.sign_census
    return {
        "both_up": c.both_up,
        "both_down": c.both_down,
        "x_up_y_down": c.x_up_y_down,
        "x_down_y_up": c.x_down_y_up,
        "ties": c.ties,
        "switches": c.switches,
        "gain_growth_events": c.gain_growth_events,
        "drop_shrink_events": c.drop_shrink_events,
    }


def _orbit_json(orbit: Orbit) -> dict:
    p = orbit.params
    cfg = orbit.config
    return {
        "params": {"alpha": p.alpha, "beta": p.beta, "mu": p.mu, "d0": p.d0, "d1": p.d1},
        "config": {
            "max_iters": cfg.max_iters,
            "conv_tol": cfg.conv_tol,
            "div_threshold": cfg.div_threshold,
            "record_every": cfg.record_every,
            "confirm_window": cfg.confirm_window,
        },
        "verdict": orbit.verdict.value,
        "n_steps": orbit.n_steps,
        "y_limit_estimate": orbit.y_limit_estimate,
        "monitors": {
            "y_bound_violations": orbit.monitors.y_bound_violations,
            "pattern_violations": orbit.monitors.pattern_violations,
            "sum_identity_max_err": orbit.monitors.sum_identity_max_err,
            "monotone_onset_estimate": orbit.monitors.monotone_onset_estimate,
            "sign_census": _census_json(orbit),
        },
        "orbit": [
            [int(n), float(x), float(y)]
            for n, x, y in zip(orbit.steps, orbit.xs, orbit.ys)
        ],
    }


def cmd_simulate(args: argparse.Namespace) -> int:
    p = Parameters(args.alpha, args.beta, args.mu, args.d0, args.d1)
    report = validate_parameters(p, Mode.REDUCED)
    if not report.valid:
        print(report.message(), file=sys.stderr)
        return 2
    cfg = OrbitConfig(
        max_iters=args.steps,
        conv_tol=args.conv_tol,
        div_threshold=args.div_threshold,
        record_every=args.record_every,
        confirm_window=args.confirm_window,
    )
    orbit = iterate_orbit(p, State(args.x0, args.y0), cfg)
    verdict_line = (
        f"verdict={orbit.verdict.value} n_steps={orbit.n_steps} "
        f"y_limit_estimate={fmt(orbit.y_limit_estimate)}"
    )
    if args.format == "csv":
        body = orbit_to_csv(orbit)
    else:
        body = json.dumps(_orbit_json(orbit), sort_keys=True, indent=2) + "\n"
    if args.out:
        atomic_write_text(args.out, body)
        print(verdict_line)
    else:
        sys.stdout.write(body)
        print(verdict_line, file=sys.stderr)
    return 0


# ------------------------------------------------------------- classify


def _rate_comparison(p: Parameters) -> tuple[str, str]:
    if p.beta < p.mu:
        return ("beta<mu", "extinction")
    if p.beta > p.mu:
        return ("beta>mu", "survival")
    return ("beta=mu", "none")


def cmd_classify(args: argparse.Namespace) -> int:
    p = Parameters(args.alpha, args.beta, args.mu, args.d0, args.d1)
    report = classify_origin(p, tol=args.tol)
    ineq = stability_inequalities(p)
    comparison, fate = _rate_comparison(p)
    out = {
        "alpha": p.alpha,
        "beta": p.beta,
        "mu": p.mu,
        "jacobian": [list(row) for row in report.jacobian],
        "eigenvalues": [report.lambda1, report.lambda2],
        "classification": report.classification.value,
        "stability_inequalities": list(ineq),
        "r0": (p.alpha * p.beta) / ((p.alpha + p.d0) * p.mu),
        "rate_comparison": comparison,
        "expected_fate": fate,
    }
    print(json.dumps(out, sort_keys=True, indent=2))
    return 0


# ---------------------------------------------------------------- sweep


def _axis(rng3: list[float], name: str) -> np.ndarray:
    lo, hi, n_f = rng3
    n = int(round(n_f))
    if n < 1:
        raise ValueError(f"{name}: grid count must be at least 1, got {n_f}")
    if hi < lo:
        raise ValueError(f"{name}: inverted range [{lo}, {hi}]")
    if n == 1:
        return np.asarray([lo], dtype=np.float64)
    return np.linspace(lo, hi, n)


def cmd_sweep(args: argparse.Namespace) -> int:
    alphas = _axis(args.alpha_range, "--alpha-range")
    betas = _axis(args.beta_range, "--beta-range")
    mus = _axis(args.mu_range, "--mu-range")
    cfg = OrbitConfig(
        max_iters=args.steps,
        conv_tol=args.conv_tol,
        div_threshold=args.div_threshold,
        record_every=args.record_every,
    )
    s0 = State(args.x0, args.y0)
    rows = ["alpha,beta,mu,d0,d1,in_condition,classification,verdict,n_steps,y_limit_estimate,agree"]
    cells = 0
    n_in = 0
    n_agree = 0
    n_disagree = 0
    for a in alphas:
        for b in betas:
            for m in mus:
                cells += 1
                p = Parameters(float(a), float(b), float(m), args.d0, args.d1)
                in_cond = validate_parameters(p, Mode.REDUCED).valid
                try:
                    cls = classify_origin(p, tol=args.tol).classification.value
                except ValueError:
                    cls = ""
                verdict = ""
                n_steps = ""
                y_est = ""
                agree = ""
                if in_cond:
                    n_in += 1
                    orbit = iterate_orbit(p, s0, cfg)
                    verdict = orbit.verdict.value
                    n_steps = str(orbit.n_steps)
                    y_est = fmt(orbit.y_limit_estimate)
                    _, fate = _rate_comparison(p)
                    cls_ok = (
                        cls == Classification.ATTRACTING.value
                        if p.beta < p.mu
                        else cls in (Classification.SADDLE.value, Classification.REPELLING.value)
                    )
                    ok = cls_ok and verdict == fate
                    agree = "true" if ok else "false"
                    if ok:
                        n_agree += 1
                    else:
                        n_disagree += 1
                rows.append(
                    f"{fmt(p.alpha)},{fmt(p.beta)},{fmt(p.mu)},{fmt(p.d0)},{fmt(p.d1)},"
                    f"{'true' if in_cond else 'false'},{cls},{verdict},{n_steps},{y_est},{agree}"
                )
    atomic_write_lines(args.out, rows)
    print(f"cells={cells} in_condition={n_in} agree={n_agree} disagree={n_disagree}")
    return 4 if n_disagree > 0 else 0


# -------------------------------------------------------------- certify


def _run_certificates(p: Parameters, args: argparse.Namespace) -> list[tuple[str, bool, str]]:
    results: list[tuple[str, bool, str]] = []

    l1, l2 = origin_eigenvalues(p)
    numeric = np.linalg.eigvals(np.asarray([[1.0 - p.alpha, p.beta], [p.alpha, 1.0 - p.mu]]))
    numeric = np.sort(numeric.real)[::-1]
    eig_err = max(abs(l1 - numeric[0]), abs(l2 - numeric[1]))
    vieta_sum = abs((l1 + l2) - (2.0 - p.alpha - p.mu))
    vieta_prod = abs(l1 * l2 - ((1.0 - p.alpha) * (1.0 - p.mu) - p.alpha * p.beta))
    ok = eig_err <= 1e-12 and vieta_sum <= 1e-12 and vieta_prod <= 1e-12
    results.append(
        ("spectral-agreement", ok, f"eig_err={eig_err:.2e} vieta=({vieta_sum:.2e},{vieta_prod:.2e})")
    )

    rep = classify_origin(p)
    both = all(stability_inequalities(p))
    ok = both == (rep.classification is Classification.ATTRACTING)
    results.append(("stability-equivalence", ok, f"classification={rep.classification.value}"))

    ok = check_interval_map_range(p)
    results.append(("interval-map-range", ok, "T([0,1]) within [0,1]"))

    try:
        cert = two_cycle_certificate(p)
        ok = cert.signs_ok
        detail = f"A={cert.quad_a:.6g} B={cert.quad_b:.6g} C={cert.quad_c:.6g}"
    except VerificationError as exc:
        ok, detail = False, str(exc)
    results.append(("two-cycle-signs", ok, detail))

    try:
        scan = scan_periodic_points(p, p_max=args.p_max, grid_n=args.grid)
        n_roots = sum(len(r) for r in scan.roots_by_period.values())
        ok, detail = True, f"periods 2..{args.p_max}: {n_roots} roots, all fixed points"
    except VerificationError as exc:
        ok, detail = False, str(exc)
    results.append(("periodic-scan", ok, detail))

    n_cycles = count_two_cycles_on_grid(p)
    results.append(("two-cycle-grid", n_cycles == 0, f"{n_cycles} non-origin period-two cells"))

    try:
        find_fixed_points(p)
        ok, detail = True, "origin only"
    except VerificationError as exc:
        ok, detail = False, str(exc)
    results.append(("fixed-point-scan", ok, detail))

    cfg = OrbitConfig(
        max_iters=args.steps,
        conv_tol=args.conv_tol,
        div_threshold=args.div_threshold,
        record_every=1,
    )
    orbit = iterate_orbit(p, State(args.x0, args.y0), cfg)
    _, fate = _rate_comparison(p)
    mon = orbit.monitors
    ok = (
        orbit.verdict.value == fate
        and mon.y_bound_violations == 0
        and mon.pattern_violations == 0
        and mon.sum_identity_max_err <= 1e-9
    )
    results.append(
        (
            "orbit-dichotomy",
            ok,
            f"verdict={orbit.verdict.value} n={orbit.n_steps} "
            f"y_bound={mon.y_bound_violations} patterns={mon.pattern_violations} "
            f"sum_err={mon.sum_identity_max_err:.2e}",
        )
    )

    if p.beta > p.mu and orbit.verdict is Verdict.SURVIVAL:
        onset = mon.monotone_onset_estimate
        try:
            ok = check_growth_lower_bound(p, orbit, onset)
            detail = f"anchored at onset {onset}"
        except ValueError as exc:
            ok, detail = False, str(exc)
        results.append(("growth-lower-bound", ok, detail))
    elif p.beta < p.mu and orbit.verdict is Verdict.EXTINCTION:
        ok = check_decreasing_totals(p, orbit)
        results.append(("decreasing-totals", ok, "x+y and (mu/beta)x+y nonincreasing"))

    return results


def _run_trials(args: argparse.Namespace, seed: int) -> list[tuple[str, bool, str]]:
    rng = np.random.default_rng(seed)
    results: list[tuple[str, bool, str]] = []
    cfg = OrbitConfig(max_iters=args.steps, conv_tol=args.conv_tol,
                      div_threshold=args.div_threshold, record_every=32)
    for i in range(args.trials):
        while True:
            a, b, m = 1.0 - rng.random(3)
            if abs(b - m) > 0.01:
                break
        p = Parameters(float(a), float(b), float(m))
        s0 = State(float(rng.uniform(0.0, 10.0)), float(rng.uniform(0.0, 10.0)))
        label = f"trial-{i + 1}"
        try:
            cert = two_cycle_certificate(p)
            range_ok = check_interval_map_range(p, grid_n=201)
            scan_periodic_points(p, p_max=4, grid_n=2001)
            orbit = iterate_orbit(p, s0, cfg)
            _, fate = _rate_comparison(p)
            ok = (
                cert.signs_ok
                and range_ok
                and orbit.verdict.value == fate
                and orbit.monitors.y_bound_violations == 0
                and orbit.monitors.pattern_violations == 0
            )
            detail = (
                f"alpha={p.alpha:.6g} beta={p.beta:.6g} mu={p.mu:.6g} "
                f"verdict={orbit.verdict.value} n={orbit.n_steps}"
            )
        except VerificationError as exc:
            ok, detail = False, str(exc)
        results.append((label, ok, detail))
    return results


def cmd_certify(args: argparse.Namespace) -> int:
    p = Parameters(args.alpha, args.beta, args.mu, args.d0, args.d1)
    report = validate_parameters(p, Mode.REDUCED)
    if not report.valid:
        print(report.message(), file=sys.stderr)
        return 2
    results = _run_certificates(p, args)
    seed = None
    if args.trials > 0:
        seed = _resolve_seed(args)
        print(f"seed={seed}")
        results.extend(_run_trials(args, seed))
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    n_fail = sum(1 for _, ok, _ in results if not ok)
    print(f"certificates={len(results)} failed={n_fail}")
    if args.out:
        payload = {
            "params": {"alpha": p.alpha, "beta": p.beta, "mu": p.mu, "d0": p.d0, "d1": p.d1},
            "seed": seed,
            "certificates": [
                {"name": name, "pass": ok, "detail": detail} for name, ok, detail in results
            ],
        }
        atomic_write_json(args.out, payload)
    return 4 if n_fail else 0


# -------------------------------------------------------------- compare


def cmd_compare(args: argparse.Namespace) -> int:
    p = Parameters(args.alpha, args.beta, args.mu, args.d0, args.d1)
    general = validate_parameters(p, Mode.GENERAL)
    if not general.valid:
        print(general.message(), file=sys.stderr)
        return 2
    s0 = State(args.x0, args.y0)

    eq = equilibrium_report(p)
    flow = integrate_flow(p, s0, OdeConfig(step=args.dt, t_end=args.t_end))

    reduced = validate_parameters(p, Mode.REDUCED).valid
    summary: list[str] = []
    if eq.positive is not None:
        eq_txt = f"({fmt(eq.positive.x)}, {fmt(eq.positive.y)})"
    else:
        eq_txt = "none"
    summary.append(
        f"r0={fmt(eq.r0)} trivial_stable={'true' if eq.trivial_stable else 'false'} "
        f"positive_equilibrium={eq_txt}"
    )
    if reduced:
        orbit = iterate_orbit(
            p,
            s0,
            OrbitConfig(
                max_iters=args.steps,
                conv_tol=args.conv_tol,
                div_threshold=args.div_threshold,
                record_every=args.record_every,
            ),
        )
        ns, xs, ys = orbit.steps, orbit.xs, orbit.ys
        summary.append(
            f"discrete: verdict={orbit.verdict.value} n={orbit.n_steps} "
            f"final=({fmt(xs[-1])}, {fmt(ys[-1])})"
        )
        # with no larval mortality the flow's threshold is beta/mu, so the
        # two notions of extinction-vs-survival must point the same way
        coherent = (eq.r0 > 1.0) == (p.beta > p.mu)
        summary.append(f"threshold_coherence={'true' if coherent else 'false'}")
    else:
        ns, xs, ys = iterate_general(p, s0, args.steps, record_every=args.record_every)
        summary.append(
            f"discrete: full map, {int(ns[-1])} steps, final=({fmt(xs[-1])}, {fmt(ys[-1])})"
        )
    fx, fy = flow.final
    summary.append(f"continuous: t={flow.ts[-1]:.6g} final=({fmt(fx)}, {fmt(fy)})")

    rows = ["n,x_map,y_map,t,x_flow,y_flow"]
    n_rows = max(len(ns), len(flow.ts))
    for i in range(n_rows):
        if i < len(ns):
            left = f"{int(ns[i])},{fmt(xs[i])},{fmt(ys[i])}"
        else:
            left = ",,"
        if i < len(flow.ts):
            right = f"{float(flow.ts[i]):.6f},{fmt(flow.xs[i])},{fmt(flow.ys[i])}"
        else:
            right = ",,"
        rows.append(left + "," + right)

    if args.out:
        atomic_write_lines(args.out, rows)
        for line in summary:
            print(line)
    else:
        for row in rows:
            sys.stdout.write(row + "\n")
        for line in summary:
            print(line, file=sys.stderr)
    return 0


# ----------------------------------------------------------------- main


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        argv = _expand_config(argv)
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 4
    except IntegrationError as exc:
        print(f"integration failure: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
