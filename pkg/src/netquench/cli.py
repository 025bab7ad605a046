"""Command-line front end.

Subcommands: generate, analyze, control, simulate, enum, verify.  Reports
are JSON (nested data); tables and time series are CSV.  Every command is
deterministic given its flags and seed; ``--reproducible`` suppresses the
timestamp header line so repeated runs are byte-identical.  Exit code 0
means every requested computation converged and validated.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from datetime import datetime, timezone

import numpy as np

from . import control, dynamics, enumeration, graphs, oracles

# Connected-count prefix (orders 1..11) pinned for the self-check.
_KNOWN_CONNECTED_PREFIX = (
    1,
    1,
    4,
    38,
    728,
    26704,
    1866256,
    251548592,
    66296291072,
    34496488594816,
    35641657548953344,
)

_MARGINAL_BAND = 1e-6


def _timestamp_comment(reproducible: bool) -> str | None:
    if reproducible:
        return None
    return f"generated {datetime.now(timezone.utc).isoformat()}"


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_csv(path, header: str, rows, reproducible: bool) -> None:
    fh, close = _open_out(path)
    try:
        stamp = _timestamp_comment(reproducible)
        if stamp is not None:
            fh.write(f"# {stamp}\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(str(x) for x in row) + "\n")
    finally:
        if close:
            fh.close()


def _max_threads() -> int:
    """Parallelism cap from NETQUENCH_THREADS (the implementation currently
    runs single-threaded, which always respects the cap)."""
    raw = os.environ.get("NETQUENCH_THREADS")
    if raw is None:
        return 1
    value = int(raw)
    if value < 1:
        raise ValueError(f"NETQUENCH_THREADS must be a positive integer, got {raw!r}")
    return value


def parse_p0_spec(spec: str, n: int) -> np.ndarray:
    """Initial condition: ``uniform:<v>``, ``single:<node>:<v>``, or a CSV
    path with header ``node,p`` (unlisted nodes default to 0)."""
    if spec.startswith("uniform:"):
        v = float(spec.split(":", 1)[1])
        return dynamics.as_state(np.full(n, v), n)
    if spec.startswith("single:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad p0 spec {spec!r}; expected single:<node>:<v>")
        node, v = int(parts[1]), float(parts[2])
        if not 0 <= node < n:
            raise ValueError(f"p0 node {node} out of range for n={n}")
        p0 = np.zeros(n)
        p0[node] = v
        return dynamics.as_state(p0, n)
    p0 = np.zeros(n)
    with open(spec, "r", encoding="utf-8") as fh:
        lines = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    if not lines or lines[0].replace(" ", "") != "node,p":
        raise ValueError(f"p0 file {spec!r} must have header 'node,p'")
    for line in lines[1:]:
        tok = line.split(",")
        if len(tok) != 2:
            raise ValueError(f"bad p0 row {line!r}")
        node = int(tok[0])
        if not 0 <= node < n:
            raise ValueError(f"p0 node {node} out of range for n={n}")
        p0[node] = float(tok[1])
    return dynamics.as_state(p0, n)


def cmd_generate(args) -> int:
    if args.kind == "ring":
        g = graphs.generate_ring(args.n)
    elif args.kind == "regular":
        g = graphs.generate_random_regular(args.n, args.r, args.seed)
    elif args.kind == "ba":
        g = graphs.generate_barabasi_albert(args.n, args.m0, args.m, args.seed)
    elif args.kind == "er":
        g = graphs.generate_erdos_renyi(args.n, args.p, args.seed)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown graph kind {args.kind!r}")
    text = graphs.serialize_edge_list(g, comment=_timestamp_comment(args.reproducible))
    fh, close = _open_out(args.out)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()
    print(f"wrote {args.kind} graph: n={g.n}, edges={g.num_edges}", file=sys.stderr)
    return 0


def _analysis_payload(g: graphs.Graph, params: dynamics.NodeParams, reproducible: bool) -> dict:
    est = dynamics.spectral_radius(g, params)
    report = control.select_nodes(g, params)
    if est.converged:
        if est.sigma < 1.0 - _MARGINAL_BAND:
            verdict = "stable"
        elif est.sigma > 1.0 + _MARGINAL_BAND:
            verdict = "unstable"
        else:
            verdict = "marginal"
    else:
        verdict = "unconverged"
    payload = {
        "n": g.n,
        "num_edges": g.num_edges,
        "sigma": est.sigma,
        "sigma_converged": est.converged,
        "verdict": verdict,
        "margins": [float(m) for m in report.margins],
        "flagged": sorted(report.flagged),
        "discs": [
            {"node": d.node, "center": d.center, "radius": d.radius} for d in report.discs
        ],
    }
    stamp = _timestamp_comment(reproducible)
    if stamp is not None:
        payload["generated_at"] = stamp
    return payload


def cmd_analyze(args) -> int:
    g = graphs.read_graph(args.graph)
    params = dynamics.load_params(args.params)
    payload = _analysis_payload(g, params, args.reproducible)
    fh, close = _open_out(args.out)
    try:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    finally:
        if close:
            fh.close()
    if args.report_csv:
        report = control.select_nodes(g, params)
        control.write_selection_report(
            report, g, params, args.report_csv,
            header_comment=_timestamp_comment(args.reproducible),
        )
    return 0 if payload["sigma_converged"] else 1


def cmd_control(args) -> int:
    g = graphs.read_graph(args.graph)
    params = dynamics.load_params(args.params)
    report = control.select_nodes(g, params)
    tuned, plan = control.tune_betas(g, params, report, kappa=args.kappa)
    stamp = _timestamp_comment(args.reproducible)
    dynamics.save_params(tuned, args.params_out, header_comment=stamp)
    control.write_control_plan(plan, params, args.plan_out, header_comment=stamp)
    check = control.verify_stabilization(g, tuned)
    print(f"tuned={len(plan.new_beta)} sigma={check.sigma!r} stable={str(check.stable).lower()}")
    return 0 if check.stable else 1


def cmd_simulate(args) -> int:
    g = graphs.read_graph(args.graph)
    params = dynamics.load_params(args.params)
    p0 = parse_p0_spec(args.p0, g.n)
    traj = dynamics.simulate(
        g,
        params,
        p0,
        max_steps=args.max_steps,
        extinct_tol=args.tol,
        endemic_window=args.endemic_window,
    )
    dynamics.write_trajectory_csv(
        traj, args.out, header_comment=_timestamp_comment(args.reproducible)
    )
    est = dynamics.spectral_radius(g, params)
    print(f"{traj.verdict},{traj.steps_to_verdict},{est.sigma!r}")
    return 0 if est.converged and traj.verdict != dynamics.VERDICT_UNDECIDED else 1


def cmd_enum(args) -> int:
    if args.table == "connected":
        counts = enumeration.connected_labeled_table(args.pmax)
        rows = [(p, c) for p, c in enumerate(counts, start=1)]
        _write_csv(args.out, "p,C_p", rows, args.reproducible)
    elif args.table == "all":
        rows = [(p, enumeration.count_all_labeled_graphs(p)) for p in range(args.pmax + 1)]
        _write_csv(args.out, "p,G_p", rows, args.reproducible)
    elif args.table == "edges":
        top = math.comb(args.p, 2)
        rows = [
            (k, enumeration.count_labeled_graphs_with_edges(args.p, k))
            for k in range(top + 1)
        ]
        _write_csv(args.out, "k,count", rows, args.reproducible)
    elif args.table == "regular-asym":
        rows = []
        for n in range(args.degree + 1, args.nmax + 1):
            if (n * args.degree) % 2 != 0:
                continue
            ln_l = enumeration.bollobas_regular_count_log(n, args.degree).ln
            ln_u = (
                repr(enumeration.unlabeled_regular_count_log(n, args.degree).ln)
                if args.degree >= 3
                else ""
            )
            rows.append((n, repr(ln_l), ln_u))
        _write_csv(args.out, "n,ln_labeled,ln_unlabeled", rows, args.reproducible)
    elif args.table == "rarity":
        rows = []
        for n in range(args.r + 1, args.nmax + 1):
            if (n * args.r) % 2 != 0:
                continue
            ln_l = enumeration.bollobas_regular_count_log(n, args.r).ln
            ln_g = math.comb(n, 2) * math.log(2.0)
            rows.append((n, repr(ln_l), repr(ln_g), repr(ln_l - ln_g)))
        _write_csv(args.out, "n,ln_L,ln_G,ln_ratio", rows, args.reproducible)
    elif args.table == "catalan":
        rows = []
        for n in range(2, args.nmax + 1):
            exact = enumeration.catalan_coefficient(n)
            asym = enumeration.catalan_asymptotic_log(n).ln
            ratio = math.exp(math.log(exact) - asym)
            rows.append((n, exact, repr(asym), repr(ratio)))
        _write_csv(args.out, "n,f_n,ln_asymptotic,ratio", rows, args.reproducible)
    elif args.table == "wright":
        cap = args.n * (args.n - 1) // 2
        rows = [
            (q, repr(enumeration.wright_condition_value(args.n, q)))
            for q in range(cap + 1)
        ]
        _write_csv(args.out, "q,value", rows, args.reproducible)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown table {args.table!r}")
    return 0


def _verify_checks(expensive: bool):
    def check_connected_routes():
        pmax = 16
        table = enumeration.connected_labeled_table(pmax)
        if tuple(table[: len(_KNOWN_CONNECTED_PREFIX)]) != _KNOWN_CONNECTED_PREFIX:
            return False
        riordan = [enumeration.connected_labeled_riordan(p) for p in range(1, pmax + 1)]
        egf = enumeration.connected_labeled_egf_log(pmax)
        return table == riordan == egf

    def check_brute_connected():
        top = 6 if expensive else 5
        return all(
            oracles.brute_count_connected(p, expensive=expensive)
            == enumeration.connected_labeled_harary(p)
            for p in range(1, top + 1)
        )

    def check_brute_regular():
        if oracles.brute_count_regular(4, 3) != 1:
            return False
        if oracles.brute_count_regular(6, 3) != 70:
            return False
        if oracles.brute_count_regular(6, 5) != 1:
            return False
        for n in range(2, 7):
            for r in range(n):
                if (n * r) % 2 == 0:
                    a = oracles.brute_count_regular(n, r)
                    b = oracles.brute_count_regular(n, n - 1 - r)
                    if a != b:
                        return False
        return True

    def check_catalan():
        return all(
            oracles.brute_catalan(n) == enumeration.catalan_coefficient(n)
            for n in range(1, 15)
        )

    def check_power_vs_dense():
        rng = random.Random(20260809)
        for _ in range(20):
            n = rng.randint(2, 10)
            g = graphs.generate_erdos_renyi(n, 0.5, rng.randrange(1 << 30))
            params = dynamics.NodeParams(
                np.array([rng.uniform(0.05, 1.0) for _ in range(n)]),
                np.array([rng.uniform(0.01, 1.0) for _ in range(n)]),
                np.array([rng.uniform(0.1, 1.0) for _ in range(n)]),
            )
            est = dynamics.spectral_radius(g, params, tol=1e-13, max_iter=200_000)
            ref = oracles.dense_spectral_radius(
                dynamics.LinearBoundSystem(g, params).dense()
            )
            if not est.converged or abs(est.sigma - ref) >= 1e-8:
                return False
        return True

    def check_regular_asymptotic():
        est = enumeration.bollobas_regular_count_log(6, 3).value
        return 0.5 <= est / 70.0 <= 2.0

    return [
        ("connected counts: three routes agree and match the pinned table", check_connected_routes),
        ("exhaustive connectivity counts match the recurrence", check_brute_connected),
        ("exhaustive regular counts and complement symmetry", check_brute_regular),
        ("Catalan formula matches the lattice-path count", check_catalan),
        ("power iteration matches the dense eigensolver", check_power_vs_dense),
        ("regular-count asymptotic anchored at the exact (6,3) count", check_regular_asymptotic),
    ]


def cmd_verify(args) -> int:
    failures = 0
    for desc, fn in _verify_checks(args.expensive):
        ok = fn()
        print(f"{'ok  ' if ok else 'FAIL'} {desc}")
        if not ok:
            failures += 1
    print(f"{'all checks passed' if failures == 0 else f'{failures} check(s) failed'}")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netquench",
        description="SIS epidemic thresholds, control-node selection, and graph enumeration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a graph as an edge-list file")
    p_gen.add_argument("kind", choices=["ring", "regular", "ba", "er"])
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--r", type=int, help="degree (regular)")
    p_gen.add_argument("--m0", type=int, help="seed clique size (ba)")
    p_gen.add_argument("--m", type=int, help="edges per arrival (ba)")
    p_gen.add_argument("--p", type=float, help="edge probability (er)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default="-")
    p_gen.add_argument("--reproducible", action="store_true")
    p_gen.set_defaults(func=cmd_generate)

    p_an = sub.add_parser("analyze", help="spectral radius, threshold verdict, disc margins")
    p_an.add_argument("--graph", required=True)
    p_an.add_argument("--params", required=True)
    p_an.add_argument("--out", default="-")
    p_an.add_argument("--report-csv", default=None)
    p_an.add_argument("--reproducible", action="store_true")
    p_an.set_defaults(func=cmd_analyze)

    p_ctl = sub.add_parser("control", help="tune beta on flagged nodes")
    p_ctl.add_argument("--graph", required=True)
    p_ctl.add_argument("--params", required=True)
    p_ctl.add_argument("--kappa", type=float, default=control.DEFAULT_SAFETY)
    p_ctl.add_argument("--params-out", required=True)
    p_ctl.add_argument("--plan-out", required=True)
    p_ctl.add_argument("--reproducible", action="store_true")
    p_ctl.set_defaults(func=cmd_control)

    p_sim = sub.add_parser("simulate", help="run the exact dynamics to a verdict")
    p_sim.add_argument("--graph", required=True)
    p_sim.add_argument("--params", required=True)
    p_sim.add_argument("--p0", default="uniform:0.2")
    p_sim.add_argument("--max-steps", type=int, default=10_000)
    p_sim.add_argument("--tol", type=float, default=1e-6)
    p_sim.add_argument("--endemic-window", type=int, default=200)
    p_sim.add_argument("--out", required=True)
    p_sim.add_argument("--reproducible", action="store_true")
    p_sim.set_defaults(func=cmd_simulate)

    p_enum = sub.add_parser("enum", help="counting tables and asymptotic sweeps as CSV")
    p_enum.add_argument(
        "table",
        choices=["connected", "all", "edges", "regular-asym", "rarity", "catalan", "wright"],
    )
    p_enum.add_argument("--pmax", type=int, default=20)
    p_enum.add_argument("--p", type=int, default=4)
    p_enum.add_argument("--degree", type=int, default=3)
    p_enum.add_argument("--r", type=int, default=3)
    p_enum.add_argument("--nmax", type=int, default=60)
    p_enum.add_argument("--n", type=int, default=10)
    p_enum.add_argument("--out", default="-")
    p_enum.add_argument("--reproducible", action="store_true")
    p_enum.set_defaults(func=cmd_enum)

    p_ver = sub.add_parser("verify", help="run the brute-force oracle cross-checks")
    p_ver.add_argument("--expensive", action="store_true")
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _max_threads()
        return args.func(args)
    except (ValueError, ArithmeticError, dynamics.ConvergenceError,
            graphs.GenerationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
