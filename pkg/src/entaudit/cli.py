"""Command-line front end.  Every subcommand emits a JSON report.

The report has a ``header`` (timestamps and wall time) and a ``body``; the
body depends only on the inputs and seed and is serialised with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import bounds, dynamic_sim, feasibility, graph_mbqc, target_circuit
from .errors import CapacityError, FormatError, ProtocolError
from .statevector import overlap

SCHEMA = "entaudit.report/1"


def body_json(body: dict) -> str:
    return json.dumps(body, sort_keys=True, indent=2)


def make_report(command: str, inputs: dict, body: dict, passed: bool, started: float) -> dict:
    return {
        "schema": SCHEMA,
        "header": {
            "generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "wall_time_s": round(time.perf_counter() - started, 3),
        },
        "body": {"command": command, "inputs": inputs, "verdict": "PASS" if passed else "FAIL", **body},
    }


def _layout(path):
    return target_circuit.read_layout(path) if path else target_circuit.DEFAULT_LAYOUT


# --- subcommands ------------------------------------------------------------------
# each returns (inputs, body, passed, summary)

def cmd_verify_prop1(args):
    layout = _layout(args.layout)
    g = graph_mbqc.layout_to_resource_graph(layout)
    rng = np.random.default_rng(args.seed)
    n_aux = len(g.auxiliaries)
    rows = []
    exact_state = graph_mbqc.build_graph_state(g, "exact")
    float_state = exact_state.to_floating()
    for name, alpha in (("alpha_0", target_circuit.ALPHA_ZERO), ("alpha_pi4", target_circuit.ALPHA_PI4)):
        target = target_circuit.build_target_state(layout, alpha, "exact")
        plan = graph_mbqc.plan_for_layout(alpha)
        patterns = graph_mbqc.branch_patterns(args.patterns, n_aux, rng)
        ok = all(graph_mbqc.mbqc_prepare(g, plan, bits, mode="exact", state=exact_state).exact
                 == target.exact for bits in patterns)
        rows.append({"alpha": name, "mode": "exact", "patterns": len(patterns), "equal": ok})
    for k in range(args.alphas):
        alpha = tuple(float(a) for a in rng.uniform(0, 2 * math.pi, size=n_aux))
        target = target_circuit.build_target_state(layout, alpha)
        plan = graph_mbqc.plan_for_layout(alpha)
        patterns = graph_mbqc.branch_patterns(args.patterns, n_aux, rng)
        worst = min(abs(overlap(graph_mbqc.mbqc_prepare(g, plan, bits, state=float_state), target)) ** 2
                    for bits in patterns)
        rows.append({"alpha": f"random_{k}", "mode": "floating", "patterns": len(patterns),
                     "min_fidelity": round(worst, 12), "equal": worst >= 1 - 1e-9})
    passed = all(r["equal"] for r in rows)
    summary = f"{sum(r['equal'] for r in rows)}/{len(rows)} angle tuples reproduced"
    return {"layout": layout.to_text(), "seed": args.seed}, {"checks": rows}, passed, summary


def cmd_verify_prop2(args):
    layout = _layout(args.layout)
    rep = feasibility.verify_prop2(layout, args.alpha)
    body = {
        "half_power": rep.half_power,
        "integer_entries": rep.integer_entries,
        "trees": len(rep.records),
        "violated": rep.violated_count,
        "records": [r.to_dict() for r in rep.records],
    }
    return {"layout": layout.to_text(), "alpha": args.alpha}, body, rep.passed, rep.summary()


def cmd_verify_prop3(args):
    layout = _layout(args.layout)
    g = graph_mbqc.layout_to_resource_graph(layout)
    script = dynamic_sim.derive_phires_script(layout)
    rep = dynamic_sim.certify_graph_script(g, script, feasibility.D0)
    chain = []
    for name, alpha in (("alpha_0", target_circuit.ALPHA_ZERO), ("alpha_pi4", target_circuit.ALPHA_PI4)):
        out = graph_mbqc.mbqc_prepare(g, graph_mbqc.plan_for_layout(alpha), "both", mode="exact",
                                      state=rep.run.state)
        target = target_circuit.build_target_state(layout, alpha, "exact")
        chain.append({"alpha": name, "equal": out.exact == target.exact})
    passed = rep.passed and rep.cz_count == len(g.edges) and all(c["equal"] for c in chain)
    body = {
        "script": dynamic_sim.script_to_text(script).splitlines(),
        "cz_steps": rep.cz_count,
        "sends": rep.send_count,
        "graph_state_equal": rep.matches_graph_state,
        "chain": chain,
    }
    summary = (f"{rep.cz_count} CZ, {rep.send_count} sends, graph state "
               f"{'reproduced' if rep.matches_graph_state else 'NOT reproduced'}")
    return {"layout": layout.to_text(), "config": "d0"}, body, passed, summary


def cmd_check_dynamic(args):
    config = feasibility.read_config(args.config)
    fuzz = dynamic_sim.fuzz_last_round(config, args.fuzz, args.seed, args.cut)
    two = dynamic_sim.check_last_round_bound(
        dynamic_sim.two_party_script(), feasibility.Configuration({"v1": 4, "v2": 4}), "v1")
    hist = {str(r): fuzz.ranks.count(r) for r in sorted(set(fuzz.ranks))}
    body = {
        "fuzz": {"runs": fuzz.runs, "bound": fuzz.bound, "max_rank": fuzz.max_rank,
                 "violations": fuzz.violations, "rank_histogram": hist},
        "two_party": {"rank": two.rank, "bound": two.bound},
    }
    passed = fuzz.passed and two.passed
    summary = (f"{fuzz.runs} scripts, max rank {fuzz.max_rank} (bound {fuzz.bound}), "
               f"two-party rank {two.rank} (bound {two.bound})")
    return {"config": dict(config.dims), "seed": args.seed, "cut": args.cut}, body, passed, summary


def cmd_bound(args):
    sym = bounds.symmetric_assignment_check(args.m, args.d)
    body = {
        "lower_bound": bounds.local_dim_lower_bound(args.m, args.d),
        "symmetric": {"edge_capacity": sym.edge_capacity, "load": sym.load,
                      "condition_holds": sym.condition_holds, "cut_product": sym.cut_product,
                      "required": sym.required, "ratio": sym.ratio},
    }
    passed = sym.condition_holds and bounds.meets_lower_bound(sym.load, args.m, args.d)
    summary = f"bound {body['lower_bound']:.6g}, symmetric load {sym.load} (M_e = {sym.edge_capacity})"
    if args.brute_force:
        bf = bounds.brute_force_min_max_load(args.m, args.d, args.cap)
        body["brute_force"] = {"cap": bf.cap, "minimum": bf.minimum, "passing": bf.passing,
                               "violations": bf.violations,
                               "witness": [[a, b, v] for (a, b), v in bf.witness.capacities]}
        passed = passed and bf.passed
        summary += f", brute-force minimum {bf.minimum} over {bf.passing} assignments"
    return {"m": args.m, "d": args.d}, body, passed, summary


def _feas_dict(f):
    return {"feasible": f.feasible,
            "edges": [{"edge": list(c.edge), "capacity": c.capacity, "rank": c.rank} for c in f.edges]}


def cmd_warmup(args):
    rep = feasibility.ghz_w_warmup()
    body = {"ghz": _feas_dict(rep.ghz), "w": _feas_dict(rep.w),
            "distributions_222": len(rep.distributions_222)}
    summary = (f"GHZ feasible: {rep.ghz.feasible}, W feasible: {rep.w.feasible}, "
               f"distributions for (2,2,2): {len(rep.distributions_222)}")
    return {}, body, rep.passed, summary


def cmd_search_layout(args):
    layout, position = target_circuit.search_default_layout(max_candidates=args.max_candidates)
    body = {"layout": layout.to_text(), "position": position,
            "matches_default": layout == target_circuit.DEFAULT_LAYOUT}
    return {"max_candidates": args.max_candidates}, body, True, f"layout {layout} at candidate {position}"


def cmd_run_protocol(args):
    config = feasibility.read_config(args.config)
    script = dynamic_sim.read_script(args.script)
    inputs = {"script": str(args.script), "config": dict(config.dims)}
    try:
        run = dynamic_sim.run_protocol(script, config)
    except (CapacityError, ProtocolError) as exc:
        return inputs, {"error": str(exc)}, False, f"protocol failed: {exc}"
    trace = [{"index": e.index, "step": e.step, "live": e.live,
              "occupancy": {p: list(s) for p, s in e.occupancy.items()},
              **({"cut_ranks": e.cut_ranks} if e.cut_ranks is not None else {})} for e in run.trace]
    body = {"steps": len(script), "sends": run.sends, "outcomes": run.outcomes,
            "final_qubits": [str(lab) for lab in run.state.labels], "trace": trace}
    return inputs, body, True, f"{len(script)} steps, {run.sends} sends, {run.state.num_qubits} live qubits"


def cmd_feasibility(args):
    config = feasibility.read_config(args.config)
    dists = feasibility.enumerate_admissible_distributions(config)
    body = {"distributions": len(dists),
            "paths": sum(g.is_tree() and max(g.degree(v) for v in g.vertices) <= 2 for g in dists)}
    passed = True
    summary = f"{len(dists)} admissible distributions"
    inputs = {"config": dict(config.dims)}
    if args.layout is not None:
        layout = _layout(args.layout or None)
        inputs["layout"] = layout.to_text()
        target = target_circuit.build_target_state(layout, target_circuit.ALPHA_PI4, "exact")
        if set(config.parties) != set(target_circuit.PARTIES):
            raise FormatError(args.config, 0, "a layout check needs parties v1..v8")
        table = feasibility.CutRankTable(target)
        feasible = cyclic = 0
        for g in dists:
            if not g.is_tree():
                cyclic += 1
            elif feasibility.tree_feasible(g, target, table).feasible:
                feasible += 1
        body.update({"feasible_trees": feasible, "cyclic_skipped": cyclic})
        passed = feasible == 0 and cyclic == 0
        summary += f", {feasible} reach the target, {cyclic} cyclic skipped"
    return inputs, body, passed, summary


# --- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entaudit", description="Entanglement-distribution audits.")
    p.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-prop1", help="measurement-based preparation of the target states")
    s.add_argument("--layout", type=Path)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--alphas", type=int, default=20, help="random angle tuples")
    s.add_argument("--patterns", type=int, default=16, help="outcome patterns per tuple")
    s.set_defaults(func=cmd_verify_prop1)

    s = sub.add_parser("verify-prop2", help="exact prefix-cut ranks over all 5040 line trees")
    s.add_argument("--layout", type=Path)
    s.add_argument("--alpha", choices=("pi4", "zero"), default="pi4")
    s.set_defaults(func=cmd_verify_prop2)

    s = sub.add_parser("verify-prop3", help="certify the sequential resource-state protocol")
    s.add_argument("--layout", type=Path)
    s.set_defaults(func=cmd_verify_prop3)

    s = sub.add_parser("check-dynamic", help="fuzz the last-round rank bound")
    s.add_argument("--config", default="d1")
    s.add_argument("--fuzz", type=int, default=500)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cut", default="v1")
    s.set_defaults(func=cmd_check_dynamic)

    s = sub.add_parser("bound", help="local-dimension lower bound on the complete graph")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--brute-force", action="store_true")
    s.add_argument("--cap", type=int, default=4)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("warmup", help="three-party GHZ and W example")
    s.set_defaults(func=cmd_warmup)

    s = sub.add_parser("search-layout", help="rediscover the default gate layout")
    s.add_argument("--max-candidates", type=int)
    s.set_defaults(func=cmd_search_layout)

    s = sub.add_parser("run-protocol", help="simulate a protocol script")
    s.add_argument("script", type=Path)
    s.add_argument("--config", default="d0")
    s.set_defaults(func=cmd_run_protocol)

    s = sub.add_parser("feasibility", help="enumerate admissible bipartite distributions")
    s.add_argument("--config", default="d0")
    s.add_argument("--layout", nargs="?", const="", type=str,
                   help="also test every tree against the target (default layout if no path)")
    s.set_defaults(func=cmd_feasibility)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        inputs, body, passed, summary = args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = make_report(args.command, inputs, body, passed, started)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    print(f"{args.command}: {summary}", file=sys.stderr)
    print(f"verdict: {'PASS' if passed else 'FAIL'}", file=sys.stderr)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
