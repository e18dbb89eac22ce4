#!/usr/bin/env python3
"""Cross-validates the native solver against an external MILP solver.

Generates randomized instances, exports each as an LP file through the CLI,
solves the file with HiGHS (scipy.optimize.milp), and compares objectives to
the native solution at 1e-6 relative tolerance. Exits 77 (skip) when scipy
is unavailable.
"""

import argparse
import json
import math
import random
import subprocess
import sys
import tempfile
from pathlib import Path

try:
    import numpy as np
    from scipy import sparse
    from scipy.optimize import Bounds, LinearConstraint, milp
except ImportError:
    print("scipy not available; skipping external MILP parity check")
    sys.exit(77)


def parse_lp(text):
    """Parses the subset of CPLEX-LP emitted by the exporter."""
    lines = []
    for raw in text.splitlines():
        if raw.startswith("\\"):
            continue
        if raw.startswith("   ") and lines:  # continuation
            lines[-1] += " " + raw.strip()
        else:
            lines.append(raw.rstrip())

    section = None
    objective = {}
    constraints = []  # (terms, sense, rhs)
    integers, binaries = set(), set()

    def parse_terms(tokens):
        terms = {}
        sign = 1.0
        i = 0
        while i < len(tokens):
            tok = tokens[i]
            if tok == "+":
                sign = 1.0
                i += 1
            elif tok == "-":
                sign = -1.0
                i += 1
            else:
                coef = float(tok)
                name = tokens[i + 1]
                terms[name] = terms.get(name, 0.0) + sign * coef
                sign = 1.0
                i += 2
        return terms

    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        lowered = stripped.lower()
        if lowered == "minimize":
            section = "obj"
            continue
        if lowered == "subject to":
            section = "cons"
            continue
        if lowered == "generals":
            section = "generals"
            continue
        if lowered == "binaries":
            section = "binaries"
            continue
        if lowered == "end":
            break

        if section == "obj":
            body = stripped.split(":", 1)[1]
            objective = parse_terms(body.split())
        elif section == "cons":
            name, body = stripped.split(":", 1)
            tokens = body.split()
            sense_pos = max(
                idx for idx, tok in enumerate(tokens) if tok in ("<=", ">=", "=")
            )
            sense = tokens[sense_pos]
            rhs = float(tokens[sense_pos + 1])
            terms = parse_terms(tokens[:sense_pos])
            constraints.append((name, terms, sense, rhs))
        elif section == "generals":
            integers.update(stripped.split())
        elif section == "binaries":
            binaries.update(stripped.split())

    return objective, constraints, integers, binaries


def solve_lp(text):
    objective, constraints, integers, binaries = parse_lp(text)

    names = set(objective)
    for _, terms, _, _ in constraints:
        names.update(terms)
    names.update(integers)
    names.update(binaries)
    order = sorted(names)
    col = {name: i for i, name in enumerate(order)}
    n = len(order)

    c = np.zeros(n)
    for name, coef in objective.items():
        c[col[name]] = coef

    rows, cols, vals = [], [], []
    lo = np.empty(len(constraints))
    hi = np.empty(len(constraints))
    for r, (_, terms, sense, rhs) in enumerate(constraints):
        for name, coef in terms.items():
            rows.append(r)
            cols.append(col[name])
            vals.append(coef)
        if sense == "<=":
            lo[r], hi[r] = -np.inf, rhs
        elif sense == ">=":
            lo[r], hi[r] = rhs, np.inf
        else:
            lo[r], hi[r] = rhs, rhs
    matrix = sparse.csr_matrix((vals, (rows, cols)), shape=(len(constraints), n))

    lb = np.zeros(n)
    ub = np.full(n, np.inf)
    integrality = np.zeros(n)
    for name in binaries:
        ub[col[name]] = 1.0
        integrality[col[name]] = 1
    for name in integers:
        integrality[col[name]] = 1

    res = milp(
        c=c,
        constraints=LinearConstraint(matrix, lo, hi),
        integrality=integrality,
        bounds=Bounds(lb, ub),
    )
    return res


def random_config(rng, size, with_mbs):
    w = h = size
    pbs_count = rng.randint(1, 3)
    positions = []
    for _ in range(pbs_count):
        positions.append([25.0 * rng.randint(0, w - 1), 25.0 * rng.randint(0, h - 1)])
    config = {
        "seed": rng.randint(0, 2**31),
        "grid": {"width": w, "height": h},
        "topology": {
            "pbs_count": pbs_count,
            "mbs_count": 1 if with_mbs else 0,
            "pbs_positions_m": positions,
            "mbs_position_m": [25.0 * (w - 1) / 2.0, 25.0 * (h - 1)],
        },
        "task": {
            "bitrate_mbps": rng.uniform(1.0, 100.0),
            "cpu_mips": rng.uniform(100.0, 40000.0),
        },
        "uav": {
            "upe": rng.uniform(0.1, 1.0),
            "mbs_gain": rng.uniform(1.0, 200.0),
        },
        "weights": {
            "alpha": rng.uniform(0.05, 10.0),
            "beta": rng.uniform(0.05, 10.0),
            "gamma": rng.uniform(0.05, 10.0),
            "omega": rng.uniform(0.05, 10.0),
        },
        "start": [rng.randint(1, w), rng.randint(1, h)],
        "dest": [rng.randint(1, w), rng.randint(1, h)],
    }
    return config


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("cli", help="path to the uavfog binary")
    parser.add_argument("--instances", type=int, default=20)
    parser.add_argument("--size", type=int, default=8)
    parser.add_argument("--seed", type=int, default=8112026)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    failures = 0
    checked = 0

    with tempfile.TemporaryDirectory() as tmp:
        tmpdir = Path(tmp)
        for k in range(args.instances):
            config = random_config(rng, args.size, with_mbs=k % 2 == 0)
            cfg_path = tmpdir / f"cfg{k}.json"
            cfg_path.write_text(json.dumps(config))

            sol_path = tmpdir / f"sol{k}.json"
            solve_run = subprocess.run(
                [args.cli, "solve", "-c", str(cfg_path), "--out", str(sol_path)],
                capture_output=True,
                text=True,
            )
            if solve_run.returncode not in (0, 3):
                print(f"[{k}] native solve failed: {solve_run.stderr.strip()}")
                failures += 1
                continue
            native_feasible = solve_run.returncode == 0
            native_obj = None
            if native_feasible:
                native_obj = json.loads(sol_path.read_text())["solution"]["objective"]

            lp_path = tmpdir / f"model{k}.lp"
            export_run = subprocess.run(
                [args.cli, "export-lp", "-c", str(cfg_path), "--out", str(lp_path)],
                capture_output=True,
                text=True,
            )
            if export_run.returncode != 0:
                # The exporter refuses instances with no admissible offload
                # point; the native solver must agree they are infeasible.
                if not native_feasible:
                    checked += 1
                    continue
                print(f"[{k}] export failed on a feasible instance")
                failures += 1
                continue

            res = solve_lp(lp_path.read_text())
            if native_feasible:
                if res.status != 0:
                    print(f"[{k}] HiGHS status {res.status} on a feasible instance")
                    failures += 1
                    continue
                rel = abs(res.fun - native_obj) / max(1.0, abs(native_obj))
                if rel > 1e-6:
                    print(
                        f"[{k}] objective mismatch: native {native_obj:.9g} "
                        f"vs HiGHS {res.fun:.9g} (rel {rel:.3g})"
                    )
                    failures += 1
                    continue
            else:
                if res.status != 2:  # infeasible
                    print(f"[{k}] native infeasible but HiGHS status {res.status}")
                    failures += 1
                    continue
            checked += 1

    print(f"checked {checked}/{args.instances} instances, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
