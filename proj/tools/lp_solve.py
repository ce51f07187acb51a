#!/usr/bin/env python3
"""LP-file MILP driver backed by scipy's HiGHS interface.

Usage:
    lp_solve.py [--time-limit SECONDS] job1.lp job1.sol [job2.lp job2.sol ...]

Reads CPLEX-style LP files (the subset this project emits: one objective
line, one constraint per line, Bounds / Generals / Binaries sections) and
writes a solution file per job:

    status optimal|infeasible|timeout|unbounded|error
    objective <value>
    var <name> <value>
"""

import argparse
import math
import re
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix

_TERM_RE = re.compile(r"([+-])?\s*(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?\s*([A-Za-z_][\w.()]*)")
_NUM_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class LPError(Exception):
    pass


def _parse_expr(text):
    """Returns {var: coeff} for a linear expression."""
    coeffs = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise LPError(f"cannot parse expression near: {text[pos:pos+40]!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        coeff = float(m.group(2)) if m.group(2) else 1.0
        name = m.group(3)
        coeffs[name] = coeffs.get(name, 0.0) + sign * coeff
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return coeffs


def parse_lp(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("\\")]
    sense = 1  # minimize
    objective = {}
    constraints = []  # (name, coeffs, op, rhs)
    bounds = {}
    integers = set()
    binaries = set()
    section = None
    i = 0
    while i < len(lines):
        ln = lines[i]
        low = ln.lower()
        if low in ("minimize", "maximize", "min", "max"):
            sense = 1 if low.startswith("min") else -1
            section = "objective"
            i += 1
            continue
        if low in ("subject to", "st", "s.t.", "such that"):
            section = "constraints"
            i += 1
            continue
        if low == "bounds":
            section = "bounds"
            i += 1
            continue
        if low in ("generals", "general", "integers", "integer"):
            section = "generals"
            i += 1
            continue
        if low in ("binaries", "binary"):
            section = "binaries"
            i += 1
            continue
        if low == "end":
            break

        if section == "objective":
            body = ln.split(":", 1)[1] if ":" in ln else ln
            if body.strip():
                objective = _parse_expr(body)
        elif section == "constraints":
            if ":" in ln:
                name, body = ln.split(":", 1)
                name = name.strip()
            else:
                name, body = f"c{len(constraints)}", ln
            m = re.search(r"(<=|>=|=)", body)
            if not m:
                raise LPError(f"constraint without sense: {ln!r}")
            op = m.group(1)
            lhs, rhs = body[: m.start()], body[m.end():]
            constraints.append((name, _parse_expr(lhs), op, float(rhs)))
        elif section == "bounds":
            toks = ln.split()
            if len(toks) == 2 and toks[1].lower() == "free":
                bounds[toks[0]] = (-math.inf, math.inf)
            elif len(toks) == 3 and toks[1] == "=":
                v = float(toks[2])
                bounds[toks[0]] = (v, v)
            elif len(toks) == 3 and toks[1] == ">=":
                lo, hi = bounds.get(toks[0], (0.0, math.inf))
                bounds[toks[0]] = (float(toks[2]), hi)
            elif len(toks) == 3 and toks[1] == "<=":
                lo, hi = bounds.get(toks[0], (0.0, math.inf))
                bounds[toks[0]] = (lo, float(toks[2]))
            elif len(toks) == 5 and toks[1] == "<=" and toks[3] == "<=":
                lo = -math.inf if toks[0] == "-inf" else float(toks[0])
                hi = math.inf if toks[4] in ("inf", "+inf") else float(toks[4])
                bounds[toks[2]] = (lo, hi)
            else:
                raise LPError(f"cannot parse bounds line: {ln!r}")
        elif section in ("generals", "binaries"):
            for name in ln.split():
                (integers if section == "generals" else binaries).add(name)
        else:
            raise LPError(f"line outside any section: {ln!r}")
        i += 1

    names = []
    seen = set()

    def note(name):
        if name not in seen:
            seen.add(name)
            names.append(name)

    for name in objective:
        note(name)
    for _, coeffs, _, _ in constraints:
        for name in coeffs:
            note(name)
    for name in list(bounds) + sorted(integers) + sorted(binaries):
        note(name)

    return {
        "sense": sense,
        "objective": objective,
        "constraints": constraints,
        "bounds": bounds,
        "integers": integers,
        "binaries": binaries,
        "names": names,
    }


def solve_lp(lp, time_limit):
    names = lp["names"]
    idx = {n: j for j, n in enumerate(names)}
    n = len(names)
    c = np.zeros(n)
    for name, coeff in lp["objective"].items():
        c[idx[name]] = lp["sense"] * coeff

    lo = np.zeros(n)
    hi = np.full(n, math.inf)
    for j, name in enumerate(names):
        if name in lp["binaries"]:
            lo[j], hi[j] = 0.0, 1.0
        if name in lp["bounds"]:
            lo[j], hi[j] = lp["bounds"][name]
    integrality = np.zeros(n)
    for name in lp["integers"] | lp["binaries"]:
        integrality[idx[name]] = 1

    cons = []
    if lp["constraints"]:
        rows, cols, vals = [], [], []
        clo, chi = [], []
        for r, (_, coeffs, op, rhs) in enumerate(lp["constraints"]):
            for name, coeff in coeffs.items():
                rows.append(r)
                cols.append(idx[name])
                vals.append(coeff)
            if op == "<=":
                clo.append(-math.inf)
                chi.append(rhs)
            elif op == ">=":
                clo.append(rhs)
                chi.append(math.inf)
            else:
                clo.append(rhs)
                chi.append(rhs)
        a = csr_matrix((vals, (rows, cols)), shape=(len(lp["constraints"]), n))
        cons = [LinearConstraint(a, clo, chi)]

    res = milp(
        c=c,
        integrality=integrality,
        bounds=Bounds(lo, hi),
        constraints=cons,
        options={"time_limit": time_limit, "presolve": True},
    )

    out = []
    if res.status == 0:
        out.append("status optimal")
        obj = lp["sense"] * res.fun if res.fun is not None else 0.0
        out.append(f"objective {float(obj)!r}")
        for j, name in enumerate(names):
            out.append(f"var {name} {float(res.x[j])!r}")
    elif res.status == 2:
        out.append("status infeasible")
    elif res.status == 1:
        # Iteration or time limit; a feasible incumbent may still exist.
        if res.x is not None:
            out.append("status feasible")
            obj = lp["sense"] * res.fun if res.fun is not None else 0.0
            out.append(f"objective {float(obj)!r}")
            for j, name in enumerate(names):
                out.append(f"var {name} {float(res.x[j])!r}")
        else:
            out.append("status timeout")
    elif res.status == 3:
        out.append("status unbounded")
    else:
        out.append("status error")
        out.append(f"message {res.message!r}")
    return "\n".join(out) + "\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--time-limit", type=float, default=60.0)
    ap.add_argument("files", nargs="+", help="alternating LP and solution paths")
    args = ap.parse_args()
    if len(args.files) % 2 != 0:
        ap.error("expected alternating LP and solution file paths")
    rc = 0
    for k in range(0, len(args.files), 2):
        lp_path, sol_path = args.files[k], args.files[k + 1]
        try:
            with open(lp_path) as f:
                lp = parse_lp(f.read())
            sol = solve_lp(lp, args.time_limit)
        except Exception as exc:  # report per job, keep the batch going
            sol = f"status error\nmessage {exc!r}\n"
            rc = 1
        with open(sol_path, "w") as f:
            f.write(sol)
    return rc


if __name__ == "__main__":
    sys.exit(main())
