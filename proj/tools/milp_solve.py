#!/usr/bin/env python3
"""MILP solver adapter: reads a free-format MPS file, solves it with the
HiGHS backend shipped in scipy, and writes a plain-text solution file.

Usage: milp_solve.py MODEL.mps SOLUTION.sol [--gap G] [--time-limit S]

Solution file format (one item per line):
    status   optimal|gap_reached|infeasible|unbounded|error
    objective <float>          # including any objective-row constant
    gap      <float>           # achieved relative MIP gap
    var <name> <value>         # one line per variable

Any executable with this command-line and output contract can replace this
adapter (see README).
"""

import argparse
import math
import sys

import numpy as np
from scipy import sparse
from scipy.optimize import LinearConstraint, Bounds, milp


def parse_mps(path):
    rows = {}          # name -> sense ('N','L','G','E')
    row_order = []
    obj_row = None
    cols = {}          # name -> list[(row, coef)]
    col_order = []
    integer = set()
    rhs = {}
    lower = {}
    upper = {}
    explicit_free = set()

    section = None
    in_integer = False
    with open(path) as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("*"):
                continue
            if not line[0].isspace():
                parts = line.split()
                section = parts[0].upper()
                continue
            tok = line.split()
            if section == "ROWS":
                sense, name = tok[0].upper(), tok[1]
                rows[name] = sense
                if sense == "N":
                    if obj_row is None:
                        obj_row = name
                else:
                    row_order.append(name)
            elif section == "COLUMNS":
                if len(tok) >= 2 and tok[1] == "'MARKER'":
                    in_integer = "'INTORG'" in tok
                    continue
                name = tok[0]
                if name not in cols:
                    cols[name] = []
                    col_order.append(name)
                    if in_integer:
                        integer.add(name)
                for i in range(1, len(tok) - 1, 2):
                    cols[name].append((tok[i], float(tok[i + 1])))
            elif section == "RHS":
                for i in range(1, len(tok) - 1, 2):
                    rhs[tok[i]] = float(tok[i + 1])
            elif section == "BOUNDS":
                btype = tok[0].upper()
                name = tok[2]
                if btype == "BV":
                    lower[name] = 0.0
                    upper[name] = 1.0
                    integer.add(name)
                elif btype == "FX":
                    lower[name] = upper[name] = float(tok[3])
                elif btype == "FR":
                    explicit_free.add(name)
                elif btype == "LO":
                    lower[name] = float(tok[3])
                elif btype == "UP":
                    upper[name] = float(tok[3])
                elif btype == "MI":
                    lower[name] = -math.inf
                elif btype == "PL":
                    upper[name] = math.inf
                else:
                    raise ValueError(f"unsupported bound type {btype}")
            elif section in ("NAME", "RANGES", "OBJSENSE", "ENDATA"):
                continue

    n = len(col_order)
    col_index = {name: i for i, name in enumerate(col_order)}
    row_index = {name: i for i, name in enumerate(row_order)}

    c = np.zeros(n)
    data, ri, ci = [], [], []
    for name, entries in cols.items():
        j = col_index[name]
        for row, coef in entries:
            if row == obj_row:
                c[j] += coef
            else:
                data.append(coef)
                ri.append(row_index[row])
                ci.append(j)
    a = sparse.csr_matrix((data, (ri, ci)), shape=(len(row_order), n))

    con_lb = np.empty(len(row_order))
    con_ub = np.empty(len(row_order))
    for name in row_order:
        i = row_index[name]
        b = rhs.get(name, 0.0)
        sense = rows[name]
        if sense == "L":
            con_lb[i], con_ub[i] = -math.inf, b
        elif sense == "G":
            con_lb[i], con_ub[i] = b, math.inf
        else:
            con_lb[i] = con_ub[i] = b

    lb = np.zeros(n)
    ub = np.full(n, math.inf)
    for name in explicit_free:
        lb[col_index[name]] = -math.inf
    for name, v in lower.items():
        lb[col_index[name]] = v
    for name, v in upper.items():
        ub[col_index[name]] = v

    integrality = np.zeros(n)
    for name in integer:
        integrality[col_index[name]] = 1

    # MPS convention: the objective constant is the negated RHS of the N row.
    constant = -rhs.get(obj_row, 0.0) if obj_row is not None else 0.0
    return col_order, c, a, con_lb, con_ub, lb, ub, integrality, constant


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("model")
    ap.add_argument("solution")
    ap.add_argument("--gap", type=float, default=0.0)
    ap.add_argument("--time-limit", type=float, default=600.0)
    args = ap.parse_args()

    names, c, a, con_lb, con_ub, lb, ub, integrality, constant = parse_mps(args.model)

    options = {"mip_rel_gap": max(args.gap, 0.0), "time_limit": args.time_limit}
    constraints = []
    if a.shape[0]:
        constraints.append(LinearConstraint(a, con_lb, con_ub))
    res = milp(
        c,
        constraints=constraints,
        bounds=Bounds(lb, ub),
        integrality=integrality,
        options=options,
    )

    with open(args.solution, "w") as out:
        if res.status == 0:
            gap = getattr(res, "mip_gap", None) or 0.0
            status = "optimal" if gap <= 1e-9 else "gap_reached"
            out.write(f"status {status}\n")
            out.write(f"objective {res.fun + constant:.17g}\n")
            out.write(f"gap {gap:.17g}\n")
            for name, v in zip(names, res.x):
                out.write(f"var {name} {v:.17g}\n")
        elif res.status == 1:
            # iteration/time limit; report an incumbent when one exists
            if res.x is not None:
                gap = getattr(res, "mip_gap", None) or 0.0
                out.write("status gap_reached\n")
                out.write(f"objective {res.fun + constant:.17g}\n")
                out.write(f"gap {gap:.17g}\n")
                for name, v in zip(names, res.x):
                    out.write(f"var {name} {v:.17g}\n")
            else:
                out.write("status error\n")
        elif res.status == 2:
            out.write("status infeasible\n")
        elif res.status == 3:
            out.write("status unbounded\n")
        else:
            out.write("status error\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
