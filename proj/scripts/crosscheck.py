# Copyright 2026 The DRAG Solver Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Cross-checks a frozen game value against an independent LP solver.

Regeneration:

    build/drag solve --instance data/canonical_4x4.json \
        --out /tmp/canonical_solution.json \
        --export-lp mps --lp-dir /tmp/canonical_lp
    python3 scripts/crosscheck.py \
        --solution /tmp/canonical_solution.json \
        --defender-mps /tmp/canonical_lp/defender.mps \
        --attacker-mps /tmp/canonical_lp/attacker.mps \
        --out data/golden_crosscheck.json

Both exported programs are solved with scipy's HiGHS backend and compared
against the solution file's game value; the script writes the agreement
record and exits nonzero on any disagreement beyond the tolerance.
"""

import argparse
import json
import sys

import numpy as np
import scipy
import scipy.sparse
from scipy.optimize import linprog

TOLERANCE = 1e-6


def parse_mps(path):
    """Reads the fixed-layout MPS subset the exporter emits.

    Sections: OBJSENSE (MAX/MIN), ROWS (N/L/G/E), COLUMNS, RHS, BOUNDS
    (FR entries only; every other variable defaults to [0, inf)), ENDATA.
    """
    sense = "MIN"
    row_kind = {}
    row_order = []
    entries = []  # (row, col, value) with row == "OBJ" for objective terms.
    rhs = {}
    free_vars = set()
    col_index = {}

    section = None
    pending_objsense = False
    with open(path, "r", encoding="ascii") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line:
                continue
            if not line[0].isspace():
                section = line.split()[0]
                pending_objsense = section == "OBJSENSE"
                continue
            fields = line.split()
            if pending_objsense:
                sense = fields[0]
                pending_objsense = False
                continue
            if section == "ROWS":
                kind, name = fields
                if kind != "N":
                    row_kind[name] = kind
                    row_order.append(name)
            elif section == "COLUMNS":
                col = fields[0]
                if col not in col_index:
                    col_index[col] = len(col_index)
                for i in range(1, len(fields) - 1, 2):
                    entries.append((fields[i], col, float(fields[i + 1])))
            elif section == "RHS":
                rhs[fields[1]] = float(fields[2])
            elif section == "BOUNDS":
                if fields[0] != "FR":
                    raise ValueError(f"unsupported bound type {fields[0]}")
                free_vars.add(fields[2])
    if section != "ENDATA":
        raise ValueError("missing ENDATA")

    ncols = len(col_index)
    objective = np.zeros(ncols)
    rows_ub, cols_ub, vals_ub, b_ub = [], [], [], []
    rows_eq, cols_eq, vals_eq, b_eq = [], [], [], []
    ub_index, eq_index = {}, {}
    for name in row_order:
        target = 0.0
        if row_kind[name] == "E":
            eq_index[name] = len(b_eq)
            b_eq.append(rhs.get(name, target))
        else:
            ub_index[name] = len(b_ub)
            sign = 1.0 if row_kind[name] == "L" else -1.0
            b_ub.append(sign * rhs.get(name, target))
    for row, col, value in entries:
        if row == "OBJ":
            objective[col_index[col]] = value
        elif row in eq_index:
            rows_eq.append(eq_index[row])
            cols_eq.append(col_index[col])
            vals_eq.append(value)
        else:
            sign = 1.0 if row_kind[row] == "L" else -1.0
            rows_ub.append(ub_index[row])
            cols_ub.append(col_index[col])
            vals_ub.append(sign * value)

    a_ub = scipy.sparse.coo_matrix(
        (vals_ub, (rows_ub, cols_ub)), shape=(len(b_ub), ncols)
    )
    a_eq = scipy.sparse.coo_matrix(
        (vals_eq, (rows_eq, cols_eq)), shape=(len(b_eq), ncols)
    )
    bounds = [
        (None, None) if name in free_vars else (0.0, None)
        for name in col_index
    ]
    return sense, objective, a_ub, np.array(b_ub), a_eq, np.array(b_eq), bounds


def solve_mps(path):
    sense, c, a_ub, b_ub, a_eq, b_eq, bounds = parse_mps(path)
    sign = -1.0 if sense == "MAX" else 1.0
    result = linprog(
        sign * c,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=bounds,
        method="highs",
    )
    if not result.success:
        raise RuntimeError(f"{path}: external solve failed: {result.message}")
    return sign * result.fun


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--solution", required=True)
    parser.add_argument("--defender-mps", required=True)
    parser.add_argument("--attacker-mps", required=True)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    with open(args.solution, "r", encoding="utf-8") as handle:
        solution = json.load(handle)
    game_value = solution["game_value"]

    defender_obj = solve_mps(args.defender_mps)
    attacker_obj = solve_mps(args.attacker_mps)

    scale = max(1.0, abs(game_value))
    worst = max(abs(defender_obj - game_value), abs(attacker_obj - game_value))
    agrees = worst <= TOLERANCE * scale

    record = {
        "instance": "canonical_4x4.json",
        "game_value": game_value,
        "duality_gap": solution["duality_gap"],
        "external_check": {
            "solver": f"scipy {scipy.__version__} linprog method=highs",
            "defender_objective": defender_obj,
            "attacker_objective": attacker_obj,
            "max_relative_difference": worst / scale,
            "tolerance": TOLERANCE,
            "agrees": agrees,
        },
    }
    with open(args.out, "w", encoding="utf-8") as handle:
        json.dump(record, handle, indent=2)
        handle.write("\n")

    print(f"game value     {game_value:.12f}")
    print(f"defender LP    {defender_obj:.12f}")
    print(f"attacker LP    {attacker_obj:.12f}")
    print(f"max rel diff   {worst / scale:.3e}")
    if not agrees:
        print("DISAGREEMENT beyond tolerance", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
