#!/usr/bin/env python3
"""Solve an LP/MPS file with HiGHS and write a JSON solution.

Usage: highs_solve.py INPUT OUTPUT [--mip-gap G] [--time-limit S]

The output layout is the one read by `jpong_milp::solution::read_json`:
{"status": "...", "objective": f, "mip_gap": f|null, "values": {"name": value, ...}}
"""
import argparse
import json
import sys

try:
    import highspy
except ImportError:
    sys.stderr.write("highspy is not installed\n")
    sys.exit(127)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("input")
    ap.add_argument("output")
    ap.add_argument("--mip-gap", type=float, default=0.01)
    ap.add_argument("--time-limit", type=float, default=None)
    args = ap.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", args.mip_gap)
    h.setOptionValue("primal_feasibility_tolerance", 1e-7)
    h.setOptionValue("dual_feasibility_tolerance", 1e-7)
    h.setOptionValue("mip_feasibility_tolerance", 1e-6)
    if args.time_limit is not None:
        h.setOptionValue("time_limit", args.time_limit)
    status = h.readModel(args.input)
    if status == highspy.HighsStatus.kError:
        sys.stderr.write("failed to read %s\n" % args.input)
        sys.exit(2)
    h.run()
    model_status = h.getModelStatus()
    name = h.modelStatusToString(model_status).lower()
    if model_status == highspy.HighsModelStatus.kOptimal:
        status_key = "optimal"
    elif model_status == highspy.HighsModelStatus.kInfeasible:
        status_key = "infeasible"
    elif model_status in (highspy.HighsModelStatus.kUnbounded,
                          highspy.HighsModelStatus.kUnboundedOrInfeasible):
        status_key = "unbounded"
    elif model_status == highspy.HighsModelStatus.kTimeLimit:
        status_key = "time_limit"
    else:
        status_key = "other:" + name

    out = {"status": status_key, "objective": None, "mip_gap": None, "values": {}}
    info = h.getInfo()
    if status_key in ("optimal", "time_limit") and info.primal_solution_status == 2:
        lp = h.getLp()
        sol = h.getSolution()
        out["objective"] = h.getObjectiveValue()
        out["values"] = {n: v for n, v in zip(lp.col_names_, sol.col_value)}
        if info.mip_node_count >= 0 and lp.integrality_:
            out["mip_gap"] = info.mip_gap
    with open(args.output, "w") as f:
        json.dump(out, f)


if __name__ == "__main__":
    main()
