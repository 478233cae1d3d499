#!/usr/bin/env python3
"""Solve an exported LP with HiGHS and import the solution back.

usage: highs_cross_check.py <fjsp binary> <instance.json> <workdir> [expected makespan]
"""
import pathlib
import subprocess
import sys

import highspy


def main():
    binary, instance, workdir = sys.argv[1:4]
    expected = sys.argv[4] if len(sys.argv) > 4 else None
    work = pathlib.Path(workdir)
    work.mkdir(parents=True, exist_ok=True)
    lp = work / "model.lp"
    sol = work / "solution.txt"
    subprocess.run([binary, "export-mip", instance, "--out", str(lp)], check=True)

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.readModel(str(lp))
    h.run()
    status = h.modelStatusToString(h.getModelStatus())
    if status != "Optimal":
        sys.exit(f"HiGHS status {status}")
    objective = h.getInfo().objective_function_value
    names = h.getLp().col_names_
    values = h.getSolution().col_value
    sol.write_text("".join(f"{n} {v:.12g}\n" for n, v in zip(names, values)))

    out = subprocess.run([binary, "import-solution", instance, str(lp), str(sol)], capture_output=True, text=True)
    print(f"HiGHS objective {objective:.9g}")
    print(out.stdout, end="")
    if out.returncode != 0:
        sys.exit(f"import-solution exit {out.returncode}: {out.stderr}")
    if expected is not None:
        if abs(objective - float(expected)) > 1e-6:
            sys.exit(f"objective {objective} differs from {expected}")
        if f"makespan {expected}" not in out.stdout:
            sys.exit("imported makespan differs")


if __name__ == "__main__":
    main()
