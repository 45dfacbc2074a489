"""Minimal DIMACS solver front end over python-sat, for use as a CEGAR harness.

    python -m bramsey.pysat_runner [--solver NAME] instance.cnf

Prints ``s SATISFIABLE`` with one ``v`` line (every declared variable), or
``s UNSATISFIABLE``; exits 10 / 20 like most SAT solvers.
"""

import argparse
import sys


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="bramsey.pysat_runner")
    parser.add_argument("cnf_path")
    parser.add_argument("--solver", default="cadical153")
    args = parser.parse_args(argv)

    from pysat.formula import CNF
    from pysat.solvers import Solver

    cnf = CNF(from_file=args.cnf_path)
    declared = cnf.nv
    with open(args.cnf_path) as fh:
        for line in fh:
            if line.startswith("p cnf"):
                declared = max(declared, int(line.split()[2]))
                break
    with Solver(name=args.solver, bootstrap_with=cnf.clauses) as solver:
        sat = solver.solve()
        model = solver.get_model() if sat else None
    if not sat:
        print("s UNSATISFIABLE")
        return 20
    value = {abs(lit): lit > 0 for lit in model or ()}
    lits = [v if value.get(v, False) else -v for v in range(1, declared + 1)]
    print("s SATISFIABLE")
    print("v " + " ".join(map(str, lits)) + " 0")
    return 10


if __name__ == "__main__":
    sys.exit(main())
