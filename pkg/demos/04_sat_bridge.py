"""Encode to DIMACS and decide small cases with a lazy CEGAR loop.

Needs a solver: set BRAMSEY_SOLVER_CMD (e.g. "kissat -q {cnf_path}") or
install the python-sat extra.
"""
import importlib.util
import sys

from bramsey import ProblemSpec, SolverHarness, cegar, encode_cnf
from bramsey.satbridge import CegarTrace

spec = ProblemSpec(3, 3, 2, 2)
doc = encode_cnf(spec)
print(doc.to_dimacs()[:300], "...")

big = encode_cnf(ProblemSpec(7, 57, 2, 6), "red_only")
print(f"\n7 x 57 red-only encoding: {big.num_vars} variables, {len(big.clauses)} clauses")

harness = SolverHarness.from_env()
if harness is None and importlib.util.find_spec("pysat"):
    harness = SolverHarness(f"{sys.executable} -m bramsey.pysat_runner {{cnf_path}}")
if harness is None:
    print("\nno solver available; skipping the CEGAR part")
    raise SystemExit(0)

for spec in (ProblemSpec(3, 4, 2, 2), ProblemSpec(3, 5, 2, 2)):
    trace = CegarTrace()
    out = cegar(spec, harness, trace=trace)
    print(f"\n{spec}: {out.status.value} after {out.stats.nodes} solver calls")
    for xs, ys in trace.copies[:4]:
        print(f"  blocked the blue copy rows {xs} x columns {ys}")
    if out.witness is not None:
        print("  good coloring:", out.witness.to_rows(one_based=True))
