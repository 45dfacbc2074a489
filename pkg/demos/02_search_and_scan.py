"""Decide arrowing with the pruned search and scan for BR_m values."""
from bramsey import Budget, ProblemSpec, brm_scan, decide_arrow, verify
from bramsey.search import rule_max_degree, rule_union_lookahead

spacer = "_" * 60

print("\nK_{2,2} versus K_{3,3}: scanning n for each m")
for m in range(2, 9):
    result = brm_scan(m, 2, 3, 1, 16)
    print(f"  m={m}: value {result.value}")

print(spacer)
spec = ProblemSpec(7, 8, 2, 3)
out = decide_arrow(spec)
print(f"\n{spec}: {out.status.value} after {out.stats.nodes} nodes")
print("a good coloring it found:", out.witness.to_rows(one_based=True))
print("re-verified:", verify(out.witness, spec).good)

print(spacer)
print("\nThe K_{6,6} bounds. With only the degree and union rules the search")
print("runs out of budget; the column-counting rule settles them at the root.")
for m, n in ((7, 57), (8, 45)):
    spec = ProblemSpec(m, n, 2, 6)
    weak = decide_arrow(spec, Budget(max_seconds=2), rules=(rule_max_degree, rule_union_lookahead))
    strong = decide_arrow(spec)
    print(f"  {spec}: two rules -> {weak.status.value}; all rules -> {strong.status.value}"
          f" ({strong.stats.nodes} nodes, prunes {dict(strong.stats.prunes)})")

print(spacer)
spec = ProblemSpec(8, 44, 2, 6)
out = decide_arrow(spec, Budget(max_seconds=300))
print(f"\n{spec}: {out.status.value} in {out.stats.elapsed:.1f}s, {out.stats.nodes} nodes")
if out.witness is not None:
    print("row degrees of the coloring found:", out.witness.degrees())
