"""Watch the prune rules fire on a small case and confirm each firing with brute force."""
from collections import Counter

from bramsey import ProblemSpec, decide_arrow
from bramsey.oracle import count_good_completions

spec = ProblemSpec(4, 5, 2, 3)
events = []
out = decide_arrow(spec, hook=lambda name, rows, d: events.append((name, rows, d)))
print(f"\n{spec}: {out.status.value}; firings per rule: {Counter(e[0] for e in events)}")

print("\nFirst few firings (rows as bit masks, degree for degree-level rules):")
for name, rows, degree in events[:8]:
    print(f"  {name:16} rows={[bin(r) for r in rows]} degree={degree}")

print("\nFor each node-level firing, count good completions by brute force.")
print("The search only adds rows of nonincreasing degree, so later rows are capped.")
for name, rows, degree in events:
    if degree is None and name != "partial_blue":
        count, _ = count_good_completions(spec, rows, max_degree=rows[-1].bit_count())
        print(f"  {name:16} {[bin(r) for r in rows]}: {count} good completions")
