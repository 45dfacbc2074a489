"""Brute force over every coloring of a small K_{m,n}."""
from bramsey import ProblemSpec, brute_force_arrow

print(f"\n{'spec':>12}  arrows  good colorings")
for m, n, s in [(2, 2, 2), (2, 3, 2), (3, 3, 2), (3, 4, 2), (4, 4, 2), (4, 5, 2), (4, 6, 3)]:
    res = brute_force_arrow(ProblemSpec(m, n, 2, s))
    print(f"{f'({m},{n},2,{s})':>12}  {str(res.arrows):6}  {res.good_count}")

res = brute_force_arrow(ProblemSpec(3, 4, 2, 2))
print("\nleast good coloring of K_{3,4}:", res.example.to_rows(one_based=True))
