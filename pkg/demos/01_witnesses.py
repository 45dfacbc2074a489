"""Check the two bundled good colorings and the star coloring."""
import numpy as np

from bramsey import ProblemSpec, min_union, star_witness, verify, witness_7_56, witness_8_44
from bramsey.core import pairwise_intersections

spacer = "_" * 60

w = witness_7_56()
print(f"\n{w.name}: a 7 x 56 red/blue coloring, rows are red neighbourhoods")
matrix = w.coloring.to_matrix()
print("red degrees per row:", matrix.sum(axis=1))
print("pairwise common red columns (the diagonal is the degree):")
print(pairwise_intersections(w.coloring))
print("\nTwo rows never share two red columns, so there is no red K_{2,2}.")
size, rows = min_union(w.coloring, 6)
print(f"Six rows together cover at least {size} columns (e.g. rows {rows}),")
print(f"leaving at most {56 - size} blue columns: too few for a blue K_{{6,6}}.")
print(verify(w.coloring, w.spec).summary())

print(spacer)
w = witness_8_44()
print(f"\n{w.name}: 8 x 44")
print("column red counts:", np.bincount(w.coloring.to_matrix().sum(axis=0)))
print(verify(w.coloring, w.spec).summary())

print(spacer)
print("\nAdding a 57th all-blue column to the 7 x 56 coloring breaks it:")
wide = witness_7_56().coloring.padded(57)
report = verify(wide, ProblemSpec(7, 57, 2, 6))
print(report.summary())

print(spacer)
print("\nWith at most six rows, one all-red row keeps every K_{6,6} from being blue:")
for n in (6, 57, 512):
    print(f"  star 6 x {n}: good = {verify(star_witness(6, n), ProblemSpec(6, n, 2, 6)).good}")
