# Summed area tables: constant-time rectangle sums, and the row-sampled
# difference encoding that trades a second read per corner for space.
#
# Run with:  python demos/02_summed_area_tables.py

import numpy as np

from semantrix import build_diff_sat, build_sat

A = np.array([
    [3, 1, 2, 1],
    [3, 3, 2, 3],
    [2, 2, 3, 2],
    [3, 3, 2, 2],
    [2, 2, 2, 3],
    [3, 2, 2, 2],
    [3, 3, 2, 1],
])
sat = build_sat(A)
print(sat.M)

# Sum of rows 3-7, columns 2-4: four reads and inclusion-exclusion.
corners = sat.cell(7, 4), sat.cell(7, 1), sat.cell(2, 4), sat.cell(2, 1)
print("M[7,4], M[7,1], M[2,4], M[2,1] =", corners)
print("count_range([3,2],[7,4]) =", sat.count_range(3, 2, 7, 4), "direct:", A[2:7, 1:4].sum())

# An indicator matrix like the ones Semantrix keeps per activity:
# 20 trucks by one month of 5-minute intervals.
rng = np.random.default_rng(0)
ind = (rng.random((20, 2688)) < 0.2).astype(int)
plain = build_sat(ind)
print(f"\nplain table: {plain.nbytes:,} bytes")
for s in (1, 2, 4, 8):
    d = build_diff_sat(ind, s)
    same = all(d.count_range(1, y, 20, y + 11) == plain.count_range(1, y, 20, y + 11) for y in range(1, 2600, 37))
    print(f"diff s={s}: {d.nbytes:>9,} bytes  ({d.nbytes / plain.nbytes:.0%})  widths={d.widths[:3]}...  agrees={same}")
