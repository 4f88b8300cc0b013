# A two-truck, five-interval warehouse, built and queried by hand.
#
# Run with:  python demos/01_worked_example.py

import numpy as np

from semantrix import ActivityMatrix, build_semantrix

# Rows are trucks, columns are 5-minute intervals, cells are activity ids.
m = ActivityMatrix(np.array([[3, 3, 7, 7, 7],
                             [7, 1, 1, 3, 3]]), sigma=7)
print("row-major sequence:", m.os.tolist())

sx = build_semantrix(m)

# B marks where a run starts (an activity switch or a new truck);
# H keeps one activity id per run.
print("B:", sx.B.to_numpy().tolist())
print("H:", sx.H.tolist())

# The FM-index sees the runs with a separator (id 8 here) after each truck,
# so patterns never straddle two trucks.
print("indexed runs:", sx.fm.reconstruct().tolist())

# Individual queries: one rank over B, one read of H.
print("truck 2 at interval 1:", sx.activity_at(2, 1))
print("truck 2, intervals 1-5:", sx.activities_in_range(2, 1, 5))

# Pattern queries run over consecutive runs.
print("how often is 1 followed by 3:", sx.pattern_count([1, 3]))
print("where does 7 -> 1 happen:", sx.pattern_occurrences([7, 1]))
print("7 -> 7 (never, runs are maximal):", sx.pattern_count([7, 7]))

# Aggregates read four cells of one summed area table.
print("cells of activity 3, both trucks, intervals 4-5:", sx.aggregate_count(3, (1, 2), (4, 5)))
print("  ... in minutes:", sx.aggregate_duration(3, (1, 2), (4, 5)))
print("trucks doing activity 3 at some point:", sx.objects_performing(3, (1, 5)))
print("S_3 prefix sums:\n", sx.S[2].M)
