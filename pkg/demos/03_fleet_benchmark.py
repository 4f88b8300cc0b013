# A synthetic month of a 20-truck fleet: compare the four structures on
# space and on the three query families.
#
# Run with:  python demos/03_fleet_benchmark.py

from semantrix import generate_preset
from semantrix.bench import run_bench
from semantrix.synth import mean_run_length

m = generate_preset("month", seed=1)
print(f"{m.num_objects} trucks x {m.num_intervals} intervals, mean run {mean_run_length(m):.1f} intervals")

# Pattern: "how many times was x followed by y"; aggregate: trucks j..j+2
# over a 12-interval hour. check=True cross-validates every answer.
rows = run_bench(m, queries=500, seed=1, check=True)

print(f"\n{'structure':<16}{'bytes':>12}")
for row in rows:
    if row.query_type == "space":
        print(f"{row.structure:<16}{row.bytes:>12,}")

print(f"\n{'structure':<16}{'query':<10}{'mean us':>10}{'median us':>11}")
for row in rows:
    if row.query_type != "space":
        print(f"{row.structure:<16}{row.query_type:<10}{row.mean_us:>10.2f}{row.median_us:>11.2f}")

# Aggregates on a larger window: naive scans every cell, Semantrix reads four.
rows = run_bench(m, ("naive", "baseline+", "semantrix-plain"), ("agg:1x10", "agg:20x500"), queries=300)
print()
for row in rows:
    if row.query_type != "space":
        print(f"{row.structure:<16}{row.query_type:<12}{row.mean_us:>10.2f} us")
