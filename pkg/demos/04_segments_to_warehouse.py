# From timestamped activity segments to a saved, queryable container.
#
# Run with:  python demos/04_segments_to_warehouse.py

import tempfile
from pathlib import Path

from semantrix import build_semantrix, container, discretize, parse_segments
from semantrix.ingest import LabelDictionary

csv_text = """object,start,end,label
truck-a,2024-05-06T08:00:00Z,2024-05-06T08:32:00Z,Being at headquarters
truck-a,2024-05-06T08:32:00Z,2024-05-06T09:10:00Z,Normal transit on planned route
truck-a,2024-05-06T09:10:00Z,2024-05-06T09:55:00Z,Working at a customer place
truck-b,2024-05-06T08:00:00Z,2024-05-06T08:14:00Z,Being at headquarters
truck-b,2024-05-06T08:14:00Z,2024-05-06T08:41:00Z,Slow transit on planned route
truck-b,2024-05-06T08:41:00Z,2024-05-06T09:30:00Z,Normal transit on planned route
truck-b,2024-05-06T09:30:00Z,2024-05-06T09:45:00Z,Taking a break
"""

records = parse_segments(csv_text)
labels = LabelDictionary.fleet()
epoch = min(r.start_ts for r in records)

# Two hours of 5-minute cells; each cell takes the activity covering most of it,
# uncovered cells become "Undefined/unknown activity".
m, skipped = discretize(records, epoch, interval_len=5, num_intervals=24, labels=labels)
print("skipped:", skipped)
for row in m.cells:
    print("".join(str(a) for a in row))

sx = build_semantrix(m, "diff", diff_period=4)
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "fleet.smtx"
    size = container.save(sx, path)
    back = container.load(path)
    print(f"\nsaved {size} bytes, reloaded {back!r}")

    transit = labels.id("Normal transit on planned route")
    print("minutes of normal transit, both trucks, first hour:",
          back.aggregate_duration(transit, (1, 2), (1, 12)))
    print("truck-b runs in the first hour:")
    for a, first, last in back.activities_in_range(2, 1, 12):
        print(f"  {labels.label(a):<35} intervals {first}-{last}")
    hq, slow = labels.id("Being at headquarters"), labels.id("Slow transit on planned route")
    print("headquarters then slow transit:", back.pattern_occurrences([hq, slow]))
