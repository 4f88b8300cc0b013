"""``semantrix`` command line: build, query, generate, bench, inspect."""

from __future__ import annotations

import argparse
import logging
import math
import sys

from . import container
from .bench import STRUCTURES, build_structure, rows_to_csv, run_bench
from .ingest import IngestError, LabelDictionary, discretize, matrix_to_csv, parse_segments
from .synth import PRESETS, generate_preset

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

QUERY_USAGE = """queries:
  at OBJ IVL                 activity of one object at one interval
  range OBJ I1 I2            activity runs of one object over [I1, I2]
  pattern A1,A2,...          occurrences of consecutive activity runs
  agg ACT J1 J2 I1 I2        cells of ACT for objects J1..J2, intervals I1..I2
  dur ACT J1 J2 I1 I2        the same, in minutes
  who ACT I1 I2              objects performing ACT at least once in [I1, I2]"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def run_query(structure, tokens) -> str:
    if not tokens:
        raise UsageError("empty query")
    kind, args = tokens[0], tokens[1:]
    arity = {"at": 2, "range": 3, "pattern": 1, "agg": 5, "dur": 5, "who": 3}
    if kind not in arity:
        raise UsageError(f"unknown query {kind!r}")
    if len(args) != arity[kind]:
        raise UsageError(f"{kind} takes {arity[kind]} argument(s), got {len(args)}")
    try:
        if kind == "pattern":
            return str(structure.pattern_count([int(a) for a in args[0].split(",")]))
        nums = [int(a) for a in args]
    except ValueError:
        raise UsageError(f"non-integer argument in {' '.join(tokens)!r}") from None
    if kind == "at":
        return str(structure.activity_at(*nums))
    if kind == "range":
        return "\n".join(f"{a},{s},{e}" for a, s, e in structure.activities_in_range(*nums))
    if kind in ("agg", "dur"):
        a, j1, j2, i1, i2 = nums
        fn = structure.aggregate_count if kind == "agg" else structure.aggregate_duration
        return str(fn(a, (j1, j2), (i1, i2)))
    a, i1, i2 = nums
    return str(structure.objects_performing(a, (i1, i2)))


def _load_matrix(args):
    if args.preset:
        return generate_preset(args.preset, seed=args.seed, num_objects=args.objects)
    with open(args.csv, encoding="utf-8") as fh:
        records = parse_segments(fh.read())
    if not records:
        raise IngestError(f"{args.csv}: no segments")
    if args.labels:
        with open(args.labels, encoding="utf-8") as fh:
            labels = LabelDictionary([ln.strip() for ln in fh if ln.strip()])
    elif args.open_labels:
        labels = LabelDictionary()
    else:
        labels = LabelDictionary.fleet()
    width = args.interval_len * 60
    epoch = args.epoch if args.epoch is not None else min(r.start_ts for r in records)
    intervals = args.intervals or max(1, math.ceil((max(r.end_ts for r in records) - epoch) / width))
    m, skipped = discretize(records, epoch, args.interval_len, intervals, labels, args.fill_id)
    if skipped:
        print(f"skipped {skipped} segment(s) outside the window", file=sys.stderr)
    return m


def cmd_build(args):
    m = _load_matrix(args)
    s = build_structure(m, args.structure, args.diff_period, args.fm_sample_rate)
    total = container.save(s, args.output)
    for name, size in s.space().items():
        print(f"{name}\t{size}")
    print(f"total\t{total}")


def cmd_query(args):
    s = container.load(args.container)
    print(run_query(s, args.query))


def cmd_generate(args):
    m = generate_preset(args.preset, seed=args.seed, num_objects=args.objects)
    text = matrix_to_csv(m)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bench(args):
    m = generate_preset(args.preset, seed=args.seed, num_objects=args.objects)
    structures = args.structures.split(",")
    for name in structures:
        if name not in STRUCTURES:
            raise UsageError(f"unknown structure {name!r}")
    rows = run_bench(m, structures, args.types.split(","), args.queries, args.query_seed,
                     args.diff_period, check=args.check)
    text = rows_to_csv(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_inspect(args):
    s = container.load(args.container)
    m = s.meta
    print(f"structure\t{s.tag}")
    print(f"objects\t{m.num_objects}\nintervals\t{m.num_intervals}\nactivities\t{m.sigma}")
    print(f"epoch\t{m.epoch}\ninterval_len\t{m.interval_len}")
    for i, label in enumerate(m.labels, start=1):
        print(f"label {i}\t{label}")
    for name, size in s.space().items():
        print(f"bytes {name}\t{size}")


def make_parser():
    p = _Parser(prog="semantrix", description="Compressed semantic-trajectory warehouse.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build a container from CSV segments or a synthetic preset")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--csv", help="segments CSV with header object,start,end,label")
    src.add_argument("--preset", choices=sorted(PRESETS))
    b.add_argument("--structure", choices=STRUCTURES, default="semantrix-plain")
    b.add_argument("--diff-period", type=int, default=4)
    b.add_argument("--fm-sample-rate", type=int, default=32)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--objects", type=int, default=20)
    b.add_argument("--epoch", type=int, help="start of interval 1, Unix seconds (default: earliest segment)")
    b.add_argument("--interval-len", type=int, default=5, help="minutes per interval")
    b.add_argument("--intervals", type=int, help="number of intervals (default: cover all segments)")
    labels = b.add_mutually_exclusive_group()
    labels.add_argument("--labels", help="file with one activity label per line, in id order")
    labels.add_argument("--open-labels", action="store_true", help="assign ids in first-seen order")
    b.add_argument("--fill-id", type=int, help="activity for uncovered cells")
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="answer one query", epilog=QUERY_USAGE,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    q.add_argument("container")
    q.add_argument("query", nargs=argparse.REMAINDER)
    q.set_defaults(func=cmd_query)

    g = sub.add_parser("generate", help="dump a synthetic preset as segments CSV")
    g.add_argument("--preset", choices=sorted(PRESETS), default="month")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--objects", type=int, default=20)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    be = sub.add_parser("bench", help="compare space and query time across structures")
    be.add_argument("--preset", choices=sorted(PRESETS), default="month")
    be.add_argument("--seed", type=int, default=0, help="dataset seed")
    be.add_argument("--objects", type=int, default=20)
    be.add_argument("--structures", default=",".join(STRUCTURES))
    be.add_argument("--types", default="at,pattern,agg",
                    help="comma list of at, pattern, agg, agg:JxW")
    be.add_argument("--queries", type=int, default=10_000, help="queries per type")
    be.add_argument("--query-seed", type=int, default=0)
    be.add_argument("--diff-period", type=int, default=4)
    be.add_argument("--check", action="store_true", help="fail if structures disagree")
    be.add_argument("-o", "--output")
    be.set_defaults(func=cmd_bench)

    i = sub.add_parser("inspect", help="print container metadata and component sizes")
    i.add_argument("container")
    i.set_defaults(func=cmd_inspect)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"semantrix: {exc}\n{QUERY_USAGE}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, IngestError, container.ContainerError, ValueError, IndexError) as exc:
        print(f"semantrix: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
