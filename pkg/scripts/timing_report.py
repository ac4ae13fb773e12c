#!/usr/bin/env python3
"""Per-stage timing breakdown of the pipeline over the corpus.

Aggregates the stage timings every analysis run records (parse, determining,
completion, series, structure, certify, recovery) and prints totals, means,
and the slowest instances.

    python3 scripts/timing_report.py
    python3 scripts/timing_report.py --top 10
"""
import argparse
import sys
from collections import defaultdict

from lieode.pipeline import analyze
from lieode.pushforward import default_corpus

STAGES = ["parse", "determining", "completion", "series", "structure",
          "certify", "recovery"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--top", type=int, default=5,
                    help="how many slowest instances to list (default 5)")
    args = ap.parse_args(argv)

    totals = defaultdict(float)
    rows = []
    for inst in default_corpus():
        report = analyze(inst.ode)
        for stage in STAGES:
            totals[stage] += report.timings[stage]
        rows.append((report.timings["total"], inst.label, report.timings))

    grand = sum(totals.values())
    count = len(rows)
    print("stage         total      mean    share")
    for stage in STAGES:
        t = totals[stage]
        print("%-11s %7.3fs  %7.4fs  %5.1f%%"
              % (stage, t, t / count, 100.0 * t / grand if grand else 0.0))
    print("%-11s %7.3fs" % ("all", grand))

    rows.sort(reverse=True)
    print()
    print("slowest %d of %d instances:" % (min(args.top, count), count))
    for total, label, timings in rows[:args.top]:
        dominant = max(STAGES, key=lambda s: timings[s])
        print("  %6.3fs  %-46s (mostly %s)" % (total, label, dominant))
    return 0


if __name__ == "__main__":
    sys.exit(main())
