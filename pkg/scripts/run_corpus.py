#!/usr/bin/env python3
"""Sweep the full pushforward corpus through the pipeline and cross-check it.

Each corpus instance is a linear constant-coefficient equation pushed through
a point transformation, so the expected certificate case and (in the
constant-coefficient case) the expected affine root class are known ahead of
time.  The sweep re-derives everything from the image equation alone and
compares.

    python3 scripts/run_corpus.py             # aligned table + summary
    python3 scripts/run_corpus.py --json      # machine-readable lines
"""
import argparse
import json
import sys
import time

from lieode.parsing import print_ode
from lieode.pipeline import analyze
from lieode.pushforward import default_corpus
from lieode.recovery import affine_class


def check_instance(inst):
    t0 = time.perf_counter()
    report = analyze(inst.ode)
    elapsed = time.perf_counter() - t0
    problems = []
    if report.certificate.case != inst.expected_case:
        problems.append("case %s != expected %s"
                        % (report.certificate.case, inst.expected_case))
    if inst.expected_case == "constant-coefficients":
        want = affine_class(inst.source_poly)
        if report.recovery is None or report.recovery.affine != want:
            problems.append("recovered class differs from source")
    return report, elapsed, problems


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true",
                    help="one JSON object per line instead of the table")
    args = ap.parse_args(argv)

    corpus = default_corpus()
    failures = 0
    total = 0.0
    worst = 0.0
    for idx, inst in enumerate(corpus, 1):
        report, elapsed, problems = check_instance(inst)
        total += elapsed
        worst = max(worst, elapsed)
        if args.json:
            print(json.dumps({
                "index": idx,
                "label": inst.label,
                "ode": print_ode(inst.ode),
                "n": report.ode.n,
                "m": report.m,
                "case": report.certificate.case,
                "expected_case": inst.expected_case,
                "seconds": round(elapsed, 4),
                "problems": problems,
            }, sort_keys=True))
        else:
            status = "ok" if not problems else "MISMATCH: " + "; ".join(problems)
            print("%3d  n=%d m=%d %-24s %6.3fs  %-44s %s"
                  % (idx, report.ode.n, report.m, report.certificate.case,
                     elapsed, inst.label, status))
        failures += bool(problems)

    if not args.json:
        print()
        print("%d instances, %d mismatches, %.2fs total (worst %.3fs)"
              % (len(corpus), failures, total, worst))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
