"""Run structure-lab suites and print a one-line census per suite.

    python3 scripts/lemma_census.py --size 100 --out census.json
    python3 scripts/lemma_census.py --suites bull-growth prop1 --threads 4
"""

import argparse
import json
import time

from mwistruct.lab.suites import SUITES, config_for, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suites", nargs="+", default=list(SUITES))
    ap.add_argument("--size", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", help="write all LemmaReports as JSON")
    args = ap.parse_args()
    reports = []
    for name in args.suites:
        cfg = config_for(name, size=args.size, seed=args.seed, threads=args.threads)
        start = time.perf_counter()
        rep = run_suite(name, cfg)
        notes = ", ".join(f"{k}={v}" for k, v in sorted(rep.notes.items()))
        print(f"{name:32} {rep.verdict:4} checked={rep.checked:<6} skipped={rep.skipped:<5} {time.perf_counter() - start:6.1f}s  {notes}")
        reports.append(rep.to_dict())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
