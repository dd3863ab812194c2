"""Run the full verification suite and print one line per claim.

    python3 scripts/run_verification.py [--bound 25] [--trials 1000] [--json out.json]
"""
import argparse
import sys

from latgen.report import dump_json
from latgen.suite import SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=SuiteConfig.bound)
    ap.add_argument("--trials", type=int, default=SuiteConfig.trials)
    ap.add_argument("--samples", type=int, default=SuiteConfig.samples)
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=SuiteConfig.seed)
    ap.add_argument("--json", help="also write the full result here")
    args = ap.parse_args()
    sc = SuiteConfig(bound=args.bound, trials=args.trials, samples=args.samples, seed=args.seed)
    result = run_suite(sc)
    for rec in sorted(result.records, key=lambda r: r.claim_id):
        print(f"{rec.status:18s} {rec.elapsed:7.2f} s  {rec.claim_id}")
    print(f"{len(result.records)} claims, {len(result.failed())} failed")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dump_json(result.to_json(timings=True)))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
