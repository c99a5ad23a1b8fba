"""Build the two-indet scene, run the full check, and print the report.

    python3 scripts/replicate_counterexample.py --max-degree 4 --format json
"""

import argparse
import time

from computads.cli import RunConfig, emit_report
from computads.counterexample import verify_counterexample


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    args = ap.parse_args()
    cfg = RunConfig(degree_bound=args.max_degree, output_format=args.format)

    start = time.perf_counter()
    report = verify_counterexample(cfg.degree_bound)
    elapsed = time.perf_counter() - start

    print(emit_report(report, cfg.output_format))
    if cfg.output_format == "text":
        print(f"\n({elapsed:.3f} s)")
    raise SystemExit(0 if report.confirmed else 1)


if __name__ == "__main__":
    main()
