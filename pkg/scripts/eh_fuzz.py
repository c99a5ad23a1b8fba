"""Fuzz normal forms against single rewrite steps on random terms."""

import argparse
import random
from collections import Counter

from computads.cells2 import interchange_rewrites, normalize
from computads.counterexample import eh_computad
from computads.randterms import random_eh_term


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    K = eh_computad("x", ["a1", "a2", "a3"])
    rng = random.Random(args.seed)
    by_rule = Counter()
    failures = 0
    for _ in range(args.trials):
        t = random_eh_term(rng, K, max_depth=args.depth)
        nf = normalize(t, K)
        for rule, s in interchange_rewrites(t):
            by_rule[rule] += 1
            failures += normalize(s, K) != nf
    for rule, n in sorted(by_rule.items()):
        print(f"{rule:<12} {n:>8}")
    print(f"failures: {failures}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
