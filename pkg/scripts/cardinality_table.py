"""Per-degree sizes of the product cells, the pullback, and the comparison fibres.

Runs for several indet counts per factor to show where injectivity breaks.
"""

import argparse

from computads.counterexample import build_paper_objects, cardinality_table, cell_square


def names(prefix, n):
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=5)
    ap.add_argument("--indets", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()

    for na in args.indets:
        for nb in args.indets:
            scene = build_paper_objects(names("a", na), names("b", nb))
            rows = cardinality_table(cell_square(scene, args.max_degree), args.max_degree)
            print(f"|A| = {na}, |B| = {nb}")
            print("  degree  product  pullback  image  max_fiber")
            for r in rows:
                print(
                    f"  {r.degree:>6}  {r.product_cells:>7}  {r.pullback_elements:>8}"
                    f"  {r.image_size:>5}  {r.max_fiber:>9}"
                )
            first_bad = next((r.degree for r in rows if not r.injective), None)
            print(f"  first non-injective degree: {first_bad}\n")


if __name__ == "__main__":
    main()
