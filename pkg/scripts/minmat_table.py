"""Print the p-minimum matrix of each generator for p in {5, 7, 11, 13, 23}.

Usage:

    python3 scripts/minmat_table.py [--trace-bound N] [--cache-dir DIR]

Each generator's minimum is checked against the expected table; exit
status 1 on any mismatch.
"""

import argparse
import sys

from siegel2.congruence import min_matrix
from siegel2.igusa import ensure_generator_set
from siegel2.reference import MIN_MATRIX_REFERENCE

PRIMES = (5, 7, 11, 13, 23)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trace-bound", type=int, default=6)
    ap.add_argument("--cache-dir", default=None)
    args = ap.parse_args(argv)

    gen, _ = ensure_generator_set(args.trace_bound, args.cache_dir)
    header = ["form"] + [f"p={p}" for p in PRIMES] + ["expected"]
    rows = [header]
    failures = 0
    for name, want in MIN_MATRIX_REFERENCE.items():
        row = [name]
        for p in PRIMES:
            got = min_matrix(gen.atom(name).reduce_mod(p)).value
            row.append(str(tuple(got)))
            if got != want:
                failures += 1
        row.append(str(tuple(want)))
        rows.append(row)

    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    if failures:
        print(f"\n{failures} mismatches", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
