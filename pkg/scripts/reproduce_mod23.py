"""Rebuild the generators and certify the mod-23 congruence for X35.

Usage:

    python3 scripts/reproduce_mod23.py [--trace-bound N] [--cache-dir DIR]

Prints the verification certificate and a short build summary.  Exit
status: 0 certified, 1 refuted, 2 insufficient bound.
"""

import argparse
import sys
import time

from siegel2.congruence import CERTIFIED, REFUTED, verify_x35_mod23
from siegel2.igusa import ensure_generator_set
from siegel2.reference import x35_reference_violations


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trace-bound", type=int, default=12)
    ap.add_argument("--cache-dir", default=None)
    args = ap.parse_args(argv)

    start = time.perf_counter()
    gen, cached = ensure_generator_set(args.trace_bound, args.cache_dir)
    built = time.perf_counter() - start

    source = "cache" if cached else "fresh build"
    print(f"# generators at trace bound {gen.trace_bound} ({source}, {built:.2f}s)")
    print(f"# X35 stored terms: {len(gen.x35.coeffs)}")

    if gen.trace_bound >= 9:
        bad = x35_reference_violations(gen.x35)
        status = "ok" if not bad else f"MISMATCH at {tuple(bad[0][0])}"
        print(f"# reference coefficients to trace 9: {status}")
    print()

    cert = verify_x35_mod23(gen)
    print(cert.to_text(), end="")
    return {CERTIFIED: 0, REFUTED: 1}.get(cert.verdict, 2)


if __name__ == "__main__":
    sys.exit(main())
