#!/usr/bin/env python3
"""Offline zero-data generator.

Computes nontrivial zeta zeros rho = 1/2 + i*gamma together with
alpha = |rho * zeta'(rho)|^-1 and psi = arg(rho * zeta'(rho)), and writes
them as a line-based decimal text file consumed by the `ingest` stage.

This is deliberately independent from the C++ code: it relies on mpmath's
zetazero/zeta implementations and is only run offline to prepare fixtures.

Usage: gen_zeros.py FIRST LAST DIGITS OUTFILE
Lines are appended in index order, flushed per zero, so a partially
written file is always a valid prefix dataset.
"""

import sys
import time

import mpmath as mp


def main() -> int:
    if len(sys.argv) != 5:
        print(__doc__, file=sys.stderr)
        return 2
    first, last, digits = int(sys.argv[1]), int(sys.argv[2]), int(sys.argv[3])
    out = sys.argv[4]

    mp.mp.dps = digits + 15

    mode = "a" if first > 1 else "w"
    t0 = time.time()
    with open(out, mode) as fh:
        if mode == "w":
            fh.write("# zeta zero data: gamma alpha psi\n")
            fh.write("# generator: mpmath %s zetazero/zeta(derivative=1), dps=%d\n"
                     % (mp.__version__, mp.mp.dps))
            fh.write("# precision_digits: %d\n" % digits)
            fh.write("# index_range: %d %d\n" % (first, last))
        for n in range(first, last + 1):
            rho = mp.zetazero(n)
            w = rho * mp.zeta(rho, derivative=1)
            gamma = rho.imag
            alpha = 1 / abs(w)
            psi = mp.arg(w)
            fh.write("%s %s %s\n" % (mp.nstr(gamma, digits),
                                     mp.nstr(alpha, digits),
                                     mp.nstr(psi, digits)))
            fh.flush()
            if n % 100 == 0:
                print("zero %d (gamma=%.3f) %.1fs" % (n, gamma, time.time() - t0),
                      flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
