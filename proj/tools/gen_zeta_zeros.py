#!/usr/bin/env python3
# Regenerates data/zeta_zeros_100k.txt: ordinates of the first N nontrivial
# zeros of the Riemann zeta function, computed with certified ball arithmetic
# (python-flint / Arb, acb.zeta_zeros).  Usage: gen_zeta_zeros.py [N] [OUT]
import sys

import flint

count = int(sys.argv[1]) if len(sys.argv) > 1 else 100000
out = sys.argv[2] if len(sys.argv) > 2 else "zeta_zeros_100k.txt"
flint.ctx.prec = 96
chunk = 1000

with open(out, "w") as fh:
    fh.write("# Ordinates gamma_n of the first %d nontrivial zeros rho = 1/2 + i*gamma_n\n" % count)
    fh.write("# of the Riemann zeta function, ascending.\n")
    fh.write("# Source: Arb acb_dirichlet_zeta_zeros via python-flint %s, 96-bit balls;\n" % flint.__version__)
    fh.write("# every ball radius < 1e-22, printed to 20 significant digits.\n")
    for start in range(1, count + 1, chunk):
        n = min(chunk, count + 1 - start)
        for z in flint.acb.zeta_zeros(start, n):
            im = z.imag
            assert im.rad() < 1e-22
            fh.write(im.mid().str(20, radius=False) + "\n")
        fh.flush()
