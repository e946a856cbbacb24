"""Random sweep: normal form tables against the brute-force evaluator.

    python scripts/soundness_sweep.py --count 300 --depth 4 --seed 0

For each monoid and port-set size, draws ``--count`` formulas, normalizes
them and compares the normal form's table with the semantic table over all
of C(P).  Prints counts and timings; exits nonzero on any mismatch.
"""

import argparse
import random
import sys
import time

from wpcl.errors import WpclError
from wpcl.generate import random_wpcl
from wpcl.normal_form import fnf_table, normalize
from wpcl.pvm import BUILTIN_NAMES, builtin_monoid
from wpcl.semantics import semantic_table
from wpcl.textio import print_wpcl


def run(m, n_ports, count, depth, seed):
    ports = ("p", "q", "r", "s")[:n_ports]
    rng = random.Random(f"{seed}-{m.name}-{n_ports}")
    checked = refused = 0
    bad = []
    t_table = t_norm = 0.0
    for _ in range(count):
        z = random_wpcl(rng, ports, m, depth=depth, fullval=True)
        t0 = time.perf_counter()
        try:
            want = semantic_table(z, ports, m).entries
        except WpclError:
            want = None
        t1 = time.perf_counter()
        try:
            got = fnf_table(normalize(z, ports, m), ports, m)
        except WpclError:
            got = None
        t2 = time.perf_counter()
        t_table += t1 - t0
        t_norm += t2 - t1
        if want is None and got is None:
            refused += 1
        elif want != got:
            bad.append(print_wpcl(z))
        else:
            checked += 1
    return checked, refused, bad, t_table, t_norm


def main():
    ap = argparse.ArgumentParser(description="Normal-form soundness sweep.")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--ports", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    failed = False
    print(f"{'monoid':<14}{'|P|':>4}{'checked':>9}{'refused':>9}{'bad':>5}{'table s':>9}{'nf s':>8}")
    for name in BUILTIN_NAMES:
        m = builtin_monoid(name)
        for n in args.ports:
            checked, refused, bad, tt, tn = run(m, n, args.count, args.depth, args.seed)
            print(f"{name:<14}{n:>4}{checked:>9}{refused:>9}{len(bad):>5}{tt:>9.2f}{tn:>8.2f}")
            for text in bad[:3]:
                print(f"    mismatch: {text}")
            failed |= bool(bad)
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
