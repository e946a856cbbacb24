"""Evaluate every architecture fixture with its pinned weights.

    python scripts/architectures.py [--normalize]

Prints one row per (style, variant): monoid, value, seconds.  With
``--normalize`` the fixtures small enough for the port limit are also
normalized and the normal form is read back at the fixture configuration.
"""

import argparse
import time

from wpcl import archlib
from wpcl.errors import ResourceLimitError
from wpcl.normal_form import fnf_value, normalize
from wpcl.pvm import MAX_AVG_PLUS, MIN_AVG_PLUS, MIN_MAJ_MAX, format_value
from wpcl.semantics import wpcl_eval

CASES = [
    ("master-slave", "i", MAX_AVG_PLUS, lambda: archlib.build_master_slave(2, 2, archlib.MASTER_SLAVE_WEIGHTS, "i")),
    ("master-slave", "ii", MAX_AVG_PLUS, lambda: archlib.build_master_slave(2, 2, archlib.MASTER_SLAVE_WEIGHTS, "ii")),
    ("master-slave", "iii", MAX_AVG_PLUS, lambda: archlib.build_master_slave(2, 2, archlib.MASTER_SLAVE_WEIGHTS, "iii")),
    ("star", "n=3", MIN_AVG_PLUS, lambda: archlib.build_star(3, archlib.STAR3_WEIGHTS)),
]
for _i in range(1, 5):
    CASES.append(
        ("pubsub", f"subscriber_{_i}", MAX_AVG_PLUS,
         lambda i=_i: archlib.build_pubsub(2, 3, 4, archlib.PUBSUB_WEIGHTS, f"subscriber_{i}"))
    )
CASES.append(("pubsub", "total", MAX_AVG_PLUS, lambda: archlib.build_pubsub(2, 3, 4, archlib.PUBSUB_WEIGHTS, "total")))
for _j in range(1, 4):
    CASES.append(
        ("pubsub", f"topic_{_j}", MIN_MAJ_MAX,
         lambda j=_j: archlib.build_pubsub(2, 3, 4, archlib.PUBSUB_WEIGHTS, f"topic_{j}"))
    )
CASES.append(("pubsub", "prune", MIN_MAJ_MAX, lambda: archlib.build_pubsub(2, 3, 4, archlib.PUBSUB_WEIGHTS, "prune")))


def main():
    ap = argparse.ArgumentParser(description="Evaluate the architecture fixtures.")
    ap.add_argument("--normalize", action="store_true")
    args = ap.parse_args()
    print(f"{'style':<13}{'variant':<15}{'monoid':<14}{'value':>7}{'sec':>7}  normal form")
    for style, variant, m, build in CASES:
        t0 = time.perf_counter()
        fx = build()
        v = wpcl_eval(fx.config, fx.formula, m, fx.ports)
        note = ""
        if args.normalize:
            try:
                fnf = normalize(fx.formula, fx.ports, m)
                note = f"{len(fnf)} terms, value at config {format_value(fnf_value(fnf, fx.config, m))}"
            except ResourceLimitError as e:
                note = f"skipped ({e.option} {e.limit})"
        dt = time.perf_counter() - t0
        print(f"{style:<13}{variant:<15}{m.name:<14}{format_value(v):>7}{dt:>7.2f}  {note}")


if __name__ == "__main__":
    main()
