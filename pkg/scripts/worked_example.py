"""Normalize the valuation example over three ports and check it against the oracle.

    python scripts/worked_example.py [--d1 1 --d2 2 --d3 4] [-m max-avg-plus]
"""

import argparse

from wpcl.normal_form import fnf_table, normalize
from wpcl.pvm import builtin_monoid, format_value, parse_value
from wpcl.semantics import semantic_table
from wpcl.textio import parse_wpcl, print_fnf

TEMPLATE = "star((w({d1}) (x) [m: p] (#) w({d2}) (x) ([m: q] (+) [m: r])) (+) w({d3}) (x) [m: p . q + m: q . r])"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d1", type=parse_value, default=parse_value("1"))
    ap.add_argument("--d2", type=parse_value, default=parse_value("2"))
    ap.add_argument("--d3", type=parse_value, default=parse_value("4"))
    ap.add_argument("-m", "--monoid", default="max-avg-plus")
    args = ap.parse_args()

    m = builtin_monoid(args.monoid)
    ports = ("p", "q", "r")
    text = TEMPLATE.format(**{k: format_value(getattr(args, k)) for k in ("d1", "d2", "d3")})
    z = parse_wpcl(text, ports)
    fnf = normalize(z, ports, m)
    agrees = fnf_table(fnf, ports, m) == semantic_table(z, ports, m).entries
    print(f"formula: {text}")
    print(f"monoid:  {m.name}")
    print(print_fnf(fnf))
    print(f"terms: {len(fnf)}  oracle agrees: {agrees}")


if __name__ == "__main__":
    main()
