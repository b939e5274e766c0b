#!/usr/bin/env python3
"""Export the test corpus from KnotInfo/LinkInfo.

Writes tab-separated files used as reference data by the test suite:

  tests/data/knots.tsv  name, pd, signature, conway, determinant
                        (prime knots up to 10 crossings)
  tests/data/links.tsv  name, pd, components, signature, conway
                        (prime links up to 9 crossings)

Signatures are stored in the convention where the positive trefoil has
signature +2, the opposite of the one used by KnotInfo.
"""

import argparse
import os
import re

from database_knotinfo import link_list


def pd_from_text(text):
    return [list(map(int, c)) for c in re.findall(r"\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]", text)]


def pd_from_vector(text):
    return [list(map(int, c)) for c in re.findall(r"\{\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\}", text)]


def pd_string(pd):
    return "[" + ",".join("[" + ",".join(map(str, c)) + "]" for c in pd) + "]"


def clean(poly):
    return re.sub(r"\s+", "", poly or "")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="tests/data")
    ap.add_argument("--knot-crossings", type=int, default=10)
    ap.add_argument("--link-crossings", type=int, default=9)
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    with open(os.path.join(args.outdir, "knots.tsv"), "w") as f:
        for k in link_list():
            m = re.fullmatch(r"(\d+)_(\d+)", k["name"])
            if not m or not 3 <= int(m.group(1)) <= args.knot_crossings:
                continue
            pd = pd_from_text(k["pd_notation"])
            f.write("\t".join([k["name"], pd_string(pd), str(-int(k["signature"])),
                               clean(k["conway_polynomial"]), str(k["determinant"])]) + "\n")

    with open(os.path.join(args.outdir, "links.tsv"), "w") as f:
        for k in link_list(proper_links=True):
            m = re.fullmatch(r"L(\d+)[an]\d+.*", k["name"])
            if not m or int(m.group(1)) > args.link_crossings:
                continue
            pd = pd_from_vector(k["pd_notation_vector"])
            f.write("\t".join([k["name"], pd_string(pd), str(k["components"]),
                               str(-int(k["signature"])), clean(k["conway_polynomial"])]) + "\n")


if __name__ == "__main__":
    main()
