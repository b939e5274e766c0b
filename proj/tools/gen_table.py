#!/usr/bin/env python3
"""Build the bundled knot table (data/table.jsonl) from KnotInfo.

Each knot is written in the chirality of its KnotInfo PD code and, when
chiral, once more as its mirror image under the name "<name>*".  Every
entry is checked against knotpos (signature and determinant) before it
is written; a mismatch aborts the run.

    python3 tools/gen_table.py --knotpos build/knotpos --out data/table.jsonl
"""

import argparse
import json
import re
import subprocess
import sys

from database_knotinfo import link_list

# Table name -> KnotInfo name for knots beyond 8 crossings.
EXTRA = {
    "10_132": "10_132",
    "10_140": "10_140",
    "10_145": "10_145",
    "11_500": "11n_133",
    "12_1581": "12n_293",
}


def parse_pd(text):
    return [list(map(int, c)) for c in re.findall(r"\[(\d+),(\d+),(\d+),(\d+)\]", text)]


def pd_string(pd):
    return "[" + ",".join("[" + ",".join(map(str, c)) + "]" for c in pd) + "]"


def mirror_pd(pd):
    """Mirror a knot PD code by swapping the over and under strands."""
    n = 2 * len(pd)

    def follows(a, b):
        return b == a % n + 1

    out = []
    for a, b, c, d in pd:
        if follows(b, d) and not follows(d, b):
            out.append([b, c, d, a])
        elif follows(d, b) and not follows(b, d):
            out.append([d, a, b, c])
        else:
            raise ValueError("cannot orient over-strand in crossing %r" % ([a, b, c, d],))
    return out


def as_int(v):
    if v is None:
        return None
    v = str(v).strip()
    return int(v) if re.fullmatch(r"-?\d+", v) else None


def known_fields(k, mirrored):
    sign = 1 if mirrored else -1
    out = {}
    for key, src in [("genus", "three_genus"), ("g4", "smooth_four_genus"), ("unknotting", "unknotting_number")]:
        v = as_int(k.get(src))
        if v is not None:
            out[key] = v
    tau = as_int(k.get("ozsvath_szabo_tau_invariant"))
    if tau is not None:
        out["tau"] = -sign * tau
    if k.get("fibered") in ("Y", "N"):
        out["fibered"] = k["fibered"] == "Y"
    out["prime"] = True
    out["nontrivial"] = True
    sig = as_int(k.get("signature"))
    if sig is not None:
        out["signature"] = sign * sig
    det = as_int(k.get("determinant"))
    if det is not None:
        out["determinant"] = det
    return out


def computed(knotpos, pd):
    res = subprocess.run(
        [knotpos, "invariants", "--pd", pd_string(pd), "--signature", "--det", "--format", "json"],
        capture_output=True, text=True, check=True)
    inv = json.loads(res.stdout)["invariants"]
    return int(inv["signature"]), int(inv["det"])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--knotpos", default="build/knotpos")
    ap.add_argument("--out", default="data/table.jsonl")
    args = ap.parse_args()

    kl = link_list()
    by_name = {k["name"]: k for k in kl}
    names = []
    for k in kl:
        m = re.fullmatch(r"(\d)_(\d+)", k["name"])
        if m and 3 <= int(m.group(1)) <= 8:
            names.append((k["name"], k["name"]))
    names += list(EXTRA.items())

    lines = []
    for table_name, ki_name in names:
        k = by_name[ki_name]
        pd = parse_pd(k["pd_notation"])
        variants = [(table_name, pd, False)]
        if "amphicheiral" not in (k.get("symmetry_type") or ""):
            variants.append((table_name + "*", mirror_pd(pd), True))
        for name, code, mirrored in variants:
            known = known_fields(k, mirrored)
            sig, det = computed(args.knotpos, code)
            if known.get("signature") != sig or known.get("determinant") != det:
                sys.exit("%s: table says sigma=%s det=%s, computed sigma=%d det=%d"
                         % (name, known.get("signature"), known.get("determinant"), sig, det))
            lines.append(json.dumps({"name": name, "pd": pd_string(code), "known": known}))

    with open(args.out, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote %d entries to %s" % (len(lines), args.out))


if __name__ == "__main__":
    main()
