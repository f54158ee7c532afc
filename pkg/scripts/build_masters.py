#!/usr/bin/env python3
"""Build masters from vector component sets and print their sizes.

    python3 scripts/build_masters.py              # default table
    python3 scripts/build_masters.py --out masters/   # also write .mmph/.vec/.meta
    python3 scripts/build_masters.py --set "0,±1" --dim 5
"""
import argparse
import os
import time

from mmph.master import ComponentSet, build_master, write_master
from mmph.states import is_binary

DEFAULT = [
    ("0,±1", 3),
    ("0,±1", 5),
    ("0,±1,2", 3),
    ("0,±1,±2,5", 3),
    ("0,±1,sqrt(2),3", 3),
    ("0,±1,sqrt(2),±3", 3),
    ("0,±1,±sqrt(2),3", 3),
    ("0,±1,±sqrt(2),±3", 3),
    ("0,±1,sqrt(2),±2,±3,5", 3),
    ("0,±w,2*w,±w2,2*w2", 3),
    ("0,±1", 7),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--set", help="one component set instead of the default table")
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--out", help="directory for master files")
    ap.add_argument("--binary", action="store_true", help="also report binarity of each master")
    args = ap.parse_args()
    todo = [(args.set, args.dim)] if args.set else DEFAULT
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    print("components\tdim\tmaster\tlargest\tparts\tseconds" + ("\tbinary" if args.binary else ""))
    for text, dim in todo:
        t0 = time.perf_counter()
        m = build_master(ComponentSet.parse(text, dim))
        dt = time.perf_counter() - t0
        row = [text, str(dim), m.name, "%d-%d" % m.largest, str(len(m.breakdown)), f"{dt:.2f}"]
        if args.binary:
            row.append(str(is_binary(m.mmph)))
        print("\t".join(row), flush=True)
        if args.out:
            stem = os.path.join(args.out, f"{m.name}_dim{dim}")
            write_master(m, stem)


if __name__ == "__main__":
    main()
