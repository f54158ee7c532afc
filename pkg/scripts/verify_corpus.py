#!/usr/bin/env python3
"""Verdicts and coordinatization checks for every reference set, including
the 192-118 Kochen-Specker set in interval arithmetic."""
import time

from mmph.corpus import load_corpus
from mmph.coords import build_original_ks, verify_coordinatization
from mmph.states import verdict
from mmph.strip import drop_m1


def main():
    print("set\tk-l\tverdict\tcore\tcoordinatization")
    for name, e in load_corpus().items():
        m = e.mmph
        v = verdict(m, e.dim)
        core = drop_m1(m)
        coord = "-"
        if e.has_vectors:
            rep = verify_coordinatization(m, e.coordinatization(), e.dim)
            coord = f"{'certified' if rep.certified else 'FAILED'} ({rep.distinct_rays} rays)"
        print(f"{name}\t{m.name}\t{v.line(m).split(' ', 1)[1]}\t{core.name}\t{coord}")

    t0 = time.perf_counter()
    m, c = build_original_ks(256)
    rep = verify_coordinatization(m, c, 3)
    print()
    for line in rep.lines():
        print(line)
    print(f"192-118 verified in {time.perf_counter() - t0:.2f} s")
    core = drop_m1(m)
    print(f"{core.name}: {verdict(core, 3, critical=False).line(core)}")


if __name__ == "__main__":
    main()
