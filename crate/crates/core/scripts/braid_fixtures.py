#!/usr/bin/env python3
"""Writes the Reidemeister move fixture pairs as PD codes of braid closures.

Braid strands run upward. Generator i > 0 crosses positions i and i+1 with
the over-strand running from bottom-left to top-right (a positive crossing);
-i is the inverse. PD quadruples list edge labels counterclockwise starting
from the incoming under-strand, matching the crate's parser.

Run from the crate root:  python3 scripts/braid_fixtures.py
"""
import os

R1 = [
    ("trefoil_stab_pos", 2, [1, 1, 1], 3, [1, 1, 1, 2]),
    ("trefoil_stab_neg", 2, [1, 1, 1], 3, [1, 1, 1, -2]),
    ("fig8_stab", 3, [1, -2, 1, -2], 4, [1, -2, 1, -2, -3]),
]
R2 = [
    ("trefoil_r2", 2, [1, 1, 1], 2, [1, 1, -1, 1, 1]),
    ("fig8_r2", 3, [1, -2, 1, -2], 3, [1, -2, 1, 1, -1, -2]),
    ("hopf_r2", 2, [1, 1], 2, [1, -1, 1, 1]),
]
R3 = [
    ("pair_01", 3, [1, 2, 1], 3, [2, 1, 2]),
    ("pair_02", 3, [1, 2, 1, 2], 3, [2, 1, 2, 2]),
    ("pair_03", 3, [-1, -2, -1, -2], 3, [-2, -1, -2, -2]),
    ("pair_04", 3, [1, 2, -1, 2], 3, [-2, 1, 2, 2]),
    ("pair_05", 3, [-1, 2, 1, 2, -1], 3, [2, 1, -2, 2, -1]),
    ("pair_06", 4, [2, 3, 2, 1, -2, -3, 1], 4, [3, 2, 3, 1, -2, -3, 1]),
    ("pair_07", 4, [1, 2, 1, 3, -2, 3], 4, [2, 1, 2, 3, -2, 3]),
    ("pair_08", 3, [1, 1, 2, 1, -2], 3, [1, 2, 1, 2, -2]),
]


def braid_to_pd(strands, word):
    label = [0]

    def fresh():
        label[0] += 1
        return label[0]

    bottom = [fresh() for _ in range(strands)]
    current = list(bottom)
    quads = []
    for g in word:
        i = abs(g) - 1
        a, b = current[i], current[i + 1]
        nw, ne = fresh(), fresh()  # new labels at top-left, top-right
        if g > 0:
            quads.append([b, ne, nw, a])  # under SE->NW, over SW->NE
        else:
            quads.append([a, b, ne, nw])  # under SW->NE, over SE->NW
        # strand from a continues at NE, strand from b at NW
        current[i], current[i + 1] = nw, ne
    top_to_bottom = dict(zip(current, bottom))
    quads = [[top_to_bottom.get(x, x) for x in q] for q in quads]
    used = sorted({x for q in quads for x in q})
    renumber = {x: k + 1 for k, x in enumerate(used)}
    quads = [[renumber[x] for x in q] for q in quads]
    return "PD[" + ",".join("X[%d,%d,%d,%d]" % tuple(q) for q in quads) + "]"


def write(kind, table):
    root = os.path.join("fixtures", "moves", kind)
    os.makedirs(root, exist_ok=True)
    for name, n1, w1, n2, w2 in table:
        for suffix, n, w in (("a", n1, w1), ("b", n2, w2)):
            path = os.path.join(root, "%s_%s.pd" % (name, suffix))
            with open(path, "w") as f:
                f.write("# braid closure on %d strands: %s\n" % (n, " ".join(map(str, w))))
                f.write(braid_to_pd(n, w) + "\n")


if __name__ == "__main__":
    for kind, table in (("r1", R1), ("r2", R2), ("r3", R3)):
        write(kind, table)
