"""Writes the stored random corpus used by the oracle-agreement check.

Half the complexes are random facet lists, half are grown by elementary
expansions and then possibly damaged by one extra facet, so both answers
occur.  Output is deterministic for a fixed seed.
"""

import argparse
import itertools
import json
import random


def faces_of(facets):
    out = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            out.update(itertools.combinations(f, k))
    return out


def random_facets(rng, nv):
    facets = []
    for _ in range(rng.randint(2, 6)):
        size = rng.randint(2, min(4, nv))
        facets.append(tuple(sorted(rng.sample(range(nv), size))))
    return facets


def grown(rng, nv):
    facets = [(0,)]
    for v in range(1, nv):
        small = [f for f in faces_of(facets) if len(f) <= 2]
        base = rng.choice(sorted(small))
        facets.append(tuple(sorted(base + (v,))))
    for _ in range(nv):
        t = tuple(sorted(rng.sample(range(nv), 3)))
        present = faces_of(facets)
        if t in present:
            continue
        missing = sum(1 for e in itertools.combinations(t, 2) if e not in present)
        if missing == 1:
            facets.append(t)
    if rng.random() < 0.5:
        facets.append(tuple(sorted(rng.sample(range(nv), rng.randint(2, 3)))))
    return facets


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--count", type=int, default=100)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    items = []
    for i in range(args.count):
        nv = rng.randint(3, 7)
        facets = random_facets(rng, nv) if i % 2 == 0 else grown(rng, nv)
        items.append(sorted(set(facets)))
    with open(args.out, "w") as f:
        json.dump({"format": "sdc-corpus", "version": 1, "complexes": [[list(x) for x in c] for c in items]}, f)
        f.write("\n")


if __name__ == "__main__":
    main()
