#!/usr/bin/env python3
"""Writes the PD code of a seeded random braid closure that is a knot.

usage: make_braid_knot.py STRANDS CROSSINGS SEED > out.pd
"""
import random
import sys


def braid_word(strands, crossings, rng):
    while True:
        word = [rng.choice([-1, 1]) * rng.randint(1, strands - 1) for _ in range(crossings)]
        perm = list(range(strands))
        for g in word:
            i = abs(g) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        # closure is a knot iff the permutation is one cycle
        seen, p = {0}, perm[0]
        while p != 0:
            seen.add(p)
            p = perm[p]
        if len(seen) == strands and len(set(abs(g) for g in word)) == strands - 1:
            return word


def closure_pd(strands, word):
    fresh = iter(range(1, 10**6))
    bottom = [next(fresh) for _ in range(strands)]
    arcs = list(bottom)
    xs = []
    for g in word:
        i = abs(g) - 1
        left_in, right_in = arcs[i], arcs[i + 1]
        left_out, right_out = next(fresh), next(fresh)
        if g > 0:  # over strand runs from position i to i+1
            xs.append([right_in, right_out, left_out, left_in])
            arcs[i], arcs[i + 1] = left_out, right_out
        else:
            xs.append([left_in, right_in, right_out, left_out])
            arcs[i], arcs[i + 1] = left_out, right_out
    rename = {top: bot for top, bot in zip(arcs, bottom)}
    xs = [[rename.get(a, a) for a in x] for x in xs]
    labels = sorted({a for x in xs for a in x})
    compact = {a: k + 1 for k, a in enumerate(labels)}
    return [[compact[a] for a in x] for x in xs]


def main():
    strands, crossings, seed = map(int, sys.argv[1:4])
    rng = random.Random(seed)
    word = braid_word(strands, crossings, rng)
    pd = closure_pd(strands, word)
    print(" ".join("X[%d,%d,%d,%d]" % tuple(x) for x in pd))


if __name__ == "__main__":
    main()
