"""Brute-force configuration counts on E = F_p^3 (prime p) for freezing test values.

Loops are literal nested enumerations over E with direct dot-product checks.
"""
import itertools
import sys

import numpy as np


def counts(p, t):
    pts = list(itertools.product(range(p), repeat=3))
    n = len(pts)
    P = np.array(pts)
    adj = ((P @ P.T) % p == t)
    idx = range(n)
    nb = [list(np.nonzero(adj[i])[0]) for i in idx]
    edges = int(adj.sum())
    p5 = 0
    for x1 in idx:
        for y12 in nb[x1]:
            for x2 in nb[y12]:
                p5 += len(nb[x1]) * len(nb[x2])
    c4 = 0
    for x1 in idx:
        for y12 in nb[x1]:
            for x2 in nb[y12]:
                for y2 in nb[x2]:
                    c4 += adj[y2, x1]
    a = a_deg = 0
    f = {}
    for x in idx:
        for y in nb[x]:
            for z in nb[y]:
                for u in nb[z]:
                    if not adj[u, x]:
                        continue
                    for v in nb[u]:
                        a += 1
                        if adj[y, v] or x == z or y == u:
                            a_deg += 1
                        else:
                            f[(y, z, v)] = f.get((y, z, v), 0) + 1
    sf = sum(f.values())
    sf2 = sum(w * w for w in f.values())
    return dict(edges=edges, p5=p5, c4=int(c4), a=a, a_deg=a_deg,
                sum_f=sf, sum_f2=sf2, support=len(f))


if __name__ == "__main__":
    p = int(sys.argv[1])
    for t in map(int, sys.argv[2:]):
        print(p, t, counts(p, t))
