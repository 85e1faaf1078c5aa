"""Slow, independent reference implementations used by the tests."""
from __future__ import annotations

from itertools import combinations, permutations
from math import gcd


def bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def determinantal_divisors(a: list[list[int]]) -> list[int]:
    """d_k = gcd of all k x k minors, for k = 1.. until it vanishes."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, bareiss_det([[a[i][j] for j in cs] for i in rs]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors(a: list[list[int]]) -> list[int]:
    d = determinantal_divisors(a)
    return [d[0]] + [d[i] // d[i - 1] for i in range(1, len(d))] if d else []


def perm_sign(seq) -> int:
    seq = list(seq)
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def brute_shuffle(x: tuple, y: tuple) -> dict:
    """Product of two basis elements by listing every interleaving per edge.

    Each factor's canonical word is the concatenation of its edge sequences;
    the sign compares concat(word x, word y) with the result's word, via
    positions of points (all points are distinct).
    """
    word_x = [p for seq in x for p in seq]
    word_y = [p for seq in y for p in seq]
    source = word_x + word_y
    out: dict = {}

    def interleave(u, v):
        n = len(u) + len(v)
        for pos in combinations(range(n), len(u)):
            res, iu, iv = [], 0, 0
            for i in range(n):
                if i in pos:
                    res.append(u[iu]); iu += 1
                else:
                    res.append(v[iv]); iv += 1
            yield tuple(res)

    def rec(e, acc):
        if e == len(x):
            target = [p for seq in acc for p in seq]
            where = {p: i for i, p in enumerate(target)}
            key = tuple(acc)
            out[key] = out.get(key, 0) + perm_sign(where[p] for p in source)
            return
        for s in interleave(x[e], y[e]):
            rec(e + 1, acc + [s])

    rec(0, [])
    return {k: v for k, v in out.items() if v}


def brute_basis(r: int, points) -> list[tuple]:
    """Every assignment of points to edges with an order on each edge."""
    pts = tuple(points)
    out = set()
    for perm in permutations(pts):
        for cuts in _compositions(len(pts), r):
            seqs, i = [], 0
            for c in cuts:
                seqs.append(perm[i:i + c]); i += c
            out.add(tuple(seqs))
    return sorted(out)


def _compositions(n: int, r: int):
    if r == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, r - 1):
            yield (first,) + rest


def oracle_merge(b, i, j):
    """Sign and merged basis element read off the concatenated word."""
    word = [(e, p) for e, seq in enumerate(b) for p in seq]
    pos = {p: k for k, (_, p) in enumerate(word)}
    a, c = sorted((pos[i], pos[j]))
    if c != a + 1 or word[a][0] != word[c][0]:
        return 0, None
    word[a:c + 1] = [(word[a][0], min(i, j))]
    merged = tuple(tuple(p for f, p in word if f == e) for e in range(len(b)))
    return (-1) ** a, merged
