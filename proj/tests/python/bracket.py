"""Kauffman bracket state sum, used as an independent determinant oracle."""

import cmath
import re
from collections import defaultdict


def parse(text):
    return [tuple(map(int, m)) for m in re.findall(r"X\[(\d+),\s*(\d+),\s*(\d+),\s*(\d+)\]", text)]


def bracket(pd):
    """<D> as {exponent of A: coefficient}."""
    n = len(pd)
    labels = {x for rec in pd for x in rec}
    out = defaultdict(int)
    for state in range(1 << n):
        parent = {x: x for x in labels}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c, (a, b, cc, d) in enumerate(pd):
            if state >> c & 1:
                pairs = ((a, d), (b, cc))
            else:
                pairs = ((a, b), (cc, d))
            for x, y in pairs:
                parent[find(x)] = find(y)
        loops = len({find(x) for x in labels})
        nb = bin(state).count("1")
        poly = {(n - nb) - nb: 1}
        for _ in range(loops - 1):
            nxt = defaultdict(int)
            for e, k in poly.items():
                nxt[e + 2] -= k
                nxt[e - 2] -= k
            poly = nxt
        for e, k in poly.items():
            out[e] += k
    return {e: k for e, k in out.items() if k}


def determinant(pd):
    """|V(-1)|, i.e. |<D>| at A = exp(i pi / 4)."""
    a = cmath.exp(1j * cmath.pi / 4)
    value = sum(k * a ** e for e, k in bracket(pd).items())
    return round(abs(value))
