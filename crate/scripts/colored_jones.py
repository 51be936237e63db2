#!/usr/bin/env python3
"""Colored Jones polynomials of twist knots via the cyclotomic expansion,
in exact integer arithmetic.

This is the independent small-n oracle used to produce the initial values
shipped in data/*.knot, and to recover the right-hand side B_K(M, q) of the
non-homogeneous recursion from an operator file and the sequence.

Sequence convention: f_n = J_K(n), where n is the dimension of the coloring
representation, J_K(1) = 1 and J_K(0) = 0. Twist knot K_p: K_-1 = 4_1,
K_-2 = 6_1, K_2 = 5_2.

Usage:
    colored_jones.py values <p> <count>           # print f_0 .. f_{count-1}
    colored_jones.py rhs    <p> <knot-data-file>  # recover B_K(M, q)
"""
import sys
from collections import defaultdict


# Laurent polynomials in q are dicts {exponent: integer coefficient}.
def norm(a):
    return {e: c for e, c in a.items() if c != 0}


def add(a, b, s=1):
    r = defaultdict(int, a)
    for e, c in b.items():
        r[e] += s * c
    return norm(r)


def mul(a, b):
    r = defaultdict(int)
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            r[e1 + e2] += c1 * c2
    return norm(r)


def shift(a, k):
    return {e + k: c for e, c in a.items()}


def div_one_minus(a, i):
    """Exact division of a by (1 - q^i), i > 0."""
    if not a:
        return {}
    lo, hi = min(a), max(a)
    g = {}
    for e in range(lo, hi - i + 1):
        v = a.get(e, 0) + g.get(e - i, 0)
        if v:
            g[e] = v
    assert add(g, shift(g, i), -1) == norm(a), "inexact division"
    return g


def qpoch_range(lo, hi):
    """prod_{i=lo}^{hi} (1 - q^i)"""
    r = {0: 1}
    for i in range(lo, hi + 1):
        r = mul(r, {0: 1, i: -1})
    return r


def habiro_coeff(n, p):
    """Cyclotomic coefficient of the twist knot K_p at level n."""
    total = {}
    for k in range(n + 1):
        e2 = k * (k + 1) * p + k * (k - 1) // 2
        t = {e2: (-1) ** k, e2 + 2 * k + 1: -((-1) ** k)}
        t = mul(t, qpoch_range(n + k + 2, 2 * n + 1))
        t = mul(t, qpoch_range(n - k + 1, n))
        total = add(total, t)
    for i in range(1, 2 * n + 2):
        total = div_one_minus(total, i)
    return shift(total, n * (n + 3) // 2)


def colored_jones(N, p):
    if N == 0:
        return {}
    tot = {}
    prod = {0: 1}
    for n in range(N):
        if n > 0:
            prod = mul(prod, {N: 1, -N: 1, n: -1, -n: -1})
        tot = add(tot, mul({0: (-1) ** n}, mul(habiro_coeff(n, p), prod)))
    return tot


def fmt(a):
    if not a:
        return "0"
    out = ""
    for e in sorted(a, reverse=True):
        c = a[e]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = str(c)
        else:
            body = ("" if c == 1 else "%d*" % c) + ("q" if e == 1 else "q^%d" % e)
        out += sign + body
    return out.lstrip("+")


def parse_operator(path):
    """Read the nonhomogeneous_op block of a knot data file (written in the
    x = L, y = M, t = 1/q variables) into {(i, j): {k: c}} with k the
    q-exponent."""
    import sympy as sp

    lines = open(path).read().split("\n")
    body, grab = [], False
    for l in lines:
        if l.startswith("role:"):
            grab = l.split(":", 1)[1].strip() == "nonhomogeneous_op"
            continue
        if ":" in l or l.startswith("#") or not l.strip():
            continue
        if grab:
            body.append(l.strip())
    s = "".join(body).replace("^", "**")
    x, y, t = sp.symbols("x y t")
    e = sp.expand(sp.sympify(s) * t**200)
    ops = defaultdict(dict)
    for (i, j, k), c in sp.Poly(e, x, y, t).terms():
        ops[(i, j)][200 - k] = int(c)
    return ops


def rhs(p, path, count=30, span=(-10, 60)):
    """Recover B(M, q) = sum_j c_j(q) M^j from b_n = (A f)_n, n < count.

    Solves for the integer coefficients of every c_j(q) with q-exponents in
    `span` by least squares, rounds, and then verifies exactly on every n."""
    import numpy as np

    ops = parse_operator(path)
    d = max(i for i, _ in ops)
    vals = [colored_jones(N, p) for N in range(count + d)]

    def b(n):
        tot = {}
        for (i, j), coeff in ops.items():
            tot = add(tot, mul({k + j * n: c for k, c in coeff.items()}, vals[n + i]))
        return tot

    bs = [b(n) for n in range(count)]
    # M-degree range from the growth of the exponents
    hi = max(bs[-1]) - max(bs[-2])
    lo = min(bs[-1]) - min(bs[-2])
    js = list(range(lo, hi + 1))
    ks = list(range(span[0], span[1] + 1))
    idx = {(j, k): a for a, (j, k) in enumerate((j, k) for j in js for k in ks)}
    rows, rhs_vec = [], []
    for n, bn in enumerate(bs):
        exps = set(bn) | {k + j * n for j in js for k in ks}
        for e in sorted(exps):
            row = np.zeros(len(idx))
            for j in js:
                k = e - j * n
                if (j, k) in idx:
                    row[idx[(j, k)]] += 1
            rows.append(row)
            rhs_vec.append(bn.get(e, 0))
    sol = np.linalg.lstsq(np.array(rows), np.array(rhs_vec, dtype=float), rcond=None)[0]
    cs = {}
    for (j, k), a in idx.items():
        v = int(round(sol[a]))
        if v:
            cs.setdefault(j, {})[k] = v
    for n, bn in enumerate(bs):
        tot = {}
        for j, c in cs.items():
            tot = add(tot, shift(c, j * n))
        assert tot == bn, "rhs mismatch at n=%d" % n
    return "+".join("(%s)*M^%d" % (fmt(cs[j]), j) for j in sorted(cs))


if __name__ == "__main__":
    cmd, p = sys.argv[1], int(sys.argv[2])
    if cmd == "values":
        for N in range(int(sys.argv[3])):
            print(fmt(colored_jones(N, p)))
    elif cmd == "rhs":
        print(rhs(p, sys.argv[3]))
