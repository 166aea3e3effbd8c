#!/usr/bin/env python3
"""Regenerates the swap sequence of the built-in Ringel diagram.

Start from an exact Pappus configuration: nine lines through nine triple
points. The nine triple-point determinants are dependent (Pappus), so their
Jacobian with respect to the line parameters has a left null vector c. Any
straight-line perturbation moves the determinants by some d with c.d = 0,
so resolving every triple point so that its determinant takes the sign of
c_k is not achievable by lines. Each triple is resolved that way and the
events are swept left to right into adjacent swaps.

Prints the swap list (1-based positions) as JSON.
"""

import itertools
import json
from fractions import Fraction as F


def line_through(p, q):
    a = (q[1] - p[1]) / (q[0] - p[0])
    return (a, p[1] - a * p[0])


def meet(l, m):
    x = (m[1] - l[1]) / (l[0] - m[0])
    return (x, l[0] * x + l[1])


def det3(rows):
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def triple_det(lines, idx):
    return det3([(lines[i][0], F(-1), lines[i][1]) for i in idx])


def null_space(rows, ncols):
    """Basis of {v : rows . v = 0} by exact Gauss-Jordan elimination."""
    m = [list(r) for r in rows]
    pivots, r = [], 0
    for c in range(ncols):
        p = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        m[r] = [v / m[r][c] for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [F(0)] * ncols
        v[free] = F(1)
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][free]
        basis.append(v)
    return basis


def pappus():
    shear = F(1, 7)
    pts = lambda xs, f: [(x + shear * f(x), f(x)) for x in xs]
    A = pts([F(0), F(3), F(7)], lambda x: x / 3)
    B = pts([F(1), F(5), F(11)], lambda x: -x / 2 + 5)
    C = [meet(line_through(A[i], B[j]), line_through(A[j], B[i])) for i, j in [(0, 1), (0, 2), (1, 2)]]
    lines = [line_through(A[0], A[2]), line_through(B[0], B[2]), line_through(C[0], C[2])]
    lines += [line_through(A[i], B[j]) for i in range(3) for j in range(3) if i != j]
    points = A + B + C
    triples = []
    for p in points:
        on = [k for k, l in enumerate(lines) if l[0] * p[0] + l[1] == p[1]]
        assert len(on) == 3, on
        triples.append((p, tuple(on)))
    return lines, triples


def main():
    lines, triples = pappus()
    n = len(lines)
    assert len({l[0] for l in lines}) == n

    # Jacobian rows: d(det_k)/d(slope_i), d(det_k)/d(intercept_i).
    jac = []
    for _, idx in triples:
        row = [F(0)] * (2 * n)
        for pos, i in enumerate(idx):
            for col, unit in ((0, (F(1), F(0), F(0))), (1, (F(0), F(0), F(1)))):
                rows = [(lines[j][0], F(-1), lines[j][1]) for j in idx]
                rows[pos] = unit
                row[2 * i + col] = det3(rows)
        jac.append(row)
    transpose = [[jac[k][c] for k in range(len(jac))] for c in range(2 * n)]
    basis = null_space(transpose, len(jac))
    assert len(basis) == 1, len(basis)
    c = basis[0]
    assert all(v != 0 for v in c)

    # Wires ordered top to bottom at the far left: ascending slope.
    order = sorted(range(n), key=lambda i: lines[i][0])
    events = []
    in_triple = set()
    for p, idx in triples:
        in_triple.update(itertools.combinations(sorted(idx), 2))
        events.append((p[0], "triple", idx))
    for i, j in itertools.combinations(range(n), 2):
        if (i, j) not in in_triple:
            events.append((meet(lines[i], lines[j])[0], "simple", (i, j)))
    events.sort(key=lambda e: e[0])
    assert len({e[0] for e in events}) == len(events)

    swaps = []
    rows = list(order)
    for k, (x, kind, idx) in enumerate(events):
        where = sorted(rows.index(i) for i in idx)
        assert where == list(range(where[0], where[0] + len(idx)))
        p = where[0] + 1
        if kind == "simple":
            swaps.append(p)
        else:
            t = [tr for tr in triples if tr[1] == idx][0]
            sign = 1 if c[triples.index(t)] > 0 else -1
            # Shift the first line's intercept so the determinant takes `sign`.
            i0 = idx[0]
            moved = list(lines)
            coef = triple_det(lines, idx)
            eps = F(1, 10**6)
            for s in (eps, -eps):
                moved[i0] = (lines[i0][0], lines[i0][1] + s)
                if (triple_det(moved, idx) > 0) == (sign > 0):
                    break
            assert coef == 0
            top, mid = rows[where[0]], rows[where[0] + 1]
            first = min(itertools.combinations(idx, 2), key=lambda pr: meet(moved[pr[0]], moved[pr[1]])[0])
            swaps += [p, p + 1, p] if set(first) == {top, mid} else [p + 1, p, p + 1]
        seg = rows[where[0]:where[0] + len(idx)]
        rows[where[0]:where[0] + len(idx)] = seg[::-1]

    assert len(swaps) == n * (n - 1) // 2
    print(json.dumps({"n": n, "swaps": swaps}))


if __name__ == "__main__":
    main()
