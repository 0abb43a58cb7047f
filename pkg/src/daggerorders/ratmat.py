"""Tiny exact rational matrix helpers (lists of lists of Fractions).

Everything here is dimension-agnostic but only ever used on 2x2 and 4x4
matrices; clarity beats asymptotics.
"""

from fractions import Fraction


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)
    ]


def mat_vec(a, v):
    return [sum(a[i][t] * v[t] for t in range(len(v))) for i in range(len(a))]


def vec_mat(v, a):
    return [sum(v[t] * a[t][j] for t in range(len(v))) for j in range(len(a[0]))]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_det(a):
    n = len(a)
    m = [row[:] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for t in range(c, n):
                    m[r][t] -= f * m[c][t]
    return det


def mat_inv(a):
    n = len(a)
    m = [row[:] + ident_row for row, ident_row in zip(a, identity(n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]
