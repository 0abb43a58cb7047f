# cython: language_level=3
"""Compiled twin of ``_hnf_py``.

Entries stay Python ints (exactness is non-negotiable); Cython removes the
interpreter dispatch in the row-operation loops, which dominate lattice
arithmetic.  Keep the algorithms in lockstep with ``_hnf_py``.
"""


cdef _xgcd(a, b):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


cdef _eliminate(list rows, Py_ssize_t ncols, Py_ssize_t width):
    cdef list placed = []
    cdef list pivcols = []
    cdef list live, keep, piv, r
    cdef Py_ssize_t c, k, t
    for c in range(ncols - 1, -1, -1):
        live = []
        keep = []
        for r in rows:
            if r[c]:
                live.append(r)
            else:
                keep.append(r)
        if not live:
            rows = keep
            continue
        piv = live[0]
        for k in range(1, len(live)):
            r = live[k]
            a = piv[c]
            b = r[c]
            if b % a == 0:
                q = b // a
                for t in range(width):
                    r[t] = r[t] - q * piv[t]
            else:
                x, y, g = _xgcd(a, b)
                u = a // g
                v = b // g
                for t in range(width):
                    pt = piv[t]
                    rt = r[t]
                    piv[t] = x * pt + y * rt
                    r[t] = u * rt - v * pt
            keep.append(r)
        if piv[c] < 0:
            for t in range(width):
                piv[t] = -piv[t]
        placed.append(piv)
        pivcols.append(c)
        rows = keep
    return placed, pivcols, rows


def hnf(mat, Py_ssize_t ncols):
    """Canonical Hermite basis of the row span of `mat` (see _hnf_py.hnf)."""
    cdef list rows = [list(r) for r in mat if any(r)]
    cdef list placed, pivcols, ri, rj
    cdef Py_ssize_t i, j, t, n, cj
    placed, pivcols, _ = _eliminate(rows, ncols, ncols)
    placed.reverse()
    pivcols.reverse()
    n = len(placed)
    for i in range(1, n):
        ri = placed[i]
        for j in range(i - 1, -1, -1):
            cj = pivcols[j]
            rj = placed[j]
            q = ri[cj] // rj[cj]
            if q:
                for t in range(cj + 1):
                    ri[t] = ri[t] - q * rj[t]
    return placed


def kernel(mat, Py_ssize_t ncols):
    """Basis of the integer nullspace {u : u @ mat == 0} (see _hnf_py.kernel)."""
    cdef Py_ssize_t m = len(mat)
    cdef Py_ssize_t width = ncols + m
    cdef Py_ssize_t i
    cdef list rows = []
    cdef list row
    for i in range(m):
        row = list(mat[i]) + [0] * m
        row[ncols + i] = 1
        rows.append(row)
    _, _, rest = _eliminate(rows, ncols, width)
    cdef list tails = [r[ncols:] for r in rest]
    return hnf(tails, m)
