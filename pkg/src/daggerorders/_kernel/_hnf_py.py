"""Integer-matrix kernels: Hermite normal form and integer nullspace.

Pure-Python backend.  ``daggerorders._kernel`` prefers the compiled Cython
twin (``_hnf_c``) and falls back to this module; both must stay in lockstep.

Row convention: a lattice is the set of integer combinations of the rows.
``hnf`` returns the canonical lower-style form: each row's rightmost nonzero
entry is its pivot, pivot columns strictly increase down the rows, pivots are
positive, and every entry below a pivot lies in ``[0, pivot)``.  For a full
rank square input this is the unique lower-triangular Hermite basis, so list
equality of ``hnf`` outputs is lattice equality.

Entries are arbitrary-precision Python ints throughout; nothing here may
round or overflow.
"""


def _xgcd(a, b):
    # returns (x, y, g) with x*a + y*b == g == gcd(a, b) > 0
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


def _eliminate(rows, ncols, width):
    """Shared elimination sweep.

    Processes pivot columns right to left over the first `ncols` columns,
    doing full-`width` row operations.  Returns (placed, pivcols, rest):
    `placed` are the extracted pivot rows with pivot columns in `pivcols`
    (descending), `rest` are rows whose first `ncols` entries are now zero.
    """
    placed = []
    pivcols = []
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
                    r[t] -= q * piv[t]
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


def hnf(mat, ncols):
    """Canonical Hermite basis of the row span of `mat`.

    Returns a new list of rows (length = rank), pivot columns ascending.
    """
    rows = [list(r) for r in mat if any(r)]
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
                    ri[t] -= q * rj[t]
    return placed


def kernel(mat, ncols):
    """Basis of the integer nullspace {u : u @ mat == 0}.

    `mat` has len(mat) rows of length `ncols`.  Returns HNF rows of length
    len(mat); the returned rows span the full kernel lattice (saturated).
    """
    m = len(mat)
    width = ncols + m
    rows = []
    for i, r in enumerate(mat):
        row = list(r) + [0] * m
        row[ncols + i] = 1
        rows.append(row)
    _, _, rest = _eliminate(rows, ncols, width)
    tails = [r[ncols:] for r in rest]
    return hnf(tails, m)
