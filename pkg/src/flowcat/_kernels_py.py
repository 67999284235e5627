"""Pure-Python twin of the compiled kernels in ``_kernels.pyx``."""


def rref_modp(a, p: int) -> list[int]:
    """Reduce the 2-D int64 array ``a`` in place to RREF mod p; return pivot columns."""
    rows = a.tolist()
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [(x * inv) % p for x in rows[r]]
        rows[r] = pr
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = (row[j] - f * pr[j]) % p
        pivots.append(c)
        r += 1
    if rows:
        a[:, :] = rows
    return pivots
