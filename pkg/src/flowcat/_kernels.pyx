# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over Z/p on int64 buffers."""

cdef inline long long _inv_mod(long long a, long long p):
    cdef long long t = 0, nt = 1, r = p, nr = a % p, q, tmp
    if nr < 0:
        nr += p
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(long long[:, ::1] a, long long p):
    """Reduce ``a`` in place to reduced row echelon form mod p.

    Entries must lie in [0, p) and p < 2**31. Returns the pivot columns.
    """
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, v
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                v = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = v
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, ncols):
                if a[r, j] != 0:
                    v = (a[i, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        pivots.append(c)
        r += 1
    return pivots
