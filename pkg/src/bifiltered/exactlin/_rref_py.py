"""Vectorised reduced row echelon form over a prime field, used when the compiled
kernel is unavailable."""

import numpy as np


def rref_modp(a, p):
    """Reduce `a` (C-contiguous int64, entries in [0, p)) in place; return pivot columns."""
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r, c:] = (a[r, c:] * pow(lead, p - 2, p)) % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            f = a[others, c][:, None]
            a[others, c:] = (a[others, c:] - f * a[r, c:]) % p
        pivots.append(c)
        r += 1
    return pivots
