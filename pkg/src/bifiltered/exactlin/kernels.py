"""Row reduction kernels.  The compiled prime-field kernel is used when it was built
and BIFILTERED_PURE_PYTHON is unset; otherwise the numpy version takes over."""

import os

import numpy as np

from . import _rref_py
from .fields import ExtensionField, PrimeField, Rationals

try:
    if os.environ.get("BIFILTERED_PURE_PYTHON"):
        raise ImportError("compiled kernel disabled by environment")
    from ._rref_cy import rref_modp as _compiled_rref_modp
except ImportError:
    _compiled_rref_modp = None

BACKEND = "cython" if _compiled_rref_modp is not None else "python"


def rref_modp(a, p, backend=None):
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled_rref_modp is None:
            raise RuntimeError("compiled kernel not available")
        return _compiled_rref_modp(a, p)
    return _rref_py.rref_modp(a, p)


def _rref_rational(a):
    rows, cols = a.shape
    m = [list(row) for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead if x else x for x in m[r]]
        row = m[r]
        support = [j for j in range(c, cols) if row[j]]
        for i in range(rows):
            if i != r:
                mi = m[i]
                f = mi[c]
                if f:
                    for j in support:
                        mi[j] = mi[j] - f * row[j]
        pivots.append(c)
        r += 1
    for i in range(rows):
        a[i, :] = m[i]
    return pivots


def _rref_tables(a, field):
    rows, cols = a.shape
    add, mul, neg, inv = field.add_table, field.mul_table, field.neg_table, field.inv_table
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
            a[r] = mul[inv[lead], a[r]]
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            f = neg[a[others, c]][:, None]
            a[others] = add[a[others], mul[f, a[r][None, :]]]
        pivots.append(c)
        r += 1
    return pivots


def rref_array(field, a, backend=None):
    """Return (reduced copy, pivot columns) for a 2-d array over `field`."""
    if isinstance(field, Rationals):
        out = a.copy()
        return out, _rref_rational(out)
    if isinstance(field, PrimeField):
        out = np.ascontiguousarray(a, dtype=np.int64).copy()
        return out, rref_modp(out, field.p, backend)
    if isinstance(field, ExtensionField):
        out = np.ascontiguousarray(a, dtype=np.int64).copy()
        return out, _rref_tables(out, field)
    raise TypeError(f"unsupported field {field!r}")
