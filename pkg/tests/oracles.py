"""Brute-force oracles over F_2 that avoid row reduction: every subspace is turned
into its full set of vectors and every question is answered by enumeration."""

import itertools

import numpy as np

from bifiltered.filtmod import piece_indices


def span_set(rows, dim):
    """All F_2 combinations of the given rows, as a set of tuples."""
    rows = [np.asarray(r, dtype=np.int64) % 2 for r in rows]
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        v = np.zeros(dim, dtype=np.int64)
        for c, r in zip(coeffs, rows):
            if c:
                v = (v + r) % 2
        out.add(tuple(int(x) for x in v))
    return out


def vectors(sub):
    return span_set(sub.basis.a.tolist(), sub.ambient_dim)


def all_vectors(dim):
    return {tuple(v) for v in itertools.product((0, 1), repeat=dim)}


def apply(m, v):
    a = np.asarray(m.a if hasattr(m, "a") else m, dtype=np.int64)
    return tuple(int(x) for x in (a @ np.asarray(v, dtype=np.int64)) % 2)


def piece_vectors(module, idx):
    out = all_vectors(module.dim)
    for i, k in idx:
        out &= vectors(module.at(i, k))
    return out


def is_strict(morphism):
    """Im(f) meets every target piece in the image of the source piece."""
    s, t = morphism.source, morphism.target
    image = {apply(morphism.map, v) for v in all_vectors(s.dim)}
    for idx in piece_indices(s.n, s, t):
        lhs = image & piece_vectors(t, idx)
        rhs = {apply(morphism.map, v) for v in piece_vectors(s, idx)}
        if lhs != rhs:
            return False, idx
    return True, None


def _levels(module, i):
    c = module.chain(i)
    return range(c.lo - 1, c.hi + 2)


def filtered_maps(source, target):
    """Every F_2 matrix (target.dim x source.dim) sending each filtration step of the
    source into the same step of the target, found by trying all matrices."""
    a, b = source.dim, target.dim
    checks = []
    for i in range(1, source.n + 1):
        for k in sorted(set(_levels(source, i)) | set(_levels(target, i))):
            rows = [np.asarray(v, dtype=np.int64) for v in vectors(source.at(i, k))]
            checks.append((rows, vectors(target.at(i, k))))
    out = []
    for bits in itertools.product((0, 1), repeat=a * b):
        m = np.asarray(bits, dtype=np.int64).reshape(b, a)
        if all(apply(m, v) in allowed for rows, allowed in checks for v in rows):
            out.append(m)
    return out


def _key(a):
    return np.ascontiguousarray(a, dtype=np.int64).tobytes()


def chain_map_count(e, j, q):
    """Number of filtered chain maps e -> j[q] over F_2: tuples of filtered maps
    phi_p: e^p -> j^{p+q} with d phi_p = phi_{p+1} d (signs vanish in characteristic 2).

    Degrees are processed in order; the state is the value d phi_p that the next
    component must reproduce as phi_{p+1} d."""
    counts = None
    degs = list(e.degrees())
    for p in degs:
        new = {}
        for x in filtered_maps(e.term(p), j.term(p + q)):
            c = 1 if counts is None else counts.get(_key(x @ e.diff(p - 1).a % 2), 0)
            if c:
                k = _key(j.diff(p + q).a @ x % 2)
                new[k] = new.get(k, 0) + c
        counts = new
    if counts is None:
        return 1
    last = degs[-1]
    return counts.get(_key(np.zeros((j.term(last + q + 1).dim, e.term(last).dim))), 0)


def homotopy_count(e, j, q):
    """Number of filtered homotopies e^p -> j^{p+q-1} (all tuples)."""
    total = 1
    for p in e.degrees():
        total *= len(filtered_maps(e.term(p), j.term(p + q - 1)))
    return total


def ext_dim(e, j, q):
    """log2 of |filtered chain maps e -> j[q]| / |null-homotopic ones| over F_2.

    The null-homotopic maps are the boundaries d h + h d.  Their number is
    |homotopies| / |homotopies with d h + h d = 0|, and in characteristic 2 the
    latter are exactly the chain maps e -> j[q - 1]."""
    if not e.terms:
        return 0
    maps = chain_map_count(e, j, q)
    boundaries, rem = divmod(homotopy_count(e, j, q), chain_map_count(e, j, q - 1))
    assert rem == 0
    ratio, rem = divmod(maps, boundaries)
    assert rem == 0 and ratio & (ratio - 1) == 0
    return ratio.bit_length() - 1


def endomorphism_count(module):
    return len(filtered_maps(module, module))
