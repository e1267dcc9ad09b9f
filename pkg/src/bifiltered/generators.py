"""Seeded random instances: subspaces, filtered modules, morphisms and complexes with
small dimensions (default <= 4) and filtration windows inside [-2, 2]."""

from __future__ import annotations

import numpy as np

from .exactlin import Matrix, Subspace
from .filtcomplex import ChainMap, FilteredComplex, cone, level_zero_maps
from .filtmod import FilteredModule, FilteredMorphism, FiltrationChain, direct_sum, submodule


def rng_from(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_vectors(field, rng, count, dim):
    return Matrix.wrap(field, field.random_array(rng, (count, dim)))


def random_subspace(field, dim, rng, sub_dim=None):
    if sub_dim is None:
        sub_dim = int(rng.integers(0, dim + 1))
    return Subspace.span(field, dim, random_vectors(field, rng, sub_dim, dim)) if sub_dim else Subspace.zero(field, dim)


def random_chain(field, dim, rng, lo=None, hi=None, biregular=False, window=(-2, 2)):
    if lo is None:
        lo = int(rng.integers(window[0], window[1] + 1))
    if hi is None:
        hi = int(rng.integers(lo, window[1] + 1))
    steps = []
    current = Subspace.zero(field, dim) if biregular else random_subspace(field, dim, rng)
    if not biregular and rng.random() < 0.4:
        current = Subspace.zero(field, dim)
    for k in range(lo, hi + 1):
        if k > lo:
            extra = int(rng.integers(0, 3))
            if extra:
                current = current + Subspace.span(field, dim, random_vectors(field, rng, extra, dim))
        steps.append(current)
    if biregular:
        if hi == lo:
            hi = lo + 1
            steps.append(current)
        steps[-1] = Subspace.full(field, dim)
    elif rng.random() < 0.5:
        steps[-1] = Subspace.full(field, dim)
    return FiltrationChain(lo, hi, tuple(steps))


def random_module(field, rng, dim=None, n=2, biregular=False, max_dim=4, window=(-2, 2)):
    rng = rng_from(rng)
    if dim is None:
        dim = int(rng.integers(0, max_dim + 1))
    chains = tuple(random_chain(field, dim, rng, biregular=biregular, window=window) for _ in range(n))
    return FilteredModule(field, dim, chains)


def random_element(field, sub: Subspace, rng):
    if sub.dim == 0:
        return Matrix.zeros(field, 1, sub.ambient_dim)
    coeffs = Matrix.wrap(field, field.random_array(rng, (1, sub.dim)))
    return coeffs @ sub.basis


def random_filtered_map(e: FilteredModule, f: FilteredModule, rng) -> Matrix:
    v = random_element(e.field, level_zero_maps(e, f), rng)
    return Matrix.wrap(e.field, v.a.reshape(f.dim, e.dim).copy())


def random_injective_morphism(field, rng, n=2, max_dim=4, window=(-2, 2)):
    """An injective filtered map; the target filtrations contain the image of the
    source filtrations plus random extra vectors, so strictness varies."""
    rng = rng_from(rng)
    d = int(rng.integers(1, max_dim + 1))
    t = int(rng.integers(d, max_dim + 1))
    e = random_module(field, rng, dim=d, n=n, window=window)
    while True:
        a = random_vectors(field, rng, t, d)
        if a.rank() == d:
            break
    chains = []
    for c in e.chains:
        lo = min(c.lo, int(rng.integers(window[0], window[1] + 1)))
        hi = max(c.hi, int(rng.integers(lo, window[1] + 1)))
        steps = []
        extra = Subspace.zero(field, t)
        for k in range(lo, hi + 1):
            if rng.random() < 0.5:
                extra = extra + Subspace.span(field, t, random_vectors(field, rng, 1, t))
            steps.append(c.at(k).image(a) + extra)
        for j in range(1, len(steps)):
            steps[j] = steps[j] + steps[j - 1]
        chains.append(FiltrationChain(lo, hi, tuple(steps)))
    f = FilteredModule(field, t, tuple(chains))
    return FilteredMorphism(e, f, a)


def random_strict_injection(field, rng, n=2, max_dim=4, window=(-2, 2)):
    """A random F and a subspace E with the induced filtrations; returns (E, F, incl)."""
    rng = rng_from(rng)
    f = random_module(field, rng, dim=int(rng.integers(1, max_dim + 1)), n=n, window=window)
    u = random_subspace(field, f.dim, rng)
    e, incl = submodule(f, u)
    return e, f, incl


def _maps_killing(s: FilteredModule, t: FilteredModule, prev: Matrix | None):
    """Filtered maps s -> t (vectorised) composing to zero with prev: r -> s."""
    sub = level_zero_maps(s, t)
    if prev is None or prev.cols == 0 or sub.dim == 0:
        return sub
    cond = Matrix.identity(s.field, t.dim).kron(prev.T)  # vec(phi) -> vec(phi @ prev)
    return sub.intersect(cond.kernel())


def random_complex(field, rng, n=2, length=None, max_dim=3, biregular=False, deg_lo=0, window=(-2, 2)):
    rng = rng_from(rng)
    if length is None:
        length = int(rng.integers(1, 4))
    terms = [random_module(field, rng, n=n, biregular=biregular, max_dim=max_dim, window=window)
             for _ in range(length)]
    diffs = []
    prev = None
    for a, b in zip(terms, terms[1:]):
        sub = _maps_killing(a, b, prev)
        v = random_element(field, sub, rng)
        d = Matrix.wrap(field, v.a.reshape(b.dim, a.dim).copy())
        diffs.append(d)
        prev = d
    return FilteredComplex(field, n, deg_lo, terms, diffs, check=False)


def random_chain_map(s: FilteredComplex, t: FilteredComplex, rng) -> ChainMap:
    """A uniformly random filtered chain map s -> t."""
    field = s.field
    degs = sorted(set(s.degrees()) & set(t.degrees()))
    unknown, cols = {}, 0
    for q in degs:
        b = level_zero_maps(s.term(q), t.term(q)).basis
        unknown[q] = (cols, b)
        cols += b.rows
    if cols == 0:
        return ChainMap.zero(s, t)
    rows = []
    for q in range(min(degs) - 1, max(degs) + 1):
        rd = t.term(q + 1).dim * s.term(q).dim
        if rd == 0:
            continue
        blk = field.zeros((rd, cols))
        if q in unknown:  # d_T f^q
            c0, b = unknown[q]
            op = t.diff(q).kron(Matrix.identity(field, s.term(q).dim))
            blk[:, c0:c0 + b.rows] = (op @ b.T).a
        if q + 1 in unknown:  # - f^{q+1} d_S
            c0, b = unknown[q + 1]
            op = Matrix.identity(field, t.term(q + 1).dim).kron(s.diff(q).T)
            blk[:, c0:c0 + b.rows] = field.sub(blk[:, c0:c0 + b.rows], (op @ b.T).a)
        rows.append(Matrix.wrap(field, blk))
    sol = Matrix.vstack(field, rows, cols=cols).kernel() if rows else Subspace.full(field, cols)
    x = random_element(field, sol, rng)
    comps = {}
    for q, (c0, b) in unknown.items():
        v = x[:, c0:c0 + b.rows] @ b
        comps[q] = Matrix.wrap(field, v.a.reshape(t.term(q).dim, s.term(q).dim).copy())
    return ChainMap(s, t, comps, check=False)


def random_automorphism(m: FilteredModule, rng, tries=20):
    """A random filtered automorphism whose inverse is filtered too (a strict isomorphism)."""
    for _ in range(tries):
        a = random_filtered_map(m, m, rng)
        if a.rank() == m.dim:
            inv = a.inverse()
            if FilteredMorphism(m, m, inv, check=False).filtration_violation() is None:
                return a, inv
    ident = Matrix.identity(m.field, m.dim)
    return ident, ident


def conjugate(c: FilteredComplex, rng) -> FilteredComplex:
    """c transported along random strict automorphisms of its terms."""
    autos = [random_automorphism(t, rng) for t in c.terms]
    diffs = [autos[q + 1][0] @ d @ autos[q][1] for q, d in enumerate(c.diffs)]
    return FilteredComplex(c.field, c.n, c.deg_lo, c.terms, diffs, check=False)


def random_strictly_exact(field, rng, n=2, max_dim=2, biregular=False):
    """A strictly exact complex: the cone of an identity, possibly summed with
    another such cone and conjugated by strict automorphisms."""
    rng = rng_from(rng)
    x = random_complex(field, rng, n=n, length=int(rng.integers(1, 3)), max_dim=max_dim, biregular=biregular)
    c = cone(ChainMap.identity(x))
    if rng.random() < 0.5:
        y = random_complex(field, rng, n=n, length=1, max_dim=max_dim, biregular=biregular,
                           deg_lo=int(rng.integers(-1, 2)))
        c2 = cone(ChainMap.identity(y))
        c = direct_sum_complex(c, c2)
    return conjugate(c, rng)


def direct_sum_complex(a: FilteredComplex, b: FilteredComplex) -> FilteredComplex:
    if not a.terms:
        return b
    if not b.terms:
        return a
    lo, hi = min(a.deg_lo, b.deg_lo), max(a.deg_hi, b.deg_hi)
    field = a.field
    terms = [direct_sum([a.term(q), b.term(q)]) for q in range(lo, hi + 1)]
    diffs = [Matrix.block_diag(field, [a.diff(q), b.diff(q)]) for q in range(lo, hi)]
    return FilteredComplex(field, a.n, lo, terms, diffs, check=False)


def inclusion_into_sum(a: FilteredComplex, b: FilteredComplex) -> ChainMap:
    s = direct_sum_complex(a, b)
    field = a.field
    comps = {q: Matrix.vstack(field, [Matrix.identity(field, a.term(q).dim),
                                      Matrix.zeros(field, b.term(q).dim, a.term(q).dim)], cols=a.term(q).dim)
             for q in a.degrees()}
    return ChainMap(a, s, comps, check=False)


def projection_from_sum(a: FilteredComplex, b: FilteredComplex) -> ChainMap:
    s = direct_sum_complex(a, b)
    field = a.field
    comps = {q: Matrix.hstack(field, [Matrix.identity(field, a.term(q).dim),
                                      Matrix.zeros(field, a.term(q).dim, b.term(q).dim)], rows=a.term(q).dim)
             for q in a.degrees()}
    return ChainMap(s, a, comps, check=False)


def exact_not_strict(field, rng, n=2, biregular=True):
    """A two-term exact complex k --id--> k whose filtrations jump at different levels,
    so some piece subcomplex is not exact."""
    rng = rng_from(rng)
    d = int(rng.integers(1, 3))
    a = random_module(field, rng, dim=d, n=n, biregular=biregular)
    b = FilteredModule(field, d, tuple(c.shifted(-1) for c in a.chains))  # b_k = a_{k-1} <= a_k
    return FilteredComplex(field, n, int(rng.integers(-1, 1)), [b, a], [Matrix.identity(field, d)], check=False)
