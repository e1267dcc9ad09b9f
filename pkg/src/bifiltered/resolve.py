"""Special injective and special flat resolutions of bounded filtered complexes,
lifting of chain maps to injective resolutions, and randomized falsifiers for strict
injectivity and strict flatness."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exactlin import Matrix, Subspace, solve
from .filtcomplex import ChainMap, FilteredComplex, cone, exactness_profile
from .filtmod import (NEG_INF, POS_INF, FilteredModule, FilteredMorphism, cover_special, direct_sum,
                      embed_special, hom_filtered, image_filtration_module, is_pi_shaped, is_sigma_shaped,
                      is_strict, sigma_levels, submodule, tensor_filtered)
from .generators import random_strict_injection, rng_from


class TruncationError(RuntimeError):
    """A resolution is too short for the requested computation."""


@dataclass
class Resolution:
    kind: str  # "injective" (E -> J, J bounded below) or "flat" (Q -> E, Q bounded above)
    complex: FilteredComplex
    augmentation: ChainMap
    mode: str
    truncated: bool = False
    certificates: dict = dc_field(default_factory=dict)

    @property
    def length(self):
        return len(self.complex.terms)

    def certify(self, qis=True):
        """Recompute the certificates: strict injective (resp. surjective) augmentation
        components, term shapes, and the filtered qis flag of the augmentation.  For a
        truncated resolution the qis flag is left as None."""
        aug = self.augmentation
        strict = {}
        for q in sorted(set(aug.source.degrees()) | set(aug.target.degrees())):
            m = FilteredMorphism(aug.source.term(q), aug.target.term(q), aug.component(q), check=True)
            ok = is_strict(m)[0]
            ok = ok and (m.is_injective() if self.kind == "injective" else m.is_surjective())
            strict[q] = ok
        shaped = is_pi_shaped if self.kind == "injective" else is_sigma_shaped
        tags = {q: shaped(t) or t.dim == 0 for q, t in zip(self.complex.degrees(), self.complex.terms)}
        profile = exactness_profile(cone(aug)) if (qis and not self.truncated) else None
        self.certificates = {
            "strict": strict,
            "shape": tags,
            "qis": None if profile is None else all(profile.values()),
            "qis_underlying": None if profile is None else profile["underlying"],
            "qis_per_filtration": None if profile is None else profile["underlying"] and profile["single"],
            "length": self.length,
        }
        return self.certificates

    def certified(self):
        c = self.certificates or self.certify()
        return all(c["strict"].values()) and all(c["shape"].values()) and c["qis"] is not False


def _default_max_len(e: FilteredComplex):
    span = 0
    for t in e.terms:
        for c in t.chains:
            span = max(span, c.hi - c.lo + 1)
    return len(e.terms) + span + 4


def _pushout(field, j_prev: FilteredModule | None, d_prev: Matrix | None, g_prev: Matrix | None,
             d_e_prev: Matrix | None, e_q: FilteredModule):
    """coker(d_prev) glued to e_q along E^{q-1}: the quotient of J^{q-1} + E^q by
    im(d_prev) + {(g x, -d x)}, with the image filtrations.  Returns the module and the
    two structure maps (from J^{q-1} and from E^q)."""
    dj = j_prev.dim if j_prev is not None else 0
    dim = dj + e_q.dim
    rels = []
    if d_prev is not None and d_prev.cols:
        rels.append(Matrix.vstack(field, [d_prev, Matrix.zeros(field, e_q.dim, d_prev.cols)], cols=d_prev.cols))
    if g_prev is not None and g_prev.cols:
        rels.append(Matrix.vstack(field, [g_prev, -d_e_prev], cols=g_prev.cols))
    rel = Subspace.span(field, dim, Matrix.hstack(field, rels, rows=dim).T) if rels else Subspace.zero(field, dim)
    _, proj = Subspace.full(field, dim).quotient_basis(rel)
    from_j = proj[:, :dj]
    from_e = proj[:, dj:]
    pairs = [(from_e, e_q)]
    if j_prev is not None:
        pairs.insert(0, (from_j, j_prev))
    c = image_filtration_module(field, proj.rows, pairs)
    return c, from_j, from_e


def special_injective_resolution(e: FilteredComplex, max_len=None, hull="minimal", certify=True) -> Resolution:
    """A degreewise product-shaped complex J with a strict injective filtered qis E -> J.

    Degree by degree, J^q is the hull of the cokernel of d: J^{q-2} -> J^{q-1} glued to
    E^q along E^{q-1}, which carries the sum of the image filtrations.  `hull` selects
    the embedding of each such module ("window", "jumps" or "minimal").
    """
    field, n = e.field, e.n
    if max_len is None:
        max_len = _default_max_len(e)
    if not e.terms or all(t.dim == 0 for t in e.terms):
        zero = FilteredComplex.zero(field, n)
        res = Resolution("injective", zero, ChainMap.zero(e, zero), hull)
        if certify:
            res.certify()
        return res
    lo = e.deg_lo
    terms, diffs, aug = [], [], {}
    j_prev = d_prev = g_prev = None
    q = lo
    truncated = False
    while True:
        e_q = e.term(q)
        c, from_j, from_e = _pushout(field, j_prev, d_prev, g_prev, e.diff(q - 1) if q > lo else None, e_q)
        if c.dim == 0 and q > e.deg_hi:
            break
        if len(terms) >= max_len:
            truncated = True
            break
        emb = embed_special(c, hull)
        j_q = emb.target
        if j_prev is not None:
            diffs.append(emb.map @ from_j)
        aug[q] = emb.map @ from_e
        terms.append(j_q)
        d_prev = diffs[-1] if diffs else None
        g_prev = aug[q]
        j_prev = j_q
        q += 1
    j = FilteredComplex(field, n, lo, terms, diffs, check=False)
    res = Resolution("injective", j, ChainMap(e, j, aug, check=False), hull, truncated)
    if certify:
        res.certify()
    return res


def special_flat_resolution(e: FilteredComplex, max_len=None, cover="minimal", certify=True) -> Resolution:
    """A degreewise sum-shaped complex Q with a strict surjective filtered qis Q -> E.

    Going down from the top degree, Q^q covers the fiber product
    Z^q = {(a, x) in Q^{q+1} + E^q : d a = 0, aug(a) = d x} with the filtrations
    induced from the direct sum.  The default "minimal" cover is an isomorphism onto a
    sum-shaped module, so a module that is already sum-shaped resolves to itself.
    """
    field, n = e.field, e.n
    if max_len is None:
        max_len = _default_max_len(e)
    if not e.terms or all(t.dim == 0 for t in e.terms):
        zero = FilteredComplex.zero(field, n)
        res = Resolution("flat", zero, ChainMap.zero(zero, e), cover)
        if certify:
            res.certify()
        return res
    hi = e.deg_hi
    terms, diffs, aug = [], [], {}  # terms built from the top down
    q_next = None  # Q^{q+1}
    d_next = None  # d: Q^{q+1} -> Q^{q+2}
    a_next = None  # aug: Q^{q+1} -> E^{q+1}
    q = hi
    truncated = False
    while True:
        e_q = e.term(q)
        dq = q_next.dim if q_next is not None else 0
        both = direct_sum([q_next, e_q]) if q_next is not None else e_q
        rows = []
        if q_next is not None:
            top = Matrix.hstack(field, [d_next, Matrix.zeros(field, d_next.rows, e_q.dim)], rows=d_next.rows)
            mid = Matrix.hstack(field, [a_next, -e.diff(q)], rows=a_next.rows)
            rows = [top, mid]
        else:
            rows = [e.diff(q)] if e.diff(q).rows else []
        if rows:
            z_space = Matrix.vstack(field, rows, cols=both.dim).kernel()
        else:
            z_space = Subspace.full(field, both.dim)
        if z_space.dim == 0 and q < e.deg_lo:
            break
        if len(terms) >= max_len:
            truncated = True
            break
        z, incl = submodule(both, z_space)
        cov = cover_special(z, cover)
        m = incl @ cov.map
        d_q = m[:dq, :]
        a_q = m[dq:, :]
        terms.append(cov.source)
        if q_next is not None:
            diffs.append(d_q)
        aug[q] = a_q
        q_next, d_next, a_next = cov.source, d_q, a_q
        q -= 1
    terms.reverse()
    diffs.reverse()
    lo = q + 1
    qc = FilteredComplex(field, n, lo, terms, diffs, check=False)
    res = Resolution("flat", qc, ChainMap(qc, e, aug, check=False), cover, truncated)
    if certify:
        res.certify()
    return res


def _factor_kill_space(j: FilteredModule, block):
    """Subspace of J on which a map into the given product factor must vanish."""
    i, l = block.filtrations[0], block.levels[0]
    return j.chain(i).top if l == POS_INF else j.at(i, l - 1)


def extend_into_product(u_basis: Matrix, values: Matrix, source: FilteredModule, target: FilteredModule):
    """A filtered map source -> target (product-shaped) agreeing with `values` on the
    columns of `u_basis`, or None.  Solved one factor at a time: the rows of a factor of
    level l must vanish on step l - 1 of its filtration."""
    field = source.field
    out = field.zeros((target.dim, source.dim))
    for b in target.shape.blocks:
        if b.dim == 0:
            continue
        cols = [u_basis]
        rhs = [values[b.slice, :]]
        if b.kind == "factor":
            kill = _factor_kill_space(source, b)
            if kill.dim:
                cols.append(kill.basis.T)
                rhs.append(Matrix.zeros(field, b.dim, kill.dim))
        a = Matrix.hstack(field, cols, rows=source.dim)
        r = Matrix.hstack(field, rhs, rows=b.dim)
        if a.cols == 0:
            continue
        x = solve(a.T, r.T)  # unknown: block rows transposed
        if x is None:
            return None
        out[b.slice, :] = x.T.a
    return Matrix.wrap(field, out)


def lift_map(f: ChainMap, re: Resolution, rf: Resolution) -> ChainMap:
    """g: J_E -> J_F with g o aug_E = aug_F o f, built degree by degree by extending
    through the strict injection of im(aug_E) + im(d) into J_E^q."""
    if re.kind != "injective" or rf.kind != "injective":
        raise ValueError("lift_map needs two injective resolutions")
    je, jf = re.complex, rf.complex
    field = f.source.field
    comps = {}
    prev = None
    for q in je.degrees():
        src = je.term(q)
        tgt = jf.term(q)
        if tgt.dim == 0:
            if q > jf.deg_hi and rf.truncated:
                raise TruncationError(f"target resolution truncated below degree {q}")
            comps[q] = Matrix.zeros(field, 0, src.dim)
            prev = comps[q]
            continue
        g_cols = [re.augmentation.component(q)]
        v_cols = [rf.augmentation.component(q) @ f.component(q)]
        if q - 1 in comps:
            g_cols.append(je.diff(q - 1))
            v_cols.append(jf.diff(q - 1) @ prev)
        u = Matrix.hstack(field, g_cols, rows=src.dim)
        v = Matrix.hstack(field, v_cols, rows=tgt.dim)
        if tgt.shape is None:
            raise ValueError("target resolution term is not product-shaped")
        g = extend_into_product(u, v, src, tgt)
        if g is None:
            raise ArithmeticError(f"no filtered extension in degree {q}")
        comps[q] = g
        prev = g
    return ChainMap(je, jf, comps, check=False)


# ------------------------------------------------------------------ falsifiers

@dataclass
class NoCounterexample:
    trials: int
    proven: bool = False  # True when the tested module has the licensing shape
    details: dict = dc_field(default_factory=dict)

    found = False


@dataclass
class Counterexample:
    trial: int
    source: FilteredModule
    target: FilteredModule
    inclusion: Matrix
    reason: str
    witness: object = None

    found = True


def test_strict_injective(j: FilteredModule, trials=200, seed=0, max_dim=3):
    """Search for a strict injection E -> F whose restriction Hom(F, j) -> Hom(E, j) is
    not a strict epimorphism."""
    from .filtmod import restriction_of_hom
    rng = rng_from(seed)
    for t in range(trials):
        e, f, incl = random_strict_injection(j.field, rng, n=j.n, max_dim=max_dim)
        r = restriction_of_hom(e, f, j, incl)
        if not r.is_surjective():
            return Counterexample(t, e, f, incl, "restriction is not surjective")
        ok, wit = is_strict(r)
        if not ok:
            return Counterexample(t, e, f, incl, "restriction is not strict", wit)
    return NoCounterexample(trials, proven=is_pi_shaped(j))


def sum_of_pieces_quotients(q: FilteredModule, mode="window"):
    """Dimensions of q modulo the sum of step k1 of filtration 1 and step k2 of
    filtration 2, over the window.  Over a field these quotients are always flat."""
    if q.n == 1:
        return {(k,): q.dim - q.at(1, k).dim for k in range(q.chain(1).lo - 1, q.chain(1).hi + 2)}
    out = {}
    c1, c2 = q.chain(1), q.chain(2)
    for k1 in range(c1.lo - 1, c1.hi + 2):
        for k2 in range(c2.lo - 1, c2.hi + 2):
            out[(k1, k2)] = q.dim - (q.at(1, k1) + q.at(2, k2)).dim
    return out


def test_strict_flat(q: FilteredModule, trials=200, seed=0, max_dim=3):
    """Search for a strict injection E -> F such that q (x) E -> q (x) F is not strict
    injective."""
    rng = rng_from(seed)
    quotients = sum_of_pieces_quotients(q)
    field = q.field
    for t in range(trials):
        e, f, incl = random_strict_injection(field, rng, n=q.n, max_dim=max_dim)
        te, tf = tensor_filtered(q, e), tensor_filtered(q, f)
        m = FilteredMorphism(te, tf, Matrix.identity(field, q.dim).kron(incl), check=False)
        if not m.is_injective():
            return Counterexample(t, e, f, incl, "tensor map is not injective")
        ok, wit = is_strict(m)
        if not ok:
            return Counterexample(t, e, f, incl, "tensor map is not strict", wit)
    return NoCounterexample(trials, proven=is_sigma_shaped(q), details={"quotients": quotients})


# these are falsifiers, not pytest tests
test_strict_injective.__test__ = False
test_strict_flat.__test__ = False
