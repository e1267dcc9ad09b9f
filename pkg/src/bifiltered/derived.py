"""Derived functors of bounded filtered complexes: RHom, Ext, the derived tensor
product, base change along finite field extensions, and the adjunction and
commutation checks between them.  Derived objects are compared through their
piece and graded cohomology dimension tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .exactlin import Matrix, Subspace
from .exactlin.fields import ExtensionField, Field, PrimeField, Rationals
from .filtcomplex import (ChainMap, FilteredComplex, PlainComplex, cohomology_dim, cohomology_table,
                          gr_complex, hom_complex, joint_ranges, table_diff, tensor_complex)
from .filtmod import FilteredModule, FiltrationChain, hom_filtered
from .resolve import Resolution, special_flat_resolution, special_injective_resolution


class RingMismatch(ValueError):
    pass


# ------------------------------------------------------------- scalar arithmetic

def _mul(f: Field, a, b):
    if isinstance(f, ExtensionField):
        return int(f.mul_table[a, b])
    if isinstance(f, PrimeField):
        return (a * b) % f.p
    return a * b


def _add(f: Field, a, b):
    if isinstance(f, ExtensionField):
        return int(f.add_table[a, b])
    if isinstance(f, PrimeField):
        return (a + b) % f.p
    return a + b


def _pow(f: Field, a, e):
    out = 1
    for _ in range(e):
        out = _mul(f, out, a)
    return out


def _digits(code, p, k):
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return out


def _degree(f: Field):
    return f.degree if isinstance(f, ExtensionField) else 1


# ------------------------------------------------------------------ ring maps

class RingMap:
    """A unital embedding source -> target of fields (the identity, or a finite field
    into a finite extension), with a source-basis of the target and coordinate tables.

    Base change goes both ways along it: pushforward restricts scalars from target to
    source, pullback extends scalars from source to target.
    """

    def __init__(self, source: Field, target: Field, embed=None):
        self.source = source
        self.target = target
        if source == target:
            self.degree = 1
            self.embed = None if isinstance(source, Rationals) else list(range(source.order))
            self.basis = [target.one()]
            self.coords = None
            return
        if isinstance(source, Rationals) or isinstance(target, Rationals):
            raise RingMismatch("only finite field extensions and identities are supported")
        if source.characteristic != target.characteristic or _degree(target) % _degree(source):
            raise RingMismatch(f"{source} does not embed into {target}")
        self.degree = _degree(target) // _degree(source)
        self.embed = list(embed) if embed is not None else _find_embedding(source, target)
        self._check_homomorphism()
        self.basis, self.coords = _basis_and_coordinates(source, target, self.embed, self.degree)

    @classmethod
    def identity(cls, field):
        return cls(field, field)

    @property
    def is_identity(self):
        return self.source == self.target

    def _check_homomorphism(self):
        s, t, e = self.source, self.target, self.embed
        if e[1] != 1 or e[0] != 0:
            raise RingMismatch("embedding is not unital")
        for a in range(s.order):
            for b in range(s.order):
                if e[_add(s, a, b)] != _add(t, e[a], e[b]) or e[_mul(s, a, b)] != _mul(t, e[a], e[b]):
                    raise RingMismatch("embedding is not a ring homomorphism")

    def compose(self, first: "RingMap") -> "RingMap":
        """self o first, for first: A -> B and self: B -> C."""
        if first.target != self.source:
            raise RingMismatch("ring maps do not compose")
        if first.is_identity:
            return self
        if self.is_identity:
            return first
        return RingMap(first.source, self.target, [self.embed[x] for x in first.embed])

    def __repr__(self):
        return f"RingMap({self.source} -> {self.target})"

    # element level -------------------------------------------------------
    def coordinates(self, t):
        """Source coordinates of a target element in the chosen basis."""
        return [t] if self.is_identity else list(self.coords[int(t)])

    def from_coordinates(self, cs):
        if self.is_identity:
            return cs[0]
        out = 0
        for c, b in zip(cs, self.basis):
            out = _add(self.target, out, _mul(self.target, self.embed[int(c)], b))
        return out

    def multiplication_matrix(self, t):
        """Source matrix of x -> t x on the target, in the chosen basis."""
        s = self.source
        if self.is_identity:
            return Matrix(s, [[t]])
        cols = [self.coordinates(_mul(self.target, t, b)) for b in self.basis]
        return Matrix(s, [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)])

    def trace(self, t):
        m = self.multiplication_matrix(t)
        out = self.source.zero()
        for i in range(self.degree):
            out = _add(self.source, out, m.a[i, i])
        return out


def _find_embedding(s: Field, t: Field):
    p = s.characteristic
    if isinstance(s, PrimeField):
        return list(range(p))
    modulus = list(s.modulus)
    for y in range(t.order):
        val = 0
        for j, c in enumerate(modulus):
            val = _add(t, val, _mul(t, c, _pow(t, y, j)))
        if val == 0:
            emb = []
            for code in range(s.order):
                acc = 0
                for j, dgt in enumerate(_digits(code, p, s.degree)):
                    acc = _add(t, acc, _mul(t, dgt, _pow(t, y, j)))
                emb.append(acc)
            return emb
    raise RingMismatch(f"no root of the defining polynomial of {s} in {t}")


def _basis_and_coordinates(s: Field, t: Field, embed, r):
    """Greedy source-basis of the target and the table target code -> coordinates."""
    basis = []
    span = {0: ()}
    for cand in range(1, t.order):
        if cand in span:
            continue
        basis.append(cand)
        span = {}
        for cs in itertools.product(range(s.order), repeat=len(basis)):
            v = 0
            for c, b in zip(cs, basis):
                v = _add(t, v, _mul(t, embed[c], b))
            span[v] = cs
        if len(basis) == r:
            break
    coords = np.zeros((t.order, r), dtype=np.int64)
    for v, cs in span.items():
        coords[v] = cs
    return basis, coords


def extension(source: Field, target: Field) -> RingMap:
    return RingMap(source, target)


# ------------------------------------------------------------------ base change

def _push_vectors(rm: RingMap, rows: Matrix) -> Matrix:
    """Source-coordinates of the source-span of the given target row vectors: each row
    v gives the rows coords(b_l v) for every basis element b_l."""
    if rm.is_identity:
        return rows
    r = rm.degree
    n = rows.cols
    out = []
    for i in range(rows.rows):
        v = rows.a[i]
        for b in rm.basis:
            out.append([c for x in v for c in rm.coordinates(_mul(rm.target, b, int(x)))])
    if not out:
        return Matrix.zeros(rm.source, 0, n * r)
    return Matrix(rm.source, out)


def push_matrix(rm: RingMap, a: Matrix) -> Matrix:
    """The target-linear map a viewed as a source-linear map (blocks of multiplication
    matrices)."""
    if rm.is_identity:
        return a
    r = rm.degree
    blocks = {}
    for i in range(a.rows):
        for j in range(a.cols):
            x = int(a.a[i, j])
            if x:
                blocks[(i, j)] = rm.multiplication_matrix(x)
    return Matrix.blocks(rm.source, [r] * a.rows, [r] * a.cols, blocks)


def pull_matrix(rm: RingMap, a: Matrix) -> Matrix:
    if rm.is_identity:
        return a
    return Matrix.wrap(rm.target, np.array([[rm.embed[int(x)] for x in row] for row in a.a],
                                           dtype=np.int64).reshape(a.shape))


def _map_chains(m: FilteredModule, dim, fn):
    return tuple(FiltrationChain(c.lo, c.hi, tuple(fn(s) for s in c.steps)) for c in m.chains)


def _check_field(rm: RingMap, obj, side):
    want = rm.target if side == "target" else rm.source
    if obj.field != want:
        raise RingMismatch(f"expected an object over {want}, got one over {obj.field}")


def pushforward_module(rm: RingMap, m: FilteredModule) -> FilteredModule:
    _check_field(rm, m, "target")
    if rm.is_identity:
        return m
    dim = m.dim * rm.degree
    fn = lambda s: Subspace.span(rm.source, dim, _push_vectors(rm, s.basis))  # noqa: E731
    return FilteredModule(rm.source, dim, _map_chains(m, dim, fn))


def pullback_module(rm: RingMap, m: FilteredModule) -> FilteredModule:
    _check_field(rm, m, "source")
    if rm.is_identity:
        return m
    fn = lambda s: Subspace.span(rm.target, m.dim, pull_matrix(rm, s.basis))  # noqa: E731
    return FilteredModule(rm.target, m.dim, _map_chains(m, m.dim, fn))


def _map_complex(c: FilteredComplex, field, module_fn, matrix_fn):
    return FilteredComplex(field, c.n, c.deg_lo, [module_fn(t) for t in c.terms],
                           [matrix_fn(d) for d in c.diffs], check=False)


def pushforward(rm: RingMap, e):
    """Restriction of scalars (exact, so it is its own derived functor)."""
    if isinstance(e, FilteredModule):
        return pushforward_module(rm, e)
    if isinstance(e, ChainMap):
        return ChainMap(pushforward(rm, e.source), pushforward(rm, e.target),
                        {q: push_matrix(rm, m) for q, m in e.components.items()}, check=False)
    _check_field(rm, e, "target")
    return _map_complex(e, rm.source, lambda t: pushforward_module(rm, t), lambda d: push_matrix(rm, d))


def pullback(rm: RingMap, e):
    """Extension of scalars (the extension is free, so this is its own derived functor)."""
    if isinstance(e, FilteredModule):
        return pullback_module(rm, e)
    if isinstance(e, ChainMap):
        return ChainMap(pullback(rm, e.source), pullback(rm, e.target),
                        {q: pull_matrix(rm, m) for q, m in e.components.items()}, check=False)
    _check_field(rm, e, "source")
    return _map_complex(e, rm.target, lambda t: pullback_module(rm, t), lambda d: pull_matrix(rm, d))


def trivial_extension_module(rm: RingMap, n=2) -> FilteredModule:
    """The target field as a trivially filtered source-module."""
    return FilteredModule.trivial(rm.source, rm.degree, n)


class _ShriekCoordinates:
    """Hom_S(T, K) for K = S^n, identified with T^n through the trace-dual basis:
    (t_i) corresponds to x -> sum_i Tr(t_i x) e_i.  Hom-space vectors use the
    row-major layout of hom_filtered (phi of shape n x r)."""

    def __init__(self, rm: RingMap, n: int):
        self.rm, self.n = rm, n
        r = rm.degree
        s = rm.source
        # column j (for t-coordinates (i, s)) = vec of x -> Tr(b_s x) e_i
        cols = s.zeros((n * r, n * r))
        tr = [[rm.trace(_mul(rm.target, bs, bl)) for bl in rm.basis] for bs in rm.basis]
        for i in range(n):
            for sidx in range(r):
                for l in range(r):
                    cols[i * r + l, i * r + sidx] = tr[sidx][l]
        self.psi = Matrix.wrap(s, cols)  # t-coordinates -> hom vec
        self.psi_inv = self.psi.inverse()

    def t_subspace(self, hom_sub: Subspace) -> Subspace:
        """The target subspace of T^n whose source coordinates map onto hom_sub."""
        rm, n, r = self.rm, self.n, self.rm.degree
        coords = hom_sub.basis @ self.psi_inv.T if hom_sub.dim else Matrix.zeros(rm.source, 0, n * r)
        rows = [[rm.from_coordinates(list(coords.a[k, i * r:(i + 1) * r])) for i in range(n)]
                for k in range(coords.rows)]
        if not rows:
            return Subspace.zero(rm.target, n)
        return Subspace.span(rm.target, n, Matrix(rm.target, rows))

    def t_matrix(self, hom_map: Matrix, target: "_ShriekCoordinates") -> Matrix:
        """Target matrix of a target-linear map given on hom vectors."""
        rm, r = self.rm, self.rm.degree
        m = target.psi_inv @ hom_map @ self.psi
        out = []
        for i in range(target.n):
            row = []
            for j in range(self.n):
                col = m.a[i * r:(i + 1) * r, j * r]  # image of e_j (coordinate of 1 = b_0)
                row.append(rm.from_coordinates(list(col)))
            out.append(row)
        return Matrix(rm.target, out) if out else Matrix.zeros(rm.target, target.n, self.n)


def shriek_module(rm: RingMap, k: FilteredModule) -> FilteredModule:
    """Hom_S(T, K) with T trivially filtered, as a target-module."""
    _check_field(rm, k, "source")
    if rm.is_identity:
        return k
    if rm.basis[0] != rm.target.one():
        raise AssertionError("the chosen basis must start with 1")
    h = hom_filtered(trivial_extension_module(rm, k.n), k)
    sc = _ShriekCoordinates(rm, k.dim)
    chains = tuple(FiltrationChain(c.lo, c.hi, tuple(sc.t_subspace(s) for s in c.steps)) for c in h.chains)
    return FilteredModule(rm.target, k.dim, chains)


def shriek(rm: RingMap, e):
    """The right adjoint of pushforward: Hom from the trivially filtered extension."""
    if isinstance(e, FilteredModule):
        return shriek_module(rm, e)
    _check_field(rm, e, "source")
    if rm.is_identity:
        return e
    r = rm.degree
    terms = [shriek_module(rm, t) for t in e.terms]
    diffs = []
    for q, d in enumerate(e.diffs):
        post = d.kron(Matrix.identity(rm.source, r))  # phi -> d o phi on row-major vec
        diffs.append(_ShriekCoordinates(rm, e.terms[q].dim).t_matrix(post, _ShriekCoordinates(rm, e.terms[q + 1].dim)))
    return FilteredComplex(rm.target, e.n, e.deg_lo, terms, diffs, check=False)


# ------------------------------------------------------------------ derived functors

@dataclass
class DerivedResult:
    complex: FilteredComplex
    provenance: dict = dc_field(default_factory=dict)
    truncated: bool = False
    trusted_max_degree: int | None = None  # None: every degree is trustworthy

    def trusted_degrees(self):
        degs = list(self.complex.degrees())
        if self.trusted_max_degree is None:
            return degs
        return [q for q in degs if q <= self.trusted_max_degree]

    def table(self, ranges=None, degrees=None, scale=1, gr_table=True):
        degrees = self.trusted_degrees() if degrees is None else \
            [q for q in degrees if self.trusted_max_degree is None or q <= self.trusted_max_degree]
        return cohomology_table(self.complex, ranges, degrees, scale, gr_table)


def _describe(res: Resolution):
    return {"kind": res.kind, "mode": res.mode, "length": res.length, "truncated": res.truncated,
            "certificates": dict(res.certificates)}


def rhom(e: FilteredComplex, f: FilteredComplex, hull="minimal", max_len=None) -> DerivedResult:
    """Hom complex from e into a special injective resolution of f."""
    if e.field != f.field:
        raise RingMismatch("RHom of complexes over different rings")
    res = special_injective_resolution(f, max_len=max_len, hull=hull)
    c = hom_complex(e, res.complex)
    trusted = None
    if res.truncated:
        trusted = res.complex.deg_hi - (e.deg_hi if e.terms else 0) - 1
    return DerivedResult(c, {"resolved": "second", "resolution": _describe(res)}, res.truncated, trusted)


def zero_piece(n):
    return tuple((i, 0) for i in range(1, n + 1))


def ext(e: FilteredComplex, f: FilteredComplex, q: int, hull="minimal") -> int:
    """dim H^q of the level-zero piece of RHom(e, f): filtered chain maps e -> J[q]
    modulo filtered homotopy."""
    r = rhom(e, f, hull=hull)
    if r.trusted_max_degree is not None and q > r.trusted_max_degree:
        raise ValueError(f"degree {q} is beyond the trustworthy range (<= {r.trusted_max_degree})")
    return cohomology_dim(r.complex, q, zero_piece(e.n))


def derived_tensor(e: FilteredComplex, f: FilteredComplex, cover="minimal", resolve_both=False,
                   max_len=None) -> DerivedResult:
    """Tensor complex of e (or of its flat resolution) with a flat resolution of f."""
    if e.field != f.field:
        raise RingMismatch("tensor product of complexes over different rings")
    rf = special_flat_resolution(f, max_len=max_len, cover=cover)
    prov = {"resolved": "second", "resolution": _describe(rf)}
    left = e
    truncated = rf.truncated
    if resolve_both:
        re = special_flat_resolution(e, max_len=max_len, cover=cover)
        left = re.complex
        prov = {"resolved": "both", "resolution": _describe(rf), "first_resolution": _describe(re)}
        truncated = truncated or re.truncated
    c = tensor_complex(left, rf.complex)
    trusted = None
    if truncated:
        trusted_min = c.deg_lo  # flat resolutions truncate from below
        prov["trusted_min_degree"] = trusted_min + 1
    return DerivedResult(c, prov, truncated, trusted)


def tor(e: FilteredComplex, f: FilteredComplex, q: int, cover="minimal") -> int:
    """dim H^{-q} of the level-zero piece of the derived tensor product."""
    r = derived_tensor(e, f, cover=cover)
    return cohomology_dim(r.complex, -q, zero_piece(e.n))


# ------------------------------------------------------------------ reports

@dataclass
class Report:
    """Side-by-side dimension tables; `holds` is true when they agree everywhere."""
    name: str
    holds: bool
    rows: list  # (key, left, right)
    trusted_degrees: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)

    def mismatches(self):
        return [r for r in self.rows if r[1] != r[2]]


def compare_tables(name, a: dict, b: dict, degrees=None, details=None) -> Report:
    keys = sorted(set(a) | set(b), key=repr)
    rows = [(k, a.get(k, 0), b.get(k, 0)) for k in keys]
    return Report(name, not table_diff(a, b), rows, list(degrees or []), details or {})


def _common(cs):
    cs = [c for c in cs if c.terms]
    ranges = joint_ranges(*cs) if cs else None
    degs = sorted({q for c in cs for q in c.degrees()})
    return ranges, degs


def adjunction_check(rm: RingMap, e: FilteredComplex, f: FilteredComplex, hull="minimal") -> Report:
    """RHom_T(pullback e, f) against RHom_S(e, pushforward f), for e over the source
    field S and f over the target field T.  Target-side dimensions are multiplied by
    the extension degree so both tables count source dimensions."""
    _check_field(rm, e, "source")
    _check_field(rm, f, "target")
    left = rhom(pullback(rm, e), f, hull=hull)
    right = rhom(e, pushforward(rm, f), hull=hull)
    ranges, degs = _common([left.complex, right.complex])
    degs = [q for q in degs if q in left.trusted_degrees() or q in right.trusted_degrees()]
    lt = left.table(ranges, degs, scale=rm.degree)
    rt = right.table(ranges, degs)
    return compare_tables("adjunction", lt, rt, degs,
                          {"left": left.provenance, "right": right.provenance, "degree": rm.degree})


def shriek_adjunction_check(rm: RingMap, m: FilteredModule, k: FilteredModule) -> Report:
    """Hom_S(pushforward m, k) against Hom_T(m, shriek k) piece by piece (source dims)."""
    _check_field(rm, m, "target")
    _check_field(rm, k, "source")
    left = hom_filtered(pushforward_module(rm, m), k)
    right = hom_filtered(m, shriek_module(rm, k))
    lc, rc = FilteredComplex.from_module(left), FilteredComplex.from_module(right)
    ranges, degs = _common([lc, rc])
    return compare_tables("shriek adjunction", cohomology_table(lc, ranges, degs),
                          cohomology_table(rc, ranges, degs, scale=rm.degree), degs)


def _plain_push(rm, pc: PlainComplex) -> PlainComplex:
    return PlainComplex(rm.source, pc.deg_lo, [d * rm.degree for d in pc.dims],
                        [push_matrix(rm, d) for d in pc.diffs])


def _plain_pull(rm, pc: PlainComplex) -> PlainComplex:
    return PlainComplex(rm.target, pc.deg_lo, list(pc.dims), [pull_matrix(rm, d) for d in pc.diffs])


def _route(rm, e):
    if e.field == rm.target and not rm.is_identity:
        return "pushforward", pushforward, _plain_push
    if e.field == rm.source:
        return "pullback", pullback, _plain_pull
    raise RingMismatch(f"{e.field} is neither side of {rm}")


def _gr_levels(c: FilteredComplex):
    rs = [c.level_range(i) for i in range(1, c.n + 1)]
    return [(k, None) for k in rs[0]] if c.n == 1 else [(a, b) for a in rs[0] for b in rs[1]]


def gr_commutation_check(rm: RingMap, e: FilteredComplex) -> Report:
    """gr after base change against base change after gr, on cohomology dimensions.
    e over the target field uses pushforward, e over the source field pullback."""
    name, functor, plain = _route(rm, e)
    fe = functor(rm, e)
    a, b = {}, {}
    for k1, k2 in _gr_levels(e):
        for q, d in gr_complex(fe, k1, k2).cohomology_dims().items():
            a[("gr", q, k1, k2)] = d
        for q, d in plain(rm, gr_complex(e, k1, k2)).cohomology_dims().items():
            b[("gr", q, k1, k2)] = d
    return compare_tables(f"gr commutes with {name}", a, b, list(e.degrees()))


def piece_complex(c: FilteredComplex, idx) -> PlainComplex:
    """The subcomplex of a piece (None: the underlying complex) in coordinates of the
    RREF bases of the pieces."""
    pieces = [t.full() if idx is None else t.piece(idx) for t in c.terms]
    diffs = []
    for q, (a, b) in enumerate(zip(pieces, pieces[1:])):
        img = a.basis @ c.diffs[q].T  # rows: images of the basis of a
        diffs.append(b.coordinates(img).T if a.dim and b.dim else Matrix.zeros(c.field, b.dim, a.dim))
    return PlainComplex(c.field, c.deg_lo, [p.dim for p in pieces], diffs)


def _piece_keys(c: FilteredComplex):
    rs = [c.level_range(i) for i in range(1, c.n + 1)]
    keys = [None]
    for i in range(1, c.n + 1):
        keys += [((i, k),) for k in rs[i - 1]]
    if c.n == 2:
        keys += [((1, a), (2, b)) for a in rs[0] for b in rs[1]]
    return keys


def pi_commutation_check(rm: RingMap, e: FilteredComplex) -> Report:
    """Taking a filtration step (or a double piece, or forgetting the filtrations)
    after base change against base change after it, on cohomology dimensions."""
    name, functor, plain = _route(rm, e)
    fe = functor(rm, e)
    a, b = {}, {}
    for idx in _piece_keys(e):
        key = "forget" if idx is None else idx
        for q, d in piece_complex(fe, idx).cohomology_dims().items():
            a[("pi", q, key)] = d
        for q, d in plain(rm, piece_complex(e, idx)).cohomology_dims().items():
            b[("pi", q, key)] = d
    return compare_tables(f"filtration steps commute with {name}", a, b, list(e.degrees()))


def composition_check(rm1: RingMap, rm2: RingMap, e: FilteredComplex) -> Report:
    """Base change along rm2 o rm1 against the two steps.  e over the last field uses
    pushforwards, e over the first field pullbacks."""
    comp = rm2.compose(rm1)
    if e.field == comp.target:
        one = pushforward(comp, e)
        two = pushforward(rm1, pushforward(rm2, e))
        name = "pushforward composition"
    elif e.field == comp.source:
        one = pullback(comp, e)
        two = pullback(rm2, pullback(rm1, e))
        name = "pullback composition"
    else:
        raise RingMismatch("complex is over neither end of the composition")
    ranges, degs = _common([one, two])
    return compare_tables(name, cohomology_table(one, ranges, degs), cohomology_table(two, ranges, degs), degs)


def transitivity_check(rm1: RingMap, rm2: RingMap, e: FilteredComplex, f: FilteredComplex,
                       hull="minimal") -> Report:
    """The adjunction along rm2 o rm1 against the two adjunction steps: the tables of
    RHom_C(pullback e, f), RHom_B(pullback_1 e, pushforward_2 f) and
    RHom_A(e, pushforward f), all counted in dimensions over the first field A."""
    comp = rm2.compose(rm1)
    _check_field(comp, e, "source")
    _check_field(comp, f, "target")
    sides = [
        (rhom(pullback(comp, e), f, hull=hull), comp.degree),
        (rhom(pullback(rm1, e), pushforward(rm2, f), hull=hull), rm1.degree),
        (rhom(e, pushforward(comp, f), hull=hull), 1),
    ]
    ranges, degs = _common([s.complex for s, _ in sides])
    tables = [s.table(ranges, degs, scale=k) for s, k in sides]
    first = compare_tables("transitivity (composite vs middle)", tables[0], tables[1], degs)
    second = compare_tables("transitivity (middle vs restricted)", tables[1], tables[2], degs)
    return Report("transitivity", first.holds and second.holds, first.rows + second.rows, degs,
                  {"composite_vs_middle": first.holds, "middle_vs_restricted": second.holds})


def tensor_hom_adjunction_check(e: FilteredComplex, f: FilteredComplex, g: FilteredComplex,
                                hull="minimal", cover="minimal") -> Report:
    """RHom(e (x)^L f, g) against RHom(e, RHom(f, g)).  The inner RHom is already a
    complex of Hom modules into special injectives, so it is used as it stands."""
    left_t = derived_tensor(e, f, cover=cover)
    left = rhom(left_t.complex, g, hull=hull)
    inner = rhom(f, g, hull=hull)
    right = hom_complex(e, inner.complex)
    ranges, degs = _common([left.complex, right])
    return compare_tables("tensor-hom adjunction", left.table(ranges, degs), cohomology_table(right, ranges, degs),
                          degs, {"left": left.provenance, "inner": inner.provenance})


def unit_complex(field, n=2, degree=0) -> FilteredComplex:
    """The ring itself, trivially filtered, in one degree."""
    return FilteredComplex.from_module(FilteredModule.trivial(field, 1, n), degree)
