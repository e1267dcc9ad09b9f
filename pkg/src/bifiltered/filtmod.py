"""Modules with one or two increasing filtrations, their morphisms, and the
product/sum constructions that yield strictly injective and strictly flat modules.

A filtration is stored on a finite window [lo, hi] and is constant outside it: the
step at lo is used for every k < lo and the step at hi for every k > hi, so
filtrations need be neither separated nor exhaustive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from .exactlin import Matrix, Subspace, intersect_all, sum_all
from .exactlin.matrix import DimensionMismatch

NEG_INF = -math.inf
POS_INF = math.inf


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiltrationChain:
    lo: int
    hi: int
    steps: tuple

    def __post_init__(self):
        if self.hi < self.lo or len(self.steps) != self.hi - self.lo + 1:
            raise FiltrationError(
                f"FiltrationChain window [{self.lo}, {self.hi}] needs {self.hi - self.lo + 1} steps")
        ambients = {s.ambient_dim for s in self.steps}
        if len(ambients) != 1:
            raise FiltrationError("FiltrationChain steps live in different ambients")
        for k, (a, b) in enumerate(zip(self.steps, self.steps[1:])):
            if not a <= b:
                raise FiltrationError(
                    f"FiltrationChain monotonicity violated between levels {self.lo + k} and {self.lo + k + 1}")

    @classmethod
    def constant(cls, sub: Subspace, level: int = 0):
        return cls(level, level, (sub,))

    @classmethod
    def trivial(cls, field, dim):
        """0 below level 0 and everything from level 0 on."""
        return cls(-1, 0, (Subspace.zero(field, dim), Subspace.full(field, dim)))

    @classmethod
    def from_function(cls, lo, hi, fn):
        return cls(lo, hi, tuple(fn(k) for k in range(lo, hi + 1)))

    @property
    def ambient_dim(self):
        return self.steps[0].ambient_dim

    @property
    def field(self):
        return self.steps[0].field

    def at(self, k) -> Subspace:
        if k <= self.lo:
            return self.steps[0]
        if k >= self.hi:
            return self.steps[-1]
        return self.steps[k - self.lo]

    @property
    def bottom(self):
        return self.steps[0]

    @property
    def top(self):
        return self.steps[-1]

    def jumps(self):
        """Levels l with step l strictly larger than step l - 1."""
        return [self.lo + j for j in range(1, len(self.steps)) if self.steps[j].dim > self.steps[j - 1].dim]

    def normalized(self):
        steps = list(self.steps)
        lo, hi = self.lo, self.hi
        while len(steps) > 1 and steps[0] == steps[1]:
            steps.pop(0)
            lo += 1
        while len(steps) > 1 and steps[-1] == steps[-2]:
            steps.pop()
            hi -= 1
        return FiltrationChain(lo, hi, tuple(steps))

    def shifted(self, l: int):
        """Chain with new step k equal to old step l + k."""
        return FiltrationChain(self.lo - l, self.hi - l, self.steps)

    def with_window(self, lo, hi):
        return FiltrationChain.from_function(lo, hi, self.at)

    def is_biregular(self):
        return self.bottom.dim == 0 and self.top.is_full()

    def __eq__(self, other):
        if not isinstance(other, FiltrationChain):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            return False
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return all(self.at(k) == other.at(k) for k in range(lo, hi + 1))

    def __hash__(self):
        n = self.normalized()
        return hash((n.lo, n.hi, n.steps))

    def __repr__(self):
        dims = [s.dim for s in self.steps]
        return f"FiltrationChain([{self.lo}, {self.hi}], dims={dims})"


@dataclass(frozen=True, eq=False)
class Block:
    """A coordinate block of a product- or sum-shaped module.

    kind "base" is the unfiltered part; for a product-shaped module a "factor" has a
    single filtration index and a level (int or +inf); for a sum-shaped module a
    "summand" has a tuple of filtration indices and one level (int or -inf) for each.
    """

    kind: str
    offset: int
    dim: int
    filtrations: tuple = ()
    levels: tuple = ()
    source: object = None  # optional Subspace the block is a copy of

    @property
    def slice(self):
        return slice(self.offset, self.offset + self.dim)


@dataclass(frozen=True, eq=False)
class Shape:
    kind: str  # "pi" or "sigma"
    blocks: tuple


@dataclass(frozen=True, eq=False)
class FilteredModule:
    field: object
    dim: int
    chains: tuple
    shape: Shape | None = dc_field(default=None)

    def __post_init__(self):
        if len(self.chains) not in (1, 2):
            raise FiltrationError("only one or two filtrations are supported")
        for c in self.chains:
            if c.ambient_dim != self.dim or c.field != self.field:
                raise FiltrationError("filtration chain does not live in the module")

    @property
    def n(self):
        return len(self.chains)

    @classmethod
    def trivial(cls, field, dim, n=2):
        return cls(field, dim, tuple(FiltrationChain.trivial(field, dim) for _ in range(n)))

    @classmethod
    def zero(cls, field, n=2):
        return cls(field, 0, tuple(FiltrationChain.constant(Subspace.zero(field, 0)) for _ in range(n)))

    @classmethod
    def from_bases(cls, field, dim, chains_spec):
        """chains_spec: per filtration (lo, [list of spanning rows per level])."""
        chains = []
        for lo, steps in chains_spec:
            subs = tuple(Subspace.span(field, dim, Matrix(field, rows, shape=(-1, dim)) if rows
                                       else Matrix.zeros(field, 0, dim)) for rows in steps)
            chains.append(FiltrationChain(lo, lo + len(subs) - 1, subs))
        return cls(field, dim, tuple(chains))

    def chain(self, i) -> FiltrationChain:
        if not 1 <= i <= self.n:
            raise FiltrationError(f"filtration id {i} out of range 1..{self.n}")
        return self.chains[i - 1]

    def at(self, i, k) -> Subspace:
        return self.chain(i).at(k)

    def full(self):
        return Subspace.full(self.field, self.dim)

    def piece(self, indices) -> Subspace:
        return intersect_all(self.field, self.dim, [self.at(i, k) for i, k in indices])

    def is_biregular(self, i=None):
        if i is not None:
            return self.chain(i).is_biregular()
        return all(c.is_biregular() for c in self.chains)

    def window(self, i):
        c = self.chain(i)
        return c.lo, c.hi

    def with_shape(self, shape):
        return FilteredModule(self.field, self.dim, self.chains, shape)

    def __eq__(self, other):
        if not isinstance(other, FilteredModule):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim and self.n == other.n
                and all(a == b for a, b in zip(self.chains, other.chains)))

    def __hash__(self):
        return hash((self.dim, self.chains))

    def __repr__(self):
        return f"FilteredModule({self.field}, dim={self.dim}, chains={list(self.chains)})"


def _check_compatible(e: FilteredModule, f: FilteredModule):
    if e.field != f.field:
        raise DimensionMismatch(f"ring mismatch: {e.field} vs {f.field}")
    if e.n != f.n:
        raise DimensionMismatch(f"number of filtrations differs: {e.n} vs {f.n}")


def joint_levels(i, *modules, pad=1):
    los = [m.chain(i).lo for m in modules]
    his = [m.chain(i).hi for m in modules]
    return range(min(los) - pad, max(his) + pad + 1)


def index_patterns(n):
    """The index tuples (i_1 <= ... <= i_n) quantified over in strictness statements."""
    return [(1,)] if n == 1 else [(1, 1), (1, 2), (2, 2)]


def piece_indices(n, *modules, pad=1):
    """All (pattern, levels) pairs over the joint window; patterns with repeated
    filtration ids collapse to one level since such pieces are single steps."""
    out = []
    for pat in index_patterns(n):
        if len(set(pat)) == 1:
            i = pat[0]
            for k in joint_levels(i, *modules, pad=pad):
                out.append(tuple((i, k) for _ in pat))
        else:
            for k1 in joint_levels(1, *modules, pad=pad):
                for k2 in joint_levels(2, *modules, pad=pad):
                    out.append(((1, k1), (2, k2)))
    return out


def piece(e: FilteredModule, indices) -> Subspace:
    return e.piece(indices)


class FilteredMorphism:
    """A linear map source -> target (matrix of shape target.dim x source.dim)
    sending each filtration step into the same step of the target."""

    __slots__ = ("source", "target", "map")

    def __init__(self, source: FilteredModule, target: FilteredModule, map: Matrix, check=True):
        _check_compatible(source, target)
        if map.shape != (target.dim, source.dim):
            raise DimensionMismatch(f"map of shape {map.shape} between dims {source.dim} -> {target.dim}")
        self.source = source
        self.target = target
        self.map = map
        if check:
            bad = self.filtration_violation()
            if bad is not None:
                raise FiltrationError(f"map does not respect filtration {bad[0]} at level {bad[1]}")

    def filtration_violation(self):
        for i in range(1, self.source.n + 1):
            for k in joint_levels(i, self.source, self.target, pad=0):
                if not self.source.at(i, k).image(self.map) <= self.target.at(i, k):
                    return i, k
        return None

    @classmethod
    def identity(cls, e):
        return cls(e, e, Matrix.identity(e.field, e.dim), check=False)

    @classmethod
    def zero(cls, e, f):
        return cls(e, f, Matrix.zeros(e.field, f.dim, e.dim), check=False)

    def __matmul__(self, other):
        return FilteredMorphism(other.source, self.target, self.map @ other.map, check=False)

    def image(self) -> Subspace:
        return self.source.full().image(self.map)

    def is_injective(self):
        return self.map.rank() == self.source.dim

    def is_surjective(self):
        return self.map.rank() == self.target.dim

    def __repr__(self):
        return f"FilteredMorphism({self.source.dim} -> {self.target.dim}, {self.map.tolist()})"


@dataclass
class StrictnessWitness:
    indices: tuple
    image_of_piece: Subspace
    image_meet_piece: Subspace


def is_strict(f: FilteredMorphism):
    """(True, None) if Im(f) meets every target piece exactly in the image of the
    corresponding source piece; otherwise (False, witness)."""
    im = f.image()
    onto = im.is_full()
    # every chain is constant outside its window, so levels beyond the joint window
    # repeat the pieces at its ends
    for idx in piece_indices(f.source.n, f.source, f.target, pad=0):
        target_piece = f.target.piece(idx)
        rhs = f.source.piece(idx).image(f.map)
        if onto:  # rhs <= target_piece always holds, so equal dimensions suffice
            if rhs.dim == target_piece.dim:
                continue
            return False, StrictnessWitness(idx, rhs, target_piece)
        lhs = im.intersect(target_piece)
        if lhs != rhs:
            return False, StrictnessWitness(idx, rhs, lhs)
    return True, None


def is_strict_per_filtration(f: FilteredMorphism, i: int) -> bool:
    im = f.image()
    for k in joint_levels(i, f.source, f.target, pad=0):
        if im.intersect(f.target.at(i, k)) != f.source.at(i, k).image(f.map):
            return False
    return True


@dataclass
class GrQuotient:
    dim: int
    piece: Subspace
    sub: Subspace
    representatives: Matrix
    projection: Matrix


def gr_subspaces(e: FilteredModule, k1, k2=None, i=1):
    if k2 is None or e.n == 1:
        top = e.at(i, k1)
        return top, e.at(i, k1 - 1)
    top = e.piece(((1, k1), (2, k2)))
    sub = e.piece(((1, k1 - 1), (2, k2))) + e.piece(((1, k1), (2, k2 - 1)))
    return top, sub


def gr(e: FilteredModule, k1, k2=None, i=1) -> GrQuotient:
    """Double graded piece E_{k1,k2}/(E_{k1-1,k2} + E_{k1,k2-1}); with k2 omitted (or a
    single filtration) the graded piece E_k/E_{k-1} of filtration i."""
    top, sub = gr_subspaces(e, k1, k2, i)
    reps, proj = top.quotient_basis(sub)
    return GrQuotient(top.dim - sub.dim, top, sub, reps, proj)


def shift(e: FilteredModule, l) -> FilteredModule:
    l = tuple(l)
    if len(l) != e.n:
        raise ValueError(f"shift needs {e.n} integers")
    return FilteredModule(e.field, e.dim, tuple(c.shifted(s) for c, s in zip(e.chains, l)))


def direct_sum(modules, field=None, n=None):
    modules = list(modules)
    if not modules:
        return FilteredModule.zero(field, n or 2)
    field = modules[0].field
    n = modules[0].n
    for m in modules[1:]:
        _check_compatible(modules[0], m)
    dim = sum(m.dim for m in modules)
    chains = []
    for i in range(1, n + 1):
        lo = min(m.chain(i).lo for m in modules)
        hi = max(m.chain(i).hi for m in modules)

        def step(k, i=i):
            blocks = [m.at(i, k).basis for m in modules]
            return Subspace.span(field, dim, Matrix.block_diag(field, blocks))

        chains.append(FiltrationChain.from_function(lo, hi, step))
    return FilteredModule(field, dim, tuple(chains))


def submodule(e: FilteredModule, u: Subspace):
    """u with the induced filtrations, in the coordinates of u's RREF basis, together
    with the inclusion matrix (e.dim x u.dim)."""
    f = e.field
    incl = u.basis.T

    def restrict(s):
        meet = s.intersect(u)
        return Subspace.span(f, u.dim, u.coordinates(meet.basis))

    chains = tuple(FiltrationChain(c.lo, c.hi, tuple(restrict(s) for s in c.steps)) for c in e.chains)
    return FilteredModule(f, u.dim, chains), incl


def quotient_module(e: FilteredModule, u: Subspace):
    """e/u with the image filtrations, and the projection matrix."""
    f = e.field
    reps, proj = e.full().quotient_basis(u)
    q = reps.rows
    chains = tuple(
        FiltrationChain(c.lo, c.hi, tuple(Subspace.span(f, q, s.basis @ proj.T) for s in c.steps))
        for c in e.chains)
    return FilteredModule(f, q, chains), proj


def image_filtration_module(field, dim, maps_and_modules):
    """Module of dimension `dim` whose filtration i at k is the sum of the images
    m(M_k^{(i)}) over the given (matrix, module) pairs."""
    n = maps_and_modules[0][1].n
    chains = []
    for i in range(1, n + 1):
        lo = min(m.chain(i).lo for _, m in maps_and_modules)
        hi = max(m.chain(i).hi for _, m in maps_and_modules)
        chains.append(FiltrationChain.from_function(
            lo, hi, lambda k, i=i: sum_all(field, dim, [m.at(i, k).image(a) for a, m in maps_and_modules])))
    return FilteredModule(field, dim, tuple(chains))


# ---------------------------------------------------------------- Hom and tensor

def maps_into_constraint(s: Subspace, t: Subspace, dim_e: int):
    """Rows of linear constraints on row-major vec(phi) expressing phi(s) <= t."""
    if s.dim == 0 or t.is_full():
        return None
    ann = t.annihilator()
    return ann.kron(s.basis)


def hom_filtered(e: FilteredModule, f: FilteredModule) -> FilteredModule:
    """All linear maps e -> f (row-major vectorised, f.dim * e.dim coordinates) with
    filtration i at level k made of the maps sending e_l into f_{l+k} for every l."""
    _check_compatible(e, f)
    field = e.field
    dim = e.dim * f.dim
    chains = []
    for i in range(1, e.n + 1):
        ce, cf = e.chain(i), f.chain(i)
        lo, hi = cf.lo - ce.hi - 1, cf.hi - ce.lo
        base_rows = []
        c = maps_into_constraint(ce.bottom, cf.bottom, e.dim)
        if c is not None:
            base_rows.append(c)

        def step(k):
            rows = list(base_rows)
            for l in range(ce.lo, ce.hi + 1):
                c = maps_into_constraint(ce.at(l), cf.at(l + k), e.dim)
                if c is not None:
                    rows.append(c)
            if not rows:
                return Subspace.full(field, dim)
            return Matrix.vstack(field, rows).kernel()

        chains.append(FiltrationChain.from_function(lo, hi, step))
    return FilteredModule(field, dim, tuple(chains))


def unvec(v: Matrix, rows: int, cols: int) -> Matrix:
    """Row vector of length rows*cols (row-major) to a rows x cols matrix."""
    return Matrix.wrap(v.field, v.a.reshape(rows, cols).copy())


def vec(m: Matrix) -> Matrix:
    return Matrix.wrap(m.field, m.a.reshape(1, -1).copy())


def tensor_filtered(e: FilteredModule, f: FilteredModule) -> FilteredModule:
    """e (x) f with coordinates a * f.dim + b and filtration sum_{l+m=k} e_l (x) f_m."""
    _check_compatible(e, f)
    field = e.field
    dim = e.dim * f.dim
    chains = []
    for i in range(1, e.n + 1):
        ce, cf = e.chain(i), f.chain(i)
        lo, hi = ce.lo + cf.lo - 1, ce.hi + cf.hi

        def tens(s, t):
            return Subspace.span(field, dim, s.basis.kron(t.basis)) if s.dim and t.dim else None

        tails = [tens(ce.bottom, cf.top), tens(ce.top, cf.bottom)]

        def step(k):
            parts = [x for x in tails if x is not None]
            for l in range(ce.lo, ce.hi + 1):
                x = tens(ce.at(l), cf.at(k - l))
                if x is not None:
                    parts.append(x)
            return sum_all(field, dim, parts)

        chains.append(FiltrationChain.from_function(lo, hi, step))
    return FilteredModule(field, dim, tuple(chains))


# ---------------------------------------------------- product- and sum-shaped modules

def _level_key(x):
    return (x,)


def pi_module(field, n, base_dim, factors, sources=None):
    """Product-shaped module: an unfiltered base times factors (i, level, dim).  A factor
    of filtration i and level l lies in step k of filtration i iff l <= k, and in every
    step of the other filtrations; the base lies in every step of every filtration."""
    blocks = [Block("base", 0, base_dim)]
    off = base_dim
    for idx, (i, level, d) in enumerate(factors):
        src = sources[idx] if sources else None
        blocks.append(Block("factor", off, d, (i,), (level,), src))
        off += d
    dim = off
    chains = []
    for i in range(1, n + 1):
        finite = [b.levels[0] for b in blocks[1:] if b.filtrations == (i,) and b.levels[0] != POS_INF]
        lo = (min(finite) - 1) if finite else 0
        hi = max(finite) if finite else 0

        def step(k, i=i):
            idx = []
            for b in blocks:
                if b.kind == "base" or b.filtrations != (i,) or b.levels[0] <= k:
                    idx.extend(range(b.offset, b.offset + b.dim))
            return _coordinate_subspace(field, dim, idx)

        chains.append(FiltrationChain.from_function(lo, hi, step))
    return FilteredModule(field, dim, tuple(chains), Shape("pi", tuple(blocks)))


def sigma_module(field, n, base_dim, summands, sources=None):
    """Sum-shaped module: a base plus summands (P, levels, dim) with P a tuple of
    filtration ids.  A summand lies in step k of filtration i iff i is in P and its
    level for i is <= k; the base lies in no step."""
    blocks = [Block("base", 0, base_dim)]
    off = base_dim
    for idx, (P, levels, d) in enumerate(summands):
        src = sources[idx] if sources else None
        blocks.append(Block("summand", off, d, tuple(P), tuple(levels), src))
        off += d
    dim = off
    chains = []
    for i in range(1, n + 1):
        finite = [lv for b in blocks[1:] for j, lv in zip(b.filtrations, b.levels)
                  if j == i and lv != NEG_INF]
        lo = (min(finite) - 1) if finite else 0
        hi = max(finite) if finite else 0

        def step(k, i=i):
            idx = []
            for b in blocks[1:]:
                if i in b.filtrations and b.levels[b.filtrations.index(i)] <= k:
                    idx.extend(range(b.offset, b.offset + b.dim))
            return _coordinate_subspace(field, dim, idx)

        chains.append(FiltrationChain.from_function(lo, hi, step))
    return FilteredModule(field, dim, tuple(chains), Shape("sigma", tuple(blocks)))


def _coordinate_subspace(field, dim, idx):
    idx = sorted(idx)
    basis = field.zeros((len(idx), dim))
    for r, c in enumerate(idx):
        basis[r, c] = field.one()
    return Subspace(field, dim, Matrix.wrap(field, basis), tuple(idx))


def is_pi_shaped(m: FilteredModule):
    return m.shape is not None and m.shape.kind == "pi"


def is_sigma_shaped(m: FilteredModule):
    return m.shape is not None and m.shape.kind == "sigma"


def pi_special(f: FilteredModule) -> FilteredModule:
    """F times the copies F_l^{(i)} for l in [lo_i - 1, hi_i + 1], each factor carrying
    the subspace it copies (so morphisms into it can be read off)."""
    factors, sources = [], []
    for i in range(1, f.n + 1):
        c = f.chain(i)
        for l in range(c.lo - 1, c.hi + 2):
            s = c.at(l)
            factors.append((i, l, s.dim))
            sources.append(s)
    return pi_module(f.field, f.n, f.dim, factors, sources)


def pi_hom_rhs(e: FilteredModule, f: FilteredModule) -> int:
    """dim Hom(E, F) + sum over the factors of pi_special(F) of dim Hom(E/E_{l-1}, F_l)."""
    total = e.dim * f.dim
    for i in range(1, f.n + 1):
        c = f.chain(i)
        for l in range(c.lo - 1, c.hi + 2):
            total += (e.dim - e.at(i, l - 1).dim) * c.at(l).dim
    return total


def sigma_levels(e: FilteredModule, mode="window"):
    """Per filtration, the levels used for summands: -inf (the bottom step) followed by
    the window levels, or only the jump levels when mode == "jumps"."""
    out = []
    for c in e.chains:
        lv = list(range(c.lo, c.hi + 1)) if mode == "window" else c.jumps()
        out.append([NEG_INF] + lv)
    return out


def _step(e, i, level):
    c = e.chain(i)
    return c.bottom if level == NEG_INF else c.at(level)


def sigma_pieces(e: FilteredModule, mode="window"):
    """(P, levels, Subspace) for every summand of the sum construction on e."""
    levels = sigma_levels(e, mode)
    subsets = [(1,)] if e.n == 1 else [(1,), (2,), (1, 2)]
    out = []
    for P in subsets:
        for lv in itertools.product(*[levels[i - 1] for i in P]):
            s = intersect_all(e.field, e.dim, [_step(e, i, l) for i, l in zip(P, lv)])
            out.append((P, lv, s))
    return out


def sigma_special(e: FilteredModule, mode="window") -> FilteredModule:
    """E plus a copy of E^P_{l} for every nonempty P and window level tuple l."""
    summands, sources = [], []
    for P, lv, s in sigma_pieces(e, mode):
        if s.dim:
            summands.append((P, lv, s.dim))
            sources.append(s)
    return sigma_module(e.field, e.n, e.dim, summands, sources)


def sigma_hom_rhs(e: FilteredModule, f: FilteredModule, mode="window") -> int:
    """dim Hom(E, F) + sum over summands of dim Hom(E^P_l, F^P_l)."""
    total = e.dim * f.dim
    for P, lv, s in sigma_pieces(e, mode):
        if s.dim:
            t = intersect_all(f.field, f.dim, [_step(f, i, l) for i, l in zip(P, lv)])
            total += s.dim * t.dim
    return total


def sigma_piece_blocks(m: FilteredModule, indices):
    """Coordinates of the summands that make up a piece of a sum-shaped module."""
    idx = []
    for b in m.shape.blocks[1:]:
        ok = True
        for i, k in indices:
            if i not in b.filtrations or b.levels[b.filtrations.index(i)] > k:
                ok = False
                break
        if ok:
            idx.extend(range(b.offset, b.offset + b.dim))
    return idx


# ------------------------------------------------------------ adapted bases

def _grid(c: FiltrationChain):
    """Distinct levels of a chain: -inf (bottom), each jump, +inf (whole space)."""
    g = [NEG_INF] + c.jumps()
    if not c.top.is_full():
        g.append(POS_INF)
    return g


def _grid_step(e, i, level):
    c = e.chain(i)
    if level == NEG_INF:
        return c.bottom
    if level == POS_INF:
        return e.full()
    return c.at(level)


def adapted_basis(e: FilteredModule):
    """A basis in which every filtration step is spanned by basis vectors, as a list
    of (row vector, levels) where levels[i] is the first level of filtration i+1
    containing the vector (-inf: every level, +inf: none)."""
    f = e.field
    grids = [_grid(c) for c in e.chains]
    out = []
    for lv in itertools.product(*grids):
        top = intersect_all(f, e.dim, [_grid_step(e, i + 1, l) for i, l in enumerate(lv)])
        if top.dim == 0:
            continue
        subs = []
        for i, l in enumerate(lv):
            g = grids[i]
            j = g.index(l)
            if j == 0:
                continue
            lower = list(lv)
            lower[i] = g[j - 1]
            subs.append(intersect_all(f, e.dim, [_grid_step(e, t + 1, x) for t, x in enumerate(lower)]))
        sub = sum_all(f, e.dim, subs)
        reps, _ = top.quotient_basis(sub)
        for r in range(reps.rows):
            out.append((reps[r:r + 1, :], tuple(lv)))
    if len(out) != e.dim:
        raise AssertionError("adapted basis has the wrong size")
    return out


# ------------------------------------------------------- embeddings and covers

def embed_special(e: FilteredModule, mode="window") -> FilteredMorphism:
    """Strict injection of e into a product-shaped module.

    mode "window" / "jumps": base E and factors E/E_{l-1}^{(i)} at level l for every
    window level (resp. every jump level), plus a factor E/E_top^{(i)} at level +inf
    when filtration i is not exhaustive.  mode "minimal": built from an adapted basis,
    each basis vector going to the base or to at most one factor per filtration.
    """
    if mode == "minimal":
        return _minimal_hull(e)
    f = e.field
    factors, maps = [], []
    for i in range(1, e.n + 1):
        c = e.chain(i)
        levels = list(range(c.lo, c.hi + 1)) if mode == "window" else c.jumps()
        for l in levels + [POS_INF]:
            below = c.top if l == POS_INF else c.at(l - 1)
            if below.is_full():
                continue
            _, proj = e.full().quotient_basis(below)
            factors.append((i, l, proj.rows))
            maps.append(proj)
    j = pi_module(f, e.n, e.dim, factors)
    m = Matrix.vstack(f, [Matrix.identity(f, e.dim)] + maps, cols=e.dim)
    return FilteredMorphism(e, j, m, check=False)


def _minimal_hull(e):
    f = e.field
    lines = adapted_basis(e)
    base_rows = []
    factor_rows = {}
    for t, (v, lv) in enumerate(lines):
        finite = [i + 1 for i, l in enumerate(lv) if l != NEG_INF]
        if not finite:
            base_rows.append(t)
        for i in finite:
            factor_rows.setdefault((i, lv[i - 1]), []).append(t)
    keys = sorted(factor_rows, key=lambda x: (x[0], x[1]))
    factors = [(i, l, len(factor_rows[(i, l)])) for i, l in keys]
    j = pi_module(f, e.n, len(base_rows), factors)
    # image of the t-th adapted vector in J
    img = f.zeros((j.dim, e.dim))
    for r, t in enumerate(base_rows):
        img[r, t] = f.one()
    off = len(base_rows)
    for key in keys:
        for r, t in enumerate(factor_rows[key]):
            img[off + r, t] = f.one()
        off += len(factor_rows[key])
    change = Matrix.vstack(f, [v for v, _ in lines], cols=e.dim).T  # columns: adapted vectors
    m = Matrix.wrap(f, img) @ change.inverse() if e.dim else Matrix.zeros(f, j.dim, 0)
    return FilteredMorphism(e, j, m, check=False)


def cover_special(e: FilteredModule, mode="window") -> FilteredMorphism:
    """Strict surjection onto e from a sum-shaped module.

    mode "window" / "jumps": the sum construction on e (free on the chosen bases of e
    and of each piece), mapping each summand by inclusion.  mode "minimal": one
    summand per adapted-basis type, giving a strict isomorphism.
    """
    f = e.field
    if mode == "minimal":
        lines = adapted_basis(e)
        groups = {}
        base = []
        for t, (v, lv) in enumerate(lines):
            P = tuple(i + 1 for i, l in enumerate(lv) if l != POS_INF)
            if not P:
                base.append(t)
            else:
                groups.setdefault((P, tuple(lv[i - 1] for i in P)), []).append(t)
        keys = sorted(groups, key=lambda x: (len(x[0]), x[0], x[1]))
        r = sigma_module(f, e.n, len(base), [(P, lv, len(groups[(P, lv)])) for P, lv in keys])
        order = base + [t for key in keys for t in groups[key]]
        cols = Matrix.vstack(f, [lines[t][0] for t in order], cols=e.dim).T \
            if order else Matrix.zeros(f, e.dim, 0)
        return FilteredMorphism(r, e, cols, check=False)
    summands, incl = [], []
    for P, lv, s in sigma_pieces(e, mode):
        if s.dim:
            summands.append((P, lv, s.dim))
            incl.append(s.basis.T)
    r = sigma_module(f, e.n, e.dim, summands, None)
    m = Matrix.hstack(f, [Matrix.identity(f, e.dim)] + incl, rows=e.dim)
    return FilteredMorphism(r, e, m, check=False)


def is_strict_injective(f: FilteredMorphism) -> bool:
    return f.is_injective() and is_strict(f)[0]


def is_strict_surjective(f: FilteredMorphism) -> bool:
    return f.is_surjective() and is_strict(f)[0]


def restriction_of_hom(e: FilteredModule, f: FilteredModule, j: FilteredModule, incl: Matrix):
    """Precomposition Hom(F, J) -> Hom(E, J) with incl: E -> F, as a filtered morphism of
    the filtered Hom modules."""
    he, hf = hom_filtered(e, j), hom_filtered(f, j)
    # phi (j.dim x f.dim) |-> phi @ incl; on row-major vec this is kron(I_j, incl^T)
    m = Matrix.identity(e.field, j.dim).kron(incl.T)
    return FilteredMorphism(hf, he, m, check=False)
