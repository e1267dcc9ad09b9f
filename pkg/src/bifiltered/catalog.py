"""Built-in example objects."""

from .exactlin import QQ, Matrix
from .filtcomplex import FilteredComplex
from .filtmod import FilteredModule, FilteredMorphism, shift


def summation_map(field=QQ):
    """The summation map M + M -> M with M = field^2 and N = span{(1, 0)}.

    Source filtrations: 0 below level 0, then N + 0 (first) or 0 + N (second) at
    level 0, everything from level 1 on.  Target: both filtrations 0 below 0, N at 0,
    M from 1 on.  Returns (source, target, map).  Each filtration alone is strict, the
    pair is not: the image of the double piece at (0, 0) is zero while the image
    meets the target piece in N.
    """
    e = FilteredModule.from_bases(field, 4, [
        (-1, [[], [[1, 0, 0, 0]], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]]),
        (-1, [[], [[0, 0, 1, 0]], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]]),
    ])
    p = (-1, [[], [[1, 0]], [[1, 0], [0, 1]]])
    f = FilteredModule.from_bases(field, 2, [p, p])
    s = FilteredMorphism(e, f, Matrix(field, [[1, 0, 1, 0], [0, 1, 0, 1]]))
    return e, f, s


def doubly_finite_line(field=QQ, level=(0, 0)):
    """A line whose vector enters both filtrations at finite levels (and is absent
    below them), as a one-term complex in degree 0."""
    m = FilteredModule.from_bases(field, 1, [(level[0] - 1, [[], [[1]]]), (level[1] - 1, [[], [[1]]])])
    return FilteredComplex.from_module(m)


def shift_pair(field=QQ):
    """E = field^2 with one vector entering filtration 1 at level 0 and the other
    at level 1 (filtration 2 trivial), and F = E with filtration 1 shifted by one.
    Returns (E, F) as one-term complexes in degree 0."""
    e = FilteredModule.from_bases(field, 2, [
        (-1, [[], [[1, 0]], [[1, 0], [0, 1]]]),
        (-1, [[], [[1, 0], [0, 1]]]),
    ])
    f = shift(e, (1, 0))
    return FilteredComplex.from_module(e), FilteredComplex.from_module(f)
