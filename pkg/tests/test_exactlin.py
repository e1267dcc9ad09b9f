from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bifiltered.exactlin import (GF, QQ, DimensionMismatch, Matrix, Subspace, intersect, preimage,
                                 quotient_basis, rref, solve, subspace_sum)
from bifiltered.exactlin.fields import ExtensionField
from bifiltered.exactlin.kernels import BACKEND, rref_modp


def test_rref_identity():
    rank, red = rref(Matrix(QQ, [[1, 0], [0, 1]]))
    assert rank == 2
    assert red == Matrix(QQ, [[1, 0], [0, 1]])


def test_rref_zero_matrix():
    rank, red = rref(Matrix.zeros(QQ, 3, 4))
    assert rank == 0
    assert red.is_zero() and red.shape == (3, 4)


def test_rref_hand_example():
    rank, red = rref(Matrix(QQ, [[2, 4], [1, 2]]))
    assert rank == 1
    assert red == Matrix(QQ, [[1, 2], [0, 0]])


def test_rref_keeps_fractions_exact():
    rank, red = rref(Matrix(QQ, [[3, 1], [1, 3]]))
    assert rank == 2
    _, red = rref(Matrix(QQ, [[3, 1, 1]]))
    assert red.a[0, 1] == Fraction(1, 3)


def test_intersect_with_full_space():
    v = Subspace.span(QQ, 3, Matrix(QQ, [[1, 2, 3]]))
    assert intersect(Subspace.full(QQ, 3), v) == v


def test_intersect_coordinate_lines():
    u = Subspace.span(QQ, 2, Matrix(QQ, [[1, 0]]))
    v = Subspace.span(QQ, 2, Matrix(QQ, [[0, 1]]))
    assert intersect(u, v).dim == 0


def test_intersect_hand_example():
    u = Subspace.span(QQ, 3, Matrix(QQ, [[1, 0, 1], [0, 1, 1]]))
    v = Subspace.span(QQ, 3, Matrix(QQ, [[1, 1, 2], [1, 0, 0]]))
    assert intersect(u, v) == Subspace.span(QQ, 3, Matrix(QQ, [[1, 1, 2]]))


def test_intersect_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(Subspace.full(QQ, 2), Subspace.full(QQ, 3))


def test_quotient_basis_plane_by_line():
    reps, proj = quotient_basis(Subspace.full(QQ, 2), Subspace.span(QQ, 2, Matrix(QQ, [[1, 0]])))
    assert reps == Matrix(QQ, [[0, 1]])
    assert proj @ Matrix(QQ, [[5], [7]]) == Matrix(QQ, [[7]])


def test_quotient_basis_requires_containment():
    u = Subspace.span(QQ, 2, Matrix(QQ, [[1, 0]]))
    v = Subspace.span(QQ, 2, Matrix(QQ, [[0, 1]]))
    with pytest.raises(ValueError):
        quotient_basis(v, u)


def test_preimage_of_zero_is_kernel():
    m = Matrix(QQ, [[1, 2, 3], [2, 4, 6]])
    assert preimage(m, Subspace.zero(QQ, 2)) == m.kernel()
    assert m.kernel().dim == 2


def test_solve_back_substitution():
    x = solve(Matrix(QQ, [[1, 1], [0, 1]]), Matrix(QQ, [[3], [1]]))
    assert x == Matrix(QQ, [[2], [1]])


def test_solve_inconsistent():
    assert solve(Matrix(QQ, [[1, 1], [1, 1]]), Matrix(QQ, [[1], [2]])) is None


def test_solve_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        solve(Matrix(QQ, [[1, 0]]), Matrix(QQ, [[1], [2]]))


def test_empty_matrices_are_legal():
    z = Matrix.zeros(GF(3), 0, 4)
    assert z.rank() == 0
    assert Subspace.span(GF(3), 4, z).dim == 0
    assert Matrix.zeros(QQ, 3, 0).kernel().dim == 0
    assert Subspace.full(QQ, 0).dim == 0


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        GF(6)


def test_ring_equality_is_structural():
    assert GF(5) == GF(5)
    assert GF(5) != GF(7)
    assert GF(2) != QQ


def test_prime_field_arithmetic_is_reduced():
    m = Matrix(GF(5), [[7, -1]])
    assert m.tolist() == [[2, 4]]


def test_extension_field_multiplication_group():
    f = ExtensionField(2, 2)
    nonzero = list(range(1, 4))
    for a in nonzero:
        assert f.mul(a, f.inv(a)) == 1
    assert sorted(f.power(f.generator, k) for k in range(3)) == nonzero


def test_backends_agree_on_random_matrices():
    rng = np.random.default_rng(0)
    for p in (2, 3, 7, 101):
        for _ in range(20):
            a = rng.integers(0, p, size=(rng.integers(1, 8), rng.integers(1, 8)), dtype=np.int64)
            x, y = a.copy(), a.copy()
            pa = rref_modp(x, p, "python")
            pb = rref_modp(y, p, BACKEND)
            assert list(pa) == list(pb)
            assert np.array_equal(x, y)


fields = st.sampled_from([GF(2), GF(3), QQ])


@st.composite
def subspace_pairs(draw):
    f = draw(fields)
    n = draw(st.integers(0, 5))
    entries = st.integers(-3, 3)

    def sub():
        rows = draw(st.integers(0, n))
        data = [[draw(entries) for _ in range(n)] for _ in range(rows)]
        return Subspace.span(f, n, Matrix(f, data, shape=(rows, n)))

    return sub(), sub()


@settings(max_examples=80, deadline=None)
@given(subspace_pairs())
def test_modular_law(pair):
    u, v = pair
    assert u.dim + v.dim == subspace_sum(u, v).dim + intersect(u, v).dim


@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_rref_is_idempotent_and_canonical(pair):
    u, _ = pair
    rank, red = rref(u.basis)
    assert rank == u.dim and red == u.basis
    assert Subspace.span(u.field, u.ambient_dim, u.basis) == u


def test_lattice_operations_match_enumeration_over_f2():
    rng = np.random.default_rng(1)
    f = GF(2)
    for _ in range(100):
        n = int(rng.integers(1, 5))
        a = Matrix(f, rng.integers(0, 2, size=(rng.integers(0, n + 1), n)).tolist(), shape=(-1, n))
        b = Matrix(f, rng.integers(0, 2, size=(rng.integers(0, n + 1), n)).tolist(), shape=(-1, n))
        u, v = Subspace.span(f, n, a), Subspace.span(f, n, b)
        su, sv = oracles.span_set(a.a.tolist(), n), oracles.span_set(b.a.tolist(), n)
        assert oracles.vectors(intersect(u, v)) == su & sv
        assert oracles.vectors(subspace_sum(u, v)) == oracles.span_set(a.a.tolist() + b.a.tolist(), n)
