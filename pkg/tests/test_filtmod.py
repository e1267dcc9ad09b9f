import itertools

import numpy as np
import pytest

import oracles
from bifiltered import catalog
from bifiltered import generators as g
from bifiltered.exactlin import GF, QQ, Matrix, Subspace
from bifiltered.filtcomplex import level_zero_maps
from bifiltered.filtmod import (FilteredModule, FilteredMorphism, FiltrationChain, FiltrationError,
                                cover_special, direct_sum, embed_special, gr, hom_filtered, is_sigma_shaped,
                                is_strict, is_strict_per_filtration, is_pi_shaped, pi_hom_rhs, pi_special,
                                shift, sigma_hom_rhs, sigma_piece_blocks, sigma_pieces, sigma_special,
                                tensor_filtered)

ZERO = ((1, 0), (2, 0))


def two_step(field=QQ):
    """field^2 with 0 below level 0, span{(1, 0)} at level 0 and everything from 1 on,
    in both filtrations."""
    chain = (-1, [[], [[1, 0]], [[1, 0], [0, 1]]])
    return FilteredModule.from_bases(field, 2, [chain, chain])


def filtered_dim(e, f):
    return level_zero_maps(e, f).dim


def test_piece_of_trivial_filtration_is_everything():
    m = FilteredModule.trivial(QQ, 3)
    assert m.piece(((1, 0),)).is_full()
    assert m.piece(()).is_full()
    assert m.piece(((1, -1),)).dim == 0


def test_summation_source_double_piece_is_zero():
    e, f, s = catalog.summation_map()
    assert e.piece(ZERO).dim == 0
    assert e.piece(((1, 0),)).dim == 1 and e.piece(((2, 0),)).dim == 1


def test_piece_rejects_unknown_filtration():
    with pytest.raises(FiltrationError):
        FilteredModule.trivial(QQ, 2).piece(((3, 0),))


def test_piece_matches_enumeration_over_f2():
    rng = np.random.default_rng(2)
    for _ in range(50):
        m = g.random_module(GF(2), rng)
        for k1, k2 in itertools.product(range(-3, 4), repeat=2):
            idx = ((1, k1), (2, k2))
            assert oracles.vectors(m.piece(idx)) == oracles.piece_vectors(m, idx)


def test_chain_monotonicity_is_enforced():
    a = Subspace.span(QQ, 2, Matrix(QQ, [[1, 0]]))
    b = Subspace.span(QQ, 2, Matrix(QQ, [[0, 1]]))
    with pytest.raises(FiltrationError, match="monotonicity"):
        FiltrationChain(0, 1, (a, b))


def test_chain_is_constant_outside_window():
    m = two_step()
    assert m.at(1, -10).dim == 0 and m.at(1, 10).is_full()
    n = FilteredModule.from_bases(QQ, 2, [(0, [[[1, 0]]]), (0, [[[1, 0]]])])
    assert n.at(1, -5).dim == 1 and n.at(1, 5).dim == 1  # neither separated nor exhaustive


def test_identity_is_strict():
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = g.random_module(QQ, rng)
        assert is_strict(FilteredMorphism.identity(m)) == (True, None)


def test_summation_map_is_strict_per_filtration_but_not_strict():
    e, f, s = catalog.summation_map()
    assert is_strict_per_filtration(s, 1)
    assert is_strict_per_filtration(s, 2)
    ok, wit = is_strict(s)
    assert not ok
    assert wit.indices == ZERO
    assert wit.image_of_piece.dim == 0
    assert wit.image_meet_piece == Subspace.span(QQ, 2, Matrix(QQ, [[1, 0]]))


def test_zero_morphism_is_strict_per_filtration():
    rng = np.random.default_rng(4)
    for _ in range(20):
        e, f = g.random_module(QQ, rng), g.random_module(QQ, rng)
        z = FilteredMorphism.zero(e, f)
        assert is_strict_per_filtration(z, 1) and is_strict_per_filtration(z, 2)


def test_surjection_between_trivially_filtered_modules_is_strict_per_filtration():
    rng = np.random.default_rng(5)
    for _ in range(20):
        e = FilteredModule.trivial(QQ, int(rng.integers(1, 5)))
        t = FilteredModule.trivial(QQ, int(rng.integers(1, e.dim + 1)))
        while True:
            a = g.random_vectors(QQ, rng, t.dim, e.dim)
            if a.rank() == t.dim:
                break
        f = FilteredMorphism(e, t, a)
        # the image meets each step in 0 or everything, matching the image of the step
        assert is_strict_per_filtration(f, 1) and is_strict_per_filtration(f, 2)


def test_injective_strictness_equals_per_filtration_strictness():
    rng = np.random.default_rng(6)
    seen = set()
    for field in (GF(2), QQ):
        for _ in range(100):
            f = g.random_injective_morphism(field, rng)
            per = all(is_strict_per_filtration(f, i) for i in (1, 2))
            assert is_strict(f)[0] == per
            seen.add(per)
    assert seen == {True, False}


def test_strictness_matches_enumeration_over_f2():
    rng = np.random.default_rng(7)
    outcomes = set()
    for _ in range(60):
        e = g.random_module(GF(2), rng, max_dim=3)
        f = g.random_module(GF(2), rng, max_dim=3)
        # a filtered map from e into e + f, composed with a random filtered map
        m = Matrix.wrap(GF(2), g.random_filtered_map(e, f, rng).a)
        fm = FilteredMorphism(e, f, m)
        ok = is_strict(fm)[0]
        assert ok == oracles.is_strict(fm)[0]
        outcomes.add(ok)
    assert outcomes == {True, False}


def test_gr_of_trivial_filtration():
    m = FilteredModule.trivial(QQ, 3)
    assert gr(m, 0, 0).dim == 3
    for k1, k2 in itertools.product(range(-2, 3), repeat=2):
        if (k1, k2) != (0, 0):
            assert gr(m, k1, k2).dim == 0


def test_gr_two_step_example():
    m = two_step()
    assert gr(m, 0, 0).dim == 1
    assert gr(m, 1, 1).dim == 1
    assert gr(m, 0, 1).dim == 0 and gr(m, 1, 0).dim == 0


def test_gr_single_filtration():
    m = two_step()
    assert [gr(m, k, i=1).dim for k in (-1, 0, 1, 2)] == [0, 1, 1, 0]


def test_gr_dimensions_add_up_for_biregular_modules():
    rng = np.random.default_rng(8)
    for field in (GF(2), GF(3), QQ):
        for _ in range(30):
            m = g.random_module(field, rng, biregular=True)
            total = sum(gr(m, k1, k2).dim for k1 in range(-4, 5) for k2 in range(-4, 5))
            assert total == m.dim


def test_shift_by_zero_and_back():
    rng = np.random.default_rng(9)
    for _ in range(20):
        m = g.random_module(QQ, rng)
        assert shift(m, (0, 0)) == m
        assert shift(shift(m, (2, -1)), (-2, 1)) == m


def test_shift_moves_jump_down():
    m = FilteredModule.from_bases(QQ, 1, [(-1, [[], [[1]]])])
    assert m.chain(1).jumps() == [0]
    assert shift(m, (1,)).chain(1).jumps() == [-1]


def test_hom_of_trivially_filtered_modules():
    h = hom_filtered(FilteredModule.trivial(QQ, 2), FilteredModule.trivial(QQ, 3))
    for i in (1, 2):
        assert h.at(i, -1).dim == 0
        assert h.at(i, 0).is_full() and h.at(i, 4).is_full()


def test_hom_pieces_count_morphisms_into_shifts():
    rng = np.random.default_rng(10)
    for _ in range(40):
        e = g.random_module(GF(2), rng, max_dim=2)
        f = g.random_module(GF(2), rng, max_dim=2)
        h = hom_filtered(e, f)
        for k1, k2 in itertools.product(range(-2, 3), repeat=2):
            count = len(oracles.filtered_maps(e, shift(f, (k1, k2))))
            assert 2 ** h.piece(((1, k1), (2, k2))).dim == count


def test_identity_lies_in_level_zero_of_endomorphisms():
    rng = np.random.default_rng(11)
    for _ in range(20):
        m = g.random_module(QQ, rng)
        h = hom_filtered(m, m)
        ident = Matrix.identity(QQ, m.dim).a.reshape(1, -1)
        assert h.piece(ZERO).contains_vectors(Matrix.wrap(QQ, ident))


def test_tensor_of_trivial_filtrations_is_trivial():
    t = tensor_filtered(FilteredModule.trivial(QQ, 2), FilteredModule.trivial(QQ, 3))
    assert t == FilteredModule.trivial(QQ, 6)


def test_tensor_with_unit():
    rng = np.random.default_rng(12)
    for _ in range(20):
        m = g.random_module(QQ, rng)
        assert tensor_filtered(m, FilteredModule.trivial(QQ, 1)) == m


def test_gr_kuenneth_dimensions():
    rng = np.random.default_rng(13)
    for _ in range(30):
        e = g.random_module(GF(3), rng, max_dim=3, biregular=True)
        f = g.random_module(GF(3), rng, max_dim=3, biregular=True)
        t = tensor_filtered(e, f)
        levels = range(-6, 7)
        ge = {(a, b): gr(e, a, b).dim for a in levels for b in levels}
        gf = {(a, b): gr(f, a, b).dim for a in levels for b in levels}
        for k1, k2 in itertools.product(range(-5, 6), repeat=2):
            rhs = sum(d * gf.get((k1 - a, k2 - b), 0) for (a, b), d in ge.items() if d)
            assert gr(t, k1, k2).dim == rhs


def test_pi_special_of_trivial_filtration():
    d = 2
    m = FilteredModule.trivial(QQ, d)
    p = pi_special(m)
    assert is_pi_shaped(p)
    # the chain [-1, 0] clamps to levels -2..1: steps of dims 0, 0, d, d
    assert p.dim == d + 2 * (0 + 0 + d + d)


def test_pi_special_of_zero_is_zero():
    assert pi_special(FilteredModule.zero(QQ)).dim == 0


def test_pi_special_hom_formula():
    rng = np.random.default_rng(14)
    for field in (GF(2), QQ):
        for _ in range(40):
            e, f = g.random_module(field, rng), g.random_module(field, rng)
            assert filtered_dim(e, pi_special(f)) == pi_hom_rhs(e, f)


def test_sigma_special_of_zero_is_zero():
    assert sigma_special(FilteredModule.zero(QQ)).dim == 0


def test_sigma_special_single_filtration():
    m = FilteredModule.from_bases(QQ, 2, [(-1, [[], [[1, 0]], [[1, 0], [0, 1]]])])
    s = sigma_special(m)
    assert is_sigma_shaped(s)
    # base E plus copies of E_0 (dim 1) and E_1 (dim 2); the bottom and E_{-1} vanish
    assert s.dim == 2 + 1 + 2
    assert [s.at(1, k).dim for k in (-1, 0, 1, 2)] == [0, 1, 3, 3]


def test_sigma_pieces_are_direct_sums_of_summands():
    rng = np.random.default_rng(15)
    for _ in range(30):
        m = g.random_module(QQ, rng, max_dim=3)
        s = sigma_special(m)
        for k1, k2 in itertools.product(range(-3, 4), repeat=2):
            idx = ((1, k1), (2, k2))
            blocks = sigma_piece_blocks(s, idx)
            assert s.piece(idx).dim == len(blocks)
            assert s.piece(idx) == Subspace.span(QQ, s.dim, Matrix.identity(QQ, s.dim).row_slice(blocks)) \
                if blocks else s.piece(idx).dim == 0


def test_sigma_special_hom_formula():
    rng = np.random.default_rng(16)
    for _ in range(40):
        e, f = g.random_module(QQ, rng), g.random_module(QQ, rng)
        assert filtered_dim(sigma_special(e), f) == sigma_hom_rhs(e, f)


@pytest.mark.parametrize("mode", ["window", "jumps", "minimal"])
def test_embed_special_is_strict_injective(mode):
    rng = np.random.default_rng(17)
    for field in (GF(2), QQ):
        for _ in range(25):
            m = g.random_module(field, rng)
            emb = embed_special(m, mode)
            assert is_pi_shaped(emb.target)
            assert emb.is_injective() and is_strict(emb)[0]
            assert emb.filtration_violation() is None


def test_embed_special_small_cases():
    assert embed_special(FilteredModule.zero(QQ)).map.shape[1] == 0
    e, _, _ = catalog.summation_map()
    emb = embed_special(e)
    assert emb.is_injective() and is_strict(emb)[0]


@pytest.mark.parametrize("mode", ["window", "jumps", "minimal"])
def test_cover_special_is_strict_surjective(mode):
    rng = np.random.default_rng(18)
    for field in (GF(2), QQ):
        for _ in range(25):
            m = g.random_module(field, rng)
            cov = cover_special(m, mode)
            assert is_sigma_shaped(cov.source)
            assert cov.is_surjective() and is_strict(cov)[0]
            assert cov.filtration_violation() is None


def test_cover_of_summation_target_surjects_on_double_piece():
    _, f, _ = catalog.summation_map()
    cov = cover_special(f)
    assert cov.source.piece(ZERO).image(cov.map) == f.piece(ZERO)
    assert f.piece(ZERO).dim == 1
    assert cover_special(FilteredModule.zero(QQ)).map.shape == (0, 0)


def test_hom_tensor_adjunction_for_modules():
    rng = np.random.default_rng(19)
    for field in (GF(2), QQ):
        for _ in range(25):
            e, f, h = (g.random_module(field, rng, max_dim=2, biregular=True) for _ in range(3))
            assert filtered_dim(tensor_filtered(e, f), h) == filtered_dim(e, hom_filtered(f, h))


def test_direct_sum_pieces_add():
    rng = np.random.default_rng(20)
    for _ in range(20):
        a, b = g.random_module(QQ, rng), g.random_module(QQ, rng)
        s = direct_sum([a, b])
        for k1, k2 in itertools.product(range(-3, 4), repeat=2):
            idx = ((1, k1), (2, k2))
            assert s.piece(idx).dim == a.piece(idx).dim + b.piece(idx).dim


def test_sigma_pieces_list_every_subset():
    m = two_step()
    subsets = {P for P, _, _ in sigma_pieces(m)}
    assert subsets == {(1,), (2,), (1, 2)}
