import itertools

import pytest
from hypothesis import given, settings, strategies as st

from simplicial_tc import (
    InvalidInput,
    are_contiguous,
    build_complex,
    categorical_square,
    compose,
    constant_map,
    diagonal,
    identity_map,
    preimage_subcomplex,
    projection,
    same_contiguity_class,
    square_map,
    square_witness,
    subcomplex,
    validate_map,
    Verdict,
)

import corpusgen
import oracles


small_complexes = st.builds(
    corpusgen.random_complex,
    st.randoms(use_true_random=False),
    max_vertices=st.just(4),
    max_facets=st.just(3),
    max_facet_size=st.just(3),
)


def simplex_rule_holds(P, vertex_subset):
    """Brute-force projection rule: both coordinate images are simplices."""
    first = {u for (u, v) in vertex_subset}
    second = {v for (u, v) in vertex_subset}
    K = P.base
    return oracles.oracle_is_simplex(K, first) and oracles.oracle_is_simplex(K, second)


class TestCategoricalSquare:
    def test_boundary_triangle_counts(self, boundary_triangle):
        P = categorical_square(boundary_triangle)
        assert P.product.n_vertices == 9
        assert len(P.product.facets) == 9

    def test_single_vertex(self):
        P = categorical_square(build_complex([{"a"}]))
        assert P.product.n_vertices == 1
        assert len(P.product.facets) == 1

    def test_edge_square_is_full_simplex(self):
        edge = build_complex([{"a", "b"}])
        P = categorical_square(edge)
        assert P.product.n_vertices == 4
        assert len(P.product.facets) == 1
        # verify against the simplex rule on all 2^4 vertex subsets
        for r in range(1, 5):
            for subset in itertools.combinations(range(4), r):
                pairs = {P.unpair(q) for q in subset}
                mask = sum(1 << q for q in subset)
                assert P.product.is_simplex(mask) == simplex_rule_holds(P, pairs)

    def test_pair_labels(self, boundary_triangle):
        P = categorical_square(boundary_triangle)
        assert P.product.labels[P.pair_id(0, 1)] == "a|b"

    @given(small_complexes)
    def test_facet_count_squares(self, K):
        P = categorical_square(K)
        assert len(P.product.facets) == len(K.facets) ** 2

    @given(small_complexes)
    @settings(max_examples=12)
    def test_simplex_rule_equivalence(self, K):
        if K.n_vertices > 3:
            return  # keep the 2^(n^2) enumeration tiny
        P = categorical_square(K)
        nn = P.product.n_vertices
        for mask in range(1, 1 << nn):
            pairs = {P.unpair(q) for q in range(nn) if mask & (1 << q)}
            assert P.product.is_simplex(mask) == simplex_rule_holds(P, pairs)


class TestProjectionsAndDiagonal:
    def test_projection_values(self, boundary_triangle):
        P = categorical_square(boundary_triangle)
        p1, p2 = projection(P, 1), projection(P, 2)
        q = P.pair_id(0, 1)  # a|b
        assert p1.assignment[q] == 0
        assert p2.assignment[q] == 1

    def test_projection_validates(self, boundary_triangle):
        P = categorical_square(boundary_triangle)
        validate_map(projection(P, 1).assignment, P.product, P.base)

    def test_bad_index(self, boundary_triangle):
        with pytest.raises(InvalidInput):
            projection(categorical_square(boundary_triangle), 3)

    def test_diagonal_values(self, boundary_triangle):
        P = categorical_square(boundary_triangle)
        d = diagonal(P)
        assert P.product.labels[d.assignment[0]] == "a|a"

    def test_diagonal_image_is_simplex(self, boundary_triangle):
        P = categorical_square(boundary_triangle)
        d = diagonal(P)
        edge = P.base.simplex_mask({"a", "b"})
        assert P.product.is_simplex(d.image_mask(edge))

    @given(small_complexes)
    def test_projection_after_diagonal_is_identity(self, K):
        P = categorical_square(K)
        d = diagonal(P)
        for i in (1, 2):
            assert compose(projection(P, i), d) == identity_map(K)


class TestSquareMap:
    def test_square_of_identity(self, boundary_triangle):
        K = boundary_triangle
        assert square_map(identity_map(K)) == identity_map(categorical_square(K).product)

    def test_square_of_constant(self, boundary_triangle):
        K = boundary_triangle
        P = categorical_square(K)
        sq = square_map(constant_map(K, K, 1))
        assert sq == constant_map(P.product, P.product, P.pair_id(1, 1))

    @given(small_complexes, st.randoms(use_true_random=False))
    @settings(max_examples=15)
    def test_squares_of_contiguous_maps_are_contiguous(self, cod, rng):
        dom = corpusgen.random_complex(rng, max_vertices=3, max_facets=2)
        maps = oracles.oracle_valid_maps(dom, cod)
        fa, ga = rng.choice(maps), rng.choice(maps)
        f, g = validate_map(fa, dom, cod), validate_map(ga, dom, cod)
        if are_contiguous(f, g):
            assert are_contiguous(square_map(f), square_map(g))

    @given(small_complexes, st.randoms(use_true_random=False))
    @settings(max_examples=10)
    def test_squared_witness_connects_squared_maps(self, cod, rng):
        dom = corpusgen.random_complex(rng, max_vertices=3, max_facets=2)
        maps = oracles.oracle_valid_maps(dom, cod)
        fa, ga = rng.choice(maps), rng.choice(maps)
        r = same_contiguity_class(validate_map(fa, dom, cod), validate_map(ga, dom, cod))
        if r.verdict is not Verdict.YES:
            return
        sq = square_witness(r.witness)  # construction re-validates contiguity
        assert sq.first == square_map(r.witness.first)
        assert sq.last == square_map(r.witness.last)


class TestPreimage:
    def test_full_codomain_gives_full_domain(self, boundary_triangle):
        K = boundary_triangle
        assert preimage_subcomplex(identity_map(K), K) == K

    def test_constant_map_full_preimage(self, boundary_triangle):
        K = boundary_triangle
        target = subcomplex(K, [K.simplex_mask({"a"})])
        assert preimage_subcomplex(constant_map(K, K, 0), target) == K

    def test_projection_preimage_of_vertex_is_column(self, boundary_triangle):
        K = boundary_triangle
        P = categorical_square(K)
        target = subcomplex(K, [K.simplex_mask({"a"})])
        col = preimage_subcomplex(projection(P, 1), target)
        assert set(col.labels) == {"a|a", "a|b", "a|c"}
        assert sorted(col.facet_label_sets()) == [
            ("a|a", "a|b"),
            ("a|a", "a|c"),
            ("a|b", "a|c"),
        ]

    def test_empty_preimage_rejected(self):
        K = build_complex([{"a", "b"}])
        L = build_complex([{"u"}, {"v", "w"}])
        f = validate_map([2, 1], K, L)  # image misses vertex u
        target = subcomplex(L, [L.simplex_mask({"u"})])
        with pytest.raises(InvalidInput):
            preimage_subcomplex(f, target)

    def test_foreign_subcomplex_rejected(self, boundary_triangle):
        other = build_complex([{"x"}])
        with pytest.raises(InvalidInput):
            preimage_subcomplex(identity_map(boundary_triangle), other)

    @given(small_complexes, st.randoms(use_true_random=False))
    @settings(max_examples=15)
    def test_preimage_matches_brute_force(self, K, rng):
        maps = oracles.oracle_valid_maps(K, K)
        f = validate_map(rng.choice(maps), K, K)
        target = subcomplex(K, [rng.choice(K.facets)])
        try:
            pre = preimage_subcomplex(f, target)
        except InvalidInput:
            pre = None
        closure_target = oracles.downward_closure(target)
        target_parent = {
            frozenset(K.id(target.labels[v]) for v in s) for s in closure_target
        }
        expected = {
            s
            for s in oracles.downward_closure(K)
            if frozenset(f.assignment[v] for v in s) in target_parent
        }
        if pre is None:
            assert not expected
        else:
            got = {
                frozenset(K.id(pre.labels[v]) for v in s)
                for s in oracles.downward_closure(pre)
            }
            assert got == expected
