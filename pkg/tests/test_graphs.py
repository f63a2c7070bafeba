"""Graph substrate: construction, sampling, isomorphism, census, graph6."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fograph.graphs import (Graph, Graph6Error, GraphError, SampleParams,
                            bit_indices, canonical_form, common_neighbors,
                            complement, component_census, component_masks,
                            count_induced_copies, edges_json, enumerate_graphs,
                            from_edges_json, gnp_sample, graph6_decode,
                            graph6_encode, has_nontrivial_automorphism,
                            induced_embeds, induced_subgraph, is_isomorphic,
                            mask_of, residual)


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    """Permutation-search oracle, independent of the canonical form."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    for perm in itertools.permutations(range(g.n)):
        if all((g.adj[u] >> v & 1) == (h.adj[perm[u]] >> perm[v] & 1)
               for u in range(g.n) for v in range(u)):
            return True
    return False


def small_graphs(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
            max_size=n * n).map(
            lambda es: Graph.from_edges(n, [(u, v) for u, v in es if u != v])))


class TestGraphBasics:
    def test_from_edges(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert g.has_edge(0, 1) and g.has_edge(1, 2) and not g.has_edge(0, 2)
        assert g.degree(1) == 2 and g.edge_count() == 2

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 5)])

    def test_complement_involution(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert complement(complement(g)) == g

    def test_common_neighbors(self):
        g = Graph.from_edges(4, [(0, 2), (1, 2), (0, 3)])
        assert common_neighbors(g, mask_of([0, 1])) == 1 << 2
        assert common_neighbors(g, 0) == g.full_mask

    def test_residual(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
        sub, vmask = residual(g, (0,))
        assert vmask == mask_of([1, 2])
        assert sub.n == 2 and sub.edge_count() == 1
        with pytest.raises(GraphError):
            residual(g, (0, 0))

    def test_induced_subgraph_ids(self):
        g = Graph.from_edges(4, [(1, 3)])
        sub, old = induced_subgraph(g, mask_of([1, 3]))
        assert old == [1, 3] and sub.has_edge(0, 1)


class TestSampling:
    def test_deterministic(self):
        a = gnp_sample(SampleParams(50, 0.3, 7))
        b = gnp_sample(SampleParams(50, 0.3, 7))
        assert a == b

    def test_seed_sensitivity(self):
        a = gnp_sample(SampleParams(50, 0.3, 7))
        b = gnp_sample(SampleParams(50, 0.3, 8))
        assert a != b

    def test_extreme_p(self):
        assert gnp_sample(SampleParams(10, 0.0, 1)).edge_count() == 0
        assert gnp_sample(SampleParams(10, 1.0, 1)).edge_count() == 45

    def test_edge_density(self):
        g = gnp_sample(SampleParams(400, 0.5, 11))
        total = 400 * 399 // 2
        assert abs(g.edge_count() / total - 0.5) < 0.02

    def test_params_derived(self):
        p = SampleParams(100, 0.25, 0)
        assert p.q == 0.75 and p.c == 25.0


class TestIsomorphism:
    def test_canonical_invariant_under_relabeling(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        perm = [4, 2, 0, 1, 3]
        h = Graph.from_edges(5, [(perm[u], perm[v]) for u, v in g.edges()])
        assert canonical_form(g) == canonical_form(h)
        assert is_isomorphic(g, h)

    def test_non_isomorphic_same_degrees(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        h = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
        assert not is_isomorphic(g, h)

    def test_matches_permutation_oracle(self):
        pool = list(enumerate_graphs(4))
        for g in pool:
            for h in pool:
                assert is_isomorphic(g, h) == brute_isomorphic(g, h)

    @settings(max_examples=60, deadline=None)
    @given(small_graphs(4), st.permutations(list(range(4))))
    def test_permuted_copies_isomorphic(self, g, perm):
        perm = perm[: g.n]
        if sorted(perm) != list(range(g.n)):
            perm = list(range(g.n))
        h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
        assert is_isomorphic(g, h)

    def test_enumeration_counts(self):
        assert [len(enumerate_graphs(n)) for n in range(1, 8)] == \
            [1, 2, 4, 11, 34, 156, 1044]

    def test_enumeration_pairwise_distinct(self):
        pool = enumerate_graphs(5)
        forms = {canonical_form(g) for g in pool}
        assert len(forms) == len(pool)

    def test_automorphism(self):
        k3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert has_nontrivial_automorphism(k3)
        # spider with leg lengths 1, 2, 3: the smallest rigid tree
        asym = Graph.from_edges(7, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5),
                                    (5, 6)])
        assert not has_nontrivial_automorphism(asym)

    def test_induced_embedding(self):
        p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
        c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        k3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert induced_embeds(p3, c4)
        assert not induced_embeds(k3, c4)
        assert count_induced_copies(p3, c4, stop_after=10) == 4


class TestComponents:
    def test_masks(self):
        g = Graph.from_edges(5, [(0, 1), (2, 3)])
        assert sorted(component_masks(g)) == sorted(
            [mask_of([0, 1]), mask_of([2, 3]), 1 << 4])

    def test_census(self):
        g = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
        c = component_census(g)
        assert c.t == {2: 3} and c.t1 == 0
        k2 = Graph.from_edges(2, [(0, 1)])
        assert c.c_F(k2) == 3

    def test_tree_detection(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        c = component_census(g)
        assert c.t == {}


class TestGraph6:
    def test_known_encodings(self):
        assert graph6_encode(Graph(1)) == "@"
        k2 = Graph.from_edges(2, [(0, 1)])
        assert graph6_encode(k2) == "A_"
        assert graph6_decode("A_") == k2

    def test_round_trip_enumeration(self):
        for g in enumerate_graphs(5):
            assert graph6_decode(graph6_encode(g)) == g

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 40), st.integers(0, 2 ** 32))
    def test_round_trip_random(self, n, seed):
        g = gnp_sample(SampleParams(n, 0.4, seed))
        assert graph6_decode(graph6_encode(g)) == g

    def test_large_order_header(self):
        g = Graph(100)
        text = graph6_encode(g)
        assert text[0] == "~"
        assert graph6_decode(text) == g

    def test_truncated_rejected(self):
        # order 5 requires two data characters; one alone is an error
        with pytest.raises(Graph6Error):
            graph6_decode("D?")

    def test_trailing_rejected(self):
        with pytest.raises(Graph6Error):
            graph6_decode("A_?")

    def test_bad_char_rejected(self):
        with pytest.raises(Graph6Error) as exc:
            graph6_decode("A\x19")
        assert "offset" in str(exc.value) or "1" in str(exc.value)

    def test_nonzero_padding_rejected(self):
        # K_2 with padding bits set
        with pytest.raises(Graph6Error):
            graph6_decode("A" + chr(63 + 0b111111))

    def test_edges_json_round_trip(self):
        g = Graph.from_edges(4, [(0, 2), (1, 3)])
        assert from_edges_json(edges_json(g)) == g


def test_bit_helpers():
    assert list(bit_indices(0b1011)) == [0, 1, 3]
    assert mask_of([0, 3]) == 0b1001
