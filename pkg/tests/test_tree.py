from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from sandpile_trees.tree import (SinkedGraph, augment_subset, build_tree, distinguished_child,
                                 f_set, reduced_laplacian, tree_coordinates)

GRID = [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2)]


def bfs_count(d, h):
    # independent count: walk the tree level by level
    frontier, total = [None], 1
    for depth in range(h):
        branching = d if depth == 0 else d - 1
        frontier = [None] * (len(frontier) * branching)
        total += len(frontier)
    return total


@pytest.mark.parametrize("d,h", GRID)
def test_vertex_count_and_spheres(d, h):
    g, c = build_tree(d, h)
    assert g.num_vertices == bfs_count(d, h) == 1 + d * ((d - 1) ** h - 1) // (d - 2)
    assert len(c.sphere(0)) == 1
    for n in range(1, h + 1):
        assert len(c.sphere(n)) == d * (d - 1) ** (n - 1)
    assert sorted(v for n in range(h + 1) for v in c.sphere(n)) == list(range(g.num_vertices))


@pytest.mark.parametrize("d,h", GRID)
def test_every_vertex_has_degree_d(d, h):
    g, c = build_tree(d, h)
    assert set(g.degrees) == {d}
    leaves = set(c.leaves())
    for i in range(g.num_vertices):
        assert g.sink_multiplicity[i] == (d - 1 if i in leaves else 0)


def test_bfs_indices_and_parents():
    _, c = build_tree(3, 2)
    assert c.children[0] == (1, 2, 3)
    assert c.children[1] == (4, 5)
    assert [c.parent[i] for i in range(4, 10)] == [1, 1, 2, 2, 3, 3]
    assert all(c.depth[c.parent[i]] == c.depth[i] - 1 for i in range(1, 10))


def test_tree_is_connected_by_parent_edges():
    g, c = build_tree(4, 2)
    seen, q = {0}, deque([0])
    while q:
        v = q.popleft()
        for w, _ in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                q.append(w)
    assert len(seen) == g.num_vertices


@pytest.mark.parametrize("d,h", [(2, 1), (3, 0), (1, 4)])
def test_bad_parameters(d, h):
    with pytest.raises(ValueError):
        build_tree(d, h)
    with pytest.raises(ValueError):
        tree_coordinates(d, h)


def test_laplacian_examples():
    g, _ = build_tree(3, 1)
    assert reduced_laplacian(g) == [[3, -1, -1, -1], [-1, 3, 0, 0], [-1, 0, 3, 0], [-1, 0, 0, 3]]
    g, _ = build_tree(4, 1)
    assert reduced_laplacian(g)[0] == [4, -1, -1, -1, -1]


@pytest.mark.parametrize("d,h", GRID)
def test_laplacian_is_dI_minus_A(d, h):
    g, _ = build_tree(d, h)
    L = reduced_laplacian(g)
    n = g.num_vertices
    for i in range(n):
        assert L[i][i] == d
        for j in range(n):
            assert L[i][j] == L[j][i]
            if i != j:
                assert L[i][j] == -g.multiplicity(i, j)
        # row sum is the number of sink edges
        assert sum(L[i]) == g.sink_multiplicity[i]


def test_augment_subset_path():
    g = augment_subset(3, ["a", "b"], [("a", "b")])
    assert g.sink_multiplicity == (2, 2)
    assert reduced_laplacian(g) == [[3, -1], [-1, 3]]
    assert g.labels == ("a", "b")


def test_augment_subset_single_vertex():
    g = augment_subset(5, [7], [])
    assert reduced_laplacian(g) == [[5]]


def test_augment_subset_errors():
    with pytest.raises(ValueError):
        augment_subset(3, [0, 1, 2, 3, 4], [(0, 1), (0, 2), (0, 3), (0, 4)])  # degree 4 > 3
    with pytest.raises(ValueError):
        augment_subset(3, [0, 1, 2], [(0, 1)])  # disconnected
    with pytest.raises(ValueError):
        augment_subset(3, [0, 1, 2], [(0, 1), (1, 2), (2, 0)])  # cycle


def test_augmented_subtree_matches_full_tree():
    g, c = build_tree(3, 2)
    verts = list(range(g.num_vertices))
    edges = [(c.parent[v], v) for v in verts if v]
    h = augment_subset(3, verts, edges)
    # the root gets three sink edges here, so only off-root rows agree
    assert reduced_laplacian(h)[1:] == reduced_laplacian(g)[1:]


def test_sinked_graph_validation():
    with pytest.raises(ValueError):
        SinkedGraph.from_edges(2, [(0, 1, 1)], [])  # nothing reaches the sink
    with pytest.raises(ValueError):
        SinkedGraph.from_edges(1, [(0, 0, 1)], [(0, 1)])  # loop
    with pytest.raises(ValueError):
        SinkedGraph.from_edges(2, [(0, 1, -1)], [(0, 1), (1, 1)])


def test_multigraph_edges_accumulate():
    g = SinkedGraph.from_edges(2, [(0, 1, 1), (1, 0, 2)], [(0, 1), (1, 1)])
    assert g.multiplicity(0, 1) == 3
    assert g.degrees == (4, 4)


@pytest.mark.parametrize("d,h", GRID)
def test_f_set_size(d, h):
    _, c = build_tree(d, h)
    assert len(f_set(c)) == (d - 1) ** h


def test_f_set_small_cases():
    _, c = build_tree(3, 1)
    assert list(f_set(c)) == [2, 3]
    _, c = build_tree(3, 2)
    assert list(f_set(c)) == [0, 5, 7, 9]


@pytest.mark.parametrize("d,h", [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2)])
def test_f_set_nested_two_levels_up(d, h):
    _, small = build_tree(d, h)
    _, big = build_tree(d, h + 2)
    # BFS indexing is a prefix, so vertex ids carry over
    assert set(f_set(small)) <= set(f_set(big))


def test_distinguished_child_is_smallest():
    _, c = build_tree(4, 2)
    assert all(distinguished_child(c, i) == min(c.children[i]) for i in c.ball(1))


@given(st.integers(3, 5), st.integers(1, 3), st.data())
@settings(max_examples=30, deadline=None)
def test_descendants_at_depth(d, h, data):
    _, c = build_tree(d, h)
    i = data.draw(st.integers(0, c.num_vertices - 1))
    for q in range(c.depth[i], h + 1):
        below = c.descendants_at_depth(i, q)
        assert len(below) == (1 if q == c.depth[i] else
                              (d if i == 0 else d - 1) * (d - 1) ** (q - c.depth[i] - 1))
        for v in below:
            u = v
            while c.depth[u] > c.depth[i]:
                u = c.parent[u]
            assert u == i
