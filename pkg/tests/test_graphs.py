"""Generator sampling, graph construction, diameter computation, and the
random Latin square sampler."""

import math

import numpy as np
import pytest
from scipy.sparse.csgraph import shortest_path

from cayleylab.graphs import (build_cayley, build_latin_graph, diameter,
                              distances_from, generator_set, has_diameter_at_most_2,
                              latin_from_group, latin_square, load_latin_text,
                              random_latin_square, sample_generators, stream,
                              validate_latin)
from cayleylab.groups import build_group


def member_vec(n, idxs):
    v = np.zeros(n, dtype=bool)
    v[list(idxs)] = True
    return v


# -- sampling -----------------------------------------------------------------


def test_sample_degenerate_probabilities():
    g = build_group("cyclic:8")
    rng = stream(1, 0)
    s0 = sample_generators(g, 0.0, rng)
    assert s0.size == 0 and not s0.closure.any()
    s1 = sample_generators(g, 1.0, rng)
    assert s1.size == 8
    assert s1.closure.sum() == 7 and not s1.closure[0]


def test_sample_determinism():
    g = build_group("cyclic:8")
    a = sample_generators(g, 0.5, stream(42, 0))
    b = sample_generators(g, 0.5, stream(42, 0))
    assert (a.member == b.member).all()
    c = sample_generators(g, 0.5, stream(43, 0))
    assert not (a.member == c.member).all()


def test_sample_p_out_of_range():
    g = build_group("cyclic:8")
    with pytest.raises(ValueError):
        sample_generators(g, 1.5, stream(0, 0))


def test_closure_invariants():
    g = build_group("sym:4")
    for seed in range(20):
        s = sample_generators(g, 0.4, stream(7, seed))
        assert not s.closure[0]
        inv = g.inv_all()
        assert (s.closure == s.closure[inv]).all()          # closed under inverse
        member_no_id = s.member.copy()
        member_no_id[0] = False
        assert (s.closure | ~member_no_id).all()            # contains member minus identity


# -- Cayley graphs ---------------------------------------------------------------


def test_pentagon():
    g = build_group("cyclic:5")
    graph = build_cayley(g, generator_set(g, member_vec(5, [1])))
    assert (graph.degrees() == 2).all()
    assert has_diameter_at_most_2(graph)
    assert diameter(graph) == 2


def test_empty_and_complete():
    g = build_group("sym:3")
    empty = build_cayley(g, generator_set(g, member_vec(6, [])))
    assert empty.edge_count() == 0
    assert not has_diameter_at_most_2(empty)
    assert math.isinf(diameter(empty))
    full = build_cayley(g, generator_set(g, np.ones(6, dtype=bool)))
    assert full.edge_count() == 15
    assert diameter(full) == 1


def test_heptagon_diameter_3():
    g = build_group("cyclic:7")
    graph = build_cayley(g, generator_set(g, member_vec(7, [1])))
    assert not has_diameter_at_most_2(graph)
    assert diameter(graph) == 3


def test_closure_invariance():
    """S and S union S^-1 minus identity produce identical graphs."""
    g = build_group("dihedral:7")
    rng = stream(5, 0)
    for _ in range(25):
        member = rng.random(g.order) < 0.3
        s = generator_set(g, member)
        closed = generator_set(g, s.closure)
        a = build_cayley(g, s)
        b = build_cayley(g, closed)
        assert (a.adj == b.adj).all()


def test_cayley_graphs_are_regular_and_symmetric():
    for spec in ("cyclic:12", "sym:4", "dihedral:9"):
        g = build_group(spec)
        for seed in range(10):
            graph = build_cayley(g, sample_generators(g, 0.35, stream(11, seed)))
            degs = graph.degrees()
            assert (degs == degs[0]).all()
            assert (graph.adj == graph.adj.T).all()
            assert not graph.adj.diagonal().any()


def test_vertex_transitive_metric():
    g = build_group("sym:4")
    graph = build_cayley(g, sample_generators(g, 0.15, stream(21, 0)))
    dist0 = distances_from(graph, 0)
    rng = np.random.default_rng(3)
    for _ in range(100):
        a, b = (int(v) for v in rng.integers(0, g.order, size=2))
        d_ab = distances_from(graph, a)[b]
        translated = g.mul(b, g.inv(a))
        assert d_ab == dist0[translated]


def test_diameter_against_scipy():
    rng = np.random.default_rng(9)
    for seed in range(40):
        g = build_group(["cyclic:20", "dihedral:8", "sym:3"][seed % 3])
        graph = build_cayley(g, sample_generators(g, rng.random() * 0.4, stream(31, seed)))
        sp = shortest_path(graph.adj.astype(np.int8), method="D", unweighted=True)
        want = sp.max()
        got = diameter(graph)
        assert (math.isinf(want) and math.isinf(got)) or want == got


def test_diam2_agrees_with_diameter_on_random_graphs():
    count = 0
    for seed in range(250):
        spec = ["cyclic:24", "cyclic:64", "dihedral:10", "sym:4", "z2^:5"][seed % 5]
        g = build_group(spec)
        p = (seed % 10) / 12 + 0.05
        s = sample_generators(g, p, stream(77, seed))
        graph = build_cayley(g, s)
        assert has_diameter_at_most_2(graph) == (diameter(graph) <= 2)
        count += 1
        lat = build_latin_graph(latin_from_group(g), s)
        assert has_diameter_at_most_2(lat) == (diameter(lat) <= 2)
        count += 1
    assert count == 500


def test_edge_text():
    g = build_group("cyclic:4")
    graph = build_cayley(g, generator_set(g, member_vec(4, [1])))
    lines = graph.to_edge_text().strip().split("\n")
    assert lines == ["0 1", "0 3", "1 2", "2 3"]


# -- Latin squares ------------------------------------------------------------------


def test_latin_from_group_cyclic3():
    sq = latin_from_group(build_group("cyclic:3"))
    assert sq.entries.tolist() == [[0, 2, 1], [1, 0, 2], [2, 1, 0]]


def test_latin_diagonal_is_identity():
    for spec in ("cyclic:6", "sym:3", "dihedral:4"):
        sq = latin_from_group(build_group(spec))
        assert (sq.entries.diagonal() == 0).all()


def test_latin_graph_equals_cayley_all_subsets_cyclic6():
    g = build_group("cyclic:6")
    sq = latin_from_group(g)
    for mask in range(64):
        member = np.array([(mask >> i) & 1 for i in range(6)], dtype=bool)
        lat = build_latin_graph(sq, member)
        cay = build_cayley(g, generator_set(g, member))
        assert (lat.adj == cay.adj).all()


def test_latin_graph_degenerate_sets():
    sq = latin_from_group(build_group("cyclic:5"))
    empty = build_latin_graph(sq, np.zeros(5, dtype=bool))
    assert empty.edge_count() == 0
    full = build_latin_graph(sq, np.ones(5, dtype=bool))
    assert full.edge_count() == 10  # complete on 5 vertices


def test_latin_validation():
    with pytest.raises(ValueError):
        validate_latin(np.array([[0, 1], [0, 1]]))
    with pytest.raises(ValueError):
        latin_square([[0, 1], [1, 1]])


def test_latin_text_round_trip():
    sq = random_latin_square(6, stream(8, 0))
    again = load_latin_text(sq.to_text())
    assert (again.entries == sq.entries).all()
    with pytest.raises(ValueError):
        load_latin_text("3\n0 1 2\n")


# -- random Latin squares --------------------------------------------------------------


def test_random_latin_trivial_orders():
    assert random_latin_square(1, stream(0, 0)).entries.tolist() == [[0]]
    two = {tuple(map(tuple, random_latin_square(2, stream(0, i)).entries.tolist()))
           for i in range(40)}
    assert two == {((0, 1), (1, 0)), ((1, 0), (0, 1))}


def test_random_latin_determinism():
    a = random_latin_square(9, stream(12, 4))
    b = random_latin_square(9, stream(12, 4))
    assert (a.entries == b.entries).all()


def test_random_latin_validity_sweep():
    """Construction already validates each square; this drives 10^3 samples at
    every order 2..12."""
    for n in range(2, 13):
        for i in range(1000):
            random_latin_square(n, stream(606, n, i))


def test_order3_sampler_hits_every_square():
    from conftest import enumerate_latin_squares

    allsq = enumerate_latin_squares(3)
    assert len(allsq) == 12
    seen = set()
    for i in range(400):
        sq = random_latin_square(3, stream(1234, i))
        seen.add(tuple(map(tuple, sq.entries.tolist())))
    assert seen == allsq


# -- rng streams -------------------------------------------------------------------


def test_stream_is_counter_based_and_splittable():
    a = stream(5, 1, 2).random(8)
    b = stream(5, 1, 2).random(8)
    assert (a == b).all()
    c = stream(5, 1, 3).random(8)
    assert not (a == c).all()
    assert type(stream(0).bit_generator).__name__ == "Philox"
