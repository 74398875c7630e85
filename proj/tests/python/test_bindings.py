import math

import pytest

import lll


def test_generate_and_sizes():
    comb = lll.generate("comb", n=9, r=3)
    assert comb.vertex_count == 19
    assert len(comb) == 19
    assert lll.generate("grid", width=4, height=3).edge_count == 17
    assert lll.generate("grid_line", n=3).vertex_count == 18


def test_invalid_family_parameters():
    with pytest.raises(ValueError):
        lll.generate("cycle", n=2)
    with pytest.raises(ValueError):
        lll.generate("tree", n=4)


def test_graph_from_edges_and_distances():
    g = lll.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.neighbors(1) == [0, 2]
    assert lll.bfs_distances(g, 0) == [0, 1, 2, 3]
    assert lll.diameter(g) == (3, 0, 3)
    with pytest.raises(IndexError):
        g.neighbors(7)
    with pytest.raises(ValueError):
        lll.Graph(3, [(0, 1)])  # disconnected


def test_canonical_codes_and_locality():
    c100 = lll.generate("cycle", n=100)
    c200 = lll.generate("cycle", n=200)
    assert lll.canonical_code(c100, 0) == lll.canonical_code(c100, 42)
    assert lll.locality_radius(c100, 0, c200, 0, 60) == (49, False)


def test_ball_census_fractions():
    census = lll.ball_census(lll.generate("path", n=10), 1)
    assert sorted(census.values()) == [(2, 11), (9, 11)]


def test_gh_exact_small():
    two = [[0.0, 1.0], [1.0, 0.0]]
    one = [[0.0]]
    assert lll.gh_exact_small(two, 0, one, 0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        lll.gh_exact_small([[0.0, 1.0]], 0, one, 0)


def test_local_gh_interval():
    lower, upper = lll.local_gh_to_line(lll.generate("cycle", n=200), 0, 5.0)
    assert 0.0 <= lower <= upper
    assert math.isfinite(upper)


def test_geodesic_cells():
    comb = lll.generate("comb", n=9, r=3)
    geo = lll.max_geodesic(comb)
    assert len(geo) == 13
    sizes = lll.cell_sizes(comb)
    assert sum(sizes) == comb.vertex_count
    assert set(sizes) == {1, 4}


def test_load_graph_errors(tmp_path):
    bad = tmp_path / "bad.g"
    bad.write_text("p 2 1\ne 0 x\n")
    with pytest.raises(lll.FormatError):
        lll.load_graph(str(bad))
    with pytest.raises(lll.FormatError):
        lll.load_graph(str(tmp_path / "missing.g"))
