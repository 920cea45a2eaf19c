import numpy as np
import pytest

from msgvm.benchgen import (GN_SETS, SED, DegreeDistSpec, GnSpec, degree_ensemble,
                            generate_degree_dist, generate_gn, gn_ensemble, gn_probabilities)


def inter_edges(g, planted):
    a = planted.assignment
    return sum(1 for u, v in g.edges() if a[u] != a[v])


def test_zero_z_out_has_no_inter_edges():
    g, planted = generate_gn(GnSpec(z_out=0, seed=1))
    assert g.m > 0
    assert inter_edges(g, planted) == 0


def test_planted_groups():
    g, planted = generate_gn(GnSpec(seed=2))
    sizes = sorted(len(m) for m in planted.members().values())
    assert sizes == [32, 32, 32, 32]


def test_gn_reproducible():
    a, _ = generate_gn(GnSpec(z_out=5, seed=9))
    b, _ = generate_gn(GnSpec(z_out=5, seed=9))
    c, _ = generate_gn(GnSpec(z_out=5, seed=10))
    assert a == b
    assert a != c


def test_gn_probabilities_expected_counts():
    spec = GnSpec(z_out=16, total_edges=1024)
    p_in, p_out = gn_probabilities(spec)
    assert p_out == pytest.approx(16 / 96)
    assert p_in == pytest.approx(0.0, abs=1e-12)
    # expected totals, written out from the pair counts
    assert 1984 * p_in + 6144 * p_out == pytest.approx(1024)


MC_SEEDS = range(200)


def test_gn1_mean_edge_count():
    counts = [generate_gn(GnSpec(z_out=6, total_edges=1024, seed=s))[0].m for s in MC_SEEDS]
    assert abs(np.mean(counts) - 1024) / 1024 < 0.03


@pytest.mark.parametrize("z_out", [4.0, 16.0])
def test_gn_mean_inter_edges(z_out):
    vals = []
    for s in MC_SEEDS:
        g, planted = generate_gn(GnSpec(z_out=z_out, total_edges=1024, seed=s))
        vals.append(inter_edges(g, planted))
    expect = 128 * z_out / 2
    assert abs(np.mean(vals) - expect) / expect < 0.05


def test_gn_infeasible():
    with pytest.raises(ValueError, match="mean degree"):
        GnSpec(z_out=20, total_edges=512)
    with pytest.raises(ValueError, match="p_in"):
        gn_probabilities(GnSpec(vertices=8, communities=4, z_out=0, total_edges=10))
    with pytest.raises(ValueError):
        GnSpec(vertices=130, communities=4)


def test_gn_ensemble_z_range():
    specs = gn_ensemble("GN1", 50, 3)
    zs = [s.z_out for s in specs]
    lo, hi = GN_SETS["GN1"][1]
    assert all(lo <= z <= hi for z in zs)
    assert len({s.seed for s in specs}) == 50
    assert gn_ensemble("GN1", 50, 3) == specs


def test_degree_dist_deterministic_and_connected():
    spec = DegreeDistSpec(seed=4)
    a, b = generate_degree_dist(spec), generate_degree_dist(spec)
    assert a == b
    assert a.is_connected()
    lin = generate_degree_dist(DegreeDistSpec("linear", (50, 200), max_degree=12, seed=4))
    assert lin.is_connected()
    assert max(lin.degrees()) <= 2 * 12


def test_sed_like_ranges():
    for spec in degree_ensemble(SED, 100, 0):
        g = generate_degree_dist(spec)
        assert 11 <= g.n <= 976
        assert 10 <= g.m <= 19247
    ns = [generate_degree_dist(s).n for s in degree_ensemble(SED, 100, 0)]
    assert np.median(ns) > 100


def test_degree_spec_validation():
    with pytest.raises(ValueError):
        DegreeDistSpec(vertex_range=(1, 10))
    with pytest.raises(ValueError):
        DegreeDistSpec(kind="powerlaw")


def test_generated_graphs_are_simple():
    for g in [generate_gn(GnSpec(seed=3))[0], generate_degree_dist(DegreeDistSpec(seed=3))]:
        for v, nb in enumerate(g.adj):
            assert v not in nb
            assert len(set(nb)) == len(nb)
            assert all(v in g.adj[u] for u in nb)
