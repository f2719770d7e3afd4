import itertools
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from coxdim.homology import cohomology_groups, delta_cohomology_groups
from coxdim.simplicial import (
    DeltaComplex,
    Graph,
    SimplicialComplex,
    barycentric_subdivision,
    complement,
    cone,
    connected_components,
    delta_barycentric_subdivision,
    flag_complex,
    full_subcomplex,
    is_flag,
    one_skeleton,
)

from corpus import complexes, cx, cycle, cycle_graph, graphs, named_corpus, petersen, simplex


# -- graphs ------------------------------------------------------------------------


def test_graph_rejects_loops_parallel_and_unknown():
    with pytest.raises(ValueError):
        Graph(["a"], [("a", "a")])
    with pytest.raises(ValueError):
        Graph(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError):
        Graph(["a"], [("a", "b")])


def test_graph_json_roundtrip():
    g = cycle_graph(5)
    assert Graph.from_json(g.to_json()) == g


# -- flag complexes ----------------------------------------------------------------


def test_flag_of_triangle_has_the_2_simplex():
    k = flag_complex(cycle_graph(3))
    assert k.maximal_faces == (("v0", "v1", "v2"),)


def test_flag_of_square_has_no_triangle():
    k = flag_complex(cycle_graph(4))
    assert k.f_vector() == [4, 4]


def test_petersen_flag_complex_is_the_graph():
    g = petersen()
    # independent triangle search over all vertex triples
    adj = g.adjacency
    triangles = [t for t in itertools.combinations(sorted(g.vertices), 3) if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]]]
    assert triangles == []
    k = flag_complex(g)
    assert k.dim == 1 and one_skeleton(k) == g


def test_is_flag_examples():
    assert is_flag(cycle(4))
    assert not is_flag(SimplicialComplex(itertools.combinations("abc", 2)))


@given(graphs())
def test_one_skeleton_of_flag_complex_round_trips(g):
    assert one_skeleton(flag_complex(g)) == g


@given(complexes())
def test_flag_of_skeleton_is_idempotent(k):
    once = flag_complex(one_skeleton(k))
    assert flag_complex(one_skeleton(once)) == once
    if is_flag(k):
        assert once == k


# -- subcomplexes, cones, components ------------------------------------------------


def test_full_subcomplex_examples():
    sq = cycle(4)
    assert full_subcomplex(sq, sq.vertices) == sq
    assert full_subcomplex(sq, ["v2", "v3"]).maximal_faces == (("v2", "v3"),)
    assert full_subcomplex(simplex(2), ["0", "1"]).maximal_faces == (("0", "1"),)
    with pytest.raises(ValueError):
        full_subcomplex(sq, ["zz"])


@given(complexes(), st.data())
def test_full_subcomplex_of_intersection(k, data):
    w1 = data.draw(st.sets(st.sampled_from(k.vertices)))
    w2 = data.draw(st.sets(st.sampled_from(k.vertices)))
    lhs = full_subcomplex(k, w1 & w2)
    rhs = full_subcomplex(full_subcomplex(k, w1), w2 & w1)
    assert lhs.face_set == rhs.face_set


def test_complement_of_simplex_in_square():
    assert complement(cycle(4), ["v0"]).f_vector() == [3, 2]


def test_cone_examples():
    assert cone(cx((0,), (1,)), "a").f_vector() == [3, 2]
    assert cone(cycle(5), "c").f_vector() == [6, 10, 5]
    assert cone(SimplicialComplex(), "c").maximal_faces == (("c",),)
    with pytest.raises(ValueError):
        cone(simplex(1), "0")


@given(complexes())
def test_cones_are_acyclic(k):
    groups = cohomology_groups(cone(k, "apex"), reduced=True)
    assert all(g.is_trivial() for g in groups.values())


def test_connected_components():
    assert len(connected_components(cx((0,), (1,)))) == 2
    assert len(connected_components(cycle(4))) == 1
    assert connected_components(SimplicialComplex()) == []


# -- barycentric subdivision ---------------------------------------------------------


def test_subdivision_examples():
    assert barycentric_subdivision(simplex(1))[0].f_vector() == [3, 2]
    assert barycentric_subdivision(simplex(2))[0].f_vector() == [7, 12, 6]
    assert barycentric_subdivision(cycle(5))[0].f_vector() == [10, 10]


def _stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_subdivided_simplex_counts_ordered_chains(n):
    # k-simplices are chains of k+1 faces: ordered set partitions of the top face
    expected = [sum(comb(n + 1, m) * factorial(k + 1) * _stirling2(m, k + 1) for m in range(1, n + 2)) for k in range(n + 1)]
    assert barycentric_subdivision(simplex(n))[0].f_vector() == expected


def test_subdivision_provenance_maps_to_faces():
    sd, prov = barycentric_subdivision(simplex(2))
    assert sorted(prov.values()) == sorted(simplex(2).all_faces())
    assert set(prov) == set(sd.vertices)


# -- delta complexes ---------------------------------------------------------------


def _delta_from_simplicial(k):
    index = {f: "|".join(f) for f in k.all_faces()}
    levels = []
    for d in range(k.dim + 1):
        levels.append([(index[f], [index[f[:i] + f[i + 1:]] for i in range(len(f))] if d else []) for f in k.faces(d)])
    return DeltaComplex(levels)


def test_delta_rejects_bad_identities():
    with pytest.raises(ValueError):
        DeltaComplex([[("a", []), ("b", []), ("c", [])], [("x", ["b", "a"]), ("y", ["c", "a"]), ("z", ["c", "b"])], [("t", ["z", "x", "x"])]])


def test_delta_of_simplicial_complex_matches():
    for name, k in named_corpus().items():
        if k.is_empty():
            continue
        x = _delta_from_simplicial(k)
        assert x.is_simplicial(), name
        assert x.to_simplicial() == k, name
        assert delta_cohomology_groups(x) == cohomology_groups(k), name


def test_delta_subdivision_agrees_with_simplicial():
    for name in ("triangle", "sphere2", "rp2", "bowtie"):
        k = named_corpus()[name]
        sub, _ = delta_barycentric_subdivision(_delta_from_simplicial(k))
        assert sub.is_simplicial()
        assert sub.to_simplicial().f_vector() == barycentric_subdivision(k)[0].f_vector()
        assert delta_cohomology_groups(sub) == cohomology_groups(k)


def test_non_simplicial_delta_reports_reason():
    # one vertex, one loop: a circle as a delta complex
    x = DeltaComplex([[("v", [])], [("e", ["v", "v"])]])
    assert "repeated vertex" in x.simplicial_failure()
    with pytest.raises(ValueError):
        x.to_simplicial()
    sub, _ = delta_barycentric_subdivision(x)
    assert sub.simplicial_failure() is not None
    sub2, _ = delta_barycentric_subdivision(sub)
    assert sub2.is_simplicial()
    assert sub2.to_simplicial().f_vector() == [4, 4]
