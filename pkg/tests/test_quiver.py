import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import DiGraphMatcher

from repcluster.embedding import band_selection, band_subquiver
from repcluster.orbit_model import build_gamma
from repcluster.pathspace import pathspace_homs
from repcluster.polygon import Diagonal, ModelParams
from repcluster.quiver import (QuiverError, TranslationQuiver, find_isomorphism, from_json,
                               hammock, hammock_hom, mesh_relations, power, to_dot, to_json,
                               verify_stable, weak_components)

small_params = st.builds(ModelParams, st.integers(1, 4), st.integers(1, 3), st.integers(1, 3))


def gamma(n, m=1, p=1):
    return build_gamma(ModelParams(n, m, p))


def relabel(q, mapping):
    return TranslationQuiver(
        [mapping[v] for v in q.vertices],
        [(mapping[s], mapping[t]) for s, t in q.arrows],
        {mapping[v]: mapping[t] for v, t in q.translation.items()})


def nx_isomorphic(q1, q2):
    # oracle: arrows plus translation edges tagged by type
    def graph(q):
        g = nx.MultiDiGraph()
        g.add_nodes_from(q.vertices)
        for s, t in q.arrows:
            g.add_edge(s, t, kind="arrow")
        for v, t in q.translation.items():
            g.add_edge(v, t, kind="tau")
        return g
    return DiGraphMatcher(graph(q1), graph(q2),
                          edge_match=lambda a, b: sorted(e["kind"] for e in a.values())
                          == sorted(e["kind"] for e in b.values())).is_isomorphic()


def test_construction_rejects_bad_input():
    with pytest.raises(QuiverError):
        TranslationQuiver(["a"], [("a", "b")], {})
    with pytest.raises(QuiverError):
        TranslationQuiver(["a", "b"], [], {"a": "b", "b": "b"})
    with pytest.raises(QuiverError):
        TranslationQuiver(["a"], [], {"a": "z"})


def test_stable_examples():
    assert verify_stable(gamma(3, 1, 3)).passed
    assert verify_stable(TranslationQuiver(["x"], [], {"x": "x"})).passed


def test_deleting_one_arrow_gives_one_violation():
    q = gamma(3, 1, 3)
    for drop in (0, 7, len(q.arrows) - 1):
        arrows = [a for i, a in enumerate(q.arrows) if i != drop]
        report = verify_stable(TranslationQuiver(q.vertices, arrows, q.translation))
        assert not report.passed
        assert len(report.violations) == 1


def test_partial_translation_is_not_stable():
    q = gamma(2, 1, 2)
    t = dict(q.translation)
    t.pop(q.vertices[0])
    report = verify_stable(TranslationQuiver(q.vertices, q.arrows, t))
    assert not report.passed and not report.translation_total


def test_mesh_relation_at_25():
    q = gamma(3, 1, 3)
    rel = next(r for r in mesh_relations(q) if r.target == Diagonal(2, 5, 1))
    assert rel.source == Diagonal(1, 4, 1)
    middles = sorted(q.arrows[a][0] for _, a in rel.terms)
    assert middles == [Diagonal(1, 5, 1), Diagonal(2, 4, 1)]


def test_boundary_rows_have_single_term_meshes():
    # with two rows every vertex has exactly one incoming arrow
    for p in (1, 2, 3):
        assert all(len(r.terms) == 1 for r in mesh_relations(gamma(2, 1, p)))
    # the square has no arrows, hence no relations
    assert mesh_relations(gamma(1)) == []


def test_mesh_relations_skip_boundary_in_window():
    q = TranslationQuiver(["a", "b", "c"], [("a", "b"), ("b", "c")], {"c": "a"})
    rels = mesh_relations(q)
    assert [r.target for r in rels] == ["c"]


def test_power_examples():
    q = gamma(3)
    assert power(q, 1) is q
    hexagon_sq = power(gamma(3), 2)
    assert len(hexagon_sq.vertices) == 9
    assert len(weak_components(hexagon_sq)) == 3
    two = TranslationQuiver(["u", "v"], [("u", "v")], {"v": "u"})
    assert power(two, 2).arrows == ()
    with pytest.raises(ValueError):
        power(q, 0)


def test_power_respects_tau_avoidance():
    # a mesh u -> a -> w, u -> b -> w with tau w = u: both length-2 paths are forbidden
    q = TranslationQuiver(["u", "a", "b", "w"],
                          [("u", "a"), ("u", "b"), ("a", "w"), ("b", "w")], {"w": "u"})
    assert power(q, 2).arrows == ()
    q2 = TranslationQuiver(["u", "a", "w"], [("u", "a"), ("a", "w")], {})
    assert power(q2, 2).arrows == (("u", "w"),)


def test_hammock_examples():
    q = gamma(3)
    # (1,3) is the translate of (2,4): the only path is a whole mesh
    assert hammock_hom(q, Diagonal(1, 3, 1), Diagonal(2, 4, 1)) == 0
    assert hammock_hom(q, Diagonal(2, 4, 1), Diagonal(1, 3, 1)) == 0
    assert hammock_hom(q, Diagonal(1, 3, 1), Diagonal(1, 5, 1)) == 1
    assert hammock_hom(q, Diagonal(1, 5, 1), Diagonal(1, 3, 1)) == 0
    for v in q.vertices:
        assert hammock_hom(q, v, v) == 1


@pytest.mark.parametrize("n,m,p", [(1, 1, 1), (2, 1, 1), (3, 1, 1), (2, 1, 2), (3, 1, 3),
                                   (1, 2, 2), (2, 2, 1), (2, 2, 2), (1, 3, 2), (4, 1, 1)])
def test_hammock_matches_path_space(n, m, p):
    q = gamma(n, m, p)
    for x in q.vertices:
        assert hammock(q, x) == pathspace_homs(q, x)


def test_find_isomorphism_examples():
    q = gamma(2, 1, 3)
    iso = find_isomorphism(q, q)
    assert iso is not None and iso.check(q, q)
    assert find_isomorphism(gamma(2, 1, 3), gamma(3, 1, 2)) is None
    band = band_subquiver(band_selection(2, 4))
    assert find_isomorphism(gamma(2, 1, 4), band) is not None


@pytest.mark.parametrize("pair", [((3, 1, 2), (3, 1, 4)), ((2, 2, 1), (2, 1, 2)),
                                  ((2, 1, 4), (4, 1, 2)), ((1, 2, 4), (1, 4, 2))])
def test_isomorphism_agrees_with_networkx(pair):
    a, b = gamma(*pair[0]), gamma(*pair[1])
    assert (find_isomorphism(a, b) is not None) == nx_isomorphic(a, b)


@settings(max_examples=25, deadline=None)
@given(small_params, st.randoms(use_true_random=False))
def test_relabelled_quiver_is_isomorphic(params, rnd):
    q = build_gamma(params)
    names = list(range(len(q.vertices)))
    rnd.shuffle(names)
    other = relabel(q, dict(zip(q.vertices, names)))
    iso = find_isomorphism(q, other)
    assert iso is not None and iso.check(q, other)
    assert iso.inverse().check(other, q)


def test_isomorphism_respects_translation_flag():
    # same underlying quiver, different translation
    q1 = TranslationQuiver(["a", "b"], [], {"a": "b", "b": "a"})
    q2 = TranslationQuiver(["a", "b"], [], {"a": "a", "b": "b"})
    assert find_isomorphism(q1, q2) is None
    assert find_isomorphism(q1, q2, respect_translation=False) is not None


@settings(max_examples=20, deadline=None)
@given(small_params)
def test_json_round_trip(params):
    q = build_gamma(params)
    back = from_json(json.dumps(to_json(q)))
    assert back.vertices == q.vertices and back.arrows == q.arrows
    assert dict(back.translation) == dict(q.translation)
    assert dict(back.arrow_kinds) == dict(q.arrow_kinds)


def test_dot_export():
    text = to_dot(gamma(3, 1, 3))
    assert text.startswith("digraph")
    assert "kind=irrrot" in text and "kind=irrrhorot" in text
    assert "style=dashed" in text and "kind=tau" in text
    assert text.count("style=solid") == len(gamma(3, 1, 3).arrows)


def test_random_deletions_are_detected():
    q = gamma(4, 2, 2)
    rnd = random.Random(7)
    for _ in range(5):
        drop = rnd.randrange(len(q.arrows))
        arrows = [a for i, a in enumerate(q.arrows) if i != drop]
        assert not verify_stable(TranslationQuiver(q.vertices, arrows, q.translation)).passed
