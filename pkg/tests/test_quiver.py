import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linknets import quiver as qv


EH3_H = [(0, 0), (1, 0), (2, 0)]


def test_normalize_idempotent():
    assert qv.normalize((3, 1, 2)) == (2, 0, 1)
    assert qv.normalize(qv.normalize((5, 5))) == (0, 0)


def test_essential_type_examples():
    assert qv.essential_type((0, 0), (0, 0)) == frozenset()
    assert qv.essential_type((0, 0), (2, 0)) == frozenset({0})
    assert qv.essential_type((0, 0, 0), (1, 2, 0)) == frozenset({0, 1})


def test_neighbor_step_examples():
    assert qv.neighbor_step((0, 0), frozenset({0})) == (1, 0)
    assert qv.neighbor_step((0, 1, 0), frozenset({0, 2})) == (0, 0, 0)
    with pytest.raises(qv.QuiverError):
        qv.neighbor_step((0, 0), frozenset())
    with pytest.raises(qv.QuiverError):
        qv.neighbor_step((0, 0), frozenset({0, 1}))


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.integers(0, 4), min_size=2, max_size=4),
    st.data(),
)
def test_neighbor_step_round_trip(vec, data):
    v = qv.normalize(tuple(vec))
    n1 = len(v)
    size = data.draw(st.integers(1, n1 - 1))
    types = frozenset(data.draw(st.permutations(range(n1)))[:size])
    comp = frozenset(range(n1)) - types
    w = qv.neighbor_step(v, types)
    assert qv.essential_type(v, w) == types
    assert qv.neighbor_step(w, comp) == v


def test_hull_examples():
    assert qv.hull({(1, 0)}) == {(1, 0)}
    assert qv.hull({(0, 0), (2, 0)}) == {(0, 0), (1, 0), (2, 0)}
    assert qv.hull(set(EH3_H)) == set(EH3_H)


def test_hull_idempotent_random():
    rng = random.Random(2)
    for _ in range(40):
        n1 = rng.randint(2, 4)
        pts = {
            tuple(rng.randint(0, 3) for _ in range(n1))
            for _ in range(rng.randint(1, 4))
        }
        h = qv.hull(pts)
        assert qv.hull(h) == h
        assert {qv.normalize(p) for p in pts} <= h


def test_shadow_examples():
    assert qv.shadow((1, 0), EH3_H) == (1, 0)
    assert qv.shadow((5, 0), EH3_H) == (2, 0)
    assert qv.shadow((0, 3), EH3_H) == (0, 0)
    with pytest.raises(qv.QuiverError):
        qv.shadow((0, 0), [(0, 0), (2, 0)])  # not hull-closed


def test_shadow_coherence_random():
    rng = random.Random(8)
    for _ in range(25):
        n1 = rng.randint(2, 3)
        pts = {
            tuple(rng.randint(0, 3) for _ in range(n1))
            for _ in range(rng.randint(1, 3))
        }
        h = sorted(qv.hull(pts))
        target = tuple(rng.randint(0, 4) for _ in range(n1))
        w = qv.shadow(target, h)
        assert w in h
        if qv.normalize(target) in h:
            assert w == qv.normalize(target)


def test_extreme_vertices_examples():
    assert qv.extreme_vertices([(1, 1, 0)]) == {0: (1, 1, 0), 1: (1, 1, 0), 2: (1, 1, 0)}
    ext = qv.extreme_vertices(EH3_H)
    assert ext == {0: (0, 0), 1: (2, 0)}


def test_extreme_vertices_postconditions_random():
    rng = random.Random(4)
    for _ in range(30):
        n1 = rng.randint(2, 4)
        pts = {
            tuple(rng.randint(0, 3) for _ in range(n1))
            for _ in range(rng.randint(1, 4))
        }
        h = sorted(qv.hull(pts))
        ext = qv.extreme_vertices(h)
        for a, ua in ext.items():
            # cone condition
            assert all(
                a in qv.essential_type(ua, w) for w in h if w != ua
            )
            # every member reaches the extreme vertex avoiding the type
            assert all(a not in qv.essential_type(u, ua) for u in h)


def test_polygons_eh3():
    polys = qv.polygons(EH3_H)
    sets = sorted(p.vertices for p in polys)
    assert sets == [
        ((0, 0),),
        ((0, 0), (1, 0)),
        ((1, 0),),
        ((1, 0), (2, 0)),
        ((2, 0),),
    ]


def test_polygons_triangle():
    v = (0, 0, 0)
    a = qv.neighbor_step(v, frozenset({0}))
    b = qv.neighbor_step(a, frozenset({1}))
    h = qv.hull({v, a, b})
    polys = qv.polygons(h)
    assert any(p.size == 3 for p in polys)
    tri = [p for p in polys if p.size == 3][0]
    assert set(tri.vertices) == {v, a, b}


def test_induced_partition_examples():
    polys = {p.vertices: p for p in qv.polygons(EH3_H)}
    seg = polys[((0, 0), (1, 0))]
    assert qv.induced_partition(seg, (0, 0), EH3_H) == (((0, 0),), ((1, 0), (2, 0)))
    assert qv.induced_partition(seg, (1, 0), EH3_H) == (((1, 0), (2, 0)), ((0, 0),))
    trivial = polys[((1, 0),)]
    assert qv.induced_partition(trivial, (1, 0), EH3_H) == (tuple(EH3_H),)


def test_oriented_polygon_segments_property():
    """Members outside a part's shadow region are reached through the next
    polygon vertex: the orientation's step types sit inside the essential
    type toward them."""
    rng = random.Random(6)
    for _ in range(20):
        n1 = rng.randint(2, 3)
        pts = {
            tuple(rng.randint(0, 2) for _ in range(n1))
            for _ in range(rng.randint(1, 3))
        }
        h = sorted(qv.hull(pts))
        for poly in qv.polygons(h):
            if poly.size == 1:
                continue
            for base in poly.vertices:
                cycle = poly.orientation(base)
                parts = qv.induced_partition(poly, base, h)
                for i in range(len(cycle)):
                    step = qv.essential_type(cycle[i], cycle[(i + 1) % len(cycle)])
                    for u in h:
                        if u in parts[i]:
                            continue
                        assert step <= qv.essential_type(cycle[i], u)
