import itertools
import random
from fractions import Fraction

import pytest

from linknets import linalg
from linknets import setfn as sf
from linknets.fields import QQ
from linknets.generators import generate_monomial, random_net, twist
from linknets.nets import (
    NetError,
    NetPresentation,
    TheoremViolation,
    check_scaling,
    faces_meeting_interior,
    find_scaling,
    induced_partition_ids,
    net_polygons,
    polygon_pair,
    polygon_space,
    vertex_pair,
    vertex_space,
    verify,
)
from linknets.subspace_polytopes import modular_pair_of
from linknets.subspaces import scale_subspace


def replace_map(net, i, j, matrix):
    maps = [list(row) for row in net.maps]
    maps[i][j] = tuple(tuple(net.field.from_int(x) for x in row) for row in matrix)
    return NetPresentation(
        net.field, net.n_types, net.dim, net.vertices, net.ids,
        tuple(tuple(row) for row in maps),
    )


# -- the worked three-vertex example ------------------------------------------


def test_eh3_matrices(eh3):
    d10 = ((1, 0), (0, 0))
    d01 = ((0, 0), (0, 1))
    expected = {
        (1, 0): d10, (2, 0): d10,       # toward 0,0: first form survives
        (0, 1): d01, (0, 2): d01,       # away from 0,0: second form survives
        (1, 2): d01, (2, 1): d10,
    }
    for (i, j), mat in expected.items():
        assert eh3.maps[i][j] == tuple(
            tuple(Fraction(x) for x in row) for row in mat
        ), (i, j)


def test_eh3_verify_all_clauses(eh3):
    report = verify(eh3)
    assert report.passed
    assert sorted(report.clauses) == ["a", "b", "c", "d", "e", "f"]


def test_eh3_zeroed_map_fails_reduced_and_exactness(eh3):
    broken = replace_map(eh3, 1, 0, ((0, 0), (0, 0)))
    report = verify(broken)
    assert not report.clauses["e"].passed
    assert not report.clauses["d"].passed


def test_eh3_identity_map_fails_circuits(eh3):
    broken = replace_map(eh3, 0, 1, ((1, 0), (0, 1)))
    report = verify(broken)
    assert not report.clauses["b"].passed


def test_eh3_vertex_space(eh3):
    w1 = vertex_space(eh3, 1)
    assert w1.dim == 2
    # blocks ordered (0,0),(1,0),(2,0): basis e1 maps to (e1; e1; 0),
    # e2 to (0; e2; e2)
    rows = set(w1.rows)
    f = Fraction
    assert (f(1), f(0), f(1), f(0), f(0), f(0)) in rows
    assert (f(0), f(0), f(0), f(1), f(0), f(1)) in rows


def test_eh3_pair_tables(eh3):
    p0 = vertex_pair(eh3, 0)
    assert p0.lower.values == (0, 1, 0, 1, 0, 1, 0, 2)
    assert p0.upper.values == (0, 2, 1, 2, 1, 2, 1, 2)
    p1 = vertex_pair(eh3, 1)
    assert p1.lower.value(("0,0", "1,0")) == 1
    assert p1.upper.value(("1,0",)) == 2
    assert sf.polytope_vertices(p1) == [(0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0)]
    p2 = vertex_pair(eh3, 2)
    assert sf.polytope_vertices(p2) == [(0, 0, 2), (0, 1, 1), (1, 0, 1)]


def test_pair_routes_agree(eh3):
    """Kernel-lattice tables match the subspace section/image route."""
    for v in range(3):
        fast = vertex_pair(eh3, v)
        slow = modular_pair_of(vertex_space(eh3, v))
        assert fast.lower == slow.lower and fast.upper == slow.upper


def test_eh3_faces(eh3):
    for v, expected_first_parts in ((0, {("0,0",)}), (2, {("2,0",)})):
        matches = faces_meeting_interior(eh3, v)
        biparts = {m.partition.parts[0] for m in matches if m.partition.size == 2}
        assert biparts == expected_first_parts
    matches = faces_meeting_interior(eh3, 1)
    biparts = {m.partition.parts[0] for m in matches if m.partition.size == 2}
    assert biparts == {("1,0", "2,0"), ("0,0", "1,0")}
    assert sum(1 for m in matches if m.partition.size == 1) == 1


def test_eh3_polygon_space(eh3):
    polys = {p.vertices: p for p in net_polygons(eh3)}
    seg = polys[((0, 0), (1, 0))]
    pair = polygon_pair(eh3, seg)
    pi = induced_partition_ids(eh3, seg, (0, 0))
    assert pair.lower == sf.split(vertex_pair(eh3, 0).lower, pi)
    # the polytope is the segment q_0 = 1
    assert pair.lower.value(("0,0",)) == 1 and pair.upper.value(("0,0",)) == 1
    seg2 = polys[((1, 0), (2, 0))]
    pair2 = polygon_pair(eh3, seg2)
    assert pair2.lower.value(("2,0",)) == 1 and pair2.upper.value(("2,0",)) == 1
    single = polys[((1, 0),)]
    assert polygon_space(eh3, single) == vertex_space(eh3, 1)


def test_polygon_pair_routes_agree(eh3):
    for poly in net_polygons(eh3):
        fast = polygon_pair(eh3, poly)
        slow = modular_pair_of(polygon_space(eh3, poly))
        assert fast.lower == slow.lower and fast.upper == slow.upper


def test_eh3_scalings(eh3):
    c = find_scaling(eh3, 1, 0)
    assert c == {"0,0": Fraction(1), "1,0": Fraction(0), "2,0": Fraction(0)}
    ok, pi = check_scaling(eh3, 1, 0, c)
    assert ok and pi.parts[0] == ("0,0",)
    c2 = find_scaling(eh3, 0, 1)
    assert [vid for vid, x in sorted(c2.items()) if x != 0] == ["1,0", "2,0"]
    assert c2["0,0"] == 0


def test_scaling_supports_reverse(eh3):
    """Swapping roles keeps the target nonzero and the source zero."""
    for v, u in itertools.permutations(range(3), 2):
        c = find_scaling(eh3, v, u)
        assert c[eh3.ids[u]] != 0
        assert c[eh3.ids[v]] == 0


# -- structural properties on random instances --------------------------------


def test_prop_simplicity_on_random_instances():
    for seed in range(6):
        net, _, _ = random_net(seed, min_vertices=2)
        for v in range(net.n_vertices):
            assert sf.is_simple(vertex_pair(net, v).lower)


def test_distinct_pairs_on_random_instances():
    for seed in range(6):
        net, _, _ = random_net(seed, min_vertices=2)
        tables = [vertex_pair(net, v).lower.values for v in range(net.n_vertices)]
        for a, b in itertools.combinations(tables, 2):
            assert a != b


def test_kernel_chain_property_on_polygons():
    """Along an oriented polygon, kernels grow by the step kernels and map
    onto them."""
    nets = []
    for seed in (3, 5, 12):
        net, _, _ = random_net(seed, min_vertices=2)
        nets.append(net)
    checked = 0
    for net in nets:
        fld = net.field
        for poly in net_polygons(net):
            if poly.size < 2:
                continue
            for base in poly.vertices:
                cycle = [net.index_of_vertex(v) for v in poly.orientation(base)]
                m = len(cycle)
                for i in range(1, m):
                    v1 = cycle[0]
                    vi = cycle[i]
                    vnext = cycle[(i + 1) % m]
                    if vnext == v1:
                        continue
                    k_total = linalg.kernel_basis(fld, net.maps[v1][vnext], ncols=net.dim)
                    k_prefix = linalg.kernel_basis(fld, net.maps[v1][vi], ncols=net.dim)
                    k_step = linalg.kernel_basis(fld, net.maps[vi][vnext], ncols=net.dim)
                    assert len(k_total) == len(k_prefix) + len(k_step)
                    image = linalg.rref(
                        fld,
                        [linalg.matvec(fld, net.maps[v1][vi], vec) for vec in k_total],
                    )[0]
                    assert image == k_step
                    checked += 1
    assert checked > 0


def test_scalar_choice_independence(eh3):
    """Rescaling one stored representative changes nothing downstream."""
    rescaled = replace_map(eh3, 1, 0, ((7, 0), (0, 0)))
    assert verify(rescaled).passed
    for v in range(3):
        assert vertex_pair(rescaled, v).lower == vertex_pair(eh3, v).lower
    c = find_scaling(rescaled, 1, 0)
    ok, _ = check_scaling(rescaled, 1, 0, c)
    assert ok


def test_twist_preserves_tables_and_is_seeded(eh3):
    t1 = twist(eh3, seed=42)
    t2 = twist(eh3, seed=42)
    assert t1.maps == t2.maps
    assert verify(t1).passed
    for v in range(3):
        assert vertex_pair(t1, v).lower == vertex_pair(eh3, v).lower
    dense = twist(eh3, seed=1)
    nonzero = sum(
        1
        for i, j in itertools.permutations(range(3), 2)
        for row in dense.maps[i][j]
        for x in row
        if x != 0
    )
    assert nonzero > 6  # no longer diagonal 0/1 texture


def test_presentation_validation(eh3):
    with pytest.raises(NetError):
        NetPresentation(QQ, 2, 2, eh3.vertices, ("a", "a", "b"), eh3.maps)
    with pytest.raises(NetError):
        NetPresentation(QQ, 2, 2, (eh3.vertices[1], eh3.vertices[0], eh3.vertices[2]), eh3.ids, eh3.maps)
