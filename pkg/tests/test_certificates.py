import itertools

import pytest

from linknets import setfn as sf
from linknets.certificates import (
    chow_class,
    lp_membership,
    reduction_complex,
    simplex_lattice,
    tiling_certificate,
)
from linknets.generators import TropicalForm, TropicalSpec, generate_monomial, random_net
from linknets.nets import TheoremViolation, vertex_pair
from linknets.subspace_polytopes import dilate_pair

from test_nets import replace_map


def test_simplex_lattice_counts():
    assert simplex_lattice(2, 3).shape == (6, 3)
    assert simplex_lattice(0, 4).tolist() == [[0, 0, 0, 0]]
    assert simplex_lattice(3, 1).tolist() == [[3]]
    pts = simplex_lattice(2, 3)
    assert all(sum(row) == 2 for row in pts.tolist())


def test_tiling_certificate_single_vertex():
    spec = TropicalSpec(2, (TropicalForm((0, 0)),))
    net = generate_monomial(spec)
    assert len(net.vertices) == 1
    cert = tiling_certificate(net, (1, 2))
    assert cert.passed


def test_tiling_certificate_eh3(eh3):
    cert = tiling_certificate(eh3, (1, 2, 3))
    assert cert.passed
    witness = cert.clauses["coverage"].witnesses[0]
    assert witness["simplex_points"] == 6
    assert witness["per_vertex"] == {"0,0": 3, "1,0": 4, "2,0": 3}


def test_tiling_certificate_rejects_broken_net(eh3):
    broken = replace_map(eh3, 1, 0, ((0, 0), (0, 0)))
    with pytest.raises(TheoremViolation) as err:
        tiling_certificate(broken, (1,))
    assert "clauses" in str(err.value)


def test_coverage_matches_membership_oracle(eh3):
    """The flat-constraint scan agrees with the exhaustive subset check."""
    pairs = [vertex_pair(eh3, v) for v in range(3)]
    for t in (1, 2):
        pts = simplex_lattice(t * eh3.dim, 3).tolist()
        dilated = [dilate_pair(p, t) for p in pairs]
        cert = tiling_certificate(eh3, (t,))
        counts = cert.clauses["coverage"].witnesses[0]["per_vertex"]
        oracle = {
            eh3.ids[v]: sum(1 for q in pts if sf.polytope_membership(dilated[v], q))
            for v in range(3)
        }
        assert counts == oracle


def test_tiling_jobs_parameter_is_deterministic(eh3):
    a = tiling_certificate(eh3, (1, 2), jobs=1).to_json()
    b = tiling_certificate(eh3, (1, 2), jobs=4).to_json()
    assert a == b


def test_chow_class_eh3(eh3):
    chow = chow_class(eh3)
    assert chow.passed
    assert chow.points == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert chow.owners == [["2,0"], ["1,0"], ["0,0"]]
    rows = chow.to_json()["class"]
    assert all(r["multiplicity"] == 1 for r in rows)


def test_chow_class_single_vertex():
    spec = TropicalSpec(2, (TropicalForm((0, 0)), TropicalForm((0, 0))))
    net = generate_monomial(spec)
    assert len(net.vertices) == 1
    chow = chow_class(net)
    assert chow.passed
    assert chow.points == [(1,)]


def test_chow_support_size_matches_binomial():
    for seed in (2, 7, 9):
        net, _, _ = random_net(seed, min_vertices=2)
        chow = chow_class(net)
        assert chow.passed
        from math import comb

        assert len(chow.points) == comb(
            net.dim - 1 + net.n_vertices - 1, net.n_vertices - 1
        )


def test_chow_points_dilate_into_polytopes():
    """Each owned degree point scales into the owner's polytope."""
    for seed in (3, 8):
        net, _, _ = random_net(seed, min_vertices=2, dim=3)
        if net.dim < 2:
            continue
        chow = chow_class(net)
        r = net.dim - 1
        for q, owner in zip(chow.points, chow.owners):
            v = net.ids.index(owner[0])
            pair = vertex_pair(net, v)
            # (r+1) q / r inside the polytope: check r+1 scaled tables
            scaled_point = [x * (r + 1) for x in q]
            scaled_pair = dilate_pair(pair, r)
            assert sf.polytope_membership(scaled_pair, scaled_point)


def test_lp_membership_eh3(eh3):
    member, strata = lp_membership(eh3, {"0,0": (1, 0), "1,0": (1, 1), "2,0": (0, 1)})
    assert member and strata == ("1,0",)
    member, strata = lp_membership(eh3, {"0,0": (1, 0), "1,0": (0, 1), "2,0": (0, 1)})
    assert member and strata == ()
    member, _ = lp_membership(eh3, {"0,0": (1, 1), "1,0": (1, 1), "2,0": (1, 1)})
    assert not member  # the image of (1,1) at the left block is e1, not (1,1)


def test_lp_membership_single_vertex():
    spec = TropicalSpec(2, (TropicalForm((0, 0)), TropicalForm((0, 0))))
    net = generate_monomial(spec)
    vid = net.ids[0]
    member, strata = lp_membership(net, {vid: (1, 1)})
    assert member and strata == (vid,)


def test_lp_membership_rejects_zero_block(eh3):
    with pytest.raises(Exception):
        lp_membership(eh3, {"0,0": (0, 0), "1,0": (1, 0), "2,0": (1, 0)})


def test_lp_membership_general_position_strata_disjoint():
    for seed in (4, 6):
        net, _, _ = random_net(seed, min_vertices=2)
        import random as _r

        rng = _r.Random(seed)
        for _ in range(5):
            v = rng.randrange(net.n_vertices)
            s = tuple(net.field.from_int(rng.randint(1, 5)) for _ in range(net.dim))
            point = {}
            ok = True
            for w in range(net.n_vertices):
                from linknets import linalg

                img = linalg.matvec(net.field, net.maps[v][w], s)
                if all(net.field.is_zero(x) for x in img):
                    ok = False
                    break
                point[net.ids[w]] = img
            if not ok:
                continue
            member, strata = lp_membership(net, point)
            assert member
            assert net.ids[v] in strata


def test_reduction_complex_eh3(eh3):
    complex_obj = reduction_complex(eh3)
    assert complex_obj.maximal == (("0,0", "1,0"), ("1,0", "2,0"))
    assert complex_obj.dimension == 1
    assert complex_obj.cross_check.passed


def test_reduction_complex_cross_check_on_wider_instances():
    """The exact LP agrees with the polygon structure beyond the line case."""
    found_triangle = False
    for seed in (1, 3, 4, 6, 8, 12):
        net, _, _ = random_net(seed, min_vertices=2)
        complex_obj = reduction_complex(net)
        assert complex_obj.cross_check.passed
        assert set(complex_obj.vertex_ids) == set(net.ids)
        found_triangle = found_triangle or any(
            len(s) >= 3 for s in complex_obj.simplices
        )
    assert found_triangle, "corpus seeds should include a higher simplex"
