import itertools
import random
from fractions import Fraction

import pytest

from linknets import setfn as sf
from linknets.fields import QQ
from linknets.nets import find_scaling, vertex_space
from linknets.subspace_polytopes import (
    PreconditionError,
    block_ambient,
    check_collection,
    dilate_pair,
    interiors_disjoint_or_isomorphic,
    interior_point,
    meets_open_simplex,
    modular_pair_of,
    simplex_pair,
    split_subspace,
)
from linknets.subspaces import Ambient, subspace

from conftest import random_blocked_subspace


def q(rows):
    return [[Fraction(x) for x in row] for row in rows]


def diagonal_subspace():
    amb = Ambient(("a", "b"), (2, 2))
    return subspace(QQ, amb, q([[1, 0, 1, 0], [0, 1, 0, 1]]))


def test_modular_pair_diagonal_example():
    w = diagonal_subspace()
    pair = modular_pair_of(w)
    assert pair.lower.values == (0, 0, 0, 2)
    assert pair.upper.values == (0, 2, 2, 2)
    # the polytope is the full simplex of range 2
    assert pair.lower.values == simplex_pair(("a", "b"), 2).lower.values


def test_modular_pair_single_block():
    amb = Ambient(("a", "b"), (2, 2))
    w = subspace(QQ, amb, q([[1, 0, 0, 0], [0, 1, 0, 0]]))
    pair = modular_pair_of(w)
    assert pair.lower.values == (0, 2, 0, 2)
    # polytope is the single point 2 e_a
    assert sf.polytope_vertices(pair) == [(2, 0)]


def test_random_pairs_are_supermodular_and_adjoint(fp):
    rng = random.Random(23)
    for _ in range(30):
        for field in (QQ, fp):
            w, _, _ = random_blocked_subspace(rng, field)
            pair = modular_pair_of(w)
            assert sf.is_supermodular(pair.lower)
            assert sf.adjoint(pair.lower) == pair.upper
            assert pair.range == w.dim


def test_split_subspace_trivial_partition():
    w = diagonal_subspace()
    pi = sf.OrderedPartition(("a", "b"), (("a", "b"),))
    assert split_subspace(w, pi) == w


def test_split_subspace_diagonal_example():
    w = diagonal_subspace()
    pi = sf.OrderedPartition(("a", "b"), (("a",), ("b",)))
    wpi = split_subspace(w, pi)
    assert wpi.dim == w.dim
    assert modular_pair_of(wpi).lower == sf.split(modular_pair_of(w).lower, pi)


def test_split_compatibility_random(fp):
    """Graded splitting matches the set-function splitting on random inputs."""
    rng = random.Random(31)
    for _ in range(15):
        for field in (QQ, fp):
            w, _, amb = random_blocked_subspace(rng, field)
            labels = amb.labels
            for parts in sf._ordered_set_partitions(labels):
                pi = sf.OrderedPartition(labels, tuple(tuple(p) for p in parts))
                left = modular_pair_of(split_subspace(w, pi)).lower
                right = sf.split(modular_pair_of(w).lower, pi)
                assert left == right


def test_interiors_dichotomy_identity():
    amb = Ambient(("a", "b"), (1, 1))
    w = subspace(QQ, amb, q([[1, 1]]))
    verdict = interiors_disjoint_or_isomorphic(
        w, w, {"a": QQ.one, "b": QQ.one}
    )
    assert verdict.branch == "isomorphism"


def test_interiors_dichotomy_rejects_zero():
    amb = Ambient(("a", "b"), (1, 1))
    w = subspace(QQ, amb, q([[1, 1]]))
    with pytest.raises(PreconditionError):
        interiors_disjoint_or_isomorphic(w, w, {"a": QQ.zero, "b": QQ.zero})


def test_interiors_dichotomy_separation_branch(eh3):
    w1 = vertex_space(eh3, 1)
    w0 = vertex_space(eh3, 0)
    c = find_scaling(eh3, 1, 0)
    verdict = interiors_disjoint_or_isomorphic(w1, w0, c)
    assert verdict.branch == "disjoint-interiors"
    assert verdict.support == ("0,0",)
    assert verdict.separation is not None and verdict.separation.nontrivial


def test_meets_open_simplex_and_interior_point():
    pair = simplex_pair(("a", "b", "c"), 2)
    assert meets_open_simplex(pair)
    pt = interior_point(pair)
    assert pt is not None and all(x > 0 for x in pt) and sum(pt) == 2
    # a face pinned to q_a = 0 misses the open simplex
    mu = sf.SetFn(("a", "b"), (0, 0, 1, 1))
    face = sf.ModularPair.from_lower(mu)
    assert sf.adjoint(mu).values[1] == 0
    assert not meets_open_simplex(face)


def test_check_collection_singleton_passes():
    w = diagonal_subspace()
    cert = check_collection([w], dilations=(1, 2))
    assert cert.passed


def test_check_collection_duplicate_fails():
    w = diagonal_subspace()
    amb = w.ambient
    w2 = subspace(QQ, amb, q([[1, 0, 2, 0], [0, 1, 0, 2]]))  # equivalent subspace
    cert = check_collection([w, w2], dilations=(1,))
    assert not cert.clauses["b"].passed


def test_check_collection_eh3_passes(eh3):
    ws = [vertex_space(eh3, v) for v in range(3)]
    scalings = {
        (i, j): find_scaling(eh3, i, j)
        for i, j in itertools.permutations(range(3), 2)
    }
    cert = check_collection(ws, dilations=(1, 2, 3), scalings=scalings)
    assert cert.passed, cert.to_json()
    cov = cert.clauses["e"].witnesses
    assert cov[0]["simplex_points"] == 6


def test_check_collection_missing_scalings_fail(eh3):
    ws = [vertex_space(eh3, v) for v in range(3)]
    cert = check_collection(ws, dilations=(1,))
    assert not cert.clauses["c"].passed
    assert cert.clauses["a"].passed


def test_dilate_pair_scales_tables():
    pair = simplex_pair(("a", "b"), 3)
    doubled = dilate_pair(pair, 2)
    assert doubled.range == 6
