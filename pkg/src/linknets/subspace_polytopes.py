"""Modular pairs of blocked subspaces, graded splittings, and collection checks.

A subspace W of a block-decomposed ambient space induces the pair
(section dimensions, image dimensions) over subsets of the block labels;
that pair drives every polytope question.  This module also certifies
the tiling hypotheses for a finite collection of simple subspaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from . import setfn as sf
from .subspaces import (
    Ambient,
    Subspace,
    coordinate_image,
    coordinate_section,
    scale_subspace,
    subspace,
)


class PreconditionError(ValueError):
    pass


def block_ambient(labels, block_dim):
    """Ambient with one block of the same dimension per label."""
    labels = tuple(labels)
    return Ambient(labels, (block_dim,) * len(labels))


@lru_cache(maxsize=65536)
def _pair_cached(w):
    # Expressed in basis coordinates, the section over a subset is the meet
    # of the per-block projection kernels over its complement; the image
    # dimension is the codimension of the meet over the subset itself.
    from .linalg import MeetLattice, kernel_basis

    labels = w.ambient.labels
    amb = w.ambient
    h = len(labels)
    k = w.dim
    fld = w.field
    kernels = []
    for lab in labels:
        cols = amb.columns((lab,))
        block = tuple(tuple(row[j] for j in cols) for row in w.rows)
        kernels.append(kernel_basis(fld, tuple(zip(*block)), ncols=k) if block else ())
    lattice = MeetLattice(fld, kernels, k)
    table = lattice.meet_table()
    full = (1 << h) - 1
    lower = tuple(lattice.flat_dim(table[full ^ m]) for m in range(full + 1))
    upper = tuple(k - lattice.flat_dim(table[m]) for m in range(full + 1))
    return sf.ModularPair(
        sf.SetFn(labels, lower), sf.SetFn(labels, upper)
    )


def modular_pair_of(w):
    """Section/image dimension pair of a blocked subspace over all subsets.

    Equals (dim coordinate_section(w, I), dim coordinate_image(w, I)) for
    every I; the per-subset equality is property-tested against the
    explicit section/image route.
    """
    return _pair_cached(w)


def split_subspace(w, partition):
    """Graded subspace of w along an ordered partition, re-embedded blockwise."""
    if set(partition.labels) != set(w.ambient.labels):
        raise sf.GroundSetError("partition ground set differs from the ambient's")
    rows = []
    acc = []
    for part in partition.parts:
        acc.extend(part)
        piece = coordinate_image(coordinate_section(w, tuple(acc)), tuple(part))
        rows.extend(piece.rows)
    out = subspace(w.field, w.ambient, rows)
    if out.dim != w.dim:
        raise AssertionError("graded pieces lost dimension")
    return out


def is_simple_subspace(w):
    return sf.is_simple(modular_pair_of(w).lower)


@dataclass(frozen=True)
class Verdict:
    """Outcome of the scaled-inclusion dichotomy for two simple subspaces."""

    branch: str  # "isomorphism" | "disjoint-interiors"
    support: tuple  # labels where the scaling is nonzero
    separation: object = None  # sf.Separation when branch is disjoint-interiors


def interiors_disjoint_or_isomorphic(w1, w2, phi):
    """Either phi is invertible blockwise or the open polytopes are disjoint.

    Requires phi != 0, phi w1 <= w2, equal dimensions, both subspaces simple.
    """
    labels = w1.ambient.labels
    if w2.ambient != w1.ambient:
        raise PreconditionError("subspaces live in different ambients")
    if w1.dim != w2.dim:
        raise PreconditionError("subspaces must have equal dimension")
    fld = w1.field
    support = tuple(lab for lab in labels if not fld.is_zero(phi[lab]))
    if not support:
        raise PreconditionError("the scaling map must be nonzero")
    if not w2.contains(scale_subspace(phi, w1)):
        raise PreconditionError("phi does not map the first subspace into the second")
    pair1 = modular_pair_of(w1)
    pair2 = modular_pair_of(w2)
    if not sf.is_simple(pair1.lower) or not sf.is_simple(pair2.lower):
        raise PreconditionError("both subspaces must be simple")
    if len(support) == len(labels):
        return Verdict("isomorphism", support)
    mask = pair1.lower.mask_of(support)
    if pair1.upper.values[mask] > pair2.lower.values[mask]:
        raise AssertionError(
            "scaled inclusion without the image-section inequality; "
            "inputs violate the dichotomy"
        )
    pi = sf.OrderedPartition(
        labels, (support, tuple(lab for lab in labels if lab not in set(support)))
    )
    total = pair2.lower.values[mask] + pair1.lower.values[pair1.lower.full_mask ^ mask]
    sep = sf.Separation(pi, total > pair1.range, True)
    return Verdict("disjoint-interiors", support, sep)


def simplex_pair(labels, rng):
    """Pair whose polytope is the standard simplex of the given range."""
    h = len(labels)
    vals = [0] * (1 << h)
    vals[(1 << h) - 1] = rng
    mu = sf.SetFn(tuple(labels), tuple(vals))
    return sf.ModularPair.from_lower(mu)


def dilate_pair(pair, t):
    lo = sf.SetFn(pair.labels, tuple(v * t for v in pair.lower.values))
    hi = sf.SetFn(pair.labels, tuple(v * t for v in pair.upper.values))
    return sf.ModularPair(lo, hi)


def meets_open_simplex(pair):
    """Whether the base polytope has a point with all coordinates positive.

    For a nonnegative integer-valued pair this is exactly "every singleton
    upper value is >= 1": the maximum of q(v) over the polytope is the
    singleton upper value, and averaging maximizers gives a positive point.
    """
    return all(pair.upper.values[1 << i] >= 1 for i in range(len(pair.labels)))


def interior_point(pair):
    """A rational point of the polytope with positive coordinates, if any.

    Averages the polytope vertices (exact) when enumeration is feasible.
    """
    if not meets_open_simplex(pair):
        return None
    if len(pair.labels) > sf.MAX_VERTEX_ENUM:
        return None
    verts = sf.polytope_vertices(pair)
    k = len(verts)
    point = tuple(sum(Fraction(v[i]) for v in verts) / k for i in range(len(pair.labels)))
    if any(x <= 0 for x in point):
        raise AssertionError("vertex average not interior despite singleton bounds")
    return point


@dataclass
class ClauseResult:
    name: str
    passed: bool
    witnesses: list = dc_field(default_factory=list)
    failures: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "clause": self.name,
            "passed": self.passed,
            "witnesses": self.witnesses,
            "failures": self.failures,
        }


@dataclass
class CollectionCertificate:
    """Evidence that a collection of simple subspaces tiles the simplex."""

    labels: tuple
    rng: int
    dilations: tuple
    clauses: dict

    @property
    def passed(self):
        return all(c.passed for c in self.clauses.values())

    def to_json(self):
        return {
            "ground_set": list(self.labels),
            "range": self.rng,
            "dilations": list(self.dilations),
            "passed": self.passed,
            "clauses": {k: c.to_json() for k, c in sorted(self.clauses.items())},
        }


def check_collection(ws, dilations=(1, 2, 3), scalings=None):
    """Certify the tiling hypotheses and coverage for a list of subspaces.

    ``scalings`` optionally maps an ordered index pair (i, j) to a blockwise
    scaling (label -> scalar) with c W_i <= W_j; pairs without a supplied
    scaling fail clause (c), since torus-orbit membership is not searched.
    """
    if not ws:
        raise PreconditionError("need a nonempty collection")
    amb = ws[0].ambient
    if any(w.ambient != amb for w in ws):
        raise PreconditionError("collection must share an ambient")
    dims = {w.dim for w in ws}
    if len(dims) != 1:
        raise PreconditionError("collection must share a dimension")
    labels = amb.labels
    pairs = [modular_pair_of(w) for w in ws]
    rng = pairs[0].range

    cl = {}

    simple = ClauseResult("a-simplicity", True)
    for i, pair in enumerate(pairs):
        cd = sf.codimension(pair.lower)
        if cd == 1:
            simple.witnesses.append({"index": i, "codimension": cd})
        else:
            simple.passed = False
            simple.failures.append({"index": i, "codimension": cd})
    cl["a"] = simple

    distinct = ClauseResult("b-distinct-pairs", True)
    for i, j in itertools.combinations(range(len(ws)), 2):
        if pairs[i].lower.values == pairs[j].lower.values:
            distinct.passed = False
            distinct.failures.append({"pair": [i, j], "reason": "equal modular pairs"})
    cl["b"] = distinct

    scal = ClauseResult("c-scaling-maps", True)
    fld = ws[0].field
    for i, j in itertools.permutations(range(len(ws)), 2):
        entry = {"pair": [i, j]}
        phi = None if scalings is None else scalings.get((i, j))
        if phi is None:
            scal.passed = False
            entry["reason"] = "no scaling supplied"
            scal.failures.append(entry)
            continue
        support = [lab for lab in labels if not fld.is_zero(phi[lab])]
        ok = bool(support) and ws[j].contains(scale_subspace(phi, ws[i]))
        if ok:
            entry["support"] = [str(lab) for lab in support]
            scal.witnesses.append(entry)
        else:
            scal.passed = False
            entry["reason"] = "scaling is zero or fails the inclusion"
            scal.failures.append(entry)
    cl["c"] = scal

    complete = ClauseResult("d-completeness", True)
    full = (1 << len(labels)) - 1
    split_tables = {}
    for i, pair in enumerate(pairs):
        for mask in range(1, full):
            parts = (
                tuple(lab for k, lab in enumerate(labels) if mask >> k & 1),
                tuple(lab for k, lab in enumerate(labels) if not mask >> k & 1),
            )
            pi = sf.OrderedPartition(labels, parts)
            mu_pi = sf.split(pairs[i].lower, pi)
            split_tables[(i, mask)] = mu_pi
    for i, pair in enumerate(pairs):
        for mask in range(1, full):
            mu_pi = split_tables[(i, mask)]
            pp = sf.ModularPair.from_lower(mu_pi)
            if not meets_open_simplex(pp):
                continue
            partner = None
            for j in range(len(ws)):
                if pairs[j].lower.values == pairs[i].lower.values:
                    continue
                if split_tables[(j, full ^ mask)].values == mu_pi.values:
                    partner = j
                    break
            witness = {
                "index": i,
                "first_part": [str(lab) for k, lab in enumerate(labels) if mask >> k & 1],
            }
            if partner is None:
                complete.passed = False
                witness["reason"] = "no partner matches the opposite splitting"
                complete.failures.append(witness)
            else:
                witness["partner"] = partner
                pt = interior_point(pp)
                if pt is not None:
                    witness["interior_point"] = [str(x) for x in pt]
                complete.witnesses.append(witness)
    cl["d"] = complete

    coverage = ClauseResult("e-lattice-coverage", True)
    for t in dilations:
        simplex = dilate_pair(simplex_pair(labels, rng), t)
        pts = sf.lattice_points(simplex, 1)
        dilated = [dilate_pair(pair, t) for pair in pairs]
        counts = [0] * len(ws)
        missing = []
        for q in pts:
            hit = False
            for i, dpair in enumerate(dilated):
                if sf.polytope_membership(dpair, q):
                    counts[i] += 1
                    hit = True
            if not hit:
                missing.append(list(q))
        entry = {"dilation": t, "simplex_points": len(pts), "per_member": counts}
        if missing:
            coverage.passed = False
            entry["missing"] = missing[:10]
            coverage.failures.append(entry)
        else:
            coverage.witnesses.append(entry)
    cl["e"] = coverage

    seps = ClauseResult("f-separations", True)
    for i, j in itertools.combinations(range(len(ws)), 2):
        sep = sf.separation(pairs[i].lower, pairs[j].lower, nontrivial_only=True)
        entry = {"pair": [i, j]}
        if sep is None:
            seps.passed = False
            entry["reason"] = "no nontrivial separation"
            seps.failures.append(entry)
        else:
            entry["first_part"] = [str(lab) for lab in sep.partition.parts[0]]
            entry["strict"] = sep.strict
            seps.witnesses.append(entry)
    cl["f"] = seps

    return CollectionCertificate(labels, rng, tuple(dilations), cl)
