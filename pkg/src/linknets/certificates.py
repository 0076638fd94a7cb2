"""Machine-checkable certificates for a verified net presentation.

The tiling certificate assembles per-vertex simplicity, pairwise scaled
inclusions with their separations, completeness of interior bipartition
faces through 2-gons, the full face/polygon bijection, and lattice-point
coverage of dilated simplices.  The degree-point partition certificate
checks that the strict upper-bound regions of the vertices partition the
integer points of the degree-r simplex with unit multiplicities.

Bulk lattice scans run on int64 arrays; the bounds involved are tiny
integers, so the arithmetic stays exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from . import exactlp, linalg
from . import setfn as sf
from .nets import (
    NetClause,
    TheoremViolation,
    faces_meeting_interior,
    find_scaling,
    induced_partition_ids,
    net_polygons,
    polygon_pair,
    vertex_flats,
    vertex_pair,
    vertex_space,
    verify,
)
from .subspaces import scale_subspace


def _require_verified(net):
    report = verify(net)
    if not report.passed:
        raise TheoremViolation(
            f"presentation fails verification clauses {report.failing_clauses()}"
        )
    return report


def _pmap(fn, items, jobs=1):
    """Map with a configurable worker count; output order is input order."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def simplex_lattice(total, parts):
    """All compositions of `total` into `parts` slots, as an int64 array."""
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    combos = np.array(
        list(itertools.combinations(range(total + parts - 1), parts - 1)),
        dtype=np.int64,
    )
    if combos.size == 0:
        combos = combos.reshape(0, parts - 1)
    n = combos.shape[0]
    left = np.full((n, 1), -1, dtype=np.int64)
    right = np.full((n, 1), total + parts - 1, dtype=np.int64)
    padded = np.hstack([left, combos, right])
    return np.diff(padded, axis=1) - 1


def _member_mask(points, constraints, scale):
    """Boolean array: which rows satisfy every (index list, bound) constraint."""
    out = np.ones(points.shape[0], dtype=bool)
    for idxs, bound in constraints:
        sums = points[:, idxs].sum(axis=1) if idxs else np.zeros(points.shape[0], dtype=np.int64)
        out &= sums <= bound * scale
    return out


def _vertex_constraints(net, v):
    flats = vertex_flats(net, v)
    out = []
    for mask, fdim in flats.binding_constraints():
        idxs = [u for u in range(net.n_vertices) if mask >> u & 1]
        out.append((idxs, net.dim - fdim))
    return out


@dataclass
class TilingCertificate:
    ids: tuple
    dim: int
    dilations: tuple
    clauses: dict
    note: str = ""

    @property
    def passed(self):
        return all(c.passed for c in self.clauses.values())

    def to_json(self):
        return {
            "ground_set": list(self.ids),
            "dimension": self.dim,
            "dilations": list(self.dilations),
            "passed": self.passed,
            "note": self.note,
            "clauses": {k: c.to_json() for k, c in sorted(self.clauses.items())},
        }


def tiling_certificate(net, dilations=(1, 2, 3), jobs=1):
    """Evidence that the vertex polytopes and their faces tile the simplex."""
    _require_verified(net)
    n = net.n_vertices
    ids = net.ids
    pairs = [vertex_pair(net, v) for v in range(n)]
    net_polygons(net)  # warm the shared caches before any fan-out
    clauses = {}

    simp = NetClause("simplicity")
    for v in range(n):
        simp.checked += 1
        cd = sf.codimension(pairs[v].lower)
        if cd != 1:
            simp.fail({"vertex": ids[v], "codimension": cd})
    clauses["simplicity"] = simp

    distinct = NetClause("distinct-pairs")
    for i, j in itertools.combinations(range(n), 2):
        distinct.checked += 1
        if pairs[i].lower.values == pairs[j].lower.values:
            distinct.fail({"pair": [ids[i], ids[j]]})
    clauses["distinct-pairs"] = distinct

    seps = NetClause("separations")
    spaces = [vertex_space(net, v) for v in range(n)]

    def check_pair(vu):
        v, u = vu
        try:
            c = find_scaling(net, v, u)
        except (TheoremViolation, ValueError) as exc:
            return {"pair": [ids[v], ids[u]], "reason": str(exc)}
        if not spaces[u].contains(scale_subspace(c, spaces[v])):
            return {"pair": [ids[v], ids[u]], "reason": "scaled inclusion fails"}
        support = [vid for vid in ids if not net.field.is_zero(c[vid])]
        mask = pairs[v].lower.mask_of(support)
        if pairs[v].upper.values[mask] > pairs[u].lower.values[mask]:
            return {
                "pair": [ids[v], ids[u]],
                "reason": "support does not witness a separation",
            }
        return None

    for result in _pmap(check_pair, itertools.permutations(range(n), 2), jobs):
        seps.checked += 1
        if result is not None:
            seps.fail(result)
    clauses["separations"] = seps

    comp = NetClause("completeness-2gons")
    faces = NetClause("face-polygon-bijection")

    def face_scan(v):
        try:
            return faces_meeting_interior(net, v)
        except TheoremViolation as exc:
            return exc

    all_faces = {}
    for v, result in enumerate(_pmap(face_scan, range(n), jobs)):
        faces.checked += 1
        if isinstance(result, TheoremViolation):
            faces.fail({"vertex": ids[v], "reason": str(result)})
            all_faces[v] = []
        else:
            all_faces[v] = result
    clauses["face-polygon-bijection"] = faces

    for v in range(n):
        for match in all_faces[v]:
            if match.partition.size != 2:
                continue
            comp.checked += 1
            poly = match.polygon
            others = [w for w in poly.vertices if w != net.vertices[v]]
            if len(others) != 1:
                comp.fail({"vertex": ids[v], "reason": "2-face without a 2-gon"})
                continue
            u = net.index_of_vertex(others[0])
            mu_v_pi = sf.split(pairs[v].lower, match.partition)
            mu_delta = polygon_pair(net, poly).lower
            mu_u_pic = sf.split(pairs[u].lower, match.partition.complement())
            if not (mu_v_pi.values == mu_delta.values == mu_u_pic.values):
                comp.fail({
                    "vertex": ids[v],
                    "partner": ids[u],
                    "first_part": list(match.partition.parts[0]),
                    "reason": "splittings disagree with the 2-gon pair",
                })
    clauses["completeness-2gons"] = comp

    cover = NetClause("coverage")
    constraints = [_vertex_constraints(net, v) for v in range(n)]
    for t in dilations:
        cover.checked += 1
        pts = simplex_lattice(t * net.dim, n)
        hit = np.zeros(pts.shape[0], dtype=bool)
        counts = []
        for v in range(n):
            member = _member_mask(pts, constraints[v], t)
            counts.append(int(member.sum()))
            hit |= member
        if not bool(hit.all()):
            cover.fail({"dilation": t, "missing": pts[~hit][:5].tolist()})
        cover.witnesses.append({
            "dilation": t,
            "simplex_points": int(pts.shape[0]),
            "per_vertex": dict(zip(ids, counts)),
        })
    clauses["coverage"] = cover

    return TilingCertificate(ids, net.dim, tuple(dilations), clauses)


@dataclass
class ChowClass:
    """Unit-multiplicity monomial support partitioned by owning vertex."""

    ids: tuple
    degree: int  # r
    points: list  # integer points of the degree simplex, lex order
    owners: list  # per point: list of claiming vertex ids
    passed: bool
    violations: list

    def per_component(self):
        out = {vid: [] for vid in self.ids}
        for q, owner in zip(self.points, self.owners):
            for vid in owner:
                out[vid].append(q)
        return out

    def to_json(self):
        rows = []
        for q, owner in zip(self.points, self.owners):
            for vid in owner:
                rows.append({"q": list(q), "multiplicity": 1, "component": vid})
            if not owner:
                rows.append({"q": list(q), "multiplicity": 0, "component": None})
        return {
            "degree": self.degree,
            "passed": self.passed,
            "support_size": len(self.points),
            "violations": self.violations,
            "class": rows,
        }


def chow_class(net):
    """Partition of the degree-r integer simplex by strict vertex bounds.

    A point belongs to a vertex when q(I) stays at least one below the
    vertex's upper value on every proper nonempty subset; the certificate
    checks that this assigns every point to exactly one vertex.
    """
    _require_verified(net)
    n = net.n_vertices
    r = net.dim - 1
    ids = net.ids
    pts = simplex_lattice(r, n)
    members = []
    for v in range(n):
        cons = [(idxs, bound) for idxs, bound in _vertex_constraints(net, v)]
        strict = [(idxs, bound - 1) for idxs, bound in cons if len(idxs) < n]
        member = np.ones(pts.shape[0], dtype=bool)
        for idxs, bound in strict:
            member &= pts[:, idxs].sum(axis=1) <= bound
        members.append(member)
    owners = []
    violations = []
    for i in range(pts.shape[0]):
        who = [ids[v] for v in range(n) if members[v][i]]
        owners.append(who)
        if len(who) != 1:
            violations.append({"q": pts[i].tolist(), "claimed_by": who})
    expected = comb(r + n - 1, n - 1)
    passed = not violations and pts.shape[0] == expected
    return ChowClass(ids, r, [tuple(p) for p in pts.tolist()], owners, passed, violations)


class MembershipError(ValueError):
    pass


def lp_membership(net, point):
    """Wedge-condition membership of a projective tuple, plus open strata.

    `point` maps vertex ids to nonzero coordinate vectors.  Membership
    requires every image M^v_w s_v to be proportional to s_w; the open
    stratum of v additionally needs all those images nonzero.
    """
    _require_verified(net)
    fld = net.field
    n = net.n_vertices
    vecs = []
    for vid in net.ids:
        if vid not in point:
            raise MembershipError(f"point misses block {vid!r}")
        vec = tuple(point[vid])
        if len(vec) != net.dim or all(fld.is_zero(x) for x in vec):
            raise MembershipError(f"block {vid!r} must be a nonzero vector of length {net.dim}")
        vecs.append(vec)
    member = True
    for v, w in itertools.permutations(range(n), 2):
        image = linalg.matvec(fld, net.maps[v][w], vecs[v])
        if linalg.rank(fld, (image, vecs[w])) > 1:
            member = False
            break
    strata = []
    if member:
        for v in range(n):
            if all(
                not all(fld.is_zero(x) for x in linalg.matvec(fld, net.maps[v][w], vecs[v]))
                for w in range(n)
            ):
                strata.append(net.ids[v])
    return member, tuple(strata)


@dataclass
class SimplicialComplex:
    vertex_ids: tuple
    simplices: tuple  # sorted tuples of ids, all faces included
    cross_check: NetClause

    @property
    def maximal(self):
        sets = [frozenset(s) for s in self.simplices]
        out = []
        for i, s in enumerate(sets):
            if not any(s < t for t in sets):
                out.append(self.simplices[i])
        return tuple(out)

    @property
    def dimension(self):
        return max(len(s) for s in self.simplices) - 1

    def to_json(self):
        return {
            "vertices": list(self.vertex_ids),
            "simplices": [list(s) for s in self.simplices],
            "maximal_simplices": [list(s) for s in self.maximal],
            "dimension": self.dimension,
            "cross_check": self.cross_check.to_json(),
        }


def reduction_complex(net):
    """Simplicial complex of the polygons, cross-checked against polytopes.

    Positive direction: each polygon's face polytope is a common face of
    its vertices' polytopes and meets the open simplex.  Negative
    direction: for each minimal non-polygon vertex set, an exact LP
    confirms the polytope intersection misses the open simplex.
    """
    _require_verified(net)
    ids = net.ids
    polys = net_polygons(net)
    simplex_sets = set()
    for poly in polys:
        simplex_sets.add(tuple(sorted(net.ids[net.index_of_vertex(v)] for v in poly.vertices)))
    simplices = tuple(sorted(simplex_sets, key=lambda s: (len(s), s)))

    check = NetClause("polytope-intersection-criterion")
    for poly in polys:
        check.checked += 1
        pair = polygon_pair(net, poly)
        if any(pair.upper.values[1 << i] < 1 for i in range(len(ids))):
            check.fail({
                "polygon": sorted(list(v) for v in poly.vertices),
                "reason": "face polytope misses the open simplex",
            })
            continue
        for v in poly.vertices:
            vi = net.index_of_vertex(v)
            pi = induced_partition_ids(net, poly, v)
            if sf.split(vertex_pair(net, vi).lower, pi).values != pair.lower.values:
                check.fail({
                    "polygon": sorted(list(x) for x in poly.vertices),
                    "vertex": ids[vi],
                    "reason": "face polytope is not the induced face",
                })

    poly_id_sets = {frozenset(s) for s in simplex_sets}
    for size in range(2, len(ids) + 1):
        for combo in itertools.combinations(range(len(ids)), size):
            s = frozenset(ids[i] for i in combo)
            if s in poly_id_sets:
                continue
            if size > 2 and not all(
                frozenset(sub) in poly_id_sets
                for sub in itertools.combinations(s, size - 1)
            ):
                continue
            check.checked += 1
            if _intersection_meets_interior(net, [ids.index(x) for x in sorted(s)]):
                check.fail({
                    "vertex_set": sorted(s),
                    "reason": "non-polygon set has polytopes meeting the open simplex",
                })
    if not check.passed:
        raise TheoremViolation(
            f"reduction complex cross-check failed: {check.failures[:3]}"
        )
    return SimplicialComplex(ids, simplices, check)


def _intersection_meets_interior(net, vertex_indices):
    """Exact LP: does the intersection of the polytopes meet the open simplex?"""
    n = net.n_vertices
    a_ub = []
    b_ub = []
    for v in vertex_indices:
        for idxs, bound in _vertex_constraints(net, v):
            row = [0] * (n + 1)
            for u in idxs:
                row[u] = 1
            a_ub.append(row)
            b_ub.append(bound)
    for u in range(n):
        row = [0] * (n + 1)
        row[u] = -1
        row[n] = 1
        a_ub.append(row)
        b_ub.append(0)
    a_eq = [[1] * n + [0]]
    b_eq = [net.dim]
    c = [0] * n + [1]
    status, value, _ = exactlp.maximize(c, a_ub, b_ub, a_eq, b_eq)
    return status == exactlp.OPTIMAL and value > 0
