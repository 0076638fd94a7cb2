"""Finite presentations of exact finitely generated linked nets.

A presentation stores one matrix per ordered pair of generating vertices
(a representative of the homothety class along a minimal admissible
path).  Verification checks the axioms on this finite fragment:
coherence of admissible compositions up to a nonzero scalar, vanishing of
non-admissible ones, trivial kernel meets for type-disjoint departures,
exactness across neighbors, nonvanishing of all stored maps with hull
closure of the vertex set, and the minimality heuristic that no stored
map between distinct vertices is invertible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg, quiver
from . import setfn as sf
from .subspaces import scale_subspace, subspace
from .subspace_polytopes import block_ambient

#: Fragment verification and dense tables cap the generator count.
MAX_NET_VERTICES = 20


class NetError(ValueError):
    pass


class TheoremViolation(AssertionError):
    """A structural conclusion failed; the input is not a genuine exact net."""


FRAGMENT_NOTE = (
    "axioms are verified on the stored generating fragment; behaviour at "
    "vertices outside it is not part of the presentation"
)


@dataclass(frozen=True)
class NetPresentation:
    field: object
    n_types: int  # number of arrow types
    dim: int  # dimension of every vertex space
    vertices: tuple  # normalized quiver vertices, sorted
    ids: tuple  # one string id per vertex, same order
    maps: tuple  # maps[i][j]: matrix of the map vertex i -> vertex j

    def __post_init__(self):
        n = len(self.vertices)
        if n == 0:
            raise NetError("a presentation needs at least one vertex")
        if n > MAX_NET_VERTICES:
            raise NetError(f"generator sets capped at {MAX_NET_VERTICES}, got {n}")
        if len(self.ids) != n or len(set(self.ids)) != n:
            raise NetError("vertex ids must be distinct and match the vertex count")
        if list(self.vertices) != sorted(set(self.vertices)):
            raise NetError("vertices must be sorted, distinct, and normalized")
        for v in self.vertices:
            if len(v) != self.n_types or min(v) != 0:
                raise NetError(f"vertex {v} is not a normalized type vector")
        if len(self.maps) != n or any(len(row) != n for row in self.maps):
            raise NetError("need one matrix per ordered vertex pair")
        for i in range(n):
            for j in range(n):
                m = self.maps[i][j]
                if len(m) != self.dim or any(len(r) != self.dim for r in m):
                    raise NetError(
                        f"map {self.ids[i]} -> {self.ids[j]} is not "
                        f"{self.dim} x {self.dim}"
                    )
        ident = linalg.identity(self.field, self.dim)
        for i in range(n):
            if self.maps[i][i] != ident:
                raise NetError("the map at a vertex to itself must be the identity")

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def full_type_mask(self):
        return (1 << self.n_types) - 1

    def matrix(self, i, j):
        return self.maps[i][j]

    def index_of_id(self, vid):
        try:
            return self.ids.index(vid)
        except ValueError:
            raise NetError(f"unknown vertex id {vid!r}") from None

    def index_of_vertex(self, v):
        try:
            return self.vertices.index(quiver.normalize(v))
        except ValueError:
            raise NetError(f"vertex {v} is not a generator") from None

    def ess_mask(self, i, j):
        m = 0
        for t in quiver.essential_type(self.vertices[i], self.vertices[j]):
            m |= 1 << t
        return m

    def ambient(self):
        return block_ambient(self.ids, self.dim)


def _ess_table(net):
    n = net.n_vertices
    return [[net.ess_mask(i, j) for j in range(n)] for i in range(n)]


@dataclass
class NetClause:
    name: str
    passed: bool = True
    checked: int = 0
    failures: list = dc_field(default_factory=list)
    witnesses: list = dc_field(default_factory=list)

    def fail(self, witness):
        self.passed = False
        if len(self.failures) < 20:
            self.failures.append(witness)

    def to_json(self):
        return {
            "clause": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "witnesses": self.witnesses,
        }


@dataclass
class VerificationReport:
    clauses: dict
    note: str = FRAGMENT_NOTE

    @property
    def passed(self):
        return all(c.passed for c in self.clauses.values())

    def failing_clauses(self):
        return sorted(k for k, c in self.clauses.items() if not c.passed)

    def to_json(self):
        return {
            "passed": self.passed,
            "note": self.note,
            "clauses": {k: c.to_json() for k, c in sorted(self.clauses.items())},
        }


def verify(net):
    """Check every fragment axiom; failures are report entries, not errors."""
    fld = net.field
    n = net.n_vertices
    full = net.full_type_mask
    ess = _ess_table(net)
    ids = net.ids

    coher = NetClause("a-coherence")
    circ = NetClause("b-circuits")
    for i, j, k in itertools.product(range(n), repeat=3):
        if i == j or j == k:
            continue
        prod = linalg.matmul(fld, net.maps[j][k], net.maps[i][j])
        if ess[i][j] | ess[j][k] != full:
            coher.checked += 1
            lam = linalg.scalar_ratio(fld, prod, net.maps[i][k])
            if lam is None or fld.is_zero(lam):
                coher.fail({"path": [ids[i], ids[j], ids[k]], "reason": "composite is not a nonzero multiple of the direct map"})
        else:
            circ.checked += 1
            if not linalg.is_zero_matrix(fld, prod):
                circ.fail({"path": [ids[i], ids[j], ids[k]], "reason": "non-admissible composite does not vanish"})

    linked = NetClause("c-linked")
    for v in range(n):
        for u1, u2 in itertools.combinations(range(n), 2):
            if v in (u1, u2):
                continue
            if ess[v][u1] & ess[v][u2]:
                continue
            linked.checked += 1
            stacked = net.maps[v][u1] + net.maps[v][u2]
            if linalg.rank(fld, stacked) != net.dim:
                linked.fail({"vertex": ids[v], "targets": [ids[u1], ids[u2]], "reason": "kernels meet nontrivially"})

    exact = NetClause("d-exactness")
    for u1, u2 in itertools.combinations(range(n), 2):
        if not quiver.are_neighbors(net.vertices[u1], net.vertices[u2]):
            continue
        for a, b in ((u1, u2), (u2, u1)):
            exact.checked += 1
            image = linalg.column_space(fld, net.maps[a][b])
            kernel = linalg.kernel_basis(fld, net.maps[b][a])
            if image != kernel:
                exact.fail({"from": ids[a], "to": ids[b], "reason": "image differs from the opposing kernel"})

    reduced = NetClause("e-reduced")
    for i, j in itertools.permutations(range(n), 2):
        reduced.checked += 1
        if linalg.is_zero_matrix(fld, net.maps[i][j]):
            reduced.fail({"from": ids[i], "to": ids[j], "reason": "stored map is zero"})
    hull = quiver.hull(net.vertices)
    reduced.checked += 1
    if hull != set(net.vertices):
        reduced.fail({
            "reason": "vertex set is not hull-closed",
            "extra": sorted(list(v) for v in hull - set(net.vertices)),
        })

    minimal = NetClause("f-minimality")
    for v in range(n):
        for w in range(n):
            if w == v:
                continue
            minimal.checked += 1
            if linalg.rank(fld, net.maps[w][v]) == net.dim:
                minimal.fail({"vertex": ids[v], "generated_by": ids[w], "reason": "another generator maps onto it invertibly"})

    return VerificationReport(
        {
            "a": coher,
            "b": circ,
            "c": linked,
            "d": exact,
            "e": reduced,
            "f": minimal,
        }
    )


# ---------------------------------------------------------------------------
# kernel flats and dimension tables


@dataclass(frozen=True)
class Flat:
    rows: tuple  # canonical basis of the intersection subspace
    dim: int
    members: int  # mask over H of the kernels containing it


class VertexFlats:
    """Intersection lattice of the kernels ker(M^v_u), u in H, inside V_v.

    Drives the dense dimension tables and every polytope face/membership
    query for the vertex: only the maximal subset per distinct
    intersection can bind.
    """

    def __init__(self, net, v):
        self.net = net
        self.v = v
        fld = net.field
        d = net.dim
        self.kernels = [
            linalg.kernel_basis(fld, net.maps[v][u], ncols=d)
            for u in range(net.n_vertices)
        ]
        self.lattice = linalg.MeetLattice(fld, self.kernels, d)
        self.flats = [
            Flat(
                self.lattice.flat_rows(i),
                self.lattice.flat_dim(i),
                self.lattice.members_mask(i),
            )
            for i in range(self.lattice.n_flats)
        ]

    def meet_masks(self):
        """Flat index of the kernel meet for every subset mask of H."""
        return self.lattice.meet_table()

    def binding_constraints(self):
        """(mask, dim) per nonzero flat with a nonempty member set.

        Membership of q in the (dilated) polytope needs only
        q(members) <= t * (dim V - dim flat) over these flats.
        """
        out = []
        for flat in self.flats:
            if flat.dim > 0 and flat.members:
                out.append((flat.members, flat.dim))
        return out


def _net_cache(net, name):
    cache = getattr(net, name, None)
    if cache is None:
        cache = {}
        object.__setattr__(net, name, cache)
    return cache


def vertex_flats(net, v):
    cache = _net_cache(net, "_flats")
    if v not in cache:
        cache[v] = VertexFlats(net, v)
    return cache[v]


def vertex_pair(net, v):
    """Dense modular pair of the vertex via the kernel meet tables."""
    flats = vertex_flats(net, v)
    meets = flats.meet_masks()
    n = net.n_vertices
    d = net.dim
    full = (1 << n) - 1
    upper = tuple(d - flats.flats[meets[m]].dim for m in range(full + 1))
    lower = tuple(flats.flats[meets[full ^ m]].dim for m in range(full + 1))
    labels = net.ids
    return sf.ModularPair(sf.SetFn(labels, lower), sf.SetFn(labels, upper))


def vertex_space(net, v):
    """Image of the vertex space inside the blocked ambient over H."""
    fld = net.field
    amb = net.ambient()
    rows = []
    for t in range(net.dim):
        row = []
        for u in range(net.n_vertices):
            col = tuple(net.maps[v][u][r][t] for r in range(net.dim))
            row.extend(col)
        rows.append(tuple(row))
    w = subspace(fld, amb, rows)
    if w.dim != net.dim:
        raise TheoremViolation("vertex space lost dimension; identity block missing")
    return w


# ---------------------------------------------------------------------------
# polygons inside the generator set


def net_polygons(net):
    cache = _net_cache(net, "_polygons")
    if "all" not in cache:
        cache["all"] = quiver.polygons(net.vertices)
    return cache["all"]


def polygon_regions(net, polygon):
    """Member indices of H grouped by their shadow vertex in the polygon."""
    pverts = sorted(polygon.vertices)
    n1 = net.n_types
    regions = {p: [] for p in pverts}
    for i, v in enumerate(net.vertices):
        regions[quiver._shadow_in(v, pverts, n1)].append(i)
    return regions


def polygon_kernel_pieces(net, polygon):
    """Per polygon vertex: (region member mask, canonical basis of the piece).

    The piece at a polygon vertex d is the meet of the kernels toward all
    generators outside d's shadow region.
    """
    fld = net.field
    regions = polygon_regions(net, polygon)
    pieces = {}
    for pv, members in regions.items():
        d = net.index_of_vertex(pv)
        outside = [u for u in range(net.n_vertices) if u not in set(members)]
        rows = linalg.rref(fld, linalg.identity(fld, net.dim))[0]
        for u in outside:
            ker = linalg.kernel_basis(fld, net.maps[d][u], ncols=net.dim)
            rows = linalg.intersect_row_spaces(fld, rows, ker, net.dim)
        pieces[d] = (members, rows)
    return pieces


def polygon_space(net, polygon):
    """Blocked subspace spanned by the polygon's kernel pieces."""
    fld = net.field
    amb = net.ambient()
    pieces = polygon_kernel_pieces(net, polygon)
    rows = []
    for d, (members, basis) in sorted(pieces.items()):
        member_set = set(members)
        for s in basis:
            row = []
            for u in range(net.n_vertices):
                if u in member_set:
                    row.extend(linalg.matvec(fld, net.maps[d][u], s))
                else:
                    row.extend([fld.zero] * net.dim)
            rows.append(tuple(row))
    w = subspace(fld, amb, rows)
    if w.dim != net.dim:
        raise TheoremViolation(
            f"polygon space has dimension {w.dim}, expected {net.dim}"
        )
    return w


def polygon_pair(net, polygon):
    """Dense modular pair of the polygon space, computed blockwise."""
    fld = net.field
    n = net.n_vertices
    d = net.dim
    pieces = polygon_kernel_pieces(net, polygon)
    total = sum(len(basis) for _, basis in pieces.values())
    if total != d:
        raise TheoremViolation(
            f"polygon pieces sum to dimension {total}, expected {d}"
        )
    # upper(I) = sum over pieces of (piece dim - dim of piece meet kernels in I)
    upper = [0] * (1 << n)
    for dv, (members, basis) in pieces.items():
        idxs = list(members)
        local = {0: basis}
        kers = {
            u: linalg.kernel_basis(fld, net.maps[dv][u], ncols=d) for u in idxs
        }
        for sub in range(1, 1 << len(idxs)):
            low = sub & -sub
            u = idxs[low.bit_length() - 1]
            prev = local[sub ^ low]
            local[sub] = linalg.intersect_row_spaces(fld, prev, kers[u], d)
        for mask in range(1 << n):
            sub = 0
            for bit, u in enumerate(idxs):
                if mask >> u & 1:
                    sub |= 1 << bit
            upper[mask] += len(basis) - len(local[sub])
    full = (1 << n) - 1
    lower = tuple(d - upper[full ^ m] for m in range(full + 1))
    labels = net.ids
    return sf.ModularPair(
        sf.SetFn(labels, lower), sf.SetFn(labels, tuple(upper))
    )


def induced_partition_ids(net, polygon, base):
    """Shadow-induced ordered partition of H as an id partition."""
    parts = quiver.induced_partition(polygon, base, net.vertices)
    id_parts = tuple(
        tuple(net.ids[net.index_of_vertex(v)] for v in part) for part in parts
    )
    return sf.OrderedPartition(net.ids, id_parts)


# ---------------------------------------------------------------------------
# faces meeting the open simplex


@dataclass(frozen=True)
class FaceMatch:
    partition: sf.OrderedPartition
    polygon: quiver.Polygon


def _interior_split_ok(net, mu, partition):
    """Exact test: the split face admits a point with positive coordinates."""
    mu_pi = sf.split(mu, partition)
    upper = sf.adjoint(mu_pi)
    return all(upper.values[1 << i] >= 1 for i in range(len(mu.labels)))


def faces_meeting_interior(net, v):
    """Ordered partitions whose face meets the open simplex, with polygons.

    Candidates come from ascending chains in the kernel-flat lattice (a
    filtration set can only stop at the complement of a flat's member
    set); each candidate is then checked exactly on the split tables and
    matched with the polygon built from nested essential-type meets.
    Raises TheoremViolation when the bijection with polygons fails.
    """
    pair = vertex_pair(net, v)
    mu = pair.lower
    flats = vertex_flats(net, v)
    n = net.n_vertices
    full = (1 << n) - 1
    proper = [
        f
        for f in flats.flats
        if f.dim > 0 and f.members not in (0, full)
    ]
    # ascending chains of flats <-> increasing filtrations
    chains = []

    def grow(chain):
        chains.append(list(chain))
        last = chain[-1] if chain else None
        for f in proper:
            if last is None:
                grow_if(chain, f)
            elif f.dim > last.dim and _flat_below(net.field, last, f):
                grow_if(chain, f)

    def grow_if(chain, f):
        chain.append(f)
        grow(chain)
        chain.pop()

    grow([])

    matches = []
    seen_partitions = set()
    ess = _ess_table(net)
    for chain in chains:
        filt = [full ^ f.members for f in chain]
        if any(m == 0 or m == full for m in filt):
            continue
        if filt != sorted(set(filt)):
            continue
        masks = filt + [full]
        prev = 0
        parts = []
        ok = True
        for m in masks:
            part = m & ~prev
            if part == 0:
                ok = False
                break
            parts.append(
                tuple(net.ids[i] for i in range(n) if part >> i & 1)
            )
            prev = m
        if not ok:
            continue
        partition = sf.OrderedPartition(net.ids, tuple(parts))
        if not _interior_split_ok(net, mu, partition):
            continue
        key = partition.parts
        if key in seen_partitions:
            continue
        seen_partitions.add(key)
        polygon = _constructed_polygon(net, v, partition, ess)
        matches.append(FaceMatch(partition, polygon))

    _check_face_bijection(net, v, matches)
    return matches


def _flat_below(fld, small, big):
    piv = linalg.rref(fld, big.rows)[1]
    return all(linalg.in_row_space(fld, r, big.rows, piv) for r in small.rows)


def _constructed_polygon(net, v, partition, ess):
    """Polygon from nested essential-type meets along the filtration."""
    n = net.n_vertices
    full_types = net.full_type_mask
    id_index = {vid: i for i, vid in enumerate(net.ids)}
    filt_masks = []
    acc = 0
    for part in partition.parts[:-1]:
        for vid in part:
            acc |= 1 << id_index[vid]
        filt_masks.append(acc)
    cycle = [net.vertices[v]]
    for fmask in filt_masks:
        tmask = full_types
        for u in range(n):
            if not fmask >> u & 1:
                tmask &= ess[v][u]
        if tmask == 0:
            raise TheoremViolation(
                "interior face with empty essential-type meet at "
                f"{net.ids[v]}; not an exact net"
            )
        types = frozenset(t for t in range(net.n_types) if tmask >> t & 1)
        step = quiver.neighbor_step(net.vertices[v], types)
        w = quiver._shadow_in(step, net.vertices, net.n_types)
        cycle.append(w)
    vertex_set = tuple(sorted(set(cycle)))
    if len(vertex_set) != len(cycle):
        raise TheoremViolation("constructed polygon vertices collide")
    for poly in net_polygons(net):
        if poly.vertices == vertex_set:
            induced = induced_partition_ids(net, poly, net.vertices[v])
            if induced.parts != partition.parts:
                raise TheoremViolation(
                    "constructed polygon induces a different partition"
                )
            return poly
    raise TheoremViolation(
        f"no polygon matches the interior face of {net.ids[v]}"
    )


def _check_face_bijection(net, v, matches):
    expected = {
        poly.vertices
        for poly in net_polygons(net)
        if net.vertices[v] in poly.vertices
    }
    got = {m.polygon.vertices for m in matches}
    if expected != got:
        raise TheoremViolation(
            "faces meeting the open simplex do not biject with polygons "
            f"through {net.ids[v]}: polygons {sorted(expected)} vs faces {sorted(got)}"
        )
    induced = {}
    for m in matches:
        induced[m.partition.parts] = m.polygon.vertices
    if len(induced) != len(matches):
        raise TheoremViolation("two interior faces share a partition")


# ---------------------------------------------------------------------------
# scaled inclusions between vertex spaces


def find_scaling(net, v, u):
    """Blockwise scaling c with c W_v inside W_u, built from compositions.

    c_w is the proportionality factor of (map u->w) (map v->u) against the
    stored map v->w when that composition is admissible, else 0.  The
    support of c is nonzero at u, zero at v, and yields a separation for
    the ordered pair (vertex pair of u, vertex pair of v).
    """
    if v == u:
        raise NetError("scaling wants two distinct vertices")
    fld = net.field
    n = net.n_vertices
    full = net.full_type_mask
    ess = _ess_table(net)
    c = {}
    for w in range(n):
        if ess[v][u] | ess[u][w] != full:
            prod = linalg.matmul(fld, net.maps[u][w], net.maps[v][u])
            lam = linalg.scalar_ratio(fld, prod, net.maps[v][w])
            if lam is None or fld.is_zero(lam):
                raise NetError(
                    "presentation is not coherent along "
                    f"{net.ids[v]} -> {net.ids[u]} -> {net.ids[w]}"
                )
            c[net.ids[w]] = lam
        else:
            c[net.ids[w]] = fld.zero
    if fld.is_zero(c[net.ids[u]]) or not fld.is_zero(c[net.ids[v]]):
        raise TheoremViolation("scaling support misses u or contains v")
    return c


def check_scaling(net, v, u, c):
    """Verify the inclusion and the separation induced by the support of c."""
    fld = net.field
    wv = vertex_space(net, v)
    wu = vertex_space(net, u)
    if not wu.contains(scale_subspace(c, wv)):
        return False, None
    support = tuple(vid for vid in net.ids if not fld.is_zero(c[vid]))
    pair_u = vertex_pair(net, u)
    pair_v = vertex_pair(net, v)
    mask = pair_v.lower.mask_of(support)
    if pair_v.upper.values[mask] > pair_u.lower.values[mask]:
        return False, None
    pi = sf.OrderedPartition(
        net.ids,
        (support, tuple(vid for vid in net.ids if vid not in set(support))),
    )
    return True, pi
