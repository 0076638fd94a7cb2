"""Vertex arithmetic on quivers with one arrow of each type per vertex.

Vertices are integer vectors of length n+1 normalized to minimum entry 0;
two raw vectors differing by a constant name the same vertex.  All path
reasoning reduces to displacement arithmetic: the essential type of a
minimal path u -> v is the support of the normalized displacement, and a
path avoiding type a exists exactly when the minimum of v - u is attained
at slot a.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class QuiverError(ValueError):
    pass


def normalize(vec):
    """Canonical representative: shift so the minimum entry is 0."""
    m = min(vec)
    return tuple(x - m for x in vec)


def essential_type(u, v):
    """Arrow types used by every minimal admissible path u -> v."""
    if len(u) != len(v):
        raise QuiverError("vertices have different arrow-type counts")
    delta = [a - b for a, b in zip(v, u)]
    m = min(delta)
    return frozenset(i for i, d in enumerate(delta) if d > m)


def displacement(u, v):
    """Nonnegative per-type arrow counts of a minimal path u -> v."""
    delta = [a - b for a, b in zip(v, u)]
    m = min(delta)
    return tuple(d - m for d in delta)


def neighbor_step(v, types):
    """One simple step: add one arrow of each type in a proper nonempty set."""
    if not types or len(types) >= len(v):
        raise QuiverError("step type set must be nonempty and proper")
    return normalize(tuple(x + (1 if i in types else 0) for i, x in enumerate(v)))


def are_neighbors(u, v):
    d = displacement(u, v)
    return u != v and all(x in (0, 1) for x in d)


def concat_admissible(ess1, ess2, n_types):
    """Whether paths with these essential types concatenate admissibly."""
    return len(ess1 | ess2) < n_types


def hull(vertices):
    """All vertices reachable from the set avoiding each given arrow type.

    A vertex w belongs to the hull iff for every type a some member z
    reaches w by a path avoiding a, i.e. min(w - z) is attained at slot a.
    Normalized hull members satisfy max(w) <= max over members of max(z),
    so the scan box below is exhaustive.
    """
    verts = {normalize(v) for v in vertices}
    if not verts:
        raise QuiverError("hull of an empty set")
    n1 = len(next(iter(verts)))
    if any(len(v) != n1 for v in verts):
        raise QuiverError("mixed arrow-type counts")
    bound = max(max(v) for v in verts)
    types = range(n1)
    out = set()
    for cand in itertools.product(range(bound + 1), repeat=n1):
        if min(cand) != 0:
            continue
        ok = True
        for a in types:
            if not any(_avoids(z, cand, a) for z in verts):
                ok = False
                break
        if ok:
            out.add(cand)
    return out


def _avoids(z, w, a):
    """Whether some path z -> w avoids type a (min displacement at slot a)."""
    delta = [x - y for x, y in zip(w, z)]
    return delta[a] == min(delta)


def is_convex(vertices):
    verts = {normalize(v) for v in vertices}
    return hull(verts) == verts


def _shadow_in(u, verts, n1):
    hits = []
    for w in verts:
        ess_wu = essential_type(w, u)
        if all(
            concat_admissible(essential_type(z, w), ess_wu, n1) for z in verts
        ):
            hits.append(w)
    if len(hits) != 1:
        raise QuiverError(f"shadow not unique: {hits}")
    return hits[0]


def shadow(u, vertices):
    """The unique member through which every member reaches u admissibly.

    Requires the vertex set to equal its hull.
    """
    verts = sorted({normalize(v) for v in vertices})
    if not is_convex(verts):
        raise QuiverError("shadow requires a hull-closed vertex set")
    return _shadow_in(normalize(u), verts, len(verts[0]))


def extreme_vertices(vertices):
    """The per-type extreme members of a hull-closed vertex set.

    For each type a, the unique u with no other member reachable from u
    avoiding a; found by the strictly decreasing cone-count walk, then
    checked for uniqueness and for path avoidance from every member.
    """
    verts = sorted({normalize(v) for v in vertices})
    if not verts:
        raise QuiverError("empty vertex set")
    if not is_convex(verts):
        raise QuiverError("extreme vertices require a hull-closed vertex set")
    n1 = len(verts[0])
    out = {}
    for a in range(n1):
        def cone(v):
            return [w for w in verts if w != v and a not in essential_type(v, w)]

        cur = verts[0]
        reachable = cone(cur)
        while reachable:
            nxt = reachable[0]
            nxt_reach = cone(nxt)
            if len(nxt_reach) >= len(reachable):
                raise QuiverError("cone counts failed to decrease; set not convex?")
            cur, reachable = nxt, nxt_reach
        candidates = [v for v in verts if not cone(v)]
        if candidates != [cur]:
            raise QuiverError(
                f"extreme vertex for type {a} not unique: {candidates}"
            )
        for u in verts:
            if a in essential_type(u, cur):
                raise QuiverError(
                    f"member {u} cannot avoid type {a} toward the extreme vertex"
                )
        out[a] = cur
    return out


@dataclass(frozen=True)
class Polygon:
    """Pairwise-neighboring vertices with one orientation per base vertex."""

    vertices: tuple  # sorted tuple of normalized vertices
    orientations: tuple  # tuple of (base, cycle tuple) pairs

    @property
    def size(self):
        return len(self.vertices)

    def orientation(self, base):
        for b, cyc in self.orientations:
            if b == base:
                return cyc
        raise QuiverError(f"{base} is not a vertex of the polygon")


def polygons(vertices):
    """All polygons inside a vertex set, with per-base orientations.

    Walks every ordered set-partition of the arrow types from every base;
    a walk that stays inside the set traces an oriented polygon.
    """
    verts = sorted({normalize(v) for v in vertices})
    if not verts:
        return []
    n1 = len(verts[0])
    vset = set(verts)
    found = {}
    for base in verts:
        for parts in _ordered_type_partitions(n1):
            cycle = [base]
            ok = True
            for step in parts[:-1]:
                nxt = neighbor_step(cycle[-1], step)
                if nxt not in vset or nxt in cycle:
                    ok = False
                    break
                cycle.append(nxt)
            if not ok:
                continue
            key = tuple(sorted(cycle))
            orient = found.setdefault(key, {})
            if base in orient and orient[base] != tuple(cycle):
                raise QuiverError(
                    f"two distinct orientations at base {base}: "
                    f"{orient[base]} vs {tuple(cycle)}"
                )
            orient[base] = tuple(cycle)
    out = []
    for key in sorted(found):
        orient = found[key]
        if sorted(orient) != list(key):
            # A genuine polygon carries one orientation per base vertex.
            raise QuiverError(f"missing orientations for polygon {key}")
        out.append(Polygon(key, tuple(sorted(orient.items()))))
    return out


def _ordered_type_partitions(n_types):
    """Ordered set-partitions of range(n_types) into nonempty parts."""
    results = []

    def rec(remaining, acc):
        if not remaining:
            results.append(list(acc))
            return
        for r in range(1, len(remaining) + 1):
            for combo in itertools.combinations(remaining, r):
                chosen = set(combo)
                acc.append(frozenset(combo))
                rec(tuple(t for t in remaining if t not in chosen), acc)
                acc.pop()

    rec(tuple(range(n_types)), [])
    return results


def induced_partition(polygon, base, vertices):
    """Shadow-region partition of a vertex set, ordered from the base.

    Part i collects the members whose shadow in the polygon is the i-th
    vertex of the base's orientation.
    """
    if base not in polygon.vertices:
        raise QuiverError("base must be a polygon vertex")
    cycle = polygon.orientation(base)
    verts = sorted({normalize(v) for v in vertices})
    n1 = len(cycle[0])
    pverts = sorted(polygon.vertices)
    parts = {c: [] for c in cycle}
    for v in verts:
        parts[_shadow_in(v, pverts, n1)].append(v)
    return tuple(tuple(parts[c]) for c in cycle)
