"""Chip-firing on multigraphs: linear systems as quiver vertex sets.

A divisor class is explored through the Laplacian lattice: D ~ D' iff
L x = D - D' has an integer solution, which for a connected graph reduces
to a rational solve plus the observation that the rational kernel is
spanned by the all-ones vector.  Effective representatives get quiver
coordinates from their firing counts relative to the input divisor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import quiver
from .fields import QQ
from .linalg import rref

#: Brute-force subset checks cap the graph size.
MAX_GRAPH_VERTICES = 12
#: Effective enumeration caps the divisor degree.
MAX_DEGREE = 12


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Connected loop-free multigraph; repeated edges carry multiplicity."""

    n_vertices: int
    edges: tuple  # tuple of (i, j) pairs with i != j

    def __post_init__(self):
        if self.n_vertices < 1:
            raise GraphError("need at least one vertex")
        for i, j in self.edges:
            if i == j:
                raise GraphError(f"loop edge at vertex {i}")
            if not (0 <= i < self.n_vertices and 0 <= j < self.n_vertices):
                raise GraphError(f"edge ({i},{j}) out of range")
        if self.n_vertices > MAX_GRAPH_VERTICES:
            raise GraphError(
                f"graphs capped at {MAX_GRAPH_VERTICES} vertices, got {self.n_vertices}"
            )
        if not self._connected():
            raise GraphError("graph must be connected")

    def _connected(self):
        if self.n_vertices == 1:
            return True
        adj = {i: set() for i in range(self.n_vertices)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def laplacian(self):
        n = self.n_vertices
        lap = [[0] * n for _ in range(n)]
        for i, j in self.edges:
            lap[i][i] += 1
            lap[j][j] += 1
            lap[i][j] -= 1
            lap[j][i] -= 1
        return tuple(tuple(row) for row in lap)

    def degree(self, v):
        return sum(1 for i, j in self.edges if v in (i, j))

    def to_json(self):
        return {"vertices": self.n_vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["vertices"]), tuple((int(i), int(j)) for i, j in obj["edges"]))


def fire_set(graph, divisor, subset):
    """Divisor after every vertex of the subset performs a lending move."""
    lap = graph.laplacian()
    out = list(divisor)
    for v in subset:
        for u in range(graph.n_vertices):
            out[u] -= lap[v][u]
    return tuple(out)


def firing_counts(graph, src, dst):
    """Integer x with dst = src - L x, normalized to min 0, or None.

    Existence is decided exactly: the rational solution space of L x =
    src - dst is a line in direction (1, ..., 1), so an integer solution
    exists iff the fractional parts of one rational solution agree.
    """
    n = graph.n_vertices
    diff = [src[i] - dst[i] for i in range(n)]
    if sum(diff) != 0:
        return None
    lap = graph.laplacian()
    aug = [
        tuple(Fraction(x) for x in row) + (Fraction(d),) for row, d in zip(lap, diff)
    ]
    rows, pivots = rref(QQ, aug)
    for row, p in zip(rows, pivots):
        if p == n:
            return None
    x = [Fraction(0)] * n
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    fracs = {xi % 1 for xi in x}
    if len(fracs) != 1:
        return None
    shift = x[0] % 1
    ints = [int(xi - shift) for xi in x]
    return quiver.normalize(tuple(ints))


def equivalent(graph, d1, d2):
    return firing_counts(graph, d1, d2) is not None


@dataclass(frozen=True)
class LinearSystem:
    """Effective divisors equivalent to a base divisor, with quiver tags."""

    graph: Graph
    base: tuple
    divisors: tuple  # effective members, sorted
    coords: tuple  # matching quiver vertices (firing counts from the base)

    def coord_of(self, divisor):
        return self.coords[self.divisors.index(divisor)]

    def divisor_of(self, coord):
        return self.divisors[self.coords.index(coord)]


def linear_system(graph, divisor):
    """All effective divisors equivalent to the given one.

    Enumerates the degree simplex and filters by Laplacian-lattice
    equivalence; exact and exhaustive at the module's desk-scale caps.
    """
    divisor = tuple(int(x) for x in divisor)
    if len(divisor) != graph.n_vertices:
        raise GraphError("divisor length differs from the vertex count")
    deg = sum(divisor)
    if deg < 0:
        return LinearSystem(graph, divisor, (), ())
    if deg > MAX_DEGREE:
        raise GraphError(f"divisor degree capped at {MAX_DEGREE}, got {deg}")
    members = []
    coords = []
    for comp in _compositions(deg, graph.n_vertices):
        x = firing_counts(graph, divisor, comp)
        if x is not None:
            members.append(comp)
            coords.append(x)
    order = sorted(range(len(members)), key=lambda i: members[i])
    return LinearSystem(
        graph,
        divisor,
        tuple(members[i] for i in order),
        tuple(coords[i] for i in order),
    )


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def is_v_reduced(graph, divisor, v):
    """Exact debt test for reducedness toward the vertex v.

    (1) no other vertex is in debt; (2) every nonempty subset avoiding v
    goes into debt when fired together.
    """
    n = graph.n_vertices
    if not 0 <= v < n:
        raise GraphError(f"vertex {v} out of range")
    if any(divisor[u] < 0 for u in range(n) if u != v):
        return False
    others = [u for u in range(n) if u != v]
    for r in range(1, len(others) + 1):
        for subset in itertools.combinations(others, r):
            fired = fire_set(graph, divisor, subset)
            if all(fired[u] >= 0 for u in subset):
                return False
    return True


def reduced_divisor(graph, divisor, v):
    """The unique v-reduced member of the linear system, via brute force."""
    system = linear_system(graph, divisor)
    hits = [d for d in system.divisors if is_v_reduced(graph, d, v)]
    if len(hits) != 1:
        raise GraphError(
            f"expected exactly one {v}-reduced member, found {len(hits)}"
        )
    return hits[0]


def extreme_divisors(system):
    """Per-type extreme vertices of the linear system's quiver set."""
    ext = quiver.extreme_vertices(system.coords)
    return {a: system.divisor_of(coord) for a, coord in ext.items()}
