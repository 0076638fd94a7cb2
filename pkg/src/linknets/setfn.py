"""Supermodular set functions, adjoints, splittings, and base polytopes.

Functions are integer-valued and stored densely, indexed by subset
bitmask in ground-set order.  Everything downstream (codimension,
separations, polytope queries) reduces to exact integer comparisons on
these tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

#: Dense tables cap the ground set size.
MAX_GROUND_SET = 20
#: Vertex enumeration is factorial in the ground set size.
MAX_VERTEX_ENUM = 8


class GroundSetError(ValueError):
    pass


@dataclass(frozen=True)
class SetFn:
    """Integer-valued function on subsets of a finite ground set."""

    labels: tuple
    values: tuple

    def __post_init__(self):
        h = len(self.labels)
        if h > MAX_GROUND_SET:
            raise GroundSetError(f"ground set size {h} exceeds cap {MAX_GROUND_SET}")
        if len(set(self.labels)) != h:
            raise GroundSetError("ground-set labels must be distinct")
        if len(self.values) != 1 << h:
            raise GroundSetError(
                f"need {1 << h} values for {h} labels, got {len(self.values)}"
            )
        if self.values[0] != 0:
            raise GroundSetError("value at the empty set must be 0")

    @property
    def h(self):
        return len(self.labels)

    @property
    def full_mask(self):
        return (1 << self.h) - 1

    @property
    def range(self):
        return self.values[self.full_mask]

    def mask_of(self, labels):
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.labels.index(lab)
            except ValueError:
                raise GroundSetError(f"unknown label {lab!r}") from None
        return m

    def labels_of(self, mask):
        return tuple(lab for i, lab in enumerate(self.labels) if mask >> i & 1)

    def value(self, subset):
        mask = subset if isinstance(subset, int) else self.mask_of(subset)
        return self.values[mask]

    def to_json(self):
        return {"ground_set": list(self.labels), "values": list(self.values)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["ground_set"]), tuple(int(v) for v in obj["values"]))


@dataclass(frozen=True)
class OrderedPartition:
    """Ordered partition of a ground set, with its filtration."""

    labels: tuple
    parts: tuple  # tuple of tuples of labels

    def __post_init__(self):
        seen = []
        for part in self.parts:
            seen.extend(part)
        if sorted(seen) != sorted(self.labels):
            raise GroundSetError("parts must partition the ground set")

    @property
    def nontrivial(self):
        return all(self.parts)

    @property
    def size(self):
        return len(self.parts)

    def part_masks(self):
        idx = {lab: i for i, lab in enumerate(self.labels)}
        masks = []
        for part in self.parts:
            m = 0
            for lab in part:
                m |= 1 << idx[lab]
            masks.append(m)
        return tuple(masks)

    def filtration_masks(self):
        masks = [0]
        for m in self.part_masks():
            masks.append(masks[-1] | m)
        return tuple(masks)

    def complement(self):
        if len(self.parts) != 2:
            raise GroundSetError("complement is defined for bipartitions")
        return OrderedPartition(self.labels, (self.parts[1], self.parts[0]))


@dataclass(frozen=True)
class ModularPair:
    """A supermodular function together with its submodular adjoint."""

    lower: SetFn
    upper: SetFn

    def __post_init__(self):
        if self.lower.labels != self.upper.labels:
            raise GroundSetError("pair members must share a ground set")

    @property
    def labels(self):
        return self.lower.labels

    @property
    def range(self):
        return self.lower.range

    @classmethod
    def from_lower(cls, mu):
        return cls(mu, adjoint(mu))


def is_supermodular(f):
    """Local-exchange check, equivalent to the all-pairs definition."""
    if f.values[0] != 0:
        return False
    h = f.h
    vals = f.values
    for mask in range(1 << h):
        outside = [i for i in range(h) if not mask >> i & 1]
        for a, b in itertools.combinations(outside, 2):
            if vals[mask | 1 << a] + vals[mask | 1 << b] > vals[mask | 1 << a | 1 << b] + vals[mask]:
                return False
    return True


def is_supermodular_bruteforce(f):
    """All-pairs definition; oracle for the local-exchange implementation."""
    vals = f.values
    n = len(vals)
    return f.values[0] == 0 and all(
        vals[i] + vals[j] <= vals[i | j] + vals[i & j]
        for i in range(n)
        for j in range(n)
    )


def adjoint(mu):
    full = mu.full_mask
    vals = tuple(mu.range - mu.values[full ^ m] for m in range(full + 1))
    return SetFn(mu.labels, vals)


def restrict_contract(mu, j1, j2):
    """Restrict to j2 and contract j1 (label sets or masks), j1 ⊆ j2."""
    m1 = j1 if isinstance(j1, int) else mu.mask_of(j1)
    m2 = j2 if isinstance(j2, int) else mu.mask_of(j2)
    if m1 & ~m2:
        raise GroundSetError("contraction set must lie inside the restriction set")
    base = mu.values[m1]
    vals = tuple(mu.values[(m & m2) | m1] - base for m in range(mu.full_mask + 1))
    return SetFn(mu.labels, vals)


def split(mu, partition):
    """Splitting of mu along an ordered partition (sum over filtration steps)."""
    if tuple(sorted(partition.labels)) != tuple(sorted(mu.labels)):
        raise GroundSetError("partition ground set differs from the function's")
    filt = _filtration_in(mu, partition)
    total = [0] * (mu.full_mask + 1)
    for prev, cur in zip(filt, filt[1:]):
        piece = restrict_contract(mu, prev, cur)
        for m, v in enumerate(piece.values):
            total[m] += v
    return SetFn(mu.labels, tuple(total))


def _filtration_in(mu, partition):
    idx = {lab: i for i, lab in enumerate(mu.labels)}
    masks = [0]
    for part in partition.parts:
        m = masks[-1]
        for lab in part:
            if lab not in idx:
                raise GroundSetError(f"unknown label {lab!r}")
            m |= 1 << idx[lab]
        masks.append(m)
    return masks


def separators(mu):
    """Masks S with mu(S) + mu(S^c) = mu(H); always includes 0 and H."""
    full = mu.full_mask
    rng = mu.range
    return [m for m in range(full + 1) if mu.values[m] + mu.values[full ^ m] == rng]


def codimension(mu):
    """Largest s such that mu splits along some s-partition.

    Computed as the number of atoms of the partition generated by the
    separators; validated against brute force over ordered partitions in
    the tests.
    """
    if not is_supermodular(mu):
        raise GroundSetError("codimension needs a supermodular function")
    h = mu.h
    classes = [list(range(h))]
    for s in separators(mu):
        if s == 0 or s == mu.full_mask:
            continue
        refined = []
        for cls in classes:
            inside = [i for i in cls if s >> i & 1]
            outside = [i for i in cls if not s >> i & 1]
            refined.extend(c for c in (inside, outside) if c)
        classes = refined
        if len(classes) == h:
            break
    return len(classes)


def is_simple(mu):
    return codimension(mu) == 1


def codimension_bruteforce(mu):
    """Largest s with mu == split(mu, pi) over all ordered s-partitions."""
    best = 1
    for parts in _ordered_set_partitions(mu.labels):
        if len(parts) <= best:
            continue
        pi = OrderedPartition(mu.labels, tuple(tuple(p) for p in parts))
        if split(mu, pi).values == mu.values:
            best = len(parts)
    return best


def _ordered_set_partitions(labels):
    labels = list(labels)
    if not labels:
        yield []
        return
    first, rest = labels[0], labels[1:]
    for parts in _ordered_set_partitions(rest):
        for i, part in enumerate(parts):
            yield parts[:i] + [[first] + part] + parts[i + 1 :]
        for i in range(len(parts) + 1):
            yield parts[:i] + [[first]] + parts[i:]


@dataclass(frozen=True)
class Separation:
    partition: OrderedPartition
    strict: bool
    nontrivial: bool


def separations(mu, nu, nontrivial_only=False):
    """All bipartitions (I, J) with mu(I) + nu(J) >= common range."""
    if mu.labels != nu.labels:
        raise GroundSetError("separation needs a common ground set")
    if mu.range != nu.range:
        raise GroundSetError(
            f"separation needs equal ranges, got {mu.range} and {nu.range}"
        )
    n = mu.range
    full = mu.full_mask
    found = []
    for m in range(1, full):
        total = mu.values[m] + nu.values[full ^ m]
        if total < n:
            continue
        pi = OrderedPartition(mu.labels, (mu.labels_of(m), mu.labels_of(full ^ m)))
        strict = total > n
        nontrivial = strict
        if not nontrivial:
            nontrivial = (
                split(mu, pi).values != mu.values or split(nu, pi).values != nu.values
            )
        if nontrivial_only and not nontrivial:
            continue
        found.append(Separation(pi, strict, nontrivial))
    return found


def separation(mu, nu, nontrivial_only=False):
    """A separation for the ordered pair (mu, nu), or None.

    Prefers a nontrivial one when any exists.
    """
    all_found = separations(mu, nu)
    for sep in all_found:
        if sep.nontrivial:
            return sep
    if nontrivial_only or not all_found:
        return None
    return all_found[0]


def _point_vector(pair, q):
    if isinstance(q, dict):
        missing = [lab for lab in pair.labels if lab not in q]
        if missing:
            raise GroundSetError(f"point misses labels {missing}")
        return [Fraction(q[lab]) for lab in pair.labels]
    vec = [Fraction(x) for x in q]
    if len(vec) != len(pair.labels):
        raise GroundSetError("point length differs from ground set size")
    return vec


def _subset_sums(vec):
    sums = [Fraction(0)] * (1 << len(vec))
    for m in range(1, len(sums)):
        low = m & -m
        sums[m] = sums[m ^ low] + vec[low.bit_length() - 1]
    return sums


def polytope_membership(pair, q):
    """Whether q satisfies mu(I) <= q(I) <= mu*(I) for every subset I."""
    vec = _point_vector(pair, q)
    sums = _subset_sums(vec)
    lo, hi = pair.lower.values, pair.upper.values
    return all(lo[m] <= sums[m] <= hi[m] for m in range(len(sums)))


def polytope_vertices(pair):
    """Vertex set of the base polytope via the greedy walk over all chains."""
    h = len(pair.labels)
    if h > MAX_VERTEX_ENUM:
        raise GroundSetError(
            f"vertex enumeration capped at {MAX_VERTEX_ENUM} labels, got {h}"
        )
    mu = pair.lower.values
    verts = set()
    for perm in itertools.permutations(range(h)):
        q = [0] * h
        mask = 0
        prev = 0
        for i in perm:
            mask |= 1 << i
            q[i] = mu[mask] - prev
            prev = mu[mask]
        verts.add(tuple(q))
    verts = sorted(verts)
    for v in verts:
        assert polytope_membership(pair, v), "greedy vertex escaped the polytope"
    return verts


def lattice_points(pair, dilation):
    """Integer points of the dilation-scaled base polytope."""
    if dilation < 1:
        raise GroundSetError("dilation must be a positive integer")
    h = len(pair.labels)
    lo = [v * dilation for v in pair.lower.values]
    hi = [v * dilation for v in pair.upper.values]
    total = pair.range * dilation
    full = (1 << h) - 1
    points = []

    def extend(i, acc, mask_prefix, remaining):
        if i == h:
            points.append(tuple(acc))
            return
        prefix = mask_prefix
        # box bounds from the singleton and tail constraints (pruning only;
        # the leaf still runs the full membership check)
        rest = full ^ (prefix | (1 << i))
        lo_i = max(lo[1 << i], remaining - hi[rest])
        hi_i = min(hi[1 << i], remaining - lo[rest])
        for val in range(lo_i, hi_i + 1):
            acc.append(val)
            extend(i + 1, acc, prefix | 1 << i, remaining - val)
            acc.pop()

    extend(0, [], 0, total)
    result = []
    for p in points:
        sums = _subset_sums([Fraction(x) for x in p])
        if all(lo[m] <= sums[m] <= hi[m] for m in range(1 << h)):
            result.append(p)
    return sorted(result)
