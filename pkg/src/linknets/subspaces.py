"""Coordinate-decomposed ambient spaces and canonically represented subspaces.

The ambient space is a direct sum of one block per ground-set label.  A
subspace is stored by the unique reduced row-echelon basis of its row
span, so equality of subspaces is equality of representations and every
derived dimension is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg


class AmbientMismatch(ValueError):
    pass


class UnknownLabel(KeyError):
    pass


@dataclass(frozen=True)
class Ambient:
    """Ground set with one block of coordinates per label."""

    labels: tuple
    dims: tuple

    def __post_init__(self):
        if len(self.labels) != len(set(self.labels)):
            raise ValueError("ambient labels must be distinct")
        if len(self.labels) != len(self.dims) or any(d < 1 for d in self.dims):
            raise ValueError("each label needs a block dimension >= 1")

    @property
    def total_dim(self):
        return sum(self.dims)

    def offset(self, label):
        try:
            i = self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None
        return sum(self.dims[:i])

    def columns(self, labels):
        """Sorted column indices of the blocks for the given labels."""
        cols = []
        for lab in labels:
            off = self.offset(lab)
            cols.extend(range(off, off + self.dims[self.labels.index(lab)]))
        return sorted(cols)

    def check_subset(self, labels):
        for lab in labels:
            if lab not in self.labels:
                raise UnknownLabel(lab)


@dataclass(frozen=True)
class Subspace:
    """Row span in an ambient space, held in canonical RREF."""

    field: object
    ambient: Ambient
    rows: tuple
    pivots: tuple

    @property
    def dim(self):
        return len(self.rows)

    def contains_vector(self, vec):
        return linalg.in_row_space(self.field, vec, self.rows, self.pivots)

    def contains(self, other):
        if other.ambient != self.ambient:
            raise AmbientMismatch("subspaces live in different ambients")
        return all(self.contains_vector(r) for r in other.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient.labels, self.rows))


def subspace(field, ambient, rows):
    rows = tuple(tuple(r) for r in rows)
    for r in rows:
        if len(r) != ambient.total_dim:
            raise AmbientMismatch(
                f"row length {len(r)} != ambient dimension {ambient.total_dim}"
            )
    red, piv = linalg.rref(field, rows)
    return Subspace(field, ambient, red, piv)


def zero_subspace(field, ambient):
    return Subspace(field, ambient, (), ())


def full_subspace(field, ambient):
    return subspace(field, ambient, linalg.identity(field, ambient.total_dim))


def rref_subspace(field, ambient, rows):
    """Alias for the canonicalizing constructor; the public `rref` operation."""
    return subspace(field, ambient, rows)


def coordinate_section(w, labels):
    """The part of w supported on the given blocks: w ∩ (blocks of labels).

    The empty label set yields the zero subspace.
    """
    amb = w.ambient
    amb.check_subset(labels)
    outside = [lab for lab in amb.labels if lab not in set(labels)]
    if not outside:
        return w
    if not w.rows:
        return w
    out_cols = amb.columns(outside)
    # Combinations c of basis rows with zero coordinates outside the blocks:
    # kernel of the dim(w) x len(out_cols) matrix of outside coordinates.
    restr = tuple(tuple(row[j] for j in out_cols) for row in w.rows)
    combos = linalg.kernel_basis(w.field, tuple(zip(*restr)), ncols=len(w.rows))
    rows = linalg.matmul(w.field, combos, w.rows)
    return subspace(w.field, amb, rows)


def coordinate_image(w, labels):
    """Projection of w to the given blocks, re-embedded in the ambient."""
    amb = w.ambient
    amb.check_subset(labels)
    keep = set(amb.columns(labels))
    z = w.field.zero
    rows = tuple(
        tuple(x if j in keep else z for j, x in enumerate(row)) for row in w.rows
    )
    return subspace(w.field, amb, rows)


def scale_subspace(phi, w):
    """Apply the blockwise scaling endomorphism phi (label -> scalar) to w."""
    amb = w.ambient
    for lab in amb.labels:
        if lab not in phi:
            raise UnknownLabel(lab)
    col_scalar = []
    for lab, d in zip(amb.labels, amb.dims):
        col_scalar.extend([phi[lab]] * d)
    rows = tuple(
        tuple(w.field.mul(c, x) for c, x in zip(col_scalar, row)) for row in w.rows
    )
    return subspace(w.field, amb, rows)


def sum_subspaces(a, b):
    if a.ambient != b.ambient:
        raise AmbientMismatch("subspaces live in different ambients")
    return subspace(a.field, a.ambient, a.rows + b.rows)
