"""Generic exact dense linear algebra over a field object.

Matrices are tuples of row tuples of raw scalars.  Maps act on column
vectors (``matvec(M, s)`` is ``M s``), while subspaces elsewhere are row
spans; ``rref`` is the canonical reduced row-echelon form with pivots 1,
which makes row spans directly comparable by tuple equality.
"""

from __future__ import annotations


def mat(rows):
    return tuple(tuple(r) for r in rows)


def identity(field, n):
    z, o = field.zero, field.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def zero_matrix(field, m, n):
    z = field.zero
    return tuple((z,) * n for _ in range(m))


def is_zero_matrix(field, m):
    return all(field.is_zero(x) for row in m for x in row)


def matmul(field, a, b):
    if not a or not b:
        return ()
    n = len(b)
    cols = len(b[0])
    out = []
    for row in a:
        acc = [field.zero] * cols
        for k in range(n):
            x = row[k]
            if field.is_zero(x):
                continue
            brow = b[k]
            for j in range(cols):
                acc[j] = field.add(acc[j], field.mul(x, brow[j]))
        out.append(tuple(acc))
    return tuple(out)


def matvec(field, m, v):
    out = []
    for row in m:
        acc = field.zero
        for x, y in zip(row, v):
            if not field.is_zero(x):
                acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return tuple(out)


def rref(field, rows):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where rows are nonzero, have leading
    coefficient 1 at strictly increasing pivot columns, and pivot columns
    are zero elsewhere.  The output is the unique canonical basis of the
    row span.
    """
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots = []
    prow = 0
    for col in range(ncols):
        pr = None
        for r in range(prow, len(work)):
            if not field.is_zero(work[r][col]):
                pr = r
                break
        if pr is None:
            continue
        work[prow], work[pr] = work[pr], work[prow]
        inv = field.inv(work[prow][col])
        work[prow] = [field.mul(inv, x) for x in work[prow]]
        for r in range(len(work)):
            if r != prow and not field.is_zero(work[r][col]):
                c = work[r][col]
                work[r] = [
                    field.sub(x, field.mul(c, y)) for x, y in zip(work[r], work[prow])
                ]
        pivots.append(col)
        prow += 1
        if prow == len(work):
            break
    return tuple(tuple(work[i]) for i in range(prow)), tuple(pivots)


def rank(field, m):
    return len(rref(field, m)[0])


def kernel_basis(field, m, ncols=None):
    """Basis (as row tuples) of {x : m x = 0} for the column-vector action."""
    if ncols is None:
        if not m:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(m[0])
    rows, pivots = rref(field, m)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    z, o = field.zero, field.one
    for j in free:
        vec = [z] * ncols
        vec[j] = o
        for i, p in enumerate(pivots):
            vec[p] = field.neg(rows[i][j])
        basis.append(tuple(vec))
    return rref(field, basis)[0]


def row_space(field, m):
    return rref(field, m)[0]


def column_space(field, m):
    return rref(field, [tuple(col) for col in zip(*m)])[0] if m else ()


def in_row_space(field, vec, rref_rows, pivots):
    """Whether vec lies in the span of canonical rref rows."""
    v = list(vec)
    for row, p in zip(rref_rows, pivots):
        c = v[p]
        if not field.is_zero(c):
            v = [field.sub(x, field.mul(c, y)) for x, y in zip(v, row)]
    return all(field.is_zero(x) for x in v)


def intersect_row_spaces(field, a, b, ncols):
    """Canonical basis of rowspace(a) ∩ rowspace(b) in k^ncols.

    Uses double orthogonal complements, valid over any field since the
    standard bilinear form is nondegenerate.
    """
    ca = kernel_basis(field, a, ncols) if a else identity(field, ncols)
    cb = kernel_basis(field, b, ncols) if b else identity(field, ncols)
    return kernel_basis(field, ca + cb, ncols) if (ca or cb) else identity(field, ncols)


def solve(field, a, b):
    """One solution x of a x = b (column convention), or None."""
    if not a:
        return None
    ncols = len(a[0])
    aug = [tuple(row) + (bi,) for row, bi in zip(a, b)]
    rows, pivots = rref(field, aug)
    for row, p in zip(rows, pivots):
        if p == ncols:
            return None
    x = [field.zero] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return tuple(x)


def scalar_ratio(field, a, b):
    """The scalar c with a == c * b entrywise, or None if no such c.

    ``b`` must be nonzero; a zero ``a`` yields c = 0.
    """
    c = None
    for ra, rb in zip(a, b):
        for xa, xb in zip(ra, rb):
            if field.is_zero(xb):
                if not field.is_zero(xa):
                    return None
                continue
            r = field.div(xa, xb)
            if c is None:
                c = r
            elif not field.eq(c, r):
                return None
    return field.zero if c is None else c


def scale_matrix(field, c, m):
    return tuple(tuple(field.mul(c, x) for x in row) for row in m)


class MeetLattice:
    """Meet-closure of a list of subspaces of k^dim given by row bases.

    Supports the dense subset table "dimension of the meet over an index
    set" via a lowest-bit dynamic program that only ever touches the few
    distinct intersection subspaces (the flats).
    """

    def __init__(self, field, kernels, dim):
        self.field = field
        self.dim = dim
        self.kernels = [rref(field, k) for k in kernels]  # (rows, pivots) pairs
        self._kernel_comp = [
            kernel_basis(field, k, dim) if k else identity(field, dim)
            for k, _ in self.kernels
        ]
        full = rref(field, identity(field, dim))[0]
        self._index = {full: 0}
        self._rows = [full]
        self._comps = [()]  # orthogonal complement rows per flat
        self._memo = {}
        self._table = None

    def _register(self, rows):
        idx = self._index.get(rows)
        if idx is None:
            idx = len(self._rows)
            self._index[rows] = idx
            self._rows.append(rows)
            self._comps.append(
                kernel_basis(self.field, rows, self.dim) if rows else None
            )
        return idx

    def _step(self, base, u):
        key = (base, u)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not self._rows[base]:
            hit = base  # the zero flat absorbs
        else:
            comp = self._comps[base] if base else ()
            stacked = tuple(comp) + tuple(self._kernel_comp[u])
            rows = kernel_basis(self.field, stacked, self.dim)
            hit = self._register(rows)
        self._memo[key] = hit
        return hit

    @property
    def n_flats(self):
        self.meet_table()
        return len(self._rows)

    def flat_rows(self, idx):
        return self._rows[idx]

    def flat_dim(self, idx):
        return len(self._rows[idx])

    def members_mask(self, idx):
        """Mask of the kernels containing the flat."""
        rows = self._rows[idx]
        mask = 0
        for u, (ker, piv) in enumerate(self.kernels):
            if all(in_row_space(self.field, r, ker, piv) for r in rows):
                mask |= 1 << u
        return mask

    def meet_table(self):
        """Flat index of the meet for every subset mask of the kernel list.

        Visiting every mask also materializes every flat of the lattice.
        """
        if self._table is None:
            n = len(self.kernels)
            out = [0] * (1 << n)
            for mask in range(1, 1 << n):
                low = mask & -mask
                out[mask] = self._step(out[mask ^ low], low.bit_length() - 1)
            self._table = out
        return self._table

    def binding_flats(self):
        """(members mask, dim) per nonzero flat with a nonempty member set."""
        self.meet_table()
        out = []
        for idx in range(len(self._rows)):
            d = self.flat_dim(idx)
            if d == 0:
                continue
            members = self.members_mask(idx)
            if members:
                out.append((members, d))
        return out
