"""Instance generators: diagonal nets from max-plus forms, and twists.

A form is f(u) = max over a slot subset of (u_k + offset_k).  The
diagonal presentation keeps basis vector j along a minimal admissible
path v -> u exactly when f_j is constant along it, i.e. when
f_j(u) - f_j(v) equals min(u - v); forms are nondecreasing along arrows,
so constancy is independent of the step order and multiplicative along
admissible concatenations.  Generator output is always re-verified in
full and rejected loudly otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linalg, quiver
from .fields import QQ
from .nets import MAX_NET_VERTICES, NetPresentation, verify


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class TropicalForm:
    """Offsets per slot; None marks a slot absent from the max."""

    offsets: tuple

    def __post_init__(self):
        if all(o is None for o in self.offsets):
            raise GeneratorError("a form needs at least one active slot")

    @property
    def support(self):
        return tuple(k for k, o in enumerate(self.offsets) if o is not None)

    def value(self, vec):
        return max(vec[k] + o for k, o in enumerate(self.offsets) if o is not None)


@dataclass(frozen=True)
class TropicalSpec:
    n_types: int
    forms: tuple

    def __post_init__(self):
        for f in self.forms:
            if len(f.offsets) != self.n_types:
                raise GeneratorError("form length differs from the arrow-type count")
        covered = set()
        for f in self.forms:
            covered.update(f.support)
        if covered != set(range(self.n_types)):
            raise GeneratorError("every slot must appear in some form")
        if not any(len(f.support) == self.n_types for f in self.forms):
            raise GeneratorError("need at least one full-support form")

    @property
    def dim(self):
        return len(self.forms)

    def to_json(self):
        return {
            "arrow_types": self.n_types,
            "forms": [{"offsets": list(f.offsets)} for f in self.forms],
        }

    @classmethod
    def from_json(cls, obj):
        forms = tuple(
            TropicalForm(tuple(None if o is None else int(o) for o in f["offsets"]))
            for f in obj["forms"]
        )
        return cls(int(obj["arrow_types"]), forms)


def form_constant_along(form, src, dst):
    """Whether the form is constant along a minimal admissible path src -> dst."""
    shift = min(d - s for d, s in zip(dst, src))
    return form.value(dst) - form.value(src) == shift


def _candidate_box(spec):
    """Normalized vertices within the pairwise offset ranges of the forms.

    For each ordered slot pair the difference v_k - v_i is confined to the
    interval spanned by offset_i - offset_k over forms containing both
    slots; the full-support form makes every interval finite.
    """
    n1 = spec.n_types
    lo = {}
    hi = {}
    for f in spec.forms:
        sup = f.support
        for k, i in itertools.permutations(sup, 2):
            d = f.offsets[i] - f.offsets[k]
            key = (k, i)
            lo[key] = d if key not in lo else min(lo[key], d)
            hi[key] = d if key not in hi else max(hi[key], d)
    spread = max(hi.values(), default=0)
    out = []
    for cand in itertools.product(range(spread + 1), repeat=n1):
        if min(cand) != 0:
            continue
        if all(
            lo[key] <= cand[key[0]] - cand[key[1]] <= hi[key] for key in lo
        ):
            out.append(tuple(cand))
    return sorted(out)


def _diagonal_matrix(field, bits):
    z, o = field.zero, field.one
    return tuple(
        tuple((o if bits[i] else z) if i == j else z for j in range(len(bits)))
        for i in range(len(bits))
    )


def generate_monomial(spec, field=QQ, max_vertices=MAX_NET_VERTICES):
    """Diagonal presentation of the forms on their minimal generator set.

    Scans the offset box, drops every vertex another box vertex maps onto
    invertibly, and verifies the axioms on the survivors.
    """
    box = _candidate_box(spec)
    if not box:
        raise GeneratorError("the offset box contains no vertices")
    dim = spec.dim

    def constancy(src, dst):
        return tuple(form_constant_along(f, src, dst) for f in spec.forms)

    generated = set()
    for w, v in itertools.permutations(box, 2):
        if all(constancy(w, v)):
            generated.add(v)
    vertices = tuple(sorted(v for v in box if v not in generated))
    if not vertices:
        raise GeneratorError("minimality scan emptied the box")
    if len(vertices) > max_vertices:
        raise GeneratorError(
            f"generator set has {len(vertices)} vertices, cap is {max_vertices}"
        )
    n = len(vertices)
    ident = linalg.identity(field, dim)
    maps = tuple(
        tuple(
            ident if i == j else _diagonal_matrix(field, constancy(vertices[i], vertices[j]))
            for j in range(n)
        )
        for i in range(n)
    )
    ids = tuple(",".join(str(x) for x in v) for v in vertices)
    net = NetPresentation(field, spec.n_types, dim, vertices, ids, maps)
    report = verify(net)
    if not report.passed:
        raise GeneratorError(
            "generated presentation fails verification on clauses "
            f"{report.failing_clauses()}"
        )
    return net


def twist(net, seed, scalar_pool=range(1, 8)):
    """Conjugate by random invertible matrices and rescale every map.

    Seed-reproducible; preserves every verification clause and all
    dimension data, but destroys the diagonal texture.
    """
    rng = random.Random(seed)
    fld = net.field
    d = net.dim
    n = net.n_vertices

    def random_invertible():
        while True:
            m = tuple(
                tuple(fld.from_int(rng.randint(-3, 3)) for _ in range(d))
                for _ in range(d)
            )
            if linalg.rank(fld, m) == d:
                return m

    basis = [random_invertible() for _ in range(n)]
    inv = [_matrix_inverse(fld, m) for m in basis]
    maps = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(linalg.identity(fld, d))
                continue
            lam = fld.from_int(rng.choice(list(scalar_pool)))
            m = linalg.matmul(fld, basis[j], linalg.matmul(fld, net.maps[i][j], inv[i]))
            row.append(linalg.scale_matrix(fld, lam, m))
        maps.append(tuple(row))
    out = NetPresentation(
        fld, net.n_types, net.dim, net.vertices, net.ids, tuple(maps)
    )
    report = verify(out)
    if not report.passed:
        raise GeneratorError(
            f"twist broke verification: {report.failing_clauses()}"
        )
    return out


def _matrix_inverse(field, m):
    d = len(m)
    aug = [tuple(m[i]) + tuple(linalg.identity(field, d)[i]) for i in range(d)]
    rows, pivots = linalg.rref(field, aug)
    if tuple(pivots) != tuple(range(d)):
        raise GeneratorError("matrix is singular")
    return tuple(row[d:] for row in rows)


def random_spec(rng, n_types, dim, offset_bound=3):
    """Random full-support forms with small offsets."""
    while True:
        forms = []
        seen = set()
        for _ in range(dim):
            offs = tuple(rng.randint(0, offset_bound) for _ in range(n_types))
            forms.append(TropicalForm(offs))
            seen.add(offs)
        if dim == 1 or len(seen) > 1:
            return TropicalSpec(n_types, tuple(forms))


def random_net(
    seed,
    n_types=None,
    dim=None,
    field=QQ,
    max_vertices=12,
    min_vertices=1,
    max_attempts=400,
):
    """Seeded verified instance via rejection sampling over random forms.

    Returns (net, spec, attempts).  Ranges default to the desk-scale
    corpus: 2..4 arrow types, dimension 1..5.
    """
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        nt = n_types if n_types is not None else rng.randint(2, 4)
        dm = dim if dim is not None else rng.randint(1, 5)
        bound = rng.randint(1, 4)
        spec = random_spec(rng, nt, dm, offset_bound=bound)
        try:
            net = generate_monomial(spec, field=field, max_vertices=max_vertices)
        except GeneratorError:
            continue
        if len(net.vertices) < min_vertices:
            continue
        return net, spec, attempt
    raise GeneratorError(
        f"no verified instance after {max_attempts} attempts (seed {seed})"
    )
