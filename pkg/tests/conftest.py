import random

import pytest

from linknets.fields import QQ, PrimeField
from linknets.generators import TropicalForm, TropicalSpec, generate_monomial
from linknets.subspace_polytopes import block_ambient
from linknets.subspaces import Ambient, subspace

PRIME = 1000003


@pytest.fixture(scope="session")
def fp():
    return PrimeField(PRIME)


@pytest.fixture(scope="session")
def eh3_spec():
    return TropicalSpec(2, (TropicalForm((0, 0)), TropicalForm((0, 2))))


@pytest.fixture(scope="session")
def eh3(eh3_spec):
    """The worked three-vertex instance on the line quiver."""
    return generate_monomial(eh3_spec)


@pytest.fixture(scope="session")
def eh3_fp(eh3_spec, fp):
    return generate_monomial(eh3_spec, field=fp)


def random_blocked_subspace(rng, field, max_labels=4, max_dim=4):
    """Random subspace of a random blocked ambient, plus its integer rows."""
    h = rng.randint(2, max_labels)
    dims = tuple(rng.randint(1, 2) for _ in range(h))
    amb = Ambient(tuple(f"v{i}" for i in range(h)), dims)
    total = amb.total_dim
    k = rng.randint(1, min(max_dim, total))
    rows = [
        tuple(rng.randint(-3, 3) for _ in range(total)) for _ in range(k)
    ]
    w = subspace(field, amb, [[field.from_int(x) for x in row] for row in rows])
    while w.dim == 0:
        rows = [tuple(rng.randint(-3, 3) for _ in range(total)) for _ in range(k)]
        w = subspace(field, amb, [[field.from_int(x) for x in row] for row in rows])
    return w, rows, amb
