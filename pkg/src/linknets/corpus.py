"""Deterministic instance corpus for the acceptance suite.

Mixes two-breakpoint line families (which reach the generator-count cap
at small rank) with rejection-sampled multi-type instances, and twists
every other instance.  The schedule is a pure function of the index, so
reruns and field swaps see byte-identical structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .fields import QQ
from .generators import (
    GeneratorError,
    TropicalForm,
    TropicalSpec,
    generate_monomial,
    random_net,
    twist,
)

#: Lattice coverage stays exact but must fit in memory/time per instance.
MAX_COVERAGE_POINTS = 200_000

_LINE_SPLITS = ((1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 2), (1, 4))


@dataclass(frozen=True)
class CorpusInstance:
    name: str
    index: int
    spec: TropicalSpec
    twisted: bool
    net: object


def line_spec(depth, low_count, high_count):
    """Two-breakpoint family on the line: forms at offset 0 and at `depth`."""
    forms = tuple(
        [TropicalForm((0, 0))] * low_count + [TropicalForm((0, depth))] * high_count
    )
    return TropicalSpec(2, forms)


def coverage_points(n_vertices, dim, dilations=(1, 2, 3)):
    return sum(comb(t * dim + n_vertices - 1, n_vertices - 1) for t in dilations)


def corpus_instance(index, field=QQ):
    """Deterministic instance number `index` over the requested field."""
    twisted = index % 2 == 1
    if index % 5 in (0, 1):
        depth = 1 + (index * 7) % 11
        a, b = _LINE_SPLITS[index % len(_LINE_SPLITS)]
        spec = line_spec(depth, a, b)
        net = generate_monomial(spec, field=field, max_vertices=12)
    else:
        seed = 10_000 + index
        while True:
            net, spec, _ = random_net(
                seed,
                n_types=3 + index % 2,
                dim=2 + index % 4,
                field=field,
                max_vertices=12,
                min_vertices=2,
            )
            if coverage_points(len(net.vertices), net.dim) <= MAX_COVERAGE_POINTS:
                break
            seed += 1_000_003
    if twisted:
        net = twist(net, seed=31_337 + index)
    name = (
        f"inst{index:03d}-t{net.n_types}d{net.dim}h{len(net.vertices)}"
        + ("-twisted" if twisted else "")
    )
    return CorpusInstance(name, index, spec, twisted, net)


def acceptance_corpus(count=200, field=QQ):
    for index in range(count):
        yield corpus_instance(index, field=field)
