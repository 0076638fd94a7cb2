import pytest

from linknets.fields import QQ, PrimeField
from linknets.generators import (
    GeneratorError,
    TropicalForm,
    TropicalSpec,
    form_constant_along,
    generate_monomial,
    random_net,
    twist,
)
from linknets.nets import vertex_pair, verify


def test_form_validation():
    with pytest.raises(GeneratorError):
        TropicalForm((None, None))
    with pytest.raises(GeneratorError):
        # slot 1 covered by nobody
        TropicalSpec(2, (TropicalForm((0, None)),))
    with pytest.raises(GeneratorError):
        # no full-support form
        TropicalSpec(2, (TropicalForm((0, None)), TropicalForm((None, 0))))


def test_form_constancy_matches_stepwise_evaluation():
    form = TropicalForm((0, 2))
    # increasing the first slot from (1,0): max(u0, u1+2) stays 2
    assert form_constant_along(form, (1, 0), (2, 0))
    assert not form_constant_along(form, (1, 0), (0, 0))
    f1 = TropicalForm((0, 0))
    assert form_constant_along(f1, (1, 0), (0, 0))
    assert not form_constant_along(f1, (1, 0), (2, 0))


def test_eh3_generation(eh3):
    assert eh3.vertices == ((0, 0), (1, 0), (2, 0))
    assert eh3.dim == 2 and eh3.n_types == 2


def test_rank_one_form_gives_single_vertex():
    spec = TropicalSpec(3, (TropicalForm((0, 1, 2)),))
    net = generate_monomial(spec)
    assert len(net.vertices) == 1 and net.dim == 1
    assert verify(net).passed


def test_generation_respects_vertex_cap():
    spec = TropicalSpec(2, (TropicalForm((0, 0)), TropicalForm((0, 9))))
    with pytest.raises(GeneratorError):
        generate_monomial(spec, max_vertices=5)


def test_generation_deterministic(eh3_spec):
    a = generate_monomial(eh3_spec)
    b = generate_monomial(eh3_spec)
    assert a.maps == b.maps and a.vertices == b.vertices


def test_generation_over_prime_field(eh3_spec, fp):
    net = generate_monomial(eh3_spec, field=fp)
    assert verify(net).passed
    assert net.field == fp


def test_partial_support_forms():
    spec = TropicalSpec(
        3,
        (
            TropicalForm((0, 0, 0)),
            TropicalForm((None, 0, 1)),
        ),
    )
    net = generate_monomial(spec)
    assert verify(net).passed


def test_random_net_seeded_and_bounded():
    net1, spec1, att1 = random_net(99)
    net2, spec2, att2 = random_net(99)
    assert spec1 == spec2 and net1.maps == net2.maps and att1 == att2
    assert len(net1.vertices) <= 12


def test_twist_requires_validity(eh3):
    t = twist(eh3, seed=0)
    assert verify(t).passed
    # tables invariant
    for v in range(3):
        assert vertex_pair(t, v).lower == vertex_pair(eh3, v).lower


def test_twist_prime_field(eh3_spec, fp):
    net = generate_monomial(eh3_spec, field=fp)
    t = twist(net, seed=11)
    assert verify(t).passed
