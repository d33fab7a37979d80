from fractions import Fraction

import pytest
from hypothesis import given

from randgen import random_function, random_system, rngs
from semicross.dynsys import ChainPoint, LimitPoint, parse_system
from semicross.errors import Discontinuous, NotIsolated, SystemMismatch, VanishingViolation
from semicross.funcspace import (
    c0_violations,
    compose_power,
    evaluate,
    indicator,
    level_sets,
    make_function,
    pointwise,
    sup_norm,
    urysohn_cutoff,
    validate_c0,
    zero,
)
from semicross.profile import Profile
from semicross.scalar import Scalar

x = lambda j: ChainPoint("c", j)  # noqa: E731


def test_evaluate_examples(pe):
    f, g = pe.functions["f"], pe.functions["g"]
    assert evaluate(g, x(3)) == 1
    assert evaluate(g, LimitPoint("p0")) == 0
    assert evaluate(f, x(0)) == 1
    assert f(x(1)) == 0


def test_validate_examples(pe):
    validate_c0(pe.functions["g"])
    sys = pe.system
    bad = make_function(sys, limits={"p0": 1}, validate=False)
    with pytest.raises(Discontinuous):
        validate_c0(bad)
    inf = parse_system({"chains": [{"name": "c"}]})
    with pytest.raises(VanishingViolation):
        make_function(inf, chains={"c": Profile.build(0, Fraction(1, 2), {}, 0)})


def test_pointwise_examples(pe):
    f, g = pe.functions["f"], pe.functions["g"]
    assert (f * g).is_zero()
    assert f + zero(pe.system) == f
    assert pointwise("scale", f, 2)(x(0)) == 2
    assert pointwise("abs2", f * Scalar(0, 3))(x(0)) == 9
    other = parse_system({"chains": [{"name": "c"}]})
    with pytest.raises(SystemMismatch):
        f + zero(other)


def test_compose_examples(pe):
    sys = pe.system
    assert compose_power(indicator(sys, [x(0)]), 2) == indicator(sys, [x(2)])
    g = pe.functions["g"]
    assert compose_power(g, 0) == g
    assert compose_power(g, 1)(x(1)) == 0


def _f04(sys):
    return make_function(sys, chains={"c": Profile.build(0, 0, {0: 1, 1: Fraction(2, 5)})})


def test_sup_norm_examples(pe):
    assert sup_norm(pe.functions["g"]) == 1
    assert sup_norm(zero(pe.system)) == 0
    assert sup_norm(_f04(pe.system)) == 1


def test_level_sets_examples(pe):
    sys = pe.system
    d, u = level_sets(_f04(sys), 2)
    assert d.finite_points() == [x(0)]
    assert u.finite_points() == [x(0), x(1)]
    d, u = level_sets(zero(sys), 3)
    assert d.is_empty() and u.is_empty()
    d, u = level_sets(pe.functions["g"], 1)
    assert d == u
    assert d.limits == {"p2"} and x(1) in d and x(0) not in d and d.chains["c"].plus


def test_cutoff_examples(pe):
    sys = pe.system
    _, f2 = urysohn_cutoff(_f04(sys), 2)
    assert f2(x(0)) == 1 and f2(x(1)) == Fraction(4, 25)
    g = pe.functions["g"]
    assert urysohn_cutoff(g, 1)[1] == g
    assert urysohn_cutoff(zero(sys), 4)[1].is_zero()


def test_indicator_examples(pe):
    sys = pe.system
    chi = indicator(sys, [x(0), x(5)])
    validate_c0(chi)
    assert chi(x(5)) == 1 and chi(x(4)) == 0
    with pytest.raises(NotIsolated):
        indicator(sys, [LimitPoint("p0")])


@given(rngs)
def test_closure(rng):
    sys = random_system(rng)
    f, g = random_function(sys, rng), random_function(sys, rng)
    k = rng.randint(-5, 5)
    for h in (f + g, f * g, pointwise("abs2", f), compose_power(f, k), urysohn_cutoff(f, 3)[1],
              urysohn_cutoff(f, 3)[0]):
        assert c0_violations(h) == []


@given(rngs)
def test_evaluate_against_table(rng):
    sys = random_system(rng)
    f, g = random_function(sys, rng), random_function(sys, rng)
    k = rng.randint(-6, 6)
    fk = compose_power(f, k)
    from semicross.dynsys import apply_power
    for p in sys.points(12):
        assert (f + g)(p) == f(p) + g(p)
        assert (f * g)(p) == f(p) * g(p)
        assert fk(p) == f(apply_power(sys, p, k))


@given(rngs)
def test_compose_group_law_and_norms(rng):
    sys = random_system(rng)
    f, g = random_function(sys, rng), random_function(sys, rng)
    a, b = rng.randint(-5, 5), rng.randint(-5, 5)
    assert compose_power(compose_power(f, a), b) == compose_power(f, a + b)
    assert sup_norm(f * g) <= sup_norm(f) * sup_norm(g) + 1e-12
    assert sup_norm(compose_power(f, a)) == sup_norm(f)


@given(rngs)
def test_cutoff_properties(rng):
    sys = random_system(rng)
    f = random_function(sys, rng)
    k = rng.randint(1, 4)
    _, fk = urysohn_cutoff(f, k)
    for p in sys.points(8):
        a2 = f(p).abs2()
        if a2 >= Fraction(1, k * k):
            assert fk(p) == f(p)
        if a2 <= Fraction(4, 9 * k * k):
            assert not fk(p)
    assert sup_norm(f - fk) <= Fraction(1, k)
