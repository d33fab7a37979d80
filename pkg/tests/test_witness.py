import pytest
from hypothesis import given, settings

from randgen import random_element, random_system, rngs
from semicross.compactness import certify_mult_compact, verify_separation, witness_family
from semicross.errors import NoFailure
from semicross.funcspace import sup_norm
from semicross.algebra import l1_norm
from semicross.io import load_workspace


@pytest.mark.parametrize("name, cond", [("paper-example", "c"), ("WA", "a"), ("WB", "b")])
def test_fixture_witnesses(name, cond):
    ws = load_workspace(name)
    a, b = ws.elements["A"], ws.elements["B"]
    cert = certify_mult_compact(ws.system, a, b)
    fam = witness_family(ws.system, a, b, cert.pairs, 20)
    assert fam.condition == cond and len(fam) == 20
    assert fam.delta == 1
    assert verify_separation(ws.system, a, b, fam) >= 1
    assert all(l1_norm(t) == 1 for t in fam.elements)


def test_golden_fixture_family_shape(pe):
    a, b = pe.elements["A"], pe.elements["B"]
    cert = certify_mult_compact(pe.system, a, b)
    fam = witness_family(pe.system, a, b, cert.pairs, 4)
    assert fam.shifts == (0, 4, 8, 12)
    assert [p.index for p in fam.supports] == [0, 4, 8, 12]


def test_no_failure(pe):
    a, b = pe.elements["C"], pe.elements["D"]
    cert = certify_mult_compact(pe.system, a, b)
    with pytest.raises(NoFailure):
        witness_family(pe.system, a, b, cert.pairs, 3)


def test_needs_two(pe):
    a, b = pe.elements["A"], pe.elements["B"]
    cert = certify_mult_compact(pe.system, a, b)
    with pytest.raises(ValueError):
        witness_family(pe.system, a, b, cert.pairs, 1)


@settings(max_examples=150, deadline=None)
@given(rngs)
def test_random_witnesses_separate(rng):
    sys = random_system(rng)
    a, b = (random_element(sys, rng, max_degree=2, zero_bias=0.6) for _ in range(2))
    cert = certify_mult_compact(sys, a, b, "general")
    if cert.positive:
        return
    fam = witness_family(sys, a, b, cert.pairs, 4)
    assert fam.delta > 0
    assert verify_separation(sys, a, b, fam) >= fam.delta
    assert all(sup_norm(t.coefficients[l]) == 1 for t, l in zip(fam.elements, fam.shifts))
