
import pytest
from hypothesis import given

from randgen import random_system, rngs
from semicross.dynsys import (
    ChainPoint,
    CyclePoint,
    LimitPoint,
    apply_power,
    everything,
    parse_point,
    parse_system,
    recurrent_set,
    system_to_dict,
    taxonomy,
    wandering_set,
)
from semicross.errors import DanglingLimitRef, DuplicatePoint, ForeignPoint, OrphanLimit, ValidationError

PE = {"limits": ["p0", "p2"], "chains": [{"name": "c", "minus": "p0", "plus": "p2"}]}
CYC = {"cycles": [{"name": "Y", "length": 2}], "chains": [{"name": "d", "minus": "inf", "plus": "inf"}]}


def test_parse_golden_fixture():
    sys = parse_system(PE)
    assert sys.limits == ("p0", "p2")
    assert sys.chains[0].minus == "p0" and sys.chains[0].plus == "p2"


def test_parse_empty():
    sys = parse_system("{}")
    assert sys.is_empty()
    xi, xa, xai = taxonomy(sys)
    assert xi.is_empty() and xa.is_empty() and xai.is_empty()


@pytest.mark.parametrize("desc, exc", [
    ({"limits": ["p0"], "chains": [{"name": "c", "minus": "q", "plus": "p0"}]}, DanglingLimitRef),
    ({"limits": ["p0"], "chains": []}, OrphanLimit),
    ({"cycles": [{"name": "c", "length": 1}], "chains": [{"name": "c"}]}, DuplicatePoint),
    ({"cycles": [{"name": "Y", "length": 0}]}, ValidationError),
    ({"chains": [{"name": "c", "range": [0, 3]}]}, ValidationError),
    ("[1, 2", ValidationError),
    ({"chains": [{"name": "c", "minus": 3}]}, ValidationError),
])
def test_parse_errors(desc, exc):
    with pytest.raises(exc):
        parse_system(desc)


def test_one_sided_chain():
    sys = parse_system({"limits": ["a"], "chains": [{"name": "r", "range": [0, None], "plus": "a"}]})
    ch = sys.chains[0]
    assert ch.minus is None and ch.plus == "a" and ch.start == 0
    assert parse_system(system_to_dict(sys)) == sys


def test_apply_power_examples():
    pe, cyc = parse_system(PE), parse_system(CYC)
    assert apply_power(pe, ChainPoint("c", 3), 2) == ChainPoint("c", 1)
    assert apply_power(pe, LimitPoint("p0"), -7) == LimitPoint("p0")
    assert apply_power(cyc, CyclePoint("Y", 0), 3) == CyclePoint("Y", 1)
    with pytest.raises(ForeignPoint):
        apply_power(pe, LimitPoint("zz"), 1)
    with pytest.raises(ForeignPoint):
        apply_power(cyc, CyclePoint("Y", 2), 1)


def test_parse_point():
    cyc = parse_system(CYC)
    assert parse_point(cyc, "Y[1]") == CyclePoint("Y", 1)
    assert parse_point(cyc, "d[-4]") == ChainPoint("d", -4)
    with pytest.raises(ValidationError):
        parse_point(cyc, "d[x]")


def test_taxonomy_examples():
    pe, cyc = parse_system(PE), parse_system(CYC)
    xi, xa, xai = taxonomy(pe)
    assert ChainPoint("c", 5) in xi and LimitPoint("p0") not in xi
    assert xa.limits == {"p0", "p2"} and xa == xai
    assert taxonomy(cyc)[1].is_empty()
    assert recurrent_set(pe).finite_points() == [LimitPoint("p0"), LimitPoint("p2")]
    assert set(recurrent_set(cyc).finite_points()) == {CyclePoint("Y", 0), CyclePoint("Y", 1)}
    one = parse_system({"chains": [{"name": "c"}]})
    assert recurrent_set(one).is_empty()
    assert (everything(pe) - wandering_set(pe)).finite_points() == [LimitPoint("p0"), LimitPoint("p2")]
    assert CyclePoint("Y", 0) not in wandering_set(cyc) and ChainPoint("d", 0) in wandering_set(cyc)


@given(rngs)
def test_power_group_law(rng):
    sys = random_system(rng)
    pts = sys.points(3)
    if not pts:
        return
    p = rng.choice(pts)
    a, b = rng.randint(-9, 9), rng.randint(-9, 9)
    assert apply_power(sys, apply_power(sys, p, a), b) == apply_power(sys, p, a + b)


@given(rngs)
def test_system_round_trip(rng):
    sys = random_system(rng)
    assert parse_system(system_to_dict(sys)) == sys


@given(rngs)
def test_set_identities(rng):
    sys = random_system(rng)
    xi, xa, _ = taxonomy(sys)
    xr, xw = recurrent_set(sys), wandering_set(sys)
    assert (xi | xa) == everything(sys) and (xi & xa).is_empty()
    assert (xr & xw).is_empty()
    for p in (xi - xw).finite_points():
        assert isinstance(p, CyclePoint)
