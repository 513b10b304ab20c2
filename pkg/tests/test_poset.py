import pytest
from hypothesis import given, settings

from stanleylab.core import CapacityError, make_pair
from stanleylab.poset import (
    Interval,
    IntervalPartition,
    MalformedIntervalError,
    RangeError,
    bound_conditions_fire,
    build_poset,
    interval_elements,
    iter_truncated_partitions,
    sdepth,
    sdepth_decide,
    sdepth_oracle,
    validate_partition,
)

from conftest import ideal_pairs, m


def vs(ms):
    return sorted(x.vars for x in ms)


def test_build_poset_boundary(boundary):
    P = build_poset(boundary, 4)
    assert vs(P.layer(3)) == [(1, 2, 3), (1, 2, 4), (1, 2, 5), (3, 4, 5)]
    assert vs(P.layer(4)) == [(1, 2, 3, 4), (1, 3, 4, 5), (2, 3, 4, 5)]


def test_build_poset_single_element():
    p = make_pair(3, [[1, 2]], [[1, 2, 3]])
    assert vs(build_poset(p, 3).elements) == [(1, 2)]


def test_build_poset_covering_layers(covering):
    P = build_poset(covering, 3)
    assert len(P.layer(2)) == 8 and len(P.layer(3)) == 7


def test_build_poset_covering_full_layers(covering_full):
    # the literal J leaves x1x3x5, x1x4x5, x3x4x5 in the degree-3 layer
    P = build_poset(covering_full, 3)
    assert len(P.layer(2)) == 8 and len(P.layer(3)) == 10


def test_build_poset_below_d_warns(boundary):
    P = build_poset(boundary, 1)
    assert P.empty_warning and len(P) == 0


def test_interval_elements():
    iv = Interval(m(5, 1, 2), m(5, 1, 2, 3, 4))
    assert vs(interval_elements(iv)) == [(1, 2), (1, 2, 3), (1, 2, 3, 4), (1, 2, 4)]
    v = m(5, 2, 4)
    assert interval_elements(Interval(v, v)) == {v}
    assert len(interval_elements(Interval(m(5, 1), m(5, 1, 3, 4)))) == 4
    with pytest.raises(MalformedIntervalError):
        Interval(m(3, 1), m(3, 2, 3))


def test_interval_elements_outside_host(boundary):
    with pytest.raises(MalformedIntervalError):
        interval_elements(Interval(m(5, 1, 2), m(5, 1, 2, 3, 5)), build_poset(boundary))


TOP4_INTERVALS = [((1, 2), (1, 2, 3, 4)), ((3, 4, 5), (1, 3, 4, 5)), ((1, 2, 5), (1, 2, 3, 5))]


def top4_partition(top4, drop_last=False):
    ivs = [Interval(m(5, *u), m(5, *v)) for u, v in TOP4_INTERVALS]
    if drop_last:
        ivs = ivs[:-1]
    return IntervalPartition(build_poset(top4), tuple(ivs))


def test_top4_partition_validates(top4):
    p = top4_partition(top4)
    assert validate_partition(p)
    assert p.sdepth == 4


def test_missing_interval_detected(top4):
    check = validate_partition(top4_partition(top4, drop_last=True))
    assert not check and check.witness == m(5, 1, 2, 5)
    assert "not covered" in check.detail


def test_overlap_detected(top4):
    host = build_poset(top4)
    ivs = (Interval(m(5, 1, 2, 3), m(5, 1, 2, 3, 4)), Interval(m(5, 1, 2, 4), m(5, 1, 2, 3, 4)))
    check = validate_partition(IntervalPartition(host, ivs))
    assert not check and check.witness == m(5, 1, 2, 3, 4)


def test_sdepth_decide_examples(boundary, top4):
    assert sdepth_decide(boundary, 3) is not None
    assert sdepth_decide(boundary, 4) is None
    assert sdepth_decide(boundary, 4, use_bounds=False) is None
    p = sdepth_decide(top4, 4)
    assert p is not None and validate_partition(p) and p.sdepth == 4
    with pytest.raises(RangeError):
        sdepth_decide(boundary, 6)
    with pytest.raises(RangeError):
        sdepth_decide(boundary, 1)


def test_sdepth_examples(boundary, top4, covering):
    assert sdepth(boundary).value == 3
    assert sdepth(top4).value == 4
    assert sdepth(covering).value == 3


def test_certificate_contents(boundary):
    cert = sdepth(boundary)
    assert validate_partition(cert.witness)
    assert cert.witness.host.is_full()
    assert cert.witness.sdepth == 3
    assert cert.refutation.k == 4 and cert.refutation.reason == "search"
    assert cert.decisions == {2: True, 3: True, 4: False}


def test_oracle_examples(boundary):
    assert sdepth_oracle(make_pair(1, [[1]])) == 1
    assert sdepth_oracle(make_pair(3, [[1, 2]], [[1, 2, 3]])) == 2
    # exhaustive enumeration over all interval partitions of the 8-element poset
    assert sdepth_oracle(boundary) == 3


def test_oracle_capacity(covering):
    with pytest.raises(CapacityError):
        sdepth_oracle(covering)


def test_partitions_enumeration_contains_decision(covering):
    first = next(iter_truncated_partitions(covering, 3))
    assert first.intervals == sdepth_decide(covering, 3).intervals
    assert all(validate_partition(p) for p in iter_truncated_partitions(covering, 3))


@settings(max_examples=120, deadline=None)
@given(ideal_pairs(max_n=5))
def test_oracle_equivalence(pair):
    if len(build_poset(pair)) > 14:
        return
    assert sdepth_oracle(pair) == sdepth(pair).value == sdepth(pair, use_bounds=False).value


@settings(max_examples=80, deadline=None)
@given(ideal_pairs(max_n=5))
def test_decision_outputs_are_normal_and_monotone(pair):
    present = []
    for k in range(pair.d, pair.n + 1):
        p = sdepth_decide(pair, k)
        present.append(p is not None)
        if p is None:
            continue
        assert validate_partition(p)
        for iv in p.intervals:
            assert len(list(iv.members())) == 2 ** iv.rank
            assert all(pair.in_quotient(w) for w in iv.members())
            if iv.u.degree >= k:
                assert iv.is_singleton()
            else:
                assert iv.v.degree == k
    # once absent, absent for every larger k
    assert present == sorted(present, reverse=True)


@settings(max_examples=80, deadline=None)
@given(ideal_pairs(max_n=6))
def test_bound_conditions_sound(pair):
    if any(bound_conditions_fire(build_poset(pair, pair.d + 2)).values()):
        assert sdepth(pair, use_bounds=False).value <= pair.d + 1
