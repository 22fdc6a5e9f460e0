import json

import pytest
from hypothesis import given, strategies as st

from infratop.errors import DuplicateLabel, FormatError, UniverseMismatch, UnknownLabel
from infratop.setfam import (
    MissingEmpty,
    MissingUniverse,
    NotIntersectionClosed,
    dumps_space,
    generate_infra_topology,
    is_alexandrov,
    loads_space,
    make_universe,
    subset_of,
    validate_infra_topology,
)

ABC = make_universe(["a", "b", "c"])
ABCD = make_universe(["a", "b", "c", "d"])


def sets(u, *words):
    return [subset_of(u, list(w)) for w in words]


def test_universe_basics():
    assert ABC.size == 3
    assert make_universe([]).size == 0
    with pytest.raises(DuplicateLabel) as exc:
        make_universe(["a", "a"])
    assert exc.value.label == "a"


def test_subset_of():
    assert subset_of(ABC, ["a", "b"]).bits == 0b011
    assert subset_of(ABC, ["b", "a", "a"]).bits == 0b011
    assert subset_of(ABC, []).bits == 0
    with pytest.raises(UnknownLabel):
        subset_of(ABC, ["z"])


def test_subset_operations():
    a, b = sets(ABC, "ab", "bc")
    assert (a & b).labels() == ["b"]
    assert (a | b).labels() == ["a", "b", "c"]
    assert (~a).labels() == ["c"]
    assert (a - b).labels() == ["a"]
    assert subset_of(ABC, ["a"]) < a and not a <= b
    assert str(a) == "{a,b}"
    with pytest.raises(UniverseMismatch):
        a & subset_of(ABCD, ["a"])


def test_example_one_validates():
    t = validate_infra_topology(ABC, sets(ABC, "", "abc", "a", "b"))
    assert [m.labels() for m in t.members] == [[], ["a"], ["b"], ["a", "b", "c"]]


def test_union_of_examples_two_three_is_not_closed():
    fam = sets(ABCD, "", "abcd", "a", "c", "d", "ab", "ac", "bc", "cd")
    with pytest.raises(NotIntersectionClosed) as exc:
        validate_infra_topology(ABCD, fam)
    a, b = exc.value.witness
    assert (a.labels(), b.labels()) == (["a", "b"], ["b", "c"])
    assert exc.value.clause == "intersection-closed"


def test_missing_members():
    with pytest.raises(MissingEmpty):
        validate_infra_topology(ABC, sets(ABC, "abc"))
    with pytest.raises(MissingUniverse):
        validate_infra_topology(ABC, sets(ABC, ""))
    w = make_universe(["w"])
    assert validate_infra_topology(w, [subset_of(w, [])], generalized=True).masks == (0,)


def test_generate():
    t = generate_infra_topology(ABCD, sets(ABCD, "ab", "bc"))
    assert {m.bits for m in t.members} == {s.bits for s in sets(ABCD, "", "abcd", "b", "ab", "bc")}
    assert generate_infra_topology(ABCD, []).masks == (0, ABCD.full)
    assert generate_infra_topology(ABCD, t.members) == t
    assert is_alexandrov(t)


def test_space_file_errors():
    with pytest.raises(FormatError):
        loads_space("{not json")
    with pytest.raises(FormatError):
        loads_space(json.dumps({"universe": ["a"]}))
    with pytest.raises(FormatError):
        loads_space(json.dumps({"universe": ["a"], "family": [["z"]]}))


masks4 = st.lists(st.integers(0, 15), max_size=6)


@given(masks4, st.booleans())
def test_generate_is_valid_idempotent_and_least(seeds, generalized):
    t = generate_infra_topology(ABCD, seeds, generalized)
    validate_infra_topology(ABCD, t.masks, generalized)
    assert generate_infra_topology(ABCD, t.masks, generalized) == t
    assert set(seeds) <= set(t.masks)
    # every member is an intersection of seeds (or a fixed member)
    base = set(seeds) | {0} | (set() if generalized else {ABCD.full})
    for m in t.masks:
        parts = [s for s in base if m & ~s == 0]
        acc = ABCD.full
        for s in parts:
            acc &= s
        assert m in base or acc == m


@given(masks4, masks4)
def test_generate_is_monotone(s1, s2):
    t1 = generate_infra_topology(ABCD, s1)
    t12 = generate_infra_topology(ABCD, s1 + s2)
    assert set(t1.masks) <= set(t12.masks)


@given(masks4, st.booleans())
def test_space_round_trip(seeds, generalized):
    t = generate_infra_topology(ABCD, seeds, generalized)
    assert loads_space(dumps_space(t)) == t
