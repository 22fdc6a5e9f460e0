import pytest
from hypothesis import given, strategies as st

from infratop.algebra import meet, union_check
from infratop.errors import FlagMismatch, UniverseMismatch
from infratop.setfam import generate_infra_topology, load_space, make_universe

U = make_universe(list("abcd"))
spaces = st.lists(st.integers(0, 15), max_size=5).map(lambda s: generate_infra_topology(U, s))


def test_meet_of_examples(data_dir):
    t2, t3 = load_space(data_dir / "ex2.json"), load_space(data_dir / "ex3.json")
    assert [m.labels() for m in meet(t2, t3).members] == [[], ["c"], ["a", "b", "c", "d"]]


def test_union_check_examples(data_dir):
    t2, t3 = load_space(data_dir / "ex2.json"), load_space(data_dir / "ex3.json")
    r = union_check(t2, t3)
    assert not r.valid
    a, b = r.witness
    assert (a.labels(), b.labels()) == (["a", "b"], ["b", "c"])
    assert union_check(t2, t2).topology == t2


def test_meet_refuses_mixed_inputs():
    g = generate_infra_topology(U, [1], generalized=True)
    t = generate_infra_topology(U, [1])
    with pytest.raises(FlagMismatch):
        meet(g, t)
    other = generate_infra_topology(make_universe(list("abc")), [])
    with pytest.raises(UniverseMismatch):
        meet(t, other)


@given(spaces, spaces, spaces)
def test_meet_laws(t1, t2, t3):
    assert meet(t1, t2) == meet(t2, t1)
    assert meet(t1, t1) == t1
    assert meet(meet(t1, t2), t3) == meet(t1, meet(t2, t3))
    assert set(meet(t1, t2).masks) <= set(t1.masks)


@given(spaces, spaces)
def test_union_check_agrees_with_closure(t1, t2):
    r = union_check(t1, t2)
    union = set(t1.masks) | set(t2.masks)
    closed = all(a & b in union for a in union for b in union)
    assert r.valid == closed
    if not r.valid:
        a, b = r.witness
        assert (a & b).bits not in union
