import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssiwasawa.abelian import (
    Subgroup,
    all_subgroups,
    cosets,
    make_group,
    quotient,
    subgroup_generated,
)
from ssiwasawa.errors import InputError


def brute_closure(G, gens):
    """Close under addition by repeated sweeps, no cleverness."""
    span = {G.identity}
    while True:
        new = {G.add(a, b) for a in span | set(gens) for b in span | set(gens)} | span
        if new == span:
            return span
        span = new


def test_make_group():
    assert make_group([2, 3]).order == 6
    assert make_group([1]).order == 1
    assert list(make_group([1]).elements()) == [(0,)]
    assert make_group([]).order == 1
    assert make_group([4]).add((3,), (3,)) == (2,)
    with pytest.raises(InputError):
        make_group([0])


@pytest.mark.parametrize(
    "orders, gens, expected",
    [
        ([6], [(2,)], {(0,), (2,), (4,)}),
        ([2, 2], [], {(0, 0)}),
        ([9], [(3,), (6,)], {(0,), (3,), (6,)}),
    ],
)
def test_subgroup_generated_examples(orders, gens, expected):
    G = make_group(orders)
    H = subgroup_generated(G, gens)
    assert set(H) == expected
    assert set(H) == brute_closure(G, gens)


def test_out_of_range_generator():
    with pytest.raises(InputError):
        subgroup_generated(make_group([4]), [(4,)])
    with pytest.raises(InputError):
        subgroup_generated(make_group([4]), [(1, 0)])


def test_subgroup_rejects_unclosed_set():
    G = make_group([4])
    with pytest.raises(InputError):
        Subgroup(G, [(0,), (1,)])
    with pytest.raises(InputError):
        Subgroup(G, [(2,)])


@pytest.mark.parametrize(
    "orders, gens, q_order",
    [
        ([4], [(2,)], 2),
        ([6], [], 6),
        ([2, 2], [(1, 0), (0, 1)], 1),
    ],
)
def test_quotient_examples(orders, gens, q_order):
    G = make_group(orders)
    H = subgroup_generated(G, gens)
    Q, proj = quotient(G, H)
    assert Q.order == q_order
    # coset enumeration oracle
    cosets_by_hand = {frozenset(G.add(g, h) for h in H) for g in G}
    assert len(cosets_by_hand) == q_order


def test_quotient_canonical_form():
    G = make_group([6])
    Q, _ = quotient(G, subgroup_generated(G, []))
    assert Q.cyclic_orders == (6,)
    # Z/2 x Z/3 and Z/6 give the same quotient representation
    G2 = make_group([2, 3])
    Q2, _ = quotient(G2, subgroup_generated(G2, []))
    assert Q2 == Q


def test_quotient_rejects_foreign_subgroup():
    with pytest.raises(InputError):
        quotient(make_group([4]), subgroup_generated(make_group([2]), []))


@pytest.mark.parametrize(
    "orders, gens, reps",
    [
        ([6], [(3,)], [(0,), (1,), (2,)]),
        ([2, 2], [(1, 0)], [(0, 0), (0, 1)]),
        ([4], [(1,)], [(0,)]),
    ],
)
def test_cosets_examples(orders, gens, reps):
    G = make_group(orders)
    assert cosets(G, subgroup_generated(G, gens)) == reps


groups = st.lists(st.integers(1, 6), min_size=0, max_size=3)


@st.composite
def group_and_gens(draw):
    orders = draw(groups)
    G = make_group(orders)
    elem = st.tuples(*[st.integers(0, n - 1) for n in orders]) if orders else st.just(())
    gens = draw(st.lists(elem, max_size=3))
    return G, gens, draw(elem), draw(elem)


@settings(max_examples=120, deadline=None)
@given(group_and_gens())
def test_group_properties(data):
    G, gens, x, y = data
    H = subgroup_generated(G, gens)
    assert set(H) == brute_closure(G, gens)
    assert G.order % H.order == 0
    Q, proj = quotient(G, H)
    assert G.order == H.order * Q.order
    assert proj(G.add(x, y)) == Q.add(proj(x), proj(y))
    assert {g for g in G if proj(g) == Q.identity} == set(H)
    assert {proj(g) for g in G} == set(Q.elements())
    reps = cosets(G, H)
    assert len(reps) == Q.order
    covered = [G.add(r, h) for r in reps for h in H]
    assert len(covered) == len(set(covered)) == G.order
    for r in reps:
        assert r == min(G.add(r, h) for h in H)


def test_all_subgroups_counts():
    # Z/2 x Z/2 has 5 subgroups, Z/8 has 4, Z/2 x Z/4 has 8, Z/2^3 has 16
    assert len(all_subgroups(make_group([2, 2]))) == 5
    assert len(all_subgroups(make_group([8]))) == 4
    assert len(all_subgroups(make_group([2, 4]))) == 8
    assert len(all_subgroups(make_group([2, 2, 2]))) == 16


def test_generators_span():
    G = make_group([2, 20])
    for H in all_subgroups(G):
        assert set(subgroup_generated(G, H.generators())) == set(H)
