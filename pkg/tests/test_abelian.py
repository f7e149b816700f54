"""Invariant-factor groups and their subgroup lattices, against brute
force enumeration on small ambients."""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyakit.abelian import AbelianGroupSNF, Subgroup


def brute_force_span(group, vectors):
    """All elements generated by the vectors, by closure under addition."""
    elems = {group.identity()}
    frontier = [group.identity()]
    while frontier:
        nxt = []
        for e in frontier:
            for v in vectors:
                w = group.add(e, v)
                if w not in elems:
                    elems.add(w)
                    nxt.append(w)
        frontier = nxt
    return elems


def test_validation():
    with pytest.raises(ValueError):
        AbelianGroupSNF((1,))
    with pytest.raises(ValueError):
        AbelianGroupSNF((4, 6))  # 4 does not divide 6
    g = AbelianGroupSNF((2, 4))
    assert g.order == 8
    assert g.rank == 2


def test_element_arithmetic():
    g = AbelianGroupSNF((3, 6))
    assert g.reduce((4, 7)) == (1, 1)
    assert g.add((2, 5), (2, 2)) == (1, 1)
    assert g.neg((1, 2)) == (2, 4)
    assert g.scale((1, 1), 5) == (2, 5)
    assert g.identity() == (0, 0)


def test_trivial_group():
    g = AbelianGroupSNF(())
    assert g.order == 1 and g.is_trivial()
    s = g.subgroup([])
    assert s.is_full() and s.order == 1
    assert s.structure() == ()


ambients = st.sampled_from([(2,), (3,), (4,), (2, 2), (2, 4), (3, 3), (2, 6)])


@given(ambients, st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=3))
@settings(max_examples=120, deadline=None)
def test_subgroup_order_matches_brute_force(factors, raw_vectors):
    g = AbelianGroupSNF(factors)
    vectors = [g.reduce(v[: g.rank] + (0,) * g.rank) for v in raw_vectors]
    sub = g.subgroup(vectors)
    elems = brute_force_span(g, vectors)
    assert sub.order == len(elems)
    for e in elems:
        assert sub.contains(e)
    # invariant factors multiply to the order
    prod = 1
    for d in sub.structure():
        prod *= d
    assert prod == sub.order


def test_subgroup_canonical_equality():
    g = AbelianGroupSNF((2, 4))
    a = g.subgroup([(1, 0), (0, 2)])
    b = g.subgroup([(1, 2), (1, 0)])
    assert a == b
    assert a.is_subgroup_of(b) and b.is_subgroup_of(a)
    c = g.subgroup([(0, 2)])
    assert c.is_subgroup_of(a)
    assert not a.is_subgroup_of(c)


def test_subgroup_structure_examples():
    g = AbelianGroupSNF((2, 4))
    assert g.full_subgroup().structure() == (2, 4)
    assert g.subgroup([(0, 2)]).structure() == (2,)
    assert g.subgroup([(1, 1)]).structure() == (4,)
    assert g.subgroup([]).structure() == ()
