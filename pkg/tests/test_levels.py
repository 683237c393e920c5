from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmwis import (
    Graph,
    LevelView,
    VertexMultiFamily,
    branch_threshold,
    ceil_log2,
    family_subtract,
    find_branchable,
    level_set,
)


def test_ceil_log2_values():
    assert ceil_log2(1) == 0
    assert ceil_log2(2) == 1
    assert ceil_log2(3) == 2
    assert ceil_log2(4) == 2
    assert ceil_log2(5) == 3
    assert ceil_log2(8) == 3
    assert ceil_log2(9) == 4
    assert ceil_log2(1024) == 10
    assert ceil_log2(1025) == 11


def test_ceil_log2_rejects_nonpositive():
    with pytest.raises(ValueError):
        ceil_log2(0)
    with pytest.raises(ValueError):
        ceil_log2(-3)


def test_family_levels_count_multiplicity():
    fam = VertexMultiFamily([{1, 2}, {2, 3}])
    assert fam.level(1) == {1, 2, 3}
    assert fam.level(2) == {2}
    assert fam.level(3) == frozenset()
    assert fam.multiplicity(2) == 2
    assert fam.multiplicity(1) == 1
    assert fam.multiplicity(99) == 0
    assert fam.max_multiplicity() == 2
    assert level_set(fam, 2) == {2}


def test_empty_family():
    fam = VertexMultiFamily()
    assert len(fam) == 0
    assert fam.level(1) == frozenset()
    assert fam.max_multiplicity() == 0


def test_level_index_must_be_positive():
    with pytest.raises(ValueError):
        VertexMultiFamily([{1}]).level(0)


def test_subtract_keeps_order_and_empty_members():
    """Removing vertices never drops members, so the family size is stable."""
    fam = VertexMultiFamily([{1, 2}, {2, 3}, {2}])
    out = fam.subtract({2})
    assert out.members == (frozenset({1}), frozenset({3}), frozenset())
    assert len(out) == 3
    drained = fam.subtract({1, 2, 3})
    assert len(drained) == 3
    assert drained.level(1) == frozenset()
    assert family_subtract(fam, {2}) == out


def test_add_appends():
    fam = VertexMultiFamily([{1}])
    grown = fam.add({2, 3})
    assert grown.members == (frozenset({1}), frozenset({2, 3}))
    assert len(fam) == 1


def test_family_equality_is_ordered():
    assert VertexMultiFamily([{1}, {2}]) != VertexMultiFamily([{2}, {1}])
    assert VertexMultiFamily([{1}, {2}]) == VertexMultiFamily([{1}, {2}])


def test_branch_threshold():
    assert branch_threshold(8, 2) == 2
    assert branch_threshold(5, 1) == Fraction(5, 2)
    assert branch_threshold(1, 1) == Fraction(1, 2)
    with pytest.raises(ValueError):
        branch_threshold(0, 1)
    with pytest.raises(ValueError):
        branch_threshold(4, 0)


def test_max_level_index():
    assert LevelView(VertexMultiFamily(), 1).max_level_index() == 1
    assert LevelView(VertexMultiFamily(), 2).max_level_index() == 2
    assert LevelView(VertexMultiFamily(), 8).max_level_index() == 4
    assert LevelView(VertexMultiFamily(), 9).max_level_index() == 5


def test_find_branchable_empty_family_is_none():
    g = Graph([1, 2], [(1, 2)])
    assert find_branchable(g, LevelView(VertexMultiFamily(), 2)) is None


def test_find_branchable_smallest_id_wins_ties():
    g = Graph([1, 2], [(1, 2)])
    view = LevelView(VertexMultiFamily([{1, 2}]), 2)
    assert find_branchable(g, view) == 1


def test_find_branchable_prefers_larger_coverage():
    # star center 3: leaf 1 qualifies but the center covers more of the level
    g = Graph([1, 2, 3, 4], [(3, 1), (3, 2), (3, 4)])
    view = LevelView(VertexMultiFamily([{1, 2, 3, 4}]), 4)
    assert find_branchable(g, view) == 3


def test_find_branchable_uses_deeper_levels():
    g = Graph([1, 2, 3, 4], [(1, 2), (2, 3)])
    view = LevelView(VertexMultiFamily([{1, 2}, {2, 3}]), 4)
    assert find_branchable(g, view) == 2


def test_find_branchable_below_threshold_is_none():
    g = Graph([1, 2], [(1, 2)])
    view = LevelView(VertexMultiFamily([{1}]), 8)
    assert find_branchable(g, view) is None


def test_find_branchable_qualifies_at_cap():
    g = Graph([1], [])
    view = LevelView(VertexMultiFamily([{1}, {1}, {1}]), 2)
    assert find_branchable(g, view) == 1


def _qualifies(g: Graph, view: LevelView, v: int) -> bool:
    closed = g.closed(v)
    for i in range(1, view.max_level_index() + 1):
        if len(closed & view.family.level(i)) >= branch_threshold(view.capacity_n, i):
            return True
    return False


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_find_branchable_agrees_with_definition(data):
    n = data.draw(st.integers(min_value=1, max_value=8), label="n")
    ids = list(range(1, n + 1))
    edges = [
        (u, v)
        for u in ids
        for v in ids
        if u < v and data.draw(st.booleans(), label=f"e{u},{v}")
    ]
    g = Graph(ids, edges)
    n_cap = data.draw(st.integers(min_value=n, max_value=2 * n), label="N")
    members = data.draw(
        st.lists(st.sets(st.sampled_from(ids), max_size=n), max_size=4), label="family"
    )
    view = LevelView(VertexMultiFamily(members), n_cap)
    got = find_branchable(g, view)
    qualifiers = [v for v in ids if _qualifies(g, view, v)]
    if got is None:
        assert qualifiers == []
    else:
        assert got in qualifiers


@settings(max_examples=100, deadline=None)
@given(
    members=st.lists(st.sets(st.integers(min_value=1, max_value=10), max_size=6), max_size=5),
    cut=st.sets(st.integers(min_value=1, max_value=10), max_size=6),
)
def test_subtract_multiplicity_property(members, cut):
    fam = VertexMultiFamily(members)
    out = fam.subtract(cut)
    assert len(out) == len(fam)
    for v in range(1, 11):
        if v in cut:
            assert out.multiplicity(v) == 0
        else:
            assert out.multiplicity(v) == fam.multiplicity(v)


@settings(max_examples=100, deadline=None)
@given(members=st.lists(st.sets(st.integers(min_value=1, max_value=12), max_size=8), max_size=6))
def test_levels_are_nested(members):
    fam = VertexMultiFamily(members)
    for i in range(1, 6):
        assert fam.level(i + 1) <= fam.level(i)
