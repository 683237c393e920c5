import pytest

from qmwis import (
    RULE_ADD_NEIGHBORHOOD,
    RULE_ADD_SEPARATOR,
    RULE_BRANCH_DELETE,
    RULE_BRANCH_TAKE,
    RULE_COMPONENT,
    InvariantViolation,
    RunStats,
    VertexMultiFamily,
    assert_recurrence_step,
    max_measure_h,
    max_measure_k,
    measure_h,
    measure_k,
)

EMPTY = VertexMultiFamily()


def test_measure_k_two_vertex_example():
    m = measure_k(2, 2, EMPTY, 5)
    # 400*25*1*(2+2) = 40000, levels empty, 16*5*2*1*(50-0) = 8000
    assert m.separator_term == 40000
    assert m.level_term == 0
    assert m.family_term == 8000
    assert m.value == 48000


def test_measure_k_with_family():
    fam = VertexMultiFamily([{1, 2}, {2}])
    m = measure_k(3, 4, fam, 1)
    assert m.separator_term == 400 * 4 * 7
    assert m.level_term == 2 * 1 + 1 * 2
    assert m.family_term == 16 * 4 * 2 * (20 - 2)
    assert m.value == 11200 + 4 + 2304


def test_measure_k_single_vertex_capacity_has_no_slack():
    # log(1) = 0 wipes both the separator and family terms
    m = measure_k(1, 1, EMPTY, 3)
    assert m.value == 0


def test_measure_k_family_overflow_raises():
    fam = VertexMultiFamily([{1}] * 11)
    with pytest.raises(InvariantViolation) as err:
        measure_k(1, 2, fam, 1)
    assert err.value.rule == "family-size"
    assert err.value.details["bound"] == 10


def test_measure_k_validates_arguments():
    with pytest.raises(ValueError):
        measure_k(1, 1, EMPTY, 0)
    with pytest.raises(ValueError):
        measure_k(1, 0, EMPTY, 1)


def test_measure_h_empty_graph_example():
    m = measure_h(0, 2, EMPTY, 4, 2)
    assert m.size_term == 0
    assert m.level_term == 0
    assert m.family_term == 2 * 4 * 2 * 1 * 8
    assert m.value == 128


def test_measure_h_counts_graph_size_directly():
    m = measure_h(7, 8, VertexMultiFamily([{1}, {1}]), 2, 1)
    # levels: L1 = {1}, L2 = {1} -> 1 + 2 = 3; slack = 2*1*3 - 2 = 4
    assert m.size_term == 7
    assert m.level_term == 3
    assert m.family_term == 2 * 2 * 8 * 3 * 4
    assert m.value == 7 + 3 + 384


def test_measure_h_family_overflow_raises():
    fam = VertexMultiFamily([{1}, {2}])
    with pytest.raises(InvariantViolation) as err:
        measure_h(1, 2, fam, 1, 1)
    assert err.value.rule == "family-size"


def test_measure_h_validates_arguments():
    with pytest.raises(ValueError):
        measure_h(1, 1, EMPTY, 0, 1)
    with pytest.raises(ValueError):
        measure_h(1, 1, EMPTY, 1, 0)
    with pytest.raises(ValueError):
        measure_h(1, 0, EMPTY, 1, 1)


def test_max_measures():
    assert max_measure_k(2, 5) == 1050 * 25 * 2
    assert max_measure_k(1, 5) == 0
    assert max_measure_h(2, 4, 2) == 4 * 16 * 2 * 2
    assert measure_k(2, 2, EMPTY, 5).value <= max_measure_k(2, 5)
    assert measure_h(0, 2, EMPTY, 4, 2).value <= max_measure_h(2, 4, 2)


def test_recurrence_component_rule():
    assert_recurrence_step(20, 19, RULE_COMPONENT, {"k": 1})
    with pytest.raises(InvariantViolation):
        assert_recurrence_step(20, 20, RULE_COMPONENT, {"k": 1})


def test_recurrence_branch_delete():
    assert_recurrence_step(10, 9, RULE_BRANCH_DELETE, {"k": 2})
    with pytest.raises(InvariantViolation):
        assert_recurrence_step(10, 10, RULE_BRANCH_DELETE, {"k": 2})


def test_recurrence_branch_take_k_form():
    # mu = 1024, L = 10, k = 1: D = 210000; the step must lose mu/D
    assert_recurrence_step(1024, 1023, RULE_BRANCH_TAKE, {"k": 1})
    with pytest.raises(InvariantViolation):
        assert_recurrence_step(1024, 1024, RULE_BRANCH_TAKE, {"k": 1})


def test_recurrence_branch_take_pattern_form():
    params = {"pattern_size": 2, "pattern_components": 1}
    assert_recurrence_step(1024, 1023, RULE_BRANCH_TAKE, params)
    with pytest.raises(InvariantViolation):
        assert_recurrence_step(1024, 1024, RULE_BRANCH_TAKE, params)


def test_recurrence_add_separator():
    assert_recurrence_step(1024, 1023, RULE_ADD_SEPARATOR, {"k": 1})
    with pytest.raises(InvariantViolation):
        assert_recurrence_step(1024, 1024, RULE_ADD_SEPARATOR, {"k": 1})


def test_recurrence_add_neighborhood():
    params = {"pattern_size": 2, "pattern_components": 1}
    # D = 4*2*1*10 = 80: mu' = 1011 still passes, 1012 does not
    assert_recurrence_step(1024, 1011, RULE_ADD_NEIGHBORHOOD, params)
    with pytest.raises(InvariantViolation):
        assert_recurrence_step(1024, 1012, RULE_ADD_NEIGHBORHOOD, params)


def test_recurrence_tiny_parent_fails_scaled_rules():
    # log(1) = 0 gives an empty decrease budget
    with pytest.raises(InvariantViolation):
        assert_recurrence_step(1, 0, RULE_ADD_SEPARATOR, {"k": 1})


def test_recurrence_unknown_rule():
    with pytest.raises(ValueError):
        assert_recurrence_step(10, 9, "teleport", {"k": 1})


def test_run_stats_counters_and_maxima():
    s = RunStats()
    s.on_call(5, 2)
    s.on_call(3, 4)
    assert s.calls == 2
    assert s.max_graph_size == 5
    assert s.max_family_size == 4
    s.record_oracle_call(0)
    s.record_oracle_call(0)
    s.record_oracle_call(1)
    assert s.oracle_calls == 3
    assert s.oracle_calls_by_index == {0: 2, 1: 1}
    s.record_neighborhood((1, 2))
    assert s.neighborhoods_added_count == 1
    s.record_levels(VertexMultiFamily([{1, 2, 3}, {3}]))
    assert s.max_level_occupancy == {1: 3, 2: 1}


def test_run_stats_merge():
    a = RunStats()
    a.on_call(4, 1)
    a.record_oracle_call(0)
    a.max_depth = 3
    b = RunStats()
    b.on_call(9, 5)
    b.record_oracle_call(0)
    b.record_oracle_call(2)
    b.max_depth = 7
    b.assertions_checked = 11
    a.merge(b)
    assert a.calls == 2
    assert a.max_graph_size == 9
    assert a.max_family_size == 5
    assert a.max_depth == 7
    assert a.oracle_calls == 3
    assert a.oracle_calls_by_index == {0: 2, 2: 1}
    assert a.assertions_checked == 11


def test_run_stats_trace_ring_buffer():
    s = RunStats(trace_limit=2)
    s.record_measure("a", 3, 2)
    s.record_measure("b", 2, 1)
    s.record_measure("c", 1, 0)
    assert [t[0] for t in s.measure_trace] == ["b", "c"]


def test_run_stats_to_dict_round_trips_through_json():
    import json

    s = RunStats()
    s.on_call(2, 0)
    s.record_oracle_call(1)
    s.record_measure("branch-delete", 9, 8)
    d = s.to_dict()
    assert d["calls"] == 1
    assert d["oracle_calls_by_index"] == {"1": 1}
    assert d["measure_trace_tail"] == [["branch-delete", 9, 8]]
    json.dumps(d, sort_keys=True)


def test_invariant_violation_carries_rule_and_details():
    err = InvariantViolation("demo", "broke", {"x": 1})
    assert isinstance(err, AssertionError)
    assert err.rule == "demo"
    assert err.details == {"x": 1}
    assert "demo" in str(err) and "broke" in str(err)
