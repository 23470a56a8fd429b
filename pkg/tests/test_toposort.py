import pytest

from concat_reach_core.certificates.toposort import find_cycle, toposort
from concat_reach_core.errors import CertificateError, CyclicConstraintError


def test_smallest_available_node_first():
    graph = {1: [], 2: [1], 3: [], 4: [2]}
    assert toposort(graph) == [3, 4, 2, 1]


def test_empty_graph():
    assert toposort({}) == []


def test_cycle_is_reported_in_edge_direction():
    graph = {1: [2], 2: [3], 3: [1], 4: [1]}
    with pytest.raises(CyclicConstraintError) as excinfo:
        toposort(graph)
    cycle = excinfo.value.cycle
    assert cycle[0] == cycle[-1]
    assert set(cycle) == {1, 2, 3}
    for source, target in zip(cycle, cycle[1:]):
        assert target in graph[source]
    assert str(excinfo.value).startswith("constraint cycle: ")
    assert isinstance(excinfo.value, CertificateError)


def test_find_cycle_skips_nodes_hanging_off_the_cycle():
    graph = {1: [2], 2: [1, 3], 3: []}
    assert find_cycle(graph, {1, 2}) == [2, 1, 2]


def test_cycle_of_three():
    graph = {1: [2], 2: [3], 3: [1], 4: [1]}
    assert find_cycle(graph, {1, 2, 3}) == [2, 3, 1, 2]
