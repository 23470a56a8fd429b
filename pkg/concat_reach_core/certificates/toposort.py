"""Topological sorting of the must-precede constraint graph"""
import heapq
from typing import Dict, Iterable, List, Set

from concat_reach_core.errors import CyclicConstraintError


def toposort(graph: Dict[int, Iterable[int]]) -> List[int]:
    """Kahn's algorithm, taking the smallest available node first

    Args:
        graph (Dict[int, Iterable[int]]): Node to the nodes that must come
            after it. Every node appears as a key.

    Returns:
        List[int]: Nodes in an order respecting every edge

    Raises:
        CyclicConstraintError: The graph contains a cycle
    """
    indegree = {node: 0 for node in graph}
    for targets in graph.values():
        for target in targets:
            indegree[target] += 1

    ready = [node for node, degree in indegree.items() if degree == 0]
    heapq.heapify(ready)
    ordered = []
    while ready:
        node = heapq.heappop(ready)
        ordered.append(node)
        for target in graph[node]:
            indegree[target] -= 1
            if indegree[target] == 0:
                heapq.heappush(ready, target)

    if len(ordered) != len(graph):
        remaining = {node for node, degree in indegree.items() if degree > 0}
        raise CyclicConstraintError(find_cycle(graph, remaining))
    return ordered


def find_cycle(graph: Dict[int, Iterable[int]], remaining: Set[int]) -> List[int]:
    """Closed walk inside the nodes Kahn's algorithm could not remove

    Every such node keeps a predecessor among them, so walking predecessors
    from any of them must revisit a node. The walk is returned in edge
    direction, first node repeated at the end.
    """
    predecessors: Dict[int, List[int]] = {node: [] for node in remaining}
    for source, targets in graph.items():
        if source not in remaining:
            continue
        for target in targets:
            if target in remaining:
                predecessors[target].append(source)

    node = min(remaining)
    seen: Dict[int, int] = {}
    walk = []
    while node not in seen:
        seen[node] = len(walk)
        walk.append(node)
        node = min(predecessors[node])
    cycle = walk[seen[node]:]
    cycle.reverse()
    return cycle + [cycle[0]]
