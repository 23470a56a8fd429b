"""Brute-force oracles: reachability, distinguishability and bounds"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from concat_reach_core.concat import (
    RESTRICTED,
    UNRESTRICTED,
    ConcatMachine,
    PairState,
    initial_pair,
    pair_accepts,
    pair_step,
    render_pair,
)
from concat_reach_core.dfa import Dfa
from concat_reach_core.errors import AutomatonError
from concat_reach_core.utils import EMPTY_SET

log = logging.getLogger(__name__)


@dataclass
class ReachGraph:
    """Reachable part of a concatenation DFA in BFS order

    ``successors[i][j]`` is the index of the state reached from state i by
    the j-th letter of the machine's alphabet; ``parents[i]`` is the
    (state index, letter) the state was discovered from.
    """

    machine: ConcatMachine
    states: List[PairState]
    index: Dict[PairState, int]
    successors: List[Tuple[int, ...]]
    parents: List[Optional[Tuple[int, str]]]

    def accepting(self) -> List[bool]:
        return [pair_accepts(self.machine, s) for s in self.states]


def explore(machine: ConcatMachine) -> ReachGraph:
    """Breadth-first closure of the initial pair; letters in declared order"""
    start = initial_pair(machine)
    states = [start]
    index = {start: 0}
    parents: List[Optional[Tuple[int, str]]] = [None]
    successors: List[Tuple[int, ...]] = []
    queue = deque([0])
    while queue:
        current = queue.popleft()
        row = []
        for letter in machine.alphabet:
            target = pair_step(machine, states[current], letter)
            position = index.get(target)
            if position is None:
                position = len(states)
                index[target] = position
                states.append(target)
                parents.append((current, letter))
                queue.append(position)
            row.append(position)
        successors.append(tuple(row))
    log.debug("Explored %d reachable pair states", len(states))
    return ReachGraph(machine, states, index, successors, parents)


def reachable_states(machine: ConcatMachine) -> FrozenSet[PairState]:
    return frozenset(explore(machine).states)


def refine(accepting: Sequence[bool], successors: Sequence[Sequence[int]]) -> List[int]:
    """Moore partition refinement

    Starts from the final/non-final split and refines by successor blocks
    until the number of blocks is stable.

    Returns:
        List[int]: Block number of each item (numbered by first occurrence)
    """
    blocks = [1 if flag else 0 for flag in accepting]
    count = len(set(blocks))
    while True:
        numbering: Dict[Tuple[int, Tuple[int, ...]], int] = {}
        refined = []
        for item, block in enumerate(blocks):
            signature = (block, tuple(blocks[t] for t in successors[item]))
            refined.append(numbering.setdefault(signature, len(numbering)))
        blocks = refined
        if len(numbering) == count:
            return blocks
        count = len(numbering)


def _partition(items: Sequence, blocks: Sequence[int]) -> List[FrozenSet]:
    grouped: Dict[int, list] = {}
    for item, block in zip(items, blocks):
        grouped.setdefault(block, []).append(item)
    return [frozenset(members) for _, members in sorted(grouped.items())]


def distinguishability_classes(
    machine: ConcatMachine, states: FrozenSet[PairState]
) -> List[FrozenSet[PairState]]:
    """Coarsest partition of a closed state set that separates accepting
    from rejecting states and is stable under every letter

    Raises:
        AutomatonError: The states are not closed under the transitions
    """
    ordered = sorted(states)
    index = {s: i for i, s in enumerate(ordered)}
    successors = []
    for s in ordered:
        row = []
        for letter in machine.alphabet:
            target = pair_step(machine, s, letter)
            if target not in index:
                raise AutomatonError(
                    f"state set not closed: {render_pair(s)} --{letter}--> {render_pair(target)}"
                )
            row.append(index[target])
        successors.append(row)
    blocks = refine([pair_accepts(machine, s) for s in ordered], successors)
    return _partition(ordered, blocks)


def minimize(d: Dfa) -> List[FrozenSet[int]]:
    """Classes of equivalent reachable states of a DFA"""
    order = [d.initial]
    seen = {d.initial}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for letter in d.alphabet:
            target = d[letter](q)
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    index = {q: i for i, q in enumerate(order)}
    successors = [[index[d[letter](q)] for letter in d.alphabet] for q in order]
    blocks = refine([q in d.finals for q in order], successors)
    return _partition(order, blocks)


def minimize_count(d: Dfa) -> int:
    """Number of states of the minimal DFA of L(d)"""
    return len(minimize(d))


def upper_bound(m: int, n: int, k: int, mode: str) -> int:
    """Reachable-state bound for a concatenation DFA with |F^A| = k

    unrestricted: (m+1-k)2^n + k 2^(n-1); restricted: (m-k)2^n + k 2^(n-1)

    Raises:
        ValueError: m or n below 1, k outside 1..m, or an unknown mode
    """
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got m={m} n={n}")
    if not 1 <= k <= m:
        raise ValueError(f"k must lie in 1..{m}, got {k}")
    if mode == RESTRICTED:
        return (m - k) * 2**n + k * 2 ** (n - 1)
    if mode == UNRESTRICTED:
        return (m + 1 - k) * 2**n + k * 2 ** (n - 1)
    raise ValueError(f"unknown mode {mode!r}")


def shortest_reach_word(machine: ConcatMachine, target: PairState) -> Optional[str]:
    """Shortest word (alphabet-least among the shortest) reaching target
    from the initial pair, None if unreachable"""
    graph = explore(machine)
    position = graph.index.get(target)
    if position is None:
        return None
    letters = []
    while graph.parents[position] is not None:
        position, letter = graph.parents[position]
        letters.append(letter)
    return "".join(reversed(letters))


def focus_key(state: PairState) -> str:
    return f"{state.focus}'" if state.has_focus else EMPTY_SET


@dataclass
class ReachReport:
    """Reachability and distinguishability summary of a concatenation DFA"""

    reachable_count: int
    class_count: int
    mode: str
    bound: Optional[int]
    by_focus: Dict[str, int] = field(default_factory=dict)
    states: List[PairState] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reachable": self.reachable_count,
            "classes": self.class_count,
            "mode": self.mode,
            "bound": self.bound,
            "by_focus": dict(self.by_focus),
            "states": [[s.focus, s.subset] for s in self.states],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReachReport":
        return cls(
            reachable_count=data["reachable"],
            class_count=data["classes"],
            mode=data["mode"],
            bound=data["bound"],
            by_focus=dict(data["by_focus"]),
            states=[PairState(focus, subset) for focus, subset in data["states"]],
        )


def reach_report(machine: ConcatMachine) -> ReachReport:
    """BFS plus Moore refinement on the reachable pair graph"""
    graph = explore(machine)
    blocks = refine(graph.accepting(), graph.successors)

    by_focus: Dict[str, int] = {}
    for s in sorted(graph.states):
        key = focus_key(s)
        by_focus[key] = by_focus.get(key, 0) + 1

    k = len(machine.a.finals)
    bound = upper_bound(machine.a.n, machine.b.n, k, machine.mode) if k else None
    report = ReachReport(
        reachable_count=len(graph.states),
        class_count=len(set(blocks)),
        mode=machine.mode,
        bound=bound,
        by_focus=by_focus,
        states=graph.states,
    )
    log.info(
        "Reachable=%d classes=%d bound=%s (%s)",
        report.reachable_count,
        report.class_count,
        report.bound,
        report.mode,
    )
    return report
