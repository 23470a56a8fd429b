"""Text and DOT emission of the reachable concatenation DFA"""
from typing import Iterator

from concat_reach_core.analysis import ReachGraph, explore
from concat_reach_core.concat import ConcatMachine, pair_accepts, render_pair
from concat_reach_core.dfa import Dfa
from concat_reach_core.transformation import format_transformation


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r"\""))


def graphviz(graph: ReachGraph) -> Iterator[str]:
    """Produce the reachable pair-state graph as DOT lines

    The initial state gets a double octagon, accepting states a double
    circle. Parallel edges are merged into one labelled with every letter.

    Use like so::

        with open("concat.dot", "w") as f:
            f.writelines(graphviz(explore(machine)))
    """
    machine = graph.machine
    yield "digraph {\n"
    yield "  rankdir=LR;\n"
    for position, state in enumerate(graph.states):
        if position == 0:
            shape = "doubleoctagon"
        elif pair_accepts(machine, state):
            shape = "doublecircle"
        else:
            shape = "circle"
        yield "  {} [shape={}];\n".format(_gvquote(render_pair(state)), shape)

    for position, row in enumerate(graph.successors):
        labels = {}
        for letter, target in zip(machine.alphabet, row):
            labels.setdefault(target, []).append(letter)
        for target, letters in labels.items():
            yield "  {} -> {} [label={}];\n".format(
                _gvquote(render_pair(graph.states[position])),
                _gvquote(render_pair(graph.states[target])),
                _gvquote(",".join(letters)),
            )
    yield "}\n"


def transition_table(graph: ReachGraph) -> Iterator[str]:
    """One TSV row per reachable state: state, accepting flag, then the
    successor under each letter"""
    machine = graph.machine
    yield "\t".join(("state", "final", *machine.alphabet)) + "\n"
    for position, row in enumerate(graph.successors):
        state = graph.states[position]
        cells = [render_pair(state), "1" if pair_accepts(machine, state) else "0"]
        cells.extend(render_pair(graph.states[target]) for target in row)
        yield "\t".join(cells) + "\n"


def emit(machine: ConcatMachine, emit_format: str = "text") -> Iterator[str]:
    """Emit the reachable part of the machine as ``text`` or ``dot``"""
    graph = explore(machine)
    if emit_format == "dot":
        return graphviz(graph)
    if emit_format == "text":
        return transition_table(graph)
    raise ValueError(f"unknown emit format: {emit_format}")


def describe_dfa(d: Dfa) -> str:
    """One-line summary used in verbose reports"""
    letters = " ".join(
        f"{letter}={format_transformation(d[letter])}" for letter in d.alphabet
    )
    finals = ",".join(str(q) for q in sorted(d.finals))
    return f"{d.name}: n={d.n} initial={d.initial} finals={{{finals}}} {letters}"
