import pytest

from concat_reach_core.analysis import explore
from concat_reach_core.concat import ConcatMachine
from concat_reach_core.dfa import Dfa
from concat_reach_core.render import describe_dfa, emit, graphviz, transition_table


def test_graphviz(maslov):
    lines = list(graphviz(explore(maslov)))
    assert lines[0] == "digraph {\n"
    assert lines[-1] == "}\n"
    assert '  "(1\',∅)" [shape=doubleoctagon];\n' in lines
    assert '  "(3\',{1})" [shape=circle];\n' in lines
    assert '  "(1\',{3})" [shape=doublecircle];\n' in lines
    assert '  "(1\',∅)" -> "(2\',∅)" [label="a"];\n' in lines
    assert '  "(1\',∅)" -> "(1\',∅)" [label="b"];\n' in lines
    nodes = [line for line in lines if "shape=" in line]
    assert len(nodes) == 20


def test_parallel_edges_are_merged():
    loop = Dfa(1, "ab", {"a": "id", "b": "id"}, finals=[1])
    lines = list(graphviz(explore(ConcatMachine(loop, loop))))
    edges = [line for line in lines if "->" in line]
    assert edges == ['  "(1\',{1})" -> "(1\',{1})" [label="a,b"];\n']


def test_transition_table(maslov):
    lines = list(transition_table(explore(maslov)))
    assert lines[0] == "state\tfinal\ta\tb\n"
    assert lines[1] == "(1',∅)\t0\t(2',∅)\t(1',∅)\n"
    assert len(lines) == 21


def test_emit(maslov):
    assert next(iter(emit(maslov, "dot"))) == "digraph {\n"
    assert next(iter(emit(maslov, "text"))).startswith("state")
    with pytest.raises(ValueError):
        emit(maslov, "svg")


def test_describe_dfa(maslov_a):
    assert describe_dfa(maslov_a) == "A: n=3 initial=1 finals={3} a=[2,3,1] b=[1,2,3]"
