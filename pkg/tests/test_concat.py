import pytest

from concat_reach_core.concat import (
    RESTRICTED,
    UNRESTRICTED,
    ConcatMachine,
    PairState,
    bounded_language,
    build_concat_nfa,
    check_pair_state,
    concatenation_oracle,
    initial_pair,
    nfa_accepts,
    pair_accepts,
    pair_run,
    pair_step,
    render_pair,
)
from concat_reach_core.dfa import Dfa, random_dfa
from concat_reach_core.errors import AutomatonError


def test_render_pair():
    assert render_pair(PairState.of(2, [3, 1])) == "(2',{1,3})"
    assert render_pair(PairState.of(None, [2])) == "(∅,{2})"
    assert str(PairState.of(1)) == "(1',∅)"


def test_pair_state_ordering():
    states = [PairState.of(2, [1]), PairState.of(None, [3]), PairState.of(1, [1, 2])]
    assert sorted(states)[0] == PairState.of(None, [3])
    assert PairState.of(1, [1, 2]).states == frozenset({1, 2})


def test_initial_pair(maslov, maslov_b):
    assert initial_pair(maslov) == PairState.of(1)
    a = Dfa(2, "ab", {"a": "(1,2)", "b": "id"}, finals=[1])
    assert initial_pair(ConcatMachine(a, maslov_b)) == PairState.of(1, [1])


def test_pair_step(maslov):
    state = pair_run(maslov, initial_pair(maslov), "aa")
    assert state == PairState.of(3, [1])
    assert pair_step(maslov, state, "b") == PairState.of(3, [1, 2])
    assert pair_step(maslov, PairState.of(1, [2]), "a") == PairState.of(2, [3])
    with pytest.raises(AutomatonError):
        pair_step(maslov, state, "c")


def test_final_focus_always_carries_initial_state(maslov):
    state = initial_pair(maslov)
    for letter in "aabababbaab":
        state = pair_step(maslov, state, letter)
        check_pair_state(maslov, state)
    with pytest.raises(AutomatonError):
        check_pair_state(maslov, PairState.of(3, [2]))


def test_mode_inference(maslov_a, maslov_b):
    assert ConcatMachine(maslov_a, maslov_b).mode == RESTRICTED
    b = Dfa(2, "bc", {"b": "id", "c": "(1,2)"}, finals=[2])
    machine = ConcatMachine(maslov_a, b)
    assert machine.mode == UNRESTRICTED
    assert machine.alphabet == ("a", "b", "c")
    assert machine.shared == ("b",)
    assert machine.is_shared_word("bb")
    assert not machine.is_shared_word("ab")
    assert ConcatMachine(maslov_a, maslov_b, mode=UNRESTRICTED).mode == UNRESTRICTED
    with pytest.raises(AutomatonError):
        ConcatMachine(maslov_a, maslov_b, mode="other")


def test_letters_outside_a_drop_the_focus(maslov_a):
    b = Dfa(2, "bc", {"b": "id", "c": "(1,2)"}, finals=[2])
    machine = ConcatMachine(maslov_a, b)
    state = pair_run(machine, initial_pair(machine), "aa")
    assert state == PairState.of(3, [1])
    assert pair_step(machine, state, "c") == PairState.of(None, [2])
    # a letter missing from B empties the subset
    assert pair_step(machine, PairState.of(None, [2]), "a") == PairState.of(None)


def test_acceptance(maslov):
    assert pair_accepts(maslov, PairState.of(None, [3]))
    assert not pair_accepts(maslov, PairState.of(3, [1, 2]))


def test_concat_nfa(maslov_a, maslov_b):
    nfa = build_concat_nfa(maslov_a, maslov_b)
    assert ("A", 1) in nfa.initials and len(nfa.initials) == 1
    assert (("A", 2), "a", ("B", 1)) in nfa.transitions
    assert nfa_accepts(nfa, "aabb")
    assert not nfa_accepts(nfa, "aab")


def test_single_state_loops():
    a = Dfa(1, "a", {"a": "id"}, finals=[1])
    b = Dfa(1, "a", {"a": "id"}, finals=[1])
    machine = ConcatMachine(a, b)
    expected = frozenset({"", "a", "aa"})
    assert bounded_language(machine, 2) == expected
    assert bounded_language(build_concat_nfa(a, b), 2) == expected
    assert concatenation_oracle(a, b, 2) == expected


def test_maslov_languages_agree(maslov_a, maslov_b, maslov):
    k = 8
    words = bounded_language(maslov, k)
    assert words == bounded_language(build_concat_nfa(maslov_a, maslov_b), k)
    assert words == concatenation_oracle(maslov_a, maslov_b, k)
    assert "aabb" in words


def test_bounded_language_rejects_negative(maslov):
    with pytest.raises(ValueError):
        bounded_language(maslov, -1)


def test_random_pairs_three_way_equality(rng):
    alphabets = ["ab", "ab", "abc", "bc", "a"]
    for _ in range(200):
        a = random_dfa(rng, rng.randint(1, 5), rng.choice(alphabets))
        b = random_dfa(rng, rng.randint(1, 5), rng.choice(alphabets))
        k = min(a.n + b.n + 2, 7)
        machine = ConcatMachine(a, b)
        words = bounded_language(machine, k)
        assert words == bounded_language(build_concat_nfa(a, b), k), (a, b)
        assert words == concatenation_oracle(a, b, k), (a, b)
