"""Concatenation automata

``ConcatMachine`` is the deterministic pair-state automaton for L(A)L(B):
a state is (focus, subset), the focus being an A-state or empty and the
subset a set of B-states. ``ConcatNfa`` is the plain nondeterministic
construction, kept as an independent oracle.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, Optional, Tuple, Union

from concat_reach_core.dfa import Dfa
from concat_reach_core.errors import AutomatonError
from concat_reach_core.utils import format_state_set, mask_of, states_of

log = logging.getLogger(__name__)

RESTRICTED = "restricted"
UNRESTRICTED = "unrestricted"
MODES = (RESTRICTED, UNRESTRICTED)


@dataclass(frozen=True, order=True)
class PairState:
    """State of the concatenation DFA

    ``focus`` is an A-state, or 0 for the empty focus; ``subset`` is a bitset
    of B-states (state i is bit i-1). The field order is the canonical
    encoding used to sort reports.
    """

    focus: int
    subset: int

    @classmethod
    def of(cls, focus: Optional[int], states: Iterable[int] = ()) -> "PairState":
        return cls(focus or 0, mask_of(states))

    @property
    def has_focus(self) -> bool:
        return self.focus != 0

    @property
    def states(self) -> FrozenSet[int]:
        """B-component as a set"""
        return frozenset(states_of(self.subset))

    def __str__(self) -> str:
        return render_pair(self)


def render_pair(state: PairState) -> str:
    """Render as (2',{1,3}) or (∅,{2})"""
    focus = f"{state.focus}'" if state.has_focus else "∅"
    return f"({focus},{format_state_set(state.states)})"


class ConcatMachine:
    """Pair-state concatenation DFA of A and B, explored lazily

    Args:
        a (Dfa): Left operand
        b (Dfa): Right operand
        mode (str, optional): restricted or unrestricted. Inferred from the
            alphabets when omitted (restricted iff they are equal).
    """

    def __init__(self, a: Dfa, b: Dfa, mode: str = None):
        self._a = a
        self._b = b
        self._alphabet = a.alphabet + tuple(x for x in b.alphabet if x not in a)
        self._shared = tuple(x for x in self._alphabet if x in a and x in b)
        if mode is None:
            mode = RESTRICTED if set(a.alphabet) == set(b.alphabet) else UNRESTRICTED
        if mode not in MODES:
            raise AutomatonError(f"unknown mode {mode!r}, expected one of {', '.join(MODES)}")
        self._mode = mode
        self._bridge = 1 << (b.initial - 1)

    @property
    def a(self) -> Dfa:
        return self._a

    @property
    def b(self) -> Dfa:
        return self._b

    @property
    def alphabet(self) -> Tuple[str, ...]:
        """Union of both alphabets: A's letters first, then B's new letters"""
        return self._alphabet

    @property
    def shared(self) -> Tuple[str, ...]:
        """Letters common to both alphabets"""
        return self._shared

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def bridge_mask(self) -> int:
        """Bitset of B's initial state, added whenever the focus turns final"""
        return self._bridge

    def is_shared_word(self, word: str) -> bool:
        return all(letter in self._a and letter in self._b for letter in word)

    def __repr__(self) -> str:
        return f"ConcatMachine(a={self._a!r}, b={self._b!r}, mode={self._mode!r})"


def initial_pair(machine: ConcatMachine) -> PairState:
    """(1', ∅), or (1', {1}) when A's initial state is final"""
    a = machine.a
    subset = machine.bridge_mask if a.initial in a.finals else 0
    return PairState(a.initial, subset)


def pair_step(machine: ConcatMachine, state: PairState, letter: str) -> PairState:
    """One transition of the concatenation DFA

    Raises:
        AutomatonError: The letter is in neither alphabet
    """
    a, b = machine.a, machine.b
    in_a = letter in a
    in_b = letter in b
    if not (in_a or in_b):
        raise AutomatonError(f"letter {letter!r} outside {''.join(machine.alphabet)!r}")

    subset = b[letter].image_mask(state.subset) if in_b else 0
    if not state.has_focus or not in_a:
        return PairState(0, subset)

    focus = a[letter](state.focus)
    if focus in a.finals:
        subset |= machine.bridge_mask
    return PairState(focus, subset)


def pair_run(machine: ConcatMachine, state: PairState, word: str) -> PairState:
    """Left fold of pair_step over a word

    Raises:
        AutomatonError: A letter is in neither alphabet
    """
    for letter in word:
        state = pair_step(machine, state, letter)
    return state


def pair_accepts(machine: ConcatMachine, state: PairState) -> bool:
    return bool(state.subset & machine.b.final_mask)


def check_pair_state(machine: ConcatMachine, state: PairState):
    """Assert that a final focus carries B's initial state

    Raises:
        AutomatonError: The state violates the invariant
    """
    if state.has_focus and state.focus in machine.a.finals:
        if not state.subset & machine.bridge_mask:
            raise AutomatonError(
                f"state {render_pair(state)} has a final focus without "
                f"B's initial state {machine.b.initial}"
            )


NfaState = Tuple[str, int]


@dataclass(frozen=True)
class ConcatNfa:
    """Nondeterministic concatenation automaton over Q^A ⊎ Q^B

    States are tagged pairs ("A", q) and ("B", q).
    """

    alphabet: Tuple[str, ...]
    states: FrozenSet[NfaState]
    transitions: FrozenSet[Tuple[NfaState, str, NfaState]]
    initials: FrozenSet[NfaState]
    finals: FrozenSet[NfaState]

    def successors(self) -> Dict[Tuple[NfaState, str], FrozenSet[NfaState]]:
        table: Dict[Tuple[NfaState, str], set] = {}
        for source, letter, target in self.transitions:
            table.setdefault((source, letter), set()).add(target)
        return {key: frozenset(value) for key, value in table.items()}


def build_concat_nfa(a: Dfa, b: Dfa) -> ConcatNfa:
    """Concatenation NFA: A's and B's transitions, plus a bridge (q, x, 1)
    whenever q x is final in A; both initial states are initial when A's
    initial state is final"""
    transitions = set()
    for letter in a.alphabet:
        for q in range(1, a.n + 1):
            target = a[letter](q)
            transitions.add((("A", q), letter, ("A", target)))
            if target in a.finals:
                transitions.add((("A", q), letter, ("B", b.initial)))
    for letter in b.alphabet:
        for q in range(1, b.n + 1):
            transitions.add((("B", q), letter, ("B", b[letter](q))))

    initials = {("A", a.initial)}
    if a.initial in a.finals:
        initials.add(("B", b.initial))

    states = {("A", q) for q in range(1, a.n + 1)} | {("B", q) for q in range(1, b.n + 1)}
    alphabet = a.alphabet + tuple(x for x in b.alphabet if x not in a)
    return ConcatNfa(
        alphabet=alphabet,
        states=frozenset(states),
        transitions=frozenset(transitions),
        initials=frozenset(initials),
        finals=frozenset(("B", f) for f in b.finals),
    )


def nfa_accepts(nfa: ConcatNfa, word: str) -> bool:
    """On-the-fly subset simulation"""
    table = nfa.successors()
    current = set(nfa.initials)
    for letter in word:
        current = {t for s in current for t in table.get((s, letter), ())}
    return bool(current & nfa.finals)


Machine = Union[ConcatNfa, ConcatMachine, Dfa]


def _automaton(machine: Machine) -> Tuple[Tuple[str, ...], object, Callable, Callable]:
    if isinstance(machine, ConcatMachine):
        return (
            machine.alphabet,
            initial_pair(machine),
            lambda state, letter: pair_step(machine, state, letter),
            lambda state: pair_accepts(machine, state),
        )
    if isinstance(machine, ConcatNfa):
        table = machine.successors()
        return (
            machine.alphabet,
            frozenset(machine.initials),
            lambda state, letter: frozenset(t for s in state for t in table.get((s, letter), ())),
            lambda state: bool(state & machine.finals),
        )
    if isinstance(machine, Dfa):
        return (
            machine.alphabet,
            machine.initial,
            lambda state, letter: machine[letter](state),
            lambda state: state in machine.finals,
        )
    raise TypeError(f"unsupported machine: {type(machine).__name__}")


def _layers(machine: Machine, k: int) -> Iterator[Tuple[str, bool]]:
    alphabet, start, step, accepting = _automaton(machine)
    layer = [("", start)]
    for length in range(k + 1):
        for word, state in layer:
            yield word, accepting(state)
        if length == k:
            break
        layer = [(word + x, step(state, x)) for word, state in layer for x in alphabet]


def bounded_language(machine: Machine, k: int) -> FrozenSet[str]:
    """All accepted words of length at most k

    Args:
        machine (Machine): Concatenation DFA, concatenation NFA (simulated by
            on-the-fly subset construction) or a plain DFA
        k (int): Maximum word length (>= 0)
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return frozenset(word for word, accepted in _layers(machine, k) if accepted)


def concatenation_oracle(a: Dfa, b: Dfa, k: int) -> FrozenSet[str]:
    """{ uv : u in L(A), v in L(B), |uv| <= k } by double enumeration"""
    left = bounded_language(a, k)
    right_by_length: Dict[int, list] = {}
    for v in bounded_language(b, k):
        right_by_length.setdefault(len(v), []).append(v)
    words = set()
    for u in left:
        for length in range(k - len(u) + 1):
            words.update(u + v for v in right_by_length.get(length, ()))
    return frozenset(words)
