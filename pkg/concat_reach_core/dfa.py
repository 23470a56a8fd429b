"""Deterministic finite automata and word-induced relations

States are 1-based integers; words are strings of single-character letters.
A word with a letter outside the alphabet induces the empty relation.
"""
import logging
import random
import re
from types import MappingProxyType
from typing import AbstractSet, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple

from concat_reach_core.errors import AutomatonError
from concat_reach_core.transformation import (
    MAX_STATES,
    Spec,
    Transformation,
    make_transformation,
)
from concat_reach_core.utils import generate_name, mask_of, states_of

log = logging.getLogger(__name__)

EPSILON = "ε"

_WORD_TOKEN = re.compile(r"\s*(?:(?P<open>\()|(?P<close>\))|(?P<power>\^\s*\d+)|(?P<letter>[^\s()^]))")


class Dfa:
    """Complete DFA over states 1..n

    Args:
        n (int): Number of states
        alphabet (Sequence[str]): Ordered letters (single characters)
        delta (Mapping[str, Spec]): Transformation (or notation) per letter
        initial (int): Initial state. Defaults to 1
        finals (Iterable[int]): Final states
        name (str, optional): Name used in reports. Generated when omitted.

    Raises:
        AutomatonError: Invalid sizes, letters or states
    """

    def __init__(
        self,
        n: int,
        alphabet: Sequence[str],
        delta: Mapping[str, Spec],
        initial: int = 1,
        finals: Iterable[int] = (),
        name: str = None,
    ):
        if not 1 <= n <= MAX_STATES:
            raise AutomatonError(f"DFAs need between 1 and {MAX_STATES} states, got {n}")
        alphabet = tuple(alphabet)
        for letter in alphabet:
            if len(letter) != 1 or letter.isspace() or letter in "()^" or letter == EPSILON:
                raise AutomatonError(f"invalid letter: {letter!r}")
        if len(set(alphabet)) != len(alphabet):
            raise AutomatonError(f"alphabet repeats a letter: {' '.join(alphabet)}")
        missing = [a for a in alphabet if a not in delta]
        if missing:
            raise AutomatonError(f"no transformation for letters: {' '.join(missing)}")
        undeclared = sorted(set(delta) - set(alphabet))
        if undeclared:
            raise AutomatonError(f"transformations for undeclared letters: {' '.join(undeclared)}")
        if not 1 <= initial <= n:
            raise AutomatonError(f"initial state {initial} outside 1..{n}")
        finals = frozenset(finals)
        outside = sorted(q for q in finals if not 1 <= q <= n)
        if outside:
            raise AutomatonError(f"final states {outside} outside 1..{n}")

        self._n = n
        self._alphabet = alphabet
        self._delta = {a: make_transformation(delta[a], n) for a in alphabet}
        self._initial = initial
        self._finals = finals
        self._final_mask = mask_of(finals)
        self._name = name or generate_name("dfa")

    @property
    def n(self) -> int:
        """Number of states"""
        return self._n

    @property
    def alphabet(self) -> Tuple[str, ...]:
        """Letters in declared order"""
        return self._alphabet

    @property
    def delta(self) -> Mapping[str, Transformation]:
        """Read-only letter to transformation map"""
        return MappingProxyType(self._delta)

    @property
    def initial(self) -> int:
        return self._initial

    @property
    def finals(self) -> FrozenSet[int]:
        return self._finals

    @property
    def final_mask(self) -> int:
        """Final states as a bitset"""
        return self._final_mask

    @property
    def full_mask(self) -> int:
        """All states as a bitset"""
        return (1 << self._n) - 1

    @property
    def name(self) -> str:
        return self._name

    def __contains__(self, letter: str) -> bool:
        return letter in self._delta

    def __getitem__(self, letter: str) -> Transformation:
        return self._delta[letter]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self._n == other._n
            and self._alphabet == other._alphabet
            and self._delta == other._delta
            and self._initial == other._initial
            and self._finals == other._finals
        )

    def __hash__(self) -> int:
        return hash((self._n, self._alphabet, self._initial, self._finals))

    def __repr__(self) -> str:
        return f"Dfa(name={self._name!r}, n={self._n}, alphabet={''.join(self._alphabet)!r})"

    def on_alphabet(self, word: str) -> bool:
        """True if every letter of the word belongs to the alphabet"""
        return all(letter in self._delta for letter in word)

    def run(self, state: int, word: str) -> Optional[int]:
        """State reached from ``state`` by ``word``, None if off-alphabet"""
        for letter in word:
            t = self._delta.get(letter)
            if t is None:
                return None
            state = t(state)
        return state

    def image_mask(self, mask: int, word: str) -> int:
        """Image of a bitset under a word (0 if off-alphabet)"""
        for letter in word:
            t = self._delta.get(letter)
            if t is None:
                return 0
            mask = t.image_mask(mask)
        return mask

    def word_transformation(self, word: str) -> Optional[Transformation]:
        """Transformation induced by a word, None if off-alphabet"""
        images = []
        for state in range(1, self._n + 1):
            image = self.run(state, word)
            if image is None:
                return None
            images.append(image)
        return Transformation(tuple(images))

    def accepts(self, word: str) -> bool:
        state = self.run(self._initial, word)
        return state is not None and state in self._finals


def image_of_set(d: Dfa, states: AbstractSet[int], word: str) -> FrozenSet[int]:
    """Image S w of a state set; empty if the word leaves the alphabet"""
    return frozenset(states_of(d.image_mask(mask_of(states), word)))


def preimage(d: Dfa, q: int, word: str) -> FrozenSet[int]:
    """States s with {s} w = {q}; empty if the word leaves the alphabet"""
    t = d.word_transformation(word)
    if t is None:
        return frozenset()
    return frozenset(s for s, image in enumerate(t.images, start=1) if image == q)


def acts_as_permutation(d: Dfa, word: str, states: AbstractSet[int]) -> bool:
    """True if S w = S"""
    return image_of_set(d, states, word) == frozenset(states)


def word_text(word: str) -> str:
    """Render a word, using ε for the empty word"""
    return word if word else EPSILON


def power(word: str, k: int) -> str:
    """k-fold repetition of a word (ε for k = 0)"""
    if k < 0:
        raise ValueError(f"negative power: {k}")
    return word * k


def expand_word(text: str) -> str:
    """Expand word notation with powers and groups, e.g. ``a^3(ab)^2c``

    ``ε`` and the empty string denote the empty word.

    Raises:
        ValueError: Unbalanced parentheses, a dangling power or an unexpected
            character
    """
    text = text.replace(EPSILON, "").strip()
    stack = [[]]
    position = 0
    while position < len(text):
        match = _WORD_TOKEN.match(text, position)
        if not match:
            raise ValueError(f"unexpected character at {position} in word {text!r}")
        position = match.end()
        if match.group("open"):
            stack.append([])
        elif match.group("close"):
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in word {text!r}")
            group = "".join(stack.pop())
            stack[-1].append(group)
        elif match.group("power"):
            if not stack[-1]:
                raise ValueError(f"power without a base in word {text!r}")
            exponent = int(match.group("power").lstrip("^").strip())
            stack[-1][-1] = stack[-1][-1] * exponent
        else:
            stack[-1].append(match.group("letter"))
    if len(stack) != 1:
        raise ValueError(f"unbalanced '(' in word {text!r}")
    return "".join(stack[0])


def random_dfa(
    rng: random.Random,
    n: int,
    alphabet: Sequence[str],
    final_probability: float = 0.3,
    name: str = None,
) -> Dfa:
    """Random complete DFA with at least one final state"""
    delta = {
        letter: Transformation(tuple(rng.randint(1, n) for _ in range(n)))
        for letter in alphabet
    }
    finals = {q for q in range(1, n + 1) if rng.random() < final_probability}
    if not finals:
        finals = {rng.randint(1, n)}
    d = Dfa(n, alphabet, delta, finals=finals, name=name or generate_name("dfa"))
    log.debug("Generated %r with finals %s", d, sorted(finals))
    return d
