"""Reach-word synthesis from a complete construction set"""
import logging
from typing import AbstractSet, Dict, Sequence

from concat_reach_core.certificates.completeness import check_complete_with_order, start_state
from concat_reach_core.certificates.model import Certificate
from concat_reach_core.concat import ConcatMachine, PairState, pair_run, render_pair
from concat_reach_core.errors import CertificateError
from concat_reach_core.utils import format_state_set

log = logging.getLogger(__name__)


def synthesize_reach_word(
    machine: ConcatMachine, c: Certificate, order: Sequence[int], states: AbstractSet[int]
) -> str:
    """Word leading from (s', B) to (s', S) for any S between base and target

    The smallest state p of S \\ B (in the completeness order) is added last
    by W[p]; every other new state is obtained as the image of its least
    in-target preimage under W[p], which is built recursively first.

    Args:
        machine (ConcatMachine): Concatenation DFA
        c (Certificate): Valid construction set
        order (Sequence[int]): Completeness order of the target
        states (AbstractSet[int]): The set S

    Returns:
        str: Word u with (s', B) u = (s', S)

    Raises:
        CertificateError: S is not between base and target, or the order
            does not witness completeness
    """
    states = frozenset(states)
    if not c.base <= states <= c.target:
        raise CertificateError(
            f"set {format_state_set(states)} is not between base "
            f"{format_state_set(c.base)} and target {format_state_set(c.target)}"
        )
    if not check_complete_with_order(machine, c, order):
        raise CertificateError(
            f"order {' '.join(map(str, order))} does not witness completeness"
        )

    rank: Dict[int, int] = {q: position for position, q in enumerate(order)}
    transformations = {p: machine.b.word_transformation(w) for p, w in c.entries.items()}
    targets = sorted(c.target)

    def build(current: frozenset) -> str:
        remaining = current - c.base
        if not remaining:
            return ""
        p = min(remaining, key=rank.__getitem__)
        t = transformations[p]
        preimages = set()
        for q in remaining - {p}:
            preimages.add(next(s for s in targets if t(s) == q))
        return build(frozenset(preimages - c.base) | c.base) + c.entries[p]

    word = build(states)
    reached = pair_run(machine, start_state(c), word)
    log.debug("Synthesized %r reaching %s", word, render_pair(reached))
    if reached != PairState.of(c.focus, states):
        raise CertificateError(
            f"synthesized word {word!r} reaches {render_pair(reached)}, "
            f"not ({c.focus}',{format_state_set(states)})"
        )
    return word
