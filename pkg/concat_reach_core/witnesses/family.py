"""Witness family interface"""
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, Type

from concat_reach_core.certificates.model import Certificate
from concat_reach_core.concat import RESTRICTED, ConcatMachine, PairState, initial_pair, pair_run
from concat_reach_core.dfa import Dfa, word_text
from concat_reach_core.errors import CertificateError, FamilyConstraintError
from concat_reach_core.utils import format_state_set

log = logging.getLogger(__name__)

FAMILIES: Dict[str, Type["WitnessFamily"]] = {}


def register(cls: Type["WitnessFamily"]) -> Type["WitnessFamily"]:
    """Class decorator adding a family to the catalog under its name"""
    if cls.name in FAMILIES:
        raise ValueError(f"duplicate witness family: {cls.name}")
    FAMILIES[cls.name] = cls
    return cls


class WitnessFamily(ABC):
    """Parameterised pair of DFAs (A_m, B_n) attaining a concatenation bound

    Subclasses declare the operands, the claimed count and, for families
    whose reachability follows from a construction set, the certificate.
    """

    name = ""
    description = ""
    mode = RESTRICTED
    min_m = 3
    min_n = 3
    exact_reachable = False
    erratum = ""

    @property
    def negative(self) -> bool:
        """The construction-set technique does not apply to this family"""
        return type(self).certificate is WitnessFamily.certificate

    def check(self, m: int, n: int, **extras):
        """Validate the parameters

        Raises:
            FamilyConstraintError: A constraint of the family is violated
        """
        if m < self.min_m:
            raise FamilyConstraintError(f"{self.name}: requires m >= {self.min_m}, got m={m}")
        if n < self.min_n:
            raise FamilyConstraintError(f"{self.name}: requires n >= {self.min_n}, got n={n}")
        unknown = sorted(set(extras) - set(self.extra_names()))
        if unknown:
            raise FamilyConstraintError(
                f"{self.name}: unknown parameters: {', '.join(unknown)}"
            )

    def extra_names(self) -> Sequence[str]:
        return ()

    def build(self, m: int, n: int, **extras) -> Tuple[Dfa, Dfa]:
        """Operands A_m and B_n after checking the constraints"""
        self.check(m, n, **extras)
        return self.operands(m, n, **extras)

    def machine(self, m: int, n: int, **extras) -> ConcatMachine:
        a, b = self.build(m, n, **extras)
        return ConcatMachine(a, b)

    @abstractmethod
    def operands(self, m: int, n: int, **extras) -> Tuple[Dfa, Dfa]:
        """Build the operands (constraints already checked)"""

    @abstractmethod
    def formula(self, m: int, n: int) -> int:
        """Claimed state complexity of the concatenation"""

    def class_count(self, m: int, n: int) -> int:
        """Distinguishability classes the operands actually give; differs from
        formula(m, n) only for families carrying an erratum"""
        return self.formula(m, n)

    def certificate(self, m: int, n: int, **extras) -> Certificate:
        """Construction-set certificate of the reachability proof

        Raises:
            CertificateError: The technique is not applicable to this family
                or at this size
        """
        raise CertificateError(f"{self.name}: construction-set technique not applicable")

    def technique(self, m: int, n: int) -> Optional[str]:
        """Tag of the completeness condition the certificate is expected to
        meet first, None for negative families"""
        return None

    def is_exact(self, m: int, n: int) -> bool:
        """True if BFS on the concatenation DFA reaches exactly formula(m, n)
        states (otherwise only the distinguishability classes match)"""
        return self.exact_reachable

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"


def construction_set(
    family: str,
    machine: ConcatMachine,
    focus: int,
    base: Iterable[int],
    target: Iterable[int],
    words: Iterable[str],
    base_word: str,
) -> Certificate:
    """Assemble a certificate, finding the state each word adds by simulation

    Base states receive ε.

    Raises:
        CertificateError: The base word misses (focus, base), a word is not a
            q-word for a fresh target state, or the target stays uncovered
    """
    base = frozenset(base)
    target = frozenset(target)
    start = PairState.of(focus, base)

    reached = pair_run(machine, initial_pair(machine), base_word)
    if reached != start:
        raise CertificateError(
            f"{family}: not applicable, base word {word_text(base_word)} reaches {reached}, "
            f"expected {start}"
        )

    entries: Dict[int, str] = {q: "" for q in sorted(base)}
    for word in words:
        state = pair_run(machine, start, word)
        added = state.states - base
        if state.focus != focus or not state.states >= base or len(added) != 1:
            raise CertificateError(
                f"{family}: not applicable, {word_text(word)} leads from {start} to {state}"
            )
        (q,) = added
        if q not in target or q in entries:
            raise CertificateError(
                f"{family}: not applicable, {word_text(word)} adds state {q} twice or "
                f"outside the target {format_state_set(target)}"
            )
        entries[q] = word
        log.debug("%s: %s is a %s-word", family, word_text(word), q)

    if set(entries) != target:
        raise CertificateError(
            f"{family}: not applicable, words cover {format_state_set(entries)} "
            f"instead of {format_state_set(target)}"
        )
    return Certificate(focus, base, target, entries, base_word=base_word)


def extras_text(extras: Dict[str, Any]) -> str:
    return " ".join(f"{key}={value}" for key, value in sorted(extras.items()))
