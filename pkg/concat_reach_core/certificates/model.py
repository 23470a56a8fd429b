"""Certificates, completeness verdicts and the certificate text format

::

    cert
    focus 2'
    base {1,n}
    target {1..n}
    baseword cab
    entry 2: d
    entry 3: db
    order 1 n 2 3

``n`` is resolved against the state count of the right operand. An entry
written as ``ε`` (or left empty) is the empty word; base states without an
explicit entry receive ε.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from concat_reach_core.dfa import expand_word, word_text
from concat_reach_core.errors import CertificateError, ParseError
from concat_reach_core.utils import format_state_set, parse_point, parse_state_set, to_str

log = logging.getLogger(__name__)

VIA_GIVEN_ORDER = "given-order"
VIA_DECIDED = "decided"
VIA_PERM_ALL = "cor-perm-all"
VIA_PERM_ALL_BUT_ONE = "cor-perm-all-but-one"
VIA_LEMMA = "lem-complete"
VIA_EPS_PERM = "lem-eps-perm"


def via_form(number: int) -> str:
    """Tag of one of the four corollary forms"""
    return f"cor-complete-form-{number}"


VIA_TAGS = (
    VIA_GIVEN_ORDER,
    VIA_DECIDED,
    *(via_form(i) for i in range(1, 5)),
    VIA_PERM_ALL,
    VIA_PERM_ALL_BUT_ONE,
    VIA_LEMMA,
    VIA_EPS_PERM,
)


@dataclass
class Certificate:
    """Construction set together with its focus, base and target

    Args:
        focus (int): Fixed A-state s'
        base (Iterable[int]): B-states present from the start
        target (Iterable[int]): B-states the construction set covers
        entries (Mapping[int, str]): One q-word per target state
        order (Iterable[int], optional): Claimed completeness order on target
        base_word (str, optional): Word reaching (focus, base) from the
            initial pair state

    Raises:
        CertificateError: base is not inside target, the entries do not cover
            exactly the target or the order is not a permutation of it
    """

    focus: int
    base: FrozenSet[int]
    target: FrozenSet[int]
    entries: Dict[int, str]
    order: Optional[Tuple[int, ...]] = None
    base_word: Optional[str] = None

    def __post_init__(self):
        self.base = frozenset(self.base)
        self.target = frozenset(self.target)
        self.entries = dict(self.entries)
        if self.order is not None:
            self.order = tuple(self.order)

        if not self.base <= self.target:
            raise CertificateError(
                f"base {format_state_set(self.base)} is not a subset of "
                f"target {format_state_set(self.target)}"
            )
        if set(self.entries) != self.target:
            raise CertificateError(
                f"entries cover {format_state_set(self.entries)}, "
                f"expected the target {format_state_set(self.target)}"
            )
        if self.order is not None:
            check_order(self.order, self.target)

    @property
    def words(self) -> List[str]:
        """Entry words in listed order"""
        return list(self.entries.values())

    def with_order(self, order: Optional[Iterable[int]]) -> "Certificate":
        return Certificate(
            self.focus, self.base, self.target, self.entries, order, self.base_word
        )


def check_order(order: Iterable[int], target: FrozenSet[int]):
    """
    Raises:
        CertificateError: The order does not list every target state once
    """
    order = tuple(order)
    if len(order) != len(set(order)) or set(order) != set(target):
        raise CertificateError(
            f"order {' '.join(str(q) for q in order)} is not a permutation of "
            f"{format_state_set(target)}"
        )


@dataclass(frozen=True)
class Validation:
    """Outcome of validating a construction set"""

    valid: bool
    diagnostics: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class CompletenessVerdict:
    """Result of a completeness check

    ``via`` names the condition that established completeness. ``cycle`` is
    set when the decision procedure found cyclic precedence constraints and
    ``base_reachable`` when a base word was checked.
    """

    complete: bool
    order: Optional[Tuple[int, ...]] = None
    via: Optional[str] = None
    detail: str = ""
    cycle: Optional[Tuple[int, ...]] = None
    base_reachable: Optional[bool] = None

    @property
    def holds(self) -> bool:
        """Complete, and the base word (if any) reaches the base state"""
        return self.complete and self.base_reachable is not False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "complete": self.complete,
            "order": list(self.order) if self.order is not None else None,
            "via": self.via,
            "detail": self.detail,
            "cycle": list(self.cycle) if self.cycle is not None else None,
            "base_reachable": self.base_reachable,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CompletenessVerdict":
        order = data.get("order")
        cycle = data.get("cycle")
        return cls(
            complete=data["complete"],
            order=tuple(order) if order is not None else None,
            via=data.get("via"),
            detail=data.get("detail", ""),
            cycle=tuple(cycle) if cycle is not None else None,
            base_reachable=data.get("base_reachable"),
        )


def not_complete(detail: str, **kwargs) -> CompletenessVerdict:
    return CompletenessVerdict(False, detail=detail, **kwargs)


_ENTRY = re.compile(r"^entry\s+(?P<state>\S+)\s*:\s*(?P<word>.*)$")


def _word(text: str, line: int) -> str:
    try:
        return expand_word(text)
    except ValueError as ex:
        raise ParseError(str(ex), line) from ex


def _focus(text: str, line: int) -> int:
    value = text.strip().rstrip("'′")
    try:
        focus = int(value)
    except ValueError:
        raise ParseError(f"focus must be a state number, got {text!r}", line) from None
    if focus < 1:
        raise ParseError(f"focus must be positive, got {focus}", line)
    return focus


def parse_certificate(text: str, n: int) -> Certificate:
    """Parse the certificate text format

    Args:
        text (str): Certificate text
        n (int): State count of the right operand (resolves ``n``)

    Raises:
        ParseError: Malformed line or inconsistent certificate
    """
    focus = None
    base: FrozenSet[int] = frozenset()
    target: Optional[FrozenSet[int]] = None
    entries: Dict[int, str] = {}
    order = None
    base_word = None

    for number, raw in enumerate(to_str(text).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "cert":
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "focus":
                focus = _focus(rest, number)
            elif keyword == "base":
                base = parse_state_set(rest, n)
            elif keyword == "target":
                target = parse_state_set(rest, n)
            elif keyword == "baseword":
                base_word = _word(rest, number)
            elif keyword == "order":
                order = tuple(parse_point(token, n) for token in rest.split())
            elif keyword == "entry":
                match = _ENTRY.match(line)
                if not match:
                    raise ParseError(f"malformed entry: {line!r}", number)
                state = parse_point(match.group("state"), n)
                if state in entries:
                    raise ParseError(f"duplicate entry for state {state}", number)
                entries[state] = _word(match.group("word"), number)
            else:
                raise ParseError(f"unrecognised line: {line!r}", number)
        except ValueError as ex:
            if isinstance(ex, ParseError):
                raise
            raise ParseError(str(ex), number) from ex

    if focus is None:
        raise ParseError("missing 'focus' line")
    if target is None:
        raise ParseError("missing 'target' line")
    for state in sorted(base):
        entries.setdefault(state, "")

    try:
        return Certificate(focus, base, target, entries, order, base_word)
    except CertificateError as ex:
        raise ParseError(str(ex)) from ex


def format_certificate(c: Certificate) -> str:
    """Text form of a certificate, parsed back by parse_certificate"""
    lines = [
        "cert",
        f"focus {c.focus}'",
        f"base {format_state_set(c.base) if c.base else '{}'}",
        f"target {format_state_set(c.target) if c.target else '{}'}",
    ]
    if c.base_word is not None:
        lines.append(f"baseword {word_text(c.base_word)}")
    lines.extend(f"entry {q}: {word_text(w)}" for q, w in c.entries.items())
    if c.order is not None:
        lines.append("order " + " ".join(str(q) for q in c.order))
    return "\n".join(lines) + "\n"


@dataclass
class ConstraintGraph:
    """Must-precede constraints: an edge (q, p) means q must come before p"""

    nodes: Tuple[int, ...]
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def successors(self) -> Dict[int, List[int]]:
        graph: Dict[int, List[int]] = {node: [] for node in self.nodes}
        for source, target in self.edges:
            graph[source].append(target)
        return graph
