"""DFA text format

::

    dfa A
    states 4
    alphabet a b c
    initial 1
    final 4
    a: (1,2,3,4)
    b: (1,2)
    c: [{4}->1]

A file may hold several blocks, each started by a ``dfa <name>`` line.
``#`` starts a comment. A block without a ``dfa`` header gets a generated name.
"""
import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from concat_reach_core.dfa import Dfa
from concat_reach_core.errors import AutomatonError, ParseError
from concat_reach_core.transformation import format_transformation, parse_transformation
from concat_reach_core.utils import generate_name, to_str

log = logging.getLogger(__name__)

_ROW = re.compile(r"^(?P<letter>\S)\s*:\s*(?P<spec>.*)$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _int(value: str, line: int, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {value!r}", line) from None


def _states(values: str, line: int) -> List[int]:
    return [_int(v, line, "state") for v in re.split(r"[\s,{}]+", values) if v]


class _Block:
    def __init__(self, name: Optional[str], line: int):
        self.name = name
        self.line = line
        self.n: Optional[int] = None
        self.alphabet: Optional[List[str]] = None
        self.initial = 1
        self.finals: List[int] = []
        self.rows: List[Tuple[str, str, int]] = []

    def build(self) -> Dfa:
        if self.n is None:
            raise ParseError("missing 'states' line", self.line)
        if self.alphabet is None:
            raise ParseError("missing 'alphabet' line", self.line)

        delta = {}
        for letter, spec, line in self.rows:
            if letter not in self.alphabet:
                raise ParseError(f"row for undeclared letter {letter!r}", line)
            if letter in delta:
                raise ParseError(f"duplicate row for letter {letter!r}", line)
            try:
                delta[letter] = parse_transformation(spec, self.n)
            except AutomatonError as ex:
                raise ParseError(str(ex), line) from ex
        missing = [a for a in self.alphabet if a not in delta]
        if missing:
            raise ParseError(f"no row for letters: {' '.join(missing)}", self.line)

        try:
            return Dfa(
                self.n,
                self.alphabet,
                delta,
                initial=self.initial,
                finals=self.finals,
                name=self.name or generate_name("dfa"),
            )
        except AutomatonError as ex:
            raise ParseError(str(ex), self.line) from ex


def parse_dfas(text: str) -> Dict[str, Dfa]:
    """Parse every DFA block of a text, keyed by name (in file order)

    Raises:
        ParseError: Malformed block, unknown letter in a row or a declared
            letter without a row
    """
    blocks: List[_Block] = []
    current: Optional[_Block] = None

    for number, raw in enumerate(to_str(text).splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()

        if keyword == "dfa":
            current = _Block(rest or None, number)
            blocks.append(current)
            continue
        if current is None:
            current = _Block(None, number)
            blocks.append(current)

        if keyword == "states":
            current.n = _int(rest, number, "states")
        elif keyword == "alphabet":
            current.alphabet = [a for a in re.split(r"[\s,]+", rest) if a]
        elif keyword == "initial":
            current.initial = _int(rest, number, "initial")
        elif keyword in ("final", "finals"):
            current.finals = _states(rest, number)
        else:
            row = _ROW.match(line)
            if not row:
                raise ParseError(f"unrecognised line: {line!r}", number)
            current.rows.append((row.group("letter"), row.group("spec"), number))

    if not blocks:
        raise ParseError("no DFA found")

    dfas: Dict[str, Dfa] = {}
    for block in blocks:
        d = block.build()
        if d.name in dfas:
            raise ParseError(f"duplicate DFA name {d.name!r}", block.line)
        dfas[d.name] = d
    return dfas


def parse_dfa(text: str, name: str = None) -> Dfa:
    """Parse a single DFA; with several blocks, ``name`` selects one
    (default: the first block)"""
    dfas = parse_dfas(text)
    if name is None:
        return next(iter(dfas.values()))
    if name not in dfas:
        raise ParseError(f"no DFA named {name!r} (found: {', '.join(dfas)})")
    return dfas[name]


def load_dfa(path, name: str = None) -> Dfa:
    """Read a DFA file. ``path`` may be written as ``file.dfa:Name`` to
    select a named block"""
    path = str(path)
    if name is None and ":" in path and not Path(path).exists():
        path, name = path.rsplit(":", 1)
    log.debug("Loading DFA from file: %s", path)
    return parse_dfa(Path(path).read_text(encoding="utf8"), name)


def format_dfa(d: Dfa) -> str:
    """Text form of a DFA (explicit image lists), parsed back by parse_dfa"""
    lines = [
        f"dfa {d.name}",
        f"states {d.n}",
        "alphabet " + " ".join(d.alphabet),
        f"initial {d.initial}",
        "final " + " ".join(str(q) for q in sorted(d.finals)),
    ]
    lines.extend(f"{a}: {format_transformation(d[a])}" for a in d.alphabet)
    return "\n".join(lines) + "\n"
