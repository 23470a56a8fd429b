"""General utilities"""
import re
from typing import Any, FrozenSet, Iterable, Iterator, List
import randomname

EMPTY_SET = "∅"

_POINT = re.compile(r"^(?:(\d+)|n(?:\s*[-−]\s*(\d+))?)$")


def generate_name(prefix: str = None, sep="_") -> str:
    """Generate a random name

    Args:
        prefix (str, optional): Prefix the name with a fixed string.
        sep (str, optional): Separator between the prefix and the words.
            Defaults to "_".

    Returns:
        str: Random name
    """
    name = randomname.generate("v/", "a/", "n/", sep=sep)
    if prefix:
        return sep.join([prefix, name])
    return name


def to_str(value: Any, encoding: str = "utf8") -> str:
    """Convert a value to a string. If the input is bytes, then decode it
    using the given encoding.

    Args:
        value (Any): Input to be decoded to a string
        encoding (str): Encoding if the input is bytes. Defaults to utf8

    Returns:
        str: value decoded as a string
    """
    if hasattr(value, "decode"):
        return value.decode(encoding)

    if not value:
        return ""

    return str(value)


def mask_of(states: Iterable[int]) -> int:
    """Encode 1-based states as a bitset (state i is bit i-1)"""
    mask = 0
    for state in states:
        mask |= 1 << (state - 1)
    return mask


def states_of(mask: int) -> Iterator[int]:
    """Decode a bitset into ascending 1-based states"""
    state = 1
    while mask:
        if mask & 1:
            yield state
        mask >>= 1
        state += 1


def format_state_set(states: Iterable[int]) -> str:
    """Render a state set with sorted braces, e.g. {1,3}, or ∅ when empty"""
    items = sorted(states)
    if not items:
        return EMPTY_SET
    return "{" + ",".join(str(q) for q in items) + "}"


def parse_point(token: str, n: int) -> int:
    """Parse a single state such as 3, n or n-1"""
    match = _POINT.match(token.strip())
    if not match:
        raise ValueError(f"invalid state: {token!r}")
    if match.group(1) is not None:
        value = int(match.group(1))
    else:
        value = n - int(match.group(2) or 0)
    if not 1 <= value <= n:
        raise ValueError(f"state {token.strip()} out of range 1..{n}")
    return value


def parse_state_set(text: str, n: int) -> FrozenSet[int]:
    """Parse a state set such as {1,3}, {1..n}, {2..n-1}, {} or ∅

    Args:
        text (str): State set text. The symbol n stands for the state count.
        n (int): Number of states the set is resolved against

    Returns:
        FrozenSet[int]: Parsed states

    Raises:
        ValueError: Malformed set or a state outside 1..n
    """
    text = text.strip()
    if text in ("", EMPTY_SET, "{}"):
        return frozenset()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"state set must be wrapped in braces: {text!r}")

    states = set()
    for item in text[1:-1].split(","):
        if not item.strip():
            continue
        if ".." in item:
            low, high = item.split("..", 1)
            states.update(range(parse_point(low, n), parse_point(high, n) + 1))
        else:
            states.add(parse_point(item, n))
    return frozenset(states)


def parse_range(text: str) -> List[int]:
    """Parse an integer range such as 3..6 (inclusive) or a single value"""
    if ".." in text:
        low, high = text.split("..", 1)
        values = list(range(int(low), int(high) + 1))
    else:
        values = [int(text)]
    if not values:
        raise ValueError(f"empty range: {text!r}")
    return values
