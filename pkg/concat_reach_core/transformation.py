"""Transformations of {1..n}

Composition is left-to-right: ``compose(t, u)`` maps x to (x t) u.

Text notation (one term per transformation, juxtaposition composes
left-to-right)::

    id                 identity
    (1,2,3)            cycle 1 -> 2 -> 3 -> 1, fixing all other points
    [{1,2}->3]         send every point of the set to 3
    [all->2]           constant map to 2
    [2..4:+1]          x -> x+1 for 2 <= x <= 4
    [2..4:-1]          x -> x-1 for 2 <= x <= 4
    [2,3,1,4]          explicit image list
"""
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Tuple, Union

from concat_reach_core.errors import AutomatonError, NotationError
from concat_reach_core.utils import parse_state_set, states_of

MAX_STATES = 63

_TOKEN = re.compile(
    r"""
    \s*(?:
        (?P<identity>id)\b
      | \((?P<cycle>[^()]*)\)
      | \[\s*(?P<sources>\{[^}]*\}|all)\s*->\s*(?P<target>\d+)\s*\]
      | \[\s*(?P<low>\d+)\s*\.\.\s*(?P<high>\d+)\s*:\s*(?P<sign>[+-])1\s*\]
      | \[(?P<images>\s*\d+(?:\s*,\s*\d+)*\s*)\]
    )""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Transformation:
    """Total map on {1..n}; ``images[i - 1]`` is the image of state i"""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if not 1 <= n <= MAX_STATES:
            raise AutomatonError(
                f"transformations need between 1 and {MAX_STATES} states, got {n}"
            )
        for point, image in enumerate(images, start=1):
            if not 1 <= image <= n:
                raise AutomatonError(
                    f"image of {point} is {image}, outside 1..{n}"
                )

    @property
    def n(self) -> int:
        """Number of points"""
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def then(self, other: "Transformation") -> "Transformation":
        """Apply this transformation, then ``other``"""
        return compose(self, other)

    def image_mask(self, mask: int) -> int:
        """Image of a bitset of states"""
        result = 0
        for point in states_of(mask):
            result |= 1 << (self.images[point - 1] - 1)
        return result

    def is_permutation_on(self, mask: int) -> bool:
        """True if the set encoded by ``mask`` is mapped onto itself"""
        return self.image_mask(mask) == mask

    def __str__(self) -> str:
        return format_transformation(self)


def compose(t: Transformation, u: Transformation) -> Transformation:
    """Left-to-right composition: x maps to (x t) u

    Raises:
        AutomatonError: The transformations act on different sets
    """
    if t.n != u.n:
        raise AutomatonError(
            f"cannot compose transformations of {t.n} and {u.n} points"
        )
    return Transformation(tuple(u.images[image - 1] for image in t.images))


def product(terms: Iterable[Transformation]) -> Transformation:
    """Compose a non-empty sequence of transformations left-to-right"""
    return reduce(compose, terms)


def _check_point(point: int, n: int):
    if not 1 <= point <= n:
        raise NotationError(f"point {point} outside 1..{n}")


def identity(n: int) -> Transformation:
    return Transformation(tuple(range(1, n + 1)))


def cycle(n: int, *points: int) -> Transformation:
    """Cycle (x1, ..., xk): x_i goes to x_(i+1) and x_k to x1"""
    if len(set(points)) != len(points):
        raise NotationError(f"cycle {points} repeats a point")
    images = list(range(1, n + 1))
    for index, point in enumerate(points):
        _check_point(point, n)
        images[point - 1] = points[(index + 1) % len(points)]
    return Transformation(tuple(images))


def send(n: int, sources: Iterable[int], target: int) -> Transformation:
    """(S -> x): every point of S goes to x, all other points are fixed"""
    _check_point(target, n)
    images = list(range(1, n + 1))
    for point in sources:
        _check_point(point, n)
        images[point - 1] = target
    return Transformation(tuple(images))


def constant(n: int, target: int) -> Transformation:
    return send(n, range(1, n + 1), target)


def shift_up(n: int, low: int, high: int) -> Transformation:
    """x -> x+1 for low <= x <= high; an empty range is the identity"""
    if low > high:
        return identity(n)
    _check_point(low, n)
    if high >= n:
        raise NotationError(f"shift [{low}..{high}:+1] sends {high} outside 1..{n}")
    images = list(range(1, n + 1))
    for point in range(low, high + 1):
        images[point - 1] = point + 1
    return Transformation(tuple(images))


def shift_down(n: int, low: int, high: int) -> Transformation:
    """x -> x-1 for low <= x <= high; an empty range is the identity"""
    if low > high:
        return identity(n)
    _check_point(high, n)
    if low <= 1:
        raise NotationError(f"shift [{low}..{high}:-1] sends {low} outside 1..{n}")
    images = list(range(1, n + 1))
    for point in range(low, high + 1):
        images[point - 1] = point - 1
    return Transformation(tuple(images))


def _term(match: "re.Match", n: int) -> Transformation:
    if match.group("identity"):
        return identity(n)
    if match.group("cycle") is not None:
        points = [p for p in re.split(r"[\s,]+", match.group("cycle").strip()) if p]
        if not points:
            raise NotationError("empty cycle")
        return cycle(n, *(int(p) for p in points))
    if match.group("sources") is not None:
        target = int(match.group("target"))
        if match.group("sources") == "all":
            return constant(n, target)
        try:
            sources = parse_state_set(match.group("sources"), n)
        except ValueError as ex:
            raise NotationError(str(ex)) from ex
        return send(n, sources, target)
    if match.group("low") is not None:
        low, high = int(match.group("low")), int(match.group("high"))
        if match.group("sign") == "+":
            return shift_up(n, low, high)
        return shift_down(n, low, high)

    images = tuple(int(p) for p in match.group("images").split(","))
    if len(images) != n:
        raise NotationError(f"image list has {len(images)} entries, expected {n}")
    try:
        return Transformation(images)
    except AutomatonError as ex:
        raise NotationError(str(ex)) from ex


def parse_transformation(text: str, n: int) -> Transformation:
    """Parse the text notation into a transformation of {1..n}

    Raises:
        NotationError: Unknown token or invalid term
    """
    terms = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise NotationError(
                f"cannot parse transformation at {text[position:].strip()!r}"
            )
        terms.append(_term(match, n))
        position = match.end()
    if not terms:
        raise NotationError("empty transformation")
    return product(terms)


Spec = Union[str, Transformation, Sequence[Union[str, Transformation]]]


def make_transformation(spec: Spec, n: int) -> Transformation:
    """Build a transformation from notation text, an existing
    transformation or a sequence of either (composed left-to-right)

    Raises:
        NotationError: Invalid notation
        AutomatonError: Transformation on the wrong number of points
    """
    if isinstance(spec, Transformation):
        if spec.n != n:
            raise AutomatonError(f"transformation has {spec.n} points, expected {n}")
        return spec
    if isinstance(spec, str):
        return parse_transformation(spec, n)
    return product(make_transformation(term, n) for term in spec)


def format_transformation(t: Transformation) -> str:
    """Explicit image list, e.g. [2,3,1,4] (parses back with the notation)"""
    return "[" + ",".join(str(image) for image in t.images) + "]"
