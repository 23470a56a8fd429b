"""Catalog of concatenation witness families

Letters act as transformations written in the usual cycle / send / shift
notation; a multi-part transformation is composed left-to-right. States of
A are numbered 1..m, states of B 1..n.
"""
import logging
from math import gcd
from typing import Optional, Sequence, Tuple

from concat_reach_core.certificates.model import (
    VIA_DECIDED,
    VIA_EPS_PERM,
    VIA_PERM_ALL,
    VIA_PERM_ALL_BUT_ONE,
    via_form,
)
from concat_reach_core.concat import UNRESTRICTED
from concat_reach_core.dfa import Dfa, power
from concat_reach_core.errors import FamilyConstraintError
from concat_reach_core.transformation import (
    Transformation,
    constant,
    cycle,
    identity,
    make_transformation,
    product,
    send,
    shift_down,
    shift_up,
)
from concat_reach_core.witnesses.family import WitnessFamily, construction_set, register

log = logging.getLogger(__name__)


def rotation(n: int, low: int, high: int) -> Transformation:
    """Cycle (low, low+1, ..., high)"""
    return cycle(n, *range(low, high + 1))


def regular_count(m: int, n: int) -> int:
    return (m - 1) * 2**n + 2 ** (n - 1)


def non_returning_count(m: int, n: int) -> int:
    return (m - 1) * 2 ** (n - 1) + 1


def prefix_closed_count(m: int, n: int) -> int:
    return (m + 1) * 2 ** (n - 2)


def suffix_free_count(m: int, n: int) -> int:
    return (m - 1) * 2 ** (n - 2) + 1


def right_ideal_count(m: int, n: int) -> int:
    return m + 2 ** (n - 2)


def _pair(name: str, m: int, n: int, alphabet: str, a: dict, b: dict, finals_a, finals_b,
          alphabet_b: str = None) -> Tuple[Dfa, Dfa]:
    return (
        Dfa(m, alphabet, a, finals=finals_a, name=f"{name}-A{m}"),
        Dfa(n, alphabet_b or alphabet, b, finals=finals_b, name=f"{name}-B{n}"),
    )


def _form_2_or_4(n: int) -> str:
    # {ε, x} is also {ε, y}
    return via_form(2) if n == 3 else via_form(4)


def _eps_perm(n: int) -> str:
    # with a single non-empty word the all-but-one condition applies first
    return VIA_PERM_ALL_BUT_ONE if n == 3 else VIA_EPS_PERM


@register
class RegularMas70(WitnessFamily):
    """a = (1..m) on A, (n-1,n) on B; b shifts B up"""

    name = "reg-mas70"
    description = "regular languages"
    exact_reachable = True

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "ab",
            {"a": rotation(m, 1, m), "b": identity(m)},
            {"a": cycle(n, n - 1, n), "b": shift_up(n, 1, n - 1)},
            [m], [n],
        )

    def formula(self, m, n):
        return regular_count(m, n)

    def certificate(self, m, n, **extras):
        words = [power("a", m) + power("b", k) for k in range(n)]
        return construction_set(
            self.name, self.machine(m, n), 1, (), range(1, n + 1), words, ""
        )

    def technique(self, m, n):
        return via_form(3)


@register
class RegularBrSi17(WitnessFamily):
    """Regular witness with a free letter t on A

    Extras:
        j (int): State sent to 1' by t. Defaults to 2
        t (str): Notation of t on m points. Defaults to the transposition (1,2)
    """

    name = "reg-brsi17"
    description = "regular languages"
    exact_reachable = True

    def extra_names(self) -> Sequence[str]:
        return ("j", "t")

    def _t(self, m: int, t: Optional[str]) -> Transformation:
        if t is None:
            return cycle(m, 1, 2)
        return make_transformation(t, m)

    def check(self, m, n, j: int = 2, t: str = None, **extras):
        super().check(m, n, **extras)
        j = int(j)
        if not 2 <= j <= m:
            raise FamilyConstraintError(f"{self.name}: requires 2 <= j <= m, got j={j}")
        if gcd(j - 1, n) != 1:
            raise FamilyConstraintError(
                f"{self.name}: requires gcd(j-1, n) = 1, got gcd({j - 1}, {n}) = {gcd(j - 1, n)}"
            )
        if self._t(m, t)(j) != 1:
            raise FamilyConstraintError(f"{self.name}: requires j't = 1' for j={j}")

    def operands(self, m, n, j: int = 2, t: str = None, **extras):
        return _pair(
            self.name, m, n, "ab",
            {"a": rotation(m, 1, m), "b": self._t(m, t)},
            {"a": rotation(n, 1, n), "b": send(n, [2], 1)},
            [m], [n],
        )

    def formula(self, m, n):
        return regular_count(m, n)

    def certificate(self, m, n, j: int = 2, t: str = None, **extras):
        j = int(j)
        machine = self.machine(m, n, j=j, t=t)
        y = power("a", j - 1) + "b"
        words = [power("a", m) + power(y, k) for k in range(n)]
        return construction_set(self.name, machine, 1, (), range(1, n + 1), words, "")

    def technique(self, m, n):
        return via_form(3)


@register
class RegularBrz16(WitnessFamily):
    """Different alphabets: c only on A, d only on B"""

    name = "reg-brz16"
    description = "regular languages, unrestricted"
    mode = UNRESTRICTED
    exact_reachable = True

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abc",
            {"a": rotation(m, 1, m), "b": cycle(m, 1, 2), "c": send(m, [m], 1)},
            {"a": cycle(n, 1, 2), "b": rotation(n, 1, n), "d": identity(n)},
            [m], [n],
            alphabet_b="abd",
        )

    def formula(self, m, n):
        return m * 2**n + 2 ** (n - 1)

    def certificate(self, m, n, **extras):
        x = power("a", m)
        if n % 2:
            words = [x + power("bb", k) for k in range(n)]
        else:
            half = n // 2
            words = [x + power("bb", k) for k in range(half)]
            middle = x + power("bb", half - 1) + "ab"
            words += [middle + power("bb", i) for i in range(half)]
        return construction_set(
            self.name, self.machine(m, n), 1, (), range(1, n + 1), words, ""
        )

    def technique(self, m, n):
        return via_form(3) if n % 2 else VIA_PERM_ALL


@register
class RegularBrz13(WitnessFamily):
    name = "reg-brz13"
    description = "regular languages"
    exact_reachable = True

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abc",
            {"a": rotation(m, 1, m), "b": cycle(m, 1, 2), "c": send(m, [m], 1)},
            {"a": rotation(n, 1, n), "b": cycle(n, 1, 2), "c": send(n, [n], 1)},
            [m], [n],
        )

    def formula(self, m, n):
        return regular_count(m, n)

    def certificate(self, m, n, **extras):
        x = power("a", m)
        words = [x + power("ab", k) for k in range(n - 1)]
        words.append(words[-1] + "c")
        return construction_set(
            self.name, self.machine(m, n), 1, (), range(1, n + 1), words, ""
        )

    def technique(self, m, n):
        return VIA_PERM_ALL_BUT_ONE


@register
class RegularYZS94(WitnessFamily):
    name = "reg-yzs94"
    description = "regular languages"
    exact_reachable = True

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abc",
            {"a": rotation(m, 1, m), "b": constant(m, 1), "c": identity(m)},
            {"a": identity(n), "b": rotation(n, 1, n), "c": constant(n, 2)},
            [m], [n],
        )

    def formula(self, m, n):
        return regular_count(m, n)

    def certificate(self, m, n, **extras):
        # a^m leaves B's state 1 in place, so the b-chain starts at 1
        words = [power("a", m) + power("b", k) for k in range(n)]
        return construction_set(
            self.name, self.machine(m, n), 1, (), range(1, n + 1), words, ""
        )

    def technique(self, m, n):
        return via_form(3)


@register
class StarFreeBrLi12(WitnessFamily):
    name = "starfree-brli12"
    description = "star-free languages"
    exact_reachable = True
    erratum = (
        "the words c^k are not q-words for k >= 2: the focus m' is final and "
        "re-adds 1 after every letter, so the set {ε, c, ca, ..., ca^(n-2)} is "
        "used; it fits no corollary form and the constraint graph decides it"
    )

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abcd",
            {
                "a": shift_up(m, 1, m - 1),
                "b": shift_down(m, 2, m),
                "c": identity(m),
                "d": constant(m, m),
            },
            {
                "a": shift_up(n, 2, n - 1),
                "b": identity(n),
                "c": shift_up(n, 1, n - 1),
                "d": shift_down(n, 2, n),
            },
            [m], [n - 1],
        )

    def formula(self, m, n):
        return regular_count(m, n)

    def certificate(self, m, n, **extras):
        # c moves the fresh state to 2, a then pushes it up while 1 stays put
        words = ["c" + power("a", k) for k in range(n - 1)]
        return construction_set(
            self.name, self.machine(m, n), m, (1,), range(1, n + 1), words, power("a", m)
        )

    def technique(self, m, n):
        return VIA_DECIDED


@register
class NonReturningBrDa17(WitnessFamily):
    name = "nonret-brda17"
    description = "non-returning languages"
    min_m = 4
    exact_reachable = True

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "ab",
            {
                "a": product([rotation(m, 2, m), send(m, [1], 2)]),
                "b": product([cycle(m, 2, 3), send(m, [1], 3)]),
            },
            {
                "a": product([rotation(n, 2, n), send(n, [1], 2)]),
                "b": product([rotation(n, 3, n), send(n, [2], 3), send(n, [1], 2)]),
            },
            [m], [n],
        )

    def formula(self, m, n):
        return non_returning_count(m, n)

    def certificate(self, m, n, **extras):
        x = power("a", m - 1)
        words = [x + power("ab", k) for k in range(n - 1)]
        return construction_set(
            self.name, self.machine(m, n), 2, (), range(2, n + 1), words, "a"
        )

    def technique(self, m, n):
        return via_form(3)


@register
class NonReturningEHJ16(WitnessFamily):
    name = "nonret-ehj16"
    description = "non-returning languages"
    exact_reachable = True

    def operands(self, m, n, **extras):
        # c on B: 1 -> 2, q -> q+1 for 3 <= q <= n-1, n -> 2
        c_images = [2, 2] + [q + 1 for q in range(3, n)] + [2]
        return _pair(
            self.name, m, n, "abc",
            {
                "a": product([rotation(m, 2, m), send(m, [1], 2)]),
                "b": send(m, [1], 2),
                "c": send(m, [1], 2),
            },
            {
                "a": send(n, [1], 2),
                "b": product([rotation(n, 2, n), send(n, [1], 2)]),
                "c": Transformation(tuple(c_images)),
            },
            [m], [n],
        )

    def formula(self, m, n):
        return non_returning_count(m, n)

    def certificate(self, m, n, **extras):
        x = power("a", m - 1)
        words = [x + power("b", k) for k in range(n - 1)]
        return construction_set(
            self.name, self.machine(m, n), 2, (), range(2, n + 1), words, "a"
        )

    def technique(self, m, n):
        return via_form(3)


@register
class PrefixClosedBJZ14(WitnessFamily):
    name = "prefixclosed-bjz14"
    description = "prefix-closed languages"

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abc",
            {"a": identity(m), "b": identity(m), "c": shift_up(m, 1, m - 1)},
            {"a": rotation(n, 1, n - 1), "b": shift_up(n, 2, n - 1), "c": identity(n)},
            range(1, m), range(1, n),
        )

    def formula(self, m, n):
        return prefix_closed_count(m, n)

    def certificate(self, m, n, **extras):
        words = ["a" + power("b", k) for k in range(n - 2)]
        return construction_set(
            self.name, self.machine(m, n), 1, (1,), range(1, n), words, ""
        )

    def technique(self, m, n):
        return _form_2_or_4(n)


@register
class SuffixFreeBrSi17a(WitnessFamily):
    """Suffix-free witness; m' and n are empty sinks, so c sends 2' into m' and
    b sends 2 into n

    Below m = 4 (n = 4) the transposition (2,3) of A's b (B's a) would swap
    2 with the sink.
    """

    name = "suffixfree-brsi17a"
    description = "suffix-free languages"
    min_m = 4
    min_n = 4
    erratum = (
        "the letters sending 2' to m' and 2 to n are listed as transpositions "
        "(2',m') and (2,n), which would take states out of the sinks"
    )

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abc",
            {
                "a": product([send(m, [1], m), rotation(m, 2, m - 1)]),
                "b": product([send(m, [1], m), cycle(m, 2, 3)]),
                "c": product([send(m, [2], m), send(m, [1], 2)]),
            },
            {
                "a": product([send(n, [1], n), cycle(n, 2, 3)]),
                "b": product([send(n, [2], n), send(n, [1], 2)]),
                "c": product([send(n, [1], n), rotation(n, 2, n - 1)]),
            },
            [m - 1], [n - 1],
        )

    def formula(self, m, n):
        return suffix_free_count(m, n)

    def certificate(self, m, n, **extras):
        # at m = 4 b swaps the focus 3' with 2' and a brings it back
        prefix = "ba" if m == 4 else "bb"
        words = [prefix + power("c", k) for k in range(n - 2)]
        base_word = "c" + power("a", m - 3) + "c"
        return construction_set(
            self.name, self.machine(m, n), m - 1, (1, n), range(1, n + 1), words, base_word
        )

    def technique(self, m, n):
        return VIA_DECIDED


@register
class SuffixFreeHaSa09(WitnessFamily):
    name = "suffixfree-hasa09"
    description = "suffix-free languages"
    erratum = (
        "every letter of B maps {2,...,n-1} onto itself and 2 is final, so the "
        "m-1 counted states whose subset holds {2,...,n-1} accept every word and "
        "share one class: the operands give formula - (m-2) classes"
    )

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abcd",
            {
                "a": product([rotation(m, 2, m - 1), send(m, [1], m)]),
                "b": send(m, [1], m),
                "c": product([send(m, range(2, m + 1), m), send(m, [1], 2)]),
                "d": send(m, [q for q in range(1, m + 1) if q != 2], m),
            },
            {
                "a": send(n, [1], n),
                "b": product([rotation(n, 2, n - 1), send(n, [1], n)]),
                "c": send(n, [1], n),
                "d": send(n, [1], 2),
            },
            [2], [2],
        )

    def formula(self, m, n):
        return suffix_free_count(m, n)

    def class_count(self, m, n):
        return suffix_free_count(m, n) - (m - 2)

    def certificate(self, m, n, **extras):
        words = ["d" + power("b", k) for k in range(n - 2)]
        return construction_set(
            self.name, self.machine(m, n), 2, (1, n), range(1, n + 1), words, "cb"
        )

    def technique(self, m, n):
        return _eps_perm(n)


class _RightIdeal(WitnessFamily):
    """Right ideals: m' is a final sink, so every letter adds B's state 1
    once the focus is m'"""

    description = "right ideals"

    def formula(self, m, n):
        return right_ideal_count(m, n)

    def _words(self, n: int) -> Sequence[str]:
        return ["a" + power("b", k) for k in range(n - 2)]

    def _base_word(self, m: int) -> str:
        return power("a", m - 2) + "c"

    def certificate(self, m, n, **extras):
        return construction_set(
            self.name,
            self.machine(m, n),
            m,
            (1,),
            range(1, n),
            self._words(n),
            self._base_word(m),
        )

    def technique(self, m, n):
        return _form_2_or_4(n)


@register
class RightIdealBrSi17(_RightIdeal):
    name = "rightideal-brsi17"

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abc",
            {"a": rotation(m, 1, m - 1), "b": send(m, [2], 1), "c": shift_up(m, 1, m - 1)},
            {"a": rotation(n, 1, n - 1), "b": send(n, [2], 1), "c": shift_up(n, 1, n - 1)},
            [m], [n],
        )

    def _words(self, n):
        return ["a" + power("ab", k) for k in range(n - 2)]


@register
class RightIdealBDL16(_RightIdeal):
    name = "rightideal-bdl16"

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abc",
            {"a": rotation(m, 1, m - 1), "b": rotation(m, 2, m - 1), "c": send(m, [m - 1], m)},
            {"a": rotation(n, 1, n - 1), "b": rotation(n, 2, n - 1), "c": send(n, [n - 1], n)},
            [m], [n],
        )


@register
class RightIdealBJL13(_RightIdeal):
    name = "rightideal-bjl13"

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "ab",
            {"a": shift_up(m, 1, m - 1), "b": shift_up(m, 1, m - 1)},
            {"a": rotation(n, 1, n - 1), "b": shift_up(n, 2, n - 1)},
            [m], [n],
        )

    def _base_word(self, m):
        return power("a", m - 1)


@register
class NegativePrefixClosedBrSi17(WitnessFamily):
    """Prefix-closed witness whose reachability proof moves the focus

    Decrements starting at state 1 send 1 to the sink. Below n = 4 the letters
    a and d of B coincide.
    """

    name = "neg-prefixclosed-brsi17"
    description = "prefix-closed languages"
    min_n = 4

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "abcd",
            {
                "a": rotation(m, 1, m - 1),
                "b": cycle(m, 1, 2),
                "c": send(m, [2], 1),
                "d": product([send(m, [1], m), shift_down(m, 2, m - 1)]),
            },
            {
                "a": rotation(n, 1, n - 1),
                "b": send(n, [2], 1),
                "c": product([send(n, [1], n), shift_down(n, 2, n - 1)]),
                "d": cycle(n, 1, 2),
            },
            range(1, m), range(1, n),
        )

    def formula(self, m, n):
        return prefix_closed_count(m, n)


@register
class NegativeFiniteBinaryCCSY01(WitnessFamily):
    """Finite languages over a binary alphabet; no state of A is fixed by a
    word except the non-final sink"""

    name = "neg-finitebinary-ccsy01"
    description = "finite binary languages"
    min_m = 2

    def check(self, m, n, **extras):
        super().check(m, n, **extras)
        if not m + 1 >= n > 2:
            raise FamilyConstraintError(f"{self.name}: requires m+1 >= n > 2, got m={m} n={n}")

    def operands(self, m, n, **extras):
        return _pair(
            self.name, m, n, "ab",
            {"a": shift_up(m, 1, m - 1), "b": shift_up(m, 1, m - 1)},
            {"a": product([shift_up(n, 2, n - 1), send(n, [1], n)]), "b": shift_up(n, 1, n - 1)},
            range(1, m), [n - 1],
        )

    def formula(self, m, n):
        return (m - n + 3) * 2 ** (n - 2) - 1

