"""Construction-set validation and completeness

A construction set is complete when its target admits a total order in which
every state q listed after p has a preimage inside the target under the word
of p. The decision procedure turns the failing pairs into must-precede
constraints and sorts them topologically; the sufficient conditions recognise
the word shapes used in reachability proofs and build the order directly.
"""
import itertools
import logging
from collections import Counter
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from concat_reach_core.certificates.model import (
    VIA_DECIDED,
    VIA_EPS_PERM,
    VIA_GIVEN_ORDER,
    VIA_LEMMA,
    VIA_PERM_ALL,
    VIA_PERM_ALL_BUT_ONE,
    Certificate,
    CompletenessVerdict,
    ConstraintGraph,
    Validation,
    check_order,
    not_complete,
    via_form,
)
from concat_reach_core.certificates.toposort import toposort
from concat_reach_core.concat import ConcatMachine, PairState, initial_pair, pair_run, render_pair
from concat_reach_core.dfa import acts_as_permutation, power, word_text
from concat_reach_core.errors import AutomatonError, CertificateError, CyclicConstraintError
from concat_reach_core.utils import format_state_set

log = logging.getLogger(__name__)


def start_state(c: Certificate) -> PairState:
    """(s', B)"""
    return PairState.of(c.focus, c.base)


def is_q_word(machine: ConcatMachine, c: Certificate, word: str, q: int) -> bool:
    """True if (s', B) w = (s', B ∪ {q})"""
    try:
        reached = pair_run(machine, start_state(c), word)
    except AutomatonError:
        return False
    return reached == PairState.of(c.focus, c.base | {q})


def validate_construction_set(machine: ConcatMachine, c: Certificate) -> Validation:
    """Check that every entry is a q-word over the shared alphabet

    Returns:
        Validation: Verdict plus one diagnostic per failing entry
    """
    diagnostics = []
    a, b = machine.a, machine.b
    if not 1 <= c.focus <= a.n:
        diagnostics.append(f"focus {c.focus}' outside 1..{a.n}")
    outside = sorted(q for q in c.target if not 1 <= q <= b.n)
    if outside:
        diagnostics.append(f"target states {outside} outside 1..{b.n}")
    if diagnostics:
        return Validation(False, tuple(diagnostics))

    shared = "".join(machine.shared)
    for q, word in c.entries.items():
        if not machine.is_shared_word(word):
            diagnostics.append(
                f"entry {q}: word {word_text(word)} leaves the shared alphabet "
                f"{{{','.join(shared)}}}; a complete construction set only uses shared letters"
            )
            continue
        if not is_q_word(machine, c, word, q):
            reached = pair_run(machine, start_state(c), word)
            wanted = PairState.of(c.focus, c.base | {q})
            diagnostics.append(
                f"entry {q}: word {word_text(word)} reaches {render_pair(reached)}, "
                f"expected {render_pair(wanted)}"
            )

    for message in diagnostics:
        log.debug("Invalid construction set: %s", message)
    return Validation(not diagnostics, tuple(diagnostics))


def _in_target_preimages(machine: ConcatMachine, c: Certificate, word: str) -> FrozenSet[int]:
    """Target states having a preimage inside the target under a word"""
    t = machine.b.word_transformation(word)
    if t is None:
        return frozenset()
    return frozenset(t(s) for s in c.target) & c.target


def _coverage(machine: ConcatMachine, c: Certificate) -> Dict[int, FrozenSet[int]]:
    return {p: _in_target_preimages(machine, c, w) for p, w in c.entries.items()}


def check_complete_with_order(
    machine: ConcatMachine, c: Certificate, order: Sequence[int]
) -> bool:
    """True if whenever p comes before q, q has an in-target preimage under W[p]

    Raises:
        CertificateError: The order is not a permutation of the target
    """
    check_order(order, c.target)
    coverage = _coverage(machine, c)
    for position, p in enumerate(order):
        for q in order[position + 1:]:
            if q not in coverage[p]:
                log.debug("Order fails: %s before %s, no preimage under %s", p, q, c.entries[p])
                return False
    return True


def constraint_graph(machine: ConcatMachine, c: Certificate) -> ConstraintGraph:
    """Edge (q, p) whenever q has no in-target preimage under W[p]"""
    coverage = _coverage(machine, c)
    nodes = tuple(sorted(c.target))
    edges = [(q, p) for p in nodes for q in nodes if q != p and q not in coverage[p]]
    return ConstraintGraph(nodes, edges)


def decide_complete(machine: ConcatMachine, c: Certificate) -> CompletenessVerdict:
    """Decide completeness via the must-precede constraint graph"""
    graph = constraint_graph(machine, c)
    try:
        order = tuple(toposort(graph.successors()))
    except CyclicConstraintError as ex:
        return not_complete(str(ex), cycle=tuple(ex.cycle))
    return CompletenessVerdict(
        True, order, VIA_DECIDED, f"{len(graph.edges)} precedence constraints"
    )


def exhaustive_complete(machine: ConcatMachine, c: Certificate) -> Optional[Tuple[int, ...]]:
    """First order (lexicographic over sorted target) that works, by brute force"""
    for order in itertools.permutations(sorted(c.target)):
        if check_complete_with_order(machine, c, order):
            return order
    return None


def _is_permutation(machine: ConcatMachine, c: Certificate, word: str) -> bool:
    return acts_as_permutation(machine.b, word, c.target)


def _confirm(
    machine: ConcatMachine, c: Certificate, order: Sequence[int], via: str, detail: str
) -> CompletenessVerdict:
    """Build the verdict of a sufficient condition, re-checking its order"""
    order = tuple(order)
    try:
        holds = check_complete_with_order(machine, c, order)
    except CertificateError as ex:
        return not_complete(f"{via}: {ex}")
    if not holds:
        return not_complete(f"{via}: constructed order {' '.join(map(str, order))} fails")
    return CompletenessVerdict(True, order, via, detail)


def _order_of_words(c: Certificate, words: Iterable[str]) -> List[int]:
    """States of the entries spelling the words; every entry is used once, so
    base states sharing ε each get a place"""
    remaining = list(c.entries.items())
    order = []
    for word in words:
        for position, (q, entry) in enumerate(remaining):
            if entry == word:
                order.append(q)
                del remaining[position]
                break
    return order


def _lemma_words(xs: Sequence[str], x0: str, y: str, k: int) -> List[str]:
    return list(xs) + [x0 + power(y, i) for i in range(1, k + 1)]


def check_lemma_complete(
    machine: ConcatMachine, c: Certificate, xs: Sequence[str], x0: str, y: str
) -> CompletenessVerdict:
    """Entries {x1..xj} ∪ {x0 y, ..., x0 y^k} with every xi a permutation of
    the target are complete; the order lists the xi first, then x0 y^i by i

    Args:
        xs (Sequence[str]): Words acting as permutations on the target
        x0 (str): ε or one of xs
        y (str): Repeated suffix
    """
    if x0 and x0 not in xs:
        return not_complete(f"x0 = {x0} is neither ε nor one of the permutation words")
    offenders = [w for w in xs if not _is_permutation(machine, c, w)]
    if offenders:
        return not_complete(
            "not a permutation of the target: " + ", ".join(word_text(w) for w in offenders)
        )
    k = len(c.entries) - len(xs)
    if k < 0:
        return not_complete("more permutation words than entries")
    words = _lemma_words(xs, x0, y, k)
    if Counter(words) != Counter(c.words):
        return not_complete("entries do not decompose as x1..xj, x0 y .. x0 y^k")
    detail = f"j={len(xs)} k={k} x0={word_text(x0)} y={word_text(y)}"
    return _confirm(machine, c, _order_of_words(c, words), VIA_LEMMA, detail)


def search_lemma_complete(machine: ConcatMachine, c: Certificate) -> CompletenessVerdict:
    """Try the lemma with every permutation entry as xi and every x0 candidate"""
    xs = [w for w in c.words if _is_permutation(machine, c, w)]
    rest = [w for w in c.words if w not in xs]
    if not rest:
        return not_complete("no repeated-suffix words")
    for x0 in [""] + xs:
        if not all(w.startswith(x0) for w in rest):
            continue
        suffixes = sorted((w[len(x0):] for w in rest), key=len)
        y = suffixes[0]
        if not y:
            continue
        verdict = check_lemma_complete(machine, c, xs, x0, y)
        if verdict.complete:
            return verdict
    return not_complete("entries do not decompose as x1..xj, x0 y .. x0 y^k")


def match_corollary_forms(machine: ConcatMachine, c: Certificate) -> CompletenessVerdict:
    """Recognise {y..y^k}, {ε,y..y^k}, {x,xy..xy^k} and {ε,x,xy..xy^k}

    x must act as a permutation on the target. Candidates: y is the shortest
    non-empty entry (forms 1 and 2) and x the shortest non-empty entry with y
    the rest of the next one (forms 3 and 4).
    """
    words = c.words
    size = len(words)
    if not size:
        return not_complete("no entries")
    nonempty = sorted((w for w in words if w), key=lambda w: (len(w), w))
    has_epsilon = "" in words
    shape = Counter(words)

    candidates: List[Tuple[int, List[str]]] = []
    if nonempty:
        y = nonempty[0]
        candidates.append((1, [power(y, i) for i in range(1, size + 1)]))
        candidates.append((2, [power(y, i) for i in range(size)]))
    elif has_epsilon:
        candidates.append((2, [""]))

    if nonempty:
        x = nonempty[0]
        if _is_permutation(machine, c, x):
            rest = [w for w in nonempty[1:] if w.startswith(x) and len(w) > len(x)]
            y = rest[0][len(x):] if rest else ""
            candidates.append((3, [x + power(y, i) for i in range(size)]))
            if size >= 2 and (y or size == 2):
                candidates.append((4, [""] + [x + power(y, i) for i in range(size - 1)]))

    for form, expected in candidates:
        if Counter(expected) != shape:
            continue
        verdict = _confirm(
            machine, c, _order_of_words(c, expected), via_form(form), f"form {form}"
        )
        if verdict.complete:
            return verdict
    return not_complete("entries match none of the corollary forms")


def check_all_but_one_perm(machine: ConcatMachine, c: Certificate) -> CompletenessVerdict:
    """At most one entry fails to act as a permutation on the target; that
    entry's state goes last"""
    exceptions = [q for q, w in c.entries.items() if not _is_permutation(machine, c, w)]
    if len(exceptions) > 1:
        return not_complete(
            f"{len(exceptions)} entries are not permutations of the target"
        )
    order = sorted(q for q in c.entries if q not in exceptions) + exceptions
    if exceptions:
        return _confirm(
            machine, c, order, VIA_PERM_ALL_BUT_ONE, f"exception: state {exceptions[0]}"
        )
    return _confirm(machine, c, order, VIA_PERM_ALL, "every entry permutes the target")


def _permuted_set(machine: ConcatMachine, c: Certificate, word: str) -> Optional[FrozenSet[int]]:
    """Some S with T \\ B ⊆ S ⊆ T on which the word acts as a permutation"""
    core = c.target - c.base
    optional = sorted(c.base & c.target)
    for size in range(len(optional) + 1):
        for extra in itertools.combinations(optional, size):
            candidate = core | frozenset(extra)
            if acts_as_permutation(machine.b, word, candidate):
                return candidate
    return None


def check_eps_perm(machine: ConcatMachine, c: Certificate) -> CompletenessVerdict:
    """With ε in the set, every other word permuting some S between T \\ B and
    T gives completeness; base states first, then the other entries as listed"""
    if "" not in c.words:
        return not_complete("not applicable: no ε entry")
    witnesses = []
    for q, word in c.entries.items():
        if not word:
            continue
        permuted = _permuted_set(machine, c, word)
        if permuted is None:
            return not_complete(f"entry {q}: {word} permutes no set between T\\B and T")
        witnesses.append(f"{word}:{format_state_set(permuted)}")
    empty = sorted(q for q, w in c.entries.items() if not w)
    order = empty + [q for q, w in c.entries.items() if w]
    return _confirm(machine, c, order, VIA_EPS_PERM, " ".join(witnesses))


def check_base_word(machine: ConcatMachine, c: Certificate) -> Optional[bool]:
    """None without a base word, else whether it reaches (s', B)"""
    if c.base_word is None:
        return None
    try:
        reached = pair_run(machine, initial_pair(machine), c.base_word)
    except AutomatonError:
        return False
    return reached == start_state(c)


def verify_master(machine: ConcatMachine, c: Certificate) -> CompletenessVerdict:
    """Validate the construction set, then try the sufficient conditions in
    turn before deciding completeness outright

    Returns:
        CompletenessVerdict: First successful condition, or the decision
            procedure's verdict (with a cycle) when none applies
    """
    validation = validate_construction_set(machine, c)
    base_reachable = check_base_word(machine, c)
    if base_reachable is False:
        log.warning("Base word %s does not reach (%s', %s)",
                    word_text(c.base_word), c.focus, format_state_set(c.base))
    if not validation:
        return not_complete("; ".join(validation.diagnostics), base_reachable=base_reachable)

    checks = []
    if c.order is not None:
        checks.append(
            lambda: _confirm(machine, c, c.order, VIA_GIVEN_ORDER, "order given by the certificate")
        )
    checks.extend(
        [
            lambda: match_corollary_forms(machine, c),
            lambda: check_all_but_one_perm(machine, c),
            lambda: check_eps_perm(machine, c),
            lambda: search_lemma_complete(machine, c),
            lambda: decide_complete(machine, c),
        ]
    )

    verdict = None
    for check in checks:
        verdict = check()
        if verdict.complete:
            break
        log.debug("Condition failed: %s", verdict.detail)

    log.info(
        "Certificate for focus %s' and target %s: complete=%s via=%s",
        c.focus,
        format_state_set(c.target),
        verdict.complete,
        verdict.via,
    )
    return CompletenessVerdict(
        verdict.complete,
        verdict.order,
        verdict.via,
        verdict.detail,
        verdict.cycle,
        base_reachable,
    )
