import itertools
import json

import pytest

from concat_reach_core.analysis import reachable_states
from concat_reach_core.certificates import (
    Certificate,
    CompletenessVerdict,
    check_all_but_one_perm,
    check_base_word,
    check_complete_with_order,
    check_eps_perm,
    check_lemma_complete,
    constraint_graph,
    decide_complete,
    exhaustive_complete,
    format_certificate,
    is_q_word,
    match_corollary_forms,
    parse_certificate,
    search_lemma_complete,
    synthesize_reach_word,
    validate_construction_set,
    verify_master,
    via_form,
)
from concat_reach_core.certificates.model import (
    VIA_DECIDED,
    VIA_GIVEN_ORDER,
    VIA_LEMMA,
    VIA_PERM_ALL_BUT_ONE,
    VIA_TAGS,
)
from concat_reach_core.concat import ConcatMachine, PairState, pair_run
from concat_reach_core.dfa import Dfa, random_dfa
from concat_reach_core.errors import CertificateError, ParseError

from conftest import MASLOV_CERT


@pytest.fixture
def maslov_cert() -> Certificate:
    return Certificate(1, (), (1, 2, 3), {1: "aaa", 2: "aaab", 3: "aaabb"}, base_word="")


@pytest.fixture
def crossing():
    """A single final A-state; W[2] = a loses state 3 and W[3] = b loses
    state 2, so 2 and 3 must precede each other"""
    a = Dfa(1, "ab", {"a": "id", "b": "id"}, finals=[1], name="loop")
    b = Dfa(3, "ab", {"a": "[2,2,1]", "b": "[3,3,1]"}, finals=[3], name="crossing")
    machine = ConcatMachine(a, b)
    cert = Certificate(1, {1}, {1, 2, 3}, {1: "", 2: "a", 3: "b"})
    return machine, cert


def test_parse_certificate(maslov_cert):
    c = parse_certificate(MASLOV_CERT, 3)
    assert c == maslov_cert
    assert c.words == ["aaa", "aaab", "aaabb"]
    assert parse_certificate(format_certificate(c), 3) == c


def test_parse_certificate_fills_base_entries():
    c = parse_certificate("focus 2'\nbase {1,n}\ntarget {1..n}\nentry 2: b\n", 3)
    assert c.focus == 2
    assert c.entries == {2: "b", 1: "", 3: ""}
    assert c.base_word is None
    assert c.order is None


def test_parse_certificate_order():
    c = parse_certificate("focus 1\ntarget {1,2}\nentry 1: a\nentry 2: b\norder 2 1\n", 2)
    assert c.order == (2, 1)


@pytest.mark.parametrize(
    "text,line",
    [
        ("focus x\ntarget {1}\nentry 1: a\n", 1),
        ("focus 1\ntarget {1}\nentry 1: (a\n", 3),
        ("focus 1\ntarget {1}\nentry 1: a\nentry 1: b\n", 4),
        ("focus 1\ntarget {1,7}\n", 2),
        ("focus 1\nsomething else\n", 2),
        ("target {1}\nentry 1: a\n", None),
        ("focus 1\ntarget {1,2}\nentry 1: a\n", None),
        ("focus 1\ntarget {1,2}\nentry 1: a\nentry 2: b\norder 1 1\n", None),
    ],
)
def test_parse_certificate_errors(text, line):
    with pytest.raises(ParseError) as excinfo:
        parse_certificate(text, 3)
    assert excinfo.value.line == line


def test_certificate_preconditions():
    with pytest.raises(CertificateError):
        Certificate(1, {1}, {2, 3}, {2: "a", 3: "b"})
    with pytest.raises(CertificateError):
        Certificate(1, (), {1, 2}, {1: "a"})
    with pytest.raises(CertificateError):
        Certificate(1, (), {1, 2}, {1: "a", 2: "b"}, order=(1, 3))


def test_validation(maslov, maslov_cert):
    assert validate_construction_set(maslov, maslov_cert)
    assert is_q_word(maslov, maslov_cert, "aaab", 2)
    assert not is_q_word(maslov, maslov_cert, "aaab", 3)
    assert check_base_word(maslov, maslov_cert) is True

    broken = Certificate(1, (), (1, 2, 3), {1: "aaa", 2: "aaabb", 3: "aaab"})
    validation = validate_construction_set(maslov, broken)
    assert not validation
    assert len(validation.diagnostics) == 2
    assert check_base_word(maslov, broken) is None


def test_words_outside_the_shared_alphabet_are_rejected():
    a = Dfa(1, "abc", {"a": "id", "b": "id", "c": "id"}, finals=[1])
    b = Dfa(3, "ab", {"a": "[2,2,1]", "b": "[3,3,1]"}, finals=[3])
    machine = ConcatMachine(a, b)
    cert = Certificate(1, {1}, {1, 2, 3}, {1: "", 2: "a", 3: "cb"})
    validation = validate_construction_set(machine, cert)
    assert not validation
    assert "leaves the shared alphabet" in validation.diagnostics[0]
    verdict = verify_master(machine, cert)
    assert not verdict.complete
    assert "shared alphabet" in verdict.detail


def test_maslov_certificate_is_complete(maslov, maslov_cert):
    assert check_complete_with_order(maslov, maslov_cert, (1, 2, 3))
    assert not check_complete_with_order(maslov, maslov_cert, (1, 3, 2))
    with pytest.raises(CertificateError):
        check_complete_with_order(maslov, maslov_cert, (1, 2))

    graph = constraint_graph(maslov, maslov_cert)
    assert graph.edges == [(1, 2), (1, 3), (2, 3)]
    assert decide_complete(maslov, maslov_cert) == CompletenessVerdict(
        True, (1, 2, 3), VIA_DECIDED, "3 precedence constraints"
    )
    assert exhaustive_complete(maslov, maslov_cert) == (1, 2, 3)

    verdict = verify_master(maslov, maslov_cert)
    assert verdict.holds
    assert verdict.via == via_form(3)
    assert verdict.order == (1, 2, 3)
    assert verdict.base_reachable is True


def test_sufficient_conditions_on_maslov(maslov, maslov_cert):
    assert match_corollary_forms(maslov, maslov_cert).via == via_form(3)
    assert not check_all_but_one_perm(maslov, maslov_cert).complete
    assert check_eps_perm(maslov, maslov_cert).detail == "not applicable: no ε entry"
    lemma = check_lemma_complete(maslov, maslov_cert, ["aaa"], "aaa", "b")
    assert lemma.complete and lemma.via == VIA_LEMMA
    assert not check_lemma_complete(maslov, maslov_cert, ["aaab"], "", "b").complete


def test_given_order_is_tried_first(maslov, maslov_cert):
    verdict = verify_master(maslov, maslov_cert.with_order((1, 2, 3)))
    assert verdict.via == VIA_GIVEN_ORDER
    # a wrong order falls through to the other conditions
    verdict = verify_master(maslov, maslov_cert.with_order((3, 2, 1)))
    assert verdict.complete and verdict.via == via_form(3)


def test_missing_base_word_target(maslov, maslov_cert):
    cert = Certificate(1, (), (1, 2, 3), maslov_cert.entries, base_word="a")
    verdict = verify_master(maslov, cert)
    assert verdict.complete
    assert verdict.base_reachable is False
    assert not verdict.holds


def test_crossing_constraints_form_a_cycle(crossing):
    machine, cert = crossing
    assert validate_construction_set(machine, cert)
    assert constraint_graph(machine, cert).edges == [(3, 2), (2, 3)]
    verdict = decide_complete(machine, cert)
    assert not verdict.complete
    assert verdict.cycle == (3, 2, 3)
    assert exhaustive_complete(machine, cert) is None

    verdict = verify_master(machine, cert)
    assert not verdict.complete
    assert verdict.cycle == (3, 2, 3)
    assert "constraint cycle: 3 -> 2 -> 3" in verdict.detail


def test_epsilon_and_one_word_is_form_2(crossing):
    machine, _ = crossing
    cert = Certificate(1, {1}, {1, 2}, {1: "", 2: "a"})
    verdict = verify_master(machine, cert)
    assert verdict.complete
    assert verdict.via == via_form(2)
    assert verdict.order == (1, 2)


def test_base_states_sharing_the_empty_word():
    """Two base states both spelled ε each get their own place in the order"""
    a = Dfa(1, "ab", {"a": "id", "b": "id"}, finals=[1], name="loop")
    b = Dfa(4, "ab", {"a": "[3,4,1,2]", "b": "[4,4,2,2]"}, finals=[4], name="swap")
    machine = ConcatMachine(a, b)
    cert = Certificate(1, {1, 2}, {1, 2, 3, 4}, {1: "", 2: "", 3: "aa", 4: "aab"})
    assert validate_construction_set(machine, cert)

    verdict = search_lemma_complete(machine, cert)
    assert verdict.complete
    assert verdict.via == VIA_LEMMA
    assert verdict.order == (1, 2, 3, 4)

    verdict = verify_master(machine, cert)
    assert verdict.complete
    assert verdict.via == VIA_PERM_ALL_BUT_ONE
    assert verdict.order == (1, 2, 3, 4)


def test_verdict_round_trips_through_json(crossing, maslov, maslov_cert):
    machine, cert = crossing
    for verdict in (verify_master(machine, cert), verify_master(maslov, maslov_cert)):
        document = json.loads(json.dumps(verdict.to_dict()))
        assert CompletenessVerdict.from_dict(document) == verdict


def test_via_tags():
    assert via_form(3) == "cor-complete-form-3"
    assert len(set(VIA_TAGS)) == len(VIA_TAGS)


def test_synthesis_reaches_every_set(maslov, maslov_cert):
    order = verify_master(maslov, maslov_cert).order
    reachable = reachable_states(maslov)
    start = PairState.of(maslov_cert.focus, maslov_cert.base)
    for size in range(4):
        for states in itertools.combinations((1, 2, 3), size):
            word = synthesize_reach_word(maslov, maslov_cert, order, states)
            target = PairState.of(1, states)
            assert pair_run(maslov, start, word) == target
            assert target in reachable
    assert synthesize_reach_word(maslov, maslov_cert, order, {2, 3}) == "aaabaaab"


def test_synthesis_preconditions(maslov, maslov_cert, crossing):
    with pytest.raises(CertificateError):
        synthesize_reach_word(maslov, maslov_cert, (1, 2, 3), {4})
    with pytest.raises(CertificateError):
        synthesize_reach_word(maslov, maslov_cert, (3, 2, 1), {2})
    machine, cert = crossing
    with pytest.raises(CertificateError):
        synthesize_reach_word(machine, cert, (1, 2, 3), {1, 2})
    with pytest.raises(CertificateError):
        synthesize_reach_word(machine, cert, (1, 2, 3), {2})


def _random_certificate(rng, n, alphabet):
    size = rng.randint(1, min(n, 5))
    target = rng.sample(range(1, n + 1), size)
    base = [q for q in target if rng.random() < 0.3]
    entries = {}
    for q in target:
        length = 0 if q in base else rng.randint(0, 4)
        entries[q] = "".join(rng.choice(alphabet) for _ in range(length))
    return Certificate(rng.randint(1, 3), base, target, entries)


def test_decision_agrees_with_exhaustive_search(rng):
    agreed = 0
    for _ in range(1000):
        n = rng.randint(1, 6)
        alphabet = rng.choice(["ab", "abc"])
        machine = ConcatMachine(random_dfa(rng, 3, alphabet), random_dfa(rng, n, alphabet))
        cert = _random_certificate(rng, n, alphabet)
        verdict = decide_complete(machine, cert)
        order = exhaustive_complete(machine, cert)
        assert verdict.complete == (order is not None)
        if verdict.complete:
            assert check_complete_with_order(machine, cert, verdict.order)
        else:
            assert verdict.cycle[0] == verdict.cycle[-1]
        agreed += 1
    assert agreed == 1000
