"""Construction-set certificates"""
from concat_reach_core.certificates.completeness import (
    check_all_but_one_perm,
    check_base_word,
    check_complete_with_order,
    check_eps_perm,
    check_lemma_complete,
    constraint_graph,
    decide_complete,
    exhaustive_complete,
    is_q_word,
    match_corollary_forms,
    search_lemma_complete,
    start_state,
    validate_construction_set,
    verify_master,
)
from concat_reach_core.certificates.model import (
    VIA_TAGS,
    Certificate,
    CompletenessVerdict,
    ConstraintGraph,
    Validation,
    format_certificate,
    parse_certificate,
    via_form,
)
from concat_reach_core.certificates.synthesis import synthesize_reach_word

__all__ = [
    "VIA_TAGS",
    "Certificate",
    "CompletenessVerdict",
    "ConstraintGraph",
    "Validation",
    "check_all_but_one_perm",
    "check_base_word",
    "check_complete_with_order",
    "check_eps_perm",
    "check_lemma_complete",
    "constraint_graph",
    "decide_complete",
    "exhaustive_complete",
    "format_certificate",
    "is_q_word",
    "match_corollary_forms",
    "parse_certificate",
    "search_lemma_complete",
    "start_state",
    "synthesize_reach_word",
    "validate_construction_set",
    "verify_master",
    "via_form",
]
