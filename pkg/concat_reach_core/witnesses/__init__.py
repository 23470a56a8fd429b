"""Witness families for concatenation state complexity"""
from concat_reach_core.witnesses.factory import (
    build_certificate,
    build_family,
    claimed_count,
    create_family,
    family_names,
    positive_names,
)
from concat_reach_core.witnesses.family import WitnessFamily
from concat_reach_core.witnesses.verify import (
    SWEEP_COLUMNS,
    FamilyReport,
    sweep,
    verify_family,
)

__all__ = [
    "SWEEP_COLUMNS",
    "FamilyReport",
    "WitnessFamily",
    "build_certificate",
    "build_family",
    "claimed_count",
    "create_family",
    "family_names",
    "positive_names",
    "sweep",
    "verify_family",
]
