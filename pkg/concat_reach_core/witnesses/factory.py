"""Witness family factory"""

import logging
from typing import Tuple

from concat_reach_core.certificates.model import Certificate
from concat_reach_core.dfa import Dfa
from concat_reach_core.errors import FamilyConstraintError
from concat_reach_core.witnesses import catalog  # noqa: F401  (registers the families)
from concat_reach_core.witnesses.family import FAMILIES, WitnessFamily

log = logging.getLogger(__name__)


def family_names() -> Tuple[str, ...]:
    """Catalog names in registration order"""
    return tuple(FAMILIES)


def positive_names() -> Tuple[str, ...]:
    """Families with a construction-set certificate"""
    return tuple(name for name in FAMILIES if not create_family(name).negative)


def create_family(name: str) -> WitnessFamily:
    """Create a witness family from its catalog name

    Args:
        name (str): Catalog name, e.g. reg-mas70

    Returns:
        WitnessFamily: Family instance

    Raises:
        FamilyConstraintError: Unknown name
    """
    cls = FAMILIES.get(name)
    if cls is None:
        raise FamilyConstraintError(
            f"unknown witness family {name!r} (known: {', '.join(FAMILIES)})"
        )
    return cls()


def build_family(name: str, m: int, n: int, **extras) -> Tuple[Dfa, Dfa]:
    """Operands of a family at (m, n)"""
    log.debug("Building family [%s] m=%s n=%s", name, m, n)
    return create_family(name).build(m, n, **extras)


def claimed_count(name: str, m: int, n: int, **extras) -> int:
    """Displayed state complexity of the concatenation

    Raises:
        FamilyConstraintError: Unknown name or parameters violating the
            family constraints
    """
    family = create_family(name)
    family.check(m, n, **extras)
    return family.formula(m, n)


def build_certificate(name: str, m: int, n: int, **extras) -> Certificate:
    """Certificate of a family at (m, n)

    Raises:
        CertificateError: Negative family, or not applicable at this size
    """
    family = create_family(name)
    family.check(m, n, **extras)
    return family.certificate(m, n, **extras)
