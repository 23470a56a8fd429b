"""Family verification and sweeps"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from concat_reach_core.analysis import minimize_count, reach_report
from concat_reach_core.certificates.completeness import verify_master
from concat_reach_core.concat import ConcatMachine
from concat_reach_core.errors import CertificateError, VerificationError
from concat_reach_core.utils import EMPTY_SET
from concat_reach_core.witnesses.factory import create_family
from concat_reach_core.witnesses.family import extras_text

log = logging.getLogger(__name__)

SWEEP_COLUMNS = ("family", "m", "n", "bfs", "formula", "match", "classes", "cert-via")


@dataclass
class FamilyReport:
    """Oracle results for one family at one size"""

    name: str
    m: int
    n: int
    mode: str
    formula: int
    reachable: int
    classes: int
    exact_reachable: bool
    minimal_a: bool
    minimal_b: bool
    extras: Dict[str, Any] = field(default_factory=dict)
    bound: Optional[int] = None
    by_focus: Dict[str, int] = field(default_factory=dict)
    negative: bool = False
    certificate_complete: Optional[bool] = None
    certificate_via: Optional[str] = None
    expected_via: Optional[str] = None
    certificate_note: str = ""
    expected_classes: Optional[int] = None
    erratum: str = ""

    @property
    def bfs_match(self) -> bool:
        return self.reachable == self.formula

    @property
    def wanted_classes(self) -> int:
        return self.formula if self.expected_classes is None else self.expected_classes

    @property
    def class_match(self) -> bool:
        return self.classes == self.wanted_classes

    @property
    def matches(self) -> bool:
        """Classes equal the expected count, and BFS the formula for exact families"""
        return self.class_match and (self.bfs_match or not self.exact_reachable)

    @property
    def verified(self) -> bool:
        return not self.problems()

    @property
    def empty_focus_count(self) -> int:
        return self.by_focus.get(EMPTY_SET, 0)

    def problems(self) -> List[str]:
        problems = []
        if self.exact_reachable and not self.bfs_match:
            problems.append(
                f"reachable states differ\n  got: {self.reachable}\n  wanted: {self.formula}"
            )
        if not self.class_match:
            problems.append(
                f"distinguishability classes differ\n  got: {self.classes}\n  wanted: {self.wanted_classes}"
            )
        if not self.minimal_a:
            problems.append(f"operand A is not minimal (m={self.m})")
        if not self.minimal_b:
            problems.append(f"operand B is not minimal (n={self.n})")
        if self.certificate_complete is False:
            problems.append(f"certificate does not verify\n  detail: {self.certificate_note}")
        elif self.certificate_complete is None and not self.negative:
            problems.append(f"no certificate\n  detail: {self.certificate_note}")
        return problems

    def assert_verified(self):
        """
        Raises:
            VerificationError: The counts or the certificate do not hold
        """
        problems = self.problems()
        if problems:
            raise VerificationError(
                f"Family {self.name} (m={self.m}, n={self.n}) is not verified\n"
                + "\n".join(problems)
            )

    def row(self) -> Tuple[str, ...]:
        """Sweep row, in SWEEP_COLUMNS order"""
        return (
            self.name,
            str(self.m),
            str(self.n),
            str(self.reachable),
            str(self.formula),
            "yes" if self.bfs_match else "no",
            str(self.classes),
            self.certificate_via or "-",
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FamilyReport":
        return cls(**data)


def verify_family(name: str, m: int, n: int, **extras) -> FamilyReport:
    """Run every oracle on a family at (m, n)

    Raises:
        FamilyConstraintError: Unknown family or parameters violating its
            constraints
    """
    family = create_family(name)
    log.info("Verifying family [%s] m=%s n=%s %s", name, m, n, extras_text(extras))
    a, b = family.build(m, n, **extras)
    machine = ConcatMachine(a, b)
    report = reach_report(machine)

    result = FamilyReport(
        name=name,
        m=m,
        n=n,
        mode=machine.mode,
        formula=family.formula(m, n),
        reachable=report.reachable_count,
        classes=report.class_count,
        exact_reachable=family.is_exact(m, n),
        minimal_a=minimize_count(a) == m,
        minimal_b=minimize_count(b) == n,
        extras=dict(extras),
        bound=report.bound,
        by_focus=report.by_focus,
        negative=family.negative,
        expected_via=family.technique(m, n),
        expected_classes=family.class_count(m, n),
        erratum=family.erratum,
    )

    try:
        certificate = family.certificate(m, n, **extras)
    except CertificateError as ex:
        if not family.negative:
            log.warning("No certificate for [%s] m=%s n=%s: %s", name, m, n, ex)
        result.certificate_note = str(ex)
        return result

    verdict = verify_master(machine, certificate)
    result.certificate_complete = verdict.holds
    result.certificate_via = verdict.via
    result.certificate_note = verdict.detail
    return result


def _sweep_cell(cell: Tuple[str, int, int]) -> Optional[FamilyReport]:
    name, m, n = cell
    family = create_family(name)
    try:
        family.check(m, n)
    except ValueError:
        return None
    return verify_family(name, m, n)


def sweep_cells(names: Iterable[str], ms: Sequence[int], ns: Sequence[int]) -> List[Tuple[str, int, int]]:
    return [(name, m, n) for name in names for m in ms for n in ns]


def sweep(
    names: Iterable[str], ms: Sequence[int], ns: Sequence[int], workers: int = 1
) -> Iterator[FamilyReport]:
    """Verify every (family, m, n) cell, skipping cells that violate the
    family constraints. Reports come back in cell order.

    Args:
        names (Iterable[str]): Family names
        ms (Sequence[int]): Values of m
        ns (Sequence[int]): Values of n
        workers (int): Process pool size; 1 runs inline
    """
    cells = sweep_cells(names, ms, ns)
    log.info("Sweeping %d cells with %d workers", len(cells), workers)
    if workers <= 1:
        results = map(_sweep_cell, cells)
        for report in results:
            if report is not None:
                yield report
        return

    with ProcessPoolExecutor(max_workers=workers) as executor:
        for report in executor.map(_sweep_cell, cells):
            if report is not None:
                log.info("Cell finished [%s] m=%s n=%s", report.name, report.m, report.n)
                yield report
