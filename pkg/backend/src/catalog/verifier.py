"""
Verification of identities instance by instance, and suite runs over the catalog.

A single instance compares both sides up to the smaller of the requested order
and the validity windows the evaluator actually reached; an instance that
agrees but falls short of the requested order is a failure. Suite runs turn every
failure or error into a Report so one bad instance never aborts the run.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Tuple

import pandas as pd
from pydantic import BaseModel
from tqdm import tqdm

from src.errors import EvaluationError
from src.expr.ast import Identity
from src.expr.evaluator import Evaluator

logger = logging.getLogger(__name__)

REPORT_COLUMNS = [
    "name", "params", "order", "status", "discrepancy_exponent", "delta_numerator", "delta_denominator",
]
_STATUS_RANK = {"fail": 0, "error": 1, "pass": 2}


class Report(BaseModel):
    """Outcome of one (identity, assignment) instance."""
    name: str
    params: str
    order: int
    status: Literal["pass", "fail", "error"]
    discrepancy_exponent: Optional[int] = None
    delta_numerator: Optional[int] = None
    delta_denominator: Optional[int] = None
    message: str = ""


class SuiteSummary(BaseModel):
    reports: List[Report]
    total: int
    passed: int
    failed: int
    errors: int
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.errors == 0


def format_params(assignment: Mapping[str, int]) -> str:
    return ",".join(f"{k}={v}" for k, v in assignment.items())


def verify(identity: Identity, assignment: Mapping[str, int], order: int, attempts: int = 6) -> Report:
    """Compare both sides of one instance; evaluation errors carry the identity and assignment."""
    if identity.order is not None:
        order = min(order, identity.order)
    params = format_params(assignment)
    evaluator = Evaluator(assignment)
    prefix = f"{identity.name}[{params}]"
    try:
        lhs = evaluator.evaluate(identity.lhs, order, attempts=attempts, strict=False, path=f"{prefix}/lhs")
        rhs = evaluator.evaluate(identity.rhs, order, attempts=attempts, strict=False, path=f"{prefix}/rhs")
    except EvaluationError as e:
        path = e.path if e.path.startswith(prefix) else f"{prefix}/{e.path}"
        raise EvaluationError(path, e.cause) from e.cause

    reached = min(o for o in (order, lhs.order, rhs.order) if o is not None)
    exponent = lhs.first_discrepancy(rhs, reached)
    if exponent is None:
        if reached < order:
            logger.debug(f"{prefix}: compared to {reached} instead of {order}")
            return Report(
                name=identity.name, params=params, order=reached, status="fail",
                message=f"agrees only to q^{reached} of the requested q^{order}",
            )
        return Report(name=identity.name, params=params, order=reached, status="pass")
    delta = Fraction(lhs.coefficient_at(exponent)) - Fraction(rhs.coefficient_at(exponent))
    return Report(
        name=identity.name, params=params, order=reached, status="fail",
        discrepancy_exponent=exponent, delta_numerator=delta.numerator, delta_denominator=delta.denominator,
    )


def _sort_key(identity: Identity, assignment: Mapping[str, int], report: Report) -> Tuple:
    return _STATUS_RANK[report.status], identity.name, tuple(assignment.values())


def check_instance(identity: Identity, assignment: Mapping[str, int], order: int, attempts: int = 6) -> Report:
    """Like ``verify``, but any exception becomes a Report with status error."""
    try:
        return verify(identity, assignment, order, attempts)
    except Exception as e:
        return Report(
            name=identity.name, params=format_params(assignment), order=order, status="error",
            message=f"{type(e).__name__}: {e}",
        )


def _run_instance(task: Tuple[Identity, Dict[str, int], int, int]) -> Tuple[Tuple, Report]:
    identity, assignment, order, attempts = task
    report = check_instance(identity, assignment, order, attempts)
    return _sort_key(identity, assignment, report), report


def instances(identities: Iterable[Identity]) -> List[Tuple[Identity, Dict[str, int]]]:
    return [(identity, assignment) for identity in identities for assignment in identity.assignments()]


def summarize(reports: List[Report]) -> SuiteSummary:
    counts = {status: sum(1 for r in reports if r.status == status) for status in _STATUS_RANK}
    return SuiteSummary(
        reports=reports, total=len(reports), passed=counts["pass"], failed=counts["fail"], errors=counts["error"],
    )


def verify_suite(
    identities: Iterable[Identity],
    order: int,
    jobs: int = 1,
    attempts: int = 6,
    progress: bool = True,
) -> SuiteSummary:
    """Verify every in-range instance; the summary lists failures and errors first."""
    tasks = [(identity, assignment, order, attempts) for identity, assignment in instances(identities)]
    logger.info("\n" + "=" * 70)
    logger.info(f"🔍 VERIFYING {len(tasks)} INSTANCES AT ORDER {order} ({jobs} job{'s' if jobs != 1 else ''})")
    logger.info("=" * 70)

    started = time.perf_counter()
    results: List[Tuple[Tuple, Report]] = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            chunk = max(1, len(tasks) // (jobs * 8))
            for item in tqdm(executor.map(_run_instance, tasks, chunksize=chunk), total=len(tasks),
                             desc="Verifying", disable=not progress):
                results.append(item)
    else:
        for task in tqdm(tasks, desc="Verifying", disable=not progress):
            results.append(_run_instance(task))

    results.sort(key=lambda item: item[0])
    summary = summarize([report for _, report in results])
    elapsed = time.perf_counter() - started
    summary.elapsed = elapsed

    for report in summary.reports:
        if report.status == "fail" and report.discrepancy_exponent is None:
            logger.warning(f"❌ {report.name} [{report.params}]: {report.message}")
        elif report.status == "fail":
            logger.warning(f"❌ {report.name} [{report.params}]: first discrepancy at q^{report.discrepancy_exponent}")
        elif report.status == "error":
            logger.error(f"❌ {report.name} [{report.params}]: {report.message}")
    logger.info(
        f"✅ {summary.passed} passed, {summary.failed} failed, {summary.errors} errors "
        f"of {summary.total} in {elapsed:.1f}s"
    )
    return summary


def render_report(summary: SuiteSummary, timing: bool = False) -> str:
    """Tab-separated report followed by a `# total=...` footer; ``timing`` appends the wall time."""
    rows = [report.model_dump(include=set(REPORT_COLUMNS)) for report in summary.reports]
    frame = pd.DataFrame(rows, columns=REPORT_COLUMNS, dtype=object)
    body = frame.to_csv(sep="\t", index=False, lineterminator="\n", na_rep="")
    footer = f"# total={summary.total} pass={summary.passed} fail={summary.failed} error={summary.errors}"
    if timing:
        footer += f" wall={summary.elapsed:.2f}s"
    return body + footer + "\n"


def write_report(summary: SuiteSummary, path, timing: bool = False) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(render_report(summary, timing))
    logger.info(f"  - report written to {path}")
