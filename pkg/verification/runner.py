"""
Suite runner behind the ``verify`` command.

Suites run in name order and each one gets its own numpy generator seeded
from (seed, crc32(name)), so a report depends only on the seed, the
iteration count and the tolerance.
"""

import logging
import zlib
from collections.abc import Iterable

import numpy as np

from core.config import get_config
from core.errors import SuperqError
from formats.reports import SuiteResult, VerifyReport
from verification.suites import SUITES, Suite

logger = logging.getLogger(__name__)


def suite_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode("utf-8"))])


def run_suite(suite: Suite, seed: int, iters: int, tol: float) -> SuiteResult:
    """Run one suite and summarize its residuals."""
    limit = tol if suite.tol is None else suite.tol
    rng = suite_rng(seed, suite.name)
    worst, count, note = 0.0, 0, None
    try:
        for residual in suite.check(rng, suite.samples(iters)):
            count += 1
            residual = float(residual)
            if np.isnan(residual):
                worst, note = float("inf"), "residual is NaN"
                break
            worst = max(worst, residual)
    except SuperqError as exc:
        worst, note = float("inf"), f"{type(exc).__name__}: {exc}"

    passed = worst <= limit
    if not passed and note is None:
        note = f"worst residual {worst:.3e} exceeds {limit:.1e}"
    logger.info(
        f"{suite.name}: {'pass' if passed else 'fail'} "
        f"(worst {worst:.3e}, {count} samples)"
    )
    return SuiteResult(
        name=suite.name,
        passed=passed,
        worst=worst,
        samples=count,
        gate=suite.gate,
        note=note,
    )


def run_suites(
    seed: int = 0,
    iters: int = 500,
    tol: float | None = None,
    names: Iterable[str] | None = None,
) -> VerifyReport:
    """Run the named suites (all by default) in name order.

    Args:
        seed: base seed of every suite generator.
        iters: nominal samples per suite.
        tol: residual tolerance for suites without their own.
        names: subset of suite names; unknown names raise KeyError.

    Returns:
        The VerifyReport.
    """
    tol = get_config().default_tolerance if tol is None else tol
    selected = sorted(SUITES) if names is None else sorted(set(names))
    missing = [name for name in selected if name not in SUITES]
    if missing:
        raise KeyError(f"Unknown verification suites: {', '.join(missing)}")

    results = [run_suite(SUITES[name], seed, iters, tol) for name in selected]
    report = VerifyReport(seed=seed, iters=iters, tol=tol, suites=results)
    logger.info(report.summary())
    return report
