"""
Report models printed by the CLI: measure results, sdTr calibration
evidence and verification outcomes.
"""

from typing import Any

from pydantic import Field

from formats.models import CanonicalModel


class MeasureReport(CanonicalModel):
    """Result of one operation or measure."""

    measure: str = Field(..., description="Command that produced the value")
    value: Any = Field(
        default=None,
        description="Real number, element payload or file payload",
    )
    parity: int | None = Field(
        default=None, description="Parity of the result when it has one"
    )
    calibration: str | None = Field(
        default=None, description="Pinned sdTr arrangement in effect"
    )
    details: dict[str, Any] = Field(
        default_factory=dict, description="Operation-specific extras"
    )


class EvidenceRow(CanonicalModel):
    arrangement: str = Field(..., description="Arrangement id")
    det_residual: float = Field(..., description="Worst |sdTr − det| on bodies")
    outer_residual: float = Field(
        ..., description="Worst ‖sdTr‖_R on outer products"
    )
    survived: bool = Field(..., description="Passed both oracles")


class CalibrationReport(CanonicalModel):
    """Pinned arrangement plus the evidence table that selected it."""

    pinned: str | None = Field(default=None, description="Arrangement id")
    survivors: list[str] = Field(default_factory=list)
    path: str | None = Field(default=None, description="Calibration file")
    evidence: list[EvidenceRow] = Field(default_factory=list)


class SuiteResult(CanonicalModel):
    name: str = Field(..., description="Suite name")
    passed: bool = Field(..., description="Worst residual within tolerance")
    worst: float = Field(..., ge=0.0, description="Largest residual seen")
    samples: int = Field(..., ge=0, description="Checks performed")
    gate: bool = Field(
        default=True, description="False for informational suites"
    )
    note: str | None = Field(default=None, description="Failure detail")


class VerifyReport(CanonicalModel):
    """All suites of one verify run, ordered by name."""

    seed: int = Field(..., ge=0)
    iters: int = Field(..., ge=1)
    tol: float = Field(..., ge=0.0)
    suites: list[SuiteResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites if suite.gate)

    def summary(self) -> str:
        gated = [suite for suite in self.suites if suite.gate]
        failed = [suite.name for suite in gated if not suite.passed]
        status = "PASS" if not failed else "FAIL"
        line = f"verify {status}: {len(gated) - len(failed)}/{len(gated)} suites"
        if failed:
            line += f" (failed: {', '.join(failed)})"
        return line
