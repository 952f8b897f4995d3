"""
superq command-line interface.

Every command prints a one-line summary followed by its JSON report, or
writes the report to ``-o``. Exit codes: 0 on success, 1 for unreadable or
unparsable input, 2 for domain errors (the error class name is printed).
"""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer

from core.config import get_config
from core.errors import CalibrationError, InputError, SuperqError
from core.types import GroupName, Parity, SdtrArrangement, TableKind
from entangle import (
    concurrence,
    cross_qutrit,
    is_separable,
    make_qudit,
    superconcurrence,
    supertangle,
    tangle,
    tensor_many,
)
from formats import (
    CalibrationReport,
    ElementFile,
    EvidenceRow,
    MatrixFile,
    MeasureReport,
    MultiStateFile,
    StateFile,
    TableFile,
    read_file,
)
from grassmann import GrassmannElement
from supermatrix import (
    calibrate_sdtr,
    sm_berezinian,
    sm_group_check,
    sm_inverse_supertranspose,
    sm_sdtr,
    sm_supertrace,
    sm_supertranspose,
)
from superstate import st_body, st_inner, st_outer
from verification import run_suites

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="superq",
    help="Grassmann algebra, supermatrices and superqubit entanglement.",
    add_completion=False,
    no_args_is_help=True,
)

TolOption = typer.Option(None, "--tol", help="Residual tolerance")
OutputOption = typer.Option(
    None, "-o", "--output", help="Write the JSON report here"
)
ForceOption = typer.Option(
    False,
    "--force-unnormalized",
    help="Measure states that miss the normalization condition",
)


@app.callback()
def main() -> None:
    """Configure logging once per invocation."""
    config = get_config()
    logging.basicConfig(
        level=config.log_level.upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------


@contextmanager
def _guard() -> Iterator[None]:
    """Translate errors into the exit-code contract."""
    try:
        yield
    except (InputError, OSError) as exc:
        typer.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        raise typer.Exit(code=1) from exc
    except SuperqError as exc:
        typer.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        raise typer.Exit(code=2) from exc


def _emit(summary: str, report, output: Path | None) -> None:
    typer.echo(summary)
    if output is not None:
        output.write_text(report.to_text(), encoding="utf-8")
        logger.info(f"Report written to {output}")
    else:
        typer.echo(report.to_text().rstrip("\n"))


def _element_value(z: GrassmannElement) -> dict:
    return ElementFile.from_domain(z).model_dump(mode="json")


def _parity_of(z: GrassmannElement) -> int | None:
    return None if z.parity is None else int(z.parity)


def _pinned() -> str | None:
    return get_config().sdtr_arrangement


def _element_report(
    measure: str, z: GrassmannElement, output: Path | None, **details
) -> None:
    report = MeasureReport(
        measure=measure,
        value=_element_value(z),
        parity=_parity_of(z),
        calibration=_pinned(),
        details=details,
    )
    _emit(f"{measure} = {z}", report, output)


def _number_report(
    measure: str,
    value: float,
    output: Path | None,
    parity: int | None = None,
    **details,
) -> None:
    report = MeasureReport(
        measure=measure,
        value=value,
        parity=parity,
        calibration=_pinned(),
        details=details,
    )
    _emit(f"{measure} = {value:.12g}", report, output)


# -----------------------------------------------------------------------------
# Supermatrix commands
# -----------------------------------------------------------------------------


@app.command("ber")
def ber_command(
    matrix: Path = typer.Argument(..., help="Matrix file"),
    output: Path | None = OutputOption,
) -> None:
    """Berezinian of a deg-0 supermatrix."""
    with _guard():
        m = read_file(matrix, MatrixFile)
        _element_report("ber", sm_berezinian(m), output)


@app.command("sdtr")
def sdtr_command(
    matrix: Path = typer.Argument(..., help="(2|1) matrix file"),
    arrangement: SdtrArrangement | None = typer.Option(
        None, "--arrangement", help="Override the pinned arrangement"
    ),
    config: Path | None = typer.Option(
        None, "--config", help="Calibration file to read the pin from"
    ),
    output: Path | None = OutputOption,
) -> None:
    """sdTr of a (2|1) supermatrix under the calibrated arrangement."""
    with _guard():
        if config is not None:
            get_config().set("calibration_path", config)
        m = read_file(matrix, MatrixFile)
        chosen = arrangement.value if arrangement else _pinned()
        value = sm_sdtr(m, chosen)
        report = MeasureReport(
            measure="sdtr",
            value=_element_value(value),
            parity=_parity_of(value),
            calibration=chosen,
        )
        _emit(f"sdtr = {value}", report, output)


@app.command("str")
def supertrace_command(
    matrix: Path = typer.Argument(..., help="Matrix file"),
    output: Path | None = OutputOption,
) -> None:
    """Supertrace of a homogeneous supermatrix."""
    with _guard():
        m = read_file(matrix, MatrixFile)
        _element_report("str", sm_supertrace(m), output)


@app.command("stranspose")
def stranspose_command(
    matrix: Path = typer.Argument(..., help="Matrix file"),
    inverse: bool = typer.Option(
        False, "--inverse", help="Apply (sT)⁻¹ instead of sT"
    ),
    output: Path | None = OutputOption,
) -> None:
    """Supertranspose of a homogeneous supermatrix."""
    with _guard():
        m = read_file(matrix, MatrixFile)
        image = sm_inverse_supertranspose(m) if inverse else sm_supertranspose(m)
        report = MeasureReport(
            measure="stranspose",
            value=MatrixFile.from_domain(image).model_dump(mode="json"),
            parity=int(image.parity),
            calibration=_pinned(),
            details={"inverse": inverse},
        )
        _emit(f"stranspose of {image.format} deg {int(image.parity)}", report, output)


@app.command("group-check")
def group_check_command(
    matrix: Path = typer.Argument(..., help="Matrix file"),
    group: GroupName = typer.Option(..., "--group", help="Group predicate"),
    tol: float | None = TolOption,
    output: Path | None = OutputOption,
) -> None:
    """Membership residual for SL2, SU2, OSP21 or UOSP21."""
    with _guard():
        m = read_file(matrix, MatrixFile)
        check = sm_group_check(m, group, tol)
        report = MeasureReport(
            measure="group-check",
            value=check.residual,
            calibration=_pinned(),
            details={"group": group.value, "member": check.member},
        )
        verdict = "member" if check.member else "not a member"
        _emit(
            f"group-check {group.value}: {verdict} (residual {check.residual:.3e})",
            report,
            output,
        )


# -----------------------------------------------------------------------------
# State commands
# -----------------------------------------------------------------------------


@app.command("inner")
def inner_command(
    phi: Path = typer.Argument(..., help="State file for the bra side"),
    psi: Path = typer.Argument(..., help="State file for the ket side"),
    output: Path | None = OutputOption,
) -> None:
    """Graded inner product ⟨φ‖ψ⟩."""
    with _guard():
        value = st_inner(read_file(phi, StateFile), read_file(psi, StateFile))
        _element_report("inner", value, output)


@app.command("outer")
def outer_command(
    psi: Path = typer.Argument(..., help="State file"),
    output: Path | None = OutputOption,
) -> None:
    """Density supermatrix ‖ψ⟩⟨ψ‖ and its supertrace."""
    with _guard():
        rho = st_outer(read_file(psi, StateFile))
        trace = sm_supertrace(rho)
        report = MeasureReport(
            measure="outer",
            value=MatrixFile.from_domain(rho).model_dump(mode="json"),
            parity=int(rho.parity),
            calibration=_pinned(),
            details={"supertrace": _element_value(trace)},
        )
        _emit(f"outer: str rho = {trace}", report, output)


@app.command("tensor")
def tensor_command(
    states: list[Path] = typer.Argument(..., help="Two or more state files"),
    output: Path | None = OutputOption,
) -> None:
    """Graded tensor product of the given states, left to right."""
    with _guard():
        if len(states) < 2:
            raise InputError("tensor needs at least two state files")
        product = tensor_many(read_file(path, StateFile) for path in states)
        report = MeasureReport(
            measure="tensor",
            value=MultiStateFile.from_domain(product).model_dump(mode="json"),
            parity=int(product.parity),
            calibration=_pinned(),
        )
        _emit(
            f"tensor: {product.parties} parties, parity {int(product.parity)}, "
            f"{len(product.amplitudes)} nonzero amplitudes",
            report,
            output,
        )


@app.command("cross")
def cross_command(
    a: Path = typer.Argument(..., help="(3|0) state file"),
    b: Path = typer.Argument(..., help="(3|0) state file"),
    force: bool = ForceOption,
    output: Path | None = OutputOption,
) -> None:
    """Cross-qutrit of two qutrits, returned unnormalized."""
    with _guard():
        qa = make_qudit(st_body(read_file(a, StateFile)), force=force)
        qb = make_qudit(st_body(read_file(b, StateFile)), force=force)
        result = cross_qutrit(qa, qb)
        report = MeasureReport(
            measure="cross",
            value=[[x.real, x.imag] for x in result.qudit.amps],
            calibration=_pinned(),
            details={"norm_squared": result.norm_squared},
        )
        _emit(
            f"cross: norm² = {result.norm_squared:.12g}", report, output
        )


# -----------------------------------------------------------------------------
# Entanglement commands
# -----------------------------------------------------------------------------


@app.command("concurrence")
def concurrence_command(
    table: Path = typer.Argument(..., help="Qubit table file"),
    force: bool = ForceOption,
    output: Path | None = OutputOption,
) -> None:
    """C = 2|det x_ij| of a two-qubit state."""
    with _guard():
        value = concurrence(read_file(table, TableFile), force=force)
        _number_report("concurrence", value, output)


@app.command("superconcurrence")
def superconcurrence_command(
    table: Path = typer.Argument(..., help="Two-superqubit table file"),
    parity: int | None = typer.Option(
        None, "--parity", min=0, max=1, help="Expected table parity"
    ),
    output: Path | None = OutputOption,
) -> None:
    """Even or odd superconcurrence 2‖f‖_R."""
    with _guard():
        t = read_file(table, TableFile)
        value = superconcurrence(t, parity)
        _number_report("superconcurrence", value, output, parity=int(t.parity))


@app.command("tangle")
def tangle_command(
    table: Path = typer.Argument(..., help="Qubit or superqubit table file"),
    force: bool = ForceOption,
    output: Path | None = OutputOption,
) -> None:
    """Tangle of a qubit pair, or the supertangle of a super table."""
    with _guard():
        t = read_file(table, TableFile)
        if t.kind == TableKind.QUBIT:
            _number_report("tangle", tangle(t, force=force), output)
            return
        result = supertangle(t)
        details = {
            "implicit_only": result.implicit_only,
            "coefficient": _element_value(result.coefficient),
            "rhs": _element_value(result.rhs),
        }
        if result.implicit_only:
            details["consistent"] = result.consistent
            report = MeasureReport(
                measure="supertangle",
                parity=int(Parity.ODD),
                calibration=_pinned(),
                details=details,
            )
            _emit("supertangle: implicit relation only", report, output)
            return
        report = MeasureReport(
            measure="supertangle",
            value=_element_value(result.value),
            parity=int(Parity.EVEN),
            calibration=_pinned(),
            details=details,
        )
        _emit(f"supertangle = {result.value}", report, output)


@app.command("separable")
def separable_command(
    table: Path = typer.Argument(..., help="Table file"),
    tol: float | None = TolOption,
    output: Path | None = OutputOption,
) -> None:
    """Rank-1 test, plus the witness for super tables."""
    with _guard():
        verdict = is_separable(read_file(table, TableFile), tol)
        report = MeasureReport(
            measure="separable",
            value=verdict.separable,
            calibration=_pinned(),
            details={
                "method": verdict.method,
                "necessary_only": verdict.necessary_only,
                "max_minor": verdict.max_minor,
                "witness_norm": verdict.witness_norm,
            },
        )
        word = "separable" if verdict.separable else "entangled"
        _emit(f"separable: {word} ({verdict.method})", report, output)


# -----------------------------------------------------------------------------
# Verification and calibration
# -----------------------------------------------------------------------------


@app.command("verify")
def verify_command(
    seed: int = typer.Option(42, "--seed", min=0, help="Base seed"),
    iters: int = typer.Option(500, "--iters", min=1, help="Samples per suite"),
    tol: float | None = TolOption,
    suite: list[str] | None = typer.Option(
        None, "--suite", help="Run only these suites (repeatable)"
    ),
    output: Path | None = OutputOption,
) -> None:
    """Run the identity suites; exit 0 iff every gated suite passes."""
    with _guard():
        try:
            report = run_suites(seed=seed, iters=iters, tol=tol, names=suite)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
        for result in report.suites:
            status = "pass" if result.passed else "FAIL"
            if not result.gate:
                status = f"info ({status})"
            logger.info(f"{result.name}: {status} worst={result.worst:.3e}")
        _emit(report.summary(), report, output)
    if not report.passed:
        raise typer.Exit(code=2)


@app.command("calibrate-sdtr")
def calibrate_sdtr_command(
    seed: int = typer.Option(0, "--seed", min=0, help="Sample seed"),
    tol: float | None = TolOption,
    samples: int = typer.Option(100, "--samples", min=1, help="Per oracle"),
    config: Path | None = typer.Option(
        None, "--config", help="Calibration file to write (default: pinned path)"
    ),
    output: Path | None = OutputOption,
) -> None:
    """Select and pin the sdTr arrangement that passes both oracles."""
    with _guard():
        try:
            result = calibrate_sdtr(seed=seed, tol=tol, samples=samples)
        except CalibrationError as exc:
            report = CalibrationReport(
                evidence=[EvidenceRow(**row) for row in exc.evidence]
            )
            _emit("calibrate-sdtr: no unique survivor", report, output)
            raise
        path = get_config().pin_sdtr_arrangement(result.arrangement.value, config)
        report = CalibrationReport(
            pinned=result.arrangement.value,
            survivors=[a.value for a in result.survivors],
            path=str(path),
            evidence=[EvidenceRow(**row) for row in result.evidence],
        )
        _emit(
            f"calibrate-sdtr: pinned {result.arrangement.value}", report, output
        )


def run() -> None:
    """Console-script entry point."""
    app()


if __name__ == "__main__":
    run()
