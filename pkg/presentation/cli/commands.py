"""
Command implementations of the hsl-verify CLI.
Presentation Layer - CLI Package

Each command takes a validated config, writes its artifact through
ReportStorage and returns the process exit code (0 pass, 1 check failure).
Errors propagate as VerificationError subclasses carrying their own exit code.
"""

import csv
import io
import itertools
import logging
import time
from typing import Callable, Dict, List, Optional, TextIO, Tuple

from business.geometry.surface import compute_surface_field
from business.verification.checks import MIN_CHECK_GRID, CheckReport, run_checks
from business.verification.variation import first_variation, seeded_bumps
from data_access.catalog.entry import CatalogEntry
from data_access.repositories.catalog_repository import CatalogRepository, catalog_repository
from infrastructure.config.settings import get_settings
from infrastructure.errors import BadParameter, GridTooCoarse, NumericalAbort, Unsupported
from infrastructure.geometry.ambient import AmbientKind
from infrastructure.geometry.immersion import Rectangle
from infrastructure.storage.report_storage import ReportStorage, StoredArtifact
from presentation.schemas.report_schemas import (
    BumpSchema,
    CheckReportSchema,
    CheckSchema,
    SweepRecordSchema,
    SweepReportSchema,
    VariationReportSchema,
)
from presentation.schemas.run_schemas import RunConfig, SweepConfig

logger = logging.getLogger(__name__)

FIELD_COLUMNS = ("x", "y", "K", "absH", "deltaAlpha", "dAlpha", "nablaPerpH_norm", "nablaA_norm", "rhoN")
VARIATION_THRESHOLD = 1e-6


class _Stopwatch:
    """wall_ms for reports: None unless timing was requested."""

    def __init__(self, enabled: bool):
        self.enabled = enabled or get_settings().record_wall_time
        self.started = time.perf_counter()

    def elapsed(self) -> Optional[float]:
        if not self.enabled:
            return None
        return round((time.perf_counter() - self.started) * 1000.0, 3)


def _status(passed: bool, text: str, out: Optional[TextIO]) -> None:
    print(f"{'✅' if passed else '❌'} {text}", file=out)


def _build_entry(config: RunConfig, repository: CatalogRepository) -> CatalogEntry:
    entry = repository.build(config.entry, config.params)
    if config.domain is not None:
        entry = entry.with_domain(Rectangle(*config.domain))
    return entry


def check_report_schema(report: CheckReport, seed: Optional[int], wall_ms: Optional[float]) -> CheckReportSchema:
    """Map an in-memory CheckReport onto the report file schema."""
    return CheckReportSchema(
        entry=report.entry_id,
        params=report.params,
        grid=report.grid,
        profile=report.profile.name,
        checks=[
            CheckSchema(
                name=check.name,
                sup_residual=check.sup_residual,
                tolerance=check.tolerance,
                passed=check.passed,
                argmax_point=check.argmax_point,
            )
            for check in report.checks
        ],
        overall_pass=report.overall_pass,
        wall_ms=wall_ms,
        seed=seed,
    )


def cmd_list(repository: CatalogRepository = catalog_repository, out: Optional[TextIO] = None) -> int:
    """
    Print every family with its parameter schema and constraint clauses.

    Returns:
        Exit code 0
    """
    for template in repository.list_catalog():
        print(template.schema_line(), file=out)
        for spec in template.parameters:
            print(f"    {spec.name} = {spec.default:g}  ({spec.description})", file=out)
        for constraint in template.constraints:
            print(f"    {constraint.clause}  <- \"{constraint.source}\"", file=out)
    controls = repository.list_controls()
    if controls:
        print("controls:", file=out)
        for template in controls:
            print(f"  {template.schema_line()}  ({template.description})", file=out)
    return 0


def cmd_verify(
    config: RunConfig,
    storage: ReportStorage,
    repository: CatalogRepository = catalog_repository,
    out: Optional[TextIO] = None,
) -> int:
    """
    Run the check suite on one entry and write a JSON report.

    Returns:
        0 when every check passes, 1 otherwise
    """
    clock = _Stopwatch(config.timing)
    entry = _build_entry(config, repository)
    report = run_checks(entry, grid=config.grid, profile=config.profile)
    schema = check_report_schema(report, config.seed, clock.elapsed())
    artifact = storage.write_text(config.out or f"verify-{entry.id}.json", schema.to_json())

    for check in report.failed():
        _status(False, f"{check.name}: {check.sup_residual:.3e} >= {check.tolerance:.1e} at {check.argmax_point}", out)
    passed = sum(check.passed for check in report.checks)
    _status(report.overall_pass, f"{entry.id}: {passed}/{len(report.checks)} checks passed -> {artifact.path}", out)
    return 0 if report.overall_pass else 1


def expand_ranges(
    config: SweepConfig, repository: CatalogRepository = catalog_repository
) -> Tuple[List[str], List[Dict[str, float]]]:
    """
    Cartesian product of the sampled values, in the order the ranges were given.

    Raises:
        BadParameter: a range names a parameter the family does not have
    """
    template = repository.get_template(config.entry)
    names = list(config.ranges)
    for name in names:
        if name not in template.parameter_names:
            expected = ", ".join(template.parameter_names) or "none"
            raise BadParameter(f"{template.id} has no parameter '{name}' (parameters: {expected})")
    values = [config.ranges[name] for name in names]
    return names, [dict(zip(names, combo)) for combo in itertools.product(*values)]


def cmd_sweep(
    config: SweepConfig,
    storage: ReportStorage,
    repository: CatalogRepository = catalog_repository,
    out: Optional[TextIO] = None,
) -> int:
    """
    Run the checks over a parameter grid; invalid tuples are recorded as skipped.

    Returns:
        0 when every checked tuple passes, 1 otherwise

    Raises:
        BadParameter: no tuple of the sweep satisfies the family constraints
    """
    clock = _Stopwatch(config.timing)
    _, tuples = expand_ranges(config, repository)
    template = repository.get_template(config.entry)
    domain = Rectangle(*config.domain) if config.domain is not None else None

    if min(config.grid) < MIN_CHECK_GRID:
        raise GridTooCoarse(
            f"grid {config.grid[0]}x{config.grid[1]} is too coarse; checks need at least {MIN_CHECK_GRID}x{MIN_CHECK_GRID}"
        )

    records: List[SweepRecordSchema] = []
    for params in tuples:
        resolved = repository.resolve_params(template, params)
        try:
            entry = repository.build(config.entry, params)
            report = run_checks(entry, grid=config.grid, profile=config.profile, domain=domain)
        except BadParameter as e:
            logger.info("skipping %s: %s", params, e.message)
            records.append(
                SweepRecordSchema(params=resolved, status="skipped", violated_clause=e.clause, error=e.message)
            )
            continue
        except NumericalAbort as e:
            logger.warning("aborted %s: %s", params, e.message)
            records.append(SweepRecordSchema(params=resolved, status="aborted", overall_pass=False, error=e.message))
            continue
        records.append(
            SweepRecordSchema(
                params=resolved,
                status="checked",
                overall_pass=report.overall_pass,
                near_degenerate=entry.near_degenerate,
                worst={check.name: check.sup_residual for check in report.checks},
            )
        )

    evaluated = [r for r in records if r.status != "skipped"]
    if not evaluated:
        raise BadParameter(f"sweep of {config.entry} has no parameter tuple satisfying the family constraints")
    passed = sum(1 for r in evaluated if r.overall_pass)
    overall = passed == len(evaluated)

    schema = SweepReportSchema(
        entry=config.entry,
        grid=config.grid,
        profile=config.profile,
        ranges={name: list(values) for name, values in config.ranges.items()},
        records=records,
        checked=len(evaluated),
        skipped=len(records) - len(evaluated),
        passed=passed,
        overall_pass=overall,
        wall_ms=clock.elapsed(),
    )
    artifact = storage.write_text(config.out or f"sweep-{config.entry}.json", schema.to_json())
    _status(
        overall,
        f"{config.entry}: {passed}/{len(evaluated)} tuples passed, {schema.skipped} skipped -> {artifact.path}",
        out,
    )
    return 0 if overall else 1


def field_rows(config: RunConfig, repository: CatalogRepository = catalog_repository) -> List[List[str]]:
    """Rows of the field dump, grid nodes in x-major order, floats in repr form."""
    entry = _build_entry(config, repository)
    immersion = entry.immersion
    xs, ys = immersion.domain.grid(*config.grid)
    surface = compute_surface_field(immersion, xs, ys)
    columns: Tuple[Callable, ...] = (
        lambda s: s.xs,
        lambda s: s.ys,
        lambda s: s.K_intrinsic,
        lambda s: s.abs_H,
        lambda s: s.delta_alpha,
        lambda s: s.d_alpha,
        lambda s: s.nabla_perp_H_norm,
        lambda s: s.nabla_A_norm,
        lambda s: s.rho_N,
    )
    arrays = [column(surface).ravel() for column in columns]
    return [[repr(float(array[i])) for array in arrays] for i in range(arrays[0].size)]


def cmd_dump_fields(
    config: RunConfig,
    storage: ReportStorage,
    repository: CatalogRepository = catalog_repository,
    out: Optional[TextIO] = None,
) -> int:
    """
    Write per-node fields as CSV for external plotting.

    Returns:
        Exit code 0
    """
    rows = field_rows(config, repository)
    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer)
    writer.writerow(FIELD_COLUMNS)
    writer.writerows(rows)
    artifact: StoredArtifact = storage.write_text(config.out or f"fields-{config.entry}.csv", buffer.getvalue())
    _status(True, f"{config.entry}: {len(rows)} rows -> {artifact.path}", out)
    return 0


def cmd_variation(
    config: RunConfig,
    storage: ReportStorage,
    repository: CatalogRepository = catalog_repository,
    out: Optional[TextIO] = None,
) -> int:
    """
    First variation of area along seeded Hamiltonian bumps (flat C^2 entries).

    Returns:
        0 when max |first variation| < 1e-6, 1 otherwise

    Raises:
        Unsupported: entry outside flat C^2
    """
    clock = _Stopwatch(config.timing)
    template = repository.get_template(config.entry)
    if template.ambient.kind is not AmbientKind.FLAT_C2:
        raise Unsupported(f"the variation oracle needs a C^2 entry; {config.entry} lives in {template.ambient.kind.value}")
    entry = _build_entry(config, repository)

    bumps = seeded_bumps(entry.immersion.domain, config.bumps, config.seed)
    results = [first_variation(entry.immersion, bump, config.step) for bump in bumps]
    max_abs = max(abs(r.value) for r in results)
    passed = max_abs < VARIATION_THRESHOLD

    schema = VariationReportSchema(
        entry=entry.id,
        params=entry.params,
        seed=config.seed,
        h=config.step,
        bumps=[
            BumpSchema(
                center=r.bump.center,
                radius=r.bump.radius,
                amplitude=r.bump.amplitude,
                first_variation=r.value,
                area_plus=r.area_plus,
                area_minus=r.area_minus,
                lagrangian_defect=r.lagrangian_defect,
            )
            for r in results
        ],
        max_abs=max_abs,
        threshold=VARIATION_THRESHOLD,
        passed=passed,
        wall_ms=clock.elapsed(),
    )
    artifact = storage.write_text(config.out or f"variation-{entry.id}.json", schema.to_json())
    _status(passed, f"{entry.id}: max |first variation| {max_abs:.3e} over {len(results)} bumps -> {artifact.path}", out)
    return 0 if passed else 1
