#!/usr/bin/env python3
"""
Run the catalog acceptance parameter sets and write one report per instance
plus a summary.

Usage: python scripts/run_acceptance_suite.py [output-subdirectory]
"""

import json
import os
import sys

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from business.verification.checks import run_checks
from business.verification.global_checks import gauss_bonnet_flat, maslov_periods
from business.verification.variation import first_variation, seeded_bumps
from data_access.repositories.catalog_repository import catalog_repository
from infrastructure.config.settings import get_settings
from infrastructure.errors import Unsupported, VerificationError
from infrastructure.geometry.ambient import AmbientKind
from infrastructure.logging_config import configure_logging
from infrastructure.storage.report_storage import ReportStorage
from presentation.cli.commands import VARIATION_THRESHOLD, check_report_schema

GRID = (41, 41)
VARIATION_BUMPS = 5
VARIATION_SEED = 42


def _instance_name(entry_id, index):
    return f"{entry_id}-{index}"


def _global_checks(entry):
    """Gauss-Bonnet and Maslov periods for doubly periodic entries; None otherwise."""
    try:
        gb = gauss_bonnet_flat(entry)
        periods = maslov_periods(entry)
    except Unsupported:
        return None
    return {
        "gauss_bonnet": {"integral": gb.integral, "pass": gb.passed},
        "maslov_periods": {"periods": list(periods.periods), "pass": periods.passed},
    }


def _variation(entry):
    if entry.ambient.kind is not AmbientKind.FLAT_C2:
        return None
    bumps = seeded_bumps(entry.immersion.domain, VARIATION_BUMPS, VARIATION_SEED)
    max_abs = max(abs(first_variation(entry.immersion, bump).value) for bump in bumps)
    return {"max_abs": max_abs, "pass": max_abs < VARIATION_THRESHOLD}


def run_acceptance_suite(subdirectory="acceptance"):
    """Check every acceptance instance; returns True when all of them pass."""
    storage = ReportStorage()
    summary = []

    for template in catalog_repository.list_catalog():
        for index, params in enumerate(template.acceptance_params):
            name = _instance_name(template.id, index)
            try:
                entry = catalog_repository.build(template.id, params)
                report = run_checks(entry, grid=GRID)
            except VerificationError as e:
                print(f"❌ {name}: {e.message}")
                summary.append({"instance": name, "params": params, "pass": False, "error": e.message})
                continue

            artifact = storage.write_text(f"{subdirectory}/{name}.json", check_report_schema(report, None, None).to_json())
            extras = {"global": _global_checks(entry), "variation": _variation(entry)}
            passed = report.overall_pass and all(v is None or all(x["pass"] for x in _leaves(v)) for v in extras.values())
            marker = "✅" if passed else "❌"
            print(f"{marker} {name}: {len(report.checks) - len(report.failed())}/{len(report.checks)} checks")
            for check in report.failed():
                print(f"    {check.name}: {check.sup_residual:.3e} >= {check.tolerance:.1e}")
            summary.append(
                {
                    "instance": name,
                    "params": dict(entry.params),
                    "pass": passed,
                    "report": artifact.path,
                    "sha256": artifact.sha256,
                    **extras,
                }
            )

    for control in catalog_repository.list_controls():
        entry = catalog_repository.build(control.id)
        variation = _variation(entry)
        # a control must be rejected by the oracle
        rejected = variation is not None and not variation["pass"]
        print(f"{'✅' if rejected else '❌'} {control.id}: first variation {variation}")
        summary.append({"instance": control.id, "control": True, "pass": rejected, "variation": variation})

    all_passed = all(item["pass"] for item in summary)
    storage.write_text(
        f"{subdirectory}/summary.json",
        json.dumps({"grid": list(GRID), "instances": summary, "overall_pass": all_passed}, indent=2) + "\n",
    )
    print(f"{'✅' if all_passed else '❌'} {sum(i['pass'] for i in summary)}/{len(summary)} instances passed")
    return all_passed


def _leaves(value):
    if "pass" in value:
        return [value]
    return [v for v in value.values() if isinstance(v, dict)]


if __name__ == "__main__":
    configure_logging(get_settings().log_level)
    ok = run_acceptance_suite(*sys.argv[1:2])
    sys.exit(0 if ok else 1)
