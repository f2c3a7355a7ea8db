"""Report assembly, atomic JSON writing and text summaries.

Reports are plain dicts serialized with sorted keys and no timestamps, so
identical inputs and seeds give byte-identical files.
"""

import json
import logging
import math
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__

logger = logging.getLogger(__name__)


def sanitize(value):
    """Convert numpy scalars, arrays and complex numbers to JSON-safe values.

    Non-finite floats become None.
    """
    if isinstance(value, dict):
        return {str(key): sanitize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [sanitize(item) for item in value]
    if isinstance(value, np.ndarray):
        return sanitize(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [sanitize(float(value.real)), sanitize(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def build_report(command: str, config: dict, result: dict) -> dict:
    """Wrap a command result with the resolved config and version."""
    return {
        "command": command,
        "version": __version__,
        "config": config,
        "result": result,
    }


def dumps(report: dict) -> str:
    return json.dumps(sanitize(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_report(report: dict, path: str) -> Path:
    """Write a report as JSON.

    Uses atomic write with temp file to prevent corruption.

    Args:
        report: Report dictionary.
        path: Destination file.

    Returns:
        Path to saved file.
    """
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = file_path.with_name(file_path.name + ".tmp")

    temp_path.write_text(dumps(report))
    temp_path.replace(file_path)

    logger.info(f"Saved report to {file_path}")
    return file_path


def _header(title: str) -> list:
    return ["=" * 50, title, "=" * 50, ""]


def _verdict(certificate: Optional[dict]) -> str:
    if not certificate:
        return "n/a"
    return "nondegenerate" if certificate.get("nondegenerate") else "DEGENERATE"


def format_solve_report(kind: str, result: dict) -> str:
    """Format a solve result as a readable text report.

    Args:
        kind: "z", "svt" or "h".
        result: The "result" part of a solve report.

    Returns:
        Formatted text report.
    """
    titles = {"z": "Z-EIGENPAIRS", "svt": "SINGULAR VECTOR TUPLES", "h": "H-EIGENPAIRS"}
    lines = _header(titles[kind])
    lines.append(f"Dims: {result['dims']}")
    lines.append(f"Found: {result['count']}")
    lines.append(f"Degenerate: {result['degenerate']}")
    lines.append("")

    for item in result["items"]:
        if kind == "h":
            lam = complex(*item["lambda"])
            lines.append(
                f"λ = {lam.real:+.10f}{lam.imag:+.10f}i  mult={item['multiplicity']}  "
                f"residual={item['residual']:.2e}  nondegenerate={item['nondegenerate']}"
            )
        elif kind == "z":
            x = ", ".join(f"{v:+.6f}" for v in item["x"])
            lines.append(
                f"λ = {item['lambda']:+.10f}  x = ({x})  residual={item['residual']:.2e}  "
                f"{_verdict(item.get('certificate'))}"
            )
        else:
            lines.append(
                f"σ = {item['sigma']:+.10f}  residual={item['residual']:.2e}  "
                f"{_verdict(item.get('certificate'))}"
            )

    if result.get("warnings"):
        lines.append("")
        lines.append("WARNINGS")
        lines.append("-" * 30)
        lines.extend(result["warnings"])
    lines.append("")
    return "\n".join(lines)


def format_odeco_report(result: dict) -> str:
    """Format an odeco enumeration or certification result."""
    lines = _header("ODECO EIGENPAIRS")
    spec = result["spec"]
    lines.append(f"n={spec['n']}  r={spec['r']}  k={result['k']}")
    lines.append(f"Nonzero eigenpairs: {result['count']} (closed form {result['expected_count']})")
    lines.append(f"Eigen-lines: {result['lines']}")
    if "degenerate" in result:
        lines.append(f"Degenerate: {result['degenerate']}")
    if "jacobian_mismatches" in result:
        lines.append(f"Jacobian mismatches: {result['jacobian_mismatches']}")
    lines.append("")
    for item in result["pairs"]:
        x = ", ".join(f"{v:+.6f}" for v in item["x"])
        lines.append(f"Λ={item['subset']}  λ = {item['lambda']:+.10f}  x = ({x})")
    lines.append("")
    return "\n".join(lines)


def format_census_report(result: dict) -> str:
    """Format a census result as a readable text report."""
    lines = _header(f"CENSUS ({result['kind'].upper()})")
    lines.append(f"Dims: {result['dims']}")
    lines.append(f"Trials: {result['trials']}  Seed: {result['seed']}")
    if result.get("generic_count") is not None:
        lines.append(f"Generic count: {result['generic_count']}")
    if result.get("max_real_count") is not None:
        lines.append(f"Max real count: {result['max_real_count']}")
    lines.append(f"Degenerate fraction: {result['degenerate_fraction']:.4f}")
    lines.append(f"Unconverged trials: {result['unconverged_trials']}")
    lines.append("")

    lines.append("COUNT DISTRIBUTION")
    lines.append("-" * 30)
    for count, trials in result["count_distribution"].items():
        lines.append(f"{count:>4}: {trials}")
    lines.append("")

    lines.append("INVARIANTS")
    lines.append("-" * 30)
    for name, held in result["invariants"].items():
        lines.append(f"{name}: {'ok' if held else 'FAILED'}")
    lines.append("")
    return "\n".join(lines)


def format_oracle_report(kind: str, result: dict) -> str:
    """Format a sweep or E-count oracle result."""
    if kind == "sweep":
        lines = _header("ANGLE SWEEP")
        lines.append(f"Real eigenpairs: {len(result['eigenpairs'])}")
        lines.append("")
        for angle, pair in zip(result["angles"], result["eigenpairs"]):
            lines.append(f"θ = {angle:.10f}  λ = {pair['lambda']:+.10f}")
    else:
        lines = _header("E-EIGEN-LINE COUNT")
        lines.append(f"Distinct lines: {result['distinct']}")
        lines.append(f"Total with multiplicity: {result['total']}")
        if result["identically_zero"]:
            lines.append("Every direction is an E-eigenvector")
    lines.append("")
    return "\n".join(lines)
