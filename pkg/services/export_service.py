import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from mpmath import mp, mpf

from config.logger import logger
from models.count_table import CountTable
from models.pole import AsymptoticReport
from models.run_config import OUTPUT_FORMATS
from models.series import LaurentSeries, SeriesLike
from models.verification import CheckResult, VerificationReport

FORMATS = OUTPUT_FORMATS
# Significant digits printed for mpmath reals
REAL_DIGITS = 15

_SUPERSCRIPTS = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


class ExportError(Exception):
    """Custom exception for output formatting errors."""
    pass


def format_fraction(value: Fraction) -> str:
    """Lossless decimal string: "p" for integers, "p/q" otherwise."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_real(value: mpf) -> str:
    return mp.nstr(value, REAL_DIGITS)


def series_terms(series: SeriesLike) -> List[Tuple[int, Fraction]]:
    """(exponent, coefficient) for every known coefficient, zeros included."""
    if isinstance(series, LaurentSeries):
        return series.terms()
    return list(enumerate(series.coeffs))


def _monomial(coefficient: Fraction, exponent: int, first: bool) -> str:
    sign = "-" if coefficient < 0 else ("" if first else "+")
    magnitude = abs(coefficient)
    if exponent == 0:
        return f"{sign}{format_fraction(magnitude)}"
    power = "z" if exponent == 1 else "z" + str(exponent).translate(_SUPERSCRIPTS)
    if magnitude == 1:
        return f"{sign}{power}"
    return f"{sign}{format_fraction(magnitude)}{power}"


def series_to_human(series: SeriesLike) -> str:
    """Render like 1+z³+z⁵+3z⁶+... with the known terms only."""
    parts = []
    for exponent, coefficient in series_terms(series):
        if coefficient:
            parts.append(_monomial(coefficient, exponent, first=not parts))
    text = "".join(parts) if parts else "0"
    return text + "+..."


def series_payload(series: SeriesLike, **meta: Any) -> Dict[str, Any]:
    terms = series_terms(series)
    payload = {
        "coefficients": [format_fraction(c) for _, c in terms],
        "first_exponent": terms[0][0] if terms else 0,
        "order": terms[-1][0] if terms else 0,
    }
    payload.update(meta)
    return payload


def series_to_json(series: SeriesLike, **meta: Any) -> str:
    return json.dumps(series_payload(series, **meta), sort_keys=True, indent=2)


def series_to_csv(series: SeriesLike) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "coefficient"])
    for exponent, coefficient in series_terms(series):
        writer.writerow([exponent, format_fraction(coefficient)])
    return buffer.getvalue()


def render_series(series: SeriesLike, fmt: str, **meta: Any) -> str:
    """Format one series as json, csv or human text."""
    if fmt == "json":
        return series_to_json(series, **meta)
    if fmt == "csv":
        return series_to_csv(series)
    if fmt == "human":
        label = meta.get("key") or meta.get("label")
        text = series_to_human(series)
        return f"{label} = {text}\n" if label else text + "\n"
    raise ExportError(f"Unknown output format '{fmt}' (expected one of: {', '.join(FORMATS)})")


def render_table(table: CountTable, fmt: str) -> str:
    """Format a count table; rows are model,n,layer,level,count."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["model", "n", "layer", "level", "count"])
        writer.writerows(table.rows())
        return buffer.getvalue()
    if fmt == "json":
        payload = {
            "model": table.model.value,
            "max_len": table.max_len,
            "counts": {
                layer.value: [[str(c) for c in row] for row in rows] for layer, rows in table.counts.items()
            },
        }
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "human":
        lines = [f"model {table.model.value}, lengths 0..{table.max_len}"]
        for layer, rows in table.counts.items():
            lines.append(f"layer {layer.value}:")
            for n, row in enumerate(rows):
                lines.append(f"  n={n:<3} " + " ".join(str(c) for c in row[:n + 1]))
        return "\n".join(lines) + "\n"
    raise ExportError(f"Unknown output format '{fmt}' (expected one of: {', '.join(FORMATS)})")


def _check_payload(check: CheckResult) -> Dict[str, Any]:
    return {
        "name": check.name,
        "passed": check.passed,
        "first_divergence": check.first_divergence,
        "verified_order": check.verified_order,
        "detail": check.detail,
    }


def render_verification(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        payload = {
            "order": report.order,
            "brute_cap": report.brute_cap,
            "passed": report.passed,
            "sections": {name: [_check_payload(c) for c in checks] for name, checks in report.sections},
        }
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["section", "check", "passed", "first_divergence", "detail"])
        for name, checks in report.sections:
            for check in checks:
                divergence = "" if check.first_divergence is None else check.first_divergence
                writer.writerow([name, check.name, "pass" if check.passed else "FAIL", divergence, check.detail])
        return buffer.getvalue()
    if fmt == "human":
        lines = [f"verification to order {report.order}, brute-force cap {report.brute_cap}"]
        for name, checks in report.sections:
            lines.append(f"[{name}]")
            for check in checks:
                status = "ok  " if check.passed else "FAIL"
                detail = f" ({check.detail})" if check.detail else ""
                lines.append(f"  {status} {check.name}{detail}")
        failed = len(report.failures)
        lines.append("all checks passed" if not failed else f"{failed} check(s) failed")
        return "\n".join(lines) + "\n"
    raise ExportError(f"Unknown output format '{fmt}' (expected one of: {', '.join(FORMATS)})")


def asymptotic_payload(report: AsymptoticReport) -> Dict[str, Any]:
    pole = report.pole
    payload: Dict[str, Any] = {
        "plain": {
            "x_sing": format_fraction(report.plain.x_sing),
            "z_sing": format_real(report.plain.z_sing),
            "growth": format_real(report.plain.growth),
        },
        "cata_pole": {
            "zbar": format_real(pole.zbar),
            "tbar": format_real(pole.tbar),
            "growth": format_real(pole.growth),
            "dDdz": format_real(pole.dDdz),
            "dtdz": format_real(pole.dtdz),
            "residual_norm": mp.nstr(pole.residual_norm, 3),
            "witness_norm": mp.nstr(pole.witness_norm, 3),
        },
        "amplitudes": {
            a.kind: {
                "numerator": format_real(a.numerator),
                "residue": format_real(a.residue),
                "printed_convention": format_real(a.printed_convention),
                "printed_prefactor": format_real(a.printed_prefactor),
                "forced_prefactor": format_real(a.forced_prefactor),
            }
            for a in report.amplitudes
        },
        "note": report.note,
    }
    if report.empirical:
        payload["empirical"] = {
            kind: {
                "window": list(e.window),
                "estimate": format_real(e.estimate),
                "tail": [[n, format_real(v)] for n, v in e.tail[-6:]],
                "extrapolated": [[n, format_real(v)] for n, v in e.extrapolated[-6:]],
            }
            for kind, e in report.empirical
        }
        payload["verdicts"] = {
            v.kind: {
                "estimate": format_real(v.estimate),
                "nearer": v.nearer,
                "relative_error": mp.nstr(v.relative_error, 3),
            }
            for v in report.verdicts
        }
    return payload


def render_asymptotics(report: AsymptoticReport, fmt: str) -> str:
    payload = asymptotic_payload(report)
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["quantity", "value"])
        for section in ("plain", "cata_pole"):
            for name, value in payload[section].items():
                writer.writerow([f"{section}.{name}", value])
        for kind, values in payload["amplitudes"].items():
            for name, value in values.items():
                writer.writerow([f"amplitude.{kind}.{name}", value])
        for kind, values in payload.get("verdicts", {}).items():
            for name, value in values.items():
                writer.writerow([f"empirical.{kind}.{name}", value])
        return buffer.getvalue()
    if fmt == "human":
        lines = [
            f"plain model:   zSing = {payload['plain']['z_sing']}, growth = {payload['plain']['growth']}",
            f"catastrophes:  zbar = {payload['cata_pole']['zbar']}, tbar = {payload['cata_pole']['tbar']}",
            f"               growth = {payload['cata_pole']['growth']}, dD/dz = {payload['cata_pole']['dDdz']}",
        ]
        for kind, values in payload["amplitudes"].items():
            lines.append(
                f"amplitude {kind}: residue {values['residue']}, printed convention {values['printed_convention']}"
            )
        for kind, values in payload.get("verdicts", {}).items():
            lines.append(f"empirical {kind}: {values['estimate']} (nearer the {values['nearer']} constant)")
        lines.append(f"note: {report.note}")
        return "\n".join(lines) + "\n"
    raise ExportError(f"Unknown output format '{fmt}' (expected one of: {', '.join(FORMATS)})")


def write_output(text: str, out_path: Optional[str] = None) -> None:
    """Write to a file, or to standard output when no path is given."""
    if out_path is None:
        print(text, end="")
        return
    try:
        with open(out_path, 'w', encoding='utf-8') as f:
            f.write(text)
    except OSError as e:
        logger.error(f"Failed to write {out_path}: {str(e)}")
        raise ExportError(f"Cannot write output file {out_path}: {e}") from e
    logger.info(f"Wrote {len(text)} characters to {out_path}")
