"""Deterministic rendering of computation results as text, JSON, or CSV.

JSON output is byte-identical across runs for identical inputs: keys are
sorted, no timestamps or machine data are included, and floats go through
repr (shortest round-trip form).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .groups import AbelianElement, IntMatrix
from .crystal import CrystalElement, ExtensionRankReport
from .spectral import EntropyEstimate
from .growth import GrowthSeries
from .folner import RankCertificate, WeightedFunction
from .laws import LawInstance, LawReport


def jsonable(obj):
    """Plain-data view of any result object this package produces."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return repr(obj)
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, IntMatrix):
        return [list(row) for row in obj.entries]
    if isinstance(obj, AbelianElement):
        return list(obj.lattice) + list(obj.torsion)
    if isinstance(obj, CrystalElement):
        return [obj.label(), *obj.lattice]
    if isinstance(obj, WeightedFunction):
        return {
            "support": [jsonable(e) for e in obj.support],
            "weights": [jsonable(w) for w in obj.weights],
            "exact": obj.exact,
        }
    if isinstance(obj, EntropyEstimate):
        return {
            "type": "entropy",
            "value": obj.value,
            "method": obj.method,
            "tolerance": obj.tolerance,
            "diagnostics": jsonable(obj.diagnostics),
        }
    if isinstance(obj, GrowthSeries):
        return {
            "type": "growth_series",
            "sizes": list(obj.sizes),
            "capped": obj.capped,
            "zero_adjoined": obj.zero_adjoined,
            "log_over_n": [jsonable(x) for x in obj.log_over_n()],
        }
    if isinstance(obj, RankCertificate):
        return {
            "type": "rank_certificate",
            "rank": obj.rank,
            "delta": obj.delta,
            "defect": obj.defect,
            "defect_exact": jsonable(obj.defect_exact),
            "exact": obj.exact,
            "omega": [jsonable(e) for e in obj.omega],
            "search_radius": obj.search_radius,
            "exhaustive_within_radius": obj.exhaustive_within_radius,
            "witness": jsonable(obj.witness),
        }
    if isinstance(obj, LawInstance):
        return {
            "index": obj.index,
            "deviation": obj.deviation,
            "note": obj.note,
            "inputs": {key: jsonable(value) for key, value in obj.inputs},
        }
    if isinstance(obj, LawReport):
        return {
            "type": "law_report",
            "law": obj.law,
            "passed": obj.passed,
            "instances": obj.instances,
            "tolerance": obj.tolerance,
            "max_deviation": obj.max_deviation,
            "seed": obj.seed,
            "failures": [jsonable(f) for f in obj.failures],
            "inconclusive": [jsonable(f) for f in obj.inconclusive],
        }
    if isinstance(obj, ExtensionRankReport):
        return {
            "type": "extension_rank_report",
            "lhs": obj.lhs,
            "rhs": obj.rhs,
            "holds": obj.holds,
            "quotient_rank": obj.quotient_rank,
            "kernel_rank": obj.kernel_rank,
            "delta": obj.delta,
            "restricted_to_kernel": obj.restricted_to_kernel,
        }
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=repr)
        return [jsonable(x) for x in items]
    raise TypeError(f"no serialization for {type(obj).__name__}")


def render_json(result) -> str:
    return json.dumps(jsonable(result), sort_keys=True, indent=2) + "\n"


def _csv_escape(value) -> str:
    text = str(value)
    if any(c in text for c in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _csv_lines(rows) -> str:
    return "\n".join(",".join(_csv_escape(cell) for cell in row) for row in rows) + "\n"


def render_csv(result) -> str:
    """CSV form. A growth series becomes n,size,log_size_over_n rows; other
    results flatten to header-plus-row of their scalar fields."""
    if isinstance(result, GrowthSeries):
        rows = [("n", "size", "log_size_over_n")]
        for i, (size, lg) in enumerate(zip(result.sizes, result.log_over_n())):
            rows.append((i + 1, size, repr(lg)))
        return _csv_lines(rows)
    if isinstance(result, EntropyEstimate):
        if result.method == "peters" and "sizes" in result.diagnostics:
            series = GrowthSeries(
                sizes=tuple(result.diagnostics["sizes"]),
                capped=bool(result.diagnostics.get("capped", False)),
            )
            return render_csv(series)
        return _csv_lines([
            ("value", "method", "tolerance"),
            (repr(result.value), result.method, repr(result.tolerance)),
        ])
    if isinstance(result, RankCertificate):
        return _csv_lines([
            ("rank", "defect", "delta", "search_radius", "exhaustive"),
            (
                result.rank,
                repr(result.defect),
                repr(result.delta),
                result.search_radius,
                result.exhaustive_within_radius,
            ),
        ])
    if isinstance(result, (list, tuple)) and all(
        isinstance(r, LawReport) for r in result
    ):
        rows = [(
            "law", "passed", "instances", "failures", "inconclusive",
            "max_deviation", "tolerance",
        )]
        for rep in result:
            rows.append((
                rep.law,
                rep.passed,
                rep.instances,
                len(rep.failures),
                len(rep.inconclusive),
                repr(rep.max_deviation),
                repr(rep.tolerance),
            ))
        return _csv_lines(rows)
    if isinstance(result, LawReport):
        return render_csv([result])
    raise TypeError(f"no CSV form for {type(result).__name__}")


def render_text(result) -> str:
    if isinstance(result, EntropyEstimate):
        lines = [f"entropy {result.value:.10f}  (method: {result.method})"]
        diag = result.diagnostics
        if "root_moduli" in diag:
            moduli = ", ".join(f"{m:.6f}" for m in diag["root_moduli"])
            lines.append(f"  root moduli: {moduli}")
        if "note" in diag:
            lines.append(f"  note: {diag['note']}")
        if "sizes" in diag:
            lines.append(f"  sizes: {list(diag['sizes'])}")
            if diag.get("capped"):
                lines.append("  series hit the enumeration cap; estimate uses the computed prefix")
        return "\n".join(lines) + "\n"
    if isinstance(result, GrowthSeries):
        lines = [f"sizes: {list(result.sizes)}", f"capped: {result.capped}"]
        return "\n".join(lines) + "\n"
    if isinstance(result, RankCertificate):
        lines = [
            f"rank {result.rank}  (delta {result.delta:g}, radius {result.search_radius}, "
            f"exhaustive: {result.exhaustive_within_radius})",
            f"  witness defect: {result.defect_exact if result.defect_exact is not None else result.defect}",
        ]
        for e, w in zip(result.witness.support, result.witness.weights):
            lines.append(f"    {jsonable(e)}  {w}")
        return "\n".join(lines) + "\n"
    if isinstance(result, LawReport):
        return result.summary() + "\n"
    if isinstance(result, (list, tuple)) and all(
        isinstance(r, LawReport) for r in result
    ):
        return "".join(render_text(r) for r in result)
    if isinstance(result, ExtensionRankReport):
        return (
            f"extension bound: lhs {result.lhs} <= rhs {result.rhs} "
            f"({'holds' if result.holds else 'VIOLATED'}; quotient {result.quotient_rank}, "
            f"kernel {result.kernel_rank}, restricted: {result.restricted_to_kernel})\n"
        )
    return str(result) + "\n"


def emit_report(result, fmt: str) -> bytes:
    """Deterministic serialization in the requested format."""
    if fmt == "json":
        return render_json(result).encode("utf-8")
    if fmt == "csv":
        return render_csv(result).encode("utf-8")
    if fmt == "text":
        return render_text(result).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
