"""
Report generation for analysis and verification runs
"""

import json
import logging
import os
from typing import Any, Dict, List

from grfrob.formats.schemas import ReportFile
from grfrob.utils.file_ops import ensure_directory, slugify, write_text_file

logger = logging.getLogger(__name__)


def report_json(report: ReportFile) -> str:
    """Deterministic JSON text of a report"""
    return json.dumps(report.model_dump(mode="json"), indent=2) + "\n"


def summary_json(summary: Dict[str, Any]) -> str:
    return json.dumps(summary, indent=2) + "\n"


def _yes(flag) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"


def render_analysis(report: ReportFile) -> str:
    """Markdown rendering of an analysis report; also the ``--format text`` output"""
    a = report.algebra
    lines = [
        f"# Graded Algebra Report: {a.name}",
        "",
        "## Algebra",
        f"- **Field**: GF({a.p})",
        f"- **Group**: {a.group} (order {a.group_order})",
        f"- **Dimension**: {a.dim}",
        f"- **Support**: {{{', '.join(a.support)}}}",
        f"- **Seed**: {report.seed}",
        "",
        "## Classification",
        "",
    ]
    for block in report.classification:
        lines.append(f"### {block.side.capitalize()} modules")
        lines.append(f"- Isoshift types: {block.t}")
        lines.append(f"- Multiplicities: {block.multiplicities}")
        for i, (row, inertia) in enumerate(zip(block.shifts, block.inertia)):
            lines.append(f"- Type {i + 1}: shifts ({', '.join(row)}), inertia {{{', '.join(inertia)}}}")
        if block.census:
            lines.append(
                f"- Graded simples up to isomorphism: {block.census.get('total')}, "
                f"embedded multiplicities {block.census.get('embedded')}"
            )
        lines.append("")
    if report.radical is not None:
        r = report.radical
        lines += [
            "## Radical",
            f"- **dim J^gr**: {r.jgr_dim} {r.jgr_component_dims or ''}".rstrip(),
            f"- **Nilpotency index**: {r.nilpotency_index}",
            f"- **dim J(R_e)**: {r.j_epsilon_dim}",
            f"- **Graded semisimple**: {_yes(r.graded_semisimple)}",
            f"- **Socle dimensions**: left {r.socle_left_dim}, right {r.socle_right_dim}",
            f"- **dim Z^gr**: {r.singular_left_dim}",
            "",
        ]
    if report.frobenius is not None:
        f = report.frobenius
        lines += [
            "## Frobenius",
            f"- **Graded QF**: {_yes(f.graded_qf)}",
        ]
        if f.qf_failure:
            lines.append(f"- **QF failure**: {f.qf_failure}")
        if report.nakayama is not None:
            lines.append(f"- **Nakayama permutation**: {report.nakayama.pi}")
            lines.append(f"- **Socle shifts**: ({', '.join(report.nakayama.sigmas)})")
        lines += [
            f"- **σ-Frobenius set**: {{{', '.join(f.sigma_set)}}}",
            f"- **Graded Frobenius**: {_yes(f.graded_frobenius)}",
            "",
            "| σ | faithful left | faithful right |",
            "|---|---|---|",
        ]
        lines += [f"| {row.sigma} | {_yes(row.left)} | {_yes(row.right)} |" for row in f.faithfulness]
        lines.append("")
    if report.cross_check is not None:
        rows = report.cross_check.routes
        names = list(rows[0].routes) if rows else []
        lines += ["## Route Cross-Check", "", "| σ | " + " | ".join(names) + " | agree |"]
        lines.append("|---" * (len(names) + 2) + "|")
        for row in rows:
            cells = " | ".join(_yes(row.routes[n]) for n in names)
            lines.append(f"| {row.sigma} | {cells} | {_yes(row.agree)} |")
        lines.append("")
    return "\n".join(lines)


def render_verification(summary: Dict[str, Any]) -> str:
    s = summary["summary"]
    lines = [
        "# Verification Report",
        "",
        f"- **Suites**: {', '.join(summary['suites'])}",
        f"- **Seed**: {summary['seed']}",
        f"- **Instances**: {s['instances']}",
        f"- **Checks**: {s['checks']} ({s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped)",
        "",
        "## Instances",
        "",
        "| instance | checks | skipped | passed |",
        "|---|---|---|---|",
    ]
    for name, row in summary["instances"].items():
        lines.append(f"| {name} | {row['checks']} | {row['skipped']} | {_yes(row['passed'])} |")
    lines.append("")
    failures: List[Dict[str, Any]] = summary["failures"]
    if failures:
        lines += ["## Failures", ""]
        for f in failures:
            where = f" at σ = {f['sigma']}" if f.get("sigma") else ""
            lines.append(f"### {f['instance']}: {f['suite']}/{f['check']}{where}")
            if f.get("statement"):
                lines.append(f"**Statement**: {f['statement']}\n")
            if f.get("error"):
                lines.append(f"**Error**: {f['error']}\n")
            if f.get("details"):
                lines.append(f"**Details**: {json.dumps(f['details'])}\n")
            lines.append("---\n")
    return "\n".join(lines)


class ReportGenerator:
    """Write ``<name>_analysis.json`` and ``<name>_report.md`` into an output directory"""

    def __init__(self, output_dir: str):
        self.output_dir = output_dir
        ensure_directory(output_dir)

    def generate_reports(self, report: ReportFile, name: str = "") -> Dict[str, str]:
        stem = slugify(name or report.algebra.name)
        return self._write(stem, report_json(report), render_analysis(report))

    def generate_verification_reports(self, summary: Dict[str, Any], name: str = "verify") -> Dict[str, str]:
        return self._write(slugify(name), summary_json(summary), render_verification(summary))

    def _write(self, stem: str, json_text: str, md_text: str) -> Dict[str, str]:
        json_path = os.path.join(self.output_dir, f"{stem}_analysis.json")
        md_path = os.path.join(self.output_dir, f"{stem}_report.md")
        write_text_file(json_path, json_text)
        write_text_file(md_path, md_text)
        logger.info(f"Reports generated: {json_path}, {md_path}")
        return {"json": json_path, "markdown": md_path}
