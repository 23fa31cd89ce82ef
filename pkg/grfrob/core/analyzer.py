"""
Analysis orchestrator: builds the report for one algebra and fans the
verification suites out over a corpus
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

from grfrob.core.decomp import IsoshiftClassification, classify_isoshift, graded_simple_census
from grfrob.core.frobenius import frobenius_report
from grfrob.core.grcore import GradedAlgebra
from grfrob.core.radicals import is_graded_semisimple, radical_report
from grfrob.core.suites import SUITES, CheckResult, TheoremSuites
from grfrob.formats.schemas import (
    SCHEMA_VERSION,
    AlgebraSummary,
    ClassificationBlock,
    CrossCheckBlock,
    FaithfulnessRow,
    FrobeniusBlock,
    NakayamaBlock,
    RadicalBlock,
    ReportFile,
    RouteRow,
)
from grfrob.utils.config import Limits, load_config

logger = logging.getLogger(__name__)


class AlgebraAnalyzer:
    """Classification, radical and Frobenius report for a single algebra"""

    def __init__(self, config: Dict[str, Any] = None):
        self.config = config or load_config()
        self.limits = Limits.from_config(self.config)

    @property
    def seed(self) -> int:
        return self.limits.seed

    def classify(self, A: GradedAlgebra, name: str = "") -> ReportFile:
        self.limits.check_algebra(A)
        logger.info(f"Classifying {name or A.label}")
        return ReportFile(
            schema_version=SCHEMA_VERSION,
            seed=self.seed,
            algebra=self._summary(A, name),
            classification=[self._classification(A, side) for side in ("left", "right")],
        )

    def analyze(self, A: GradedAlgebra, name: str = "") -> ReportFile:
        report = self.classify(A, name)
        logger.info(f"Analyzing {name or A.label}")
        report.radical = self._radical(A)
        frob = frobenius_report(A, self.seed)
        G = A.group
        if frob.nakayama is not None:
            nak = frob.nakayama
            report.nakayama = NakayamaBlock(
                pi=nak.pi_cycles(),
                sigmas=[G.label(s) for s in nak.sigmas],
                inertia_conjugation=nak.inertia_conjugation_holds(),
            )
        failure = None
        if frob.failure is not None:
            failure = f"{frob.failure.side} type {frob.failure.index + 1}: {frob.failure.reason}"
        report.frobenius = FrobeniusBlock(
            graded_qf=frob.graded_qf,
            qf_failure=failure,
            sigma_set=G.format_set(frob.sigma_set),
            graded_frobenius=G.identity in frob.sigma_set,
            faithfulness=[
                FaithfulnessRow(sigma=G.label(s), left=frob.faithful_left[s], right=frob.faithful_right[s])
                for s in G.elements
            ],
        )
        report.cross_check = CrossCheckBlock(
            routes=[
                RouteRow(sigma=G.label(rec.sigma), routes=dict(rec.routes), agree=rec.agree)
                for rec in frob.cross_check_log
            ],
            all_agree=frob.routes_agree,
        )
        return report

    def _summary(self, A: GradedAlgebra, name: str) -> AlgebraSummary:
        G = A.group
        return AlgebraSummary(
            name=name or A.label,
            p=A.p,
            group=G.name or f"order {G.order}",
            group_order=G.order,
            dim=A.dim,
            support=G.format_set(A.support()),
        )

    def _classification(self, A: GradedAlgebra, side: str) -> ClassificationBlock:
        cl: IsoshiftClassification = classify_isoshift(A, side, self.seed)
        G = A.group
        return ClassificationBlock(
            side=side,
            t=cl.t,
            multiplicities=cl.multiplicities,
            shifts=[[G.label(g) for g in row] for row in cl.shifts],
            inertia=[G.format_set(H) for H in cl.inertia],
            type_dims=[cl.type_top(i).dim for i in range(cl.t)],
            census=graded_simple_census(cl),
        )

    def _radical(self, A: GradedAlgebra) -> RadicalBlock:
        rad = radical_report(A)
        G = A.group
        return RadicalBlock(
            jgr_dim=rad.jgr.dim,
            jgr_component_dims={G.label(g): n for g, n in sorted(rad.jgr.component_dims().items()) if n},
            nilpotency_index=rad.nilpotency_index,
            j_epsilon_dim=int(rad.j_epsilon.shape[0]),
            graded_semisimple=is_graded_semisimple(A),
            socle_left_dim=rad.socle_left.dim,
            socle_right_dim=rad.socle_right.dim,
            singular_left_dim=rad.zgr_left.dim,
        )


class CorpusVerifier:
    """Runs the verification suites over named instances in a thread pool"""

    def __init__(self, config: Dict[str, Any] = None, suites: Sequence[str] = SUITES):
        self.config = config or load_config()
        self.limits = Limits.from_config(self.config)
        self.suites = tuple(suites)
        self.checker = TheoremSuites(self.limits)
        logger.info(f"Max workers: {self.config.get('max_workers', 4)}")

    def verify(self, instances: Sequence[Tuple[str, GradedAlgebra]]) -> Dict[str, Any]:
        for name, A in instances:
            self.limits.check_algebra(A)
        logger.info(f"Verifying {len(instances)} instances, suites {list(self.suites)}")
        results: Dict[str, List[CheckResult]] = {}
        with ThreadPoolExecutor(max_workers=self.config.get("max_workers", 4)) as executor:
            futures = {name: executor.submit(self.checker.run, name, A, self.suites) for name, A in instances}
            for name, future in futures.items():
                results[name] = future.result()
        return self._aggregate(results)

    def _aggregate(self, results: Dict[str, List[CheckResult]]) -> Dict[str, Any]:
        ordered = [r for name in sorted(results) for r in sorted(results[name], key=lambda r: (r.suite, r.check))]
        failures = [r.to_dict() for r in ordered if not r.passed]
        per_instance = {
            name: {
                "passed": all(r.passed for r in results[name]),
                "checks": len(results[name]),
                "skipped": sum(r.skipped for r in results[name]),
            }
            for name in sorted(results)
        }
        summary = {
            "schema_version": SCHEMA_VERSION,
            "seed": self.limits.seed,
            "suites": list(self.suites),
            "summary": {
                "instances": len(results),
                "checks": len(ordered),
                "passed": sum(r.passed for r in ordered),
                "failed": len(failures),
                "skipped": sum(r.skipped for r in ordered),
            },
            "instances": per_instance,
            "failures": failures,
        }
        if "frobenius" in self.suites:
            summary["route_tables"] = {
                r.instance: r.details.get("routes", {}) for r in ordered if r.check == "route_agreement"
            }
        return summary

    @staticmethod
    def all_passed(summary: Dict[str, Any]) -> bool:
        return summary["summary"]["failed"] == 0


def verify_instances(
    instances: Sequence[Tuple[str, GradedAlgebra]],
    suites: Sequence[str] = SUITES,
    config: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    return CorpusVerifier(config, suites).verify(instances)
