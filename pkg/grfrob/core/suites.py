"""
Verification suites: executable cross-checks of the structural identities
on a single algebra. Checks register themselves with a decorator and are
discovered by name, one suite at a time.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from grfrob.core.constructions import structure_recovery
from grfrob.core.decomp import classify_isoshift, simple_iso_shift, simple_translation_witness
from grfrob.core.frobenius import (
    FrobeniusReport,
    biduality_check,
    dual_shift_check,
    dual_simple_check,
    frobenius_report,
    graded_frobenius_criterion,
    is_frobenius_ungraded,
    is_graded_frobenius,
    is_graded_qf,
    is_module_sigma_faithful,
    is_qf_ungraded,
    is_sigma_faithful,
    is_strongly_graded,
    nu_map,
    qf_annihilator_oracle,
    socle_pairing_check,
)
from grfrob.core.grcore import (
    GradedAlgebra,
    GradedModule,
    GradedSubspace,
    direct_sum,
    idempotent_shift_duality,
    is_graded_iso,
    left_annihilator,
    regular_module,
    right_annihilator,
    shift,
    submodule_generated,
    validate_algebra,
)
from grfrob.core.linalg import left_kernel, row_space
from grfrob.core.radicals import (
    baer_randomized,
    graded_radical,
    graded_radical_via_simples,
    graded_socle,
    is_essential,
    is_graded_semisimple,
    is_semisimple_module,
    is_vn_regular,
    nilpotency_index,
    product_power,
    quotient_algebra,
    radical_of_module,
    radical_report,
)
from grfrob.utils.config import Limits, load_suite_catalog
from grfrob.utils.errors import CapExceededError

logger = logging.getLogger(__name__)

SUITES = ("core", "radicals", "qf", "frobenius", "structure")


def verification_check(suite: str) -> Callable:
    """Mark a method of TheoremSuites as a check belonging to ``suite``"""

    def mark(func: Callable) -> Callable:
        func.is_verification_check = True
        func.suite = suite
        return func

    return mark


@dataclass
class CheckResult:
    instance: str
    suite: str
    check: str
    passed: bool
    skipped: bool = False
    statement: str = ""
    sigma: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class Outcome:
    """What a check body returns: pass/fail, an optional failing σ and details"""

    def __init__(self, passed: bool, sigma: Optional[str] = None, skipped: bool = False, **details):
        self.passed = bool(passed)
        self.sigma = sigma
        self.skipped = skipped
        self.details = details

    @classmethod
    def skip(cls, reason: str) -> "Outcome":
        return cls(True, skipped=True, reason=reason)


class TheoremSuites:
    """Runs the registered checks against one algebra at a time"""

    def __init__(self, limits: Optional[Limits] = None, catalog: Optional[Dict[str, Dict[str, str]]] = None):
        self.limits = limits or Limits()
        self.catalog = catalog if catalog is not None else load_suite_catalog()

    def checks(self, suites: Sequence[str] = SUITES) -> List[Callable]:
        found = [
            getattr(self, name)
            for name in dir(self)
            if getattr(getattr(self, name), "is_verification_check", False)
        ]
        return [m for m in found if m.suite in suites]

    def run(self, name: str, A: GradedAlgebra, suites: Sequence[str] = SUITES) -> List[CheckResult]:
        results = []
        for method in self.checks(suites):
            check = method.__name__
            statement = self.catalog.get(check, {}).get("statement", "")
            logger.debug(f"{name}: {method.suite}/{check}")
            try:
                outcome = method(A)
                results.append(
                    CheckResult(
                        name,
                        method.suite,
                        check,
                        outcome.passed,
                        outcome.skipped,
                        statement,
                        outcome.sigma,
                        _jsonable(outcome.details),
                    )
                )
            except CapExceededError as e:
                logger.warning(f"{name}: {check} skipped, {e}")
                results.append(CheckResult(name, method.suite, check, True, True, statement, details={"reason": str(e)}))
            except Exception as e:
                logger.error(f"Error running {check} on {name}: {e}")
                results.append(CheckResult(name, method.suite, check, False, False, statement, error=str(e)))
        failed = [r.check for r in results if not r.passed]
        if failed:
            logger.warning(f"{name}: failed {failed}")
        return results

    @property
    def seed(self) -> int:
        return self.limits.seed

    def _qf(self, A: GradedAlgebra) -> bool:
        return is_graded_qf(A, self.seed).graded_qf

    def _frobenius(self, A: GradedAlgebra) -> FrobeniusReport:
        return A.memo(("frobenius_report", self.seed), lambda: frobenius_report(A, self.seed))

    def _iso(self, M: GradedModule, N: GradedModule) -> bool:
        return bool(is_graded_iso(M, N, seed=self.seed, random_factor=self.limits.iso_random_factor))

    def _sample_ideals(self, A: GradedAlgebra, parent: GradedModule) -> List[GradedSubspace]:
        """Principal, structural and a couple of random graded ideals on one side."""
        eye = np.eye(A.dim, dtype=np.int64)
        ideals = [submodule_generated(parent, eye[i]) for i in range(min(A.dim, 4))]
        ideals += [graded_socle(parent), graded_radical(A, parent.side)]
        rng = np.random.default_rng(self.seed)
        support = [g for g in A.group.elements if parent.component(g)]
        for _ in range(2):
            idx = list(parent.component(support[int(rng.integers(len(support)))]))
            v = np.zeros(A.dim, dtype=np.int64)
            v[idx] = rng.integers(0, A.p, size=len(idx))
            ideals.append(submodule_generated(parent, v[None, :]))
        return ideals

    # core

    @verification_check("core")
    def algebra_axioms(self, A: GradedAlgebra) -> Outcome:
        report = validate_algebra(A)
        return Outcome(report.valid, violations=report.violations[:3])

    @verification_check("core")
    def serialization_roundtrip(self, A: GradedAlgebra) -> Outcome:
        from grfrob.formats.codec import dump_algebra, load_algebra

        text = dump_algebra(A)
        again = dump_algebra(load_algebra(text))
        return Outcome(text == again)

    @verification_check("core")
    def shift_duality(self, A: GradedAlgebra) -> Outcome:
        cl = classify_isoshift(A, "left", self.seed)
        G = A.group
        if len(cl.indecomposables) > 4:
            pis = [cl.indecomposables[k] for k in cl.reps]
        else:
            pis = cl.indecomposables
        for P in pis:
            for Q in pis:
                for sigma in G.elements:
                    left, right = idempotent_shift_duality(A, P.idempotent, Q.idempotent, sigma, self.seed)
                    if left != right:
                        return Outcome(False, G.label(sigma), left=left, right=right)
        return Outcome(True)

    @verification_check("core")
    def dual_shift_identity(self, A: GradedAlgebra) -> Outcome:
        G = A.group
        for M in (regular_module(A, "left"), regular_module(A, "right")):
            if not biduality_check(M):
                return Outcome(False, module=M.label, failure="biduality")
        cl = classify_isoshift(A, "left", self.seed)
        modules = list(cl.tops) + [cl.type_module(i) for i in range(cl.t)]
        for M in modules:
            for tau in G.elements:
                if not dual_shift_check(M, tau, self.seed):
                    return Outcome(False, G.label(tau), module=M.label, failure="shifted dual")
        return Outcome(True)

    @verification_check("core")
    def krull_schmidt(self, A: GradedAlgebra) -> Outcome:
        first = classify_isoshift(A, "left", self.seed)
        second = classify_isoshift(A, "left", self.seed + 1)

        def profile(cl) -> List[tuple]:
            out = []
            for T in cl.tops:
                for j in range(first.t):
                    X = simple_iso_shift(T, first.type_top(j), check=False)
                    if X:
                        out.append((j, min(X)))
                        break
                else:
                    out.append((-1, -1))
            return sorted(out)

        a, b = profile(first), profile(second)
        return Outcome(first.t == second.t and a == b, types=[first.t, second.t], first=a, second=b)

    @verification_check("core")
    def graded_iso_equivalence(self, A: GradedAlgebra) -> Outcome:
        cl = classify_isoshift(A, "left", self.seed)
        G = A.group
        modules: List[GradedModule] = []
        for i in range(min(cl.t, 2)):
            modules += [cl.type_top(i), cl.type_module(i)]
        for M in modules:
            if not self._iso(M, M):
                return Outcome(False, module=M.label, failure="not reflexive")
        for M in modules:
            for N in modules:
                forward = self._iso(M, N)
                if forward != self._iso(N, M):
                    return Outcome(False, pair=[M.label, N.label], failure="not symmetric")
                for sigma in G.elements:
                    if self._iso(shift(M, sigma), shift(N, sigma)) != forward:
                        return Outcome(False, G.label(sigma), pair=[M.label, N.label], failure="not shift compatible")
        return Outcome(True, modules=len(modules))

    @verification_check("core")
    def annihilator_grading(self, A: GradedAlgebra) -> Outcome:
        p, d = A.p, A.dim
        L, Rr = regular_module(A, "left"), regular_module(A, "right")
        cl = classify_isoshift(A, "left", self.seed)
        ideals = {
            "J left": graded_radical(A, "left"),
            "J right": graded_radical(A, "right"),
            "left socle": graded_socle(L),
            "right socle": graded_socle(Rr),
        }
        for k, P in enumerate(cl.indecomposables):
            ideals[f"Re{k + 1}"] = GradedSubspace.span(L, A.right_matrix(P.idempotent))
        for name, X in ideals.items():
            if X.dim == 0:
                continue
            kills_right = left_kernel(np.concatenate([A.left_matrix(x) for x in X.basis], axis=1), p, d)
            kills_left = left_kernel(np.concatenate([A.right_matrix(x) for x in X.basis], axis=1), p, d)
            if not np.array_equal(row_space(kills_right, p, d), right_annihilator(X).basis):
                return Outcome(False, ideal=name, failure="right annihilator")
            if not np.array_equal(row_space(kills_left, p, d), left_annihilator(X).basis):
                return Outcome(False, ideal=name, failure="left annihilator")
        return Outcome(True, ideals=len(ideals))

    @verification_check("core")
    def projective_top_lifting(self, A: GradedAlgebra) -> Outcome:
        cl = classify_isoshift(A, "left", self.seed)
        G = A.group
        pairs = list(zip(cl.indecomposables, cl.tops))[:4]
        for k, (P, T) in enumerate(pairs):
            for l, (Q, U) in enumerate(pairs):
                for sigma in G.elements:
                    projectives = self._iso(P.module, shift(Q.module, sigma))
                    tops = self._iso(T, shift(U, sigma))
                    if projectives != tops:
                        return Outcome(False, G.label(sigma), pair=[k + 1, l + 1], projectives=projectives, tops=tops)
        return Outcome(True, indecomposables=len(pairs))

    # radicals

    @verification_check("radicals")
    def radical_identity_component(self, A: GradedAlgebra) -> Outcome:
        report = radical_report(A)
        L = report.jgr.parent
        jgr_e = GradedSubspace.span(L, report.jgr.component(A.group.identity))
        same = jgr_e == GradedSubspace.span(L, report.j_epsilon)
        return Outcome(same, j_epsilon_dim=int(report.j_epsilon.shape[0]))

    @verification_check("radicals")
    def radical_nilpotent(self, A: GradedAlgebra) -> Outcome:
        index = nilpotency_index(graded_radical(A))
        return Outcome(index is not None, nilpotency_index=index)

    @verification_check("radicals")
    def quotient_semisimple(self, A: GradedAlgebra) -> Outcome:
        Q, _ = quotient_algebra(A, graded_radical(A).basis)
        return Outcome(is_graded_semisimple(Q), quotient_dim=Q.dim)

    @verification_check("radicals")
    def radical_via_simples(self, A: GradedAlgebra) -> Outcome:
        J = graded_radical(A)
        return Outcome(J == graded_radical_via_simples(A, self.seed), jgr_dim=J.dim)

    @verification_check("radicals")
    def singular_ideal(self, A: GradedAlgebra) -> Outcome:
        report = radical_report(A)
        if nilpotency_index(report.zgr_left) is None:
            return Outcome(False, failure="singular ideal is not nilpotent")
        if self._qf(A) and report.zgr_left != report.jgr:
            return Outcome(False, failure="singular ideal differs from the radical", zgr_dim=report.zgr_left.dim)
        return Outcome(True, zgr_dim=report.zgr_left.dim)

    @verification_check("radicals")
    def regular_iff_semisimple(self, A: GradedAlgebra) -> Outcome:
        regular = is_vn_regular(A, self.limits.enumeration_cap)
        if regular is None:
            return Outcome.skip("component too large to enumerate")
        semisimple = is_graded_semisimple(A)
        return Outcome(regular == semisimple, vn_regular=regular, semisimple=semisimple)

    @verification_check("radicals")
    def ideals_meet_socle(self, A: GradedAlgebra) -> Outcome:
        L = regular_module(A, "left")
        soc = graded_socle(L)
        # R·b_i·R
        ideals = [submodule_generated(L, A.left_matrix(A.basis_vector(i))) for i in range(A.dim)]
        J = graded_radical(A)
        k = 1
        while J.dim and k <= A.dim:
            power = product_power(J, k)
            if power.dim == 0:
                break
            ideals.append(power)
            k += 1
        for I in ideals:
            if I.dim and I.intersect(soc).dim == 0:
                return Outcome(False, ideal=I.basis.tolist())
        return Outcome(True, ideals=len(ideals))

    # qf

    @verification_check("qf")
    def qf_matches_ungraded(self, A: GradedAlgebra) -> Outcome:
        graded = self._qf(A)
        ungraded = is_qf_ungraded(A, self.seed)
        return Outcome(graded == ungraded, graded=graded, ungraded=ungraded)

    @verification_check("qf")
    def qf_matches_annihilator_oracle(self, A: GradedAlgebra) -> Outcome:
        graded = self._qf(A)
        oracle = qf_annihilator_oracle(A, self.limits.oracle_trials, self.seed)
        return Outcome(graded == oracle.passed, graded=graded, oracle=oracle.passed, trials=oracle.trials)

    @verification_check("qf")
    def baer_criterion(self, A: GradedAlgebra) -> Outcome:
        if not self._qf(A):
            return Outcome.skip("not graded QF")
        report = baer_randomized(A, self.limits.baer_trials, self.seed)
        return Outcome(report.passed, trials=report.trials, counterexample=report.counterexample)

    @verification_check("qf")
    def socle_annihilators(self, A: GradedAlgebra) -> Outcome:
        if not self._qf(A):
            return Outcome.skip("not graded QF")
        report = radical_report(A)
        J_left, J_right = graded_radical(A, "left"), graded_radical(A, "right")
        soc_l, soc_r = report.socle_left, report.socle_right
        checks = {
            "left socle is the right annihilator of J": soc_l.basis.tolist() == right_annihilator(J_right).basis.tolist(),
            "right socle is the left annihilator of J": soc_r.basis.tolist() == left_annihilator(J_left).basis.tolist(),
            "socles coincide": soc_l.basis.tolist() == soc_r.basis.tolist(),
        }
        failed = [k for k, ok in checks.items() if not ok]
        return Outcome(not failed, failed=failed)

    @verification_check("qf")
    def dual_of_simple_is_simple(self, A: GradedAlgebra) -> Outcome:
        if not self._qf(A):
            return Outcome.skip("not graded QF")
        records = dual_simple_check(A, self.seed)
        bad = [f"{r.side}:{r.index + 1}={r.status}" for r in records if r.status != "simple"]
        return Outcome(not bad, failed=bad)

    @verification_check("qf")
    def socle_pairing(self, A: GradedAlgebra) -> Outcome:
        if not self._qf(A):
            return Outcome.skip("not graded QF")
        pairs = socle_pairing_check(A, self.seed)
        return Outcome(all(pairs), pairs=pairs)

    @verification_check("qf")
    def inertia_conjugation(self, A: GradedAlgebra) -> Outcome:
        decision = is_graded_qf(A, self.seed)
        if not decision.graded_qf:
            return Outcome.skip("not graded QF")
        return Outcome(decision.nakayama.inertia_conjugation_holds())

    @verification_check("qf")
    def nu_map_is_homomorphism(self, A: GradedAlgebra) -> Outcome:
        G = A.group
        for M in classify_isoshift(A, "left", self.seed).tops:
            for sigma in G.elements:
                if not nu_map(M, sigma).verify():
                    return Outcome(False, G.label(sigma), module=M.label)
        return Outcome(True)

    @verification_check("qf")
    def annihilator_sums(self, A: GradedAlgebra) -> Outcome:
        if not self._qf(A):
            return Outcome.skip("not graded QF")
        L, Rr = regular_module(A, "left"), regular_module(A, "right")
        for side, parent, ann in (("left", L, right_annihilator), ("right", Rr, left_annihilator)):
            ideals = self._sample_ideals(A, parent)
            for U in ideals:
                for V in ideals:
                    if ann(U) + ann(V) != ann(U.intersect(V)):
                        return Outcome(False, side=side, first=U.basis.tolist(), second=V.basis.tolist())
        return Outcome(True)

    # frobenius

    @verification_check("frobenius")
    def route_agreement(self, A: GradedAlgebra) -> Outcome:
        report = self._frobenius(A)
        G = A.group
        table = {G.label(rec.sigma): rec.routes for rec in report.cross_check_log}
        bad = report.disagreements()
        if bad:
            return Outcome(False, G.label(bad[0].sigma), routes=table)
        return Outcome(True, sigma_set=G.format_set(report.sigma_set), routes=table)

    @verification_check("frobenius")
    def frobenius_criterion_agreement(self, A: GradedAlgebra) -> Outcome:
        direct = is_graded_frobenius(A, self.seed)
        criterion = graded_frobenius_criterion(A, self.seed)
        return Outcome(direct == criterion, direct=direct, criterion=criterion)

    @verification_check("frobenius")
    def frobenius_forgets_grading(self, A: GradedAlgebra) -> Outcome:
        report = self._frobenius(A)
        if not report.sigma_set:
            return Outcome.skip("no σ makes the algebra graded Frobenius")
        return Outcome(is_frobenius_ungraded(A, self.seed))

    @verification_check("frobenius")
    def semisimple_quotient_faithful(self, A: GradedAlgebra) -> Outcome:
        Q, _ = quotient_algebra(A, graded_radical(A).basis)
        e = A.group.identity
        left, right = is_sigma_faithful(Q, e, "left"), is_sigma_faithful(Q, e, "right")
        return Outcome(left and right, left=left, right=right)

    @verification_check("frobenius")
    def faithfulness_inheritance(self, A: GradedAlgebra) -> Outcome:
        cl = classify_isoshift(A, "left", self.seed)
        G = A.group
        L = regular_module(A, "left")
        modules = [L] + [cl.type_module(i) for i in range(min(cl.t, 3))]
        for M in modules:
            eye = np.eye(M.dim, dtype=np.int64)
            subs = [graded_socle(M), radical_of_module(M)]
            subs += [submodule_generated(M, eye[i]) for i in range(min(M.dim, 4))]
            subs = [U for U in subs if U.dim]
            for U in subs:
                if is_essential(U) and is_semisimple_module(U.as_module()) and U != graded_socle(M):
                    return Outcome(False, module=M.label, failure="essential semisimple submodule is not the socle")
            for sigma in G.elements:
                faithful = is_module_sigma_faithful(M, sigma)
                for U in subs:
                    inner = is_module_sigma_faithful(U.as_module(), sigma)
                    if faithful and not inner:
                        return Outcome(False, G.label(sigma), module=M.label, failure="submodule lost faithfulness")
                    if inner and is_essential(U) and not faithful:
                        return Outcome(False, G.label(sigma), module=M.label, failure="essential submodule")
                summands = is_module_sigma_faithful(direct_sum(M, L), sigma)
                if summands != (faithful and is_module_sigma_faithful(L, sigma)):
                    return Outcome(False, G.label(sigma), module=M.label, failure="direct sum")
        return Outcome(True, modules=len(modules))

    @verification_check("frobenius")
    def nu_map_injective_essential(self, A: GradedAlgebra) -> Outcome:
        G = A.group
        modules = [regular_module(A, "left")] + list(classify_isoshift(A, "left", self.seed).tops)
        for M in modules:
            for sigma in G.elements:
                phi = nu_map(M, sigma)
                faithful = is_module_sigma_faithful(M, sigma)
                if phi.is_injective() != faithful:
                    return Outcome(False, G.label(sigma), module=M.label, faithful=faithful)
                if not is_essential(phi.image()):
                    return Outcome(False, G.label(sigma), module=M.label, failure="image not essential")
        return Outcome(True)

    @verification_check("frobenius")
    def strongly_graded_reduction(self, A: GradedAlgebra) -> Outcome:
        if not is_strongly_graded(A):
            return Outcome.skip("not strongly graded")
        Re, _ = A.identity_component()
        qf, qf_e = self._qf(A), is_qf_ungraded(Re, self.seed)
        frob, frob_e = is_graded_frobenius(A, self.seed), is_frobenius_ungraded(Re, self.seed)
        return Outcome(qf == qf_e and frob == frob_e, qf=[qf, qf_e], frobenius=[frob, frob_e])

    # structure

    @verification_check("structure")
    def recovery_roundtrip(self, A: GradedAlgebra) -> Outcome:
        if not is_graded_semisimple(A) or classify_isoshift(A, "left", self.seed).t != 1:
            return Outcome.skip("not graded simple")
        result = structure_recovery(A, self.seed)
        G = A.group
        return Outcome(
            result.verified,
            n=result.n,
            shifts=[G.label(g) for g in result.shifts],
            support=G.format_set(result.delta.support()),
        )

    @verification_check("structure")
    def simple_translation(self, A: GradedAlgebra) -> Outcome:
        if not is_graded_semisimple(A):
            return Outcome.skip("not graded semisimple")
        cl = classify_isoshift(A, "left", self.seed)
        L = regular_module(A, "left")
        ideals = [GradedSubspace.span(L, A.right_matrix(P.idempotent)) for P in cl.indecomposables]
        G = A.group
        for k, S in enumerate(ideals):
            for l, S2 in enumerate(ideals):
                found = any(simple_translation_witness(A, S, S2, g) is not None for g in G.elements)
                same = cl.type_of[k][0] == cl.type_of[l][0]
                if found != same:
                    return Outcome(False, pair=[k + 1, l + 1], same_type=same, witness=found)
        return Outcome(True, ideals=len(ideals))


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value
