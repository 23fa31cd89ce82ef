import pytest

from grfrob.core.analyzer import verify_instances
from grfrob.core.constructions import (
    builtin_corpus,
    canonical_shift_cosets,
    graded_matrix_algebra,
    random_matrix_specs,
    structure_recovery,
    trivial_extension,
    truncated_polynomial,
    upper_triangular,
)
from grfrob.core.decomp import classify_isoshift, graded_simple_census
from grfrob.core.frobenius import (
    faithful_component_check,
    frobenius_report,
    graded_frobenius_algebra_check,
    is_graded_qf,
    is_qf_ungraded,
    is_sigma_faithful,
    sigma_frobenius_check_direct,
    sigma_frobenius_check_dual,
)
from grfrob.core.radicals import baer_randomized
from grfrob.core.suites import SUITES, TheoremSuites
from grfrob.utils.config import DEFAULTS, load_suite_catalog


def _instances():
    return [(entry.name, entry.algebra) for entry in builtin_corpus()]


def test_census_over_c4(m3_c4):
    cl = classify_isoshift(m3_c4)
    assert graded_simple_census(cl) == {"total": 2, "embedded": [2, 1], "gr_uniform": False}


def test_flagship_by_every_route(flagship):
    report = frobenius_report(flagship)
    assert report.sigma_set == frozenset({1})
    assert report.routes_agree
    found = {
        sigma
        for sigma in flagship.group.elements
        if sigma_frobenius_check_direct(flagship, sigma, "left")
        and sigma_frobenius_check_direct(flagship, sigma, "right")
        and sigma_frobenius_check_dual(flagship, sigma, "left")
        and faithful_component_check(flagship, sigma)
        and graded_frobenius_algebra_check(flagship, sigma)
    }
    assert found == {1}


def test_trivial_extensions():
    E = trivial_extension(upper_triangular(3, 2))
    assert is_graded_qf(E)
    Re, _ = E.identity_component()
    assert not is_qf_ungraded(Re)

    E = trivial_extension(truncated_polynomial(3, 2))
    assert is_graded_qf(E)
    assert not is_sigma_faithful(E, E.group.identity, "left")
    assert E.group.identity not in frobenius_report(E).sigma_set


def test_recovery_of_ten_generated_instances():
    for spec in random_matrix_specs(seed=0, count=10, max_dim=DEFAULTS["corpus_max_dim"]):
        result = structure_recovery(graded_matrix_algebra(spec))
        G, H = spec.delta.group, spec.delta.support
        assert result.verified
        assert result.n == spec.n
        assert result.delta.support() == frozenset(H)
        assert canonical_shift_cosets(G, H, result.shifts) == canonical_shift_cosets(G, H, spec.shifts)


def test_baer_control(t2, flagship):
    assert baer_randomized(flagship, trials=200, seed=0).passed
    assert baer_randomized(t2, trials=200, seed=0).counterexample is not None


def test_every_check_has_a_statement():
    suites = TheoremSuites()
    names = {m.__name__ for m in suites.checks()}
    assert len(names) == 33
    assert {m.suite for m in suites.checks()} == set(SUITES)
    assert names == set(load_suite_catalog())


@pytest.mark.parametrize("fixture", ["flagship", "t2", "m2", "fields_f3", "dual_numbers_c4"])
def test_all_suites_on_small_instances(fixture, request):
    A = request.getfixturevalue(fixture)
    results = TheoremSuites().run(fixture, A)
    failed = [(r.check, r.error) for r in results if not r.passed]
    assert not failed


@pytest.mark.parametrize(
    "check",
    [
        "krull_schmidt",
        "graded_iso_equivalence",
        "annihilator_grading",
        "projective_top_lifting",
        "ideals_meet_socle",
        "annihilator_sums",
        "faithfulness_inheritance",
        "nu_map_injective_essential",
        "strongly_graded_reduction",
    ],
)
def test_structural_identities(check, flagship, t2, m2, m3_c4, dual_numbers_c4):
    method = getattr(TheoremSuites(), check)
    for A in (flagship, t2, m2, m3_c4, dual_numbers_c4):
        outcome = method(A)
        assert outcome.passed, (check, A, outcome.details)


def test_identities_that_need_qf_or_strong_grading_are_exercised(flagship, m2, t2):
    suites = TheoremSuites()
    assert not suites.annihilator_sums(flagship).skipped
    assert suites.annihilator_sums(t2).skipped
    assert not suites.strongly_graded_reduction(m2).skipped
    assert suites.strongly_graded_reduction(flagship).skipped


@pytest.mark.slow
def test_radicals_and_lemma_identities_on_corpus():
    summary = verify_instances(_instances(), suites=("core", "radicals", "qf"))
    assert summary["summary"]["failed"] == 0, summary["failures"][:3]


@pytest.mark.slow
def test_route_agreement_on_corpus():
    summary = verify_instances(_instances(), suites=("frobenius", "structure"))
    assert summary["summary"]["instances"] >= 30
    assert summary["summary"]["failed"] == 0, summary["failures"][:3]
