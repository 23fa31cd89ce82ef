import numpy as np
import pytest

from grfrob.core.constructions import (
    GradedDivisionSpec,
    MatrixAlgebraSpec,
    builtin_corpus,
    graded_matrix_algebra,
    group_algebra,
    product_algebra,
    quiver_preset,
    trivial_extension,
    truncated_polynomial,
    upper_triangular,
)
from grfrob.core.frobenius import (
    NakayamaData,
    NakayamaFailure,
    biduality_check,
    coinduced,
    dual_module,
    dual_pairing,
    dual_shift_check,
    dual_simple_check,
    faithful_component_check,
    frobenius_report,
    graded_frobenius_algebra_check,
    graded_frobenius_criterion,
    is_frobenius_ungraded,
    is_graded_frobenius,
    is_graded_qf,
    is_module_sigma_faithful,
    is_qf_ungraded,
    is_sigma_faithful,
    is_strongly_graded,
    nakayama_data,
    nu_map,
    qf_annihilator_oracle,
    sigma_frobenius_check_direct,
    sigma_frobenius_check_dual,
    sigma_frobenius_set_combinatorial,
    socle_pairing_check,
)
from grfrob.core.decomp import principal_indecomposables
from grfrob.core.grcore import regular_module, restrict_component
from grfrob.core.groups import FiniteGroup
from grfrob.core.linalg import matmul_mod, rank
from grfrob.core.radicals import is_essential
from grfrob.utils.errors import InvalidInputError


@pytest.fixture
def corpus():
    return {entry.name: entry.algebra for entry in builtin_corpus()}


def test_flagship_sigma_set(flagship):
    report = frobenius_report(flagship)
    assert report.graded_qf
    assert report.sigma_set == frozenset({1})
    assert report.routes_agree
    assert not report.disagreements()


def test_flagship_individual_routes(flagship):
    for sigma, expected in ((0, False), (1, True)):
        assert sigma_frobenius_check_direct(flagship, sigma, "left") is expected
        assert sigma_frobenius_check_direct(flagship, sigma, "right") is expected
        assert sigma_frobenius_check_dual(flagship, sigma, "left") is expected
        assert faithful_component_check(flagship, sigma) is expected
        assert graded_frobenius_algebra_check(flagship, sigma) is expected


def test_dual_numbers_over_c4(dual_numbers_c4):
    assert frobenius_report(dual_numbers_c4).sigma_set == frozenset({1})


def test_nakayama_data_of_flagship(flagship):
    nak = nakayama_data(flagship)
    assert isinstance(nak, NakayamaData)
    assert nak.pi == [0]
    assert nak.sigmas == [1]
    assert nak.pi_cycles() == "id"
    assert nak.inertia_conjugation_holds()


def test_upper_triangular_is_not_qf(t2):
    decision = is_graded_qf(t2)
    assert not decision
    assert isinstance(decision.evidence, NakayamaFailure)
    assert sigma_frobenius_set_combinatorial(t2, decision.evidence) == frozenset()
    assert not qf_annihilator_oracle(t2, trials=200, seed=0).passed
    with pytest.raises(InvalidInputError):
        sigma_frobenius_check_direct(t2, 0)


def test_annihilator_oracle_passes_on_qf(flagship, m2):
    for A in (flagship, m2):
        assert qf_annihilator_oracle(A, trials=200, seed=0).passed


def test_trivial_extension_of_upper_triangular(t2):
    E = trivial_extension(t2)
    assert is_graded_qf(E)
    Re, _ = E.identity_component()
    assert not is_qf_ungraded(Re)


def test_trivial_extension_of_dual_numbers():
    E = trivial_extension(truncated_polynomial(3, 2))
    assert is_graded_qf(E)
    assert not is_sigma_faithful(E, 0, "left")
    assert 0 not in frobenius_report(E).sigma_set


def test_qf_not_frobenius_corner(corpus):
    A = corpus["End(P0+P0+P1)"]
    assert A.dim == 9
    report = frobenius_report(A)
    assert report.graded_qf
    assert report.sigma_set == frozenset()
    assert report.routes_agree
    assert not is_frobenius_ungraded(A)


def test_graded_matrix_algebra_is_graded_frobenius(c4):
    A = graded_matrix_algebra(MatrixAlgebraSpec(GradedDivisionSpec(c4, (0, 2), 3), (0, 1)))
    assert c4.identity in frobenius_report(A).sigma_set
    assert is_graded_frobenius(A)
    assert graded_frobenius_criterion(A)


def test_frobenius_criterion_agrees(flagship, c2):
    A = group_algebra(c2, 3)
    assert is_graded_frobenius(A) and graded_frobenius_criterion(A)
    assert not is_graded_frobenius(flagship)
    assert not graded_frobenius_criterion(flagship)


def test_forgetting_the_grading(flagship, t2):
    assert is_frobenius_ungraded(flagship)
    assert not is_frobenius_ungraded(t2)
    assert is_qf_ungraded(flagship)


def test_strongly_graded(c2, flagship):
    assert is_strongly_graded(group_algebra(c2, 3))
    assert not is_strongly_graded(flagship)


def test_faithfulness(flagship):
    assert is_sigma_faithful(flagship, 1, "left")
    assert is_sigma_faithful(flagship, 1, "right")
    assert not is_sigma_faithful(flagship, 0, "left")


def test_duals(flagship, t2):
    L = regular_module(flagship, "left")
    D = dual_module(L)
    assert D.side == "right"
    assert D.dim == 2
    assert biduality_check(L)
    assert biduality_check(regular_module(t2, "left"))
    for tau in (0, 1):
        assert dual_shift_check(L, tau)


def test_duals_of_simples_on_qf(flagship):
    records = dual_simple_check(flagship)
    assert {r.status for r in records} == {"simple"}


def test_socle_pairing(flagship, m2):
    for A in (flagship, m2):
        assert all(socle_pairing_check(A))


def test_nu_map_is_a_homomorphism(flagship):
    L = regular_module(flagship, "left")
    for sigma in (0, 1):
        phi = nu_map(L, sigma)
        assert phi.verify()


def test_coinduced_module_dimension(flagship):
    L = regular_module(flagship, "left")
    N = restrict_component(L, 0)
    C = coinduced(flagship, N)
    assert C.dim == 2
    assert coinduced(flagship, N, 1).dim == 2


def test_dual_action_is_right_multiplication(builtin_entries):
    cases = [A for _, A in builtin_entries if A.dim <= 12]
    assert len(cases) >= 15
    for A in cases:
        p = A.p
        # HOM(Re, R) ≅ eR
        pairs = [(regular_module(A, "left"), A.dim)]
        pairs += [(P.module, rank(A.left_matrix(P.idempotent), p)) for P in principal_indecomposables(A, "left")]
        for M, expected in pairs:
            D, mats = dual_pairing(M)
            assert D.dim == expected, (A, M)
            for F in mats:
                for b in range(A.dim):
                    assert np.array_equal(matmul_mod(M.action[b], F, p), matmul_mod(F, A.structure[b], p))
            flat = np.stack([F.reshape(-1) for F in mats])
            for r in range(A.dim):
                times_r = np.stack([matmul_mod(F, A.right_matrix(A.basis_vector(r)), p).reshape(-1) for F in mats])
                assert np.array_equal(matmul_mod(D.action[r], flat, p), times_r), (A, r)


def test_products_intersect_sigma_sets(flagship, c2):
    field = truncated_polynomial(5, 1, c2)
    group = group_algebra(c2, 5)
    triangular = upper_triangular(5, 2, c2, (0, 1))
    factors = {"flagship": flagship, "group": group, "field": field, "triangular": triangular}
    reports = {name: frobenius_report(A) for name, A in factors.items()}
    assert reports["flagship"].sigma_set == frozenset({1})
    assert reports["group"].sigma_set == frozenset({0, 1})
    assert reports["field"].sigma_set == frozenset({0})
    assert not reports["triangular"].graded_qf

    combos = [
        ("flagship", "group"),
        ("group", "field"),
        ("flagship", "field"),
        ("flagship", "triangular"),
        ("flagship", "group", "field"),
        ("group", "group", "field"),
        ("group", "flagship", "triangular"),
    ]
    for names in combos:
        report = frobenius_report(product_algebra(*(factors[n] for n in names)))
        expected = frozenset.intersection(*(reports[n].sigma_set for n in names))
        assert report.sigma_set == expected, names
        assert report.graded_qf == all(reports[n].graded_qf for n in names), names
        assert report.routes_agree, names


def test_frobenius_criterion_on_non_qf_algebras(t2, c2):
    for A in (t2, upper_triangular(3, 2, c2, (0, 1)), quiver_preset("a2", 3, c2, 1)):
        assert not is_graded_qf(A)
        assert not is_graded_frobenius(A)
        assert not graded_frobenius_criterion(A)


def test_strongly_graded_reduces_to_identity_component(m2, c2):
    S3 = FiniteGroup.symmetric(3)
    for A in (m2, group_algebra(c2, 3), group_algebra(S3, 3)):
        assert is_strongly_graded(A)
        Re, _ = A.identity_component()
        assert is_graded_qf(A).graded_qf == is_qf_ungraded(Re)
        assert is_graded_frobenius(A) == is_frobenius_ungraded(Re)
        assert is_graded_frobenius(A)


def test_nu_map_is_injective_exactly_when_faithful(flagship, t2):
    for A in (flagship, t2):
        L = regular_module(A, "left")
        for sigma in A.group.elements:
            phi = nu_map(L, sigma)
            assert phi.is_injective() == is_module_sigma_faithful(L, sigma)
            assert is_essential(phi.image())
    assert nu_map(regular_module(flagship, "left"), 1).is_injective()
    assert not nu_map(regular_module(flagship, "left"), 0).is_injective()
