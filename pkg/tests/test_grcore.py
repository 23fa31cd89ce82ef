import numpy as np
import pytest

from grfrob.core.constructions import truncated_polynomial, upper_triangular
from grfrob.core.grcore import (
    GradedAlgebra,
    GradedSubspace,
    PrimeField,
    coset_multisets_equal,
    direct_sum,
    hom_basis,
    hom_space,
    idempotent_shift_duality,
    is_graded_iso,
    left_annihilator,
    regular_module,
    right_annihilator,
    shift,
    submodule_generated,
    validate_algebra,
    validate_module,
)
from grfrob.core.decomp import classify_isoshift
from grfrob.core.groups import FiniteGroup
from grfrob.utils.errors import InvalidInputError


def test_prime_field_arithmetic():
    F7 = PrimeField(7)
    assert int(F7(3).inverse()) == 5
    assert int(F7(3) * F7(5)) == 1
    assert int(F7(2) ** -1) == 4
    assert int(F7(1) - 3) == 5
    with pytest.raises(ZeroDivisionError):
        F7(0).inverse()


@pytest.mark.parametrize("p", [0, 1, 4, 9])
def test_prime_field_rejects_non_primes(p):
    with pytest.raises(InvalidInputError):
        PrimeField(p)


def test_group_utilities(c4):
    assert c4.subgroup_closure([2]) == frozenset({0, 2})
    assert c4.subgroup_closure([c4.identity]) == frozenset({0})
    assert len(c4.left_cosets({0, 2})) == 2
    assert c4.is_abelian()
    S3 = FiniteGroup.symmetric(3)
    assert S3.order == 6
    assert not S3.is_abelian()
    assert S3.center() == frozenset({S3.identity})


def test_group_by_name():
    K4 = FiniteGroup.by_name("C2xC2")
    assert K4.order == 4
    assert all(K4.mul(g, g) == K4.identity for g in K4.elements)
    with pytest.raises(InvalidInputError):
        FiniteGroup.by_name("D17")


def test_group_table_must_be_latin_square():
    with pytest.raises(InvalidInputError):
        FiniteGroup(("e", "a"), np.array([[0, 1], [1, 1]]), 0)


def test_conjugate_subgroup():
    S3 = FiniteGroup.symmetric(3)
    transposition = next(g for g in S3.elements if S3.mul(g, g) == S3.identity and g != S3.identity)
    H = frozenset({S3.identity, transposition})
    conjugates = {S3.conjugate_subgroup(H, s) for s in S3.elements}
    assert len(conjugates) == 3


def test_validate_detects_non_associativity(broken):
    report = validate_algebra(broken)
    assert not report.valid
    assert report.violations[0].startswith("associativity")


def test_validate_detects_grading_violation(c2):
    C = np.zeros((2, 2, 2), dtype=np.int64)
    C[0, 0, 0] = C[0, 1, 1] = C[1, 0, 1] = 1
    C[1, 1, 1] = 1  # x·x = x, but x has degree c
    A = GradedAlgebra(3, c2, (0, 1), C, np.array([1, 0]))
    report = validate_algebra(A)
    assert not report.valid
    assert report.violations[0].startswith("grading")


def test_constructed_algebras_validate(flagship, m2, t2):
    for A in (flagship, m2, t2):
        assert validate_algebra(A).valid
        assert validate_module(regular_module(A, "left")).valid
        assert validate_module(regular_module(A, "right")).valid


def test_shift_convention(dual_numbers_c4):
    L = regular_module(dual_numbers_c4, "left")
    assert L.degrees == (0, 1)
    assert shift(L, 1).degrees == (3, 0)
    assert regular_module(dual_numbers_c4, "right").degrees == (0, 3)


def test_shift_composition(dual_numbers_c4):
    L = regular_module(dual_numbers_c4, "left")
    for sigma in range(4):
        for tau in range(4):
            assert shift(shift(L, sigma), tau).degrees == shift(L, (sigma + tau) % 4).degrees


def test_hom_space_against_shifted_target(dual_numbers_c4):
    L = regular_module(dual_numbers_c4, "left")
    for sigma in range(4):
        direct = hom_space(L, L, sigma)
        via_shift = hom_space(L, shift(L, sigma), 0)
        assert len(direct) == len(via_shift) == len(dual_numbers_c4.component(sigma))
        assert all(h.verify() for h in direct)


def test_hom_cache_is_keyed_by_module_content(t2, flagship):
    L = regular_module(flagship, "left")
    assert hom_basis(L, shift(L, 1), 1) is hom_basis(L, shift(L, 1), 1)

    cl = classify_isoshift(t2)
    P = cl.indecomposables[0].module
    own, other = cl.tops[0], cl.tops[1]
    assert direct_sum(own, own).fingerprint() != direct_sum(other, other).fingerprint()
    for _ in range(3):
        # fresh targets with equal degrees but different actions
        assert len(hom_basis(P, direct_sum(own, own, own), 0)) == 3
        assert len(hom_basis(P, direct_sum(other, other, other), 0)) == 0


def test_opposite_is_involutive(t2):
    assert t2.opposite().opposite() is t2
    assert np.array_equal(t2.opposite().structure, t2.structure.transpose(1, 0, 2))


def test_submodule_and_annihilators(t2):
    L = regular_module(t2, "left")
    e12 = t2.basis_vector(1)
    X = submodule_generated(L, e12)
    assert X.dim == 1
    right = right_annihilator(X)
    assert right.dim == 2
    assert right.contains(t2.basis_vector(0)) and right.contains(e12)
    left = left_annihilator(X)
    assert left.dim == 2
    assert left.contains(e12) and left.contains(t2.basis_vector(2))


def test_subspace_needs_homogeneous_generators(flagship):
    L = regular_module(flagship, "left")
    with pytest.raises(InvalidInputError):
        GradedSubspace.span(L, np.array([1, 1]))


def test_is_graded_iso_of_shifted_regular(flagship):
    L = regular_module(flagship, "left")
    assert is_graded_iso(L, L)
    assert not is_graded_iso(L, shift(L, 1))
    witness = is_graded_iso(shift(L, 1), shift(L, 1)).witness
    assert witness.shape == (2, 2)


def test_idempotent_shift_duality(m2):
    e22 = np.array([0, 0, 0, 1])
    e11 = np.array([1, 0, 0, 0])
    assert idempotent_shift_duality(m2, e22, e11, 1) == (True, True)
    assert idempotent_shift_duality(m2, e22, e11, 0) == (False, False)


def test_coset_multisets(c4):
    H = {0, 2}
    assert coset_multisets_equal(c4, [0, 1], [2, 3], H)
    assert not coset_multisets_equal(c4, [0, 2], [0, 1], H)
    assert not coset_multisets_equal(c4, [0], [0, 2], H)


def test_identity_component_and_trivial_grading(c2):
    A = upper_triangular(3, 2, c2, (0, 1))
    Re, idx = A.identity_component()
    assert idx == (0, 2)
    assert Re.dim == 2
    assert A.with_trivial_grading().group.order == 1


def test_bad_degree_rejected(c2):
    C = truncated_polynomial(3, 2).structure
    with pytest.raises(InvalidInputError):
        GradedAlgebra(3, c2, (0, 5), C, np.array([1, 0]))
