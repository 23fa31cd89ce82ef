import numpy as np
import pytest

from grfrob.core.constructions import (
    CORPUS_VERSION,
    GradedDivisionSpec,
    MatrixAlgebraSpec,
    builtin_corpus,
    canonical_shift_cosets,
    corner_algebra,
    corpus_generate,
    gamma_row_module,
    graded_division_ring,
    graded_matrix_algebra,
    group_algebra,
    is_algebra_isomorphism,
    is_graded_division_ring,
    matrix_unit,
    minimal_graded_left_ideal,
    path_algebra,
    product_algebra,
    quaternion_cocycle,
    quiver_preset,
    random_matrix_specs,
    structure_recovery,
    trivial_extension,
    truncated_polynomial,
    upper_triangular,
)
from grfrob.core.decomp import is_graded_simple
from grfrob.core.grcore import validate_algebra
from grfrob.core.radicals import graded_socle
from grfrob.core.groups import FiniteGroup
from grfrob.utils.errors import InvalidInputError


def test_matrix_algebra_degrees(m2):
    assert m2.degrees == (0, 1, 1, 0)
    assert m2.names == ("E11", "E12", "E21", "E22")
    assert matrix_unit(m2, 2, 1).tolist() == [0, 0, 0, 1]


def test_matrix_algebra_over_division_ring(m3_c4):
    assert m3_c4.dim == 18
    assert validate_algebra(m3_c4).valid
    assert m3_c4.support() == frozenset(range(4))


def test_division_ring_support_must_be_subgroup(c4):
    with pytest.raises(InvalidInputError):
        graded_division_ring(GradedDivisionSpec(c4, (0, 1), 3))


def test_quaternion_division_ring():
    K4 = FiniteGroup.by_name("C2xC2")
    Q = graded_division_ring(GradedDivisionSpec(K4, tuple(K4.elements), 3, quaternion_cocycle(K4, 3)))
    assert is_graded_division_ring(Q)
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if a != b:
                ab = Q.mul(Q.basis_vector(a), Q.basis_vector(b))
                ba = Q.mul(Q.basis_vector(b), Q.basis_vector(a))
                assert np.array_equal(ab, (-ba) % 3)


def test_quaternion_cocycle_preconditions(c4):
    K4 = FiniteGroup.by_name("C2xC2")
    with pytest.raises(InvalidInputError):
        quaternion_cocycle(K4, 2)
    with pytest.raises(InvalidInputError):
        quaternion_cocycle(c4, 3)


def test_bad_cocycle_rejected(c2):
    alpha = np.ones((2, 2), dtype=np.int64)
    alpha[1, 1] = 0
    with pytest.raises(InvalidInputError):
        graded_division_ring(GradedDivisionSpec(c2, (0, 1), 3, alpha))


def test_group_algebra_with_coarser_grading():
    S3 = FiniteGroup.symmetric(3)
    C2 = FiniteGroup.cyclic(2)
    sign = [0 if S3.label(g) == "e" or len(S3.label(g)) == 5 else 1 for g in S3.elements]
    A = group_algebra(S3, 3, grading=sign, grading_group=C2)
    assert A.group == C2
    assert len(A.component(0)) == len(A.component(1)) == 3


def test_truncated_polynomial():
    A = truncated_polynomial(3, 3, FiniteGroup.cyclic(3), 1)
    assert A.degrees == (0, 1, 2)
    assert A.names == ("1", "x", "x2")
    x = A.basis_vector(1)
    assert A.power(x, 2).tolist() == [0, 0, 1]
    assert not A.power(x, 3).any()


def test_upper_triangular_with_shifts(c2):
    A = upper_triangular(3, 2, c2, (0, 1))
    assert A.degrees == (0, 1, 0)
    assert A.names == ("E11", "E12", "E22")
    with pytest.raises(InvalidInputError):
        upper_triangular(3, 2, c2, (0,))


def test_trivial_extension(t2):
    E = trivial_extension(t2)
    assert E.dim == 6
    assert E.degrees == (0, 0, 0, 1, 1, 1)
    assert validate_algebra(E).valid
    # A* squares to zero
    star = [E.basis_vector(k) for k in range(3, 6)]
    assert all(not E.mul(f, g).any() for f in star for g in star)


def test_product_algebra(flagship):
    P = product_algebra(flagship, truncated_polynomial(5, 1, flagship.group))
    assert P.dim == 3
    assert P.unit.tolist() == [1, 0, 1]
    with pytest.raises(InvalidInputError):
        product_algebra(flagship, truncated_polynomial(3, 1, flagship.group))
    with pytest.raises(InvalidInputError):
        product_algebra()


def test_corner_algebra(t2):
    e = np.array([1, 0, 0])
    C = corner_algebra(t2, e)
    assert C.dim == 1
    with pytest.raises(InvalidInputError):
        corner_algebra(t2, np.array([0, 1, 0]))


@pytest.mark.parametrize(
    "name, dim",
    [("a2", 3), ("cycle2-rad2", 4), ("cycle2-rad3", 6), ("cycle3-rad2", 6)],
)
def test_quiver_presets(name, dim):
    A = quiver_preset(name, 3)
    assert A.dim == dim
    assert validate_algebra(A).valid


def test_path_algebra_relations(c2):
    # two loops at one vertex with a·b = 0
    A = path_algebra(3, c2, 1, [(0, 0, 1), (0, 0, 1)], relations=[(0, 1)], max_length=2)
    assert A.names == ("e0", "a0", "a1", "a0a0", "a1a0", "a1a1")
    assert A.degrees == (0, 1, 1, 0, 0, 0)
    with pytest.raises(InvalidInputError):
        quiver_preset("nonexistent", 3)


def test_column_and_row_modules(m2):
    assert gamma_row_module(m2, 0, 2).side == "right"
    assert gamma_row_module(m2, 0, 2).dim == 2
    with pytest.raises(InvalidInputError):
        matrix_unit(m2, 3, 0)


def test_structure_recovery_roundtrip(m3_c4, c4):
    result = structure_recovery(m3_c4)
    assert result.verified
    assert result.n == 3
    assert result.delta.support() == frozenset({0, 2})
    H = {0, 2}
    assert canonical_shift_cosets(c4, H, result.shifts) == canonical_shift_cosets(c4, H, (0, 1, 2))
    assert is_algebra_isomorphism(m3_c4, result.algebra, result.witness)


def test_structure_recovery_of_seeded_instances():
    for spec in random_matrix_specs(seed=7, count=5, max_dim=16):
        result = structure_recovery(graded_matrix_algebra(spec))
        H = spec.delta.support
        G = spec.delta.group
        assert result.verified
        assert result.n == spec.n
        assert result.delta.support() == frozenset(H)
        assert canonical_shift_cosets(G, H, result.shifts) == canonical_shift_cosets(G, H, spec.shifts)


def test_minimal_graded_left_ideal(m2, m3_c4, flagship, fields_f3):
    for A, dim in ((m2, 2), (m3_c4, 6), (flagship, 1), (fields_f3, 1)):
        U = minimal_graded_left_ideal(A)
        assert U.dim == dim
        assert U.is_submodule()
        assert graded_socle(U.parent).contains_subspace(U)
        assert is_graded_simple(U.as_module())


def test_structure_recovery_rejects_non_simple(flagship, fields_f3):
    with pytest.raises(InvalidInputError):
        structure_recovery(flagship)
    with pytest.raises(InvalidInputError):
        structure_recovery(fields_f3)


def test_canonical_shift_cosets(c4):
    H = {0, 2}
    assert canonical_shift_cosets(c4, H, (1, 3)) == canonical_shift_cosets(c4, H, (0, 0))
    assert canonical_shift_cosets(c4, H, (0, 1)) == canonical_shift_cosets(c4, H, (3, 2))
    assert canonical_shift_cosets(c4, H, (0, 1)) != canonical_shift_cosets(c4, H, (0, 2))


def test_builtin_corpus_bounds():
    corpus = builtin_corpus()
    names = [entry.name for entry in corpus]
    assert len(corpus) >= 30
    assert len(set(names)) == len(names)
    for entry in corpus:
        assert entry.algebra.dim <= 64
        assert entry.algebra.group.order <= 8
    assert CORPUS_VERSION == "1"


def test_corpus_generate_is_deterministic():
    first = corpus_generate(seed=3, extra=4)
    second = corpus_generate(seed=3, extra=4)
    assert [e.name for e in first] == [e.name for e in second]
    assert first[-1].name == "random-matrix-3-3"
    assert all(np.array_equal(a.algebra.structure, b.algebra.structure) for a, b in zip(first, second))
    assert len(first) == len(builtin_corpus()) + 4
