import numpy as np
import pytest

from grfrob.core.constructions import (
    GradedDivisionSpec,
    graded_division_ring,
    group_algebra,
    sigma_column_module,
)
from grfrob.core.decomp import (
    classify_isoshift,
    decompose_projective,
    endomorphism_algebra,
    graded_simple_census,
    inertia_group,
    is_division_algebra,
    is_graded_simple,
    primitive_idempotents,
    principal_indecomposables,
    projectives_isomorphic,
    simple_embedding_criteria,
    simple_iso_shift,
    top,
    type_counts,
)
from grfrob.core.grcore import GradedAlgebra, GradedSubspace, direct_sum, is_graded_iso, regular_module, shift
from grfrob.core.linalg import contains, matmul_mod, row_space
from grfrob.core.radicals import _jgr_rows
from grfrob.core.groups import FiniteGroup
from grfrob.utils.errors import InvalidInputError


def _gf9() -> GradedAlgebra:
    """GF(3)[i]/(i^2 + 1)."""
    C = np.zeros((2, 2, 2), dtype=np.int64)
    C[0, 0, 0] = C[0, 1, 1] = C[1, 0, 1] = 1
    C[1, 1, 0] = 2
    return GradedAlgebra(3, FiniteGroup.trivial(), (0, 0), C, np.array([1, 0]), ("1", "i"), "F9")


def test_primitive_idempotents_of_upper_triangular(t2):
    ids = primitive_idempotents(t2)
    assert len(ids) == 2
    for e in ids:
        assert np.array_equal(t2.mul(e, e), e)
    assert not t2.mul(ids[0], ids[1]).any()
    assert np.array_equal(sum(ids) % 3, t2.unit)


def test_primitive_idempotents_split_product(fields_f3):
    assert len(primitive_idempotents(fields_f3)) == 2


def test_division_algebra_certificate(fields_f3):
    assert is_division_algebra(_gf9())
    assert not is_division_algebra(fields_f3)


def test_counting_over_c4(m3_c4):
    cl = classify_isoshift(m3_c4)
    assert cl.t == 1
    assert cl.multiplicities == [3]
    census = graded_simple_census(cl)
    assert census == {"total": 2, "embedded": [2, 1], "gr_uniform": False}


def test_trivially_graded_product_has_two_types(fields_f3):
    cl = classify_isoshift(fields_f3)
    assert cl.t == 2
    assert cl.multiplicities == [1, 1]


def test_division_ring_has_one_type(c4):
    D = graded_division_ring(GradedDivisionSpec(c4, (0, 2), 3))
    cl = classify_isoshift(D)
    assert cl.t == 1
    assert cl.inertia[0] == frozenset({0, 2})


def test_group_algebra_simple_is_shift_invariant(c2):
    cl = classify_isoshift(group_algebra(c2, 3))
    assert cl.t == 1
    assert inertia_group(cl.type_top(0)) == frozenset({0, 1})


def test_left_and_right_type_counts_agree(t2, m2, flagship):
    for A in (t2, m2, flagship):
        left, right = type_counts(A)
        assert left == right


def test_tops_are_graded_simple(t2, m3_c4):
    for A in (t2, m3_c4):
        cl = classify_isoshift(A)
        assert all(is_graded_simple(T) for T in cl.tops)


def test_graded_simple_rejects_reducible(t2):
    assert not is_graded_simple(regular_module(t2, "left"))


def test_simple_tops_have_division_endomorphism_rings(t2):
    for P in principal_indecomposables(t2):
        E = endomorphism_algebra(top(P.module))
        assert is_division_algebra(E)


def test_column_modules_are_shifts(m2):
    first = sigma_column_module(m2, 0, 2)
    second = sigma_column_module(m2, 1, 2)
    assert is_graded_iso(second, shift(first, 1))
    assert projectives_isomorphic(second, shift(first, 1))
    assert not projectives_isomorphic(second, first)


def test_simple_iso_shift_is_inertia_coset(m2):
    cl = classify_isoshift(m2)
    S = cl.type_top(0)
    X = simple_iso_shift(S, S)
    assert X == inertia_group(S)


def test_simple_iso_shift_requires_simples(t2):
    L = regular_module(t2, "left")
    with pytest.raises(InvalidInputError):
        simple_iso_shift(L, L)


def test_decompose_regular_module(m2, t2):
    cl = classify_isoshift(m2)
    parts = decompose_projective(regular_module(m2, "left"), cl)
    assert [i for i, _ in parts] == [0, 0]

    cl = classify_isoshift(t2)
    parts = decompose_projective(regular_module(t2, "left"), cl)
    assert sorted(i for i, _ in parts) == [0, 1]


def test_decompose_shifted_sum(flagship):
    cl = classify_isoshift(flagship)
    L = regular_module(flagship, "left")
    parts = decompose_projective(direct_sum(L, shift(L, 1)), cl)
    assert parts == [(0, 0), (0, 1)]


def test_embedding_criteria_upper_triangular(t2):
    cl = classify_isoshift(t2)
    records = [simple_embedding_criteria(cl.type_top(i)) for i in range(cl.t)]
    assert all(r.consistent for r in records)
    assert sorted(r.embeds for r in records) == [False, True]


def test_embedding_criteria_on_self_injective(flagship):
    cl = classify_isoshift(flagship)
    record = simple_embedding_criteria(cl.type_top(0))
    assert record.consistent and record.embeds


# Right modules rebuilt from the structure constants


def _linking_degrees(A, e, f):
    """{g : e·R_g·f·R_{g⁻¹}·e ⊄ J^gr}, read off the structure constants."""
    G, J = A.group, _jgr_rows(A)
    out = set()
    for g in G.elements:
        for i in A.component(g):
            left = A.mul(A.mul(e, A.basis_vector(i)), f)
            if not left.any():
                continue
            for j in A.component(G.inv(g)):
                x = A.mul(A.mul(left, A.basis_vector(j)), e)
                if x.any() and not contains(J, x, A.p):
                    out.add(g)
                    break
            if g in out:
                break
    return frozenset(out)


def test_right_modules_match_the_structure_tensor(builtin_entries):
    cases = [A for _, A in builtin_entries if A.dim <= 16]
    assert len(cases) >= 15
    for A in cases:
        G, p = A.group, A.p
        right = regular_module(A, "right")
        assert right.degrees == tuple(G.inv(g) for g in A.degrees)
        for r in range(A.dim):
            assert np.array_equal(right.action[r], A.right_matrix(A.basis_vector(r))), (A, r)

        cl = classify_isoshift(A, "right")
        assert sum(P.module.dim for P in cl.indecomposables) == A.dim
        for P, T in zip(cl.indecomposables, cl.tops):
            eR = GradedSubspace.span(right, A.left_matrix(P.idempotent))
            assert P.module.dim == eR.dim
            for r in range(A.dim):
                lhs = matmul_mod(eR.basis, A.right_matrix(A.basis_vector(r)), p)
                assert np.array_equal(lhs, matmul_mod(P.module.action[r], eR.basis, p)), (A, r)
            eJ = row_space(matmul_mod(_jgr_rows(A), A.left_matrix(P.idempotent), p), p, A.dim)
            assert T.dim == eR.dim - eJ.shape[0]

        ids = [P.idempotent for P in cl.indecomposables]
        for k, e in enumerate(ids):
            for l, f in enumerate(ids):
                linked = _linking_degrees(A, e, f)
                assert bool(linked) == (cl.type_of[k][0] == cl.type_of[l][0]), (A, k, l)
