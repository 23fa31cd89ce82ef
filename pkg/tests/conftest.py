import numpy as np
import pytest

from grfrob.core.constructions import (
    GradedDivisionSpec,
    MatrixAlgebraSpec,
    builtin_corpus,
    graded_matrix_algebra,
    product_algebra,
    truncated_polynomial,
    upper_triangular,
)
from grfrob.core.grcore import GradedAlgebra
from grfrob.core.groups import FiniteGroup


@pytest.fixture
def c2():
    return FiniteGroup.cyclic(2)


@pytest.fixture
def c4():
    return FiniteGroup.cyclic(4)


@pytest.fixture
def flagship(c2):
    """GF(5)[x]/(x^2) with x of degree c over C2."""
    return truncated_polynomial(5, 2, c2, 1)


@pytest.fixture
def dual_numbers_c4(c4):
    return truncated_polynomial(3, 2, c4, 1)


@pytest.fixture
def m2(c2):
    """M2(GF(3))(e, c) over C2."""
    return graded_matrix_algebra(MatrixAlgebraSpec(GradedDivisionSpec(c2, (0,), 3), (0, 1)))


@pytest.fixture
def m3_c4(c4):
    """M3(GF(5)[<c2>])(e, c, c2) over C4."""
    return graded_matrix_algebra(MatrixAlgebraSpec(GradedDivisionSpec(c4, (0, 2), 5), (0, 1, 2)))


@pytest.fixture
def t2():
    return upper_triangular(3, 2)


@pytest.fixture
def fields_f3():
    """GF(3) x GF(3), trivially graded."""
    return product_algebra(truncated_polynomial(3, 1), truncated_polynomial(3, 1))


def non_associative_algebra() -> GradedAlgebra:
    """Basis 1, a, b with a·a = b, b·a = a and a·b = 0, so (a·a)·a != a·(a·a)."""
    C = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        C[0, i, i] = 1
        C[i, 0, i] = 1
    C[1, 1, 2] = 1
    C[2, 1, 1] = 1
    return GradedAlgebra(3, FiniteGroup.trivial(), (0, 0, 0), C, np.array([1, 0, 0]), ("1", "a", "b"), "broken")


@pytest.fixture
def broken():
    return non_associative_algebra()


@pytest.fixture(scope="session")
def builtin_entries():
    """(name, algebra) pairs of the pinned corpus, built once per session."""
    return [(entry.name, entry.algebra) for entry in builtin_corpus()]
