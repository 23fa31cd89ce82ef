"""
Graded algebras, graded modules, graded subspaces and degree-σ morphisms
over a prime field GF(p), graded by a FiniteGroup.

Conventions
-----------
* Row vectors: ``b_r · v = v @ action[r]`` and ``structure[i, j] = b_i b_j``.
* Left shift: ``M(σ)_g = M_{gσ}``, so a vector of degree d gets degree d·σ⁻¹
  and ``shift(shift(M, σ), τ) == shift(M, τσ)``.
* A right R-module is stored as a left module over ``R.opposite()`` whose
  degrees are the inverses of the true degrees. ``shift`` and ``hom_space``
  take group elements in the true (right-module) sense and convert.
* A degree-τ morphism in the stored convention maps M_g into N_{gτ}.
"""

from __future__ import annotations

import hashlib
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from grfrob.core.groups import FiniteGroup
from grfrob.core.linalg import (
    as_rows,
    contains,
    intersect,
    left_kernel,
    matmul_mod,
    rank,
    reduce_rows,
    rref,
    solve_rows,
)
from grfrob.utils.errors import CapExceededError, InvalidInputError

logger = logging.getLogger(__name__)

MAX_FIELD_PRIME = 2**31 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# Prime fields


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_FIELD_PRIME) or not is_prime(self.p):
            raise InvalidInputError(f"p={self.p} is not a prime in [2, 2^31-1]")

    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(int(value), self.p)

    def elements(self) -> List["FieldElem"]:
        return [FieldElem(v, self.p) for v in range(self.p)]


@dataclass(frozen=True)
class FieldElem:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise InvalidInputError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return FieldElem(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElem(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElem(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return FieldElem(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElem(self._coerce(other), self.p).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElem(pow(self.value, n, self.p), self.p)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0


# Validation reports


@dataclass
class ValidationReport:
    valid: bool
    violations: List[str] = field(default_factory=list)
    first_violation: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.valid


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class _Memo:
    """Per-instance cache of derived data; safe because instances are immutable."""

    def memo(self, key, build: Callable[[], Any]):
        cache = self.__dict__.setdefault("_memo", {})
        if key not in cache:
            cache[key] = build()
        return cache[key]


# Algebras


@dataclass(frozen=True, eq=False)
class GradedAlgebra(_Memo):
    p: int
    group: FiniteGroup
    degrees: Tuple[int, ...]
    structure: np.ndarray
    unit: np.ndarray
    names: Tuple[str, ...] = ()
    label: str = ""
    opposite_origin: Optional["GradedAlgebra"] = field(default=None, repr=False)

    def __post_init__(self):
        PrimeField(self.p)
        degrees = tuple(int(g) for g in self.degrees)
        d = len(degrees)
        if any(not 0 <= g < self.group.order for g in degrees):
            raise InvalidInputError("basis degree outside the grading group")
        structure = np.array(self.structure, dtype=np.int64)
        if structure.shape != (d, d, d):
            raise InvalidInputError(f"structure tensor must have shape {(d, d, d)}, got {structure.shape}")
        unit = np.array(self.unit, dtype=np.int64).reshape(-1)
        if unit.shape != (d,):
            raise InvalidInputError(f"unit must have {d} coordinates")
        names = tuple(self.names) if self.names else tuple(f"b{i}" for i in range(d))
        if len(names) != d:
            raise InvalidInputError("one basis name per basis vector is required")
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "structure", _frozen(structure % self.p))
        object.__setattr__(self, "unit", _frozen(unit % self.p))
        object.__setattr__(self, "names", names)

    def __repr__(self):
        return f"GradedAlgebra({self.label or '?'}, p={self.p}, dim={self.dim}, G={self.group.name or self.group.order})"

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def prime_field(self) -> PrimeField:
        return PrimeField(self.p)

    def fingerprint(self) -> Tuple:
        return (self.p, self.group.labels, self.group.table.tobytes(), self.degrees, self.structure.tobytes())

    def component(self, g: int) -> Tuple[int, ...]:
        comps = self.memo("components", lambda: _components(self.degrees, self.group.order))
        return comps[g]

    def support(self) -> FrozenSet[int]:
        return frozenset(self.degrees)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of y ↦ x·y acting on rows."""
        d = self.dim
        flat = self.memo("left_flat", lambda: self.structure.reshape(d, d * d))
        return matmul_mod(np.asarray(x, dtype=np.int64), flat, self.p).reshape(d, d)

    def right_matrix(self, y) -> np.ndarray:
        """Matrix of x ↦ x·y acting on rows."""
        d = self.dim
        flat = self.memo("right_flat", lambda: np.ascontiguousarray(self.structure.transpose(1, 0, 2)).reshape(d, d * d))
        return matmul_mod(np.asarray(y, dtype=np.int64), flat, self.p).reshape(d, d)

    def mul(self, x, y) -> np.ndarray:
        return matmul_mod(np.asarray(y, dtype=np.int64), self.left_matrix(x), self.p)

    def power(self, x, n: int) -> np.ndarray:
        out = self.unit.copy()
        base = np.asarray(x, dtype=np.int64) % self.p
        while n:
            if n & 1:
                out = self.mul(out, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return out

    def homogeneous_degree(self, v) -> Optional[int]:
        return _vector_degree(self.degrees, v)

    def opposite(self) -> "GradedAlgebra":
        """Reversed product with inverted degrees; the opposite of the opposite is self."""
        if self.opposite_origin is not None:
            return self.opposite_origin
        G = self.group
        return self.memo(
            "opposite",
            lambda: GradedAlgebra(
                self.p,
                G,
                tuple(G.inv(g) for g in self.degrees),
                self.structure.transpose(1, 0, 2),
                self.unit,
                self.names,
                f"{self.label}^op" if self.label else "",
                opposite_origin=self,
            ),
        )

    def identity_component(self) -> Tuple["GradedAlgebra", Tuple[int, ...]]:
        """R_ε as a trivially graded algebra plus the basis indices it occupies."""

        def build():
            idx = self.component(self.group.identity)
            sub = self.structure[np.ix_(idx, idx, idx)]
            Re = GradedAlgebra(
                self.p,
                FiniteGroup.trivial(),
                (0,) * len(idx),
                sub,
                self.unit[list(idx)],
                tuple(self.names[i] for i in idx),
                f"{self.label}_e" if self.label else "",
            )
            return Re, idx

        return self.memo("identity_component", build)

    def with_trivial_grading(self) -> "GradedAlgebra":
        return self.memo(
            "trivial_grading",
            lambda: GradedAlgebra(
                self.p,
                FiniteGroup.trivial(),
                (0,) * self.dim,
                self.structure,
                self.unit,
                self.names,
                f"{self.label}/ungraded" if self.label else "",
            ),
        )


def _components(degrees: Sequence[int], order: int) -> Dict[int, Tuple[int, ...]]:
    comps: Dict[int, List[int]] = {g: [] for g in range(order)}
    for i, g in enumerate(degrees):
        comps[g].append(i)
    return {g: tuple(v) for g, v in comps.items()}


def _vector_degree(degrees: Sequence[int], v) -> Optional[int]:
    """Degree of a nonzero homogeneous vector; None if zero or inhomogeneous."""
    nz = np.nonzero(np.asarray(v).reshape(-1))[0]
    if nz.size == 0:
        return None
    degs = {degrees[i] for i in nz}
    return degs.pop() if len(degs) == 1 else None


def _is_homogeneous(degrees: Sequence[int], v) -> bool:
    nz = np.nonzero(np.asarray(v).reshape(-1))[0]
    return len({degrees[i] for i in nz}) <= 1


def validate_algebra(A: GradedAlgebra) -> ValidationReport:
    """Check associativity, the two-sided unit and grading compatibility."""
    p, d, C = A.p, A.dim, A.structure
    G = A.group
    violations: List[str] = []
    first: Optional[Tuple[int, ...]] = None

    degs = np.array(A.degrees, dtype=np.int64)
    nz = np.argwhere(C != 0)
    if nz.size:
        wrong = G.table[degs[nz[:, 0]], degs[nz[:, 1]]] != degs[nz[:, 2]]
        if wrong.any():
            i, j, k = (int(x) for x in nz[np.argmax(wrong)])
            violations.append(f"grading: b{i}*b{j} has a component on b{k} of the wrong degree")
            first = (i, j, k)

    flat_left = C.reshape(d, d * d)
    flat_right = C.reshape(d * d, d)
    for i in range(d):
        # lhs[j, k, :] = (b_i b_j) b_k ; rhs[j, k, :] = b_i (b_j b_k)
        lhs = matmul_mod(C[i], flat_left, p).reshape(d, d, d)
        rhs = matmul_mod(flat_right, C[i], p).reshape(d, d, d)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            j, k, _ = (int(x) for x in bad[0])
            violations.append(f"associativity fails on (b{i}, b{j}, b{k})")
            first = first or (i, j, k)
            break

    eye = np.eye(d, dtype=np.int64)
    if not np.array_equal(A.left_matrix(A.unit), eye) or not np.array_equal(A.right_matrix(A.unit), eye):
        violations.append("unit is not a two-sided identity")
    elif any(A.degrees[i] != G.identity for i in np.nonzero(A.unit)[0]):
        violations.append("unit is not of identity degree")

    return ValidationReport(not violations, violations, first)


# Modules


@dataclass(frozen=True, eq=False)
class GradedModule(_Memo):
    algebra: GradedAlgebra
    degrees: Tuple[int, ...]
    action: np.ndarray
    side: str = "left"
    label: str = ""

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise InvalidInputError(f"side must be 'left' or 'right', got {self.side!r}")
        degrees = tuple(int(g) for g in self.degrees)
        m = len(degrees)
        action = np.array(self.action, dtype=np.int64).reshape(self.algebra.dim, m, m) % self.algebra.p
        if any(not 0 <= g < self.algebra.group.order for g in degrees):
            raise InvalidInputError("module degree outside the grading group")
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "action", _frozen(action))

    def __repr__(self):
        return f"GradedModule({self.label or '?'}, {self.side}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def group(self) -> FiniteGroup:
        return self.algebra.group

    def component(self, g: int) -> Tuple[int, ...]:
        comps = self.memo("components", lambda: _components(self.degrees, self.group.order))
        return comps[g]

    def component_dims(self) -> Dict[int, int]:
        return {g: len(self.component(g)) for g in self.group.elements}

    def act(self, x) -> np.ndarray:
        """Matrix of v ↦ x·v for an algebra element x."""
        m, d = self.dim, self.algebra.dim
        return matmul_mod(np.asarray(x, dtype=np.int64), self.action.reshape(d, m * m), self.p).reshape(m, m)

    def true_degree(self, g: int) -> int:
        return g if self.side == "left" else self.group.inv(g)

    def fingerprint(self) -> Tuple:
        """Content key: equal for modules with the same side, degrees and action."""
        return self.memo(
            "fingerprint",
            lambda: (self.side, self.degrees, hashlib.sha1(self.action.tobytes()).hexdigest()),
        )


def stored_degree(M: GradedModule, sigma: int) -> int:
    return sigma if M.side == "left" else M.group.inv(sigma)


def validate_module(M: GradedModule) -> ValidationReport:
    A = M.algebra
    p, d, m = A.p, A.dim, M.dim
    violations: List[str] = []
    first = None
    if not np.array_equal(M.act(A.unit), np.eye(m, dtype=np.int64)):
        violations.append("unit does not act as the identity")
    nz = np.argwhere(M.action != 0)
    if nz.size:
        adeg = np.array(A.degrees, dtype=np.int64)
        mdeg = np.array(M.degrees, dtype=np.int64)
        wrong = A.group.table[adeg[nz[:, 0]], mdeg[nz[:, 1]]] != mdeg[nz[:, 2]]
        if wrong.any():
            r, v, w = (int(x) for x in nz[np.argmax(wrong)])
            violations.append(f"grading: b{r} sends v{v} to a component of the wrong degree")
            first = (r, v, w)
    flat = M.action.reshape(d, m * m)
    for r in range(d):
        # b_r·(b_s·v) = v @ action[s] @ action[r] ; (b_r b_s)·v = v @ Σ_k C[r,s,k] action[k]
        lhs = matmul_mod(M.action, M.action[r], p)
        rhs = matmul_mod(A.structure[r], flat, p).reshape(d, m, m)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            s = int(bad[0][0])
            violations.append(f"associativity of the action fails for (b{r}, b{s})")
            first = first or (r, s)
            break
    return ValidationReport(not violations, violations, first)


def regular_module(R: GradedAlgebra, side: str = "left") -> GradedModule:
    """R as a graded left module, or as a right module stored over R^op."""
    if side == "left":
        return R.memo(("regular", "left"), lambda: GradedModule(R, R.degrees, R.structure, "left", f"{R.label}R"))
    if side == "right":
        op = R.opposite()
        return R.memo(("regular", "right"), lambda: GradedModule(op, op.degrees, op.structure, "right", f"R{R.label}"))
    raise InvalidInputError(f"side must be 'left' or 'right', got {side!r}")


def base_algebra(M: GradedModule) -> GradedAlgebra:
    """The algebra R for which M is a left or right R-module."""
    return M.algebra if M.side == "left" else M.algebra.opposite()


def shift(M: GradedModule, sigma: int) -> GradedModule:
    """M(σ) for left modules and (σ)M for right modules."""
    G = M.group
    s_inv = G.inv(stored_degree(M, sigma))
    degrees = tuple(G.mul(g, s_inv) for g in M.degrees)
    return GradedModule(M.algebra, degrees, M.action, M.side, f"{M.label}({G.label(sigma)})")


def direct_sum(*modules: GradedModule) -> GradedModule:
    if not modules:
        raise InvalidInputError("direct_sum needs at least one module")
    first = modules[0]
    for M in modules[1:]:
        _check_compatible(first, M)
    d = first.algebra.dim
    m = sum(M.dim for M in modules)
    action = np.zeros((d, m, m), dtype=np.int64)
    offset = 0
    for M in modules:
        action[:, offset : offset + M.dim, offset : offset + M.dim] = M.action
        offset += M.dim
    degrees = tuple(g for M in modules for g in M.degrees)
    return GradedModule(first.algebra, degrees, action, first.side, "+".join(M.label for M in modules))


def _same_algebra(A: GradedAlgebra, B: GradedAlgebra) -> bool:
    return A is B or A.fingerprint() == B.fingerprint()


def _check_compatible(M: GradedModule, N: GradedModule) -> None:
    if M.side != N.side:
        raise InvalidInputError(f"cannot compare a {M.side} module with a {N.side} module")
    if not _same_algebra(M.algebra, N.algebra):
        raise InvalidInputError("modules are over different algebras")


def component_module(R: GradedAlgebra, sigma: int) -> GradedModule:
    """R_σ as a left R_ε-module (trivially graded)."""
    Re, idx_e = R.identity_component()
    idx = R.component(sigma)
    action = R.structure[np.ix_(idx_e, idx, idx)]
    return GradedModule(Re, (0,) * len(idx), action, "left", f"R_{R.group.label(sigma)}")


def restrict_component(M: GradedModule, sigma: int) -> GradedModule:
    """M_σ (stored degree) as a module over the identity component."""
    Re, idx_e = M.algebra.identity_component()
    idx = M.component(sigma)
    action = M.action[np.ix_(idx_e, idx, idx)]
    return GradedModule(Re, (0,) * len(idx), action, "left", f"{M.label}_{M.group.label(sigma)}")


# Subspaces


@dataclass(frozen=True, eq=False)
class GradedSubspace:
    """Graded subspace of a module, held as one canonical RREF of homogeneous rows.

    Columns of different degrees are disjoint, so the RREF of a graded
    subspace is the union of the per-degree RREFs.
    """

    parent: GradedModule
    basis: np.ndarray
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, parent: GradedModule, vectors) -> "GradedSubspace":
        rows = as_rows(vectors, parent.dim) % parent.p
        if rows.shape[1] != parent.dim:
            raise InvalidInputError(f"vectors must have {parent.dim} coordinates")
        for v in rows:
            if not _is_homogeneous(parent.degrees, v):
                raise InvalidInputError("graded subspaces need homogeneous generators")
        basis, piv = rref(rows, parent.p, parent.dim)
        return cls(parent, _frozen(basis), tuple(piv))

    @classmethod
    def zero(cls, parent: GradedModule) -> "GradedSubspace":
        return cls.span(parent, np.zeros((0, parent.dim), dtype=np.int64))

    @classmethod
    def full(cls, parent: GradedModule) -> "GradedSubspace":
        return cls.span(parent, np.eye(parent.dim, dtype=np.int64))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def p(self) -> int:
        return self.parent.p

    def row_degrees(self) -> Tuple[int, ...]:
        return tuple(self.parent.degrees[c] for c in self.pivots)

    def component(self, g: int) -> np.ndarray:
        keep = [i for i, c in enumerate(self.pivots) if self.parent.degrees[c] == g]
        return self.basis[keep]

    def component_dims(self) -> Dict[int, int]:
        dims = {g: 0 for g in self.parent.group.elements}
        for g in self.row_degrees():
            dims[g] += 1
        return dims

    def __eq__(self, other):
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        return (
            (self.parent is other.parent or self.parent.degrees == other.parent.degrees)
            and self.basis.shape == other.basis.shape
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.parent.degrees, self.basis.tobytes()))

    def __repr__(self):
        return f"GradedSubspace(dim={self.dim} in {self.parent!r})"

    def contains(self, v) -> bool:
        return contains(self.basis, v, self.p)

    def contains_subspace(self, other: "GradedSubspace") -> bool:
        return other.dim == 0 or contains(self.basis, other.basis, self.p)

    def intersect(self, other: "GradedSubspace") -> "GradedSubspace":
        return GradedSubspace.span(self.parent, intersect(self.basis, other.basis, self.p, self.parent.dim))

    def __add__(self, other: "GradedSubspace") -> "GradedSubspace":
        return GradedSubspace.span(self.parent, np.concatenate([self.basis, other.basis]))

    def reparent(self, parent: GradedModule) -> "GradedSubspace":
        if parent.dim != self.parent.dim:
            raise InvalidInputError("cannot move a subspace between modules of different dimension")
        return GradedSubspace.span(parent, self.basis)

    def coordinates(self, vectors) -> np.ndarray:
        vectors = as_rows(vectors, self.parent.dim)
        coords = vectors[:, list(self.pivots)]
        if not np.array_equal(matmul_mod(coords, self.basis, self.p), vectors % self.p):
            raise InvalidInputError("vector outside the subspace")
        return coords

    def is_submodule(self) -> bool:
        if self.dim == 0:
            return True
        images = matmul_mod(self.basis, self.parent.action, self.p).reshape(-1, self.parent.dim)
        return contains(self.basis, images, self.p)

    def as_module(self) -> GradedModule:
        """The subspace as a module in its own RREF basis (assumes closure under the action)."""
        images = matmul_mod(self.basis, self.parent.action, self.p)
        action = images[:, :, list(self.pivots)]
        return GradedModule(self.parent.algebra, self.row_degrees(), action, self.parent.side, f"sub({self.parent.label})")


def submodule_generated(M: GradedModule, gens) -> GradedSubspace:
    """Smallest graded submodule containing the homogeneous generators."""
    if isinstance(gens, GradedSubspace):
        gens = gens.basis
    current = GradedSubspace.span(M, gens)
    while True:
        if current.dim == 0:
            return current
        images = matmul_mod(current.basis, M.action, M.p).reshape(-1, M.dim)
        nxt = GradedSubspace.span(M, np.concatenate([current.basis, images]))
        if nxt.dim == current.dim:
            return current
        current = nxt


def quotient_module(M: GradedModule, U: GradedSubspace) -> Tuple[GradedModule, np.ndarray]:
    """M/U on the non-pivot basis vectors, with the projection matrix M -> M/U."""
    comp = [c for c in range(M.dim) if c not in set(U.pivots)]
    p = M.p
    if comp:
        action = np.stack(
            [reduce_rows(M.action[r][comp, :], U.basis, U.pivots, p)[:, comp] for r in range(M.algebra.dim)]
        )
    else:
        action = np.zeros((M.algebra.dim, 0, 0), dtype=np.int64)
    projection = reduce_rows(np.eye(M.dim, dtype=np.int64), U.basis, U.pivots, p)[:, comp]
    Q = GradedModule(M.algebra, tuple(M.degrees[c] for c in comp), action, M.side, f"{M.label}/U")
    return Q, projection


# Morphisms


@dataclass(frozen=True, eq=False)
class GradedHom:
    source: GradedModule
    target: GradedModule
    degree: int
    matrix: np.ndarray

    @property
    def stored_degree(self) -> int:
        return stored_degree(self.source, self.degree)

    def verify(self) -> bool:
        """Degree compatibility and linearity over the algebra."""
        F = np.asarray(self.matrix, dtype=np.int64) % self.source.p
        if F.shape != (self.source.dim, self.target.dim):
            return False
        G = self.source.group
        tau = self.stored_degree
        nz = np.argwhere(F != 0)
        if nz.size:
            src = np.array(self.source.degrees, dtype=np.int64)[nz[:, 0]]
            tgt = np.array(self.target.degrees, dtype=np.int64)[nz[:, 1]]
            if np.any(G.table[src, tau] != tgt):
                return False
        p = self.source.p
        return bool(np.array_equal(matmul_mod(self.source.action, F, p), matmul_mod(F, self.target.action, p)))

    def rank(self) -> int:
        return rank(self.matrix, self.source.p) if self.matrix.size else 0

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def image(self) -> GradedSubspace:
        return GradedSubspace.span(self.target, self.matrix)

    def kernel(self) -> GradedSubspace:
        return GradedSubspace.span(self.source, left_kernel(self.matrix, self.source.p, self.source.dim))

    def compose(self, other: "GradedHom") -> "GradedHom":
        """self followed by other."""
        G = self.source.group
        return GradedHom(
            self.source,
            other.target,
            G.mul(self.degree, other.degree) if self.source.side == "left" else G.mul(other.degree, self.degree),
            matmul_mod(self.matrix, other.matrix, self.source.p),
        )


def _presentation(M: GradedModule):
    """Homogeneous generators x_i, the matrix W expressing the basis through
    the rows b_r·x_i, and the relation module K of those rows."""

    def build():
        p, d, m = M.p, M.algebra.dim, M.dim
        gens: List[int] = []
        span = GradedSubspace.zero(M)
        eye = np.eye(m, dtype=np.int64)
        for i in range(m):
            if span.dim == m:
                break
            if span.contains(eye[i]):
                continue
            gens.append(i)
            span = submodule_generated(M, np.concatenate([span.basis, eye[i : i + 1]]))
        k = len(gens)
        phi = M.action[:, gens, :].transpose(1, 0, 2).reshape(k * d, m)
        W = solve_rows(phi, eye, p) if m else np.zeros((0, k * d), dtype=np.int64)
        K = left_kernel(phi, p, k * d) if k else np.zeros((0, 0), dtype=np.int64)
        return tuple(gens), W, K

    return M.memo("presentation", build)


def hom_basis(M: GradedModule, N: GradedModule, tau: int) -> List[np.ndarray]:
    """Basis matrices of degree-τ morphisms M -> N, τ in the stored convention."""

    def build():
        p, d, n = M.p, M.algebra.dim, N.dim
        G = M.group
        gens, W, K = _presentation(M)
        unknowns = [(i, t) for i, g in enumerate(gens) for t in N.component(G.mul(M.degrees[g], tau))]
        if not unknowns or M.dim == 0:
            return []
        if K.shape[0] == 0:
            Z = np.eye(len(unknowns), dtype=np.int64)
        else:
            E = np.stack(
                [matmul_mod(K[:, i * d : (i + 1) * d], N.action[:, t, :], p).reshape(-1) for i, t in unknowns]
            )
            Z = left_kernel(E, p, len(unknowns))
        out = []
        for z in Z:
            Y = np.zeros((len(gens) * d, n), dtype=np.int64)
            for coeff, (i, t) in zip(z, unknowns):
                if coeff:
                    Y[i * d : (i + 1) * d] = (Y[i * d : (i + 1) * d] + int(coeff) * N.action[:, t, :]) % p
            out.append(_frozen(matmul_mod(W, Y, p)))
        return out

    _check_compatible(M, N)
    return M.memo(("hom", N.fingerprint(), tau), build)


def hom_space(M: GradedModule, N: GradedModule, sigma: int) -> List[GradedHom]:
    """Basis of HOM(M, N)_σ (σ in the true sense of the modules' side)."""
    return [GradedHom(M, N, sigma, F) for F in hom_basis(M, N, stored_degree(M, sigma))]


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Optional[np.ndarray] = None
    method: str = ""

    def __bool__(self):
        return self.isomorphic


def _identity_in_span(mats: List[np.ndarray], size: int, p: int) -> bool:
    if not mats:
        return size == 0
    rows = np.stack([F.reshape(-1) for F in mats])
    return contains(rows, np.eye(size, dtype=np.int64).reshape(-1), p)


def is_graded_iso(
    M: GradedModule,
    N: GradedModule,
    *,
    seed: int = 0,
    random_factor: int = 64,
    exhaustive_cap: int = 2**20,
) -> IsoResult:
    """Decide M ≅ N in the graded category and return an invertible degree-ε witness."""
    _check_compatible(M, N)
    if M.component_dims() != N.component_dims():
        return IsoResult(False, method="dimensions")
    if M.dim == 0:
        return IsoResult(True, np.zeros((0, 0), dtype=np.int64), "zero")
    p, m = M.p, M.dim
    e = M.group.identity
    H = hom_basis(M, N, e)
    if not H:
        return IsoResult(False, method="hom")
    if not len(H) == len(hom_basis(M, M, e)) == len(hom_basis(N, N, e)):
        return IsoResult(False, method="endomorphism-dimension")
    back = hom_basis(N, M, e)
    if not back:
        return IsoResult(False, method="hom")
    if not _identity_in_span([matmul_mod(f, g, p) for f in H for g in back], m, p) or not _identity_in_span(
        [matmul_mod(g, f, p) for f in H for g in back], m, p
    ):
        return IsoResult(False, method="composition")

    for F in H:
        if rank(F, p) == m:
            return IsoResult(True, F, "basis")
    stack = np.stack(H)
    rng = np.random.default_rng(seed)
    for _ in range(random_factor * len(H)):
        coeffs = rng.integers(0, p, size=len(H))
        F = matmul_mod(coeffs, stack.reshape(len(H), -1), p).reshape(m, m)
        if rank(F, p) == m:
            return IsoResult(True, F, "random")
    if p ** len(H) <= exhaustive_cap:
        logger.debug(f"Exhaustive isomorphism search over {p ** len(H)} combinations")
        for coeffs in itertools.product(range(p), repeat=len(H)):
            F = matmul_mod(np.array(coeffs), stack.reshape(len(H), -1), p).reshape(m, m)
            if rank(F, p) == m:
                return IsoResult(True, F, "exhaustive")
        return IsoResult(False, method="exhaustive")
    raise CapExceededError(f"isomorphism undetermined: hom space of dimension {len(H)} over GF({p})")


# Annihilators


def _ambient(X: GradedSubspace) -> GradedAlgebra:
    R = base_algebra(X.parent)
    if X.parent.dim != R.dim:
        raise InvalidInputError("annihilators are taken of subspaces of a regular module")
    return R


def graded_kernel(M: GradedModule, big: np.ndarray) -> GradedSubspace:
    """{v ∈ M : v @ big = 0}, solved degree by degree so the basis is homogeneous."""
    m = M.dim
    if m == 0:
        return GradedSubspace.zero(M)
    big = np.asarray(big, dtype=np.int64).reshape(m, -1)
    rows = []
    for g in M.group.elements:
        idx = list(M.component(g))
        if not idx:
            continue
        ker = left_kernel(big[idx, :], M.p, len(idx))
        if ker.shape[0]:
            full = np.zeros((ker.shape[0], m), dtype=np.int64)
            full[:, idx] = ker
            rows.append(full)
    return GradedSubspace.span(M, np.concatenate(rows) if rows else np.zeros((0, m), dtype=np.int64))


def _graded_left_kernel(R: GradedAlgebra, big: np.ndarray, side: str) -> GradedSubspace:
    return graded_kernel(regular_module(R, side), big)


def right_annihilator(X: GradedSubspace) -> GradedSubspace:
    """{r ∈ R : X·r = 0} as a graded right ideal."""
    R = _ambient(X)
    if X.dim == 0:
        return GradedSubspace.full(regular_module(R, "right"))
    big = np.concatenate([R.left_matrix(x) for x in X.basis], axis=1)
    return _graded_left_kernel(R, big, "right")


def left_annihilator(X: GradedSubspace) -> GradedSubspace:
    """{r ∈ R : r·X = 0} as a graded left ideal."""
    R = _ambient(X)
    if X.dim == 0:
        return GradedSubspace.full(regular_module(R, "left"))
    big = np.concatenate([R.right_matrix(x) for x in X.basis], axis=1)
    return _graded_left_kernel(R, big, "left")


# Idempotents and cosets


def principal_module(R: GradedAlgebra, e, side: str = "left") -> GradedModule:
    """R·e (left) or e·R (right) for an idempotent e of degree ε."""
    rows = R.right_matrix(e) if side == "left" else R.left_matrix(e)
    U = GradedSubspace.span(regular_module(R, side), rows)
    return U.as_module()


def idempotent_shift_duality(R: GradedAlgebra, e, f, sigma: int, seed: int = 0) -> Tuple[bool, bool]:
    """(Re ≅ Rf(σ), eR ≅ (σ⁻¹)(fR)); the two answers always agree."""
    G = R.group
    left = is_graded_iso(principal_module(R, e, "left"), shift(principal_module(R, f, "left"), sigma), seed=seed)
    right = is_graded_iso(
        principal_module(R, e, "right"), shift(principal_module(R, f, "right"), G.inv(sigma)), seed=seed
    )
    return bool(left), bool(right)


def coset_multisets_equal(G: FiniteGroup, first: Sequence[int], second: Sequence[int], H: Iterable[int]) -> bool:
    """Whether {g·H : g in first} and {g·H : g in second} agree as multisets."""
    H = frozenset(H)
    return len(first) == len(second) and G.left_coset_multiset(first, H) == G.left_coset_multiset(second, H)
