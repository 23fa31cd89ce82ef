"""
Primitive idempotents, principal graded indecomposables, graded simples
and the isoshift classification.

Idempotents of R_ε are found by splitting 1 in R_ε/J(R_ε) through corner
algebras and lifting back with a ← 3a² − 2a³. A corner ēSē is certified
primitive when it is commutative and the fixed space of x ↦ x^p on it is
one-dimensional.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from grfrob.core.groups import FiniteGroup
from grfrob.core.grcore import (
    GradedAlgebra,
    GradedModule,
    GradedSubspace,
    graded_kernel,
    hom_basis,
    is_graded_iso,
    left_annihilator,
    principal_module,
    quotient_module,
    regular_module,
    right_annihilator,
    shift,
    stored_degree,
    submodule_generated,
)
from grfrob.core.linalg import contains, left_kernel, matmul_mod, reduce_rows, row_space, rref, solve_rows
from grfrob.core.radicals import quotient_algebra, radical_of_module, radical_ungraded
from grfrob.utils.errors import CapExceededError, InvalidInputError

logger = logging.getLogger(__name__)

ROOT_SEARCH_LIMIT = 100_003
SPLIT_ATTEMPTS = 64


# Algebras of matrices and small subalgebras


def algebra_from_matrices(
    mats: Sequence[np.ndarray],
    p: int,
    group: Optional[FiniteGroup] = None,
    degrees: Optional[Sequence[int]] = None,
    label: str = "",
) -> GradedAlgebra:
    """Algebra spanned by square matrices with product F·G = F @ G (apply F first)."""
    if not mats:
        raise InvalidInputError("an algebra needs at least one matrix")
    group = group or FiniteGroup.trivial()
    k = len(mats)
    size = mats[0].shape[0]
    flat = np.stack([np.asarray(F).reshape(-1) for F in mats])
    prods = np.stack([matmul_mod(mats[a], mats[b], p).reshape(-1) for a in range(k) for b in range(k)])
    coords = solve_rows(flat, prods, p)
    unit = solve_rows(flat, np.eye(size, dtype=np.int64).reshape(1, -1), p)
    if coords is None or unit is None:
        raise InvalidInputError("matrices do not span a unital algebra")
    return GradedAlgebra(
        p,
        group,
        tuple(degrees) if degrees is not None else (group.identity,) * k,
        coords.reshape(k, k, k),
        unit[0],
        label=label,
    )


def _subalgebra(A: GradedAlgebra, rows: np.ndarray, unit) -> GradedAlgebra:
    """Structure constants of the subalgebra with RREF basis ``rows`` and the given unit."""
    rows, piv = rref(rows, A.p, A.dim)
    k = rows.shape[0]
    structure = np.stack([matmul_mod(rows, A.left_matrix(x), A.p)[:, piv] for x in rows]).reshape(k, k, k)
    return GradedAlgebra(A.p, FiniteGroup.trivial(), (0,) * k, structure, np.asarray(unit)[piv])


def _is_commutative(A: GradedAlgebra) -> bool:
    return bool(np.array_equal(A.structure, A.structure.transpose(1, 0, 2)))


def _frobenius_fixed(A: GradedAlgebra) -> np.ndarray:
    """Fixed space of x ↦ x^p on a commutative algebra, in A's coordinates."""
    frob = np.stack([A.power(A.basis_vector(i), A.p) for i in range(A.dim)])
    return left_kernel((frob - np.eye(A.dim, dtype=np.int64)) % A.p, A.p, A.dim)


def is_division_algebra(A: GradedAlgebra) -> bool:
    """Commutative, semisimple and with a one-dimensional Frobenius fixed space."""
    if A.dim == 0 or not _is_commutative(A):
        return False
    if radical_ungraded(A.with_trivial_grading()).shape[0]:
        return False
    return _frobenius_fixed(A).shape[0] == 1


def endomorphism_basis(M: GradedModule) -> Tuple[List[np.ndarray], List[int]]:
    """Basis of END(M) over all degrees, with the stored degree of each map."""
    mats, degs = [], []
    for tau in M.group.elements:
        for F in hom_basis(M, M, tau):
            mats.append(F)
            degs.append(tau)
    return mats, degs


def endomorphism_algebra(M: GradedModule, all_degrees: bool = False) -> GradedAlgebra:
    """End(M)_ε, or the graded END(M) when ``all_degrees`` is set."""
    G = M.group
    if not all_degrees:
        mats = hom_basis(M, M, G.identity)
        return algebra_from_matrices(mats, M.p, label=f"End({M.label})")
    mats, degs = endomorphism_basis(M)
    return algebra_from_matrices(mats, M.p, G, degs, label=f"END({M.label})")


# Primitive idempotents


def _corner(S: GradedAlgebra, e: np.ndarray) -> np.ndarray:
    return row_space(matmul_mod(S.left_matrix(e), S.right_matrix(e), S.p), S.p, S.dim)


def _krylov(S: GradedAlgebra, e: np.ndarray, x: np.ndarray) -> np.ndarray:
    rows = [e % S.p]
    cur = e
    while True:
        cur = S.mul(cur, x)
        if contains(np.stack(rows), cur, S.p):
            return row_space(np.stack(rows), S.p, S.dim)
        rows.append(cur)


def _poly_roots(coeffs: Sequence[int], p: int) -> List[int]:
    """Roots in GF(p) of the polynomial with coefficients from the constant term up."""
    if p > ROOT_SEARCH_LIMIT:
        raise CapExceededError(f"root search over GF({p}) is not supported")
    roots = []
    for a in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * a + c) % p
        if acc == 0:
            roots.append(a)
    return roots


def _split_by(S: GradedAlgebra, e: np.ndarray, y: np.ndarray) -> List[np.ndarray]:
    """Split e by an element y of eSe with y^p = y and y ∉ GF(p)·e."""
    p = S.p
    powers = [e % p]
    cur = e
    while True:
        cur = S.mul(cur, y)
        c = solve_rows(np.stack(powers), cur, p)
        if c is not None:
            break
        powers.append(cur)
    # y^k = Σ c_i y^i  ->  t^k - Σ c_i t^i
    poly = [(-int(v)) % p for v in c[0]] + [1]
    roots = _poly_roots(poly, p)
    if len(roots) < 2:
        raise RuntimeError("splitting element has fewer than two eigenvalues")
    out = []
    for a in roots:
        E = e.copy()
        for b in roots:
            if b == a:
                continue
            factor = (y - b * e) % p
            E = (S.mul(E, factor) * pow(a - b, p - 2, p)) % p
        out.append(E)
    return out


def _split_idempotent(S: GradedAlgebra, e: np.ndarray, rng: np.random.Generator) -> Optional[List[np.ndarray]]:
    corner = _corner(S, e)
    if corner.shape[0] <= 1:
        return None
    sub = _subalgebra(S, corner, e)
    if _is_commutative(sub):
        fixed = _frobenius_fixed(sub)
        if fixed.shape[0] == 1:
            return None
        unit = sub.unit
        for row in fixed:
            if row_space(np.stack([row, unit]), S.p).shape[0] == 2:
                return _split_by(S, e, matmul_mod(row, corner, S.p))
        return None
    for _ in range(SPLIT_ATTEMPTS):
        x = matmul_mod(rng.integers(0, S.p, size=corner.shape[0]), corner, S.p)
        span = _krylov(S, e, x)
        local = _subalgebra(S, span, e)
        fixed = _frobenius_fixed(local)
        if fixed.shape[0] > 1:
            for row in fixed:
                if row_space(np.stack([row, local.unit]), S.p).shape[0] == 2:
                    return _split_by(S, e, matmul_mod(row, span, S.p))
    raise RuntimeError(f"failed to split a non-commutative corner after {SPLIT_ATTEMPTS} attempts")


def _lift_idempotent(A: GradedAlgebra, a: np.ndarray) -> np.ndarray:
    p = A.p
    for _ in range(64):
        a2 = A.mul(a, a)
        if np.array_equal(a2, a):
            return a
        a = (3 * a2 - 2 * A.mul(a2, a)) % p
    raise RuntimeError("idempotent lifting did not converge")


def primitive_idempotents(A: GradedAlgebra, seed: int = 0) -> List[np.ndarray]:
    """Complete set of orthogonal primitive idempotents of A, grading ignored."""
    U = A.with_trivial_grading()
    p, d = A.p, A.dim
    rng = np.random.default_rng(seed)
    J = radical_ungraded(U)
    S, comp = quotient_algebra(U, J)
    pending = [S.unit.copy()]
    pieces: List[np.ndarray] = []
    while pending:
        e = pending.pop()
        parts = _split_idempotent(S, e, rng)
        if parts is None:
            pieces.append(e)
        else:
            pending.extend(parts)
    pieces.sort(key=lambda v: tuple(int(x) for x in v))
    logger.debug(f"split 1 into {len(pieces)} primitive idempotents modulo a radical of dimension {J.shape[0]}")

    out: List[np.ndarray] = []
    f = A.unit.copy()
    for eb in pieces[:-1]:
        a = np.zeros(d, dtype=np.int64)
        a[comp] = eb
        a = U.mul(U.mul(f, a), f)
        e = _lift_idempotent(U, a)
        out.append(e)
        f = (f - e) % p
    out.append(f)
    return out


# Principal indecomposables and tops


@dataclass(frozen=True, eq=False)
class PrincipalIndecomposable:
    idempotent: np.ndarray
    module: GradedModule


def principal_indecomposables(R: GradedAlgebra, side: str = "left", seed: int = 0) -> List[PrincipalIndecomposable]:
    """R·e_i (or e_i·R) for a complete set of primitive idempotents of R_ε."""

    def build():
        Re, idx = R.identity_component()
        out = []
        for small in primitive_idempotents(Re, seed):
            e = np.zeros(R.dim, dtype=np.int64)
            e[list(idx)] = small
            out.append(PrincipalIndecomposable(e, principal_module(R, e, side)))
        return out

    return R.memo(("principal", side, seed), build)


def top(P: GradedModule) -> GradedModule:
    """P / J^gr(R)·P."""
    Q, _ = quotient_module(P, radical_of_module(P))
    return Q


def is_graded_simple(S: GradedModule) -> bool:
    if S.dim == 0:
        return False
    eye = np.eye(S.dim, dtype=np.int64)
    for i in range(S.dim):
        if submodule_generated(S, eye[i]).dim != S.dim:
            return False
    if radical_of_module(S).dim:
        return False
    return is_division_algebra(endomorphism_algebra(S))


def simple_iso_shift(S: GradedModule, T: GradedModule, check: bool = True) -> FrozenSet[int]:
    """{σ : S ≅ T(σ)}, empty or a left coset of Σ(T)."""
    if check and not (is_graded_simple(S) and is_graded_simple(T)):
        raise InvalidInputError("simple_iso_shift needs graded simple modules")
    if S.dim != T.dim:
        return frozenset()
    target_dims = S.component_dims()
    out = set()
    for sigma in S.group.elements:
        if shift(T, sigma).component_dims() != target_dims:
            continue
        if hom_basis(S, T, stored_degree(T, sigma)):
            out.add(sigma)
    return frozenset(out)


def inertia_group(M: GradedModule, seed: int = 0) -> FrozenSet[int]:
    """Σ(M) = {g : M(g) ≅ M}."""
    G = M.group
    out = frozenset(g for g in G.elements if is_graded_iso(shift(M, g), M, seed=seed))
    if not G.is_subgroup(out):
        logger.error(f"inertia set {G.format_set(out)} of {M!r} is not a subgroup")
    return out


@dataclass
class IsoshiftClassification:
    side: str
    group: FiniteGroup
    indecomposables: List[PrincipalIndecomposable]
    tops: List[GradedModule]
    type_of: List[Tuple[int, int]]
    shift_sets: List[FrozenSet[int]]
    reps: List[int]
    inertia: List[FrozenSet[int]] = field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.reps)

    def members(self, i: int) -> List[int]:
        return [k for k, (ti, _) in enumerate(self.type_of) if ti == i]

    @property
    def multiplicities(self) -> List[int]:
        return [len(self.members(i)) for i in range(self.t)]

    @property
    def shifts(self) -> List[List[int]]:
        """g_ij: the shift of each member, P_k ≅ P_i(g_ij)."""
        return [[self.type_of[k][1] for k in self.members(i)] for i in range(self.t)]

    def type_top(self, i: int) -> GradedModule:
        return self.tops[self.reps[i]]

    def type_module(self, i: int) -> GradedModule:
        return self.indecomposables[self.reps[i]].module


def classify_isoshift(R: GradedAlgebra, side: str = "left", seed: int = 0) -> IsoshiftClassification:
    """Group the principal indecomposables by isoshift type of their tops."""

    def build():
        G = R.group
        pis = principal_indecomposables(R, side, seed)
        tops = [top(P.module) for P in pis]
        reps: List[int] = []
        type_of: List[Tuple[int, int]] = []
        shift_sets: List[Optional[FrozenSet[int]]] = []
        for k, T in enumerate(tops):
            for i, rep in enumerate(reps):
                X = simple_iso_shift(T, tops[rep], check=False)
                if X:
                    type_of.append((i, min(X)))
                    shift_sets.append(X)
                    break
            else:
                reps.append(k)
                type_of.append((len(reps) - 1, G.identity))
                shift_sets.append(None)
        inertia = [inertia_group(tops[rep], seed) for rep in reps]
        shift_sets = [X if X is not None else inertia[type_of[k][0]] for k, X in enumerate(shift_sets)]
        logger.info(f"{side} isoshift classification: {len(pis)} indecomposables, {len(reps)} types")
        return IsoshiftClassification(side, G, pis, tops, type_of, shift_sets, reps, inertia)

    return R.memo(("classification", side, seed), build)


def type_counts(R: GradedAlgebra, seed: int = 0) -> Tuple[int, int]:
    """Number of isoshift types of graded simples on the left and on the right."""
    return classify_isoshift(R, "left", seed).t, classify_isoshift(R, "right", seed).t


def graded_simple_census(cl: IsoshiftClassification) -> Dict[str, object]:
    """Isomorphism (not isoshift) counts of graded simples.

    ``total`` counts all graded simples up to isomorphism, ``embedded``
    the multiplicities of those occurring as tops of summands of R.
    """
    G = cl.group
    total = sum(G.order // len(cl.inertia[i]) for i in range(cl.t))
    embedded: List[int] = []
    for i in range(cl.t):
        H = cl.inertia[i]
        counts = Counter(G.left_coset_rep(g, H) for g in cl.shifts[i])
        embedded.extend(counts.values())
    embedded.sort(reverse=True)
    return {"total": total, "embedded": embedded, "gr_uniform": len(embedded) == 1}


def projectives_isomorphic(P: GradedModule, Q: GradedModule, seed: int = 0) -> bool:
    """Graded projectives are isomorphic iff their tops are."""
    return bool(is_graded_iso(top(P), top(Q), seed=seed))


def _simple_summands(T: GradedModule, seed: int) -> List[GradedModule]:
    """Graded simple summands of a graded semisimple module."""
    mats = hom_basis(T, T, T.group.identity)
    E = algebra_from_matrices(mats, T.p)
    stack = np.stack(mats).reshape(len(mats), -1)
    out = []
    for eta in primitive_idempotents(E, seed):
        image = matmul_mod(eta, stack, T.p).reshape(T.dim, T.dim)
        out.append(GradedSubspace.span(T, image).as_module())
    return out


def decompose_projective(Q: GradedModule, cl: IsoshiftClassification, seed: int = 0) -> List[Tuple[int, int]]:
    """Multiset of (type, canonical shift) with Q ≅ ⊕ P_i(σ)."""
    T = top(Q)
    if T.dim == 0:
        return []
    out = []
    for U in _simple_summands(T, seed):
        for i in range(cl.t):
            X = simple_iso_shift(U, cl.type_top(i), check=False)
            if X:
                out.append((i, min(X)))
                break
        else:
            raise InvalidInputError("module has a top summand matching no principal indecomposable")
    if sum(cl.type_module(i).dim for i, _ in out) != Q.dim:
        raise InvalidInputError("module is not projective over this algebra")
    return sorted(out)


@dataclass
class EmbeddingCriteria:
    embeds: bool
    annihilator_of_element: bool
    right_annihilator_nonzero: bool
    double_annihilator: bool

    @property
    def consistent(self) -> bool:
        values = {self.embeds, self.annihilator_of_element, self.right_annihilator_nonzero, self.double_annihilator}
        return len(values) == 1


def simple_embedding_criteria(S: GradedModule) -> EmbeddingCriteria:
    """Four equivalent conditions for a graded simple left module S ≅ R/M(g) to embed in R."""
    if S.side != "left":
        raise InvalidInputError("embedding criteria are stated for left modules")
    A = S.algebra
    L = regular_module(A, "left")
    Rr = regular_module(A, "right")
    embeds = any(hom_basis(S, L, tau) for tau in A.group.elements)
    generator_image = np.stack([S.action[r][0, :] for r in range(A.dim)])
    M = graded_kernel(L, generator_image)
    annR = right_annihilator(M)
    double = left_annihilator(annR) == M
    of_element = any(left_annihilator(GradedSubspace.span(Rr, x)) == M for x in annR.basis)
    return EmbeddingCriteria(embeds, of_element, annR.dim > 0, double)


def simple_translation_witness(R: GradedAlgebra, S: GradedSubspace, S2: GradedSubspace, g: int) -> Optional[np.ndarray]:
    """Homogeneous r ∈ R_g with S·r = S2 for minimal graded left ideals S, S2."""
    idx = list(R.component(g))
    if not idx or S.dim == 0:
        return None
    blocks = [reduce_rows(R.left_matrix(s)[idx, :], S2.basis, S2.pivots, R.p) for s in S.basis]
    W = left_kernel(np.concatenate(blocks, axis=1), R.p, len(idx))
    for w in W:
        r = np.zeros(R.dim, dtype=np.int64)
        r[idx] = w
        image = np.stack([R.mul(s, r) for s in S.basis])
        if image.any():
            return r
    return None
