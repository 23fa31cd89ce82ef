"""
Jacobson radicals, graded socles and the graded singular ideal, plus the
semisimplicity, von Neumann regularity and graded Baer tests built on them.

J^gr(R) is computed as ⊕_g (J(R) ∩ R_g): a nilpotent graded ideal, hence
inside J^gr, and J^gr is itself nilpotent, hence inside J(R).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from grfrob.core.grcore import (
    GradedAlgebra,
    GradedModule,
    GradedSubspace,
    base_algebra,
    graded_kernel,
    hom_basis,
    regular_module,
    submodule_generated,
)
from grfrob.core.linalg import left_kernel, matmul_mod, matpow_mod, reduce_rows, rref, row_space, solve_rows
from grfrob.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)


def _product_rows(A: GradedAlgebra, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """RREF basis of span{x·y : x ∈ X, y ∈ Y}."""
    d = A.dim
    if X.shape[0] == 0 or Y.shape[0] == 0:
        return np.zeros((0, d), dtype=np.int64)
    prods = np.concatenate([matmul_mod(Y, A.left_matrix(x), A.p) for x in X])
    return row_space(prods, A.p, d)


def radical_ungraded(A: GradedAlgebra) -> np.ndarray:
    """J(A) as RREF rows, ignoring the grading.

    Iterates the p-power trace conditions I_i = {x ∈ I_{i-1} : g_i(x·y) = 0
    for all y}, g_i(a) = (Tr(ã^{p^i}) mod p^{i+1}) / p^i on the integer lift
    of the left regular representation, for i = 0..⌊log_p dim A⌋.
    """

    def build():
        p, d = A.p, A.dim
        top = 0
        while p ** (top + 1) <= d:
            top += 1
        traces = np.trace(A.structure, axis1=1, axis2=2) % p
        basis = np.eye(d, dtype=np.int64)
        for i in range(top + 1):
            k = basis.shape[0]
            if k == 0:
                break
            lefts = [A.left_matrix(v) for v in basis]  # row j of lefts[a] is basis[a]·b_j
            if i == 0:
                values = np.stack([matmul_mod(P, traces, p) for P in lefts])
            else:
                modulus, scale = p ** (i + 1), p**i
                values = np.zeros((k, d), dtype=np.int64)
                for a, P in enumerate(lefts):
                    for j in range(d):
                        t = int(np.trace(matpow_mod(A.left_matrix(P[j]), p**i, modulus))) % modulus
                        if t % scale:
                            raise RuntimeError(f"trace congruence failed at level {i}; algebra is not associative?")
                        values[a, j] = (t // scale) % p
            coeffs = left_kernel(values, p, k)
            basis = row_space(matmul_mod(coeffs, basis, p), p, d) if coeffs.shape[0] else np.zeros((0, d), dtype=np.int64)
            logger.debug(f"radical level {i}: dimension {basis.shape[0]}")
        if _nilpotency(A, basis) is None:
            raise RuntimeError(f"computed radical of {A!r} is not nilpotent")
        return basis

    return A.memo("radical", build)


def _nilpotency(A: GradedAlgebra, rows: np.ndarray) -> Optional[int]:
    if rows.shape[0] == 0:
        return 1
    P = rows
    for m in range(2, A.dim + 2):
        P = _product_rows(A, P, rows)
        if P.shape[0] == 0:
            return m
    return None


def _jgr_rows(A: GradedAlgebra) -> np.ndarray:
    """Homogeneous RREF rows of J^gr; shared between an algebra and its opposite."""
    source = A.opposite_origin or A

    def build():
        J = radical_ungraded(source)
        p, d = source.p, source.dim
        parts = []
        for g in source.group.elements:
            idx = set(source.component(g))
            if not idx or J.shape[0] == 0:
                continue
            outside = [c for c in range(d) if c not in idx]
            coeffs = left_kernel(J[:, outside], p, J.shape[0])
            if coeffs.shape[0]:
                parts.append(matmul_mod(coeffs, J, p))
        if not parts:
            return np.zeros((0, d), dtype=np.int64)
        return row_space(np.concatenate(parts), p, d)

    return source.memo("jgr_rows", build)


def graded_radical(R: GradedAlgebra, side: str = "left") -> GradedSubspace:
    return GradedSubspace.span(regular_module(R, side), _jgr_rows(R))


def radical_of_module(M: GradedModule) -> GradedSubspace:
    """J^gr(R)·M."""
    J = _jgr_rows(M.algebra)
    if J.shape[0] == 0 or M.dim == 0:
        return GradedSubspace.zero(M)
    return GradedSubspace.span(M, np.concatenate([M.act(j) for j in J]))


def is_semisimple_module(M: GradedModule) -> bool:
    return radical_of_module(M).dim == 0


def graded_socle(M: GradedModule) -> GradedSubspace:
    """{m ∈ M : J^gr(R)·m = 0}."""
    J = _jgr_rows(M.algebra)
    if J.shape[0] == 0:
        return GradedSubspace.full(M)
    return graded_kernel(M, np.concatenate([M.act(j) for j in J], axis=1))


def is_essential(I: GradedSubspace, M: Optional[GradedModule] = None) -> bool:
    """Essential iff the subspace contains the graded socle (finite length)."""
    M = M or I.parent
    if M is not I.parent and M.degrees != I.parent.degrees:
        raise InvalidInputError("subspace does not live in the given module")
    return I.contains_subspace(graded_socle(M))


def graded_singular(R: GradedAlgebra) -> GradedSubspace:
    """Z^gr(_R R): homogeneous x with soc^gr_l(R)·x = 0."""
    L = regular_module(R, "left")
    soc = graded_socle(L)
    if soc.dim == 0:
        return GradedSubspace.full(L)
    return graded_kernel(L, np.concatenate([R.left_matrix(s) for s in soc.basis], axis=1))


def product_power(I: GradedSubspace, k: int) -> GradedSubspace:
    """I^k inside the regular module holding I."""
    if k < 1:
        raise InvalidInputError("powers start at 1")
    R = base_algebra(I.parent)
    P = I.basis
    for _ in range(k - 1):
        if P.shape[0] == 0:
            break
        P = _product_rows(R, P, I.basis) if I.parent.side == "left" else _product_rows(R, I.basis, P)
    return GradedSubspace.span(I.parent, P)


def nilpotency_index(I: GradedSubspace) -> Optional[int]:
    """Least m with I^m = 0, or None when I is not nilpotent."""
    return _nilpotency(base_algebra(I.parent), I.basis)


def is_graded_semisimple(R: GradedAlgebra) -> bool:
    return _jgr_rows(R).shape[0] == 0


def projective_points(p: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Nonzero vectors of GF(p)^k whose first nonzero coordinate is 1."""
    for coeffs in itertools.product(range(p), repeat=k):
        nz = next((c for c in coeffs if c), 0)
        if nz == 1:
            yield coeffs


def is_vn_regular(R: GradedAlgebra, enumeration_cap: int = 2**16) -> Optional[bool]:
    """Graded von Neumann regularity: each homogeneous a has b ∈ R_{g⁻¹} with aba = a.

    Returns None when some component is too large to enumerate.
    """
    G, p, d = R.group, R.p, R.dim
    for g in sorted(R.support()):
        idx = list(R.component(g))
        if p ** len(idx) > enumeration_cap:
            logger.warning(f"von Neumann regularity undetermined: |R_{G.label(g)}| = {p}^{len(idx)} exceeds cap")
            return None
        inv_idx = list(R.component(G.inv(g)))
        if not inv_idx:
            return False
        for coeffs in projective_points(p, len(idx)):
            a = np.zeros(d, dtype=np.int64)
            a[idx] = coeffs
            rows = np.stack([R.mul(a, R.mul(R.basis_vector(b), a)) for b in inv_idx])
            if solve_rows(rows, a, p) is None:
                logger.debug(f"no b with aba = a for a = {a.tolist()}")
                return False
    return True


@dataclass
class BaerReport:
    passed: bool
    trials: int
    counterexample: Optional[Dict[str, Any]] = None


def _is_right_multiplication(R: GradedAlgebra, ideal_rows: np.ndarray, F: np.ndarray, sigma: int) -> bool:
    idx = list(R.component(sigma))
    if not idx:
        return not F.any()
    big = np.concatenate([R.left_matrix(x)[idx, :] for x in ideal_rows], axis=1)
    return solve_rows(big, F.reshape(1, -1), R.p) is not None


def baer_randomized(R: GradedAlgebra, trials: int = 200, seed: int = 0) -> BaerReport:
    """Check that degree-σ maps from graded left ideals into R are right multiplications.

    Principal ideals of the basis vectors and their hom bases are tried
    first, then random ideals with 1-3 homogeneous generators.
    """
    G, p, d = R.group, R.p, R.dim
    L = regular_module(R, "left")
    rng = np.random.default_rng(seed)
    support = sorted(R.support())
    run = 0

    def check(I: GradedSubspace, sigma: int, F: np.ndarray) -> Optional[Dict[str, Any]]:
        if _is_right_multiplication(R, I.basis, F, sigma):
            return None
        return {"ideal": I.basis.tolist(), "degree": G.label(sigma), "map": F.tolist()}

    for i in range(d):
        I = submodule_generated(L, R.basis_vector(i))
        module = I.as_module()
        for sigma in G.elements:
            for F in hom_basis(module, L, sigma):
                if run >= trials:
                    return BaerReport(True, run)
                run += 1
                bad = check(I, sigma, F)
                if bad:
                    logger.info(f"graded Baer criterion fails on a principal ideal in degree {G.label(sigma)}")
                    return BaerReport(False, run, bad)

    while run < trials:
        gens = []
        for _ in range(int(rng.integers(1, 4))):
            g = support[int(rng.integers(len(support)))]
            idx = list(R.component(g))
            v = np.zeros(d, dtype=np.int64)
            v[idx] = rng.integers(0, p, size=len(idx))
            gens.append(v)
        I = submodule_generated(L, np.stack(gens))
        if I.dim == 0:
            continue
        sigma = int(rng.integers(G.order))
        H = hom_basis(I.as_module(), L, sigma)
        run += 1
        if not H:
            continue
        F = matmul_mod(rng.integers(0, p, size=len(H)), np.stack(H).reshape(len(H), -1), p).reshape(I.dim, d)
        bad = check(I, sigma, F)
        if bad:
            return BaerReport(False, run, bad)
    return BaerReport(True, run)


def quotient_algebra(A: GradedAlgebra, ideal_rows: np.ndarray) -> Tuple[GradedAlgebra, List[int]]:
    """A/I on the non-pivot basis vectors of the RREF of a (graded) two-sided ideal."""
    p, d = A.p, A.dim
    J, piv = rref(ideal_rows, p, d)
    comp = [c for c in range(d) if c not in set(piv)]
    q = len(comp)
    prods = A.structure[np.ix_(comp, comp)].reshape(q * q, d)
    sub = reduce_rows(prods, J, piv, p)[:, comp].reshape(q, q, q)
    unit = reduce_rows(A.unit, J, piv, p)[0, comp]
    Q = GradedAlgebra(
        p,
        A.group,
        tuple(A.degrees[c] for c in comp),
        sub,
        unit,
        tuple(A.names[c] for c in comp),
        f"{A.label}/I" if A.label else "",
    )
    return Q, comp


@dataclass
class RadicalReport:
    jgr: GradedSubspace
    nilpotency_index: Optional[int]
    j_epsilon: np.ndarray
    socle_left: GradedSubspace
    socle_right: GradedSubspace
    zgr_left: GradedSubspace


def identity_radical_rows(R: GradedAlgebra) -> np.ndarray:
    """J(R_ε) embedded in the coordinates of R."""
    Re, idx = R.identity_component()
    J = radical_ungraded(Re)
    out = np.zeros((J.shape[0], R.dim), dtype=np.int64)
    out[:, list(idx)] = J
    return row_space(out, R.p, R.dim)


def radical_report(R: GradedAlgebra) -> RadicalReport:
    logger.info(f"Computing graded radical of {R!r}")
    jgr = graded_radical(R)
    return RadicalReport(
        jgr=jgr,
        nilpotency_index=nilpotency_index(jgr),
        j_epsilon=identity_radical_rows(R),
        socle_left=graded_socle(regular_module(R, "left")),
        socle_right=graded_socle(regular_module(R, "right")),
        zgr_left=graded_singular(R),
    )


def graded_radical_via_simples(R: GradedAlgebra, seed: int = 0) -> GradedSubspace:
    """Intersection of the annihilators of the graded simple tops."""
    from grfrob.core.decomp import classify_isoshift

    classification = classify_isoshift(R, "left", seed=seed)
    blocks = [S.action.reshape(R.dim, -1) for S in classification.tops if S.dim]
    L = regular_module(R, "left")
    if not blocks:
        return GradedSubspace.full(L)
    return graded_kernel(L, np.concatenate(blocks, axis=1))
