"""
Factories for graded algebras and the structure recovery of graded simple
algebras as M_n(Δ)(g_1, ..., g_n).

Every factory validates its output before returning it.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from grfrob.core.decomp import (
    algebra_from_matrices,
    classify_isoshift,
    endomorphism_basis,
    is_graded_simple,
    primitive_idempotents,
)
from grfrob.core.grcore import (
    GradedAlgebra,
    GradedModule,
    GradedSubspace,
    hom_basis,
    principal_module,
    regular_module,
    submodule_generated,
    validate_algebra,
)
from grfrob.core.groups import FiniteGroup, group_homomorphism_image
from grfrob.core.linalg import contains, matmul_mod, rank, row_space, rref, solve_rows
from grfrob.core.radicals import graded_socle, is_graded_semisimple, projective_points
from grfrob.utils.errors import CapExceededError, InvalidInputError

logger = logging.getLogger(__name__)

CORPUS_VERSION = "1"


def _checked(
    p: int,
    group: FiniteGroup,
    degrees: Sequence[int],
    structure: np.ndarray,
    unit: np.ndarray,
    names: Sequence[str] = (),
    label: str = "",
) -> GradedAlgebra:
    A = GradedAlgebra(p, group, tuple(degrees), structure, unit, tuple(names), label)
    report = validate_algebra(A)
    if not report.valid:
        raise InvalidInputError(f"construction {label or '?'} is not a graded algebra: {report.violations[0]}")
    return A


# Graded division rings and matrix algebras


@dataclass(frozen=True)
class GradedDivisionSpec:
    group: FiniteGroup
    support: Tuple[int, ...]
    p: int
    cocycle: Optional[np.ndarray] = None


@dataclass(frozen=True)
class MatrixAlgebraSpec:
    delta: GradedDivisionSpec
    shifts: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.shifts)


def quaternion_cocycle(G: FiniteGroup, p: int) -> np.ndarray:
    """α(x, y) = (-1)^(x₁y₁ + x₂y₂ + x₂y₁) on a Klein four group; u_a u_b = -u_b u_a."""
    if G.order != 4 or any(G.mul(g, g) != G.identity for g in G.elements):
        raise InvalidInputError("the quaternion twist needs a Klein four group")
    if p == 2:
        raise InvalidInputError("the quaternion twist needs an odd prime")
    a, b = [g for g in G.elements if g != G.identity][:2]
    bits = {G.identity: (0, 0), a: (1, 0), b: (0, 1), G.mul(a, b): (1, 1)}
    alpha = np.ones((4, 4), dtype=np.int64)
    for x, y in itertools.product(G.elements, repeat=2):
        (x1, x2), (y1, y2) = bits[x], bits[y]
        if (x1 * y1 + x2 * y2 + x2 * y1) % 2:
            alpha[x, y] = p - 1
    return alpha


def _check_cocycle(G: FiniteGroup, H: Sequence[int], alpha: np.ndarray, p: int) -> None:
    e = G.identity
    for h in H:
        if alpha[e, h] % p != 1 or alpha[h, e] % p != 1:
            raise InvalidInputError("cocycle is not normalized")
    for g, h, k in itertools.product(H, repeat=3):
        if alpha[g, h] % p == 0:
            raise InvalidInputError("cocycle takes the value 0")
        lhs = alpha[g, h] * alpha[G.mul(g, h), k] % p
        rhs = alpha[h, k] * alpha[g, G.mul(h, k)] % p
        if lhs != rhs:
            raise InvalidInputError(
                f"cocycle identity fails at ({G.label(g)}, {G.label(h)}, {G.label(k)})"
            )


def is_graded_division_ring(A: GradedAlgebra, enumeration_cap: int = 2**16) -> bool:
    """Every nonzero homogeneous element has a two-sided homogeneous inverse."""
    G, p, d = A.group, A.p, A.dim
    if not G.is_subgroup(A.support()):
        return False
    for g in sorted(A.support()):
        idx = list(A.component(g))
        inv_idx = list(A.component(G.inv(g)))
        if p ** len(idx) > enumeration_cap:
            raise CapExceededError(f"component of dimension {len(idx)} is too large to enumerate")
        for coeffs in projective_points(p, len(idx)):
            x = np.zeros(d, dtype=np.int64)
            x[idx] = coeffs
            left = np.stack([A.mul(x, A.basis_vector(j)) for j in inv_idx])
            right = np.stack([A.mul(A.basis_vector(j), x) for j in inv_idx])
            if solve_rows(left, A.unit, p) is None or solve_rows(right, A.unit, p) is None:
                return False
    return True


def graded_division_ring(spec: GradedDivisionSpec, label: str = "") -> GradedAlgebra:
    """Twisted group algebra of the support subgroup: u_g·u_h = α(g, h)·u_gh."""
    G, p = spec.group, spec.p
    H = sorted(set(int(h) for h in spec.support))
    if not G.is_subgroup(H):
        raise InvalidInputError(f"support {G.format_set(H)} is not a subgroup")
    alpha = np.ones((G.order, G.order), dtype=np.int64) if spec.cocycle is None else np.asarray(spec.cocycle) % p
    _check_cocycle(G, H, alpha, p)
    pos = {h: i for i, h in enumerate(H)}
    k = len(H)
    C = np.zeros((k, k, k), dtype=np.int64)
    for g, h in itertools.product(H, repeat=2):
        C[pos[g], pos[h], pos[G.mul(g, h)]] = alpha[g, h]
    unit = np.zeros(k, dtype=np.int64)
    unit[pos[G.identity]] = 1
    A = _checked(p, G, H, C, unit, [f"u{G.label(h)}" for h in H], label or f"Delta[{','.join(G.format_set(H))}]")
    if not is_graded_division_ring(A):
        raise InvalidInputError("twisted group algebra is not a graded division ring")
    return A


def matrix_algebra_over(B: GradedAlgebra, shifts: Sequence[int], label: str = "") -> GradedAlgebra:
    """M_n(B)(g_1, ..., g_n): E_ij ⊗ b has degree g_i⁻¹·deg(b)·g_j."""
    G, p, m = B.group, B.p, B.dim
    shifts = [int(g) for g in shifts]
    n = len(shifts)
    if n < 1:
        raise InvalidInputError("matrix algebras need at least one shift")
    N = n * n * m

    def block(i: int, j: int) -> List[int]:
        start = (i * n + j) * m
        return list(range(start, start + m))

    degrees = [0] * N
    names = [""] * N
    C = np.zeros((N, N, N), dtype=np.int64)
    unit = np.zeros(N, dtype=np.int64)
    for i, j in itertools.product(range(n), repeat=2):
        for a, pos in enumerate(block(i, j)):
            degrees[pos] = G.product(G.inv(shifts[i]), B.degrees[a], shifts[j])
            names[pos] = f"E{i + 1}{j + 1}" if m == 1 else f"E{i + 1}{j + 1}*{B.names[a]}"
        for l in range(n):
            C[np.ix_(block(i, j), block(j, l), block(i, l))] = B.structure
    for i in range(n):
        unit[block(i, i)] = B.unit
    if not label:
        label = f"M{n}({B.label or 'B'})({','.join(G.label(g) for g in shifts)})"
    return _checked(p, G, degrees, C, unit, names, label)


def graded_matrix_algebra(spec: MatrixAlgebraSpec, label: str = "") -> GradedAlgebra:
    return matrix_algebra_over(graded_division_ring(spec.delta), spec.shifts, label)


def matrix_unit(A: GradedAlgebra, n: int, i: int) -> np.ndarray:
    """E_ii ⊗ 1 inside an algebra built by matrix_algebra_over with n shifts."""
    m, rem = divmod(A.dim, n * n)
    if rem or not 0 <= i < n:
        raise InvalidInputError(f"{A!r} is not an n={n} matrix algebra or index {i} is out of range")
    e = np.zeros(A.dim, dtype=np.int64)
    start = (i * n + i) * m
    e[start : start + m] = A.unit[start : start + m]
    return e


def sigma_column_module(A: GradedAlgebra, j: int, n: int) -> GradedModule:
    """The j-th column Σ_j = A·E_jj as a graded left module."""
    return principal_module(A, matrix_unit(A, n, j), "left")


def gamma_row_module(A: GradedAlgebra, i: int, n: int) -> GradedModule:
    """The i-th row Γ_i = E_ii·A as a graded right module."""
    return principal_module(A, matrix_unit(A, n, i), "right")


# Small algebras


def group_algebra(
    G: FiniteGroup,
    p: int,
    grading: Optional[Sequence[int]] = None,
    grading_group: Optional[FiniteGroup] = None,
    label: str = "",
) -> GradedAlgebra:
    """GF(p)[G] graded by G, or by a homomorphism G -> K given as images of G's elements."""
    K = grading_group or G
    degrees = list(G.elements) if grading is None else list(group_homomorphism_image(G, K, grading))
    n = G.order
    C = np.zeros((n, n, n), dtype=np.int64)
    for g, h in itertools.product(G.elements, repeat=2):
        C[g, h, G.mul(g, h)] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[G.identity] = 1
    return _checked(p, K, degrees, C, unit, [f"u{G.label(g)}" for g in G.elements], label or f"F{p}[{G.name}]")


def truncated_polynomial(
    p: int, m: int, group: Optional[FiniteGroup] = None, x_degree: Optional[int] = None, label: str = ""
) -> GradedAlgebra:
    """GF(p)[x]/(x^m) with x homogeneous of the given degree."""
    if m < 1:
        raise InvalidInputError("truncation order must be positive")
    G = group or FiniteGroup.trivial()
    x = G.identity if x_degree is None else int(x_degree)
    degrees = [G.identity]
    for _ in range(1, m):
        degrees.append(G.mul(degrees[-1], x))
    C = np.zeros((m, m, m), dtype=np.int64)
    for i, j in itertools.product(range(m), repeat=2):
        if i + j < m:
            C[i, j, i + j] = 1
    unit = np.zeros(m, dtype=np.int64)
    unit[0] = 1
    names = ["1", "x"] + [f"x{k}" for k in range(2, m)]
    return _checked(p, G, degrees, C, unit, names[:m], label or f"F{p}[x]/x{m}")


def upper_triangular(
    p: int, n: int, group: Optional[FiniteGroup] = None, shifts: Optional[Sequence[int]] = None, label: str = ""
) -> GradedAlgebra:
    """Upper triangular n×n matrices, E_ij of degree g_i⁻¹·g_j."""
    G = group or FiniteGroup.trivial()
    shifts = [G.identity] * n if shifts is None else [int(g) for g in shifts]
    if len(shifts) != n:
        raise InvalidInputError("one shift per row is required")
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {pair: k for k, pair in enumerate(pairs)}
    d = len(pairs)
    C = np.zeros((d, d, d), dtype=np.int64)
    for (i, j), (k, l) in itertools.product(pairs, repeat=2):
        if j == k:
            C[pos[(i, j)], pos[(k, l)], pos[(i, l)]] = 1
    unit = np.zeros(d, dtype=np.int64)
    for i in range(n):
        unit[pos[(i, i)]] = 1
    degrees = [G.mul(G.inv(shifts[i]), shifts[j]) for i, j in pairs]
    return _checked(p, G, degrees, C, unit, [f"E{i + 1}{j + 1}" for i, j in pairs], label or f"T{n}(F{p})")


def trivial_extension(A: GradedAlgebra, label: str = "") -> GradedAlgebra:
    """E(A) = A ⊕ A* with (a, f)(b, g) = (ab, a·g + f·b), graded by C2 with A* in degree c."""
    p, d, C0 = A.p, A.dim, A.structure
    G = FiniteGroup.cyclic(2)
    N = 2 * d
    C = np.zeros((N, N, N), dtype=np.int64)
    C[:d, :d, :d] = C0
    # (b_i·f_j)(b_x) = f_j(b_x b_i) and (f_j·b_i)(b_x) = f_j(b_i b_x)
    for i, j in itertools.product(range(d), repeat=2):
        C[i, d + j, d:] = C0[:, i, j]
        C[d + j, i, d:] = C0[i, :, j]
    unit = np.concatenate([A.unit, np.zeros(d, dtype=np.int64)])
    names = list(A.names) + [f"{name}*" for name in A.names]
    return _checked(p, G, [0] * d + [1] * d, C, unit, names, label or f"E({A.label or 'A'})")


def product_algebra(*algebras: GradedAlgebra, label: str = "") -> GradedAlgebra:
    if not algebras:
        raise InvalidInputError("a product needs at least one factor")
    first = algebras[0]
    for B in algebras[1:]:
        if B.p != first.p or B.group != first.group:
            raise InvalidInputError("factors must share the prime and the grading group")
    N = sum(B.dim for B in algebras)
    C = np.zeros((N, N, N), dtype=np.int64)
    unit = np.zeros(N, dtype=np.int64)
    degrees: List[int] = []
    names: List[str] = []
    offset = 0
    for k, B in enumerate(algebras):
        sl = slice(offset, offset + B.dim)
        C[sl, sl, sl] = B.structure
        unit[sl] = B.unit
        degrees.extend(B.degrees)
        names.extend(f"{name}.{k + 1}" for name in B.names)
        offset += B.dim
    return _checked(
        first.p, first.group, degrees, C, unit, names, label or " x ".join(B.label or "?" for B in algebras)
    )


def corner_algebra(R: GradedAlgebra, e, label: str = "") -> GradedAlgebra:
    """e·R·e for an idempotent e of degree ε."""
    p, d = R.p, R.dim
    e = np.asarray(e, dtype=np.int64) % p
    if not np.array_equal(R.mul(e, e), e):
        raise InvalidInputError("corner needs an idempotent")
    if R.homogeneous_degree(e) != R.group.identity:
        raise InvalidInputError("corner idempotent must have identity degree")
    rows = np.stack([R.mul(R.mul(e, R.basis_vector(i)), e) for i in range(d)])
    basis, piv = rref(rows, p, d)
    k = basis.shape[0]
    C = np.stack([matmul_mod(basis, R.left_matrix(x), p)[:, piv] for x in basis]).reshape(k, k, k)
    degrees = [R.homogeneous_degree(row) for row in basis]
    return _checked(p, R.group, degrees, C, e[piv], [R.names[c] for c in piv], label or f"corner({R.label})")


def path_algebra(
    p: int,
    group: FiniteGroup,
    vertices: int,
    arrows: Sequence[Tuple[int, int, int]],
    relations: Sequence[Tuple[int, ...]] = (),
    max_length: int = 1,
    label: str = "",
) -> GradedAlgebra:
    """Path algebra of a graded quiver modulo monomial relations and paths longer than max_length.

    Arrows are (source, target, degree); a path a·b means a then b.
    """
    rels = [tuple(r) for r in relations]
    for s, t, _ in arrows:
        if not (0 <= s < vertices and 0 <= t < vertices):
            raise InvalidInputError("arrow endpoint outside the vertex set")

    def allowed(path: Tuple[int, ...]) -> bool:
        return not any(path[-len(r) :] == r for r in rels if len(r) <= len(path))

    paths: List[Tuple[int, ...]] = []
    level = [(a,) for a in range(len(arrows)) if allowed((a,))]
    while level and len(level[0]) <= max_length:
        paths.extend(level)
        level = [
            path + (b,)
            for path in level
            for b in range(len(arrows))
            if arrows[path[-1]][1] == arrows[b][0] and allowed(path + (b,))
        ]
    basis: List[Tuple[str, Tuple[int, ...]]] = [("v", (v,)) for v in range(vertices)] + [("p", q) for q in paths]
    pos = {item: k for k, item in enumerate(basis)}
    N = len(basis)

    def ends(item):
        kind, q = item
        if kind == "v":
            return q[0], q[0]
        return arrows[q[0]][0], arrows[q[-1]][1]

    C = np.zeros((N, N, N), dtype=np.int64)
    for x, y in itertools.product(basis, repeat=2):
        if ends(x)[1] != ends(y)[0]:
            continue
        if x[0] == "v":
            z = y
        elif y[0] == "v":
            z = x
        else:
            z = ("p", x[1] + y[1])
        if z in pos:
            C[pos[x], pos[y], pos[z]] = 1
    degrees = []
    names = []
    for kind, q in basis:
        if kind == "v":
            degrees.append(group.identity)
            names.append(f"e{q[0]}")
        else:
            degrees.append(group.product(*(arrows[a][2] for a in q)))
            names.append("".join(f"a{a}" for a in q))
    unit = np.zeros(N, dtype=np.int64)
    unit[:vertices] = 1
    return _checked(p, group, degrees, C, unit, names, label or f"kQ({vertices},{len(arrows)})")


QUIVER_PRESETS: Dict[str, Tuple[int, List[Tuple[int, int]], int]] = {
    # name: (vertices, arrows as (source, target), max path length)
    "a2": (2, [(0, 1)], 1),
    "cycle2-rad2": (2, [(0, 1), (1, 0)], 1),
    "cycle2-rad3": (2, [(0, 1), (1, 0)], 2),
    "cycle3-rad2": (3, [(0, 1), (1, 2), (2, 0)], 1),
}


def quiver_preset(name: str, p: int, group: Optional[FiniteGroup] = None, arrow_degree: Optional[int] = None) -> GradedAlgebra:
    """A named quiver algebra with every arrow in the same degree."""
    if name not in QUIVER_PRESETS:
        raise InvalidInputError(f"unknown quiver preset {name!r}; choose from {sorted(QUIVER_PRESETS)}")
    G = group or FiniteGroup.trivial()
    deg = G.identity if arrow_degree is None else int(arrow_degree)
    vertices, arrows, length = QUIVER_PRESETS[name]
    return path_algebra(p, G, vertices, [(s, t, deg) for s, t in arrows], max_length=length, label=f"{name}(F{p})")


# Structure recovery


@dataclass
class RecoveryResult:
    delta: GradedAlgebra
    n: int
    shifts: Tuple[int, ...]
    algebra: GradedAlgebra
    witness: np.ndarray
    verified: bool


def is_algebra_isomorphism(R: GradedAlgebra, M: GradedAlgebra, W: np.ndarray) -> bool:
    """Whether the rows of W (images of R's basis in M) define a graded algebra isomorphism."""
    p = R.p
    if W.shape != (R.dim, M.dim) or rank(W, p) != R.dim:
        return False
    for b, c in np.argwhere(W % p != 0):
        if M.degrees[c] != R.degrees[b]:
            return False
    if not np.array_equal(matmul_mod(R.unit, W, p), M.unit):
        return False
    for a in range(R.dim):
        lhs = matmul_mod(R.structure[a], W, p)
        rhs = matmul_mod(W, M.left_matrix(W[a]), p)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def _proper_cyclic(L: GradedModule, U: GradedSubspace) -> Optional[GradedSubspace]:
    for v in U.basis:
        W = submodule_generated(L, v[None, :])
        if W.dim < U.dim:
            return W
    return None


def _split_semisimple(L: GradedModule, U: GradedSubspace, seed: int) -> GradedSubspace:
    """Image of a primitive idempotent of End(U)_ε, as a left ideal inside L."""
    V = U.as_module()
    mats = hom_basis(V, V, V.group.identity)
    etas = primitive_idempotents(algebra_from_matrices(mats, V.p), seed)
    if len(etas) < 2:
        raise RuntimeError(f"{V!r} has a local endomorphism ring but is not graded simple")
    image = matmul_mod(etas[0], np.stack(mats).reshape(len(mats), -1), V.p).reshape(V.dim, V.dim)
    return GradedSubspace.span(L, matmul_mod(image, U.basis, V.p))


def minimal_graded_left_ideal(R: GradedAlgebra, seed: int = 0) -> GradedSubspace:
    """A minimal graded left ideal found inside soc^gr(R).

    Starts from the ideal generated by one homogeneous socle vector and
    shrinks to any proper cyclic graded submodule until none is left. A
    cyclic module that is still not simple is cut down by an idempotent
    of its degree-ε endomorphisms.
    """
    L = regular_module(R, "left")
    soc = graded_socle(L)
    if soc.dim == 0:
        raise InvalidInputError(f"{R!r} has zero graded socle")
    U = submodule_generated(L, soc.basis[:1])
    while True:
        smaller = _proper_cyclic(L, U)
        if smaller is None:
            if is_graded_simple(U.as_module()):
                return U
            smaller = _split_semisimple(L, U, seed)
        U = smaller


def structure_recovery(R: GradedAlgebra, seed: int = 0) -> RecoveryResult:
    """Recover Δ = END_R(V), n and the shifts of a graded simple algebra from a minimal graded left ideal V.

    R must be graded semisimple with a single isoshift type; anything else
    is an InvalidInputError.
    """
    if not is_graded_semisimple(R):
        raise InvalidInputError(f"{R!r} is not graded semisimple")
    cl = classify_isoshift(R, "left", seed)
    if cl.t != 1:
        raise InvalidInputError(f"{R!r} has {cl.t} isoshift types, so it is not graded simple")
    G, p = R.group, R.p
    V = minimal_graded_left_ideal(R, seed).as_module()
    mats, degs = endomorphism_basis(V)
    delta = algebra_from_matrices(mats, p, G, degs, label=f"END({V.label})")
    k = len(mats)
    eye = np.eye(V.dim, dtype=np.int64)

    xs: List[int] = []
    span = np.zeros((0, V.dim), dtype=np.int64)
    for g in G.elements:
        for i in V.component(g):
            if span.shape[0] and contains(span, eye[i], p):
                continue
            xs.append(i)
            orbit = np.stack([eye[i] @ F for F in mats]) % p
            span = row_space(np.concatenate([span, orbit]), p, V.dim)
    n = len(xs)
    if n * k != V.dim:
        raise RuntimeError("minimal left ideal is not free over its endomorphism ring")
    shifts = tuple(G.inv(V.degrees[x]) for x in xs)
    M = matrix_algebra_over(delta, shifts, label=f"M{n}(Delta)({','.join(G.label(g) for g in shifts)})")

    # x_i·δ_c, indexed by i*k + c
    vbasis = np.stack([matmul_mod(eye[x], F, p) for x in xs for F in mats])
    W = np.zeros((R.dim, M.dim), dtype=np.int64)
    for b in range(R.dim):
        images = np.stack([V.action[b][x, :] for x in xs])
        coords = solve_rows(vbasis, images, p)
        if coords is None:
            raise RuntimeError("action leaves the span of the recovered basis")
        for j in range(n):
            for i in range(n):
                start = (i * n + j) * k
                W[b, start : start + k] = coords[j, i * k : (i + 1) * k]
    verified = is_algebra_isomorphism(R, M, W)
    logger.info(f"Recovered {R!r} as M_{n}(Delta) with |supp Delta| = {len(set(degs))}, verified={verified}")
    return RecoveryResult(delta, n, shifts, M, W, verified)


def canonical_shift_cosets(G: FiniteGroup, H, shifts: Sequence[int]) -> Tuple[int, ...]:
    """Sorted right coset representatives of H·g_i after the best central translation."""
    H = frozenset(H)
    base = G.right_coset_rep(H, G.identity)
    best = None
    for z in sorted(G.center()):
        reps = tuple(sorted(G.right_coset_rep(H, G.mul(z, g)) for g in shifts))
        key = (-reps.count(base), reps)
        if best is None or key < best:
            best = key
    return best[1]


# Corpus


@dataclass
class CorpusEntry:
    name: str
    algebra: GradedAlgebra


def _subgroups(G: FiniteGroup) -> List[Tuple[int, ...]]:
    found = {tuple(sorted(G.subgroup_closure(gens))) for gens in itertools.combinations(G.elements, 2)}
    found.add((G.identity,))
    return sorted(found, key=lambda H: (len(H), H))


def random_matrix_specs(seed: int, count: int, max_dim: int = 36) -> List[MatrixAlgebraSpec]:
    """Deterministic M_n(Δ)(g...) specs over small abelian groups."""
    rng = np.random.default_rng(seed)
    groups = [FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4), FiniteGroup.by_name("C2xC2")]
    primes = [2, 3, 5]
    out: List[MatrixAlgebraSpec] = []
    while len(out) < count:
        G = groups[int(rng.integers(len(groups)))]
        H = _subgroups(G)[int(rng.integers(len(_subgroups(G))))]
        p = primes[int(rng.integers(len(primes)))]
        n = int(rng.integers(1, 4))
        if n * n * len(H) > max_dim:
            continue
        cocycle = None
        if len(H) == 4 and G.name == "C2xC2" and p != 2 and rng.integers(2):
            cocycle = quaternion_cocycle(G, p)
        shifts = tuple(int(x) for x in rng.integers(0, G.order, size=n))
        out.append(MatrixAlgebraSpec(GradedDivisionSpec(G, H, p, cocycle), shifts))
    return out


def builtin_corpus() -> List[CorpusEntry]:
    """The pinned verification corpus."""
    C1, C2, C3, C4 = (FiniteGroup.cyclic(k) for k in (1, 2, 3, 4))
    K4 = FiniteGroup.by_name("C2xC2")
    S3 = FiniteGroup.symmetric(3)
    c2 = C4.index("c2")
    a = K4.index("(c,e)")
    c = 1

    H4 = (C4.identity, c2)
    quaternion = GradedDivisionSpec(K4, tuple(K4.elements), 3, quaternion_cocycle(K4, 3))
    sign = [0 if S3.label(g) == "e" or len(S3.label(g)) == 5 else 1 for g in S3.elements]
    t2 = upper_triangular(3, 2, label="T2(F3)")
    cycle2 = quiver_preset("cycle2-rad2", 3, C2, c)

    def qf_not_frobenius() -> GradedAlgebra:
        B = quiver_preset("cycle2-rad2", 3)
        M3 = matrix_algebra_over(B, (0, 0, 0))
        e = np.zeros(M3.dim, dtype=np.int64)
        m = B.dim
        for i, vertex in enumerate((0, 0, 1)):
            e[(i * 3 + i) * m + vertex] = 1
        return corner_algebra(M3, e, label="End(P0+P0+P1)")

    entries = [
        ("F2[C2]", group_algebra(C2, 2)),
        ("F3[C2]", group_algebra(C2, 3)),
        ("F3[C3]", group_algebra(C3, 3)),
        ("F3[C4]", group_algebra(C4, 3)),
        ("F2[C2xC2]", group_algebra(K4, 2)),
        ("F3[S3]", group_algebra(S3, 3)),
        ("F2[C2]/trivial", group_algebra(C2, 2, grading=[0, 0], grading_group=C1, label="F2[C2]/trivial")),
        ("F3[S3]/sign", group_algebra(S3, 3, grading=sign, grading_group=C2, label="F3[S3]/sign")),
        ("Delta(C2<C4)", graded_division_ring(GradedDivisionSpec(C4, H4, 3))),
        ("Quaternion(F3)", graded_division_ring(quaternion, label="Quaternion(F3)")),
        ("M2(F3)(e,c)", graded_matrix_algebra(MatrixAlgebraSpec(GradedDivisionSpec(C2, (0,), 3), (0, c)))),
        ("M2(F3[H])(e,c)", graded_matrix_algebra(MatrixAlgebraSpec(GradedDivisionSpec(C4, H4, 3), (0, c)))),
        ("M3(F5[H])(e,c,c2)", graded_matrix_algebra(MatrixAlgebraSpec(GradedDivisionSpec(C4, H4, 5), (0, c, c2)))),
        ("M2(F2)(e,e)", graded_matrix_algebra(MatrixAlgebraSpec(GradedDivisionSpec(C1, (0,), 2), (0, 0)))),
        ("M2(Quaternion)(e,a)", graded_matrix_algebra(MatrixAlgebraSpec(quaternion, (0, a)))),
        ("F5[x]/x2 (C2)", truncated_polynomial(5, 2, C2, c)),
        ("F3[x]/x2 (C2)", truncated_polynomial(3, 2, C2, c)),
        ("F3[x]/x3 (C3)", truncated_polynomial(3, 3, C3, c)),
        ("F2[x]/x2", truncated_polynomial(2, 2)),
        ("F3[x]/x2 (C4)", truncated_polynomial(3, 2, C4, c)),
        ("F2[x]/x4 (C4)", truncated_polynomial(2, 4, C4, c)),
        ("T2(F3)", t2),
        ("T2(F3)(e,c)", upper_triangular(3, 2, C2, (0, c))),
        ("E(F3)", trivial_extension(truncated_polynomial(3, 1), label="E(F3)")),
        ("E(T2)", trivial_extension(t2, label="E(T2)")),
        ("E(F3[x]/x2)", trivial_extension(truncated_polynomial(3, 2), label="E(F3[x]/x2)")),
        (
            "E(F2xF2)",
            trivial_extension(product_algebra(truncated_polynomial(2, 1), truncated_polynomial(2, 1)), label="E(F2xF2)"),
        ),
        ("F5[x]/x2 x F5", product_algebra(truncated_polynomial(5, 2, C2, c), truncated_polynomial(5, 1, C2))),
        ("F3[x]/x2 x T2", product_algebra(truncated_polynomial(3, 2, C2, c), upper_triangular(3, 2, C2, (0, c)))),
        (
            "F3[x]/x2 x F3[x]/x2 x M2",
            product_algebra(
                truncated_polynomial(3, 2, C2, c),
                truncated_polynomial(3, 2, C2, c),
                graded_matrix_algebra(MatrixAlgebraSpec(GradedDivisionSpec(C2, (0,), 3), (0, c))),
            ),
        ),
        ("cycle2-rad2 (C2)", cycle2),
        ("cycle2-rad2", quiver_preset("cycle2-rad2", 3)),
        ("a2 (C2)", quiver_preset("a2", 3, C2, c)),
        ("cycle3-rad2 (C3)", quiver_preset("cycle3-rad2", 2, C3, c)),
        ("cycle2-rad3 (C2)", quiver_preset("cycle2-rad3", 3, C2, c)),
        ("End(P0+P0+P1)", qf_not_frobenius()),
    ]
    return [CorpusEntry(name, A) for name, A in entries]


def corpus_generate(seed: int = 0, max_dim: int = 64, max_group_order: int = 8, extra: int = 4) -> List[CorpusEntry]:
    """The builtin corpus within the caps plus ``extra`` seeded matrix algebras."""
    out = [E for E in builtin_corpus() if E.algebra.dim <= max_dim and E.algebra.group.order <= max_group_order]
    for k, spec in enumerate(random_matrix_specs(seed, extra, max_dim=min(max_dim, 36))):
        if spec.delta.group.order <= max_group_order:
            out.append(CorpusEntry(f"random-matrix-{seed}-{k}", graded_matrix_algebra(spec)))
    logger.info(f"Corpus version {CORPUS_VERSION}, seed {seed}: {len(out)} instances")
    return out
