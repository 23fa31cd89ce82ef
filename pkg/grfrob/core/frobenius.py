"""
Graded quasi-Frobenius and σ-graded Frobenius decisions.

The σ-Frobenius property is decided by several independent routes
(coset combinatorics of the Nakayama data, socle against top on either
side, duals of the top, σ-faithfulness with the identity component, and
the linear dual R*). ``frobenius_report`` evaluates all of them for every
σ and records whether they agree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

import numpy as np

from grfrob.core.decomp import (
    IsoshiftClassification,
    classify_isoshift,
    is_graded_simple,
    simple_iso_shift,
    top,
)
from grfrob.core.grcore import (
    GradedAlgebra,
    GradedHom,
    GradedModule,
    GradedSubspace,
    component_module,
    coset_multisets_equal,
    hom_basis,
    is_graded_iso,
    left_annihilator,
    principal_module,
    quotient_module,
    regular_module,
    restrict_component,
    right_annihilator,
    shift,
    stored_degree,
    submodule_generated,
)
from grfrob.core.linalg import matmul_mod, rank, solve_rows
from grfrob.core.radicals import graded_radical, graded_socle, radical_of_module
from grfrob.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)


# Nakayama data and the graded QF decision


@dataclass
class NakayamaFailure:
    side: str
    index: int
    reason: str


@dataclass
class NakayamaData:
    """soc^gr(R·e_i) ≅ S_{π(i)}(σ_i) for each left isoshift type i."""

    classification: IsoshiftClassification
    pi: List[int]
    sigmas: List[int]
    sigma_cosets: List[FrozenSet[int]]
    socle_simple_left: List[bool]
    socle_simple_right: List[bool]

    @property
    def t(self) -> int:
        return self.classification.t

    def inertia_conjugation_holds(self) -> bool:
        """Σ(S_i) = σ_i·Σ(S_{π(i)})·σ_i⁻¹ for every i."""
        cl = self.classification
        G = cl.group
        return all(
            cl.inertia[i] == G.conjugate_subgroup(cl.inertia[self.pi[i]], self.sigmas[i]) for i in range(self.t)
        )

    def pi_cycles(self) -> str:
        seen = set()
        cycles = []
        for start in range(self.t):
            if start in seen or self.pi[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.pi[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.pi[nxt]
            cycles.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
        return "".join(cycles) or "id"


def _socle_module(P: GradedModule) -> GradedModule:
    return graded_socle(P).as_module()


def nakayama_data(R: GradedAlgebra, seed: int = 0) -> Union[NakayamaData, NakayamaFailure]:
    """Match the socle of each principal indecomposable against the simple tops."""

    def build():
        left = classify_isoshift(R, "left", seed)
        right = classify_isoshift(R, "right", seed)
        flags_right = [is_graded_simple(_socle_module(right.type_module(i))) for i in range(right.t)]
        flags_left: List[bool] = []
        pi: List[int] = []
        sigmas: List[int] = []
        cosets: List[FrozenSet[int]] = []
        failure: Optional[NakayamaFailure] = None
        for i in range(left.t):
            soc = _socle_module(left.type_module(i))
            simple = is_graded_simple(soc)
            flags_left.append(simple)
            if not simple:
                failure = failure or NakayamaFailure("left", i, "socle of the principal indecomposable is not graded simple")
                continue
            for j in range(left.t):
                X = simple_iso_shift(soc, left.type_top(j), check=False)
                if X:
                    pi.append(j)
                    sigmas.append(min(X))
                    cosets.append(X)
                    break
            else:
                failure = failure or NakayamaFailure("left", i, "socle matches no simple top")
        if failure is None and sorted(pi) != list(range(left.t)):
            dup = next(i for i, j in enumerate(pi) if pi.count(j) > 1)
            failure = NakayamaFailure("left", dup, "socle types do not permute the simple tops")
        if failure is None and not all(flags_right):
            failure = NakayamaFailure(
                "right", flags_right.index(False), "socle of the principal indecomposable is not graded simple"
            )
        if failure is not None:
            logger.info(f"No Nakayama permutation for {R!r}: {failure.side} P_{failure.index + 1}: {failure.reason}")
            return failure
        return NakayamaData(left, pi, sigmas, cosets, flags_left, flags_right)

    return R.memo(("nakayama", seed), build)


@dataclass
class QFDecision:
    graded_qf: bool
    evidence: Union[NakayamaData, NakayamaFailure, None]
    left_types_embed: List[bool] = field(default_factory=list)
    right_types_embed: List[bool] = field(default_factory=list)

    def __bool__(self):
        return self.graded_qf

    @property
    def nakayama(self) -> Optional[NakayamaData]:
        return self.evidence if isinstance(self.evidence, NakayamaData) else None


def _embeds_up_to_shift(S: GradedModule, T: GradedModule) -> bool:
    return any(hom_basis(S, T, tau) for tau in S.group.elements)


def is_graded_qf(R: GradedAlgebra, seed: int = 0) -> QFDecision:
    """Every simple type embeds in R on both sides and every principal
    indecomposable on both sides has a graded simple socle."""

    def build():
        left = classify_isoshift(R, "left", seed)
        right = classify_isoshift(R, "right", seed)
        L, Rr = regular_module(R, "left"), regular_module(R, "right")
        left_embeds = [_embeds_up_to_shift(left.type_top(i), L) for i in range(left.t)]
        right_embeds = [_embeds_up_to_shift(right.type_top(i), Rr) for i in range(right.t)]
        nak = nakayama_data(R, seed)
        qf = all(left_embeds) and all(right_embeds) and isinstance(nak, NakayamaData)
        logger.info(f"{R!r} graded QF: {qf}")
        return QFDecision(qf, nak, left_embeds, right_embeds)

    return R.memo(("qf", seed), build)


def is_qf_ungraded(A: GradedAlgebra, seed: int = 0) -> bool:
    return is_graded_qf(A.with_trivial_grading(), seed).graded_qf


@dataclass
class OracleReport:
    passed: bool
    trials: int
    counterexample: Optional[Dict[str, object]] = None


def qf_annihilator_oracle(R: GradedAlgebra, trials: int = 200, seed: int = 0) -> OracleReport:
    """Double annihilator identities on principal, structural and random graded one-sided ideals."""
    p, d = R.p, R.dim
    L, Rr = regular_module(R, "left"), regular_module(R, "right")
    rng = np.random.default_rng(seed)
    support = sorted(R.support())

    def fails(U: GradedSubspace) -> bool:
        if U.parent.side == "left":
            return left_annihilator(right_annihilator(U)) != U
        return right_annihilator(left_annihilator(U)) != U

    targeted: List[GradedSubspace] = []
    for i in range(d):
        targeted.append(submodule_generated(L, R.basis_vector(i)))
        targeted.append(submodule_generated(Rr, R.basis_vector(i)))
    targeted += [graded_radical(R, "left"), graded_radical(R, "right"), graded_socle(L), graded_socle(Rr)]

    run = 0
    for U in targeted:
        if run >= trials:
            return OracleReport(True, run)
        run += 1
        if fails(U):
            return OracleReport(False, run, {"side": U.parent.side, "ideal": U.basis.tolist()})
    while run < trials:
        parent = L if rng.integers(2) == 0 else Rr
        gens = []
        for _ in range(int(rng.integers(1, 4))):
            g = support[int(rng.integers(len(support)))]
            idx = list(R.component(g))
            v = np.zeros(d, dtype=np.int64)
            v[idx] = rng.integers(0, p, size=len(idx))
            gens.append(v)
        U = submodule_generated(parent, np.stack(gens))
        run += 1
        if fails(U):
            logger.debug(f"double annihilator fails on a random {parent.side} ideal of dimension {U.dim}")
            return OracleReport(False, run, {"side": parent.side, "ideal": U.basis.tolist()})
    return OracleReport(True, run)


# Duals


def _stored_regular(M: GradedModule) -> GradedModule:
    """The regular module of the same side as M, over M's stored algebra."""
    A = M.algebra
    if M.side == "left":
        return regular_module(A, "left")
    return regular_module(A.opposite(), "right")


def dual_pairing(M: GradedModule) -> Tuple[GradedModule, List[np.ndarray]]:
    """M^ = HOM_R(M, R) together with the hom matrices forming its basis."""

    def build():
        T = _stored_regular(M)
        A, G, p, d = M.algebra, M.group, M.p, M.algebra.dim
        mats: List[np.ndarray] = []
        degrees: List[int] = []
        for tau in G.elements:
            for F in hom_basis(M, T, tau):
                mats.append(F)
                degrees.append(G.inv(tau))
        side = "right" if M.side == "left" else "left"
        n = len(mats)
        if n == 0:
            return GradedModule(A.opposite(), (), np.zeros((d, 0, 0), dtype=np.int64), side, f"{M.label}^"), mats
        flat = np.stack([F.reshape(-1) for F in mats])
        # (f·r)(m) = f(m)·r
        images = np.stack([matmul_mod(F, A.structure[:, r, :], p).reshape(-1) for r in range(d) for F in mats])
        coords = solve_rows(flat, images, p)
        if coords is None:
            raise RuntimeError("dual basis is not closed under the action")
        return GradedModule(A.opposite(), tuple(degrees), coords.reshape(d, n, n), side, f"{M.label}^"), mats

    return M.memo("dual", build)


def dual_module(M: GradedModule) -> GradedModule:
    return dual_pairing(M)[0]


def biduality_check(M: GradedModule) -> bool:
    """Whether the evaluation map M -> M^^ is a graded isomorphism."""
    D1, F1 = dual_pairing(M)
    D2, F2 = dual_pairing(D1)
    if D2.dim != M.dim:
        return False
    if M.dim == 0:
        return True
    m = M.dim
    flat2 = np.stack([Phi.reshape(-1) for Phi in F2])
    # φ(v) sends the k-th dual basis map F to F(v) = row v of F
    phis = np.stack(F1).transpose(1, 0, 2).reshape(m, -1)
    coords = solve_rows(flat2, phis, M.p)
    if coords is None:
        return False
    phi = GradedHom(M, D2, M.group.identity, coords)
    return phi.verify() and phi.is_isomorphism()


def dual_shift_check(M: GradedModule, tau: int, seed: int = 0) -> bool:
    """M(τ)^ ≅ (τ⁻¹)(M^), on dimensions per degree and up to isomorphism."""
    lhs = dual_module(shift(M, tau))
    rhs = shift(dual_module(M), M.group.inv(tau))
    if lhs.component_dims() != rhs.component_dims():
        return False
    return bool(is_graded_iso(lhs, rhs, seed=seed))


@dataclass
class DualSimpleRecord:
    side: str
    index: int
    dual_dim: int
    status: str


def dual_simple_check(R: GradedAlgebra, seed: int = 0) -> List[DualSimpleRecord]:
    """Classify the dual of each simple top as zero, graded simple or neither."""
    out = []
    for side in ("left", "right"):
        cl = classify_isoshift(R, side, seed)
        for i in range(cl.t):
            D = dual_module(cl.type_top(i))
            if D.dim == 0:
                status = "zero"
            elif is_graded_simple(D):
                status = "simple"
            else:
                status = "neither"
            out.append(DualSimpleRecord(side, i, D.dim, status))
    return out


# σ-graded Frobenius routes


def sigma_frobenius_set_combinatorial(R: GradedAlgebra, nakayama: Union[NakayamaData, NakayamaFailure, None]) -> FrozenSet[int]:
    """σ with σ·g_ij·σ_i·Σ(S_π(i)) a permutation of g_π(i)j·Σ(S_π(i)) for all i."""
    if not isinstance(nakayama, NakayamaData):
        return frozenset()
    cl = nakayama.classification
    G = cl.group
    shifts = cl.shifts
    out = set()
    for sigma in G.elements:
        for i in range(cl.t):
            j = nakayama.pi[i]
            moved = [G.product(sigma, g, nakayama.sigmas[i]) for g in shifts[i]]
            if not coset_multisets_equal(G, moved, shifts[j], cl.inertia[j]):
                break
        else:
            out.add(sigma)
    logger.debug(f"combinatorial sigma set of {R!r}: {G.format_set(out)}")
    return frozenset(out)


def regular_top(R: GradedAlgebra, side: str = "left") -> GradedModule:
    """R/J^gr(R) as a graded left or right module."""

    def build():
        M = regular_module(R, side)
        return quotient_module(M, radical_of_module(M))[0]

    return R.memo(("regular_top", side), build)


def regular_socle(R: GradedAlgebra, side: str = "left") -> GradedModule:
    return R.memo(("regular_socle", side), lambda: _socle_module(regular_module(R, side)))


def socle_top_condition(R: GradedAlgebra, sigma: int, side: str = "left", seed: int = 0) -> bool:
    """soc^gr(R)(σ) ≅ R/J^gr(R) on the left, (σ)soc^gr(R) ≅ R/J^gr(R) on the right."""
    return bool(is_graded_iso(shift(regular_socle(R, side), sigma), regular_top(R, side), seed=seed))


def _require_qf(R: GradedAlgebra, seed: int) -> None:
    if not is_graded_qf(R, seed).graded_qf:
        raise InvalidInputError(f"{R!r} is not graded quasi-Frobenius")


def sigma_frobenius_check_direct(R: GradedAlgebra, sigma: int, side: str = "left", seed: int = 0) -> bool:
    _require_qf(R, seed)
    return socle_top_condition(R, sigma, side, seed)


def sigma_frobenius_check_dual(R: GradedAlgebra, sigma: int, side: str = "left", seed: int = 0) -> bool:
    """(R/J^gr)^ shifted by σ against R/J^gr, the dual taken of the other side's top."""
    _require_qf(R, seed)
    other = "right" if side == "left" else "left"
    D = dual_module(regular_top(R, other))
    return bool(is_graded_iso(shift(D, sigma), regular_top(R, side), seed=seed))


def is_module_sigma_faithful(M: GradedModule, sigma: int) -> bool:
    """R_{σg⁻¹}·m ≠ 0 for every nonzero homogeneous m of degree g."""
    A, G = M.algebra, M.group
    s = stored_degree(M, sigma)
    for g in G.elements:
        idx = list(M.component(g))
        if not idx:
            continue
        acting = A.component(G.mul(s, G.inv(g)))
        if not acting:
            return False
        big = np.concatenate([M.action[r][idx, :] for r in acting], axis=1)
        if rank(big, M.p) < len(idx):
            return False
    return True


def is_sigma_faithful(R: GradedAlgebra, sigma: int, side: str = "left") -> bool:
    return is_module_sigma_faithful(regular_module(R, side), sigma)


def _component_socle_condition(A: GradedAlgebra, s: int, seed: int) -> bool:
    """soc(R_ε R_s) ≅ R_ε/J(R_ε) as left R_ε-modules."""
    Re, _ = A.identity_component()
    C = component_module(A, s)
    if C.dim == 0:
        return False
    return bool(is_graded_iso(_socle_module(C), regular_top(Re, "left"), seed=seed))


def faithful_component_check(R: GradedAlgebra, sigma: int, seed: int = 0) -> bool:
    """σ-faithful on both sides, and the socle of R_σ over R_ε is R_ε/J(R_ε) on both sides."""
    G = R.group
    op = R.opposite()
    s_op = G.inv(sigma)
    if not (is_sigma_faithful(R, sigma, "left") and is_sigma_faithful(op, s_op, "left")):
        return False
    return _component_socle_condition(R, sigma, seed) and _component_socle_condition(op, s_op, seed)


def linear_dual_module(R: GradedAlgebra) -> GradedModule:
    """R* = Hom_k(R, k) with (r·f)(a) = f(a·r) and (R*)_g vanishing off R_{g⁻¹}."""
    G = R.group
    return R.memo(
        "linear_dual",
        lambda: GradedModule(
            R, tuple(G.inv(g) for g in R.degrees), np.transpose(R.structure, (1, 2, 0)), "left", f"{R.label}*"
        ),
    )


def graded_frobenius_algebra_check(R: GradedAlgebra, sigma: int, seed: int = 0) -> bool:
    """R(σ) ≅ R* as graded left modules."""
    return bool(is_graded_iso(shift(regular_module(R, "left"), sigma), linear_dual_module(R), seed=seed))


def is_frobenius_ungraded(A: GradedAlgebra, seed: int = 0) -> bool:
    U = A.with_trivial_grading()
    if not is_graded_qf(U, seed).graded_qf:
        return False
    return socle_top_condition(U, U.group.identity, "left", seed)


def is_graded_frobenius(R: GradedAlgebra, seed: int = 0) -> bool:
    if not is_graded_qf(R, seed).graded_qf:
        return False
    return socle_top_condition(R, R.group.identity, "left", seed)


def graded_frobenius_criterion(R: GradedAlgebra, seed: int = 0) -> bool:
    """ε-faithful on both sides with R_ε Frobenius."""
    e = R.group.identity
    if not (is_sigma_faithful(R, e, "left") and is_sigma_faithful(R, e, "right")):
        return False
    Re, _ = R.identity_component()
    return is_frobenius_ungraded(Re, seed)


def is_strongly_graded(R: GradedAlgebra) -> bool:
    """R_g·R_{g⁻¹} = R_ε for every g."""
    G = R.group
    target = len(R.component(G.identity))
    for g in G.elements:
        a, b = list(R.component(g)), list(R.component(G.inv(g)))
        if not a or not b:
            return False
        prods = R.structure[np.ix_(a, b)].reshape(-1, R.dim)
        if rank(prods, R.p) != target:
            return False
    return True


# Coinduction


def coinduced_pairing(R: GradedAlgebra, N: GradedModule) -> Tuple[GradedModule, List[np.ndarray]]:
    """Coind(N) for a left R_ε-module N, with its basis as d×dim(N) matrices."""
    G, p, d, n = R.group, R.p, R.dim, N.dim
    mats: List[np.ndarray] = []
    degrees: List[int] = []
    for g in G.elements:
        src_deg = G.inv(g)
        idx = list(R.component(src_deg))
        if not idx or n == 0:
            continue
        for F in hom_basis(component_module(R, src_deg), N, 0):
            full = np.zeros((d, n), dtype=np.int64)
            full[idx] = F
            mats.append(full)
            degrees.append(g)
    k = len(mats)
    if k == 0:
        return GradedModule(R, (), np.zeros((d, 0, 0), dtype=np.int64), "left", f"Coind({N.label})"), mats
    flat = np.stack([F.reshape(-1) for F in mats])
    # (r·f)(a) = f(a·r)
    images = np.stack([matmul_mod(R.structure[:, r, :], F, p).reshape(-1) for r in range(d) for F in mats])
    coords = solve_rows(flat, images, p)
    if coords is None:
        raise RuntimeError("coinduced basis is not closed under the action")
    return GradedModule(R, tuple(degrees), coords.reshape(d, k, k), "left", f"Coind({N.label})"), mats


def coinduced(R: GradedAlgebra, N: GradedModule, sigma: Optional[int] = None) -> GradedModule:
    """Coind(N), or Coind(N)(σ⁻¹) when σ is given."""
    C, _ = coinduced_pairing(R, N)
    return C if sigma is None else shift(C, R.group.inv(sigma))


def nu_map(M: GradedModule, sigma: int) -> GradedHom:
    """ν_M: M -> Coind(M_σ)(σ⁻¹), m_g ↦ (a ↦ a_{σg⁻¹}·m_g)."""
    if M.side != "left":
        raise InvalidInputError("nu_map is defined for graded left modules")
    R, G, p = M.algebra, M.group, M.p
    C0, mats = coinduced_pairing(R, restrict_component(M, sigma))
    C = shift(C0, G.inv(sigma))
    m = M.dim
    if C0.dim == 0 or m == 0:
        return GradedHom(M, C, G.identity, np.zeros((m, C0.dim), dtype=np.int64))
    idx_s = list(M.component(sigma))
    images = np.zeros((m, R.dim, len(idx_s)), dtype=np.int64)
    for v in range(m):
        for a in R.component(G.mul(sigma, G.inv(M.degrees[v]))):
            images[v, a, :] = M.action[a][v, idx_s]
    coords = solve_rows(np.stack(mats).reshape(len(mats), -1), images.reshape(m, -1), p)
    if coords is None:
        raise RuntimeError("ν image lies outside the coinduced module")
    return GradedHom(M, C, G.identity, coords)


# Pairing checks and the report


def socle_pairing_check(R: GradedAlgebra, seed: int = 0) -> List[bool]:
    """soc^gr(Re) ≅ (Re'/J^gr e')(σ) forces soc^gr(e'R) ≅ (σ)(eR/eJ^gr) for each matched pair."""
    nak = nakayama_data(R, seed)
    if not isinstance(nak, NakayamaData):
        return []
    cl = nak.classification
    out = []
    for i in range(cl.t):
        e = cl.indecomposables[cl.reps[i]].idempotent
        e2 = cl.indecomposables[cl.reps[nak.pi[i]]].idempotent
        soc_right = _socle_module(principal_module(R, e2, "right"))
        top_right = top(principal_module(R, e, "right"))
        out.append(bool(is_graded_iso(soc_right, shift(top_right, nak.sigmas[i]), seed=seed)))
    return out


ROUTES = (
    "combinatorial",
    "direct_left",
    "direct_right",
    "dual_left",
    "dual_right",
    "socle_both_sides",
    "faithful_component",
    "frobenius_algebra",
)


@dataclass
class RouteRecord:
    sigma: int
    routes: Dict[str, Optional[bool]]

    @property
    def agree(self) -> bool:
        return len({v for v in self.routes.values() if v is not None}) <= 1

    @property
    def decision(self) -> bool:
        return bool(self.routes.get("combinatorial"))


@dataclass
class FrobeniusReport:
    graded_qf: bool
    nakayama: Optional[NakayamaData]
    failure: Optional[NakayamaFailure]
    sigma_set: FrozenSet[int]
    faithful_left: Dict[int, bool]
    faithful_right: Dict[int, bool]
    cross_check_log: List[RouteRecord]

    @property
    def routes_agree(self) -> bool:
        return all(rec.agree for rec in self.cross_check_log)

    def disagreements(self) -> List[RouteRecord]:
        return [rec for rec in self.cross_check_log if not rec.agree]


def route_record(R: GradedAlgebra, sigma: int, combinatorial: FrozenSet[int], qf: bool, seed: int = 0) -> RouteRecord:
    """Evaluate every σ-Frobenius route at one σ; QF-only routes are None on non-QF rings."""
    routes: Dict[str, Optional[bool]] = {name: None for name in ROUTES}
    routes["combinatorial"] = sigma in combinatorial
    if qf:
        routes["direct_left"] = sigma_frobenius_check_direct(R, sigma, "left", seed)
        routes["direct_right"] = sigma_frobenius_check_direct(R, sigma, "right", seed)
        routes["dual_left"] = sigma_frobenius_check_dual(R, sigma, "left", seed)
        routes["dual_right"] = sigma_frobenius_check_dual(R, sigma, "right", seed)
    routes["socle_both_sides"] = socle_top_condition(R, sigma, "left", seed) and socle_top_condition(
        R, sigma, "right", seed
    )
    routes["faithful_component"] = faithful_component_check(R, sigma, seed)
    routes["frobenius_algebra"] = graded_frobenius_algebra_check(R, sigma, seed)
    rec = RouteRecord(sigma, routes)
    if not rec.agree:
        logger.warning(f"σ-Frobenius routes disagree on {R!r} at {R.group.label(sigma)}: {routes}")
    return rec


def frobenius_report(R: GradedAlgebra, seed: int = 0) -> FrobeniusReport:
    logger.info(f"Deciding the Frobenius properties of {R!r}")
    G = R.group
    decision = is_graded_qf(R, seed)
    nak = decision.nakayama
    combinatorial = sigma_frobenius_set_combinatorial(R, nak)
    log = [route_record(R, sigma, combinatorial, decision.graded_qf, seed) for sigma in G.elements]
    return FrobeniusReport(
        graded_qf=decision.graded_qf,
        nakayama=nak,
        failure=decision.evidence if isinstance(decision.evidence, NakayamaFailure) else None,
        sigma_set=combinatorial,
        faithful_left={s: is_sigma_faithful(R, s, "left") for s in G.elements},
        faithful_right={s: is_sigma_faithful(R, s, "right") for s in G.elements},
        cross_check_log=log,
    )
