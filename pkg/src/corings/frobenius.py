"""Frobenius systems on corings and Frobenius data for ring extensions.

Solvers here build certificates with operator algebra (contractions,
coproduct compositions, linear solves); every certificate returned is
re-checked by the independent evaluators in :mod:`corings.verify`.

Coordinates: ``gamma`` is ``dim A x dim(C (x)_A C)``, ``pi`` is
``dim C x dim(C (x)_A C)``, both on the quotient basis of ``coring.tensor``.
Frobenius data ``(E, beta)`` for ``A -> B`` stores ``E`` as
``dim A x dim B`` and ``beta`` on the quotient basis of ``B (x)_A B``
(see :func:`corings.coring.ext_tensor`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import RingMap
from .bimodule import (DualSpace, TensorPresentation, hom_space, invariants, make_bimodule,
                       regular_bimodule, restrict)
from .coring import (Coring, counit_ring_map, dual_actions, dual_ring, ext_tensor, make_coring,
                     search_full_rank, sweedler_coring)
from .errors import (ExtractionFailed, NotASweedlerCoring, PreconditionFails, ShapeMismatch,
                     SystemRejected, VerificationError)
from .linalg import Matrix, make_rng, random_integers, solve, sparse_kernel, vec
from .verify import (Report, to_ambient, verify_frobenius_extension, verify_frobenius_system,
                     verify_reduced_system)


# ---------------------------------------------------------------------------
# certificates


@dataclass(eq=False)
class ReducedFrobeniusSystem:
    coring: Coring
    gamma: Matrix
    e: tuple
    report: Report

    @property
    def gamma_ambient(self) -> Matrix:
        return self.gamma @ self.coring.tensor.project


@dataclass(eq=False)
class FrobeniusSystem:
    coring: Coring
    pi: Matrix
    e: tuple
    report: Report


@dataclass(eq=False)
class FrobeniusExtensionData:
    ext: RingMap
    E: Matrix
    beta: tuple
    report: Report

    @property
    def tensor(self) -> TensorPresentation:
        return ext_tensor(self.ext)

    @property
    def beta_ambient(self) -> tuple:
        return self.tensor.lift.apply(self.beta)


# search outcomes


@dataclass
class Found:
    value: object


@dataclass
class NotFoundWithinSearch:
    candidates_tried: int
    diagnostics: dict = dc_field(default_factory=dict)


@dataclass
class CertifiedNotFrobenius:
    reason: str


@dataclass
class NoIsoEvidence:
    """No invertible candidate seen; ``certain`` when an obstruction rules one out."""

    max_rank: int
    dim: int
    trials: int
    certain: bool = False
    detail: str = ""


@dataclass
class ImageNotInB:
    witness: int
    value: tuple


def make_reduced_system(C: Coring, gamma: Matrix, e) -> ReducedFrobeniusSystem:
    """Verify and wrap; ``gamma`` may be ambient and is stored on the quotient."""
    rep = verify_reduced_system(C, gamma, e)
    if not rep.passed:
        raise SystemRejected(rep)
    if gamma.cols == C.tensor.ambient_dim:
        gamma = gamma @ C.tensor.lift
    return ReducedFrobeniusSystem(C, gamma, vec(C.field, e), rep)


def make_frobenius_system(C: Coring, pi: Matrix, e) -> FrobeniusSystem:
    rep = verify_frobenius_system(C, pi, e)
    if not rep.passed:
        raise SystemRejected(rep)
    if pi.cols == C.tensor.ambient_dim:
        pi = pi @ C.tensor.lift
    return FrobeniusSystem(C, pi, vec(C.field, e), rep)


def make_extension_data(ext: RingMap, E: Matrix, beta) -> FrobeniusExtensionData:
    T = ext_tensor(ext)
    rep = verify_frobenius_extension(ext, E, beta, T)
    if not rep.passed:
        raise SystemRejected(rep)
    beta = vec(ext.source.field, beta)
    if len(beta) != T.dim:
        beta = T.project_vector(beta)
    return FrobeniusExtensionData(ext, E, beta, rep)


# ---------------------------------------------------------------------------
# operators built from gamma / pi


def _gamma_ops(C: Coring, gamma: Matrix) -> tuple[Matrix, Matrix]:
    """``(I (x) gamma)`` and ``(gamma (x) I)`` as maps from the triple tensor to C."""
    T2, T3, M = C.tensor, C.triple, C.carrier
    ig, gi = [], []
    for w, r in T3.basis_pairs:
        p, q = T2.pair(w)
        ig.append(M.ract(M.basis_vector(p), gamma.apply(T2.embed_basis(q, r))))
        gi.append(M.lact(gamma.column(w), M.basis_vector(r)))
    return Matrix.from_columns(C.field, ig, M.dim), Matrix.from_columns(C.field, gi, M.dim)


def _pi_ops(C: Coring, pi: Matrix) -> tuple[Matrix, Matrix]:
    """``(I (x) pi)`` and ``(pi (x) I)`` as maps from the triple tensor to ``C (x)_A C``."""
    T2, T3, M = C.tensor, C.triple, C.carrier
    ip, pi_ = [], []
    for w, r in T3.basis_pairs:
        p, q = T2.pair(w)
        ip.append(T2.embed(M.basis_vector(p), pi.apply(T2.embed_basis(q, r))))
        pi_.append(T2.embed(pi.column(w), M.basis_vector(r)))
    return Matrix.from_columns(C.field, ip, T2.dim), Matrix.from_columns(C.field, pi_, T2.dim)


def colinearity_residual(C: Coring, gamma: Matrix) -> Matrix:
    """``(I (x) gamma)(Delta (x) I) - (gamma (x) I)(I (x) Delta)``; zero iff gamma is colinear."""
    ig, gi = _gamma_ops(C, gamma)
    return ig @ C.delta_id - gi @ C.id_delta


def pi_from_gamma(C: Coring, gamma: Matrix) -> Matrix:
    """``pi = (I (x) gamma)(Delta (x) I)``; gamma must be bilinear and colinear."""
    if gamma.shape != (C.base.dim, C.tensor.dim):
        raise ShapeMismatch(f"gamma has shape {gamma.shape}")
    bad = _bilinear_failure(C, gamma, C.base.left_mult, C.base.right_mult)
    if bad:
        raise PreconditionFails("gamma_bilinear", *bad)
    ig, gi = _gamma_ops(C, gamma)
    pi = ig @ C.delta_id
    if pi != gi @ C.id_delta:
        raise PreconditionFails("gamma_colinear")
    return pi


def gamma_from_pi(C: Coring, pi: Matrix) -> Matrix:
    """``gamma = eps . pi``; pi must be bilinear and bicolinear."""
    if pi.shape != (C.dim, C.tensor.dim):
        raise ShapeMismatch(f"pi has shape {pi.shape}")
    bad = _bilinear_failure(C, pi, C.carrier.left_act, C.carrier.right_act)
    if bad:
        raise PreconditionFails("pi_bilinear", *bad)
    ip, pi_ = _pi_ops(C, pi)
    mid = C.delta @ pi
    if ip @ C.delta_id != mid:
        raise PreconditionFails("pi_left_colinear")
    if pi_ @ C.id_delta != mid:
        raise PreconditionFails("pi_right_colinear")
    return C.counit @ pi


def _bilinear_failure(C: Coring, F: Matrix, left_mats, right_mats):
    Q = C.tensor.quotient
    for i, (a, b) in enumerate(zip(Q.left_act, left_mats)):
        if F @ a != b @ F:
            return ("left", i)
    for i, (a, b) in enumerate(zip(Q.right_act, right_mats)):
        if F @ a != b @ F:
            return ("right", i)
    return None


# ---------------------------------------------------------------------------
# dual bases and the isomorphisms C -> duals


@dataclass(eq=False)
class DualBases:
    """Finite dual bases read off ``Delta(e) = sum_i e_i (x) ebar_i``.

    ``left[i] = (xi_i, ebar_i)`` with ``xi_i(c) = gamma(c (x) e_i)`` and
    ``c = sum xi_i(c) ebar_i``; ``right[i] = (xibar_i, e_i)`` with
    ``xibar_i(c) = gamma(ebar_i (x) c)`` and ``c = sum e_i xibar_i(c)``.
    """

    left: list
    right: list


def dual_bases(system: ReducedFrobeniusSystem) -> DualBases:
    C, gamma, e = system.coring, system.gamma, system.e
    T2, M = C.tensor, C.carrier
    n = M.dim
    left, right = [], []
    for d, p, q in T2.pure_terms(C.coproduct(e)):
        e_i = tuple(d * x for x in M.basis_vector(p))
        ebar = M.basis_vector(q)
        xi = Matrix.from_columns(C.field, [gamma.apply(T2.embed(M.basis_vector(c), e_i))
                                           for c in range(n)], C.base.dim)
        xibar = Matrix.from_columns(C.field, [gamma.apply(T2.embed(ebar, M.basis_vector(c)))
                                              for c in range(n)], C.base.dim)
        left.append((xi, ebar))
        right.append((xibar, e_i))
    f = C.field
    for c in range(n):
        cv = M.basis_vector(c)
        acc_l = [f.zero] * n
        acc_r = [f.zero] * n
        for (xi, ebar), (xibar, e_i) in zip(left, right):
            acc_l = [x + y for x, y in zip(acc_l, M.lact(xi.column(c), ebar))]
            acc_r = [x + y for x, y in zip(acc_r, M.ract(e_i, xibar.column(c)))]
        if tuple(acc_l) != cv:
            raise VerificationError("left", c, detail="left dual basis does not reconstruct c")
        if tuple(acc_r) != cv:
            raise VerificationError("right", c, detail="right dual basis does not reconstruct c")
    return DualBases(left, right)


@dataclass(eq=False)
class PhiMaps:
    """``phi_l: C -> left dual`` and ``phi_r: C -> right dual`` with inverses, in dual coordinates."""

    phi_l: Matrix
    phi_l_inv: Matrix
    phi_r: Matrix
    phi_r_inv: Matrix


def phi_maps(system: ReducedFrobeniusSystem) -> PhiMaps:
    """``phi_l(c) = gamma(- (x) c)``, ``phi_r(c) = gamma(c (x) -)``; checked to be module isos."""
    C, gamma, e = system.coring, system.gamma, system.e
    T2, M = C.tensor, C.carrier
    n = M.dim
    DL, DR = dual_ring(C, "left"), dual_ring(C, "right")
    if DL.dim != n or DR.dim != n:
        raise VerificationError(DL.dim, DR.dim, detail="dual dimension differs from dim C")
    de = C.coproduct(e)
    cols_l, cols_r = [], []
    for c in range(n):
        cv = M.basis_vector(c)
        Fl = Matrix.from_columns(C.field, [gamma.apply(T2.embed(M.basis_vector(x), cv))
                                           for x in range(n)], C.base.dim)
        Fr = Matrix.from_columns(C.field, [gamma.apply(T2.embed(cv, M.basis_vector(x)))
                                           for x in range(n)], C.base.dim)
        cols_l.append(DL.coords(Fl))
        cols_r.append(DR.coords(Fr))
    phi_l = Matrix.from_columns(C.field, cols_l, n)
    phi_r = Matrix.from_columns(C.field, cols_r, n)
    inv_l = Matrix.from_columns(C.field, [C.right_contract(F).apply(de)
                                          for F in DL.space.basis], n)
    inv_r = Matrix.from_columns(C.field, [C.left_contract(F).apply(de)
                                          for F in DR.space.basis], n)
    eye = Matrix.identity(C.field, n)
    for name, phi, inv in (("left", phi_l, inv_l), ("right", phi_r, inv_r)):
        if inv @ phi != eye or phi @ inv != eye:
            raise VerificationError(name, detail="phi and its explicit inverse do not compose to 1")
    left_mod, right_mod = dual_actions(C)
    for i, (a, b) in enumerate(zip(left_mod.left_act, DL.algebra.left_mult)):
        if phi_l @ a != b @ phi_l:
            raise VerificationError("left", i, detail="phi_l is not left linear over the dual")
    for i, (a, b) in enumerate(zip(right_mod.right_act, DR.algebra.right_mult)):
        if phi_r @ a != b @ phi_r:
            raise VerificationError("right", i, detail="phi_r is not right linear over the dual")
    return PhiMaps(phi_l, inv_l, phi_r, inv_r)


# ---------------------------------------------------------------------------
# Frobenius extensions


def _hom_dual_bimodule(ext: RingMap):
    """``Hom_A(B, A)`` (right A-linear maps) as an (A, B)-bimodule plus its DualSpace."""
    A, B = ext.source, ext.target
    HB = DualSpace(restrict(regular_bimodule(B), right=ext), "right")
    left = [Matrix.from_columns(A.field, [HB.coords(A.left_mult[a] @ F) for F in HB.basis], HB.dim)
            for a in range(A.dim)]
    right = [Matrix.from_columns(A.field, [HB.coords(F @ B.left_mult[b]) for F in HB.basis], HB.dim)
             for b in range(B.dim)]
    return make_bimodule(A, B, left, right), HB


def _normalize(E: Matrix, beta: tuple) -> tuple[Matrix, tuple]:
    lead = next(x for x in E.entries if x)
    inv = E.field.one / lead
    return E.scale(inv), tuple(lead * x for x in beta)


def solve_beta(ext: RingMap, E: Matrix) -> tuple | None:
    """The element beta of ``B (x)_A B`` dual to E, or None if E admits none."""
    B = ext.target
    T = ext_tensor(ext)
    n = B.dim
    cols = []
    for p, q in T.basis_pairs:
        ep = B.basis_vector(p)
        img = [B.mul(ep, ext.matrix.apply(E.apply(B.mu[q][b]))) for b in range(n)]
        cols.append(Matrix.from_columns(B.field, img, n).entries)
    Psi = Matrix.from_columns(B.field, cols, n * n)
    sol = solve(Psi, Matrix.identity(B.field, n).entries)
    return None if sol is None else sol.x


def find_frobenius_extension_data(ext: RingMap, trials: int = 20, seed: int = 0,
                                  bound: int = 2 ** 16):
    """Search for ``(E, beta)`` making ``A -> B`` a Frobenius extension.

    Looks for an invertible (A, B)-bimodule map ``B -> Hom_A(B, A)`` among
    the hom basis and then random integer combinations; E is its value at
    1.  Returns ``Found(FrobeniusExtensionData)`` or ``NoIsoEvidence``.
    """
    B = ext.target
    hb_mod, HB = _hom_dual_bimodule(ext)
    if HB.dim != B.dim:
        return NoIsoEvidence(0, B.dim, 0, certain=True,
                             detail=f"Hom_A(B, A) has dimension {HB.dim} != {B.dim}")
    thetas = hom_space(restrict(regular_bimodule(B), left=ext), hb_mod)
    if not thetas:
        return NoIsoEvidence(0, B.dim, 0, certain=True, detail="no bimodule maps B -> Hom_A(B, A)")
    theta, best = search_full_rank(thetas, B.dim, trials, seed, bound)
    if theta is None:
        return NoIsoEvidence(best, B.dim, trials,
                             detail=f"hom space of dimension {len(thetas)}; best rank {best}")
    E = HB.functional(theta.apply(B.unit))
    beta = solve_beta(ext, E)
    if beta is None:
        raise ExtractionFailed(detail="invertible theta but no dual element beta")
    E, beta = _normalize(E, beta)
    try:
        return Found(make_extension_data(ext, E, beta))
    except SystemRejected as err:
        raise ExtractionFailed(detail=f"extracted data failed verification: {err}") from err


def frobenius_functional_space(ext: RingMap) -> list[Matrix]:
    """(A, A)-bilinear maps ``B -> A``: the space where E must live."""
    reg = regular_bimodule(ext.target)
    return hom_space(restrict(reg, left=ext, right=ext), regular_bimodule(ext.source))


def coring_from_extension(data: FrobeniusExtensionData) -> tuple[Coring, FrobeniusSystem]:
    """B as an A-coring: ``Delta(b) = beta b``, counit E; Frobenius via ``(mult, 1_B)``."""
    ext, E = data.ext, data.E
    A, B = ext.source, ext.target
    n = B.dim
    f = A.field
    carrier = restrict(regular_bimodule(B), left=ext, right=ext)
    terms = data.tensor.pure_terms(data.beta)
    raw_cols = []
    for b in range(n):
        acc = [f.zero] * (n * n)
        for d, p, q in terms:
            for s, x in enumerate(B.mu[q][b]):
                if x:
                    acc[p * n + s] += d * x
        raw_cols.append(tuple(acc))
    C = make_coring(A, carrier, Matrix.from_columns(f, raw_cols, n * n), E)
    pi = Matrix.from_columns(f, [B.mu[p][q] for p, q in C.tensor.basis_pairs], n)
    return C, make_frobenius_system(C, pi, B.unit)


def sweedler_frobenius_system(data: FrobeniusExtensionData) -> FrobeniusSystem:
    """Frobenius system on the Sweedler coring of a Frobenius extension ``B -> A``.

    ``pi(a (x) a' (x) a'' (x) a''') = a (x) E(a' a'') a'''`` and ``e = beta``.
    """
    ext, E = data.ext, data.E
    A = ext.target
    C = sweedler_coring(ext)
    Tsw = data.tensor
    n = C.dim
    fE = [[ext.matrix.apply(E.apply(A.mu[q][r])) for r in range(A.dim)] for q in range(A.dim)]
    cols = []
    for u in range(n):
        p, q = Tsw.pair(u)
        ep = A.basis_vector(p)
        for v in range(n):
            r, s = Tsw.pair(v)
            cols.append(Tsw.embed(ep, A.mul(fE[q][r], A.basis_vector(s))))
    pi_amb = Matrix.from_columns(A.field, cols, n)
    return make_frobenius_system(C, pi_amb, data.beta)


def extension_from_sweedler(C: Coring, gamma: Matrix, e):
    """Frobenius data on ``B -> A`` from a reduced system on its Sweedler coring.

    ``E(a) = gamma((1 (x) a) (x) (1 (x) 1))`` must take values in the image of
    B; otherwise ``ImageNotInB`` names the first offending basis element.  That
    test runs on the raw ``gamma`` before the system itself is verified.
    """
    if C.sweedler_of is None:
        raise NotASweedlerCoring("coring was not built as a Sweedler coring")
    ext = C.sweedler_of
    B, A = ext.source, ext.target
    Tsw = ext_tensor(ext)
    one = Tsw.embed(A.unit, A.unit)
    G, _ = to_ambient(C.tensor, gamma)
    E_cols = []
    for a in range(A.dim):
        u = Tsw.embed(A.unit, A.basis_vector(a))
        val = G.apply(tuple(x * y for x in u for y in one))
        sol = solve(ext.matrix, val)
        if sol is None:
            return ImageNotInB(a, val)
        E_cols.append(sol.x)
    system = make_reduced_system(C, gamma, e)
    E = Matrix.from_columns(A.field, E_cols, B.dim)
    try:
        return Found(make_extension_data(ext, E, system.e))
    except SystemRejected as err:
        raise ExtractionFailed(detail=f"extracted data failed verification: {err}") from err


def sweedler_identification(ext: RingMap) -> Matrix:
    """Matrix of ``gamma -> [a -> gamma(1 a 1 1)]`` from bilinear maps ``C (x)_A C -> A``
    to (B, B)-bilinear endomorphisms of A, for C the Sweedler coring of ``B -> A``.

    Both hom spaces are computed independently.  The explicit inverse
    ``E -> [a a' a'' a''' -> a E(a' a'') a''']`` is built and checked to be
    well defined on the quotient and a right inverse; with equal dimensions
    this makes the map bijective.
    """
    A = ext.target
    f = A.field
    C = sweedler_coring(ext)
    T2, Tsw = C.tensor, ext_tensor(ext)
    H1 = hom_space(T2.quotient, regular_bimodule(A))
    regBB = restrict(regular_bimodule(A), left=ext, right=ext)
    H2 = hom_space(regBB, regBB)
    if len(H1) != len(H2):
        raise VerificationError(len(H1), len(H2), detail="hom spaces have different dimensions")
    one = Tsw.embed(A.unit, A.unit)
    probes = [T2.embed(Tsw.embed(A.unit, A.basis_vector(a)), one) for a in range(A.dim)]
    H2flat = Matrix.from_columns(f, [E.entries for E in H2], A.dim * A.dim)

    def coords(E: Matrix) -> tuple:
        sol = solve(H2flat, E.entries)
        if sol is None:
            raise VerificationError(detail="image is not (B, B)-bilinear")
        return sol.x

    phi = Matrix.from_columns(f, [coords(Matrix.from_columns(f, [g.apply(p) for p in probes], A.dim))
                                  for g in H1], len(H2))
    n = C.dim
    for k, E in enumerate(H2):
        cols = []
        for u in range(n):
            p, q = Tsw.pair(u)
            for v in range(n):
                r, s = Tsw.pair(v)
                cols.append(A.mul(A.mul(A.basis_vector(p), E.apply(A.mu[q][r])), A.basis_vector(s)))
        g_amb = Matrix.from_columns(f, cols, A.dim)
        g = g_amb @ T2.lift
        if g @ T2.project != g_amb:
            raise VerificationError(k, detail="inverse image is not balanced")
        back = Matrix.from_columns(f, [g.apply(p) for p in probes], A.dim)
        if coords(back) != Matrix.identity(f, len(H2)).column(k):
            raise VerificationError(k, detail="explicit inverse is not a right inverse")
    return phi


# ---------------------------------------------------------------------------
# searching for reduced systems


@dataclass
class SearchConfig:
    """Candidate order: user candidates, grouplike hints, invariant basis, integer combinations.

    Combinations with coefficients in ``[-coeff_bound, coeff_bound]`` are
    enumerated exhaustively when there are at most ``enumeration_limit`` of
    them, otherwise ``trials`` are sampled with ``seed``.
    """

    seed: int = 0
    trials: int = 64
    coeff_bound: int = 2
    enumeration_limit: int = 4096
    e_candidates: tuple = ()
    evidence: bool = True
    evidence_trials: int = 20
    evidence_bound: int = 2 ** 16


def gamma_space(C: Coring) -> list[Matrix]:
    """Basis of the bilinear colinear maps ``C (x)_A C -> A``."""
    homs = hom_space(C.tensor.quotient, regular_bimodule(C.base))
    if not homs:
        return []
    residuals = [colinearity_residual(C, g).entries for g in homs]
    m = len(homs)
    rows = []
    for k in range(len(residuals[0])):
        r = {j: residuals[j][k] for j in range(m) if residuals[j][k]}
        if r:
            rows.append(r)
    kern = sparse_kernel(C.field, rows, m)
    f = C.field
    out = []
    for t in kern:
        acc = Matrix.zeros(f, C.base.dim, C.tensor.dim)
        for c, g in zip(t, homs):
            if c:
                acc = acc + g.scale(c)
        out.append(acc)
    return out


def _candidates(C: Coring, inv: list[tuple], cfg: SearchConfig):
    f = C.field
    for e in cfg.e_candidates:
        yield "user", vec(f, e)
    for h in C.grouplike_hints:
        yield "grouplike", vec(f, h)
    for v in inv:
        yield "invariant_basis", v
    d = len(inv)
    if d == 0:
        return
    b = cfg.coeff_bound
    if (2 * b + 1) ** d <= cfg.enumeration_limit:
        coeff_iter = itertools.product(range(-b, b + 1), repeat=d)
    else:
        rng = make_rng(cfg.seed)
        coeff_iter = (random_integers(rng, d, b) for _ in range(cfg.trials))
    for coeffs in coeff_iter:
        if not any(coeffs):
            continue
        acc = [f.zero] * C.dim
        for c, v in zip(coeffs, inv):
            if c:
                acc = [x + f(c) * y for x, y in zip(acc, v)]
        yield "combination", tuple(acc)


def _projective_key(e: tuple):
    lead = next((x for x in e if x), None)
    if lead is None:
        return None
    return tuple(x / lead for x in e)


def _solve_gamma(C: Coring, basis: list[Matrix], e: tuple) -> Matrix | None:
    """Some gamma in span(basis) with ``gamma(c (x) e) = gamma(e (x) c) = eps(c)``."""
    T2, M = C.tensor, C.carrier
    f = C.field
    rows_lhs, rhs = [], []
    for c in range(M.dim):
        cv = M.basis_vector(c)
        right = T2.embed(cv, e)
        left = T2.embed(e, cv)
        vals_r = [g.apply(right) for g in basis]
        vals_l = [g.apply(left) for g in basis]
        eps = C.counit.column(c)
        for a in range(C.base.dim):
            rows_lhs.append([v[a] for v in vals_r])
            rhs.append(eps[a])
            rows_lhs.append([v[a] for v in vals_l])
            rhs.append(eps[a])
    sol = solve(Matrix(f, rows_lhs, len(basis)), rhs)
    if sol is None:
        return None
    acc = Matrix.zeros(f, C.base.dim, T2.dim)
    for t, g in zip(sol.x, basis):
        if t:
            acc = acc + g.scale(t)
    return acc


def find_reduced_system(C: Coring, config: SearchConfig | None = None):
    """Search for a reduced Frobenius system.

    Returns ``Found(ReducedFrobeniusSystem)``, ``CertifiedNotFrobenius`` when
    a dimension or vanishing obstruction applies, or ``NotFoundWithinSearch``
    with diagnostics (candidates tried and module-isomorphism evidence).
    """
    cfg = config or SearchConfig()
    Gamma = gamma_space(C)
    inv = invariants(C.carrier)
    dl = DualSpace(C.carrier, "left").dim
    dr = DualSpace(C.carrier, "right").dim
    if dl != C.dim:
        return CertifiedNotFrobenius(f"left dual has dimension {dl} != dim C = {C.dim}")
    if dr != C.dim:
        return CertifiedNotFrobenius(f"right dual has dimension {dr} != dim C = {C.dim}")
    if not Gamma:
        return CertifiedNotFrobenius("no nonzero bilinear colinear map C (x)_A C -> A")
    if not inv:
        return CertifiedNotFrobenius("C has no nonzero invariant elements")
    tried = 0
    seen = set()
    for source, e in _candidates(C, inv, cfg):
        key = _projective_key(e)
        if key is None or key in seen:
            continue
        seen.add(key)
        if any(C.carrier.left_act[a].apply(e) != C.carrier.right_act[a].apply(e)
               for a in range(C.base.dim)):
            continue
        tried += 1
        gamma = _solve_gamma(C, Gamma, e)
        if gamma is None:
            continue
        lead = next(x for x in e if x)
        e_n = tuple(x / lead for x in e)
        gamma_n = gamma.scale(lead)
        try:
            return Found(make_reduced_system(C, gamma_n, e_n))
        except SystemRejected as err:
            raise ExtractionFailed(detail=f"solver produced a rejected system: {err}") from err
    diag = {"candidates_tried": tried, "gamma_space_dim": len(Gamma), "invariants_dim": len(inv)}
    if cfg.evidence:
        diag.update(reduced_system_evidence(C, cfg.evidence_trials, cfg.seed, cfg.evidence_bound))
    return NotFoundWithinSearch(tried, diag)


def reduced_system_evidence(C: Coring, trials: int, seed: int, bound: int) -> dict:
    """Evidence from ``iota: A -> S`` (S the opposite left dual) and ``C ~ S`` as (A, S)-bimodules."""
    iota = counit_ring_map(C)
    S = iota.target
    out: dict = {}
    ext = find_frobenius_extension_data(iota, trials, seed, bound)
    if isinstance(ext, Found):
        out["extension"] = "frobenius"
    else:
        out["extension"] = "certain_no" if ext.certain else "no_iso_found"
        out["extension_max_rank"] = ext.max_rank
    D = dual_ring(C, "left")
    left_mod, _ = dual_actions(C)
    # C as (A, S)-bimodule: c . s = s -> c (left dual action); S via iota on the left
    C_AS = make_bimodule(C.base, S, C.carrier.left_act, left_mod.left_act)
    S_AS = make_bimodule(C.base, S, [S.left_mult_by(iota.matrix.column(a)) for a in range(C.base.dim)],
                         S.right_mult)
    homs = hom_space(C_AS, S_AS)
    m, best = (None, 0) if not homs else search_full_rank(homs, C.dim, trials, seed, bound)
    out["module_iso_hom_dim"] = len(homs)
    out["module_iso_max_rank"] = best
    out["module_iso_found"] = m is not None
    out["dual_dim"] = D.dim
    return out
