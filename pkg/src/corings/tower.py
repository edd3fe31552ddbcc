"""Ring structure on a Frobenius coring and the tower of Frobenius extensions.

A Frobenius system ``(pi, e)`` on an A-coring C makes C a ring with product
``pi`` and unit ``e``; ``a -> a e`` is then a Frobenius extension
``A -> C`` with homomorphism the counit and element ``Delta(e)``.  Taking
Sweedler corings repeatedly gives ``A -> C -> C (x)_A C -> ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, RingMap, check_algebra, check_ring_map, make_algebra
from .coring import Coring, check_coring, ext_tensor
from .errors import CoringError, DimensionBudgetExceeded, VerificationError
from .frobenius import (FrobeniusExtensionData, FrobeniusSystem, coring_from_extension,
                        make_extension_data, sweedler_frobenius_system)
from .linalg import Matrix, rank
from .verify import verify_frobenius_extension, verify_frobenius_system


def ring_from_coring(system: FrobeniusSystem) -> Algebra:
    """C as an algebra: ``c c' = pi(c (x) c')`` with unit e.

    Also checks that ``gamma(c (x) c'_(1)) c'_(2)`` and ``c_(1) gamma(c_(2) (x) c')``
    (``gamma = eps . pi``) give the same product on all basis pairs.
    """
    C, pi, e = system.coring, system.pi, system.e
    T2, M = C.tensor, C.carrier
    n = M.dim
    f = C.field
    mu = [[pi.apply(T2.embed_basis(i, j)) for j in range(n)] for i in range(n)]
    alg = make_algebra(f, n, mu, e, tuple(f"c{i}" for i in range(n)))
    gamma = C.counit @ pi
    for i in range(n):
        ci = M.basis_vector(i)
        d_i = T2.pure_terms(C.delta.column(i))
        for j in range(n):
            cj = M.basis_vector(j)
            a = [f.zero] * n
            for d, p, q in T2.pure_terms(C.delta.column(j)):
                v = M.lact(gamma.apply(T2.embed(ci, M.basis_vector(p))), M.basis_vector(q))
                a = [x + d * y for x, y in zip(a, v)]
            b = [f.zero] * n
            for d, p, q in d_i:
                v = M.ract(M.basis_vector(p), gamma.apply(T2.embed(M.basis_vector(q), cj)))
                b = [x + d * y for x, y in zip(b, v)]
            if tuple(a) != alg.mu[i][j] or tuple(b) != alg.mu[i][j]:
                raise VerificationError(i, j, detail="product formulas through gamma disagree with pi")
    return alg


def theta_extension(system: FrobeniusSystem, ring: Algebra | None = None
                    ) -> tuple[RingMap, FrobeniusExtensionData]:
    """``Theta: A -> C, a -> a e`` with Frobenius data ``(eps, Delta(e))``.

    Checks that the A-actions induced through Theta are the carrier actions
    and that ``c Delta(e) = Delta(e) c = Delta(c)`` for all basis c.
    """
    C, e = system.coring, system.e
    A, M, T2 = C.base, C.carrier, C.tensor
    R = ring if ring is not None else ring_from_coring(system)
    theta = check_ring_map(Matrix.from_columns(C.field, [M.lact(A.basis_vector(a), e)
                                                         for a in range(A.dim)], R.dim), A, R)
    for a in range(A.dim):
        ta = theta.matrix.column(a)
        if R.left_mult_by(ta) != M.left_act[a]:
            raise VerificationError("left", a, detail="action through Theta differs from carrier")
        if R.right_mult_by(ta) != M.right_act[a]:
            raise VerificationError("right", a, detail="action through Theta differs from carrier")
    de = C.coproduct(e)
    terms = T2.pure_terms(de)
    f = C.field
    for c in range(M.dim):
        cv = M.basis_vector(c)
        left = [f.zero] * T2.dim
        right = [f.zero] * T2.dim
        for d, p, q in terms:
            u = T2.embed(R.mul(cv, M.basis_vector(p)), M.basis_vector(q))
            v = T2.embed(M.basis_vector(p), R.mul(M.basis_vector(q), cv))
            left = [x + d * y for x, y in zip(left, u)]
            right = [x + d * y for x, y in zip(right, v)]
        dc = C.delta.column(c)
        if tuple(left) != dc or tuple(right) != dc:
            raise VerificationError(c, detail="c Delta(e) = Delta(e) c = Delta(c) fails")
    beta = T2.lift.apply(de)  # ambient; re-projected into B (x)_A B of Theta
    return theta, make_extension_data(theta, C.counit, beta)


def _change_tensor(src, dst) -> Matrix:
    """Coordinate change between two presentations of the same tensor product."""
    return dst.project @ src.lift


def induced_coring_coincides(system: FrobeniusSystem) -> bool:
    """Does the coring built from ``theta_extension`` reproduce C exactly?"""
    C = system.coring
    _, data = theta_extension(system)
    Cx, _ = coring_from_extension(data)
    if Cx.counit != C.counit:
        return False
    return _change_tensor(Cx.tensor, C.tensor) @ Cx.delta == C.delta


# ---------------------------------------------------------------------------
# strongly coseparable corings and indices


@dataclass(frozen=True)
class CoseparabilityIndex:
    u: object
    v: object

    @property
    def ratio(self):
        return self.u / self.v

    def pair(self) -> tuple:
        return (self.u, self.v)


@dataclass
class NotStronglyCoseparable:
    witness: str
    value: tuple


def _scalar_multiple(x: tuple, t: tuple):
    """lambda with ``x = lambda t`` or None."""
    k = next((i for i, y in enumerate(t) if y), None)
    if k is None:
        return None
    lam = x[k] / t[k]
    return lam if all(a == lam * b for a, b in zip(x, t)) else None


def strongly_coseparable(system: FrobeniusSystem):
    """``pi(Delta(e)) = u e`` and ``eps(e) = v 1_A`` with u, v nonzero."""
    C, pi, e = system.coring, system.pi, system.e
    pde = pi.apply(C.coproduct(e))
    u = _scalar_multiple(pde, e)
    if u is None or not u:
        return NotStronglyCoseparable("pi(Delta(e)) is not a nonzero multiple of e", pde)
    ee = C.eps(e)
    v = _scalar_multiple(ee, C.base.unit)
    if v is None or not v:
        return NotStronglyCoseparable("eps(e) is not a nonzero multiple of 1", ee)
    return CoseparabilityIndex(u, v)


# ---------------------------------------------------------------------------
# tower


@dataclass
class TowerConfig:
    levels: int = 3
    budget: int = 4096
    check_isos: bool = True


@dataclass(eq=False)
class TowerLevel:
    """Level k: ``C^{k-1} -> C^k`` with its coring and Frobenius data."""

    k: int
    ring: Algebra
    inclusion: RingMap
    ext_data: FrobeniusExtensionData
    coring: Coring
    system: FrobeniusSystem
    index: CoseparabilityIndex | None
    gates: dict = dc_field(default_factory=dict)
    extra: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.ring.dim

    @property
    def verified(self) -> bool:
        return all(self.gates.values()) and all(v for v in self.extra.values() if isinstance(v, bool))

    def to_json(self) -> dict:
        idx = None
        if self.index is not None:
            f = self.ring.field
            idx = [f.format(self.index.u), f.format(self.index.v)]
        return {"k": self.k, "dim": self.dim, "base_dim": self.inclusion.source.dim,
                "verified": dict(self.gates), "checks": dict(self.extra), "index": idx}


def _gate(fn) -> bool:
    try:
        out = fn()
    except CoringError:
        return False
    return out is None or bool(out)


def level_gates(level: TowerLevel) -> dict:
    """Re-run the five independent checks of a tower level."""
    C, sysm, data = level.coring, level.system, level.ext_data
    return {
        "coring_axioms": _gate(lambda: check_coring(C)),
        "frobenius_system": verify_frobenius_system(C, sysm.pi, sysm.e).passed,
        "ring_axioms": _gate(lambda: check_algebra(level.ring)),
        "ring_map": _gate(lambda: check_ring_map(level.inclusion.matrix, level.inclusion.source,
                                                 level.ring)),
        "frobenius_extension": verify_frobenius_extension(data.ext, data.E, data.beta,
                                                          data.tensor).passed,
    }


def _make_level(k: int, system: FrobeniusSystem) -> TowerLevel:
    ring = ring_from_coring(system)
    theta, data = theta_extension(system, ring)
    idx = strongly_coseparable(system)
    lvl = TowerLevel(k, ring, theta, data, system.coring, system,
                     idx if isinstance(idx, CoseparabilityIndex) else None)
    lvl.gates = level_gates(lvl)
    return lvl


def build_tower(system: FrobeniusSystem, config: TowerConfig | None = None) -> list[TowerLevel]:
    """Levels 1..n; level 1 is C itself, level k is the Sweedler coring of ``Theta_{k-1}``.

    Raises ``DimensionBudgetExceeded`` before building a level whose ring
    would exceed ``config.budget``.
    """
    cfg = config or TowerConfig()
    if cfg.levels < 1:
        raise ValueError("levels must be >= 1")
    C = system.coring
    if C.dim > cfg.budget:
        raise DimensionBudgetExceeded(1, C.dim, cfg.budget)
    levels = [_make_level(1, system)]
    for k in range(2, cfg.levels + 1):
        prev = levels[-1]
        base_dim = prev.inclusion.source.dim
        estimate = prev.dim * prev.dim // max(base_dim, 1)
        if estimate > cfg.budget:
            raise DimensionBudgetExceeded(k, estimate, cfg.budget)
        dim_k = ext_tensor(prev.inclusion).dim
        if dim_k > cfg.budget:
            raise DimensionBudgetExceeded(k, dim_k, cfg.budget)
        sysk = sweedler_frobenius_system(prev.ext_data)
        levels.append(_make_level(k, sysk))
    if cfg.check_isos:
        tower_iso_checks(levels)
    return levels


def _triple_iso(first: TowerLevel, second: TowerLevel) -> Matrix:
    """``(C (x) C) (x)_C (C (x) C) -> C (x)_A C (x)_A C``, ``(c1 c2)(c3 c4) -> c1 pi(c2 c3) c4``.

    Returned on the quotient basis of ``C^2 (x)_{C^1} C^2``, after checking it
    vanishes on every balancing relation and is bijective.
    """
    C, pi = first.coring, first.system.pi
    M, T2 = C.carrier, C.tensor
    T_sw = ext_tensor(first.inclusion)
    T4 = ext_tensor(second.inclusion)
    f = C.field
    n2 = T_sw.dim

    def image(u: int, v: int) -> tuple:
        p, q = T_sw.pair(u)
        r, s = T_sw.pair(v)
        mid = pi.apply(T2.embed_basis(q, r))
        return C.embed3(M.basis_vector(p), mid, M.basis_vector(s))

    amb = Matrix.from_columns(f, [image(u, v) for u in range(n2) for v in range(n2)], C.triple.dim)
    iso = Matrix.from_columns(f, [image(u, v) for u, v in T4.basis_pairs], C.triple.dim)
    if amb != iso @ T4.project:
        raise VerificationError(detail="tensor identification is not balanced")
    if iso.rows != iso.cols or rank(iso) != iso.rows:
        raise VerificationError(iso.rows, iso.cols, detail="tensor identification is not bijective")
    return iso


def tower_iso_checks(levels: list[TowerLevel]) -> None:
    """Fill ``extra`` with the explicit identifications at levels 2 and 3."""
    if len(levels) < 2:
        return
    L1, L2 = levels[0], levels[1]
    C, e = L1.coring, L1.system.e
    T_sw = ext_tensor(L1.inclusion)  # C (x)_A C, level-2 coordinates
    # Theta_2 is the coproduct of C
    L2.extra["inclusion_is_coproduct"] = _change_tensor(C.tensor, T_sw) @ C.delta == L2.inclusion.matrix
    # homomorphism E_2 is pi
    L2.extra["homomorphism_is_pi"] = L2.ext_data.E == L1.system.pi @ _change_tensor(T_sw, C.tensor)
    # product (c c')(c'' c''') = c gamma(c' c'') c'''
    gamma = C.counit @ L1.system.pi
    M = C.carrier
    ok = True
    for u in range(T_sw.dim):
        p, q = T_sw.pair(u)
        for v in range(T_sw.dim):
            r, s = T_sw.pair(v)
            g = gamma.apply(C.tensor.embed_basis(q, r))
            want = T_sw.embed(M.basis_vector(p), M.lact(g, M.basis_vector(s)))
            if L2.ring.mu[u][v] != want:
                ok = False
                break
        if not ok:
            break
    L2.extra["product_formula"] = ok
    L2.extra["unit_is_coproduct_of_e"] = L2.ring.unit == T_sw.project_vector(C.tensor.lift.apply(
        C.coproduct(e)))
    iso = _triple_iso(L1, L2)
    # Frobenius element of C -> C (x) C is e_(1) (x) e (x) e_(2)
    f = C.field
    want = [f.zero] * C.triple.dim
    for d, p, q in C.tensor.pure_terms(C.coproduct(e)):
        v = C.embed3(M.basis_vector(p), e, M.basis_vector(q))
        want = [x + d * y for x, y in zip(want, v)]
    L2.extra["element_is_e1_e_e2"] = iso.apply(L2.ext_data.beta) == tuple(want)
    if len(levels) < 3:
        return
    L3 = levels[2]
    L3.extra["carrier_is_triple_tensor"] = iso.rows == L3.dim
    # Theta_3 corresponds to c (x) c' -> c (x) e (x) c'
    ok = True
    for w in range(T_sw.dim):
        p, q = T_sw.pair(w)
        target = C.embed3(M.basis_vector(p), e, M.basis_vector(q))
        if iso.apply(L3.inclusion.matrix.column(w)) != target:
            ok = False
            break
    L3.extra["inclusion_is_I_theta_I"] = ok
    for lvl in levels[3:]:
        prev = levels[lvl.k - 2]
        base = prev.inclusion.source.dim
        lvl.extra["dim_ratio"] = f"{lvl.dim}/{prev.dim}"
        lvl.extra["free_dimension_count"] = lvl.dim * base == prev.dim * prev.dim


@dataclass
class IndexProfile:
    indices: list
    alternates: bool

    def ratios(self) -> list:
        return [i.ratio for i in self.indices]


def tower_index_profile(levels: list[TowerLevel]):
    """Per-level indices; odd levels should carry (u, v) and even levels (v, u)."""
    if not levels:
        return IndexProfile([], True)
    first = strongly_coseparable(levels[0].system)
    if isinstance(first, NotStronglyCoseparable):
        return first
    out = []
    alternates = True
    for lvl in levels:
        idx = strongly_coseparable(lvl.system)
        if isinstance(idx, NotStronglyCoseparable):
            return idx
        out.append(idx)
        want = (first.u, first.v) if lvl.k % 2 == 1 else (first.v, first.u)
        alternates = alternates and idx.pair() == want
    return IndexProfile(out, alternates)
