"""Corings: coproduct and counit with machine-checked axioms, dual rings, co-Frobenius evidence.

Coordinates: the coproduct is stored against the quotient basis of
``C (x)_A C`` (``coring.tensor``).  Iterated tensors are left-associated;
``coring.triple`` presents ``(C (x)_A C) (x)_A C``.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from functools import cached_property

from .algebra import Algebra, RingMap, check_ring_map, ground_algebra, make_algebra, opposite
from .bimodule import (Bimodule, DualSpace, TensorPresentation, hom_space, make_bimodule,
                       regular_bimodule, restrict, tensor_over)
from .errors import CounitLawFails, NotBimoduleMap, NotCoassociative, ShapeMismatch
from .linalg import Matrix, lincomb, make_rng, random_integers, rank


class Coring:
    """An A-coring.  Construct with :func:`make_coring` (or the named constructors)."""

    def __init__(self, base: Algebra, carrier: Bimodule, tensor: TensorPresentation,
                 delta: Matrix, counit: Matrix, sweedler_of: RingMap | None = None,
                 grouplike_hints: tuple = ()):
        self.base = base
        self.carrier = carrier
        self.tensor = tensor
        self.delta = delta
        self.counit = counit
        self.sweedler_of = sweedler_of
        self.grouplike_hints = grouplike_hints

    @property
    def field(self):
        return self.base.field

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def basis_vector(self, i) -> tuple:
        return self.carrier.basis_vector(i)

    def coproduct(self, c) -> tuple:
        return self.delta.apply(c)

    def eps(self, c) -> tuple:
        return self.counit.apply(c)

    @cached_property
    def triple(self) -> TensorPresentation:
        return tensor_over(self.tensor.quotient, self.carrier)

    def embed3(self, u, v, w) -> tuple:
        """Class of ``u (x) v (x) w`` in the left-associated triple tensor."""
        return self.triple.embed(self.tensor.embed(u, v), w)

    # maps out of C (x)_A C built from a one-sided functional F: C -> A

    def right_contract(self, F: Matrix) -> Matrix:
        """``c (x) c' -> c F(c')`` (F left A-linear)."""
        C = self.carrier
        cols = [C.ract(C.basis_vector(p), F.column(q)) for p, q in self.tensor.basis_pairs]
        return Matrix.from_columns(self.field, cols, C.dim)

    def left_contract(self, F: Matrix) -> Matrix:
        """``c (x) c' -> F(c) c'`` (F right A-linear)."""
        C = self.carrier
        cols = [C.lact(F.column(p), C.basis_vector(q)) for p, q in self.tensor.basis_pairs]
        return Matrix.from_columns(self.field, cols, C.dim)

    @cached_property
    def delta_id(self) -> Matrix:
        """``Delta (x) I`` from ``C (x)_A C`` to the triple tensor."""
        T3 = self.triple
        cols = [T3.embed(self.delta.column(p), self.basis_vector(q))
                for p, q in self.tensor.basis_pairs]
        return Matrix.from_columns(self.field, cols, T3.dim)

    @cached_property
    def id_delta(self) -> Matrix:
        """``I (x) Delta`` from ``C (x)_A C`` to the triple tensor."""
        T2, T3 = self.tensor, self.triple
        f = self.field
        cols = []
        for p, q in T2.basis_pairs:
            acc = [f.zero] * T3.dim
            for c, s, t in T2.pure_terms(self.delta.column(q)):
                part = T3.embed(T2.embed_basis(p, s), self.basis_vector(t))
                for k, x in enumerate(part):
                    if x:
                        acc[k] += c * x
            cols.append(tuple(acc))
        return Matrix.from_columns(f, cols, T3.dim)

    def __repr__(self):
        return f"Coring(base dim={self.base.dim}, dim={self.dim})"


def make_coring(base: Algebra, carrier: Bimodule, delta_raw: Matrix, counit: Matrix,
                sweedler_of: RingMap | None = None, grouplike_hints: tuple = (),
                tensor: TensorPresentation | None = None) -> Coring:
    """Project the raw coproduct into ``C (x)_A C`` and verify every coring axiom.

    ``delta_raw`` maps C into the plain tensor square (shape ``dim C**2 x dim C``).
    Raises ``NotBimoduleMap``, ``CounitLawFails(side, i)`` or ``NotCoassociative(i)``.
    """
    if carrier.left_ring != base or carrier.right_ring != base:
        raise ShapeMismatch("carrier must be a bimodule over the base algebra on both sides")
    n = carrier.dim
    if delta_raw.shape != (n * n, n):
        raise ShapeMismatch(f"coproduct_raw has shape {delta_raw.shape}, expected {(n * n, n)}")
    if counit.shape != (base.dim, n):
        raise ShapeMismatch(f"counit has shape {counit.shape}, expected {(base.dim, n)}")
    T2 = tensor if tensor is not None else tensor_over(carrier, carrier)
    delta = Matrix.from_columns(base.field, [T2.project_vector(c) for c in delta_raw.columns()], T2.dim)
    C = Coring(base, carrier, T2, delta, counit, sweedler_of, grouplike_hints)
    check_coring(C)
    return C


def check_coring(C: Coring) -> None:
    T2, A, M = C.tensor, C.base, C.carrier
    for side, acts_c, acts_t in (("left", M.left_act, T2.quotient.left_act),
                                 ("right", M.right_act, T2.quotient.right_act)):
        for i, (a, b) in enumerate(zip(acts_c, acts_t)):
            if C.delta @ a != b @ C.delta:
                raise NotBimoduleMap("coproduct", side, i)
    for side, acts_c, acts_a in (("left", M.left_act, A.left_mult),
                                 ("right", M.right_act, A.right_mult)):
        for i, (a, b) in enumerate(zip(acts_c, acts_a)):
            if C.counit @ a != b @ C.counit:
                raise NotBimoduleMap("counit", side, i)
    eye = Matrix.identity(C.field, C.dim)
    for side, contract in (("right", C.right_contract), ("left", C.left_contract)):
        got = contract(C.counit) @ C.delta
        if got != eye:
            i = next(j for j in range(C.dim) if got.column(j) != eye.column(j))
            raise CounitLawFails(side, i)
    lhs = C.delta_id @ C.delta
    rhs = C.id_delta @ C.delta
    if lhs != rhs:
        i = next(j for j in range(C.dim) if lhs.column(j) != rhs.column(j))
        raise NotCoassociative(i)


def trivial_coring(A: Algebra) -> Coring:
    """A over itself with coproduct ``a -> a (x) 1`` and counit the identity."""
    C = regular_bimodule(A)
    f = A.field
    cols = []
    for c in range(A.dim):
        e = A.basis_vector(c)
        cols.append(tuple(x * y for x in e for y in A.unit))
    raw = Matrix.from_columns(f, cols, A.dim * A.dim)
    return make_coring(A, C, raw, Matrix.identity(f, A.dim), grouplike_hints=(A.unit,))


_EXT_TENSORS: "weakref.WeakKeyDictionary[RingMap, TensorPresentation]" = weakref.WeakKeyDictionary()


def ext_tensor(ext: RingMap) -> TensorPresentation:
    """``B (x)_A B`` for a ring map ``A -> B``, as a (B, B)-bimodule.

    Cached per ring map so every construction over the same extension shares
    one coordinate system.
    """
    T = _EXT_TENSORS.get(ext)
    if T is None:
        reg = regular_bimodule(ext.target)
        T = tensor_over(restrict(reg, right=ext), restrict(reg, left=ext))
        _EXT_TENSORS[ext] = T
    return T


def sweedler_coring(ext: RingMap) -> Coring:
    """Sweedler's coring ``A (x)_B A`` of a ring map ``B -> A``.

    Coproduct ``a (x) a' -> a (x) 1 (x) a'``, counit ``a (x) a' -> a a'``.
    """
    A = ext.target
    f = A.field
    Tsw = ext_tensor(ext)
    C = Tsw.quotient
    one = A.unit
    left_halves = [Tsw.embed(A.basis_vector(p), one) for p in range(A.dim)]
    right_halves = [Tsw.embed(one, A.basis_vector(q)) for q in range(A.dim)]
    raw_cols, eps_cols = [], []
    for p, q in Tsw.basis_pairs:
        u, v = left_halves[p], right_halves[q]
        raw_cols.append(tuple(x * y for x in u for y in v))
        eps_cols.append(A.mu[p][q])
    raw = Matrix.from_columns(f, raw_cols, C.dim * C.dim)
    counit = Matrix.from_columns(f, eps_cols, A.dim)
    hint = Tsw.embed(one, one)
    return make_coring(A, C, raw, counit, sweedler_of=ext, grouplike_hints=(hint,))


def is_grouplike(C: Coring, g) -> bool:
    g = tuple(C.field(x) for x in g)
    return C.coproduct(g) == C.tensor.embed(g, g) and C.eps(g) == C.base.unit


# ---------------------------------------------------------------------------
# dual rings


@dataclass(frozen=True, eq=False)
class DualRing:
    """The left dual (``side="left"``) or right dual with its convolution product."""

    coring: Coring
    side: str
    space: DualSpace
    algebra: Algebra

    @property
    def dim(self) -> int:
        return self.space.dim

    def functional(self, coords) -> Matrix:
        return self.space.functional(coords)

    def coords(self, F: Matrix) -> tuple:
        return self.space.coords(F)

    def product(self, F: Matrix, G: Matrix) -> Matrix:
        return _convolve(self.coring, self.side, F, G)


def _convolve(C: Coring, side: str, F: Matrix, G: Matrix) -> Matrix:
    if side == "left":
        # (F G)(c) = F(c_(1) G(c_(2)))
        return F @ C.right_contract(G) @ C.delta
    # (F G)(c) = G(F(c_(1)) c_(2))
    return G @ C.left_contract(F) @ C.delta


_DUALS: "weakref.WeakKeyDictionary[Coring, dict]" = weakref.WeakKeyDictionary()


def dual_ring(C: Coring, side: str = "left") -> DualRing:
    """Left dual ``Hom_A-(C, A)`` or right dual ``Hom_-A(C, A)`` as an algebra with unit the counit."""
    cache = _DUALS.setdefault(C, {})
    if side in cache:
        return cache[side]
    space = DualSpace(C.carrier, side)
    B = space.basis
    mu = [[space.coords(_convolve(C, side, F, G)) for G in B] for F in B]
    unit = space.coords(C.counit)
    names = tuple(f"xi{i}" for i in range(space.dim))
    alg = make_algebra(C.field, space.dim, mu, unit, names)
    D = DualRing(C, side, space, alg)
    cache[side] = D
    return D


def dual_actions(C: Coring) -> tuple[Bimodule, Bimodule]:
    """C as a left module over the left dual and a right module over the right dual.

    ``xi . c = c_(1) xi(c_(2))`` and ``c . xi = xi(c_(1)) c_(2)``; the other
    side of each bimodule is the ground field.
    """
    k = ground_algebra(C.field)
    eye = (Matrix.identity(C.field, C.dim),)
    L = dual_ring(C, "left")
    R = dual_ring(C, "right")
    left_acts = [C.right_contract(F) @ C.delta for F in L.space.basis]
    right_acts = [C.left_contract(F) @ C.delta for F in R.space.basis]
    left_mod = make_bimodule(L.algebra, k, left_acts, eye)
    right_mod = make_bimodule(k, R.algebra, eye, right_acts)
    return left_mod, right_mod


def regular_left_module(D: DualRing) -> Bimodule:
    k = ground_algebra(D.algebra.field)
    return Bimodule(D.algebra, k, D.dim, D.algebra.left_mult, (Matrix.identity(k.field, D.dim),))


def regular_right_module(D: DualRing) -> Bimodule:
    k = ground_algebra(D.algebra.field)
    return Bimodule(k, D.algebra, D.dim, (Matrix.identity(k.field, D.dim),), D.algebra.right_mult)


@dataclass
class CoFrobeniusEvidence:
    """``verdict`` is ``certified_yes``, ``certified_no`` or ``probably_no``.

    ``probably_no`` is probabilistic: if an injective module map existed,
    each random integer combination of the hom basis with coefficients in
    ``[-bound, bound]`` would be injective with probability at least
    ``1 - dim C / (2 bound + 1)``.
    """

    side: str
    verdict: str
    max_rank: int
    dim: int
    map: Matrix | None = None
    detail: str = ""


def random_combination(mats, coeffs):
    f = mats[0].field
    rows, cols = mats[0].shape
    flat = lincomb(f, [f(c) for c in coeffs], [m.entries for m in mats], rows * cols)
    return Matrix.from_entries(f, rows, cols, flat)


def search_full_rank(mats, target_rank: int, trials: int, seed: int, bound: int):
    """Try each basis matrix, then ``trials`` random combinations.

    Returns ``(matrix or None, max_rank_seen)``.
    """
    best = 0
    for m in mats:
        r = rank(m)
        best = max(best, r)
        if r == target_rank:
            return m, best
    rng = make_rng(seed)
    for _ in range(trials):
        m = random_combination(mats, random_integers(rng, len(mats), bound))
        r = rank(m)
        best = max(best, r)
        if r == target_rank:
            return m, best
    return None, best


def co_frobenius_evidence(C: Coring, side: str = "left", trials: int = 20, seed: int = 0,
                          bound: int = 2 ** 16) -> CoFrobeniusEvidence:
    D = dual_ring(C, side)
    if D.dim < C.dim:
        return CoFrobeniusEvidence(side, "certified_no", 0, C.dim,
                                   detail=f"dual has dimension {D.dim} < {C.dim}")
    left_mod, right_mod = dual_actions(C)
    if side == "left":
        homs = hom_space(left_mod, regular_left_module(D), left=True, right=False)
    else:
        homs = hom_space(right_mod, regular_right_module(D), left=False, right=True)
    if not homs:
        return CoFrobeniusEvidence(side, "certified_no", 0, C.dim, detail="hom space is zero")
    m, best = search_full_rank(homs, C.dim, trials, seed, bound)
    if m is not None:
        return CoFrobeniusEvidence(side, "certified_yes", best, C.dim, map=m)
    return CoFrobeniusEvidence(side, "probably_no", best, C.dim,
                               detail=f"{trials} random trials with coefficients in [-{bound}, {bound}]")


def counit_ring_map(C: Coring) -> RingMap:
    """``a -> [c -> eps(c a)]`` into the opposite of the left dual."""
    D = dual_ring(C, "left")
    S = opposite(D.algebra)
    cols = []
    for i in range(C.base.dim):
        F = C.counit @ C.carrier.right_act[i]
        cols.append(D.coords(F))
    return check_ring_map(Matrix.from_columns(C.field, cols, D.dim), C.base, S)
