"""Bimodules, tensor products over a middle algebra, hom spaces and duals.

A tensor product ``M (x)_A N`` is materialised as a quotient of the plain
tensor product over the ground field by the span of ``ma (x) n - m (x) an``.
The quotient basis is the lexicographically first set of pure basis tensors
``m_p (x) n_q`` that stays independent modulo the relations, so every
quotient basis vector lifts to a single pure tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import Algebra, RingMap, _combine
from .errors import (ActionsDontCommute, LeftActionNotRingAction, MiddleRingMismatch,
                     NotBimoduleMap, RightActionNotRingAction, RingMismatch, ShapeMismatch,
                     TensorPresentationError)
from .linalg import Echelon, Field, Matrix, sparse_kernel, sparse_kernel_free, unit_vec


@dataclass(frozen=True, eq=False)
class Bimodule:
    """An (X, Y)-bimodule: ``left_act[i]`` is ``x_i`` acting, ``right_act[j]`` is ``y_j``."""

    left_ring: Algebra
    right_ring: Algebra
    dim: int
    left_act: tuple
    right_act: tuple

    @property
    def field(self) -> Field:
        return self.left_ring.field

    def left(self, a) -> Matrix:
        return _combine(self.field, a, self.left_act, self.dim)

    def right(self, b) -> Matrix:
        return _combine(self.field, b, self.right_act, self.dim)

    def lact(self, a, m) -> tuple:
        """``a . m``"""
        return _act(self.field, a, self.left_act, m, self.dim)

    def ract(self, m, b) -> tuple:
        """``m . b``"""
        return _act(self.field, b, self.right_act, m, self.dim)

    def basis_vector(self, i) -> tuple:
        return unit_vec(self.field, self.dim, i)

    def __repr__(self):
        return (f"Bimodule(dim={self.dim}, left dim={self.left_ring.dim}, "
                f"right dim={self.right_ring.dim})")


def _act(field, coeffs, mats, m, n) -> tuple:
    acc = [field.zero] * n
    nz = [(k, x) for k, x in enumerate(m) if x]
    for c, mat in zip(coeffs, mats):
        if not c:
            continue
        data = mat._data
        for i in range(n):
            r = data[i]
            s = None
            for k, x in nz:
                y = r[k]
                if y:
                    s = y * x if s is None else s + y * x
            if s is not None:
                acc[i] += c * s
    return tuple(acc)


def make_bimodule(X: Algebra, Y: Algebra, left_act: Sequence[Matrix],
                  right_act: Sequence[Matrix]) -> Bimodule:
    """Validate the action matrices and return the bimodule.

    Raises ``LeftActionNotRingAction(i, j)``, ``RightActionNotRingAction(i, j)``
    (``j`` is ``"unit"`` for the unit law) or ``ActionsDontCommute(i, j)``.
    """
    if len(left_act) != X.dim or len(right_act) != Y.dim:
        raise ShapeMismatch("one action matrix per ring basis element is required")
    dims = {m.shape for m in list(left_act) + list(right_act)}
    if len(dims) != 1 or next(iter(dims))[0] != next(iter(dims))[1]:
        raise ShapeMismatch("action matrices must be square of a common size")
    n = next(iter(dims))[0]
    M = Bimodule(X, Y, n, tuple(left_act), tuple(right_act))
    check_bimodule(M)
    return M


def check_bimodule(M: Bimodule) -> None:
    X, Y = M.left_ring, M.right_ring
    L, R = M.left_act, M.right_act
    eye = Matrix.identity(M.field, M.dim)
    for i in range(X.dim):
        for j in range(X.dim):
            if L[i] @ L[j] != M.left(X.mu[i][j]):
                raise LeftActionNotRingAction(i, j)
    if M.left(X.unit) != eye:
        raise LeftActionNotRingAction("unit")
    for i in range(Y.dim):
        for j in range(Y.dim):
            # m (y_i y_j) = (m y_i) y_j
            if R[j] @ R[i] != M.right(Y.mu[i][j]):
                raise RightActionNotRingAction(i, j)
    if M.right(Y.unit) != eye:
        raise RightActionNotRingAction("unit")
    for i in range(X.dim):
        for j in range(Y.dim):
            if L[i] @ R[j] != R[j] @ L[i]:
                raise ActionsDontCommute(i, j)


def regular_bimodule(A: Algebra) -> Bimodule:
    """A as an (A, A)-bimodule by multiplication."""
    return Bimodule(A, A, A.dim, A.left_mult, A.right_mult)


def restrict(M: Bimodule, left: RingMap | None = None, right: RingMap | None = None) -> Bimodule:
    """Restriction of scalars along ring maps into ``M``'s rings."""
    la, X = M.left_act, M.left_ring
    if left is not None:
        if left.target != M.left_ring:
            raise RingMismatch("left ring map does not land in the left ring")
        X = left.source
        la = tuple(M.left(left.matrix.column(i)) for i in range(X.dim))
    ra, Y = M.right_act, M.right_ring
    if right is not None:
        if right.target != M.right_ring:
            raise RingMismatch("right ring map does not land in the right ring")
        Y = right.source
        ra = tuple(M.right(right.matrix.column(j)) for j in range(Y.dim))
    return Bimodule(X, Y, M.dim, la, ra)


def one_sided(M: Bimodule, ground: Algebra, side: str) -> Bimodule:
    """Forget one action, replacing that ring by the ground field."""
    eye = (Matrix.identity(M.field, M.dim),)
    if side == "left":
        return Bimodule(M.left_ring, ground, M.dim, M.left_act, eye)
    return Bimodule(ground, M.right_ring, M.dim, eye, M.right_act)


# ---------------------------------------------------------------------------
# tensor products


class TensorPresentation:
    """``M (x)_A N`` as an explicit quotient of ``M (x)_k N``.

    Ambient index of ``m_p (x) n_q`` is ``p * dim N + q``.
    """

    def __init__(self, left: Bimodule, right: Bimodule, basis_pairs, proj_cols,
                 relations: Echelon, quotient: Bimodule | None = None):
        self.left = left
        self.right = right
        self.middle = left.right_ring
        self.field = left.field
        self.ambient_dim = left.dim * right.dim
        self.basis_pairs = tuple(basis_pairs)
        self.dim = len(self.basis_pairs)
        self._proj_cols = proj_cols  # ambient index -> sparse quotient vector
        self._relations = relations
        self.quotient = quotient if quotient is not None else self._induced_quotient()

    # -- coordinates

    def pair(self, w: int) -> tuple[int, int]:
        return self.basis_pairs[w]

    def project_sparse(self, amb: dict) -> tuple:
        acc = [self.field.zero] * self.dim
        cols = self._proj_cols
        for i, x in amb.items():
            if x:
                for w, y in cols[i].items():
                    acc[w] += x * y
        return tuple(acc)

    def project_vector(self, amb) -> tuple:
        return self.project_sparse({i: x for i, x in enumerate(amb) if x})

    def embed(self, u, v) -> tuple:
        """Class of ``u (x) v`` in the quotient."""
        dn = self.right.dim
        acc = [self.field.zero] * self.dim
        cols = self._proj_cols
        vnz = [(q, y) for q, y in enumerate(v) if y]
        for p, x in enumerate(u):
            if not x:
                continue
            base = p * dn
            for q, y in vnz:
                xy = x * y
                for w, z in cols[base + q].items():
                    acc[w] += xy * z
        return tuple(acc)

    def embed_basis(self, p: int, q: int) -> tuple:
        acc = [self.field.zero] * self.dim
        for w, z in self._proj_cols[p * self.right.dim + q].items():
            acc[w] = z
        return tuple(acc)

    def pure_terms(self, x) -> list[tuple]:
        """``x`` as a sum of ``(coefficient, p, q)`` pure basis tensors."""
        return [(c, *self.basis_pairs[w]) for w, c in enumerate(x) if c]

    @cached_property
    def project(self) -> Matrix:
        cols = [self.project_sparse({i: self.field.one}) for i in range(self.ambient_dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    @cached_property
    def lift(self) -> Matrix:
        dn = self.right.dim
        cols = [unit_vec(self.field, self.ambient_dim, p * dn + q) for p, q in self.basis_pairs]
        return Matrix.from_columns(self.field, cols, self.ambient_dim)

    @property
    def relation_rank(self) -> int:
        return self._relations.rank

    def relation_basis(self) -> list[dict]:
        return list(self._relations.pivots.values())

    # -- induced actions

    def _left_image(self, mat: Matrix, w: int) -> tuple:
        p, q = self.basis_pairs[w]
        dn = self.right.dim
        col = {s * dn + q: x for s, x in enumerate(mat.column(p)) if x}
        return self.project_sparse(col)

    def _right_image(self, mat: Matrix, w: int) -> tuple:
        p, q = self.basis_pairs[w]
        dn = self.right.dim
        col = {p * dn + t: x for t, x in enumerate(mat.column(q)) if x}
        return self.project_sparse(col)

    def _induced_quotient(self) -> Bimodule:
        la = tuple(Matrix.from_columns(self.field, [self._left_image(L, w) for w in range(self.dim)],
                                       self.dim) for L in self.left.left_act)
        ra = tuple(Matrix.from_columns(self.field, [self._right_image(R, w) for w in range(self.dim)],
                                       self.dim) for R in self.right.right_act)
        return Bimodule(self.left.left_ring, self.right.right_ring, self.dim, la, ra)

    def verify(self, actions: bool = True) -> None:
        """Check project/lift, that relations die, and (optionally) that actions descend."""
        f = self.field
        for w, (p, q) in enumerate(self.basis_pairs):
            if self.embed_basis(p, q) != unit_vec(f, self.dim, w):
                raise TensorPresentationError(w, detail="project . lift != identity")
        if self.dim != self.ambient_dim - self.relation_rank:
            raise TensorPresentationError(detail="dimension count")
        rel = self.relation_basis()
        for k, r in enumerate(rel):
            if any(self.project_sparse(r)):
                raise TensorPresentationError(k, detail="relation survives projection")
        if not actions:
            return
        dn = self.right.dim
        for i, L in enumerate(self.left.left_act):
            for k, r in enumerate(rel):
                img = {}
                for idx, x in r.items():
                    p, q = divmod(idx, dn)
                    for s, y in enumerate(L.column(p)):
                        if y:
                            img[s * dn + q] = img.get(s * dn + q, f.zero) + x * y
                if any(self.project_sparse(img)):
                    raise TensorPresentationError("left", i, k, detail="action does not descend")
        for j, R in enumerate(self.right.right_act):
            for k, r in enumerate(rel):
                img = {}
                for idx, x in r.items():
                    p, q = divmod(idx, dn)
                    for t, y in enumerate(R.column(q)):
                        if y:
                            img[p * dn + t] = img.get(p * dn + t, f.zero) + x * y
                if any(self.project_sparse(img)):
                    raise TensorPresentationError("right", j, k, detail="action does not descend")

    def __repr__(self):
        return f"TensorPresentation({self.left.dim} x {self.right.dim} -> {self.dim})"


def algebra_generators(A: Algebra) -> list[int]:
    """Basis indices generating ``A`` as a unital algebra (greedy, in index order)."""
    def sp(v):
        return {k: x for k, x in enumerate(v) if x}

    sub = Echelon(A.field)
    sub.add(sp(A.unit))
    elems = [A.unit]
    gens: list[int] = []
    for i in range(A.dim):
        b = A.basis_vector(i)
        if not sub.add(sp(b)):
            continue
        gens.append(i)
        elems.append(b)
        queue = list(elems)
        while queue:
            e = queue.pop()
            for g in gens:
                bg = A.basis_vector(g)
                for prod in (A.mul(e, bg), A.mul(bg, e)):
                    if sub.add(sp(prod)):
                        elems.append(prod)
                        queue.append(prod)
        if sub.rank == A.dim:
            break
    return gens


def tensor_over(M: Bimodule, N: Bimodule, verify: bool | None = None,
                all_relations: bool = False) -> TensorPresentation:
    """Presentation of ``M (x)_A N`` for an (X, A)-bimodule M and an (A, Y)-bimodule N.

    Relations are generated by algebra generators of ``A`` (their span is the
    same as over a full basis); ``all_relations=True`` uses every basis element.
    ``verify=None`` runs the full descent check only for small ambients.
    """
    if M.right_ring != N.left_ring:
        raise MiddleRingMismatch("right ring of the left factor differs from left ring of the right factor")
    A = M.right_ring
    f = M.field
    dm, dn = M.dim, N.dim
    amb = dm * dn
    ech = Echelon(f, trailing=True)
    ks = range(A.dim) if all_relations else algebra_generators(A)
    for k in ks:
        R = M.right_act[k]
        L = N.left_act[k]
        rcols = [[(s, x) for s, x in enumerate(R.column(p)) if x] for p in range(dm)]
        lcols = [[(t, y) for t, y in enumerate(L.column(q)) if y] for q in range(dn)]
        for p in range(dm):
            for q in range(dn):
                v: dict = {}
                for s, x in rcols[p]:
                    v[s * dn + q] = v.get(s * dn + q, f.zero) + x
                for t, y in lcols[q]:
                    i = p * dn + t
                    nv = v.get(i, f.zero) - y
                    if nv:
                        v[i] = nv
                    else:
                        v.pop(i, None)
                v = {i: x for i, x in v.items() if x}
                if v:
                    ech.add(v)
    red = ech.reduced()
    free = [i for i in range(amb) if i not in red]
    index = {i: w for w, i in enumerate(free)}
    one = f.one
    proj_cols: list[dict] = []
    for i in range(amb):
        if i in index:
            proj_cols.append({index[i]: one})
        else:
            proj_cols.append({index[k]: -x for k, x in red[i].items() if k != i})
    pairs = [divmod(i, dn) for i in free]
    T = TensorPresentation(M, N, pairs, proj_cols, ech)
    if verify is None:
        verify = amb <= 256
    T.verify(actions=verify)
    return T


def unit_iso_left(T: TensorPresentation) -> Matrix:
    """``A (x)_A N -> N``, ``a (x) n -> a n`` (T must have the regular left factor)."""
    N = T.right
    cols = [N.lact(T.left.basis_vector(p), N.basis_vector(q)) for p, q in T.basis_pairs]
    return Matrix.from_columns(T.field, cols, N.dim)


def unit_iso_right(T: TensorPresentation) -> Matrix:
    """``M (x)_A A -> M``, ``m (x) a -> m a``."""
    M = T.left
    cols = [M.ract(M.basis_vector(p), T.right.basis_vector(q)) for p, q in T.basis_pairs]
    return Matrix.from_columns(T.field, cols, M.dim)


def associator(MN: TensorPresentation, MN_P: TensorPresentation,
               NP: TensorPresentation, M_NP: TensorPresentation) -> Matrix:
    """Canonical ``(M (x) N) (x) P -> M (x) (N (x) P)`` on quotient bases."""
    if MN_P.left is not MN.quotient or M_NP.right is not NP.quotient:
        raise ValueError("presentations do not fit together")
    cols = []
    for u, r in MN_P.basis_pairs:
        p, q = MN.pair(u)
        cols.append(M_NP.embed(MN.left.basis_vector(p), NP.embed_basis(q, r)))
    return Matrix.from_columns(MN.field, cols, M_NP.dim)


# ---------------------------------------------------------------------------
# invariants, hom spaces, duals


def invariants(M: Bimodule) -> list[tuple]:
    """Basis of ``{m : a m = m a for all a}``."""
    if M.left_ring != M.right_ring:
        raise RingMismatch("invariants need the same ring on both sides")
    rows = []
    for L, R in zip(M.left_act, M.right_act):
        D = L - R
        for r in D._data:
            d = {j: x for j, x in enumerate(r) if x}
            if d:
                rows.append(d)
    return sparse_kernel(M.field, rows, M.dim)


def _intertwiner_rows(field, dm, dn, src_mats, tgt_mats, rows):
    # F src = tgt F for F of shape dn x dm, unknown F[r][c] at r*dm + c
    for S, T in zip(src_mats, tgt_mats):
        Sd, Td = S._data, T._data
        for r in range(dn):
            for c in range(dm):
                eq: dict = {}
                for s in range(dm):
                    x = Sd[s][c]
                    if x:
                        k = r * dm + s
                        eq[k] = eq.get(k, field.zero) + x
                for t in range(dn):
                    y = Td[r][t]
                    if y:
                        k = t * dm + c
                        eq[k] = eq.get(k, field.zero) - y
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    rows.append(eq)


def hom_space(M: Bimodule, N: Bimodule, left: bool = True, right: bool = True) -> list[Matrix]:
    """Basis of the maps ``M -> N`` commuting with the requested actions."""
    return hom_space_with_pivots(M, N, left, right)[0]


def hom_space_with_pivots(M: Bimodule, N: Bimodule, left=True, right=True):
    """Hom basis plus the flat positions where basis element k is 1 and others are 0."""
    if left and M.left_ring != N.left_ring:
        raise RingMismatch("left rings differ")
    if right and M.right_ring != N.right_ring:
        raise RingMismatch("right rings differ")
    f = M.field
    dm, dn = M.dim, N.dim
    rows: list[dict] = []
    if left:
        _intertwiner_rows(f, dm, dn, M.left_act, N.left_act, rows)
    if right:
        _intertwiner_rows(f, dm, dn, M.right_act, N.right_act, rows)
    kern, free = sparse_kernel_free(f, rows, dm * dn)
    mats = [Matrix.from_entries(f, dn, dm, v) for v in kern]
    return mats, free


def is_bimodule_map(F: Matrix, M: Bimodule, N: Bimodule, left=True, right=True):
    """Return None if F intertwines the requested actions, else ``(side, index)``."""
    if left:
        for i, (a, b) in enumerate(zip(M.left_act, N.left_act)):
            if F @ a != b @ F:
                return ("left", i)
    if right:
        for j, (a, b) in enumerate(zip(M.right_act, N.right_act)):
            if F @ a != b @ F:
                return ("right", j)
    return None


@dataclass(frozen=True, eq=False)
class BimoduleMap:
    source: Bimodule
    target: Bimodule
    matrix: Matrix
    left: bool = True
    right: bool = True


def make_bimodule_map(F: Matrix, M: Bimodule, N: Bimodule, left=True, right=True,
                      which: str = "map") -> BimoduleMap:
    if F.shape != (N.dim, M.dim):
        raise ShapeMismatch(f"{which} has shape {F.shape}, expected {(N.dim, M.dim)}")
    bad = is_bimodule_map(F, M, N, left, right)
    if bad is not None:
        raise NotBimoduleMap(which, *bad)
    return BimoduleMap(M, N, F, left, right)


class DualSpace:
    """One-sided ``A``-linear functionals ``M -> A`` with coordinates.

    ``side="left"`` gives the left-linear functionals (the left dual),
    ``side="right"`` the right-linear ones.
    """

    def __init__(self, M: Bimodule, side: str):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        A = M.left_ring if side == "left" else M.right_ring
        reg = regular_bimodule(A)
        if side == "left":
            basis, free = hom_space_with_pivots(M, reg, left=True, right=False)
        else:
            basis, free = hom_space_with_pivots(M, reg, left=False, right=True)
        self.module = M
        self.ring = A
        self.side = side
        self.basis = tuple(basis)
        self._free = tuple(free)
        self.dim = len(basis)

    def coords(self, F: Matrix, check: bool = True) -> tuple:
        flat = F.entries
        c = tuple(flat[k] for k in self._free)
        if check and self.functional(c) != F:
            raise ValueError("functional is not in the dual space")
        return c

    def functional(self, coords) -> Matrix:
        f = self.module.field
        rows, cols = self.ring.dim, self.module.dim
        acc = [f.zero] * (rows * cols)
        for c, B in zip(coords, self.basis):
            if c:
                for k, x in enumerate(B.entries):
                    if x:
                        acc[k] += c * x
        return Matrix.from_entries(f, rows, cols, acc)

    def __repr__(self):
        return f"DualSpace(side={self.side}, dim={self.dim})"


def dual_left(M: Bimodule) -> DualSpace:
    return DualSpace(M, "left")


def dual_right(M: Bimodule) -> DualSpace:
    return DualSpace(M, "right")
