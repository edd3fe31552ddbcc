"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .errors import NotAssociative, NotMultiplicative, NotUnital, ShapeMismatch, UnitLawFails
from .linalg import Field, Matrix, unit_vec, vec


@dataclass(frozen=True, eq=False)
class Algebra:
    """``b_i b_j = sum_l mu[i][j][l] b_l`` with unit given in coordinates.

    Build through :func:`make_algebra`, which checks associativity and the
    unit laws; the constructor itself trusts its input.
    """

    field: Field
    dim: int
    mu: tuple  # mu[i][j] is the coordinate tuple of b_i b_j
    unit: tuple
    basis_names: tuple = dc_field(default=())

    def __post_init__(self):
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"b{i}" for i in range(self.dim)))

    def mul(self, u, v) -> tuple:
        n = self.dim
        acc = [self.field.zero] * n
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.mu[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for l, c in enumerate(row[j]):
                    if c:
                        acc[l] += ab * c
        return tuple(acc)

    def basis_vector(self, i) -> tuple:
        return unit_vec(self.field, self.dim, i)

    @cached_property
    def left_mult(self) -> tuple[Matrix, ...]:
        """``left_mult[i]`` is the matrix of ``x -> b_i x``."""
        n = self.dim
        return tuple(Matrix.from_columns(self.field, [self.mu[i][j] for j in range(n)], n)
                     for i in range(n))

    @cached_property
    def right_mult(self) -> tuple[Matrix, ...]:
        """``right_mult[j]`` is the matrix of ``x -> x b_j``."""
        n = self.dim
        return tuple(Matrix.from_columns(self.field, [self.mu[i][j] for i in range(n)], n)
                     for j in range(n))

    def left_mult_by(self, a) -> Matrix:
        return _combine(self.field, a, self.left_mult, self.dim)

    def right_mult_by(self, a) -> Matrix:
        return _combine(self.field, a, self.right_mult, self.dim)

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.mu[i][j] == self.mu[j][i] for i in range(n) for j in range(i + 1, n))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim
                and self.mu == other.mu and self.unit == other.unit)

    def __hash__(self):
        return hash((self.dim, self.unit))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, basis={list(self.basis_names)})"


def _combine(field, coeffs, mats, n) -> Matrix:
    acc = [[field.zero] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i, r in enumerate(m._data):
            ai = acc[i]
            for j, x in enumerate(r):
                if x:
                    ai[j] += c * x
    return Matrix._raw(field, acc, n, n)


def make_algebra(field: Field, dim: int, mu, unit, basis_names=()) -> Algebra:
    """Validate structure constants and return the algebra.

    Raises ``ShapeMismatch``, ``NotAssociative(i, j, k)`` for the first
    failing basis triple, or ``UnitLawFails(i)``.
    """
    if len(mu) != dim or any(len(r) != dim for r in mu) or any(
            len(c) != dim for r in mu for c in r):
        raise ShapeMismatch(f"structure constants are not {dim}x{dim}x{dim}")
    if len(unit) != dim:
        raise ShapeMismatch(f"unit has length {len(unit)}, expected {dim}")
    if basis_names and len(basis_names) != dim:
        raise ShapeMismatch("basis_names length differs from dim")
    mu = tuple(tuple(vec(field, c) for c in r) for r in mu)
    alg = Algebra(field, dim, mu, vec(field, unit), tuple(basis_names))
    check_algebra(alg)
    return alg


def check_algebra(alg: Algebra) -> None:
    n = alg.dim
    L = alg.left_mult
    # (b_i b_j) b_k = b_i (b_j b_k) for all k  <=>  L_{b_i b_j} = L_i L_j
    for i in range(n):
        for j in range(n):
            lhs = alg.left_mult_by(alg.mu[i][j])
            rhs = L[i] @ L[j]
            if lhs != rhs:
                for k in range(n):
                    if lhs.column(k) != rhs.column(k):
                        raise NotAssociative(i, j, k)
    for i in range(n):
        b = alg.basis_vector(i)
        if alg.mul(alg.unit, b) != b or alg.mul(b, alg.unit) != b:
            raise UnitLawFails(i)


def opposite(alg: Algebra) -> Algebra:
    n = alg.dim
    mu = tuple(tuple(alg.mu[j][i] for j in range(n)) for i in range(n))
    names = tuple(f"{s}^op" for s in alg.basis_names)
    return Algebra(alg.field, n, mu, alg.unit, names)


def ground_algebra(field: Field) -> Algebra:
    """The field itself as a one-dimensional algebra."""
    return Algebra(field, 1, ((vec(field, [1]),),), vec(field, [1]), ("1",))


@dataclass(frozen=True, eq=False)
class RingMap:
    """Unital algebra map; ``matrix`` is ``target.dim x source.dim``."""

    source: Algebra
    target: Algebra
    matrix: Matrix

    def __call__(self, a) -> tuple:
        return self.matrix.apply(a)

    def __repr__(self):
        return f"RingMap({self.source.dim} -> {self.target.dim})"


def check_ring_map(f: Matrix, source: Algebra, target: Algebra) -> RingMap:
    """Return a validated ring map or raise ``NotMultiplicative(i, j)`` / ``NotUnital``."""
    if f.shape != (target.dim, source.dim):
        raise ShapeMismatch(f"ring map matrix has shape {f.shape}, "
                            f"expected {(target.dim, source.dim)}")
    images = f.columns()
    for i in range(source.dim):
        for j in range(source.dim):
            if f.apply(source.mu[i][j]) != target.mul(images[i], images[j]):
                raise NotMultiplicative(i, j)
    if f.apply(source.unit) != target.unit:
        raise NotUnital()
    return RingMap(source, target, f)


def identity_map(alg: Algebra) -> RingMap:
    return RingMap(alg, alg, Matrix.identity(alg.field, alg.dim))

