"""Exact scalars and dense matrices over Q and GF(p).

Rationals are ``gmpy2.mpq`` values (always in lowest terms with a positive
denominator).  Residues mod p are :class:`ModInt` values kept in ``[0, p)``.
Both support the usual ``+ - * /`` operators, so the algorithms below are
written once and run over either field.

Elimination happens on sparse rows (``dict`` column -> value).  Two pivot
conventions are supported: *leading* pivots (first nonzero column, the
usual reduced row echelon form) and *trailing* pivots (last nonzero column),
which the tensor quotient code uses to pick the lexicographically first
basis of a quotient space.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from gmpy2 import mpq


class DimensionMismatch(ValueError):
    pass


class ModInt:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def inverse(self) -> "ModInt":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return ModInt(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * ModInt(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(o, self.p) * self.inverse()

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Ground field: coercion, parsing and formatting of scalars."""

    name: str

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, s):
        return self(s)

    def format(self, x) -> str:
        return str(x)

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"

    def __call__(self, x):
        if isinstance(x, ModInt):
            raise TypeError("GF(p) element used where a rational is expected")
        if isinstance(x, str):
            return mpq(x.strip())
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        return mpq(x)

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise ValueError(f"GF({x.p}) element used in {self.name}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (Fraction, type(mpq(0)))):
            return ModInt(int(x.numerator), self.p) / ModInt(int(x.denominator), self.p)
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        return ModInt(int(x), self.p)

    def to_json(self):
        return {"GF": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(obj) -> Field:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"GF"}:
        return GF(int(obj["GF"]))
    raise ValueError(f"unknown field description {obj!r}")


# ---------------------------------------------------------------------------
# vectors


def vec(field: Field, values: Iterable) -> tuple:
    return tuple(field(v) for v in values)


def zero_vec(field: Field, n: int) -> tuple:
    z = field.zero
    return (z,) * n


def unit_vec(field: Field, n: int, i: int) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def is_zero_vec(u) -> bool:
    return not any(u)


def lincomb(field: Field, coeffs, vectors, n: int) -> tuple:
    """Sum of ``c * v`` over paired coefficients and vectors of length n."""
    acc = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    acc[k] += c * x
    return tuple(acc)


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix with exact entries."""

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: Field, data: Sequence[Sequence], cols: int | None = None):
        rows = [tuple(field(x) for x in r) for r in data]
        if cols is None:
            if not rows:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self._data = tuple(rows)

    @classmethod
    def _raw(cls, field, data, rows, cols):
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.cols = cols
        m._data = tuple(tuple(r) for r in data)
        return m

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls._raw(field, [(z,) * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field, n):
        return cls._raw(field, [unit_vec(field, n, i) for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], rows: int | None = None):
        columns = list(columns)
        if rows is None:
            if not columns:
                raise DimensionMismatch("cannot infer row count from no columns")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatch("column length mismatch")
        data = [tuple(c[i] for c in columns) for i in range(rows)]
        return cls._raw(field, data, rows, len(columns))

    @classmethod
    def from_entries(cls, field, rows, cols, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        entries = [field(x) for x in entries]
        return cls._raw(field, [entries[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    def tolist(self):
        return [list(r) for r in self._data]

    def row(self, i) -> tuple:
        return self._data[i]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return Matrix._raw(self.field, [vadd(a, b) for a, b in zip(self._data, other._data)],
                           self.rows, self.cols)

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._raw(self.field, [vsub(a, b) for a, b in zip(self._data, other._data)],
                           self.rows, self.cols)

    def __neg__(self):
        return Matrix._raw(self.field, [tuple(-x for x in r) for r in self._data],
                           self.rows, self.cols)

    def scale(self, c):
        c = self.field(c)
        return Matrix._raw(self.field, [vscale(c, r) for r in self._data], self.rows, self.cols)

    @property
    def T(self):
        if not self.rows:
            return Matrix.zeros(self.field, self.cols, 0)
        return Matrix._raw(self.field, list(zip(*self._data)), self.cols, self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            z = self.field.zero
            n = other.cols
            bdata = other._data
            out = []
            for r in self._data:
                acc = [z] * n
                for k, a in enumerate(r):
                    if a:
                        for j, b in enumerate(bdata[k]):
                            if b:
                                acc[j] += a * b
                out.append(acc)
            return Matrix._raw(self.field, out, self.rows, n)
        return self.apply(other)

    def apply(self, v) -> tuple:
        """Matrix-vector product ``M v``."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        z = self.field.zero
        nz = [(k, x) for k, x in enumerate(v) if x]
        out = []
        for r in self._data:
            s = z
            for k, x in nz:
                a = r[k]
                if a:
                    s += a * x
            out.append(s)
        return tuple(out)

    def kron(self, other):
        data = []
        for ra in self._data:
            for rb in other._data:
                data.append([a * b for a in ra for b in rb])
        return Matrix._raw(self.field, data, self.rows * other.rows, self.cols * other.cols)

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix._raw(self.field, [a + b for a, b in zip(self._data, other._data)],
                           self.rows, self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix._raw(self.field, self._data + other._data, self.rows + other.rows, self.cols)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = self.hstack(Matrix.identity(self.field, n))
        pivots, rows = rref_rows(self.field, sparse_rows(aug))
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("matrix is singular")
        dense = [_densify(self.field, rows[i], 2 * n)[n:] for i in range(n)]
        return Matrix._raw(self.field, dense, n, n)


def as_matrix(field, m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(field, m)


def block_rows(field, blocks: Sequence[Matrix], cols: int) -> Matrix:
    """Vertically stack matrices sharing a column count."""
    data = []
    for b in blocks:
        if b.cols != cols:
            raise DimensionMismatch("block column mismatch")
        data.extend(b._data)
    return Matrix._raw(field, data, len(data), cols)


# ---------------------------------------------------------------------------
# sparse elimination


def sparse_rows(m: Matrix) -> list[dict]:
    return [{j: x for j, x in enumerate(r) if x} for r in m._data]


def _densify(field, row: dict, n: int) -> list:
    out = [field.zero] * n
    for j, x in row.items():
        out[j] = x
    return out


def reduce_against(vecd: dict, pivots: dict, trailing: bool = False) -> dict:
    """Reduce a sparse vector in place against normalized pivot rows.

    ``pivots`` maps pivot column -> row with a 1 in that column.  With
    leading pivots every row is zero left of its pivot; with trailing
    pivots every row is zero right of it.
    """
    sign = -1 if trailing else 1
    heap = [sign * c for c in vecd if c in pivots]
    heapq.heapify(heap)
    while heap:
        c = sign * heapq.heappop(heap)
        x = vecd.pop(c, None)
        if not x:
            continue
        for k, y in pivots[c].items():
            if k == c:
                continue
            old = vecd.get(k)
            if old is None:
                vecd[k] = -x * y
                if k in pivots:
                    heapq.heappush(heap, sign * k)
            else:
                nv = old - x * y
                if nv:
                    vecd[k] = nv
                else:
                    del vecd[k]
    return vecd


class Echelon:
    """Incrementally built echelon basis of a row space."""

    def __init__(self, field: Field, trailing: bool = False):
        self.field = field
        self.trailing = trailing
        self.pivots: dict[int, dict] = {}

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it enlarged the span."""
        v = reduce_against(dict(row), self.pivots, self.trailing)
        if not v:
            return False
        c = max(v) if self.trailing else min(v)
        inv = 1 / v[c] if not isinstance(v[c], ModInt) else v[c].inverse()
        self.pivots[c] = {k: x * inv for k, x in v.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduced(self) -> dict[int, dict]:
        """Fully reduced rows: no row has a nonzero entry in another pivot column."""
        order = sorted(self.pivots, reverse=not self.trailing)
        done: dict[int, dict] = {}
        for c in order:
            row = dict(self.pivots[c])
            lead = row.pop(c)
            reduce_against(row, done, self.trailing)
            row[c] = lead
            done[c] = row
        return done


def rref_rows(field: Field, rows: Iterable[dict]) -> tuple[list[int], dict[int, dict]]:
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    red = ech.reduced()
    return sorted(red), red


class Solution(NamedTuple):
    x: tuple
    kernel: list


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    pivots, rows = rref_rows(m.field, sparse_rows(m))
    data = [_densify(m.field, rows[c], m.cols) for c in pivots]
    return Matrix._raw(m.field, data, len(data), m.cols), pivots


def _kernel_from_rref(field, pivots, rows, ncols) -> list[tuple]:
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for p in pivots:
            x = rows[p].get(f)
            if x:
                v[p] = -x
        basis.append(tuple(v))
    return basis


def kernel_basis(m: Matrix) -> list[tuple]:
    pivots, rows = rref_rows(m.field, sparse_rows(m))
    return _kernel_from_rref(m.field, pivots, rows, m.cols)


def sparse_kernel(field, rows: Iterable[dict], ncols: int) -> list[tuple]:
    return sparse_kernel_free(field, rows, ncols)[0]


def sparse_kernel_free(field, rows: Iterable[dict], ncols: int) -> tuple[list[tuple], list[int]]:
    """Kernel basis and its free columns; basis vector k is 1 at free[k], 0 at the others."""
    pivots, red = rref_rows(field, rows)
    pset = set(pivots)
    return _kernel_from_rref(field, pivots, red, ncols), [c for c in range(ncols) if c not in pset]


def rank(m: Matrix) -> int:
    ech = Echelon(m.field)
    for r in sparse_rows(m):
        ech.add(r)
    return ech.rank


def det(m: Matrix):
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    f = m.field
    a = [list(r) for r in m._data]
    n = m.rows
    d = f.one
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return f.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d = d * piv
        for i in range(c + 1, n):
            if a[i][c]:
                t = a[i][c] / piv
                ri, rc = a[i], a[c]
                for j in range(c, n):
                    if rc[j]:
                        ri[j] = ri[j] - t * rc[j]
    return d


def solve(m: Matrix, b: Sequence) -> Solution | None:
    """One solution of ``m x = b`` plus a kernel basis, or None if inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.shape} matrix")
    f = m.field
    n = m.cols
    rows = []
    for r, bi in zip(m._data, b):
        d = {j: x for j, x in enumerate(r) if x}
        bi = f(bi)
        if bi:
            d[n] = bi
        rows.append(d)
    pivots, red = rref_rows(f, rows)
    if pivots and pivots[-1] == n:
        return None
    x = [f.zero] * n
    for p in pivots:
        x[p] = red[p].get(n, f.zero)
    return Solution(tuple(x), _kernel_from_rref(f, pivots, red, n))


def solve_many(m: Matrix, rhs: Sequence[Sequence]) -> list[tuple | None]:
    """Particular solutions for several right-hand sides (None where inconsistent)."""
    out = []
    for b in rhs:
        sol = solve(m, b)
        out.append(None if sol is None else sol.x)
    return out


# ---------------------------------------------------------------------------
# randomness


def random_vector(dim: int, seed: int, bound: int) -> list[int]:
    """``dim`` integers uniform in ``[-bound, bound]``.

    Uses numpy's PCG64 bit generator seeded with ``seed``; the same seed
    always yields the same draw.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    return [int(x) for x in rng.integers(-bound, bound + 1, size=dim)]


def random_integers(rng: np.random.Generator, dim: int, bound: int) -> list[int]:
    return [int(x) for x in rng.integers(-bound, bound + 1, size=dim)]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))
