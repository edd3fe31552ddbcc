"""Small algebra families shared by the property tests."""

import itertools

import sympy

from corings.algebra import make_algebra
from corings.linalg import QQ


def cyclic_group_algebra(n, field=QQ):
    mu = [[[1 if l == (i + j) % n else 0 for l in range(n)] for j in range(n)] for i in range(n)]
    return make_algebra(field, n, mu, [1] + [0] * (n - 1))


def matrix_units(n, upper=False, field=QQ):
    """Full (or upper triangular) n x n matrices on the matrix units e_ij."""
    units = [(i, j) for i in range(n) for j in range(n) if not upper or i <= j]
    index = {u: k for k, u in enumerate(units)}
    d = len(units)
    mu = []
    for (i, j) in units:
        row = []
        for (k, l) in units:
            c = [0] * d
            if j == k:
                c[index[(i, l)]] = 1
            row.append(c)
        mu.append(row)
    unit = [1 if i == j else 0 for (i, j) in units]
    return make_algebra(field, d, mu, unit, tuple(f"e{i + 1}{j + 1}" for i, j in units))


def tensor_algebra(A, B):
    """A (x)_Q B with basis a_i (x) b_j at i * dim B + j."""
    n, m = A.dim, B.dim
    mu = []
    for i, j in itertools.product(range(n), range(m)):
        row = []
        for k, l in itertools.product(range(n), range(m)):
            row.append([x * y for x in A.mu[i][k] for y in B.mu[j][l]])
        mu.append(row)
    unit = [x * y for x in A.unit for y in B.unit]
    return make_algebra(A.field, n * m, mu, unit)


def brute_associative(A):
    basis = [A.basis_vector(i) for i in range(A.dim)]
    for x, y, z in itertools.product(basis, repeat=3):
        if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
            return False
    return all(A.mul(A.unit, x) == x == A.mul(x, A.unit) for x in basis)


def sympy_rank(rows, ncols):
    """Rank of sparse rows (dicts) computed independently by sympy."""
    if not rows:
        return 0
    M = sympy.zeros(len(rows), ncols)
    for r, d in enumerate(rows):
        for c, x in d.items():
            M[r, c] = sympy.Rational(int(x.numerator), int(x.denominator))
    return M.rank()


def tensor_relations(M, N):
    """All relations m a (x) n - m (x) a n over every basis a, as sparse rows."""
    A = M.right_ring
    dn = N.dim
    rows = []
    for k in range(A.dim):
        for p in range(M.dim):
            for q in range(N.dim):
                d = {}
                for s, x in enumerate(M.right_act[k].column(p)):
                    if x:
                        d[s * dn + q] = d.get(s * dn + q, 0) + x
                for t, y in enumerate(N.left_act[k].column(q)):
                    if y:
                        d[p * dn + t] = d.get(p * dn + t, 0) - y
                d = {i: v for i, v in d.items() if v}
                if d:
                    rows.append(d)
    return rows
