"""Independent verification of Frobenius certificates.

The checks here evaluate each defining identity directly on pure basis
tensors ``c_i (x) c_j`` of the plain tensor square, using maps written in
ambient coordinates.  They share nothing with the solvers in
:mod:`corings.frobenius` beyond exact linear algebra and the stored tensor
presentations (used only to compare classes inside ``C (x)_A C``).

Every function returns a :class:`Report` with one entry per clause; a
failing clause carries the basis indices of the first witness found.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import RingMap
from .bimodule import TensorPresentation
from .coring import Coring
from .linalg import Matrix, vsub


@dataclass
class ClauseResult:
    clause: str
    passed: bool
    witness: tuple = ()
    detail: str = ""

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        w = f" at {self.witness}" if self.witness else ""
        d = f" ({self.detail})" if self.detail else ""
        return f"{self.clause}: {status}{w}{d}"


@dataclass
class Report:
    subject: str
    clauses: list[ClauseResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    @property
    def first_failure(self) -> ClauseResult | None:
        return next((c for c in self.clauses if not c.passed), None)

    def add(self, clause: str, witness=None, detail: str = "") -> None:
        if witness is None:
            self.clauses.append(ClauseResult(clause, True))
        else:
            self.clauses.append(ClauseResult(clause, False, tuple(witness), detail))

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "clauses": [{"clause": c.clause, "passed": c.passed,
                         "witness": [str(x) for x in c.witness], "detail": c.detail}
                        for c in self.clauses],
        }

    def __str__(self):
        return "\n".join([f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
                         + [f"  {c}" for c in self.clauses])


def _first(pred, it):
    for x in it:
        if pred(x):
            return x
    return None


def to_ambient(T: TensorPresentation, F: Matrix) -> tuple[Matrix, bool]:
    """Accept a map on the tensor quotient or on the plain tensor; return ambient form.

    The flag says whether the input was already ambient (so balancedness is a
    real claim to check).
    """
    if F.cols == T.ambient_dim:
        return F, True
    if F.cols == T.dim:
        return F @ T.project, False
    raise ValueError(f"map has {F.cols} columns; expected {T.dim} (quotient) "
                     f"or {T.ambient_dim} (plain tensor)")


def _lifted_terms(T: TensorPresentation, x) -> list[tuple]:
    return [(c, *T.basis_pairs[w]) for w, c in enumerate(x) if c]


def _sum(field, n, terms) -> tuple:
    """``sum c * v`` over ``(c, v)`` pairs, as a tuple of length n."""
    acc = [field.zero] * n
    for c, v in terms:
        if c:
            for k, x in enumerate(v):
                if x:
                    acc[k] += c * x
    return tuple(acc)


def _nz(col) -> list[tuple]:
    return [(s, x) for s, x in enumerate(col) if x]


def _check_balanced(report: Report, name: str, C: Coring, cols, rows: int, ambient: bool) -> None:
    """``F(c a (x) c') == F(c (x) a c')`` on basis elements (only meaningful for ambient F)."""
    if not ambient:
        report.add(name)
        return
    M, f = C.carrier, C.field
    n = M.dim
    for a in range(C.base.dim):
        R, L = M.right_act[a], M.left_act[a]
        for i in range(n):
            ri = _nz(R.column(i))
            for j in range(n):
                lhs = _sum(f, rows, [(x, cols[s * n + j]) for s, x in ri])
                rhs = _sum(f, rows, [(x, cols[i * n + t]) for t, x in _nz(L.column(j))])
                if lhs != rhs:
                    report.add(name, (a, i, j), "map does not vanish on a balancing relation")
                    return
    report.add(name)


def _check_bilinear(report: Report, name: str, C: Coring, cols, rows: int, left_mats, right_mats,
                    ) -> None:
    """``F(a c (x) c') == a F(c (x) c')`` and ``F(c (x) c' a) == F(c (x) c') a``."""
    M, f = C.carrier, C.field
    n = M.dim
    for a in range(C.base.dim):
        La, Ra = M.left_act[a], M.right_act[a]
        for i in range(n):
            li = _nz(La.column(i))
            for j in range(n):
                lhs = _sum(f, rows, [(x, cols[s * n + j]) for s, x in li])
                if lhs != left_mats[a].apply(cols[i * n + j]):
                    report.add(name, ("left", a, i, j), "map is not (A, A)-bilinear")
                    return
                rhs = _sum(f, rows, [(x, cols[i * n + t]) for t, x in _nz(Ra.column(j))])
                if rhs != right_mats[a].apply(cols[i * n + j]):
                    report.add(name, ("right", a, i, j), "map is not (A, A)-bilinear")
                    return
    report.add(name)


def _check_invariant(report: Report, C: Coring, e) -> None:
    M = C.carrier
    for a in range(C.base.dim):
        if M.left_act[a].apply(e) != M.right_act[a].apply(e):
            report.add("e_invariant", (a,), "a e != e a")
            return
    report.add("e_invariant")


def verify_reduced_system(C: Coring, gamma: Matrix, e) -> Report:
    """Check a reduced Frobenius system ``(gamma, e)`` clause by clause.

    ``gamma`` may be given on the quotient ``C (x)_A C`` or on the plain
    tensor square; in the latter case balancedness is checked as well.
    """
    rep = Report("reduced Frobenius system")
    f = C.field
    A, M, T2 = C.base, C.carrier, C.tensor
    n, da = M.dim, A.dim
    e = tuple(f(x) for x in e)
    if gamma.rows != da or gamma.cols not in (T2.dim, T2.ambient_dim) or len(e) != n:
        rep.add("shape", (gamma.rows, gamma.cols, len(e)), "gamma or e has the wrong shape")
        return rep
    G, ambient = to_ambient(T2, gamma)
    cols = G.columns()
    _check_balanced(rep, "gamma_balanced", C, cols, da, ambient)
    _check_bilinear(rep, "gamma_bilinear", C, cols, da, A.left_mult, A.right_mult)
    _check_invariant(rep, C, e)

    def g(i, j):
        return cols[i * n + j]

    # c_(1) gamma(c_(2) (x) c') == gamma(c (x) c'_(1)) c'_(2)
    terms = [_lifted_terms(T2, C.delta.column(i)) for i in range(n)]
    bad = None
    for i in range(n):
        for j in range(n):
            lhs = _sum(f, n, [(d, M.ract(M.basis_vector(p), g(q, j))) for d, p, q in terms[i]])
            rhs = _sum(f, n, [(d, M.lact(g(i, p), M.basis_vector(q))) for d, p, q in terms[j]])
            if lhs != rhs:
                bad = (i, j)
                break
        if bad:
            break
    rep.add("gamma_colinear", bad,
            "c_(1) gamma(c_(2) x c') != gamma(c x c'_(1)) c'_(2)" if bad else "")

    en = _nz(e)
    bad = _first(lambda i: _sum(f, da, [(x, g(i, t)) for t, x in en]) != C.counit.column(i), range(n))
    rep.add("gamma_right_unit", None if bad is None else (bad,), "gamma(c x e) != eps(c)")
    bad = _first(lambda i: _sum(f, da, [(x, g(s, i)) for s, x in en]) != C.counit.column(i), range(n))
    rep.add("gamma_left_unit", None if bad is None else (bad,), "gamma(e x c) != eps(c)")
    return rep


def verify_frobenius_system(C: Coring, pi: Matrix, e) -> Report:
    """Check ``(pi, e)``: bilinear, unit laws on both sides, and bicolinear.

    As for reduced systems, ``pi`` may be ambient (then balancedness is checked).
    """
    rep = Report("Frobenius system")
    f = C.field
    M, T2 = C.carrier, C.tensor
    n = M.dim
    e = tuple(f(x) for x in e)
    if pi.rows != n or pi.cols not in (T2.dim, T2.ambient_dim) or len(e) != n:
        rep.add("shape", (pi.rows, pi.cols, len(e)), "pi or e has the wrong shape")
        return rep
    P, ambient = to_ambient(T2, pi)
    cols = P.columns()
    _check_balanced(rep, "pi_balanced", C, cols, n, ambient)
    _check_bilinear(rep, "pi_bilinear", C, cols, n, M.left_act, M.right_act)
    _check_invariant(rep, C, e)

    def p_(i, j):
        return cols[i * n + j]

    en = _nz(e)
    bad = _first(lambda i: _sum(f, n, [(x, p_(i, t)) for t, x in en]) != M.basis_vector(i), range(n))
    rep.add("pi_right_unit", None if bad is None else (bad,), "pi(c x e) != c")
    bad = _first(lambda i: _sum(f, n, [(x, p_(s, i)) for s, x in en]) != M.basis_vector(i), range(n))
    rep.add("pi_left_unit", None if bad is None else (bad,), "pi(e x c) != c")

    terms = [_lifted_terms(T2, C.delta.column(i)) for i in range(n)]
    bad_l = bad_r = None
    for i in range(n):
        for j in range(n):
            mid = C.delta.apply(p_(i, j))
            if bad_l is None:
                lhs = _sum(f, T2.dim, [(d, T2.embed(M.basis_vector(p), p_(q, j)))
                                       for d, p, q in terms[i]])
                if lhs != mid:
                    bad_l = (i, j)
            if bad_r is None:
                rhs = _sum(f, T2.dim, [(d, T2.embed(p_(i, p), M.basis_vector(q)))
                                       for d, p, q in terms[j]])
                if rhs != mid:
                    bad_r = (i, j)
    rep.add("pi_left_colinear", bad_l,
            "c_(1) x pi(c_(2) x c') != Delta(pi(c x c'))" if bad_l else "")
    rep.add("pi_right_colinear", bad_r,
            "pi(c x c'_(1)) x c'_(2) != Delta(pi(c x c'))" if bad_r else "")
    return rep


def verify_frobenius_extension(ext: RingMap, E: Matrix, beta, tensor: TensorPresentation) -> Report:
    """Check Frobenius data ``(E, beta)`` for a ring map ``A -> B``.

    ``beta`` is either a class in ``tensor`` (``B (x)_A B``) or a vector on
    the plain tensor square of B.
    """
    rep = Report("Frobenius extension")
    A, B = ext.source, ext.target
    f = A.field
    n = B.dim
    beta = tuple(f(x) for x in beta)
    if E.shape != (A.dim, n) or len(beta) not in (tensor.dim, n * n):
        rep.add("shape", (E.rows, E.cols, len(beta)), "E or beta has the wrong shape")
        return rep
    if len(beta) == n * n:
        terms = [(c, *divmod(k, n)) for k, c in enumerate(beta) if c]
    else:
        terms = _lifted_terms(tensor, beta)

    def fE(b):
        return ext.matrix.apply(E.apply(b))

    bad = None
    for a in range(A.dim):
        fa = ext.matrix.column(a)
        av = A.basis_vector(a)
        for b in range(n):
            bv = B.basis_vector(b)
            if E.apply(B.mul(fa, bv)) != A.mul(av, E.column(b)):
                bad = ("left", a, b)
                break
            if E.apply(B.mul(bv, fa)) != A.mul(E.column(b), av):
                bad = ("right", a, b)
                break
        if bad:
            break
    rep.add("E_bilinear", bad, "E is not (A, A)-bilinear" if bad else "")

    bad = None
    for b in range(n):
        bv = B.basis_vector(b)
        acc = [f.zero] * tensor.dim
        for c, p, q in terms:
            left = tensor.embed(B.mul(bv, B.basis_vector(p)), B.basis_vector(q))
            right = tensor.embed(B.basis_vector(p), B.mul(B.basis_vector(q), bv))
            acc = [x + c * y for x, y in zip(acc, vsub(left, right))]
        if any(acc):
            bad = (b,)
            break
    rep.add("beta_central", bad, "b beta != beta b" if bad else "")

    bad_l = bad_r = None
    for b in range(n):
        bv = B.basis_vector(b)
        left = [f.zero] * n
        right = [f.zero] * n
        for c, p, q in terms:
            u = B.mul(fE(B.mul(bv, B.basis_vector(p))), B.basis_vector(q))
            v = B.mul(B.basis_vector(p), fE(B.mul(B.basis_vector(q), bv)))
            left = [x + c * y for x, y in zip(left, u)]
            right = [x + c * y for x, y in zip(right, v)]
        if bad_l is None and tuple(left) != bv:
            bad_l = (b,)
        if bad_r is None and tuple(right) != bv:
            bad_r = (b,)
    rep.add("dual_basis_left", bad_l, "sum E(b b_i) b^i != b" if bad_l else "")
    rep.add("dual_basis_right", bad_r, "sum b_i E(b^i b) != b" if bad_r else "")
    return rep
