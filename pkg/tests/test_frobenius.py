import pytest
from hypothesis import given, settings, strategies as st

from corings.algebra import identity_map, make_algebra
from corings.bimodule import hom_space, invariants, regular_bimodule
from corings.coring import co_frobenius_evidence, dual_ring, ext_tensor, sweedler_coring, trivial_coring
from corings.errors import NotASweedlerCoring, PreconditionFails, SystemRejected
from corings.fixtures import diagonal_in_t2, dual_numbers, group_algebra_c2, unit_map, upper_triangular
from corings.frobenius import (CertifiedNotFrobenius, Found, ImageNotInB, NoIsoEvidence, NotFoundWithinSearch, SearchConfig,
                               coring_from_extension, dual_bases, extension_from_sweedler,
                               find_frobenius_extension_data, find_reduced_system,
                               frobenius_functional_space, gamma_from_pi, gamma_space,
                               make_extension_data, make_reduced_system, phi_maps, pi_from_gamma,
                               solve_beta, sweedler_frobenius_system, sweedler_identification)
from corings.linalg import QQ, Matrix, rank, random_vector
from corings.verify import verify_frobenius_extension, verify_frobenius_system, verify_reduced_system

from helpers import cyclic_group_algebra, matrix_units


def mult_gamma(A):
    """Multiplication A (x)_Q A -> A on the plain tensor square."""
    return Matrix.from_columns(A.field, [A.mu[p][q] for p in range(A.dim) for q in range(A.dim)], A.dim)


def lincomb(mats, coeffs):
    acc = Matrix.zeros(mats[0].field, *mats[0].shape)
    for c, m in zip(coeffs, mats):
        acc = acc + m.scale(QQ(c))
    return acc


# --- verification examples ------------------------------------------------------


def test_trivial_coring_reduced_system():
    for A in (dual_numbers(), upper_triangular()):
        C = trivial_coring(A)
        assert verify_reduced_system(C, mult_gamma(A), A.unit).passed


def test_dual_number_sweedler_system(dual_reduced, dual_data):
    C = dual_reduced.coring
    Tsw = dual_data.tensor
    one, x = dual_data.ext.target.unit, dual_data.ext.target.basis_vector(1)
    alpha = tuple(a + b for a, b in zip(Tsw.embed(x, one), Tsw.embed(one, x)))
    assert dual_reduced.e == alpha
    assert verify_reduced_system(C, dual_reduced.gamma, alpha).passed
    assert verify_reduced_system(C, dual_reduced.gamma_ambient, alpha).passed


def test_wrong_invariant_fails_unit_clause(dual_reduced, dual_data):
    C = dual_reduced.coring
    A = dual_data.ext.target
    e = dual_data.tensor.embed(A.unit, A.unit)
    rep = verify_reduced_system(C, dual_reduced.gamma, e)
    assert not rep.passed
    failed = [c for c in rep.clauses if not c.passed]
    # 1 (x) 1 is not invariant either, but the unit clause must be among the failures
    bad = next(c for c in failed if c.clause in ("gamma_right_unit", "gamma_left_unit"))
    # the witness basis vector really violates gamma(c x e) = eps(c)
    (c,) = bad.witness
    cv = C.basis_vector(c)
    lhs = dual_reduced.gamma.apply(C.tensor.embed(cv, e) if bad.clause == "gamma_right_unit"
                                   else C.tensor.embed(e, cv))
    assert lhs != C.eps(cv)


def test_shape_clause(dual_reduced):
    C = dual_reduced.coring
    rep = verify_reduced_system(C, Matrix.zeros(QQ, 2, 3), dual_reduced.e)
    assert rep.first_failure.clause == "shape"


def test_unbalanced_ambient_gamma_rejected(dual_reduced):
    C = dual_reduced.coring
    G = dual_reduced.gamma_ambient.tolist()
    # an ambient column outside the chosen pure-tensor basis
    basis = {p * C.dim + q for p, q in C.tensor.basis_pairs}
    k = next(i for i in range(C.tensor.ambient_dim) if i not in basis)
    G[0][k] += 1
    rep = verify_reduced_system(C, Matrix(QQ, G), dual_reduced.e)
    assert rep.first_failure.clause == "gamma_balanced"


# --- Frobenius extensions ---------------------------------------------------------


def test_extension_examples(dual_data, c2_data):
    assert dual_data.report.passed and c2_data.report.passed
    A = upper_triangular()
    idA = identity_map(A)
    T = ext_tensor(idA)
    beta = T.embed(A.unit, A.unit)
    rep = verify_frobenius_extension(idA, Matrix.identity(QQ, 3), beta, T)
    assert rep.passed


def test_extension_failures(dual_data):
    ext = dual_data.ext
    T = dual_data.tensor
    rep = verify_frobenius_extension(ext, Matrix(QQ, [[1, 0]]), dual_data.beta, T)
    assert rep.first_failure.clause.startswith("dual_basis")
    rep = verify_frobenius_extension(ext, dual_data.E, [1, 0, 0, 0], T)
    assert rep.first_failure.clause == "beta_central"
    with pytest.raises(SystemRejected):
        make_extension_data(ext, dual_data.E, [0, 1, 0, 0])


def test_find_extension_data():
    res = find_frobenius_extension_data(unit_map(dual_numbers()))
    assert isinstance(res, Found)
    assert res.value.E == Matrix(QQ, [[0, 1]])
    assert res.value.beta_ambient == (0, 1, 1, 0)
    A = upper_triangular()
    res = find_frobenius_extension_data(identity_map(A))
    assert isinstance(res, Found)
    E = res.value.E
    # the center of T2 is Q, so E is a multiple of the identity; normalized it is 1
    assert E == Matrix.identity(QQ, 3)
    res = find_frobenius_extension_data(unit_map(A), trials=20, seed=0, bound=2 ** 16)
    assert isinstance(res, NoIsoEvidence) and res.max_rank < res.dim == 3 and res.trials >= 20


@pytest.mark.parametrize("build", [lambda: matrix_units(2), lambda: cyclic_group_algebra(3),
                                   group_algebra_c2])
def test_frobenius_algebras_found(build):
    res = find_frobenius_extension_data(unit_map(build()))
    assert isinstance(res, Found) and res.value.report.passed


def test_solve_beta_and_functional_space(dual_data):
    beta = solve_beta(dual_data.ext, dual_data.E)
    assert beta == dual_data.beta
    assert len(frobenius_functional_space(dual_data.ext)) == 2
    # E = evaluation at 1 is degenerate on Q[x]/(x^2)
    assert solve_beta(dual_data.ext, Matrix(QQ, [[1, 0]])) is None


def test_coring_from_extension(dual_data, c2_data):
    for data, expected in ((dual_data, (0, 1, 1, 0)), (c2_data, (QQ("1/2"), 0, 0, QQ("1/2")))):
        C, system = coring_from_extension(data)
        B = data.ext.target
        assert C.tensor.lift.apply(C.coproduct(B.unit)) == expected
        assert system.e == B.unit and system.report.passed
        assert C.counit == data.E
    A = upper_triangular()
    idA = identity_map(A)
    data = make_extension_data(idA, Matrix.identity(QQ, 3), ext_tensor(idA).embed(A.unit, A.unit))
    C, _ = coring_from_extension(data)
    T = trivial_coring(A)
    assert C.delta == T.delta and C.counit == T.counit


def test_sweedler_systems(dual_system, c2_system, c2_data):
    assert dual_system.report.passed and c2_system.report.passed
    assert c2_system.e == c2_data.beta
    A = dual_numbers()
    idA = identity_map(A)
    data = make_extension_data(idA, Matrix.identity(QQ, 2), ext_tensor(idA).embed(A.unit, A.unit))
    assert sweedler_frobenius_system(data).report.passed


def test_extension_from_sweedler_round_trip(dual_data, c2_data, dual_reduced, c2_reduced):
    for data, system in ((dual_data, dual_reduced), (c2_data, c2_reduced)):
        res = extension_from_sweedler(system.coring, system.gamma, system.e)
        assert isinstance(res, Found)
        assert res.value.E == data.E and res.value.beta == data.beta
    A = group_algebra_c2()
    idA = identity_map(A)
    data = make_extension_data(idA, Matrix.identity(QQ, 2), ext_tensor(idA).embed(A.unit, A.unit))
    s = sweedler_frobenius_system(data)
    res = extension_from_sweedler(s.coring, gamma_from_pi(s.coring, s.pi), s.e)
    assert res.value.E == Matrix.identity(QQ, 2)


def test_image_not_in_b(dual_reduced, dual_data):
    C = dual_reduced.coring
    A = dual_data.ext.target
    Tsw = dual_data.tensor
    u = Tsw.embed(A.unit, A.basis_vector(1))
    v = Tsw.embed(A.unit, A.unit)
    # the ambient index of the pure tensor (1 (x) x) (x) (1 (x) 1)
    k = u.index(1) * C.dim + v.index(1)
    G = dual_reduced.gamma_ambient.tolist()
    G[1][k] += 1   # gamma(1 x 1 1) now has an x component, not in the image of Q
    res = extension_from_sweedler(C, Matrix(QQ, G), dual_reduced.e)
    assert isinstance(res, ImageNotInB) and res.witness == 1
    assert res.value == (1, 1)


def test_not_a_sweedler_coring():
    A = dual_numbers()
    C = trivial_coring(A)
    with pytest.raises(NotASweedlerCoring):
        extension_from_sweedler(C, mult_gamma(A), A.unit)


def test_sweedler_identification():
    for A, d in ((dual_numbers(), 4), (group_algebra_c2(), 4), (upper_triangular(), 9)):
        phi = sweedler_identification(unit_map(A))
        assert phi.shape == (d, d) and rank(phi) == d


def test_gamma_is_e_under_identification(dual_system, c2_system, dual_data, c2_data):
    for system, data in ((dual_system, dual_data), (c2_system, c2_data)):
        C = system.coring
        gamma = gamma_from_pi(C, system.pi)
        A = data.ext.target
        Tsw = data.tensor
        one = Tsw.embed(A.unit, A.unit)
        for a in range(A.dim):
            val = gamma.apply(C.tensor.embed(Tsw.embed(A.unit, A.basis_vector(a)), one))
            assert val == data.ext.matrix.apply(data.E.column(a))


# --- gamma <-> pi ------------------------------------------------------------------


def test_trivial_pi_is_multiplication():
    A = upper_triangular()
    C = trivial_coring(A)
    g = mult_gamma(A) @ C.tensor.lift
    assert pi_from_gamma(C, g) == g
    assert gamma_from_pi(C, g) == g


def test_round_trip_on_fixtures(dual_system, c2_system, dual_reduced, c2_reduced):
    for s in (dual_system, c2_system):
        g = gamma_from_pi(s.coring, s.pi)
        assert pi_from_gamma(s.coring, g) == s.pi
    for r in (dual_reduced, c2_reduced):
        assert gamma_from_pi(r.coring, pi_from_gamma(r.coring, r.gamma)) == r.gamma


def test_precondition_failures(dual_reduced):
    C = dual_reduced.coring
    homs = gamma_space(C)
    # a bilinear map that is not colinear
    bil = hom_space(C.tensor.quotient, regular_bimodule(C.base))
    span = Matrix(QQ, [h.entries for h in homs])
    bad = next(h for h in bil if rank(span.vstack(Matrix(QQ, [h.entries]))) > rank(span))
    with pytest.raises(PreconditionFails) as info:
        pi_from_gamma(C, bad)
    assert info.value.witness[0] == "gamma_colinear"


@settings(max_examples=20)
@given(st.sampled_from(["dual", "c2", "t2"]), st.integers(0, 10 ** 6))
def test_round_trip_random_gamma_space(which, seed):
    C = _coring(which)
    basis = gamma_space(C)
    g = lincomb(basis, random_vector(len(basis), seed, 5))
    pi = pi_from_gamma(C, g)
    assert gamma_from_pi(C, pi) == g
    assert pi_from_gamma(C, gamma_from_pi(C, pi)) == pi


_CORINGS = {}


def _coring(which):
    if which not in _CORINGS:
        build = {"dual": dual_numbers, "c2": group_algebra_c2, "t2": upper_triangular}[which]
        _CORINGS[which] = sweedler_coring(unit_map(build()))
    return _CORINGS[which]


@settings(max_examples=30)
@given(st.sampled_from(["dual", "c2"]), st.integers(0, 10 ** 6), st.sampled_from([0, 1, 2, 3]))
def test_reduced_passes_iff_frobenius_passes(which, seed, mode):
    C = _coring(which)
    res = find_reduced_system(C)
    base = res.value
    g, e = base.gamma, base.e
    inv = invariants(C.carrier)
    if mode == 1:      # rescaled system, still valid
        lam = QQ(random_vector(1, seed, 7)[0] or 3)
        g, e = g.scale(1 / lam), tuple(lam * x for x in e)
    elif mode == 2:    # random element of the gamma space with the true e
        g = lincomb(gamma_space(C), random_vector(len(gamma_space(C)), seed, 3))
    elif mode == 3:    # true gamma with a random invariant
        e = tuple(sum(QQ(c) * v[i] for c, v in zip(random_vector(len(inv), seed, 3), inv))
                  for i in range(C.dim))
    red = verify_reduced_system(C, g, e).passed
    full = verify_frobenius_system(C, pi_from_gamma(C, g), e).passed
    assert red == full


# --- dual bases and the isomorphisms phi ----------------------------------------------


def test_dual_bases(dual_reduced, c2_reduced):
    A = make_algebra(QQ, 1, [[[1]]], [1])
    C = trivial_coring(A)
    triv = make_reduced_system(C, mult_gamma(A) @ C.tensor.lift, A.unit)
    db = dual_bases(triv)
    assert len(db.left) == 1 and db.left[0][0] == Matrix.identity(QQ, 1)
    for r in (dual_reduced, c2_reduced):
        db = dual_bases(r)
        C = r.coring
        ev = Matrix(QQ, [row for xi, _ in db.left for row in xi.tolist()])
        assert rank(ev) == C.dim
        ev = Matrix(QQ, [row for xi, _ in db.right for row in xi.tolist()])
        assert rank(ev) == C.dim


def test_phi_maps(dual_reduced, c2_reduced):
    for r in (dual_reduced, c2_reduced):
        pm = phi_maps(r)
        n = r.coring.dim
        assert pm.phi_l.shape == (n, n)
        assert pm.phi_l_inv == pm.phi_l.inverse()
        assert pm.phi_r_inv == pm.phi_r.inverse()
        # phi_l is an injective left module map, consistent with the co-Frobenius evidence
        ev = co_frobenius_evidence(r.coring, "left")
        assert ev.verdict == "certified_yes"
        assert dual_ring(r.coring, "left").dim == rank(pm.phi_l)


# --- search ----------------------------------------------------------------------------


def test_search_trivial_coring():
    for A in (dual_numbers(), upper_triangular()):
        C = trivial_coring(A)
        res = find_reduced_system(C)
        assert isinstance(res, Found)
        assert res.value.e == A.unit
        assert res.value.gamma_ambient == mult_gamma(A)


def test_search_dual_number_sweedler(dual_reduced):
    C = dual_reduced.coring
    res = find_reduced_system(C)
    assert isinstance(res, Found) and res.value.report.passed
    assert verify_reduced_system(C, res.value.gamma, res.value.e).passed
    assert res.value.e == dual_reduced.e


def test_search_t2_sweedler():
    C = _coring("t2")
    res = find_reduced_system(C, SearchConfig(seed=0))
    assert isinstance(res, NotFoundWithinSearch)
    d = res.diagnostics
    assert d["module_iso_max_rank"] < C.dim and not d["module_iso_found"]
    assert d["extension"] in ("no_iso_found", "certain_no")
    again = find_reduced_system(C, SearchConfig(seed=0))
    assert again.diagnostics == d


def test_search_user_candidate(c2_reduced):
    C = c2_reduced.coring
    e = tuple(2 * x for x in c2_reduced.e)
    res = find_reduced_system(C, SearchConfig(e_candidates=(e,), evidence=False))
    assert isinstance(res, Found)
    assert res.value.e[next(i for i, x in enumerate(e) if x)] == 1


def test_dimension_obstruction_certifies_no():
    # left dual of T2 (x)_diag T2 is End_diag(T2) = End(e11 T2) + End(e22 T2), dimension 4 + 1
    C = sweedler_coring(diagonal_in_t2())
    assert C.dim == 4
    res = find_reduced_system(C)
    assert isinstance(res, CertifiedNotFrobenius)
    assert "dimension 5" in res.reason
