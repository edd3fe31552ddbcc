"""Standard small examples, as Python objects and as workspace documents.

* dual numbers ``Q[x]/(x^2)`` with ``E(a + bx) = b``, ``beta = x(x)1 + 1(x)x``;
* the group algebra ``Q[C2]`` with ``E(a + bg) = 2a``, ``beta = (1(x)1 + g(x)g)/2``;
* upper triangular 2x2 matrices ``T2`` (basis e11, e12, e22), which is not
  Frobenius over the ground field and serves as a negative control;
* the diagonal ``Q x Q`` inside ``T2``, whose Sweedler coring has a 5-dimensional
  left dual against dimension 4, so it is provably not Frobenius.
"""

from __future__ import annotations

from .algebra import Algebra, RingMap, check_ring_map, ground_algebra, make_algebra
from .bimodule import regular_bimodule
from .coring import sweedler_coring, trivial_coring
from .frobenius import (FrobeniusExtensionData, gamma_from_pi, make_extension_data,
                        sweedler_frobenius_system)
from .linalg import QQ, Field, Matrix
from .verify import verify_reduced_system
from .workspace import (algebra_to_json, bimodule_to_json, certificate_to_json,
                        explicit_coring_to_json, extension_to_json)


def dual_numbers(field: Field = QQ) -> Algebra:
    mu = [[[1, 0], [0, 1]],
          [[0, 1], [0, 0]]]
    return make_algebra(field, 2, mu, [1, 0], ("1", "x"))


def group_algebra_c2(field: Field = QQ) -> Algebra:
    mu = [[[1, 0], [0, 1]],
          [[0, 1], [1, 0]]]
    return make_algebra(field, 2, mu, [1, 0], ("1", "g"))


def upper_triangular(field: Field = QQ) -> Algebra:
    z = [0, 0, 0]
    mu = [[[1, 0, 0], [0, 1, 0], z],
          [z, z, [0, 1, 0]],
          [z, z, [0, 0, 1]]]
    return make_algebra(field, 3, mu, [1, 0, 1], ("e11", "e12", "e22"))


def diagonal(field: Field = QQ) -> Algebra:
    mu = [[[1, 0], [0, 0]],
          [[0, 0], [0, 1]]]
    return make_algebra(field, 2, mu, [1, 1], ("p", "q"))


def diagonal_in_t2(field: Field = QQ) -> RingMap:
    """``p -> e11``, ``q -> e22``."""
    return check_ring_map(Matrix(field, [[1, 0], [0, 0], [0, 1]]), diagonal(field), upper_triangular(field))


def unit_map(A: Algebra) -> RingMap:
    """The ground field into A."""
    return check_ring_map(Matrix.from_columns(A.field, [A.unit], A.dim), ground_algebra(A.field), A)


def dual_number_data(field: Field = QQ) -> FrobeniusExtensionData:
    ext = unit_map(dual_numbers(field))
    return make_extension_data(ext, Matrix(field, [[0, 1]]), [0, 1, 1, 0])


def group_c2_data(field: Field = QQ) -> FrobeniusExtensionData:
    ext = unit_map(group_algebra_c2(field))
    return make_extension_data(ext, Matrix(field, [[2, 0]]), ["1/2", 0, 0, "1/2"])


# ---------------------------------------------------------------------------
# workspace documents


def trivial_workspace() -> dict:
    """Trivial coring over T2, once by kind and once written out explicitly."""
    A = upper_triangular()
    C = trivial_coring(A)
    return {
        "field": "Q",
        "algebras": {"T2": algebra_to_json(A)},
        "bimodules": {"T2reg": bimodule_to_json("T2", "T2", regular_bimodule(A))},
        "corings": {"trivial": {"kind": "trivial", "algebra": "T2"},
                    "explicit": explicit_coring_to_json("T2", "T2reg", C)},
    }


def dualnum_workspace() -> dict:
    """Sweedler coring of ``Q -> Q[x]/(x^2)`` with a stored reduced system."""
    data = dual_number_data()
    system = sweedler_frobenius_system(data)
    C = system.coring
    gamma = gamma_from_pi(C, system.pi)
    rep = verify_reduced_system(C, gamma, system.e)
    return {
        "field": "Q",
        "algebras": {"D": algebra_to_json(data.ext.target)},
        "extensions": {"unit": extension_to_json("k", "D", data.ext, data)},
        "corings": {"sweedler": {"kind": "sweedler", "extension": "unit"},
                    "D_over_k": {"kind": "from_extension", "extension": "unit"}},
        "certificates": {"sweedler_system": certificate_to_json(
            "sweedler", gamma @ C.tensor.project, system.e, rep)},
    }


def group_c2_workspace() -> dict:
    data = group_c2_data()
    return {
        "field": "Q",
        "algebras": {"G": algebra_to_json(data.ext.target)},
        "extensions": {"unit": extension_to_json("k", "G", data.ext, data)},
        "corings": {"sweedler": {"kind": "sweedler", "extension": "unit"}},
    }


def t2_workspace() -> dict:
    A = upper_triangular()
    ext = unit_map(A)
    sweedler_coring(ext)  # validates
    return {
        "field": "Q",
        "algebras": {"T2": algebra_to_json(A)},
        "extensions": {"unit": extension_to_json("k", "T2", ext)},
        "corings": {"sweedler": {"kind": "sweedler", "extension": "unit"}},
    }


def t2_diagonal_workspace() -> dict:
    ext = diagonal_in_t2()
    sweedler_coring(ext)
    return {
        "field": "Q",
        "algebras": {"T2": algebra_to_json(ext.target), "diag": algebra_to_json(ext.source)},
        "extensions": {"diag": extension_to_json("diag", "T2", ext)},
        "corings": {"sweedler": {"kind": "sweedler", "extension": "diag"}},
    }


WORKSPACES = {
    "trivial.json": trivial_workspace,
    "dualnum_sweedler.json": dualnum_workspace,
    "group_c2.json": group_c2_workspace,
    "t2_sweedler.json": t2_workspace,
    "t2_diagonal.json": t2_diagonal_workspace,
}
