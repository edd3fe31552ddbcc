"""Workspaces: named algebras, extensions, bimodules, corings and certificates in one JSON file.

Schema (scalars are strings ``"p/q"`` or integers; matrices are row-major)::

    {"field": "Q" | {"GF": p},
     "algebras":   {name: {"dim", "basis", "mu", "unit"}},
     "extensions": {name: {"source", "target", "matrix", "frobenius"?: {"E", "beta"}}},
     "bimodules":  {name: {"left_ring", "right_ring", "dim", "left_act", "right_act"}},
     "corings":    {name: {"kind": "trivial", "algebra"}
                        | {"kind": "sweedler" | "from_extension", "extension"}
                        | {"kind": "explicit", "base", "carrier", "coproduct_raw", "counit"}},
     "certificates": {name: {"coring", "gamma", "e", ...}}}

The name ``k`` always refers to the ground field as a one-dimensional
algebra.  ``beta`` and certificate ``gamma`` use coordinates on the plain
tensor square, so they do not depend on how quotients are presented.
Structural problems raise :class:`WorkspaceError` carrying a JSON pointer;
mathematical failures raise the verification errors of the other modules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import Algebra, RingMap, check_ring_map, ground_algebra, make_algebra
from .bimodule import Bimodule, make_bimodule
from .coring import Coring, make_coring, sweedler_coring, trivial_coring
from .frobenius import (FrobeniusExtensionData, FrobeniusSystem, coring_from_extension,
                        make_extension_data, sweedler_frobenius_system)
from .linalg import Field, Matrix, field_from_json

SECTIONS = ("algebras", "extensions", "bimodules", "corings", "certificates")
CORING_KINDS = ("trivial", "sweedler", "from_extension", "explicit")


class WorkspaceError(ValueError):
    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


# ---------------------------------------------------------------------------
# scalars, vectors, matrices


def scalar_from_json(field: Field, x, ptr: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise WorkspaceError(ptr, f"scalar must be an integer or a string, got {x!r}")
    try:
        return field(x)
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise WorkspaceError(ptr, f"bad scalar {x!r}: {err}") from None


def vector_from_json(field: Field, v, ptr: str, n: int | None = None) -> tuple:
    if not isinstance(v, list):
        raise WorkspaceError(ptr, "expected an array")
    if n is not None and len(v) != n:
        raise WorkspaceError(ptr, f"expected length {n}, got {len(v)}")
    return tuple(scalar_from_json(field, x, f"{ptr}/{i}") for i, x in enumerate(v))


def matrix_from_json(field: Field, m, ptr: str, rows: int | None = None,
                     cols: int | None = None) -> Matrix:
    if not isinstance(m, list) or not m:
        raise WorkspaceError(ptr, "expected a non-empty array of rows")
    if rows is not None and len(m) != rows:
        raise WorkspaceError(ptr, f"expected {rows} rows, got {len(m)}")
    width = cols if cols is not None else (len(m[0]) if isinstance(m[0], list) else None)
    data = [vector_from_json(field, r, f"{ptr}/{i}", width) for i, r in enumerate(m)]
    return Matrix(field, data, width)


def scalar_to_json(field: Field, x) -> str:
    return field.format(x)


def vector_to_json(field: Field, v) -> list:
    return [field.format(x) for x in v]


def matrix_to_json(m: Matrix) -> list:
    return [vector_to_json(m.field, r) for r in m.tolist()]


def dumps(obj) -> str:
    """Byte-stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# object serializers


def algebra_to_json(A: Algebra) -> dict:
    f = A.field
    return {"dim": A.dim, "basis": list(A.basis_names),
            "mu": [[vector_to_json(f, c) for c in row] for row in A.mu],
            "unit": vector_to_json(f, A.unit)}


def extension_to_json(source: str, target: str, ext: RingMap,
                      data: FrobeniusExtensionData | None = None) -> dict:
    out = {"source": source, "target": target, "matrix": matrix_to_json(ext.matrix)}
    if data is not None:
        out["frobenius"] = {"E": matrix_to_json(data.E),
                            "beta": vector_to_json(ext.source.field, data.beta_ambient)}
    return out


def bimodule_to_json(left: str, right: str, M: Bimodule) -> dict:
    return {"left_ring": left, "right_ring": right, "dim": M.dim,
            "left_act": [matrix_to_json(m) for m in M.left_act],
            "right_act": [matrix_to_json(m) for m in M.right_act]}


def explicit_coring_to_json(base: str, carrier: str, C: Coring) -> dict:
    return {"kind": "explicit", "base": base, "carrier": carrier,
            "coproduct_raw": matrix_to_json(C.tensor.lift @ C.delta),
            "counit": matrix_to_json(C.counit)}


def certificate_to_json(coring: str, gamma_ambient: Matrix, e, report=None) -> dict:
    out = {"coring": coring, "gamma": matrix_to_json(gamma_ambient),
           "e": vector_to_json(gamma_ambient.field, e)}
    if report is not None:
        out["verified"] = report.passed
        out["clauses"] = [c.clause for c in report.clauses]
    return out


# ---------------------------------------------------------------------------
# workspace


@dataclass
class Certificate:
    name: str
    coring: str
    gamma: Matrix
    e: tuple


@dataclass
class Workspace:
    field: Field
    algebras: dict = dc_field(default_factory=dict)
    extensions: dict = dc_field(default_factory=dict)
    frobenius_data: dict = dc_field(default_factory=dict)
    bimodules: dict = dc_field(default_factory=dict)
    corings: dict = dc_field(default_factory=dict)
    coring_kinds: dict = dc_field(default_factory=dict)
    coring_sources: dict = dc_field(default_factory=dict)
    certificates: dict = dc_field(default_factory=dict)

    def kind_of(self, name: str) -> str | None:
        for section in SECTIONS:
            if name in getattr(self, section):
                return section
        return None

    def certificates_for(self, coring: str) -> list[Certificate]:
        return [c for c in self.certificates.values() if c.coring == coring]

    def stored_system(self, coring: str) -> FrobeniusSystem | None:
        """A Frobenius system implied by stored extension data, if any."""
        kind = self.coring_kinds.get(coring)
        src = self.coring_sources.get(coring)
        if kind == "sweedler" and src in self.frobenius_data:
            return sweedler_frobenius_system(self.frobenius_data[src])
        if kind == "from_extension":
            return coring_from_extension(self.frobenius_data[src])[1]
        return None


def _obj(x, ptr: str) -> dict:
    if not isinstance(x, dict):
        raise WorkspaceError(ptr, "expected an object")
    return x


def _get(d: dict, key: str, ptr: str):
    if key not in d:
        raise WorkspaceError(ptr, f"missing key {key!r}")
    return d[key]


def _int(x, ptr: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise WorkspaceError(ptr, "expected a positive integer")
    return x


def _ref(table: dict, name, ptr: str, what: str):
    if not isinstance(name, str) or name not in table:
        raise WorkspaceError(ptr, f"unknown {what} {name!r}")
    return table[name]


def load_workspace(path) -> Workspace:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise WorkspaceError("", f"invalid JSON at line {err.lineno}, column {err.colno}: "
                                 f"{err.msg}") from None
    return workspace_from_json(doc)


def workspace_from_json(doc) -> Workspace:
    doc = _obj(doc, "")
    unknown = set(doc) - {"field", *SECTIONS}
    if unknown:
        raise WorkspaceError("", f"unknown keys {sorted(unknown)}")
    try:
        f = field_from_json(doc.get("field", "Q"))
    except (ValueError, TypeError) as err:
        raise WorkspaceError("/field", str(err)) from None
    ws = Workspace(f)
    ws.algebras["k"] = ground_algebra(f)

    for name, spec in _obj(doc.get("algebras", {}), "/algebras").items():
        ptr = f"/algebras/{name}"
        spec = _obj(spec, ptr)
        n = _int(_get(spec, "dim", ptr), f"{ptr}/dim")
        mu = _get(spec, "mu", ptr)
        if not isinstance(mu, list) or len(mu) != n or any(
                not isinstance(r, list) or len(r) != n for r in mu):
            raise WorkspaceError(f"{ptr}/mu", f"expected a {n}x{n} array of vectors")
        mu_v = [[vector_from_json(f, c, f"{ptr}/mu/{i}/{j}", n) for j, c in enumerate(r)]
                for i, r in enumerate(mu)]
        unit = vector_from_json(f, _get(spec, "unit", ptr), f"{ptr}/unit", n)
        basis = spec.get("basis", [])
        ws.algebras[name] = make_algebra(f, n, mu_v, unit, tuple(basis))

    for name, spec in _obj(doc.get("extensions", {}), "/extensions").items():
        ptr = f"/extensions/{name}"
        spec = _obj(spec, ptr)
        A = _ref(ws.algebras, _get(spec, "source", ptr), f"{ptr}/source", "algebra")
        B = _ref(ws.algebras, _get(spec, "target", ptr), f"{ptr}/target", "algebra")
        m = matrix_from_json(f, _get(spec, "matrix", ptr), f"{ptr}/matrix", B.dim, A.dim)
        ext = check_ring_map(m, A, B)
        ws.extensions[name] = ext
        if "frobenius" in spec:
            fr = _obj(spec["frobenius"], f"{ptr}/frobenius")
            E = matrix_from_json(f, _get(fr, "E", f"{ptr}/frobenius"), f"{ptr}/frobenius/E",
                                 A.dim, B.dim)
            beta = vector_from_json(f, _get(fr, "beta", f"{ptr}/frobenius"),
                                    f"{ptr}/frobenius/beta", B.dim * B.dim)
            ws.frobenius_data[name] = make_extension_data(ext, E, beta)

    for name, spec in _obj(doc.get("bimodules", {}), "/bimodules").items():
        ptr = f"/bimodules/{name}"
        spec = _obj(spec, ptr)
        X = _ref(ws.algebras, _get(spec, "left_ring", ptr), f"{ptr}/left_ring", "algebra")
        Y = _ref(ws.algebras, _get(spec, "right_ring", ptr), f"{ptr}/right_ring", "algebra")
        n = _int(_get(spec, "dim", ptr), f"{ptr}/dim")
        acts = []
        for side, R in (("left_act", X), ("right_act", Y)):
            mats = _get(spec, side, ptr)
            if not isinstance(mats, list) or len(mats) != R.dim:
                raise WorkspaceError(f"{ptr}/{side}", f"expected {R.dim} matrices")
            acts.append([matrix_from_json(f, m, f"{ptr}/{side}/{i}", n, n)
                         for i, m in enumerate(mats)])
        ws.bimodules[name] = make_bimodule(X, Y, acts[0], acts[1])

    for name, spec in _obj(doc.get("corings", {}), "/corings").items():
        ptr = f"/corings/{name}"
        spec = _obj(spec, ptr)
        kind = _get(spec, "kind", ptr)
        if kind not in CORING_KINDS:
            raise WorkspaceError(f"{ptr}/kind", f"kind must be one of {list(CORING_KINDS)}")
        ws.coring_kinds[name] = kind
        if kind == "trivial":
            A = _ref(ws.algebras, _get(spec, "algebra", ptr), f"{ptr}/algebra", "algebra")
            ws.corings[name] = trivial_coring(A)
        elif kind == "sweedler":
            src = _get(spec, "extension", ptr)
            ws.corings[name] = sweedler_coring(_ref(ws.extensions, src, f"{ptr}/extension",
                                                    "extension"))
            ws.coring_sources[name] = src
        elif kind == "from_extension":
            src = _get(spec, "extension", ptr)
            data = _ref(ws.frobenius_data, src, f"{ptr}/extension",
                        "extension with Frobenius data")
            ws.corings[name] = coring_from_extension(data)[0]
            ws.coring_sources[name] = src
        else:
            A = _ref(ws.algebras, _get(spec, "base", ptr), f"{ptr}/base", "algebra")
            M = _ref(ws.bimodules, _get(spec, "carrier", ptr), f"{ptr}/carrier", "bimodule")
            n = M.dim
            raw = matrix_from_json(f, _get(spec, "coproduct_raw", ptr), f"{ptr}/coproduct_raw",
                                   n * n, n)
            eps = matrix_from_json(f, _get(spec, "counit", ptr), f"{ptr}/counit", A.dim, n)
            ws.corings[name] = make_coring(A, M, raw, eps)

    for name, spec in _obj(doc.get("certificates", {}), "/certificates").items():
        ws.certificates[name] = certificate_from_json(ws, spec, f"/certificates/{name}", name)
    return ws


def certificate_from_json(ws: Workspace, spec, ptr: str, name: str = "certificate") -> Certificate:
    """Structural parse only; whether the certificate is valid is for ``check`` to decide."""
    spec = _obj(spec, ptr)
    cname = _get(spec, "coring", ptr)
    C = _ref(ws.corings, cname, f"{ptr}/coring", "coring")
    gamma = matrix_from_json(ws.field, _get(spec, "gamma", ptr), f"{ptr}/gamma", C.base.dim)
    if gamma.cols not in (C.tensor.dim, C.tensor.ambient_dim):
        raise WorkspaceError(f"{ptr}/gamma", f"expected {C.tensor.ambient_dim} columns "
                                             f"(plain tensor square), got {gamma.cols}")
    e = vector_from_json(ws.field, _get(spec, "e", ptr), f"{ptr}/e", C.dim)
    return Certificate(name, cname, gamma, e)
