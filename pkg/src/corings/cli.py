"""Command line front end.

Exit codes: 0 pass / found, 1 verification failure, 2 usage or parse error,
3 not found within the search, 4 certified not Frobenius, 5 dimension budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CoringError, DimensionBudgetExceeded, VerificationError
from .frobenius import (CertifiedNotFrobenius, Found, SearchConfig, find_reduced_system,
                        make_frobenius_system, pi_from_gamma)
from .tower import IndexProfile, TowerConfig, build_tower, tower_index_profile
from .verify import verify_reduced_system
from .workspace import (WorkspaceError, certificate_from_json, certificate_to_json, dumps,
                        load_workspace, vector_from_json)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_CERTIFIED_NO, EXIT_BUDGET = range(6)


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load(path):
    """Workspace or an exit code."""
    try:
        return load_workspace(path)
    except OSError as err:
        _err(f"error: cannot read {path}: {err}")
        return EXIT_USAGE
    except WorkspaceError as err:
        _err(f"parse error: {err}")
        return EXIT_USAGE
    except VerificationError as err:
        print(f"FAIL while loading {path}: {err.name}{err.witness or ''}"
              + (f" ({err.detail})" if err.detail else ""))
        return EXIT_FAIL


def _emit(args, human: list[str], payload: dict) -> None:
    if args.json:
        sys.stdout.write(dumps(payload))
    else:
        print("\n".join(human))


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    ws = _load(args.path)
    if isinstance(ws, int):
        return ws
    name = args.name
    kind = ws.kind_of(name)
    if kind is None:
        _err(f"error: no object named {name!r}")
        return EXIT_USAGE
    reports = []
    if kind == "extensions" and name in ws.frobenius_data:
        reports.append(ws.frobenius_data[name].report)
    if kind == "corings":
        certs = ws.certificates_for(name)
        if args.certificate:
            try:
                with open(args.certificate) as fh:
                    doc = json.load(fh)
                if isinstance(doc, dict) and "coring" not in doc:
                    doc = dict(doc, coring=name)
                certs = [certificate_from_json(ws, doc, "", args.certificate)]
            except (OSError, json.JSONDecodeError) as err:
                _err(f"error: cannot read certificate: {err}")
                return EXIT_USAGE
            except WorkspaceError as err:
                _err(f"parse error in certificate: {err}")
                return EXIT_USAGE
            if certs[0].coring != name:
                _err(f"error: certificate is for coring {certs[0].coring!r}, not {name!r}")
                return EXIT_USAGE
        for cert in certs:
            reports.append(verify_reduced_system(ws.corings[name], cert.gamma, cert.e))
    if kind == "certificates":
        cert = ws.certificates[name]
        reports.append(verify_reduced_system(ws.corings[cert.coring], cert.gamma, cert.e))
    passed = all(r.passed for r in reports)
    human = [f"{kind[:-1]} {name}: {'PASS' if passed else 'FAIL'}"]
    human += [str(r) for r in reports]
    bad = next((r.first_failure for r in reports if not r.passed), None)
    if bad is not None:
        human.append(f"first failure: {bad}")
    _emit(args, human, {"object": name, "kind": kind[:-1], "passed": passed,
                        "reports": [r.to_json() for r in reports]})
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# find-frobenius


def _search_config(args, ws, C) -> SearchConfig:
    cands = []
    for i, s in enumerate(args.e_candidate or []):
        cands.append(vector_from_json(ws.field, [x.strip() for x in s.split(",")],
                                      f"--e-candidate[{i}]", C.dim))
    return SearchConfig(seed=args.seed, trials=args.trials, coeff_bound=args.coeff_bound,
                        e_candidates=tuple(cands))


def cmd_find_frobenius(args) -> int:
    ws = _load(args.path)
    if isinstance(ws, int):
        return ws
    C = ws.corings.get(args.coring)
    if C is None:
        _err(f"error: no coring named {args.coring!r}")
        return EXIT_USAGE
    try:
        cfg = _search_config(args, ws, C)
    except WorkspaceError as err:
        _err(f"error: {err}")
        return EXIT_USAGE
    res = find_reduced_system(C, cfg)
    search = {"seed": cfg.seed, "trials": cfg.trials, "coeff_bound": cfg.coeff_bound}
    if isinstance(res, Found):
        s = res.value
        out = certificate_to_json(args.coring, s.gamma_ambient, s.e, s.report)
        out.update(status="found", search=search)
        sys.stdout.write(dumps(out))
        return EXIT_PASS
    if isinstance(res, CertifiedNotFrobenius):
        sys.stdout.write(dumps({"status": "certified_not_frobenius", "coring": args.coring,
                                "reason": res.reason}))
        return EXIT_CERTIFIED_NO
    sys.stdout.write(dumps({"status": "not_found", "coring": args.coring, "search": search,
                            "candidates_tried": res.candidates_tried,
                            "diagnostics": res.diagnostics}))
    return EXIT_NOT_FOUND


# ---------------------------------------------------------------------------
# tower


def _system_for(ws, name: str):
    """Stored system, then stored certificate, then search.  Returns a system or an exit code."""
    sysm = ws.stored_system(name)
    if sysm is not None:
        return sysm, "stored extension data"
    C = ws.corings[name]
    for cert in ws.certificates_for(name):
        rep = verify_reduced_system(C, cert.gamma, cert.e)
        if not rep.passed:
            print(f"certificate {cert.name} rejected: {rep.first_failure}")
            return EXIT_FAIL, None
        gamma = cert.gamma @ C.tensor.lift if cert.gamma.cols == C.tensor.ambient_dim else cert.gamma
        return make_frobenius_system(C, pi_from_gamma(C, gamma), cert.e), f"certificate {cert.name}"
    res = find_reduced_system(C)
    if isinstance(res, Found):
        s = res.value
        return make_frobenius_system(C, pi_from_gamma(C, s.gamma), s.e), "search"
    if isinstance(res, CertifiedNotFrobenius):
        print(f"coring {name} is not Frobenius: {res.reason}")
        return EXIT_CERTIFIED_NO, None
    print(f"no Frobenius system found for {name} ({res.candidates_tried} candidates)")
    return EXIT_NOT_FOUND, None


def cmd_tower(args) -> int:
    ws = _load(args.path)
    if isinstance(ws, int):
        return ws
    if args.coring not in ws.corings:
        _err(f"error: no coring named {args.coring!r}")
        return EXIT_USAGE
    if args.levels < 1 or args.budget < 1:
        _err("error: --levels and --budget must be positive")
        return EXIT_USAGE
    sysm, source = _system_for(ws, args.coring)
    if isinstance(sysm, int):
        return sysm
    try:
        levels = build_tower(sysm, TowerConfig(levels=args.levels, budget=args.budget))
    except DimensionBudgetExceeded as err:
        print(f"budget exceeded: {err}")
        return EXIT_BUDGET
    f = ws.field
    prof = tower_index_profile(levels)
    if isinstance(prof, IndexProfile):
        profile = {"alternates": prof.alternates,
                   "indices": [[f.format(i.u), f.format(i.v)] for i in prof.indices],
                   "ratios": [f.format(r) for r in prof.ratios()]}
    else:
        profile = {"not_strongly_coseparable": prof.witness}
    dims = [levels[0].inclusion.source.dim] + [lvl.dim for lvl in levels]
    ok = all(lvl.verified for lvl in levels)
    human = [f"tower of {args.coring} (system from {source}): dims {dims}"]
    for lvl in levels:
        gates = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in lvl.gates.items())
        line = f"  level {lvl.k}: dim {lvl.dim} over {lvl.inclusion.source.dim}; {gates}"
        if lvl.extra:
            line += "; " + ", ".join(f"{k}={v}" for k, v in lvl.extra.items())
        if lvl.index is not None:
            line += f"; index ({f.format(lvl.index.u)}:{f.format(lvl.index.v)})"
        human.append(line)
    if "alternates" in profile:
        human.append(f"  index alternation: {'ok' if profile['alternates'] else 'FAIL'}")
    else:
        human.append(f"  not strongly coseparable: {profile['not_strongly_coseparable']}")
    _emit(args, human, {"coring": args.coring, "system_source": source, "dims": dims,
                        "levels": [lvl.to_json() for lvl in levels], "index_profile": profile,
                        "verified": ok})
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corings", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate an object (and certificates for a coring)")
    c.add_argument("path")
    c.add_argument("name")
    c.add_argument("--certificate", help="certificate JSON to check against the named coring")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    fnd = sub.add_parser("find-frobenius", help="search for a reduced Frobenius system")
    fnd.add_argument("path")
    fnd.add_argument("coring")
    fnd.add_argument("--seed", type=int, default=0)
    fnd.add_argument("--trials", type=int, default=64)
    fnd.add_argument("--coeff-bound", type=int, default=2)
    fnd.add_argument("--e-candidate", action="append",
                     help="comma-separated coordinates of a candidate e (repeatable)")
    fnd.set_defaults(func=cmd_find_frobenius)

    t = sub.add_parser("tower", help="build and verify the tower of a Frobenius coring")
    t.add_argument("path")
    t.add_argument("coring")
    t.add_argument("--levels", type=int, default=3)
    t.add_argument("--budget", type=int, default=4096)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_tower)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CoringError as err:
        print(f"FAIL: {err}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
