"""Command-line front end.

Loads arrangements, multinets, presentations, characters and
stratifications from JSON files, dispatches to the library, and prints a
machine-readable report.  Exit codes: 0 success, 2 input error, 1
internal invariant failure.  All numbers in reports are exact.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources

from .arrangement import (Arrangement, Multiarrangement, arrangement_from_dict,
                          arrangement_to_dict)
from .exact import field_context
from .fpgroups import (Character, Presentation, integral_h1_kernel,
                       sweep_presentation)
from .jumploci import (JumpSource, delta_u_poly, monodromy_charpoly,
                       stratification_from_dict)
from .milnor import (find_multiplicities, milnor_character,
                     monomial_deleted_model, multinet_torsion_pipeline,
                     polarization_torsion, polarized_milnor_delta,
                     polarized_milnor_delta_upoly, recognize_milnor_cover,
                     sweep_model)
from .multinet import (deletion_pencil_certificate, monomial_multinet,
                       multinet_input_from_dict, verify_multinet,
                       verify_pointed)
from .parallel import polarize

SCHEMA_VERSION = 1


class InputError(Exception):
    """User-facing problem with flags or input files (exit code 2)."""


# ----------------------------------------------------------------------
# loading helpers
# ----------------------------------------------------------------------

def _load_file(path, digests):
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    digests[path] = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_arrangement(path, digests):
    try:
        return arrangement_from_dict(_load_file(path, digests))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad arrangement file {path}: {exc}") from exc


def _load_presentation(path, digests):
    data = _load_file(path, digests)
    try:
        return Presentation.build(int(data["generators"]),
                                  [tuple(r) for r in data["relators"]])
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad presentation file {path}: {exc}") from exc


def _load_character(path, digests):
    data = _load_file(path, digests)
    try:
        return Character.build(int(data["order"]),
                               tuple(int(e) for e in data["exponents"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad character file {path}: {exc}") from exc


def _parse_mults(args, arr_data=None):
    if getattr(args, "m", None):
        try:
            return tuple(int(x) for x in args.m.split(","))
        except ValueError as exc:
            raise InputError(f"bad -m list: {exc}") from exc
    if arr_data and "m" in arr_data:
        return tuple(int(x) for x in arr_data["m"])
    raise InputError("multiplicities required: pass -m or put \"m\" in the file")


def _hyperplane_index(arr, spec, default=None):
    if spec is None:
        if default is None:
            raise InputError("--hyperplane required (no pointed default)")
        return default
    if arr.labels and spec in arr.labels:
        return arr.labels.index(spec)
    try:
        idx = int(spec)
    except ValueError as exc:
        raise InputError(f"unknown hyperplane {spec!r}") from exc
    if not 0 <= idx < arr.n:
        raise InputError(f"hyperplane index {idx} out of range")
    return idx


def _context(args, order):
    char = int(getattr(args, "char", 0) or 0)
    if char < 0:
        raise InputError("--char must be a prime or 0")
    try:
        return field_context(char, order)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _group_dict(group):
    return {"rank": group.rank, "torsion": list(group.torsion)}


# ----------------------------------------------------------------------
# subcommand handlers: each returns (results dict, warnings list)
# ----------------------------------------------------------------------

def _cmd_arr_validate(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    return {"valid": True, "n": arr.n, "dim": arr.dim, "rank": arr.rank()}, []


def _cmd_arr_flats(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    flats = [{"hyperplanes": list(f.hyperplanes), "multiplicity": f.multiplicity}
             for f in arr.rank2_flats()]
    return {"n": arr.n, "flats": flats}, []


def _cmd_arr_poincare(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    return {"poincare": list(arr.os_poincare_rank3())}, []


def _cmd_multinet_verify(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    parts, m, base, pointed = multinet_input_from_dict(
        _load_file(args.net, digests))
    rep = verify_multinet(arr, parts, m, base)
    results = {"valid": rep.valid, "violations": list(rep.violations),
               "flags": list(rep.flags)}
    if rep.valid:
        results["k"] = rep.multinet.k
        results["weight"] = rep.multinet.weight
        results["base_locus"] = [list(f) for f in rep.multinet.base_locus]
        if pointed is not None:
            try:
                verify_pointed(arr, rep.multinet, pointed)
                results["pointed"] = pointed
            except ValueError as exc:
                rep = None
                results["valid"] = False
                results["violations"].append(str(exc))
    if not results["valid"]:
        raise ReportedFailure(results, rep.flags if rep else [])
    return results, list(results["flags"])


def _cmd_multinet_pencil(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    parts, m, base, pointed = multinet_input_from_dict(
        _load_file(args.net, digests))
    rep = verify_multinet(arr, parts, m, base)
    if not rep.valid:
        raise InputError("not a multinet: " + "; ".join(rep.violations))
    h = _hyperplane_index(arr, args.hyperplane, pointed)
    try:
        pm = verify_pointed(arr, rep.multinet, h)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    cert = deletion_pencil_certificate(arr, pm)
    return {"hyperplane": h,
            "direction": list(cert.direction),
            "translate_order": cert.multiplier,
            "primes": sorted(cert.primes)}, list(rep.flags)


def _cmd_polarize(args, digests):
    data = _load_file(args.arrangement, digests)
    arr = arrangement_from_dict(data)
    m = _parse_mults(args, data)
    book = polarize(arr, m)
    return {"arrangement": arrangement_to_dict(book.result.arrangement),
            "n": book.result.arrangement.n,
            "rank": book.result.arrangement.rank(),
            "n2": book.n2, "n3": book.n3}, []


def _cmd_present_sweep(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    pres = sweep_presentation(arr, projective=not args.affine)
    return {"generators": pres.ngens,
            "relators": [list(r) for r in pres.relators]}, []


def _cmd_cover_h1(args, digests):
    pres = _load_presentation(args.presentation, digests)
    chi = _load_character(args.chi, digests)
    try:
        group = integral_h1_kernel(pres, chi)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return _group_dict(group), []


def _source_for_cover(args, digests):
    if args.stratification:
        try:
            strat = stratification_from_dict(
                _load_file(args.stratification, digests))
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad stratification file: {exc}") from exc
        return JumpSource.from_stratification(strat)
    if args.presentation:
        return JumpSource.from_presentation(
            _load_presentation(args.presentation, digests))
    if args.arrangement:
        return sweep_model(_load_arrangement(args.arrangement, digests)).source()
    raise InputError("need one of -g/-s/-a as the cover source")


def _cmd_cover_charpoly(args, digests):
    source = _source_for_cover(args, digests)
    chi = _load_character(args.chi, digests)
    ctx = _context(args, chi.order)
    try:
        cp = monodromy_charpoly(source, chi, ctx)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"phi": {str(k): e for k, e in cp.phi}, "charpoly": str(cp)}, []


def _cmd_cover_delta(args, digests):
    source = _source_for_cover(args, digests)
    chi = _load_character(args.chi, digests)
    ctx = _context(args, chi.order)
    try:
        d = delta_u_poly(source, chi, ctx)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"delta": d.as_table(), "pretty": str(d)}, []


def _cmd_milnor_character(args, digests):
    data = _load_file(args.arrangement, digests)
    arr = arrangement_from_dict(data)
    m = _parse_mults(args, data)
    try:
        spec = milnor_character(arr, m)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    warnings = (["multiplicities have a common factor; the cover is "
                 "a Milnor fiber of the reduced multiarrangement"]
                if spec.gcd_warning else [])
    return {"order": spec.N, "exponents": list(spec.delta.exponents)}, warnings


def _cmd_milnor_recognize(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    chi = _load_character(args.chi, digests)
    try:
        m = recognize_milnor_cover(arr, chi)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"m": list(m) if m is not None else None}, []


def _cmd_milnor_find_m(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    chi = _load_character(args.chi, digests)
    try:
        m = find_multiplicities(arr, chi, args.prime,
                                forbid_two=args.forbid_two)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"m": list(m), "N": sum(m)}, []


def _load_pointed(args, digests):
    arr = _load_arrangement(args.arrangement, digests)
    parts, m, base, pointed = multinet_input_from_dict(
        _load_file(args.net, digests))
    rep = verify_multinet(arr, parts, m, base)
    if not rep.valid:
        raise InputError("not a multinet: " + "; ".join(rep.violations))
    h = _hyperplane_index(arr, args.hyperplane, pointed)
    try:
        pm = verify_pointed(arr, rep.multinet, h)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return arr, pm


def _cmd_milnor_pipeline(args, digests):
    arr, pm = _load_pointed(args, digests)
    cap = 5000 if args.integral else 0
    try:
        cert = multinet_torsion_pipeline(arr, pm, p=args.prime,
                                         r=args.order, integral_cap=cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if cert is None:
        raise ReportedFailure({"certificate": None}, [])
    return {"certificate": cert.to_dict()}, []


def _cmd_milnor_polar_torsion(args, digests):
    data = _load_file(args.arrangement, digests)
    arr = arrangement_from_dict(data)
    m = _parse_mults(args, data)
    try:
        cert = polarization_torsion(arr, m, args.prime)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if cert is None:
        raise ReportedFailure({"certificate": None}, [])
    return {"certificate": cert.to_dict()}, []


def _cmd_milnor_delta(args, digests):
    data = _load_file(args.arrangement, digests)
    arr = arrangement_from_dict(data)
    m = _parse_mults(args, data)
    char = int(args.char or 0)
    try:
        if args.q is None:
            d = polarized_milnor_delta_upoly(arr, m, char)
            return {"delta": d.as_table(), "pretty": str(d)}, []
        cp = polarized_milnor_delta(arr, m, char, args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"phi": {str(k): e for k, e in cp.phi}, "charpoly": str(cp)}, []


# ----------------------------------------------------------------------
# selftest: re-derive the headline fixture values
# ----------------------------------------------------------------------

def _fixture(name, digests):
    path = resources.files("milnortor.fixtures").joinpath(name)
    raw = path.read_bytes()
    digests[f"fixtures/{name}"] = hashlib.sha256(raw).hexdigest()
    return json.loads(raw)


def _selftest_checks(full):
    from .fpgroups import twisted_betti_01
    from .jumploci import cover_homology, torsion_detect

    def onetorus():
        data = _fixture("onetorus.json", {})
        pres = Presentation.build(data["generators"], data["relators"])
        chi = Character.build(3, (1, 0))
        group = integral_h1_kernel(pres, chi)
        assert (group.rank, tuple(group.torsion)) == (2, (2, 2)), group
        src = JumpSource.from_presentation(pres)
        assert str(monodromy_charpoly(src, chi, field_context(2, 3))) \
            == "(t - 1)^2(t^2 + t + 1)"
        assert str(monodromy_charpoly(src, chi, field_context(0, 3))) \
            == "(t - 1)^2"

    def ccm():
        src = JumpSource.from_stratification(
            stratification_from_dict(_fixture("ccm.json", {})))
        chi = Character.build(3, (1, 1, 0, 0, 0, 0))
        assert cover_homology(src, chi, field_context(0, 3)) == 6
        assert cover_homology(src, chi, field_context(2, 3)) == 10
        assert str(monodromy_charpoly(src, chi, field_context(2, 3))) \
            == "(t - 1)^6(t^2 + t + 1)^2"
        assert torsion_detect(src, chi, 2).bound == 4

    def braid():
        arr = arrangement_from_dict(_fixture("braid.json", {}))
        src = sweep_model(arr).source()
        chi = Character.build(6, (1,) * 6)
        assert src.betti(1) == 5 and src.betti(2) == 6
        assert str(monodromy_charpoly(src, chi, field_context(0, 6))) \
            == "(t - 1)^5(t^2 + t + 1)"
        group = integral_h1_kernel(src.presentation, chi)
        assert (group.rank, tuple(group.torsion)) == (7, ())

    def deleted_b3():
        arr = arrangement_from_dict(_fixture("b3.json", {}))
        parts, m, base, pointed = multinet_input_from_dict(
            _fixture("b3net.json", {}))
        rep = verify_multinet(arr, parts, m, base)
        assert rep.valid
        pm = verify_pointed(arr, rep.multinet, pointed)
        cert = multinet_torsion_pipeline(arr, pm, p=2)
        assert cert is not None and cert.bound >= 2
        assert cert.integral is not None
        assert (cert.integral.rank, tuple(cert.integral.torsion)) == (7, (2, 2))
        assert dict(cert.charpoly.phi) == {1: 7, 3: 1}

    def monomial():
        arr, pm = monomial_multinet(3)
        cert = multinet_torsion_pipeline(
            arr, pm, p=3, model=monomial_deleted_model(3), r=7,
            integral_cap=0)
        assert cert is not None and cert.bound >= 1

    checks = [("onetorus h1/charpoly", onetorus),
              ("ccm stratification", ccm),
              ("braid sweep", braid),
              ("deleted-b3 pipeline", deleted_b3)]
    if full:
        checks.append(("monomial p=3 pipeline", monomial))
    return checks


def _cmd_selftest(args, digests):
    lines = []
    ok = True
    for name, fn in _selftest_checks(args.full):
        t0 = time.monotonic()
        try:
            fn()
            status = "pass"
        except AssertionError as exc:
            status = f"FAIL: {exc}"
            ok = False
        lines.append({"check": name, "status": status,
                      "ms": int(1000 * (time.monotonic() - t0))})
    if not ok:
        raise SelftestFailure({"checks": lines}, [])
    return {"checks": lines}, []


# ----------------------------------------------------------------------
# dispatch
# ----------------------------------------------------------------------

class ReportedFailure(Exception):
    """Computation completed but the requested property does not hold
    (invalid multinet, no torsion certificate): report + exit 2."""

    def __init__(self, results, warnings):
        super().__init__("reported failure")
        self.results = results
        self.warnings = warnings


class SelftestFailure(ReportedFailure):
    """Acceptance check failed: report + exit 1."""


def _add_common(p, arrangement=False, net=False, chi=False, pres=False,
                mults=False, char=False, prime=False, order=False):
    if arrangement:
        p.add_argument("-a", "--arrangement", required=True,
                       help="arrangement JSON file")
    if net:
        p.add_argument("-n", "--net", required=True,
                       help="multinet JSON file")
    if chi:
        p.add_argument("--chi", required=True, help="character JSON file")
    if pres:
        p.add_argument("-g", "--presentation", required=True,
                       help="presentation JSON file")
    if mults:
        p.add_argument("-m", help="comma-separated multiplicities")
    if char:
        p.add_argument("--char", default="0", help="coefficient "
                       "characteristic: a prime, or 0 (default)")
    if prime:
        p.add_argument("--prime", type=int, required=True,
                       help="torsion prime p")
    if order:
        p.add_argument("--order", type=int, default=None,
                       help="cover order override")
    p.add_argument("--out", default=None, help="write the report here "
                   "instead of standard output")


def _build_parser():
    top = argparse.ArgumentParser(
        prog="milnortor",
        description="homology of cyclic covers and Milnor fibers of "
                    "hyperplane arrangements, with torsion certificates")
    sub = top.add_subparsers(dest="cmd", required=True)

    arr = sub.add_parser("arr", help="arrangement utilities")
    arr_sub = arr.add_subparsers(dest="sub", required=True)
    for name, fn in (("validate", _cmd_arr_validate),
                     ("flats", _cmd_arr_flats),
                     ("poincare", _cmd_arr_poincare)):
        p = arr_sub.add_parser(name)
        _add_common(p, arrangement=True)
        p.set_defaults(handler=fn)

    net = sub.add_parser("multinet", help="multinet verification")
    net_sub = net.add_subparsers(dest="sub", required=True)
    p = net_sub.add_parser("verify")
    _add_common(p, arrangement=True, net=True)
    p.set_defaults(handler=_cmd_multinet_verify)
    p = net_sub.add_parser("pencil")
    _add_common(p, arrangement=True, net=True)
    p.add_argument("--hyperplane", help="distinguished hyperplane "
                   "(label or index; defaults to the net's pointed entry)")
    p.set_defaults(handler=_cmd_multinet_pencil)

    p = sub.add_parser("polarize", help="replace multiplicities by pencils")
    _add_common(p, arrangement=True, mults=True)
    p.set_defaults(handler=_cmd_polarize)

    pres = sub.add_parser("present", help="fundamental group presentations")
    pres_sub = pres.add_subparsers(dest="sub", required=True)
    p = pres_sub.add_parser("sweep")
    _add_common(p, arrangement=True)
    p.add_argument("--affine", action="store_true",
                   help="present the cone complement instead of the "
                        "projectivized one")
    p.set_defaults(handler=_cmd_present_sweep)

    cover = sub.add_parser("cover", help="cyclic cover homology")
    cover_sub = cover.add_subparsers(dest="sub", required=True)
    p = cover_sub.add_parser("h1")
    _add_common(p, pres=True, chi=True)
    p.set_defaults(handler=_cmd_cover_h1)
    for name, fn in (("charpoly", _cmd_cover_charpoly),
                     ("delta", _cmd_cover_delta)):
        p = cover_sub.add_parser(name)
        p.add_argument("-g", "--presentation", default=None)
        p.add_argument("-s", "--stratification", default=None)
        p.add_argument("-a", "--arrangement", default=None)
        p.add_argument("--chi", required=True)
        p.add_argument("--char", default="0")
        p.add_argument("--out", default=None)
        p.set_defaults(handler=fn)

    mil = sub.add_parser("milnor", help="Milnor fibers and torsion")
    mil_sub = mil.add_subparsers(dest="sub", required=True)
    p = mil_sub.add_parser("character")
    _add_common(p, arrangement=True, mults=True)
    p.set_defaults(handler=_cmd_milnor_character)
    p = mil_sub.add_parser("recognize")
    _add_common(p, arrangement=True, chi=True)
    p.set_defaults(handler=_cmd_milnor_recognize)
    p = mil_sub.add_parser("find-m")
    _add_common(p, arrangement=True, chi=True, prime=True)
    p.add_argument("--forbid-two", action="store_true",
                   help="avoid multiplicity 2 (small-pencil hypothesis)")
    p.set_defaults(handler=_cmd_milnor_find_m)
    p = mil_sub.add_parser("pipeline")
    _add_common(p, arrangement=True, net=True, prime=True, order=True)
    p.add_argument("--hyperplane", default=None)
    p.add_argument("--integral", action="store_true",
                   help="confirm by an integral Smith normal form")
    p.set_defaults(handler=_cmd_milnor_pipeline)
    p = mil_sub.add_parser("polar-torsion")
    _add_common(p, arrangement=True, mults=True, prime=True)
    p.set_defaults(handler=_cmd_milnor_polar_torsion)
    p = mil_sub.add_parser("delta")
    _add_common(p, arrangement=True, mults=True, char=True)
    p.add_argument("-q", type=int, default=None,
                   help="homology degree (omit for the symbolic table)")
    p.set_defaults(handler=_cmd_milnor_delta)

    st = sub.add_parser("selftest", help="re-derive the fixture values")
    st_sub = st.add_subparsers(dest="sub", required=True)
    p = st_sub.add_parser("fixtures")
    p.add_argument("--full", action="store_true",
                   help="include the multi-minute monomial-family check")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_selftest)

    return top


def _emit(report, out):
    text = json.dumps(report, indent=1)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def dispatch(argv):
    parser = _build_parser()
    args = parser.parse_args(argv)
    digests = {}
    t0 = time.monotonic()
    report = {"schema": SCHEMA_VERSION, "command": list(argv),
              "inputs": digests, "warnings": [], "results": {}}
    try:
        results, warnings = args.handler(args, digests)
        code = 0
    except ReportedFailure as exc:
        results, warnings = exc.results, exc.warnings
        code = 1 if isinstance(exc, SelftestFailure) else 2
    except InputError as exc:
        results, warnings = {"error": str(exc)}, []
        code = 2
    report["results"] = results
    report["warnings"] = list(warnings)
    report["ms"] = int(1000 * (time.monotonic() - t0))
    _emit(report, args.out)
    return code


def main():
    try:
        sys.exit(dispatch(sys.argv[1:]))
    except Exception as exc:  # noqa: BLE001 - anything unexpected is exit 1
        print(json.dumps({"schema": SCHEMA_VERSION,
                          "error": f"internal: {exc.__class__.__name__}: {exc}"}),
              file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
