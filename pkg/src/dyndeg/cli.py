"""Command-line front end.

Systems are described in YAML files, one mapping per system (or a list
under ``systems:``). Integers may be written as decimal strings so that
large entries survive any loader. Example::

    kind: monomial-triangular
    matrix: [[2, 0], [5, 3]]
    l: 1

Exit codes: 0 pass, 1 verification failed, 2 input or parse error,
3 unsupported combination or dimension cap.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import yaml

from . import linalg
from .cohomology import CohomologyError
from .fibered import (
    DegenerateOrbitError,
    MonomialTriangularSystem,
    ProductSystem,
    SkewSystem,
    UnsupportedError,
    abc_sequences,
    degree_sequence_of,
    relative_sequence_orbit,
    relative_sequence_product,
    relative_sequence_triangular,
    system_profiles,
    verify_b_convergence,
    verify_distinct_degrees,
    verify_equal_dimension,
    verify_power_rule,
    verify_product_formula,
    verify_relative_profile,
)
from .monomial import (
    DimensionCapError,
    DominanceError,
    ExponentMatrix,
    FibrationError,
    degree_sequence,
    delta_p,
    dynamical_degrees_exact,
)
from .parser import ParseError
from .polytope import PolytopeError
from .profiles import DegreeProfile, check_log_concavity
from .rational import (
    ProjectiveRationalMap,
    RationalMapError,
    conjugate,
    degree_sequence_d1,
    estimate_d1,
    monomial_map,
    parse_map,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3
THREADS_ENV = "DYNDEG_THREADS"
DEFAULT_N = 10

CHECKS = ("product-formula", "equal-dimension", "distinct-degrees", "logconcavity", "powerrule",
          "b-convergence")
# names used by the original check catalogue
CHECK_ALIASES = {
    "theorem1.1": "product-formula",
    "corollary1.2": "equal-dimension",
    "corollary1.3": "distinct-degrees",
    "lemma4.2": "b-convergence",
}


class InputError(ValueError):
    pass


def fmt(x: float) -> str:
    return f"{x:.10g}"


def fmt_list(values) -> str:
    return "[" + ", ".join(fmt(v) if isinstance(v, float) else str(v) for v in values) + "]"


def _strs(values) -> list[str]:
    return [str(v) for v in values]


# loading


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{what}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and re.fullmatch(r"\s*[-+]?\d+\s*", x):
        return int(x)
    raise InputError(f"{what}: expected an integer, got {x!r}")


def _matrix(x: Any, what: str = "matrix") -> list[list[int]]:
    if not isinstance(x, list) or not x or not all(isinstance(r, list) for r in x):
        raise InputError(f"{what}: expected a nonempty list of rows")
    rows = [[_int(v, what) for v in r] for r in x]
    if any(len(r) != len(rows) for r in rows):
        raise InputError(f"{what}: matrix must be square")
    return rows


def _require(desc: dict, key: str):
    if key not in desc:
        raise InputError(f"system of kind {desc.get('kind')!r} needs a {key!r} entry")
    return desc[key]


@dataclass
class Loaded:
    kind: str
    obj: Any
    options: dict = field(default_factory=dict)
    name: str = ""


def _factor(desc: Any, what: str):
    if not isinstance(desc, dict):
        raise InputError(f"{what}: expected a mapping")
    kind = desc.get("kind")
    if kind == "monomial":
        return ExponentMatrix.from_rows(_matrix(_require(desc, "matrix")))
    if kind == "rational":
        k = _int(_require(desc, "k"), "k")
        return parse_map(str(_require(desc, "map")), k)
    raise InputError(f"{what}: kind must be 'monomial' or 'rational', got {kind!r}")


def build_system(desc: Any) -> Loaded:
    if not isinstance(desc, dict):
        raise InputError("a system description must be a mapping")
    kind = desc.get("kind")
    options = desc.get("options") or {}
    if not isinstance(options, dict):
        raise InputError("options must be a mapping")
    name = str(desc.get("name", ""))
    if kind in ("monomial", "rational"):
        obj = _factor(desc, "system")
    elif kind == "product":
        obj = ProductSystem(_factor(_require(desc, "base"), "base"), _factor(_require(desc, "fiber"), "fiber"))
    elif kind == "monomial-triangular":
        obj = MonomialTriangularSystem(_matrix(_require(desc, "matrix")), _int(_require(desc, "l"), "l"))
    elif kind == "skew":
        if "matrix" in desc:
            obj = SkewSystem.from_monomial(_matrix(desc["matrix"]), _int(_require(desc, "l"), "l"))
        else:
            base = _factor(_require(desc, "base"), "base")
            if isinstance(base, ExponentMatrix):
                base = monomial_map(base)
            m = _int(_require(desc, "m"), "m")
            obj = SkewSystem.parse(base.to_text(), str(_require(desc, "fiber")), base.k, m)
    else:
        raise InputError(f"unknown system kind {kind!r}")
    return Loaded(kind, obj, options, name)


def load_file(path: str) -> list[Loaded]:
    try:
        with open(path, encoding="utf-8") as fh:
            docs = [d for d in yaml.safe_load_all(fh) if d is not None]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if len(docs) == 1 and isinstance(docs[0], dict) and "systems" in docs[0]:
        docs = docs[0]["systems"]
        if not isinstance(docs, list):
            raise InputError("'systems' must be a list")
    if not docs:
        raise InputError(f"{path} describes no system")
    return [build_system(d) for d in docs]


def _opt_int(sys_: Loaded, key: str, given: int | None, default: int) -> int:
    if given is not None:
        return given
    if key in sys_.options:
        return _int(sys_.options[key], f"options.{key}")
    return default


# records; every command returns (passed, record, text lines)


def _profile_line(label: str, prof: DegreeProfile) -> str:
    tag = prof.method
    if not prof.is_exact:
        tag += f", tolerance {prof.tolerance:.3g}"
    return f"{label}d = {fmt_list(prof.values)} ({tag})"


def _d1_record(f: ProjectiveRationalMap, N: int) -> tuple[dict, str]:
    seq = degree_sequence_d1(f, N)
    est, upper = estimate_d1(seq)
    roots = [v ** (1.0 / n) for n, v in enumerate(seq.values, start=1)]
    at = 1 + min(range(len(roots)), key=lambda i: roots[i])
    rec = {"d1_estimate": est, "d1_upper_bound": upper, "upper_bound_at": at,
           "method": "sequence-estimate", "sequence": _strs(seq.values)}
    return rec, f"d1 = {fmt(est)} (upper bound {fmt(upper)} at n={at}, sequence-estimate)"


def cmd_degrees(s: Loaded, args) -> tuple[bool, dict, list[str]]:
    N = _opt_int(s, "N", getattr(args, "n", None), DEFAULT_N)
    obj = s.obj
    if s.kind == "monomial":
        prof = dynamical_degrees_exact(obj)
        return True, {"total": prof.to_dict()}, [_profile_line("", prof)]
    if s.kind == "rational":
        rec, line = _d1_record(obj, N)
        return True, rec, [line]
    if s.kind in ("product", "monomial-triangular"):
        pr = system_profiles(obj)
        rec = {"base": pr.base.to_dict(), "relative": pr.relative.to_dict(), "total": pr.total.to_dict()}
        lines = [_profile_line("base      ", pr.base), _profile_line("relative  ", pr.relative),
                 _profile_line("total     ", pr.total)]
        return True, rec, lines
    if s.kind == "skew":
        base_rec, base_line = _d1_record(obj.base, N)
        rel = relative_sequence_orbit(obj, N, rng=_rng(s, args))
        est, upper = estimate_d1(rel.values)
        rec = {"base": base_rec, "relative": {"d1_estimate": est, "d1_upper_bound": upper,
                                              "method": "sequence-estimate",
                                              "base_point": _strs(rel.base_point)}}
        return True, rec, ["base      " + base_line,
                           f"relative  d1 = {fmt(est)} (upper bound {fmt(upper)}, sequence-estimate)"]
    raise UnsupportedError(f"degrees are not available for kind {s.kind!r}")


def _rng(s: Loaded, args) -> random.Random:
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = _int(s.options.get("seed", 0), "options.seed")
    return random.Random(seed)


def cmd_sequence(s: Loaded, args) -> tuple[bool, dict, list[str]]:
    p = _opt_int(s, "p", getattr(args, "p", None), 1)
    N = _opt_int(s, "N", getattr(args, "n", None), DEFAULT_N)
    if N < 1:
        raise InputError("N must be at least 1")
    obj = s.obj
    rec: dict = {"p": p, "N": N}
    lines = []
    if s.kind == "monomial":
        rec["total"] = _strs(degree_sequence(obj, p, N))
    elif s.kind == "rational":
        if p != 1:
            raise UnsupportedError("only p = 1 is certified for rational maps")
        rec["total"] = _strs(degree_sequence_d1(obj, N))
    elif s.kind == "product":
        rec["total"] = _strs(degree_sequence_of(obj, p, N))
        if p <= obj.m:
            rec["relative"] = _strs(relative_sequence_product(obj, p, N))
        tables = abc_sequences(obj, p, N)
        rec["a"] = {str(q): _strs(v) for q, v in tables.a.items()}
        rec["b"] = _strs(tables.b)
        if tables.c is not None:
            rec["c"] = _strs(tables.c)
    elif s.kind == "monomial-triangular":
        rec["total"] = _strs(degree_sequence_of(obj, p, N))
        if p <= obj.k - obj.l:
            rec["relative"] = _strs(relative_sequence_triangular(obj, p, N))
    elif s.kind == "skew":
        if p != 1:
            raise UnsupportedError("skew systems support only p = 1")
        rel = relative_sequence_orbit(obj, N, rng=_rng(s, args))
        rec["relative"] = _strs(rel.values)
        rec["base_point"] = _strs(rel.base_point)
    for key in ("total", "relative", "b", "c"):
        if key in rec:
            lines.append(f"{key:9s} [{', '.join(rec[key])}]")
    for q, vals in rec.get("a", {}).items():
        lines.append(f"a[q={q}]    [{', '.join(vals)}]")
    if "base_point" in rec:
        lines.append(f"base point y = ({', '.join(rec['base_point'])})")
    return True, rec, lines


# verification


def _formula_record(report, profiles) -> dict:
    rec = report.to_dict()
    rec["profiles"] = {k: v.to_dict() for k, v in profiles.items()}
    return rec


def _formula_lines(report) -> list[str]:
    lines = []
    for c in report.checks:
        lines.append(f"p={c.p}: {c.status}, witness j={c.witness}"
                     + (f" (ties {list(c.witnesses)})" if len(c.witnesses) > 1 else "")
                     + f", residual {c.residual:.3g}")
    lines.append("witnesses j = [" + ", ".join(f"{c.p}->{c.witness}" for c in report.checks) + "]")
    if not report.max_degree_ok:
        lines.append("max-degree comparison failed")
    return lines


def check_product_formula(s: Loaded, args):
    if s.kind not in ("product", "monomial-triangular"):
        raise UnsupportedError(f"product-formula needs a fibered system, got {s.kind!r}")
    pr = system_profiles(s.obj)
    rep = verify_product_formula(pr.total, pr.base, pr.relative)
    rec = _formula_record(rep, {"total": pr.total, "base": pr.base, "relative": pr.relative})
    return rep.status == "holds", rec, _formula_lines(rep)


def check_equal_dimension(s: Loaded, args):
    if "conjugator" not in s.options:
        raise UnsupportedError("equal-dimension needs options.conjugator")
    M = _matrix(s.options["conjugator"], "options.conjugator")
    if s.kind == "monomial":
        B = s.obj.conjugate(M)
        d_f, d_g = dynamical_degrees_exact(B), dynamical_degrees_exact(s.obj)
        rep = verify_equal_dimension(d_f, d_g)
        same_cp = d_f.charpoly == d_g.charpoly
        rec = _formula_record(rep, {"total": d_f, "base": d_g})
        rec["conjugate"] = [_strs(r) for r in B.entries]
        rec["same_charpoly"] = same_cp
        return rep.status == "holds" and same_cp, rec, _formula_lines(rep) + [f"same charpoly: {same_cp}"]
    if s.kind == "rational":
        N = _opt_int(s, "N", getattr(args, "n", None), 4)
        if linalg.det(M) == 0:
            raise InputError("options.conjugator is singular")
        g = conjugate(s.obj, M)
        a, b = degree_sequence_d1(s.obj, N), degree_sequence_d1(g, N)
        ua, ub = estimate_d1(a)[1], estimate_d1(b)[1]
        ok = abs(ua - ub) <= 1e-9 * max(ua, ub)
        rec = {"status": "holds" if ok else "fails", "upper_bounds": [ua, ub],
               "sequences": [_strs(a), _strs(b)]}
        return ok, rec, [f"d1 upper bounds {fmt(ua)} and {fmt(ub)}: {'equal' if ok else 'differ'}"]
    raise UnsupportedError(f"equal-dimension is not available for kind {s.kind!r}")


def check_distinct_degrees(s: Loaded, args):
    ok, rec, lines = check_product_formula(s, args)
    if not ok:
        return False, {"product_formula": rec}, ["product formula did not pass; implication not evaluated"]
    pr = system_profiles(s.obj)
    rep = verify_distinct_degrees(pr.total, pr.base, pr.relative)
    if rep.vacuous:
        msg = "predicate false; implication vacuous; pass"
    elif rep.holds:
        msg = "predicate true for f, base and relative profiles; pass"
    else:
        msg = f"implication violated (base {rep.g_distinct}, relative {rep.rel_distinct}); fail"
    return rep.holds, rep.to_dict(), [msg]


def check_logconcavity(s: Loaded, args):
    profiles: dict[str, DegreeProfile] = {}
    integer_rows: dict[str, list[int]] = {}
    if s.kind == "monomial":
        profiles["total"] = dynamical_degrees_exact(s.obj)
        if s.obj.k <= 4:
            integer_rows["delta"] = [delta_p(s.obj, p) for p in range(s.obj.k + 1)]
    elif s.kind in ("product", "monomial-triangular"):
        pr = system_profiles(s.obj)
        profiles = {"total": pr.total, "base": pr.base, "relative": pr.relative}
    else:
        raise UnsupportedError(f"log-concavity needs full profiles, not available for kind {s.kind!r}")
    rec, lines, ok = {}, [], True
    for name, prof in profiles.items():
        res = check_log_concavity(prof.values, max(1e-9, prof.tolerance))
        ok &= res.ok
        rec[name] = {"ok": res.ok, "violation": res.violation}
        lines.append(f"{name}: {'log-concave' if res.ok else f'violation at p={res.violation}'}")
    for name, row in integer_rows.items():
        res = check_log_concavity(row)
        ok &= res.ok
        rec[name] = {"ok": res.ok, "violation": res.violation, "values": _strs(row)}
        lines.append(f"{name} {row}: {'log-concave' if res.ok else f'violation at p={res.violation}'}")
    if "relative" in profiles:
        rel = verify_relative_profile(profiles["relative"])
        ok &= rel.holds
        rec["relative_bounds"] = {"d0_is_one": rel.d0_is_one, "all_at_least_one": rel.all_at_least_one}
    return ok, rec, lines


def check_powerrule(s: Loaded, args):
    n = _opt_int(s, "n", None, 2)
    if s.kind not in ("monomial", "monomial-triangular"):
        raise UnsupportedError(f"power rule needs a matrix power, not available for kind {s.kind!r}")
    rep = verify_power_rule(s.obj, n)
    return rep.holds, rep.to_dict(), [f"n={n}: max relative error {max(rep.errors):.3g}"]


def check_b_convergence(s: Loaded, args):
    if s.kind != "product":
        raise UnsupportedError("b-convergence is implemented for product systems only")
    p = _opt_int(s, "p", getattr(args, "p", None), 1)
    N = _opt_int(s, "N", getattr(args, "n", None), 25)
    if N < 3:
        raise InputError("b-convergence needs N >= 3")
    rep = verify_b_convergence(s.obj, p, N)
    start = min(5, N - 1)
    tail = rep.gaps[start - 1:]
    monotone = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))
    shrinking = rep.gaps[-1] < rep.gaps[0] or rep.gaps[-1] <= 1e-9
    rec = rep.to_dict()
    rec.update({"monotone_from": start, "monotone": monotone})
    lines = [f"target d_{p}(f) = {fmt(rep.target)}",
             f"gap at n={N}: {rep.gaps[-1]:.4g}; nonincreasing from n={start}: {monotone}",
             f"fitted slope of log(b_p(n)/d^n): {rep.decay_slope:.3g}"]
    return monotone and shrinking, rec, lines


VERIFIERS: dict[str, Callable] = {
    "product-formula": check_product_formula,
    "equal-dimension": check_equal_dimension,
    "distinct-degrees": check_distinct_degrees,
    "logconcavity": check_logconcavity,
    "powerrule": check_powerrule,
    "b-convergence": check_b_convergence,
}


def cmd_verify(s: Loaded, args):
    name = CHECK_ALIASES.get(args.check, args.check)
    ok, rec, lines = VERIFIERS[name](s, args)
    rec = {"check": name, "pass": ok, **rec}
    return ok, rec, lines + ["pass" if ok else "FAIL"]


def cmd_report(s: Loaded, args):
    rec: dict = {"kind": s.kind}
    lines = []
    ok = True
    for label, fn in (("degrees", cmd_degrees), ("sequence", cmd_sequence)):
        try:
            _, r, ls = fn(s, args)
            rec[label] = r
            lines += [f"[{label}] {x}" for x in ls]
        except UnsupportedError as exc:
            rec[label] = {"unsupported": str(exc)}
    checks = {}
    for name, fn in VERIFIERS.items():
        try:
            passed, r, _ = fn(s, args)
        except (UnsupportedError, DimensionCapError) as exc:
            checks[name] = {"unsupported": str(exc)}
            continue
        checks[name] = {"pass": passed, **r}
        ok &= passed
        lines.append(f"[verify] {name}: {'pass' if passed else 'FAIL'}")
    rec["checks"] = checks
    return ok, rec, lines


def reverify(record: dict) -> str:
    """Re-run the product-formula verdict from a JSON record's profiles."""
    profs = {k: DegreeProfile.from_dict(v) for k, v in record["profiles"].items()}
    if "relative" in profs:
        rep = verify_product_formula(profs["total"], profs["base"], profs["relative"])
    else:
        rep = verify_equal_dimension(profs["total"], profs["base"])
    return rep.status


# driver


def _error_code(exc: BaseException) -> int | None:
    if isinstance(exc, (UnsupportedError, DimensionCapError, DegenerateOrbitError)):
        return EXIT_UNSUPPORTED
    if isinstance(exc, PolytopeError) and "dimension" in str(exc):
        return EXIT_UNSUPPORTED
    if isinstance(exc, (InputError, ParseError, yaml.YAMLError, FibrationError, DominanceError,
                        CohomologyError, RationalMapError, ValueError)):
        return EXIT_INPUT
    return None


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dyndeg", description="Dynamical degrees of rational maps and fibrations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="YAML system description")
        p.add_argument("--seed", type=int, default=None, help="seed for random base points")
        p.add_argument("--json", dest="json_out", default=None, help="write a JSON record ('-' for stdout)")

    p = sub.add_parser("degrees", help="dynamical degree profile")
    common(p)
    p.add_argument("--n", type=int, default=None, help="iterates for estimated degrees")
    p = sub.add_parser("sequence", help="per-iterate degrees lambda_p(f^n)")
    common(p)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p = sub.add_parser("verify", help="run one verification")
    common(p)
    p.add_argument("--check", required=True, choices=list(CHECKS) + list(CHECK_ALIASES))
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p = sub.add_parser("report", help="degrees, sequences and every applicable check")
    ap_report = p
    ap_report.add_argument("file")
    ap_report.add_argument("--json", dest="json_out", required=True)
    ap_report.add_argument("--seed", type=int, default=None)
    return ap


COMMANDS = {"degrees": cmd_degrees, "sequence": cmd_sequence, "verify": cmd_verify, "report": cmd_report}


def _run_one(fn, s: Loaded, args):
    try:
        ok, rec, lines = fn(s, args)
        return (EXIT_PASS if ok else EXIT_FAIL), rec, lines
    except Exception as exc:  # mapped to exit codes below
        code = _error_code(exc)
        if code is None:
            raise
        return code, {"error": str(exc), "exit_code": code}, [f"error: {exc}"]


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        systems = load_file(args.file)
    except Exception as exc:
        code = _error_code(exc)
        if code is None:
            raise
        print(f"error: {exc}", file=sys.stderr)
        return code
    fn = COMMANDS[args.command]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(lambda s: _run_one(fn, s, args), systems))
    records = []
    for s, (code, rec, lines) in zip(systems, results):
        if len(systems) > 1:
            print(f"== {s.name or s.kind}")
        out = sys.stderr if code in (EXIT_INPUT, EXIT_UNSUPPORTED) else sys.stdout
        for line in lines:
            print(line, file=out)
        records.append({"name": s.name, "kind": s.kind, "exit_code": code, **rec})
    if args.json_out:
        payload = records[0] if len(records) == 1 else {"systems": records}
        text = json.dumps(payload, indent=2)
        if args.json_out == "-":
            print(text)
        else:
            with open(args.json_out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    codes = [r[0] for r in results]
    # the most severe outcome wins: input errors, then unsupported, then failures
    for code in (EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_FAIL):
        if code in codes:
            return code
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
