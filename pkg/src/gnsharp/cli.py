"""Command-line front end.

Five subcommands: constant, profile, verify, limit, table. Structured
output is JSON with sorted keys and floats printed to 17 significant
digits, so identical runs are byte-identical; pass --no-timestamps to
strip the wall clock from the record.

Exit codes
    0  success
    1  usage error
    2  inadmissible or out-of-family parameters
    3  solver failure
    4  a verification check failed (the report is still emitted)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import verify as verification
from .closed_forms import (FamilyMismatchError, SobolevCriticalError,
                           barenblatt_profile, closed_constant_1d,
                           dpd_constant, linfty_profile_q0, positive_profile,
                           profile_1d_finite_m, profile_1d_m_infinity)
from .core import INFINITY, AdmissibilityError, ParamSet, validate
from .profiles import Algebraic, Grid
from .solver import (SolverError, best_constant_numeric, shoot_finite_m,
                     shoot_infinite_m)

SCHEMA = "gn-sharp/1"
VERSION = "0.1.0"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARAMS = 2
EXIT_SOLVER = 3
EXIT_CHECK = 4

_SUITES = ("inequality", "energy", "decay", "strauss", "scaling", "nash")


class UsageError(Exception):
    """Bad flag combinations caught after argparse."""


# ---------------------------------------------------------------------------
# Deterministic rendering
# ---------------------------------------------------------------------------

def _render_json(obj, indent=0):
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        # JSON has no NaN/Infinity literals
        return "%.17g" % x if math.isfinite(x) else "null"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = sorted(obj.items(), key=lambda kv: str(kv[0]))
        body = ",\n".join("%s  %s: %s" % (pad, json.dumps(str(k)),
                                          _render_json(v, indent + 1))
                          for k, v in items)
        return "{\n%s\n%s}" % (body, pad)
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        body = ",\n".join(pad + "  " + _render_json(v, indent + 1)
                          for v in seq)
        return "[\n%s\n%s]" % (body, pad)
    raise TypeError("cannot serialize %r" % (obj,))


def render_json(obj) -> str:
    return _render_json(obj) + "\n"


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def _render_csv(fields, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_csv_cell(row.get(k)) for k in fields])
    return buf.getvalue()


def _render_pairs(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    lines = []
    for key, value in pairs:
        if isinstance(value, (float, np.floating)):
            value = "%.17g" % float(value)
        lines.append("%-*s = %s" % (width, key, value))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RunRecord:
    """One CLI invocation: inputs, configuration and results."""

    command: str
    params: dict | None
    config: dict
    results: object
    schema: str = SCHEMA
    version: str = VERSION
    timestamps: dict | None = None

    def to_payload(self) -> dict:
        payload = {"schema": self.schema, "version": self.version,
                   "command": self.command, "config": self.config,
                   "results": self.results}
        if self.params is not None:
            payload["params"] = self.params
        if self.timestamps is not None:
            payload["timestamps"] = self.timestamps
        return payload


def record_from_json(text: str) -> RunRecord:
    """Inverse of the json output format."""
    obj = json.loads(text)
    return RunRecord(command=obj["command"], params=obj.get("params"),
                     config=obj.get("config", {}), results=obj.get("results"),
                     schema=obj.get("schema", SCHEMA),
                     version=obj.get("version", VERSION),
                     timestamps=obj.get("timestamps"))


# ---------------------------------------------------------------------------
# Shared argument handling
# ---------------------------------------------------------------------------

def _parse_m(text: str):
    t = text.strip()
    if t.lower() == "inf":
        return INFINITY
    try:
        value = float(t)
    except ValueError:
        raise UsageError("--m expects a number or 'inf', got %r" % text)
    if math.isinf(value) or math.isnan(value):
        raise UsageError("--m expects a finite number or 'inf', got %r" % text)
    return value


def _split_list(text: str, flag: str):
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    if not items:
        raise UsageError("%s needs at least one value" % flag)
    return items


def _parse_float_list(text: str, flag: str):
    try:
        return [float(t) for t in _split_list(text, flag)]
    except ValueError:
        raise UsageError("%s expects comma-separated numbers" % flag)


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError("--%s is required for this command" % name)


def _params_payload(params: ParamSet) -> dict:
    return {"d": params.d, "p": params.p, "q": params.q,
            "m": "inf" if params.m is INFINITY else params.m,
            "regime": params.regime.value}


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def _timestamps(started: str, args):
    if args.no_timestamps:
        return None
    return {"started": started, "finished": _now_iso()}


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Constant and profile selection
# ---------------------------------------------------------------------------

def _closed_constant(params: ParamSet):
    if params.d == 1:
        return closed_constant_1d(params)
    return dpd_constant(params)


def _constant_result(params: ParamSet, method: str):
    if method == "closed":
        return _closed_constant(params)
    if method == "numeric":
        return best_constant_numeric(params)
    try:
        return _closed_constant(params)
    except (FamilyMismatchError, SobolevCriticalError):
        return best_constant_numeric(params)


def _constant_payload(res) -> dict:
    return {"C": res.C, "theta": res.theta, "M_c": res.M_c, "beta": res.beta,
            "method": res.method.value, "err_estimate": res.err_estimate}


def _closed_profile(params: ParamSet):
    if params.m is INFINITY:
        if params.d == 1:
            return profile_1d_m_infinity(params)
        if params.q == 0.0:
            return linfty_profile_q0(params)
        raise FamilyMismatchError("no closed profile for m = inf, d >= 2, q > 0")
    if params.d == 1:
        return profile_1d_finite_m(params)
    for family in (barenblatt_profile, positive_profile):
        try:
            return family(params)
        except FamilyMismatchError:
            continue
    raise FamilyMismatchError("exponents outside the closed d >= 2 families")


def _numeric_profile(params: ParamSet):
    if params.m is INFINITY:
        return shoot_infinite_m(params)
    return shoot_finite_m(params)


def _profile_for(params: ParamSet, method: str):
    if method == "closed":
        return _closed_profile(params), "closed"
    if method == "numeric":
        return _numeric_profile(params), "numeric"
    try:
        return _closed_profile(params), "closed"
    except (FamilyMismatchError, SobolevCriticalError):
        return _numeric_profile(params), "numeric"


def _family_name(profile) -> str:
    return "numeric-grid" if isinstance(profile.form, Grid) \
        else profile.form.family


def _support_payload(profile) -> dict:
    R = profile.support_radius
    if R is not None:
        return {"kind": "finite", "R": R}
    decay = profile.support.decay
    kind = "algebraic" if isinstance(decay, Algebraic) else "exponential"
    return {"kind": "infinite", "decay": kind, "rate": decay.rate}


def _plot_radii(profile, n: int) -> np.ndarray:
    R = profile.support_radius
    if R is not None:
        return np.linspace(0.0, R, n)
    # infinite tail: linear head through the half-maximum, log-spaced tail
    # down to 1e-6 of the peak (capped where the sampled data ends)
    peak = profile.peak
    r_half = 1.0
    while profile.u(r_half) > 0.5 * peak and r_half < 1e3:
        r_half *= 2.0
    cap = 1e6
    if isinstance(profile.form, Grid):
        cap = float(profile.form.nodes[-1])
    r_hi = r_half
    while profile.u(r_hi) > 1e-6 * peak and r_hi < cap:
        r_hi *= 2.0
    r_hi = min(max(r_hi, 2.0 * r_half), cap)
    head = np.linspace(0.0, r_half, n // 2, endpoint=False)
    tail = np.geomspace(r_half, r_hi, n - n // 2)
    return np.concatenate([head, tail])


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_constant(args) -> int:
    started = _now_iso()
    _require(args, "p", "q", "m")
    params = ParamSet(d=args.d, p=args.p, q=args.q, m=_parse_m(args.m))
    validate(params)
    res = _constant_result(params, args.method)
    results = _constant_payload(res)
    record = RunRecord(command="constant", params=_params_payload(params),
                       config={"method": args.method}, results=results,
                       timestamps=_timestamps(started, args))
    if args.format == "json":
        text = render_json(record.to_payload())
    elif args.format == "csv":
        fields = ["d", "p", "q", "m", "theta", "M_c", "C", "beta", "method",
                  "err_estimate"]
        row = dict(record.params)
        row.update(results)
        text = _render_csv(fields, [row])
    else:
        pairs = list(record.params.items()) + list(results.items())
        text = _render_pairs(pairs)
    _emit(text, args.out)
    return EXIT_OK


def cmd_profile(args) -> int:
    started = _now_iso()
    _require(args, "p", "q", "m")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    params = ParamSet(d=args.d, p=args.p, q=args.q, m=_parse_m(args.m))
    validate(params)
    profile, source = _profile_for(params, args.method)
    rs = _plot_radii(profile, args.points)
    us = np.maximum(np.asarray(profile.u(rs), dtype=float), 0.0)
    theta = validate(params).theta
    support = _support_payload(profile)

    if args.format == "json":
        results = {"family": _family_name(profile), "source": source,
                   "peak": profile.peak, "theta": theta, "support": support,
                   "r": [float(r) for r in rs], "u": [float(u) for u in us]}
        record = RunRecord(command="profile", params=_params_payload(params),
                           config={"method": args.method,
                                   "points": args.points},
                           results=results,
                           timestamps=_timestamps(started, args))
        text = render_json(record.to_payload())
    else:
        m_str = "inf" if params.m is INFINITY else "%.17g" % params.m
        lines = ["# gn-sharp profile",
                 "# schema: %s" % SCHEMA,
                 "# params: d=%d p=%.17g q=%.17g m=%s"
                 % (params.d, params.p, params.q, m_str),
                 "# theta: %.17g" % theta,
                 "# family: %s" % _family_name(profile),
                 "# source: %s" % source]
        if support["kind"] == "finite":
            lines.append("# support: R=%.17g" % support["R"])
        else:
            lines.append("# decay: %s rate=%.17g"
                         % (support["decay"], support["rate"]))
        lines.append("# peak: %.17g" % profile.peak)
        lines.append("# columns: r u")
        lines += ["%.17g %.17g" % (r, u) for r, u in zip(rs, us)]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _run_suites(params: ParamSet, suites, n_samples: int, seed: int):
    checks = []

    def add(suite, name, ok, **detail):
        entry = {"suite": suite, "name": name,
                 "status": "passed" if ok else "failed"}
        entry.update(detail)
        checks.append(entry)

    def skip(suite, reason):
        checks.append({"suite": suite, "name": "applicability",
                       "status": "skipped", "reason": reason})

    cache = {}

    def profile():
        if "profile" not in cache:
            cache["profile"] = _profile_for(params, "auto")[0]
        return cache["profile"]

    def constant():
        if "C" not in cache:
            cache["C"] = _constant_result(params, "auto").C
        return cache["C"]

    for suite in suites:
        if suite == "inequality":
            C = constant()
            samples = verification.check_inequality("mixed", n_samples,
                                                    params, C=C, seed=seed)
            worst = min(s.slack for s in samples)
            add(suite, "random-samples", worst >= -1e-8 * C,
                n_samples=len(samples), worst_slack=worst, C=C)
            ratio = verification.extremal_ratio(profile(), params)
            add(suite, "extremal-ratio", abs(ratio - C) <= 1e-6 * C,
                ratio=ratio, C=C, rel_gap=abs(ratio - C) / C)
        elif suite == "energy":
            rep = verification.energy_report(profile(), params)
            scale = max(1.0, rep.grad_scale)
            if params.d == 1:
                add(suite, "first-integral-constant",
                    rep.h_residual <= 1e-8 * scale,
                    max_abs_H=rep.h_residual)
            add(suite, "dissipation-balance",
                rep.dissipation_residual <= 1e-6,
                residual=rep.dissipation_residual)
            value = rep.G_value if params.m is INFINITY else rep.F_value
            deficit = abs(value - rep.contact_term)
            add(suite, "integral-identity", deficit <= 1e-6 * scale,
                functional=value, contact_term=rep.contact_term,
                deficit=deficit)
        elif suite == "decay":
            prof = profile()
            if prof.support_radius is not None:
                skip(suite, "compact support leaves no tail to fit")
                continue
            rep = verification.decay_check(prof, params)
            if rep.target_rate is None:
                add(suite, "exponential-envelope", rep.fitted_rate > 0.0,
                    kind=rep.kind, fitted_rate=rep.fitted_rate)
            else:
                add(suite, "tail-rate", rep.rel_err <= 0.05, kind=rep.kind,
                    fitted_rate=rep.fitted_rate, target_rate=rep.target_rate,
                    rel_err=rep.rel_err)
        elif suite == "strauss":
            if params.d < 2:
                skip(suite, "the radial sup bound needs d >= 2")
                continue
            tfs = verification.sample_test_functions(
                "mixed", min(8, n_samples), seed)
            tfs.append(verification.profile_as_test_function(profile()))
            held = True
            worst_margin = math.inf
            for tf in tfs:
                rep = verification.strauss_bound_check(tf, params)
                held = held and rep.all_hold
                worst_margin = min(worst_margin, min(rep.margins))
            add(suite, "pointwise-bound", held, n_functions=len(tfs),
                worst_margin=worst_margin)
        elif suite == "scaling":
            if params.m is INFINITY:
                skip(suite, "the reduction needs finite m")
                continue
            tfs = verification.sample_test_functions(
                "mixed", min(8, n_samples), seed)
            worst = 0.0
            for tf in tfs:
                rep = verification.scaling_reduction_check(tf, params)
                worst = max(worst, rep.rel_err)
            add(suite, "quotient-vs-sum-form", worst <= 1e-6,
                n_functions=len(tfs), worst_rel_err=worst)
        elif suite == "nash":
            if params.p != 2.0:
                skip(suite, "the eigenvalue reading needs p = 2")
                continue
            nash_params = ParamSet(d=params.d, p=2.0, q=0.0, m=1.0)
            rep = verification.nash_eigen_check(nash_params)
            ok = (rep.eigen_rel_err <= 1e-6
                  and rep.equation_residual <= 1e-6
                  and abs(rep.boundary_slope) <= 1e-6)
            add(suite, "neumann-eigenvalue", ok, R=rep.R,
                eigenvalue=rep.eigenvalue, bessel_root=rep.bessel_value,
                eigen_rel_err=rep.eigen_rel_err,
                equation_residual=rep.equation_residual,
                boundary_slope=rep.boundary_slope)
    return checks


def _verify_text(checks, counts) -> str:
    def short(v):
        if v is None:
            return "-"
        if isinstance(v, (float, np.floating)):
            return "%.6g" % float(v)
        return str(v)

    lines = []
    for c in checks:
        extras = " ".join("%s=%s" % (k, short(v)) for k, v in c.items()
                          if k not in ("suite", "name", "status"))
        lines.append("[%s] %s/%s%s" % (c["status"].upper(), c["suite"],
                                       c["name"],
                                       " " + extras if extras else ""))
    lines.append("passed %d, failed %d, skipped %d"
                 % (counts["passed"], counts["failed"], counts["skipped"]))
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    started = _now_iso()
    _require(args, "p")
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    if args.suite == "nash":
        # the eigenvalue reading pins (q, m) = (0, 1)
        q = 0.0 if args.q is None else args.q
        m = 1.0 if args.m is None else _parse_m(args.m)
    else:
        _require(args, "q", "m")
        q, m = args.q, _parse_m(args.m)
    params = ParamSet(d=args.d, p=args.p, q=q, m=m)
    validate(params)
    suites = _SUITES if args.suite == "all" else (args.suite,)
    checks = _run_suites(params, suites, args.samples, args.seed)
    counts = {"passed": sum(c["status"] == "passed" for c in checks),
              "failed": sum(c["status"] == "failed" for c in checks),
              "skipped": sum(c["status"] == "skipped" for c in checks)}
    results = {"checks": checks, "counts": counts}
    record = RunRecord(command="verify", params=_params_payload(params),
                       config={"suite": args.suite, "samples": args.samples,
                               "seed": args.seed},
                       results=results, timestamps=_timestamps(started, args))
    if args.format == "json":
        text = render_json(record.to_payload())
    else:
        text = _verify_text(checks, counts)
    _emit(text, args.out)
    return EXIT_CHECK if counts["failed"] else EXIT_OK


def cmd_limit(args) -> int:
    started = _now_iso()
    _require(args, "p", "q")
    m_list = _parse_float_list(args.m_list, "--m-list")
    if len(m_list) < 3 or any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise UsageError("--m-list must be increasing with at least 3 entries")
    if args.d != 1:
        raise AdmissibilityError("d != 1", "the limit study is d = 1 only")
    base = ParamSet(d=1, p=args.p, q=args.q, m=INFINITY)
    validate(base)
    rep = verification.limit_study(base, m_list, threshold=args.threshold)

    rows = []
    for i, m in enumerate(rep.m_list):
        rows.append({"m": m, "C": rep.C_values[i], "C_gap": rep.C_gaps[i],
                     "R": rep.R_values[i],
                     "R_gap": rep.R_gaps[i] if rep.R_gaps else None,
                     "sup_gap": rep.sup_gaps[i]})
    results = {"targets": {"C": rep.C_target, "R": rep.R_target},
               "rows": rows, "tail_monotone": rep.tail_monotone,
               "final_gap": rep.final_gap, "threshold": rep.threshold,
               "converged": rep.converged}
    record = RunRecord(command="limit",
                       params={"d": 1, "p": args.p, "q": args.q},
                       config={"m_list": m_list, "threshold": args.threshold},
                       results=results, timestamps=_timestamps(started, args))
    fields = ["m", "C", "C_gap", "R", "R_gap", "sup_gap"]
    if args.format == "json":
        text = render_json(record.to_payload())
    elif args.format == "csv":
        text = _render_csv(fields, rows)
    else:
        lines = ["targets: C=%.17g R=%s"
                 % (rep.C_target,
                    "%.17g" % rep.R_target if rep.R_target is not None
                    else "-")]
        lines.append("%10s %22s %12s %12s %12s"
                     % ("m", "C_m", "C_gap", "R_gap", "sup_gap"))
        for row in rows:
            rg = "%.6g" % row["R_gap"] if row["R_gap"] is not None else "-"
            lines.append("%10g %22.17g %12.6g %12s %12.6g"
                         % (row["m"], row["C"], row["C_gap"], rg,
                            row["sup_gap"]))
        lines.append("tail monotone: %s" % ("yes" if rep.tail_monotone
                                            else "no"))
        lines.append("final gap %.6g against threshold %.6g: %s"
                     % (rep.final_gap, rep.threshold,
                        "converged" if rep.converged else "not converged"))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if rep.tail_monotone else EXIT_CHECK


def cmd_table(args) -> int:
    started = _now_iso()
    _require(args, "p_list", "q_list", "m_list")
    if args.parallel < 1:
        raise UsageError("--parallel must be positive")
    p_list = _parse_float_list(args.p_list, "--p-list")
    q_list = _parse_float_list(args.q_list, "--q-list")
    m_list = [_parse_m(t) for t in _split_list(args.m_list, "--m-list")]

    combos = []
    seen = set()
    for p in p_list:
        for q in q_list:
            for m in m_list:
                key = (p, q, "inf" if m is INFINITY else m)
                if key not in seen:
                    seen.add(key)
                    combos.append((p, q, m))

    def row_for(combo):
        p, q, m = combo
        row = {"d": args.d, "p": p, "q": q,
               "m": "inf" if m is INFINITY else m}
        try:
            params = ParamSet(d=args.d, p=p, q=q, m=m)
            validate(params)
            res = _constant_result(params, args.method)
            row.update(_constant_payload(res))
            row["error"] = None
        except (AdmissibilityError, FamilyMismatchError, SobolevCriticalError,
                SolverError) as exc:
            row["error"] = str(exc)
        return row

    if args.parallel > 1:
        with ThreadPoolExecutor(max_workers=args.parallel) as pool:
            rows = list(pool.map(row_for, combos))
    else:
        rows = [row_for(c) for c in combos]

    n_failed = sum(row["error"] is not None for row in rows)
    results = {"rows": rows, "n_rows": len(rows), "n_failed": n_failed}
    record = RunRecord(command="table", params=None,
                       config={"d": args.d, "p_list": p_list,
                               "q_list": q_list,
                               "m_list": ["inf" if m is INFINITY else m
                                          for m in m_list],
                               "method": args.method,
                               "parallel": args.parallel},
                       results=results, timestamps=_timestamps(started, args))
    fields = ["d", "p", "q", "m", "theta", "M_c", "C", "beta", "method",
              "err_estimate", "error"]
    if args.format == "json":
        text = render_json(record.to_payload())
    elif args.format == "csv":
        text = _render_csv(fields, rows)
    else:
        lines = ["%3s %8s %8s %8s %22s %14s" % ("d", "p", "q", "m", "C",
                                                "method")]
        for row in rows:
            if row["error"] is not None:
                lines.append("%3d %8g %8s %8s error: %s"
                             % (row["d"], row["p"], row["q"], row["m"],
                                row["error"]))
            else:
                lines.append("%3d %8g %8s %8s %22.17g %14s"
                             % (row["d"], row["p"], row["q"], row["m"],
                                row["C"], row["method"]))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if rows and n_failed == len(rows):
        return EXIT_SOLVER
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; 2 is reserved for inadmissible
    # parameters here, so route usage errors to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(EXIT_USAGE)


def _add_common(sp, with_m=True):
    sp.add_argument("--d", type=int, default=1, help="dimension (default 1)")
    sp.add_argument("--p", type=float, default=None,
                    help="gradient exponent, p > 1")
    sp.add_argument("--q", type=float, default=None,
                    help="low norm exponent, q >= 0")
    if with_m:
        sp.add_argument("--m", type=str, default=None,
                        help="high norm exponent, a number or 'inf'")


def _add_output(sp, formats):
    sp.add_argument("--format", choices=formats, default=formats[0])
    sp.add_argument("--out", type=str, default=None,
                    help="write the report to this file instead of stdout")
    sp.add_argument("--no-timestamps", action="store_true",
                    help="omit wall-clock fields for reproducible output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gn-sharp",
                     description="Sharp interpolation constants and their "
                                 "extremal radial profiles.")
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="command")

    sp = sub.add_parser("constant",
                        help="best constant for one parameter set")
    _add_common(sp)
    sp.add_argument("--method", choices=("auto", "closed", "numeric"),
                    default="auto")
    _add_output(sp, ("json", "csv", "text"))
    sp.set_defaults(func=cmd_constant)

    sp = sub.add_parser("profile",
                        help="sampled extremal profile for plotting")
    _add_common(sp)
    sp.add_argument("--method", choices=("auto", "closed", "numeric"),
                    default="auto")
    sp.add_argument("--points", type=int, default=400,
                    help="number of sample radii (default 400)")
    _add_output(sp, ("text", "json"))
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("verify",
                        help="run the verification suites")
    _add_common(sp)
    sp.add_argument("--suite", choices=_SUITES + ("all",), default="all")
    sp.add_argument("--samples", type=int, default=100,
                    help="random test functions per suite (default 100)")
    sp.add_argument("--seed", type=int, default=0)
    _add_output(sp, ("json", "text"))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("limit",
                        help="finite-m convergence study toward m = inf (d=1)")
    _add_common(sp, with_m=False)
    sp.add_argument("--m-list", type=str, default="3,5,9,17,33,65",
                    help="comma-separated increasing m values")
    sp.add_argument("--threshold", type=float, default=1e-2,
                    help="final-gap convergence threshold (default 1e-2)")
    _add_output(sp, ("json", "csv", "text"))
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("table",
                        help="constant sweep over parameter lists")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--p-list", type=str, default=None)
    sp.add_argument("--q-list", type=str, default=None)
    sp.add_argument("--m-list", type=str, default=None,
                    help="comma-separated, entries may be 'inf'")
    sp.add_argument("--method", choices=("auto", "closed", "numeric"),
                    default="auto")
    sp.add_argument("--parallel", type=int, default=1,
                    help="worker threads for the sweep")
    _add_output(sp, ("json", "csv", "text"))
    sp.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write("gn-sharp: error: %s\n" % exc)
        return EXIT_USAGE
    except (AdmissibilityError, FamilyMismatchError,
            SobolevCriticalError) as exc:
        sys.stderr.write("gn-sharp: inadmissible parameters: %s\n" % exc)
        return EXIT_PARAMS
    except SolverError as exc:
        sys.stderr.write("gn-sharp: solver failure: %s\n" % exc)
        return EXIT_SOLVER


if __name__ == "__main__":
    raise SystemExit(main())
