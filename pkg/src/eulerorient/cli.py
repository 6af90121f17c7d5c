"""Command-line entry point: ``eulerorient <command> [flags]``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from collections import Counter
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from .exactalg import to_json
from .methods import METHODS, compute_coeffs, parse_value

SUITE_NAMES = ("all", "involution", "symmetry", "odes", "omega_minus1", "weights")


@contextmanager
def _sink(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _frac(x):
    return None if x is None else str(x)


def _emit_rows(fmt, header, rows, payload, out):
    with _sink(out) as fh:
        if fmt == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        else:
            fh.write(json.dumps(payload, indent=1) + "\n")


# ---------------------------------------------------------------- commands

def cmd_coeffs(a) -> int:
    tab = compute_coeffs(a.method, a.order, a.omega, a.v)
    header = ["n", "Q"] + ([tab.R_name] if tab.R is not None else [])
    rows = [[n, str(q)] + ([str(r)] if tab.R is not None else []) for n, q, r in tab.rows()]
    payload = {"method": tab.method, "order": tab.order, "omega": _frac(tab.omega), "v": _frac(tab.v),
               "Q": json.loads(to_json(tab.Q))}
    if tab.R is not None:
        payload[tab.R_name] = json.loads(to_json(tab.R))
    _emit_rows(a.format, header, rows, payload, a.out)
    return 0


def cmd_verify(a) -> int:
    from .verify import report, run_suite
    rows = run_suite(a.suite, a.order, perturb=a.perturb)
    rep = report(rows)
    rep.update(suite=a.suite, order=a.order, perturbed=a.perturb)
    table = [[c["suite"], c["name"], "ok" if c["ok"] else "FAIL", c["order"], c["detail"], c["seconds"]]
             for c in rep["checks"]]
    _emit_rows(a.format, ["suite", "check", "status", "order", "detail", "seconds"], table, rep, a.out)
    return 0 if rep["ok"] else 1


def cmd_sample(a) -> int:
    import random

    from .sampler import SamplerStats, _Tables, critical_weights, sample_patch, validate_patch

    w = critical_weights(a.n_max, 1e-10)
    tables = _Tables(w)
    rng = random.Random(a.seed)
    stats = SamplerStats()
    hist = Counter()
    invalid = 0
    maps = [] if a.maps else None
    for _ in range(a.count):
        m = sample_patch(a.ell, w, a.seed, cap=a.cap, stats=stats, tables=tables, rng=rng)
        if not validate_patch(m, a.ell):
            invalid += 1
        hist[m.inner_faces] += 1
        if maps is not None:
            maps.append(m.to_dict())
    if maps is not None:
        Path(a.maps).write_text(json.dumps({"ell": a.ell, "seed": a.seed, "maps": maps}) + "\n")
    rows = [[f, c, c / a.count] for f, c in sorted(hist.items())]
    payload = {"ell": a.ell, "count": a.count, "seed": a.seed, "invalid": invalid,
               "restarts": stats.restarts, "truncated_mass": stats.truncated_mass,
               "histogram": {str(f): c for f, c in sorted(hist.items())}}
    _emit_rows(a.format, ["faces", "count", "frequency"], rows, payload, a.out)
    print(f"# {a.count} samples, {invalid} invalid, {stats.restarts} restarts", file=sys.stderr)
    return 0 if invalid == 0 else 1


def cmd_critical(a) -> int:
    from . import critical as cr

    if a.t1:
        if a.omega is None:
            raise SystemExit("critical --t1 needs --omega")
        val = cr.t1(float(a.omega))
        if a.format == "csv":
            _emit_rows("csv", ["omega", "t1", "label"], [[float(a.omega), repr(val), cr.PREDICTION]], None, a.out)
        else:
            with _sink(a.out) as fh:
                fh.write(f"{val!r}\n")
        return 0
    if a.regime:
        if a.omega is None:
            raise SystemExit("critical --regime needs --omega")
        r = cr.classify_regime(float(a.omega), a.terms)
        rec = {"omega": r.omega, "regime": r.regime, "t0": r.t0, "q0": r.q0, "t1": r.t1, "label": r.label}
        _emit_rows(a.format, list(rec), [list(rec.values())], rec, a.out)
        return 0
    if a.omega_c:
        val = cr.find_omega_c(terms=a.terms)
        rec = {"omega_c": val, "label": cr.PREDICTION}
        _emit_rows(a.format, list(rec), [list(rec.values())], rec, a.out)
        return 0
    # default: y_c / t_c for omega in {0, 1} over one or more v
    if a.omega is None or Fraction(a.omega) not in (0, 1):
        raise SystemExit("critical needs one of --t1, --regime, --omega-c, or --omega 0|1 with --v")
    if a.v is None:
        raise SystemExit("critical --omega 0|1 needs --v (comma-separated values allowed)")
    which = f"omega{int(Fraction(a.omega))}"
    recs = []
    for v in str(a.v).split(","):
        c = cr.solve_yc(which, float(Fraction(v)))
        recs.append({"v": c.v, "y_c": c.y_c, "t_c": c.t_c, "R_c": c.R_c, "residual": c.residual, "label": c.label})
    _emit_rows(a.format, list(recs[0]), [list(r.values()) for r in recs], recs, a.out)
    return 0


def _load_coeffs(path: str):
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict) and "Q" in data:
        data = data["Q"]
    if isinstance(data, dict) and "terms" in data:
        from .exactalg import from_json
        return list(from_json(json.dumps(data)).c)
    if isinstance(data, list):
        return [float(x) if isinstance(x, float) else Fraction(x) for x in data]
    raise ValueError("input must be a coefficient list or canonical series JSON")


def cmd_ratio(a) -> int:
    from .critical import ratio_estimates

    r = ratio_estimates(_load_coeffs(a.input))
    exps = dict(zip(r.exponent_n, r.exponent))
    lin = dict(zip(r.linear_n, r.radius_linear))
    rows = [[n, rad, lin.get(n, ""), exps.get(n, "")] for n, rad in zip(r.n, r.radius)]
    payload = {"n": r.n, "radius": r.radius, "linear_n": r.linear_n, "radius_linear": r.radius_linear,
               "exponent_n": r.exponent_n, "exponent": r.exponent, "skipped": r.skipped}
    _emit_rows(a.format, ["n", "radius", "radius_linear", "exponent"], rows, payload, a.out)
    return 0


def cmd_serve(a) -> int:
    try:
        import uvicorn

        from .service import create_app
    except ImportError as e:
        raise SystemExit(f"serve needs the optional 'service' extra ({e})")
    uvicorn.run(create_app(), host=a.host, port=a.port)
    return 0


# ---------------------------------------------------------------- parser

def _common(p, order_default=12, fmt_default="json"):
    p.add_argument("--order", "-N", type=int, default=order_default, help="series order (default %(default)s)")
    p.add_argument("--omega", default=None, help="exact rational value of omega; omit for symbolic")
    p.add_argument("--v", default=None, help="exact rational value of v; omit for symbolic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default=fmt_default)
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eulerorient",
                                 description="Generating functions of Eulerian orientations of planar maps.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="coefficient table of Q (and R where defined)")
    _common(p)
    p.add_argument("--method", choices=METHODS, default="onecat")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", help="run invariant suites; exit 1 on any failure")
    _common(p, order_default=10)
    p.add_argument("suite", nargs="?", choices=SUITE_NAMES, default="all")
    p.add_argument("--perturb", action="store_true", help="nudge one coefficient first (harness self-test)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="critical Boltzmann patches at omega=0, v=1")
    _common(p, fmt_default="csv")
    p.add_argument("--ell", type=int, default=1, help="half outer degree")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--maps", default=None, help="also write the sampled maps as JSON to this file")
    p.add_argument("--n-max", type=int, default=200, help="weight table depth")
    p.add_argument("--cap", type=int, default=10 ** 6, help="node cap before a draw is redone")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("critical", help="predicted critical points")
    _common(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--t1", action="store_true", help="t_1(omega)")
    g.add_argument("--regime", action="store_true", help="log or maplike regime at --omega")
    g.add_argument("--omega-c", action="store_true", help="regime boundary omega_c")
    p.add_argument("--terms", type=int, default=16, help="theta truncation depth")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("ratio", help="ratio-method estimators from a coefficient file")
    _common(p, fmt_default="csv")
    p.add_argument("--input", required=True, help="JSON: coefficient list or output of 'coeffs'")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("serve", help="HTTP service (needs the 'service' extra)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return ap


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    for name in ("omega", "v"):
        val = getattr(a, name, None)
        if val is not None and not (a.command == "critical" and name == "v"):
            try:
                parse_value(val)
            except (ValueError, ZeroDivisionError):
                print(f"error: --{name} must be an exact rational, got {val!r}", file=sys.stderr)
                return 2
    try:
        return a.func(a)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
