"""Command-line front end.

Every subcommand prints one report (JSON by default, CSV with ``--format csv``)
and exits 0 when all checks pass, 1 on a tolerance failure and 2 on a usage
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import closed_form as cf
from . import rmt
from .core import (
    AMomentData,
    BFamilyMoments,
    DualScalar,
    HorizonError,
    NCPolynomial,
    catalan,
    parse_word,
    rel_err,
)
from .engine import eval_poly_moment, structured_moment
from .lift import lift_product, lift_span_moment, lifted_triple


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------


def parse_complex(text: str) -> complex:
    """``RE+IMi``, ``RE-IMi``, ``IMi`` or a bare real."""
    s = text.strip().replace(" ", "")
    if not s or "j" in s.lower():
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")
    try:
        return complex(s.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _pair(x, where: str) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return complex(x[0], x[1])
    raise UsageError(f"{where}: expected [re, im] or a number, got {x!r}")


def load_a_moments(spec: str, needed: int) -> AMomentData:
    """``semicircle``, ``bernoulli`` or a JSON file ``{"phi": [...], "phi_prime": [...]}``."""
    if spec == "semicircle":
        return AMomentData.semicircle(needed)
    if spec == "bernoulli":
        return AMomentData.symmetric_bernoulli(needed)
    path = Path(spec)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read moment file {spec}: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("phi"), list):
        raise UsageError(f"moment file {spec}: needs an object with a 'phi' list")
    phi = [_pair(v, f"{spec} phi[{i}]") for i, v in enumerate(data["phi"])]
    raw_prime = data.get("phi_prime")
    if raw_prime is None:
        prime = [0j] * len(phi)
    elif isinstance(raw_prime, list):
        prime = [_pair(v, f"{spec} phi_prime[{i}]") for i, v in enumerate(raw_prime)]
    else:
        raise UsageError(f"moment file {spec}: 'phi_prime' must be a list")
    if len(prime) != len(phi):
        raise UsageError(f"moment file {spec}: 'phi' and 'phi_prime' differ in length")
    return AMomentData.from_sequence(phi, prime)


def _orders(args) -> list[int]:
    if args.kmax is not None:
        ks = list(range(1, args.kmax + 1))
    else:
        ks = args.k or [1]
    if min(ks) < 1:
        raise UsageError("moment orders must be >= 1")
    return ks


def _c(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# Report formatting
# ---------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    out = format(x, ".17g")
    if "e" not in out and "." not in out and "n" not in out:
        out += ".0"
    return out


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, complex):
        return _encode(_c(obj))
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps_report(report: dict) -> str:
    """Deterministic JSON: insertion key order, floats at 17 significant digits."""
    return _encode(report)


CSV_COLUMNS = [
    "k",
    "value_re",
    "value_im",
    "eps_re",
    "eps_im",
    "std_error",
    "prediction_re",
    "prediction_im",
    "gap",
]


def dumps_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report["rows"]:
        value = row.get("value") or [None, None]
        eps = row.get("eps") or [None, None]
        pred = row.get("prediction") or [None, None]
        cells = [row["k"], *value, *eps, row.get("std_error"), *pred, row.get("gap")]
        writer.writerow(["" if c is None else _fmt_float(c) if isinstance(c, float) else c for c in cells])
    return buf.getvalue()


def _report(command: str, params: dict, rows: list[dict], passed: bool) -> dict:
    return {"command": command, "params": params, "rows": rows, "pass": bool(passed)}


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _span_params(args, alpha=None, beta=None) -> cf.SpanParams:
    return cf.SpanParams(
        args.alpha if alpha is None else alpha,
        args.beta if beta is None else beta,
        DualScalar(args.b_mean, args.b_mean_prime),
        DualScalar(args.b_second, args.b_second_prime),
    )


def _b_single(params: cf.SpanParams) -> BFamilyMoments:
    return BFamilyMoments.from_table({"b": params.b_mean, "bb": params.b_second})


def _span_poly(alpha, beta) -> NCPolynomial:
    return NCPolynomial({parse_word("ab"): alpha, parse_word("ba"): beta})


def _b_echo(args) -> dict:
    return {
        "b_mean": [_c(args.b_mean), _c(args.b_mean_prime)],
        "b_second": [_c(args.b_second), _c(args.b_second_prime)],
        "a_moments": args.a_moments,
        "tol": args.tol,
    }


def _dual_err(x: DualScalar, ref: DualScalar) -> float:
    return max(rel_err(x.value, ref.value), rel_err(x.eps, ref.eps))


def cmd_span(args) -> dict:
    ks = _orders(args)
    params = _span_params(args)
    a = load_a_moments(args.a_moments, max(ks))
    b = _b_single(params)
    poly = _span_poly(params.alpha, params.beta)
    rows, ok = [], True
    for k in ks:
        ak = a.power(k)
        closed = cf.span_moment(params, k, ak)
        err = max(
            _dual_err(eval_poly_moment(poly, k, a, b), closed),
            _dual_err(lift_span_moment(params, k, ak), closed),
        )
        ok &= err <= args.tol
        rows.append({"k": k, "value": _c(closed.value), "eps": _c(closed.eps), "max_rel_err": err})
    echo = {"alpha": _c(params.alpha), "beta": _c(params.beta), **_b_echo(args)}
    echo["degenerate"] = cf.is_degenerate(params)
    return _report("span", echo, rows, ok)


def cmd_inf_span(args) -> dict:
    ks = _orders(args)
    params = _span_params(args)
    a = load_a_moments(args.a_moments, max(ks))
    b = _b_single(params)
    poly = _span_poly(params.alpha, params.beta)
    rows, ok = [], True
    for k in ks:
        ak = a.power(k)
        dual_route = cf.span_moment(params, k, ak)
        explicit = cf.inf_span_moment(params, k, ak)
        oracle = eval_poly_moment(poly, k, a, b)
        err = max(rel_err(explicit, oracle.eps), rel_err(dual_route.eps, oracle.eps))
        ok &= err <= args.tol
        rows.append({"k": k, "value": _c(dual_route.value), "eps": _c(explicit), "max_rel_err": err})
    echo = {"alpha": _c(params.alpha), "beta": _c(params.beta), **_b_echo(args)}
    return _report("inf-span", echo, rows, ok)


def _cmd_special(args, name, fn, alpha, beta) -> dict:
    ks = _orders(args)
    params = _span_params(args, alpha, beta)
    a = load_a_moments(args.a_moments, max(ks))
    b = _b_single(params)
    poly = _span_poly(alpha, beta)
    rows, ok = [], True
    for k in ks:
        ak = a.power(k)
        got = fn(params.b_mean, params.b_second, k, ak)
        err = max(
            _dual_err(got, cf.span_moment(params, k, ak)),
            _dual_err(got, eval_poly_moment(poly, k, a, b)),
        )
        ok &= err <= args.tol
        rows.append({"k": k, "value": _c(got.value), "eps": _c(got.eps), "max_rel_err": err})
    return _report(name, _b_echo(args), rows, ok)


def cmd_anticomm(args) -> dict:
    return _cmd_special(args, "anticomm", cf.anticommutator_moment, 1, 1)


def cmd_comm(args) -> dict:
    return _cmd_special(args, "comm", cf.commutator_moment, 1j, -1j)


def general_instance(b11, b22, b12, bt1, bt2, ct1, ct2):
    """Structured terms, polynomial and joint B-moments for ``b1 a c1 a b1 + b2 a c2 a b2``.

    Letters: ``b1, b2`` are B-ids 1 and 2, ``c1, c2`` are B-ids 3 and 4.
    """
    w = parse_word
    terms = [(w("b1"), w("a b3 a"), w("b1")), (w("b2"), w("a b4 a"), w("b2"))]
    table = {
        "b1": bt1, "b2": bt2, "b3": ct1, "b4": ct2,
        "b1 b1": b11, "b2 b2": b22, "b1 b2": b12, "b2 b1": b12,
    }
    poly = NCPolynomial([(bl * y * br, 1.0) for bl, y, br in terms])
    return terms, poly, BFamilyMoments.from_table(table)


def cmd_general(args) -> dict:
    ks = _orders(args)
    a = load_a_moments(args.a_moments, 2 * max(ks))
    vals = (args.b11, args.b22, args.b12, args.bt1, args.bt2, args.ct1, args.ct2)
    law = cf.two_atom_law(*vals, base=a)
    terms, poly, b = general_instance(*vals)
    rows, ok = [], True
    for k in ks:
        got = law.moment(k)
        err = max(
            rel_err(got, structured_moment(terms, k, a, b)),
            rel_err(got, eval_poly_moment(poly, k, a, b).value),
        )
        ok &= err <= args.tol
        row = {"k": k, "value": _c(got), "eps": [0.0, 0.0], "max_rel_err": err}
        if law.unit_mass_weight is not None:
            row["unit_mass_value"] = _c(law.unit_mass_moment(k))
        rows.append(row)
    params = {
        "b11": _c(args.b11), "b22": _c(args.b22), "b12": _c(args.b12),
        "bt1": _c(args.bt1), "bt2": _c(args.bt2), "ct1": _c(args.ct1), "ct2": _c(args.ct2),
        "a_moments": args.a_moments, "tol": args.tol,
        **_law_echo(law),
    }
    return _report("general", params, rows, ok)


def _law_echo(law: cf.TwoAtomLaw) -> dict:
    opt = lambda z: None if z is None else _c(z)  # noqa: E731
    return {
        "theta": _c(law.theta),
        "zeta": _c(law.zeta),
        "weight": opt(law.weight),
        "lower_weight": opt(law.lower_weight),
        "null_weight": opt(law.null_weight),
        "unit_mass_weight": opt(law.unit_mass_weight),
    }


def cmd_wigner_limit(args) -> dict:
    ks = _orders(args)
    if args.kind == "span":
        spec = rmt.PolySpec.span(args.alpha, args.m)
    elif args.kind == "t":
        spec = rmt.PolySpec.t_operator(args.m)
    else:
        spec = rmt.PolySpec.general(*_nmhs(args.nmhs))
    rows, ok = [], True
    for k in ks:
        pred = spec.prediction(k)
        oracle = spec.engine_prediction(k)
        err = rel_err(pred, oracle)
        ok &= err <= args.tol
        row = {"k": k, "value": _c(pred), "eps": [0.0, 0.0], "oracle": _c(oracle), "max_rel_err": err}
        if args.kind == "span":
            alt = cf.wigner_ls_limit_moment_abs(args.alpha, args.m, k)
            row["abs_alpha_reading"] = _c(alt)
            row["readings_differ"] = abs(alt - pred) > 0
        rows.append(row)
    params = {"kind": args.kind, "tol": args.tol}
    if args.kind in ("span", "t"):
        params["m"] = args.m
        params["d_m"] = cf.d_m(args.m)
    if args.kind == "span":
        params["alpha"] = _c(args.alpha)
    if args.kind == "general":
        params["nmhs"] = list(_nmhs(args.nmhs))
        params.update(_law_echo(cf.wigner_general_poly_limit(*_nmhs(args.nmhs))))
    return _report("wigner-limit", params, rows, ok)


def _nmhs(text: str) -> tuple[int, int, int, int]:
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--nmhs expects four integers like 1,1,1,1, got {text!r}") from None
    if len(vals) != 4 or min(vals) < 1:
        raise UsageError(f"--nmhs expects four integers >= 1, got {text!r}")
    return vals


def random_span_draw(rng: np.random.Generator, kmax: int):
    """Random span parameters, dual B-moments and dual A-moments up to ``kmax``."""
    def unit_disc(size=None):
        r = np.sqrt(rng.uniform(0, 1, size))
        t = rng.uniform(0, 2 * np.pi, size)
        return r * np.exp(1j * t)

    def coeff():
        return complex(rng.uniform(0.2, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi)))

    alpha, beta = coeff(), coeff()
    b = [complex(2 * z) for z in unit_disc(4)]
    params = cf.SpanParams(alpha, beta, DualScalar(b[0], b[1]), DualScalar(b[2], b[3]))
    a = AMomentData.from_sequence(list(unit_disc(kmax)), list(unit_disc(kmax)))
    return params, a


def cmd_oracle_check(args) -> dict:
    rng = np.random.default_rng(args.seed)
    worst_v = [0.0] * args.kmax
    worst_e = [0.0] * args.kmax
    for _ in range(args.trials):
        params, a = random_span_draw(rng, args.kmax)
        b = _b_single(params)
        poly = _span_poly(params.alpha, params.beta)
        for k in range(1, args.kmax + 1):
            ak = a.power(k)
            closed = cf.span_moment(params, k, ak)
            oracle = eval_poly_moment(poly, k, a, b)
            lifted = lift_span_moment(params, k, ak)
            explicit = cf.inf_span_moment(params, k, ak)
            worst_v[k - 1] = max(worst_v[k - 1], rel_err(closed.value, oracle.value), rel_err(lifted.value, oracle.value))
            worst_e[k - 1] = max(
                worst_e[k - 1],
                rel_err(closed.eps, oracle.eps),
                rel_err(lifted.eps, oracle.eps),
                rel_err(explicit, oracle.eps),
            )
    rows = [
        {"k": k, "value": [worst_v[k - 1], 0.0], "eps": [worst_e[k - 1], 0.0]}
        for k in range(1, args.kmax + 1)
    ]
    ok = max(worst_v + worst_e) <= args.tol
    params = {"trials": args.trials, "kmax": args.kmax, "tol": args.tol, "seed": args.seed}
    return _report("oracle-check", params, rows, ok)


def cmd_lift_check(args) -> dict:
    rng = np.random.default_rng(args.seed)
    worst = [0.0] * args.kmax
    worst_sq = [0.0] * args.kmax
    for _ in range(args.trials):
        params, a = random_span_draw(rng, args.kmax)
        triple = lifted_triple(params)
        for k in range(1, args.kmax + 1):
            ak = a.power(k)
            worst[k - 1] = max(worst[k - 1], _dual_err(lift_span_moment(params, k, ak), cf.span_moment(params, k, ak)))
            seq = lift_product(triple, k, "sequential")
            sq = lift_product(triple, k, "squaring")
            diff = max(_dual_err(seq[i][j], sq[i][j]) for i in range(2) for j in range(2))
            worst_sq[k - 1] = max(worst_sq[k - 1], diff)
    rows = [
        {"k": k, "value": [worst[k - 1], 0.0], "eps": [worst_sq[k - 1], 0.0]}
        for k in range(1, args.kmax + 1)
    ]
    ok = max(worst) <= args.tol and max(worst_sq) <= 1e-12
    params = {"trials": args.trials, "kmax": args.kmax, "tol": args.tol, "seed": args.seed}
    return _report("lift-check", params, rows, ok)


def cmd_catalan_check(args) -> dict:
    rows, ok = [], True
    for n in range(args.nmax + 1):
        c = catalan(n)
        row = {"k": n, "value": [float(c), 0.0], "catalan": c}
        if n < args.nmax:
            nxt = catalan(n + 1)
            row["recurrence_ok"] = nxt * (n + 2) == c * 2 * (2 * n + 1)
            ok &= row["recurrence_ok"]
        if n >= 1:
            row["d_m"] = cf.d_m(n)
        rows.append(row)
    ineq = all(
        cf.catalan_inequality_holds(n, m)
        for n in range(1, args.ineq_max + 1)
        for m in range(1, args.ineq_max + 1)
    )
    ok &= ineq
    params = {"nmax": args.nmax, "ineq_max": args.ineq_max, "inequality_ok": ineq}
    return _report("catalan-check", params, rows, ok)


def cmd_rmt(args) -> dict:
    ks = _orders(args)
    try:
        config = rmt.WignerConfig(
            ensemble=args.ensemble,
            n=args.n,
            n0=args.n0,
            samples=args.samples,
            entry_law=args.entry_law,
            seed=args.seed,
            max_n=args.max_n,
            workers=args.workers,
        )
    except (ValueError, MemoryError) as exc:
        raise UsageError(str(exc)) from None
    if args.spec == "trace":
        estimates = rmt.trace_moment_estimates(config, ks)
    else:
        if args.spec == "t":
            spec = rmt.PolySpec.t_operator(args.power)
        elif args.spec == "span":
            spec = rmt.PolySpec.span(args.alpha, args.power)
        else:
            spec = rmt.PolySpec.general(*_nmhs(args.nmhs))
        estimates = rmt.mc_moment_estimates(spec, ks, config)
    rows, ok = [], True
    for est in estimates:
        passed = est.within(args.atol, args.rtol, args.nsigma)
        ok &= passed
        rows.append(
            {
                "k": est.k,
                "value": _c(est.mean),
                "eps": None,
                "std_error": est.std_error,
                "prediction": None if est.prediction is None else _c(est.prediction),
                "gap": est.abs_gap,
                "pass": passed,
            }
        )
    params = {
        "spec": args.spec,
        "ensemble": config.ensemble.value,
        "entry_law": config.entry_law.value,
        "n": config.n,
        "n0": config.n0,
        "samples": config.samples,
        "seed": config.seed,
        "atol": args.atol,
        "rtol": args.rtol,
        "nsigma": args.nsigma,
    }
    if args.spec in ("t", "span"):
        params["power"] = args.power
    if args.spec == "span":
        params["alpha"] = _c(args.alpha)
    if args.spec == "general":
        params["nmhs"] = list(_nmhs(args.nmhs))
    return _report("rmt", params, rows, ok)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _add_orders(p, default_tol):
    p.add_argument("--k", type=_positive, nargs="+", help="moment orders")
    p.add_argument("--kmax", type=_positive, help="use orders 1..KMAX")
    p.add_argument("--tol", type=float, default=default_tol)


def _add_b_moments(p):
    p.add_argument("--b-mean", type=parse_complex, required=True, help="phi(b)")
    p.add_argument("--b-second", type=parse_complex, required=True, help="phi(b^2)")
    p.add_argument("--b-mean-prime", type=parse_complex, default=0j, help="phi'(b)")
    p.add_argument("--b-second-prime", type=parse_complex, default=0j, help="phi'(b^2)")
    p.add_argument("--a-moments", required=True, help="JSON file, 'semicircle' or 'bernoulli'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monotone-moments",
        description="Moments of polynomials in monotone independent variables.",
    )
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    for name, fn, help_ in (
        ("span", cmd_span, "moments of alpha*ab + beta*ba"),
        ("inf-span", cmd_inf_span, "infinitesimal moments of alpha*ab + beta*ba"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--alpha", type=parse_complex, required=True)
        p.add_argument("--beta", type=parse_complex, required=True)
        _add_b_moments(p)
        _add_orders(p, 1e-9)
        p.set_defaults(func=fn)

    for name, fn, help_ in (
        ("anticomm", cmd_anticomm, "moments of ab + ba"),
        ("comm", cmd_comm, "moments of i(ab - ba)"),
    ):
        p = sub.add_parser(name, help=help_)
        _add_b_moments(p)
        _add_orders(p, 1e-9)
        p.set_defaults(func=fn)

    p = sub.add_parser("general", help="law of b1 a c1 a b1 + b2 a c2 a b2")
    for flag in ("b11", "b22", "b12", "bt1", "bt2", "ct1", "ct2"):
        p.add_argument(f"--{flag}", type=parse_complex, required=True)
    p.add_argument("--a-moments", required=True, help="JSON file, 'semicircle' or 'bernoulli'")
    _add_orders(p, 1e-8)
    p.set_defaults(func=cmd_general)

    p = sub.add_parser("wigner-limit", help="partial-trace limit moments of the Wigner models")
    p.add_argument("--kind", choices=("span", "t", "general"), default="span")
    p.add_argument("--alpha", type=parse_complex, default=1 + 0j)
    p.add_argument("--m", type=_positive, default=1, help="power of A inside T")
    p.add_argument("--nmhs", default="1,1,1,1")
    _add_orders(p, 1e-9)
    p.set_defaults(func=cmd_wigner_limit)

    for name, fn in (("oracle-check", cmd_oracle_check), ("lift-check", cmd_lift_check)):
        p = sub.add_parser(name, help="random cross-path verification")
        p.add_argument("--trials", type=_positive, default=100)
        p.add_argument("--kmax", type=_positive, default=8)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=_seed, default=0)
        p.set_defaults(func=fn)

    p = sub.add_parser("catalan-check", help="Catalan recurrence and inequality checks")
    p.add_argument("--nmax", type=_positive, default=15)
    p.add_argument("--ineq-max", type=_positive, default=10)
    p.set_defaults(func=cmd_catalan_check)

    p = sub.add_parser("rmt", help="Monte Carlo partial-trace moments")
    p.add_argument("--spec", choices=("t", "span", "general", "trace"), default="t")
    p.add_argument("--alpha", type=parse_complex, default=1 + 0j)
    p.add_argument("--power", type=_positive, default=1, help="m in T_{A^m}")
    p.add_argument("--nmhs", default="1,1,1,1")
    p.add_argument("--k", type=_positive, nargs="+")
    p.add_argument("--kmax", type=_positive)
    p.add_argument("--n", type=_positive, default=600)
    p.add_argument("--n0", type=_positive, default=30)
    p.add_argument("--samples", type=_positive, default=400)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--ensemble", choices=("complex", "real"), default="complex")
    p.add_argument("--entry-law", choices=("gaussian", "rademacher"), default="gaussian")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--max-n", type=_positive, default=4096)
    p.add_argument("--atol", type=float, default=0.1)
    p.add_argument("--rtol", type=float, default=0.1)
    p.add_argument("--nsigma", type=float, default=3.0)
    p.set_defaults(func=cmd_rmt)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except (UsageError, HorizonError, KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"monotone-moments {args.command}: error: {msg}", file=sys.stderr)
        return 2
    text = dumps_csv(report) if args.format == "csv" else dumps_report(report) + "\n"
    sys.stdout.write(text)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
