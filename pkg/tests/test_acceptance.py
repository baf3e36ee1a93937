"""One test per acceptance criterion; each records a PASS/FAIL line for the terminal summary."""

import json
import subprocess
import sys
import time

import numpy as np

from monotone_moments import AMomentData, BFamilyMoments, DualScalar, NCPolynomial, parse_word
from monotone_moments import closed_form as cf
from monotone_moments import rmt
from monotone_moments.cli import general_instance, main, random_span_draw
from monotone_moments.engine import eval_poly_moment, structured_moment
from monotone_moments.lift import lift_span_moment

W = parse_word


def rel(x, ref):
    return abs(x - ref) / max(1.0, abs(ref))


def span_oracle(params, k, a):
    b = BFamilyMoments.from_table({"b": params.b_mean, "bb": params.b_second})
    p = NCPolynomial({W("ab"): params.alpha, W("ba"): params.beta})
    return eval_poly_moment(p, k, a, b)


def test_criterion_1_three_path_equivalence(criterion):
    rng = np.random.default_rng(20240601)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        params, a = random_span_draw(rng, 8)
        for k in range(1, 9):
            ak = a.power(k)
            closed = cf.span_moment(params, k, ak)
            oracle = span_oracle(params, k, a)
            lifted = lift_span_moment(params, k, ak)
            for x in (closed, lifted):
                worst = max(worst, rel(x.value, oracle.value), rel(x.eps, oracle.eps))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 10
    criterion(1, "three-path span equivalence", ok, f"max rel err {worst:.2e} <= 1e-9, {elapsed:.1f} s < 10 s")
    assert worst <= 1e-9
    assert elapsed < 10


def test_criterion_2_specialization_table(criterion):
    a = AMomentData.from_sequence([0, 1])
    b = BFamilyMoments.from_table({"b": 1, "bb": 2})
    rows = {
        "anticommutator": (cf.anticommutator_moment(1, 2, 2, a.power(2)), NCPolynomial({W("ab"): 1, W("ba"): 1}), 5),
        "commutator": (cf.commutator_moment(1, 2, 2, a.power(2)), NCPolynomial({W("ab"): 1j, W("ba"): -1j}), 1),
        "span 2,3": (cf.span_moment(cf.SpanParams(2, 3, 1, 2), 2, a.power(2)), NCPolynomial({W("ab"): 2, W("ba"): 3}), 31),
    }
    gaps = {}
    for name, (got, poly, want) in rows.items():
        oracle = eval_poly_moment(poly, 2, a, b).value
        gaps[name] = max(abs(got.value - want), abs(oracle - want))
    ok = max(gaps.values()) <= 1e-10
    criterion(2, "specialization table 5 / 1 / 31", ok, f"max gap {max(gaps.values()):.1e} <= 1e-10")
    assert ok, gaps


def test_criterion_3_infinitesimal_formulas(criterion):
    rng = np.random.default_rng(20240602)
    worst = 0.0
    for _ in range(100):
        params, a = random_span_draw(rng, 8)
        for k in range(1, 9):
            worst = max(worst, rel(cf.inf_span_moment(params, k, a.power(k)), span_oracle(params, k, a).eps))
    centered = cf.SpanParams(1, 1, DualScalar(0, 0), DualScalar(1, 1))
    a = AMomentData.from_sequence([0, 1], [0, 0])
    c_explicit = cf.inf_span_moment(centered, 2, a.power(2))
    c_oracle = span_oracle(centered, 2, a).eps
    c_anti = cf.anticommutator_moment(DualScalar(0, 0), DualScalar(1, 1), 2, a.power(2)).eps
    c_gap = max(abs(c_explicit - 1), abs(c_oracle - 1), abs(c_anti - 1))
    ok = worst <= 1e-9 and c_gap <= 1e-9
    criterion(3, "infinitesimal formula vs dual oracle", ok, f"max rel err {worst:.2e}, centered gap {c_gap:.1e}")
    assert worst <= 1e-9
    assert c_gap <= 1e-9


def test_criterion_4_two_atom_law(criterion):
    base = AMomentData.semicircle(10)
    worst = 0.0
    for data in ((2, 2, 2, 1, 1, 1, 1), (2, 14, 5, 1, 2, 1, 1)):
        law = cf.two_atom_law(*data, base=base)
        terms, poly, b = general_instance(*data)
        for k in range(1, 6):
            m = law.moment(k)
            worst = max(worst, rel(m, structured_moment(terms, k, base, b)), rel(m, eval_poly_moment(poly, k, base, b).value))
    weights_ok = True
    for n in range(1, 6):
        for m_ in range(1, 6):
            for h in range(1, 6):
                for s in range(1, 6):
                    w = cf.wigner_general_poly_limit(n, m_, h, s).weight
                    weights_ok &= abs(w.imag) < 1e-12 and -1e-12 <= w.real <= 1 + 1e-12
    ineq_ok = all(cf.catalan_inequality_holds(n, m_) for n in range(1, 11) for m_ in range(1, 11))
    ok = worst <= 1e-8 and weights_ok and ineq_ok
    criterion(
        4,
        "two-atom law vs structured and expansion",
        ok,
        f"max rel err {worst:.1e} <= 1e-8, weights in [0,1]: {weights_ok}, Catalan inequality: {ineq_ok}",
    )
    assert ok


def test_criterion_5_degeneracy(criterion):
    a = AMomentData.semicircle(8)
    flat = cf.SpanParams(1, -1, 1, 1)
    exact = all(
        cf.span_moment(flat, k, a.power(k)) == DualScalar() and span_oracle(flat, k, a) == DualScalar()
        for k in range(1, 9)
    )
    offsets = np.array([1e-4, 1e-5, 1e-6])
    worst = 0.0
    for k in range(1, 9):
        ak = a.power(k)
        at = cf.span_moment(flat, k, ak)
        for part in ("value", "eps"):
            ys = [getattr(cf.span_moment(cf.SpanParams(1, -1 + d, 1, 1), k, ak), part) for d in offsets]
            limit = np.polyval(np.polyfit(offsets, ys, 2), 0.0)
            worst = max(worst, abs(limit - getattr(at, part)))
    ok = exact and worst <= 1e-6
    criterion(5, "degenerate span gives 0", ok, f"exact zeros: {exact}, extrapolation gap {worst:.1e} <= 1e-6")
    assert exact
    assert worst <= 1e-6


def test_criterion_6_discrepancy_arbitration(criterion, capsys):
    alpha = 2j
    implemented = cf.wigner_ls_limit_moment(alpha, 1, 2)
    a = AMomentData.symmetric_bernoulli(2, variance=cf.d_m(1))
    b = BFamilyMoments.from_table({"b": 0, "bb": 1})
    oracle = eval_poly_moment(NCPolynomial({W("ab"): alpha, W("ba"): alpha.conjugate()}), 2, a, b).value
    code = main(["wigner-limit", "--alpha", "2i", "--m", "1", "--k", "2"])
    row = json.loads(capsys.readouterr().out)["rows"][0]
    ok = (
        implemented == 4
        and oracle == 4
        and code == 0
        and row["value"] == [4.0, 0.0]
        and row["abs_alpha_reading"] == [2.0, 0.0]
    )
    criterion(6, "alpha = 2i limit is 4, |alpha| reading 2 recorded", ok, "exact")
    assert ok


def test_criterion_7_monte_carlo(criterion, mc):
    config = rmt.WignerConfig(ensemble="complex", n=600, n0=30, samples=400, seed=7)
    (t1, t2), time_t = mc(rmt.PolySpec.t_operator(1), [1, 2], config)
    (s2,), time_s = mc(rmt.PolySpec.span(1, 1), [2], config)
    (g1,), time_g = mc(rmt.PolySpec.general(1, 1, 1, 1), [1], config)
    checks = {
        "T^1": t1.within(atol=0, nsigma=3),
        "T^2": t2.within(atol=0.1, nsigma=3),
        "span k=2": s2.within(atol=0.1, nsigma=3),
        "general k=1": g1.within(rtol=0.1, nsigma=3),
    }
    elapsed = time_t + time_s + time_g
    ok = all(checks.values()) and elapsed < 300
    detail = (
        f"T^1 {t1.mean.real:.4f}, T^2 {t2.mean.real:.4f}, span {s2.mean.real:.4f}, "
        f"general {g1.mean.real:.4f} vs {g1.prediction.real:g}; {elapsed:.0f} s < 300 s"
    )
    criterion(7, "Monte Carlo partial-trace moments", ok, detail)
    assert all(checks.values()), checks
    assert elapsed < 300


def test_criterion_8_wigner_sanity(criterion):
    config = rmt.WignerConfig(ensemble="complex", n=600, n0=30, samples=400, seed=7)
    w2, w4 = rmt.trace_moment_estimates(config, [2, 4])
    ok = abs(w2.mean - 1) <= 0.05 and abs(w4.mean - 2) <= 0.2
    criterion(8, "Wigner trace moments", ok, f"Tr W^2/N {w2.mean.real:.5f} (5%), Tr W^4/N {w4.mean.real:.5f} (10%)")
    assert ok


def test_criterion_9_cli_determinism(criterion, tmp_path):
    sc = tmp_path / "sc.json"
    sc.write_text('{"phi": [[0, 0], [1, 0], [0, 0], [2, 0]], "phi_prime": [[0, 0], [0.5, 0], [0, 0], [1, 0]]}')
    commands = [
        ["span", "--alpha", "2+0i", "--beta", "3+0i", "--b-mean", "1", "--b-second", "2", "--a-moments", str(sc), "--kmax", "4"],
        ["inf-span", "--alpha", "1-2i", "--beta", "0.5i", "--b-mean", "1", "--b-second", "2", "--b-mean-prime", "0.3",
         "--a-moments", str(sc), "--kmax", "4"],
        ["anticomm", "--b-mean", "1", "--b-second", "2", "--a-moments", str(sc), "--kmax", "4"],
        ["comm", "--b-mean", "1", "--b-second", "2", "--a-moments", str(sc), "--kmax", "4", "--format", "csv"],
        ["general", "--b11", "2", "--b22", "14", "--b12", "5", "--bt1", "1", "--bt2", "2", "--ct1", "1", "--ct2", "1",
         "--a-moments", "semicircle", "--kmax", "4"],
        ["wigner-limit", "--alpha", "2i", "--kmax", "4"],
        ["oracle-check", "--trials", "20", "--seed", "42"],
        ["lift-check", "--trials", "20", "--seed", "42"],
        ["catalan-check"],
        ["rmt", "--spec", "span", "--alpha", "1", "--k", "1", "2", "--n", "120", "--n0", "6", "--samples", "20",
         "--seed", "42"],
        ["rmt", "--spec", "trace", "--k", "2", "4", "--n", "120", "--samples", "20", "--seed", "42"],
    ]
    identical = []
    for argv in commands:
        runs = [
            subprocess.run([sys.executable, "-m", "monotone_moments", *argv], capture_output=True).stdout
            for _ in range(2)
        ]
        identical.append(runs[0] == runs[1] and len(runs[0]) > 0)
    ok = all(identical)
    criterion(9, "byte-identical CLI reruns", ok, f"{sum(identical)}/{len(identical)} commands identical")
    assert ok
