"""Acceptance gate: nine desk-scale criteria, one printed verdict line each.

Every test computes its quantities first, prints a single
"[acceptance] criterion N ...: PASS/FAIL (detail)" line, then asserts,
so the verdict is visible in the run log either way.
"""

import math
import time

import numpy as np
import pytest

import discnorm as d
from discnorm import dual as du
from discnorm.report import (
    equivalence_report,
    lhs_normalized,
    render_csv,
    search_report,
)
from discnorm.search import SearchConfig, infimum_search


def verdict(num: int, name: str, ok: bool, detail: str) -> bool:
    print(f"[acceptance] criterion {num} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


@pytest.fixture(scope="module")
def grids():
    return d.default_grids()


@pytest.fixture(scope="module")
def grids2():
    return d.default_grids(scale=2)


@pytest.fixture(scope="module")
def grids2_da():
    return d.grids_from_config({"doubled_a": True}, scale=2)


@pytest.fixture(scope="module")
def corpus():
    return d.default_corpus()


def test_criterion_1_closed_form_oracles(grids):
    t0 = time.monotonic()
    rule = grids.disc
    quad = [
        rel(d.integrate_disc(rule, lambda z: np.ones(z.shape)), math.pi),
        rel(d.integrate_disc(rule, lambda z: np.abs(z) ** 2), math.pi / 2),
        rel(d.integrate_disc(rule, lambda z: (1 - np.abs(z)) ** 2), math.pi / 6),
    ]
    norm = [
        rel(d.bloch_norm(d.taylor([0, 1]), rule).value, 1.0),
        rel(d.bloch_norm(d.taylor([0, 0, 1]), rule).value, 0.5),
        rel(d.bp_norm_p(d.taylor([0, 1]), 2.0, rule).value, math.pi),
        rel(d.hardy_norm_p(d.taylor([0, 1, 0, 2]), 2.0).value, 5.0),
    ]
    elapsed = time.monotonic() - t0
    ok = max(quad) <= 1e-6 and max(norm) <= 1e-3 and elapsed < 5.0
    verdict(
        1,
        "closed-form oracles",
        ok,
        f"quad err {max(quad):.2e}, norm err {max(norm):.2e}, {elapsed:.2f}s",
    )
    assert max(quad) <= 1e-6
    assert max(norm) <= 1e-3
    assert elapsed < 5.0


def test_criterion_2_smoothing_multiplier_laws(corpus):
    worst = 0.0
    for entry in corpus:
        f = entry.function
        ident = d.fractional_derivative(f, 0.0)
        worst = max(
            worst,
            max(
                abs(a - b) / max(abs(b), 1e-300)
                for a, b in zip(ident.coefficients, f.coefficients)
            ),
        )
        left = d.fractional_derivative(d.fractional_derivative(f, 0.6), 0.7)
        right = d.fractional_derivative(f, 1.3)
        for a, b in zip(left.coefficients, right.coefficients):
            if b != 0:
                worst = max(worst, abs(a - b) / abs(b))
    for n in (1, 2, 3, 6):
        mono = d.taylor([0] * n + [1])
        for t in (0.5, 1.0, 2.3):
            got = d.fractional_derivative(mono, t).coefficients[n]
            worst = max(worst, abs(got - (n + 1) ** t) / (n + 1) ** t)
    ok = worst <= 1e-12
    verdict(2, "smoothing multiplier laws", ok, f"max rel dev {worst:.2e}")
    assert worst <= 1e-12


def test_criterion_3_mixed_area_band(corpus, grids, grids2):
    t0 = time.monotonic()
    worst_band = 0.0
    worst_delta = 0.0
    for p in (1.0, 2.0, 3.0):
        base = {
            e.label: d.bergman_norm_p(e.function, p, grids.disc).value for e in corpus
        }
        base2 = {
            e.label: d.bergman_norm_p(e.function, p, grids2.disc).value for e in corpus
        }
        for beta in (0.0, p / 2, p):
            ratios = []
            for e in corpus:
                r1 = (
                    d.mixed_area_functional(e.function, p, beta, grids.disc).value
                    / base[e.label]
                )
                r2 = (
                    d.mixed_area_functional(e.function, p, beta, grids2.disc).value
                    / base2[e.label]
                )
                ratios.append(r1)
                worst_delta = max(worst_delta, abs(r2 - r1) / r2)
            worst_band = max(worst_band, max(ratios) / min(ratios))
    elapsed = time.monotonic() - t0
    ok = worst_band <= 10.0 and worst_delta < 0.02 and elapsed < 60.0
    verdict(
        3,
        "mixed-area/space-integral band",
        ok,
        f"band {worst_band:.2f} (<=10), refine delta {worst_delta:.3%} (<2%), {elapsed:.1f}s",
    )
    assert worst_band <= 10.0
    assert worst_delta < 0.02
    assert elapsed < 60.0


def test_criterion_4_holder_floors_random_weights(corpus, grids):
    t0 = time.monotonic()
    F = next(e for e in corpus if e.label == "rand0").function
    rng = np.random.default_rng(20260815)
    epsilons = (0.0, 1e-6, 1e-3)
    worst_margin = -math.inf
    infeasible = violations = 0
    for theorem, arity in (
        ("S2_bergman", "one_point"),
        ("S3_bloch", "two_point"),
        ("S4_bp", "two_point"),
    ):
        params = du.dual_params(theorem, 3.0, alpha=1.8)
        floor = du.holder_floor(F, params, grids)
        omegas = []
        for k in range(50):
            u = rng.uniform(0.0, 2.0)
            v = rng.uniform(0.0, 3.0)
            s = rng.uniform(0.0, 1.5)
            omegas.append(
                du.WeightSpec(
                    arity, du.WeightExponents(u, v, s), softening=epsilons[k % 3]
                )
            )
        values = du.evaluate_weight_batch(F, omegas, params, grids)
        for om, (con, dua) in zip(omegas, values):
            ev = du.normalized_evaluation(om, params, con, dua, grids.provenance)
            if not ev.feasible:
                infeasible += 1
                continue
            margin = floor / ev.dual_value ** (1.0 / params.alpha) - 1.0
            worst_margin = max(worst_margin, margin)
            if margin > 1e-10:
                violations += 1
    elapsed = time.monotonic() - t0
    ok = violations == 0 and infeasible == 0 and elapsed < 600.0
    verdict(
        4,
        "discrete Hoelder floors (150 seeded weights)",
        ok,
        f"violations {violations}, infeasible {infeasible}, worst margin {worst_margin:.2e}, {elapsed:.1f}s",
    )
    assert violations == 0
    assert infeasible == 0
    assert elapsed < 600.0


def test_criterion_5_test_weight_identities(corpus, grids):
    p, alpha = 3.0, 1.8
    worst = 0.0
    s2 = du.dual_params("S2_bergman", p, alpha=alpha)
    s3 = du.dual_params("S3_bloch", p, alpha=alpha)
    s4 = du.dual_params("S4_bp", p, alpha=alpha)
    lo, hi = p - s2.alpha_conj, p + alpha
    for e in corpus:
        F = e.function
        om2 = du.test_weight(F, s2)
        worst = max(
            worst,
            rel(
                du.constraint_S2(F, om2, s2, grids.disc),
                d.mixed_area_functional(F, p, lo, grids.disc).value,
            ),
            rel(
                du.dual_S2(F, om2, s2, grids.disc),
                d.mixed_area_functional(F, p, hi, grids.disc).value,
            ),
        )
        om3 = du.test_weight(F, s3)
        worst = max(
            worst,
            rel(
                du.constraint_S3(F, om3, s3, grids.a_grid, grids.bidisc),
                d.pair_functional_mu_a(F, p, lo, grids.a_grid, grids.bidisc).value,
            ),
            rel(
                du.dual_S3(F, om3, s3, grids.a_grid, grids.bidisc),
                d.pair_functional_mu_a(F, p, hi, grids.a_grid, grids.bidisc).value,
            ),
        )
        om4 = du.test_weight(F, s4)
        worst = max(
            worst,
            rel(
                du.constraint_S4(F, om4, s4, grids.bidisc),
                d.pair_functional_mu(F, p, lo, grids.bidisc).value,
            ),
            rel(
                du.dual_S4(F, om4, s4, grids.bidisc),
                d.pair_functional_mu(F, p, hi, grids.bidisc).value,
            ),
        )
    ok = worst <= 1e-10
    verdict(
        5,
        "test-weight node-sum identities",
        ok,
        f"max rel dev {worst:.2e} over {len(corpus)} entries x 3 theorems",
    )
    assert worst <= 1e-10


def test_criterion_6_equivalence_bands(corpus, grids, grids2, grids2_da):
    t0 = time.monotonic()
    details = []
    ok = True
    for theorem, refined in (
        ("S2_bergman", grids2),
        ("S3_bloch", grids2_da),
        ("S4_bp", grids2),
    ):
        params = du.dual_params(theorem, 3.0, alpha=1.8)
        rep = equivalence_report(list(corpus), params, grids, refined_grids=refined)
        errors = [row.label for row in rep.rows if row.error]
        band = rep.max_ratio / rep.min_ratio
        delta = rep.max_refine_delta
        part_ok = not errors and band <= 20.0 and delta < 0.05
        ok = ok and part_ok
        details.append(f"{theorem} band {band:.2f} delta {delta:.2%}")
    elapsed = time.monotonic() - t0
    details.append(f"{elapsed:.0f}s")
    verdict(6, "normalized equivalence bands", ok, "; ".join(details))
    assert ok, "; ".join(details)
    assert elapsed < 1200.0


def test_criterion_7_search_sanity(corpus, grids):
    labels = ("z^1", "z^2", "z^3", "rand0", "blaschke0.3")
    entries = [e for e in corpus if e.label in labels]
    assert len(entries) == 5
    cfg = SearchConfig(budget=200, seed=7)
    ok = True
    details = []
    for theorem in ("S2_bergman", "S3_bloch", "S4_bp"):
        params = du.dual_params(theorem, 3.0, alpha=1.8)
        rep1 = search_report(entries, params, cfg, grids)
        rep2 = search_report(entries, params, cfg, grids)
        identical = render_csv(rep1) == render_csv(rep2)
        clean = all(row.error is None and row.violation is None for row in rep1.rows)
        ordered = all(
            row.holder_floor <= row.searched_dual * (1 + 1e-9)
            and row.searched_dual <= row.test_dual * (1 + 1e-9)
            for row in rep1.rows
        )
        part_ok = identical and clean and ordered
        ok = ok and part_ok
        details.append(
            f"{theorem} ordered={ordered} deterministic={identical}"
        )
    verdict(7, "search sanity", ok, "; ".join(details))
    assert ok, "; ".join(details)


def test_criterion_8_cone_square_function_band(corpus, grids, grids2):
    ratios = []
    worst_delta = 0.0
    for e in corpus:
        if e.boundary_singular:
            continue
        f = e.function
        h2 = d.hardy_norm_p(f, 2.0).value
        r1 = (
            d.lusin_functional(f, 2.0, 1.0, 2.0, grids.disc, grids.circle_count).value
            / h2
        )
        r2 = (
            d.lusin_functional(f, 2.0, 1.0, 2.0, grids2.disc, grids2.circle_count).value
            / h2
        )
        ratios.append(r1)
        worst_delta = max(worst_delta, abs(r2 - r1) / r2)
    band = max(ratios) / min(ratios)
    ok = band <= 20.0 and worst_delta < 0.05
    verdict(
        8,
        "cone square-function band",
        ok,
        f"band {band:.3f} (<=20), refine delta {worst_delta:.2%} (<5%), {len(ratios)} entries",
    )
    assert band <= 20.0
    assert worst_delta < 0.05


def test_criterion_9_hardy_weight_class(corpus, grids):
    params = du.dual_params("S1_hardy", 1.0, s=1.0)
    F = d.taylor([0, 1, 0, 2])
    om = du.WeightSpec("one_point", du.WeightExponents(0.4, 1.1, 0.6), softening=0.01)
    c = 3.7
    scaled = du.WeightSpec("one_point", om.exponents, om.softening, c * om.scale)
    con = du.constraint_S1(F, om, params, grids.disc, grids.circle_count)
    dua = du.dual_S1(F, om, params, grids.disc)
    con_c = du.constraint_S1(F, scaled, params, grids.disc, grids.circle_count)
    dua_c = du.dual_S1(F, scaled, params, grids.disc)
    homog = max(rel(con_c, c * con), rel(dua_c, dua / c))

    feasible = 0
    for label in ("z^1", "z^2", "rand0"):
        entry = next(e for e in corpus if e.label == label)
        G, _ = lhs_normalized(entry.function, params, grids)
        res = infimum_search(G, params, SearchConfig(budget=60, seed=5), grids)
        if res.best is not None and res.best.feasible and math.isfinite(res.best.dual_value):
            feasible += 1
    ok = homog <= 1e-10 and feasible == 3
    verdict(
        9,
        "boundary-class best effort",
        ok,
        f"homogeneity dev {homog:.2e}, feasible searches {feasible}/3",
    )
    assert homog <= 1e-10
    assert feasible == 3
