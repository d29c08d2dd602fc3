"""Weighted dual characterizations of disc-space norms.

Each theorem pairs a constraint class of weights with a dual integral:

  S1 (Hardy, 0 < p < 2, s > 0): constraint is the L^{p/(2-p)}(T) norm of
      the nontangential sup of omega(z)(1-|z|)^{2-s}|f'(z)|^{2-s};
      dual is int |f'|^s (1-|z|)^{s-1} omega^{-1} dm.
  S2 (Bergman, p >= alpha'): constraint
      int |F'|^{(p-1)alpha'} omega^{-alpha'} (1-|z|)^{p alpha'} dm <= 1;
      dual int |F'|^alpha omega^alpha dm.
  S3 (Bloch): the S2 shapes with two-point weights against d mu_a and a
      supremum over the Moebius parameter a.
  S4 (B_p): the same against d mu, no supremum.

Weights are power products scale * |F'|^u (1-|z|)^v / (|F| + eps)^s (the
denominator is |f(z)-f(w)| + eps for two-point weights).  All evaluations
factor the weight exponents into the integrand, so homogeneity laws and
the algebraic reductions of the explicit test weights hold as exact node
sums.  Outer powers (1/alpha, p/2) are applied only by the report layer.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, DomainError, EvaluationError, NormalizationError
from .norms import (
    mixed_area_functional,
    pair_beta_job,
    pair_functional_mu,
    pair_functional_mu_a,
    power_functional_disc,
)
from .quadrature import (
    BidiscRule,
    DiscRule,
    EvalGrids,
    MoebiusPoint,
    PairJob,
    cone_aggregate,
    mu_a_dots,
    mu_dot,
    pair_profiles,
)
from .taylor import TaylorFunction, derivative, evaluate

__all__ = [
    "THEOREMS",
    "WeightExponents",
    "WeightSpec",
    "DualParams",
    "DualEvaluation",
    "dual_params",
    "test_weight_S2",
    "test_weight_S3",
    "test_weight",
    "constraint_S1",
    "dual_S1",
    "constraint_S2",
    "dual_S2",
    "constraint_S3",
    "dual_S3",
    "constraint_S4",
    "dual_S4",
    "evaluate_weight",
    "evaluate_weight_batch",
    "normalize_weight",
    "normalized_evaluation",
    "holder_floor",
    "test_weight_report",
]

THEOREMS = ("S1_hardy", "S2_bergman", "S3_bloch", "S4_bp")

FEASIBLE_TOL = 1e-9


@dataclass(frozen=True)
class WeightExponents:
    """Powers (u, v, s) of |F'(z)|, (1-|z|) and the reciprocal modulus."""

    u: float
    v: float
    s: float


@dataclass(frozen=True)
class WeightSpec:
    """A parametric weight scale * |F'|^u (1-|z|)^v / (base + softening)^s.

    The reciprocal base is |F(z)| for one_point weights and |f(z)-f(w)|
    for two_point weights.
    """

    arity: str
    exponents: WeightExponents
    softening: float = 0.0
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.arity not in ("one_point", "two_point"):
            raise DomainError(f"unknown weight arity: {self.arity!r}")
        if not self.scale > 0:
            raise DomainError(f"weight scale must be positive, got {self.scale}")
        if self.softening < 0:
            raise DomainError(f"softening must be >= 0, got {self.softening}")


@dataclass(frozen=True)
class DualParams:
    """Theorem selector and exponents; alpha_conj = alpha/(alpha-1)."""

    p: float
    theorem: str
    alpha: float | None = None
    alpha_conj: float | None = None
    s: float | None = None
    aperture: float | None = None


def dual_params(
    theorem: str,
    p: float,
    alpha: float | None = None,
    s: float | None = None,
    aperture: float | None = None,
) -> DualParams:
    """Validated parameter bundle for one theorem."""
    if theorem not in THEOREMS:
        raise ConfigError(f"unknown theorem: {theorem!r}; expected one of {THEOREMS}")
    if theorem == "S1_hardy":
        if not 0 < p < 2:
            raise ConfigError(f"S1 requires 0 < p < 2, got p = {p}")
        s = 1.0 if s is None else float(s)
        if not s > 0:
            raise ConfigError(f"S1 requires s > 0, got s = {s}")
        aperture = 2.0 if aperture is None else float(aperture)
        if not aperture > 1:
            raise ConfigError(f"aperture must be > 1, got {aperture}")
        return DualParams(p=float(p), theorem=theorem, s=s, aperture=aperture)
    alpha = 1.8 if alpha is None else float(alpha)
    if not 1 < alpha < 2:
        raise ConfigError(f"alpha must lie in (1, 2), got {alpha}")
    alpha_conj = alpha / (alpha - 1.0)
    if abs(1.0 / alpha + 1.0 / alpha_conj - 1.0) > 1e-12:
        raise ConfigError(f"conjugate exponent inconsistency for alpha = {alpha}")
    if p < alpha_conj:
        raise ConfigError(
            f"requires p >= alpha' = alpha/(alpha-1) = {alpha_conj:g}; got p = {p}"
        )
    return DualParams(p=float(p), theorem=theorem, alpha=alpha, alpha_conj=alpha_conj)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(message)


def test_weight_S2(F: TaylorFunction, params: DualParams) -> WeightSpec:
    """Explicit one-point weight |F'|^{p/a} (1-|z|)^{1+p/a} / |F|."""
    _require(params.theorem == "S2_bergman", "test_weight_S2 needs S2 params")
    _require(F.vanishes_at_zero, "test weight requires F(0) = 0")
    _require(any(c != 0 for c in F.coefficients), "test weight undefined for F = 0")
    pa = params.p / params.alpha
    return WeightSpec("one_point", WeightExponents(u=pa, v=1.0 + pa, s=1.0))


def test_weight_S3(F: TaylorFunction, params: DualParams) -> WeightSpec:
    """Explicit two-point weight |F'(z)|^{p/a} (1-|z|)^{(p+a)/a} / |f(z)-f(w)|."""
    _require(
        params.theorem in ("S3_bloch", "S4_bp"),
        "test_weight_S3 needs S3 or S4 params",
    )
    _require(
        any(c != 0 for c in derivative(F).coefficients),
        "test weight undefined for constant F",
    )
    pa = params.p / params.alpha
    return WeightSpec(
        "two_point",
        WeightExponents(u=pa, v=(params.p + params.alpha) / params.alpha, s=1.0),
    )


def test_weight(F: TaylorFunction, params: DualParams) -> WeightSpec | None:
    """The theorem's explicit test weight; None for S1 (none exists)."""
    if params.theorem == "S2_bergman":
        return test_weight_S2(F, params)
    if params.theorem in ("S3_bloch", "S4_bp"):
        return test_weight_S3(F, params)
    return None


# --- one-point evaluations ------------------------------------------------


def constraint_S2(
    F: TaylorFunction, omega: WeightSpec, params: DualParams, rule: DiscRule
) -> float:
    _require(params.theorem == "S2_bergman", "constraint_S2 needs S2 params")
    _require(omega.arity == "one_point", "S2 weights are one-point")
    _require(F.vanishes_at_zero, "S2 requires F(0) = 0")
    p, ac = params.p, params.alpha_conj
    e = omega.exponents
    raw = power_functional_disc(
        F, rule, ac * (p - 1.0 - e.u), ac * (p - e.v), ac * e.s, omega.softening
    )
    return omega.scale**-ac * raw


def dual_S2(
    F: TaylorFunction, omega: WeightSpec, params: DualParams, rule: DiscRule
) -> float:
    _require(params.theorem == "S2_bergman", "dual_S2 needs S2 params")
    _require(omega.arity == "one_point", "S2 weights are one-point")
    a = params.alpha
    e = omega.exponents
    raw = power_functional_disc(
        F, rule, a * (1.0 + e.u), a * e.v, -a * e.s, omega.softening
    )
    return omega.scale**a * raw


def constraint_S1(
    f: TaylorFunction,
    omega: WeightSpec,
    params: DualParams,
    rule: DiscRule,
    angular_count: int,
) -> float:
    """L^{p/(2-p)}(T) norm of the cone sup of omega (1-|z|)^{2-s} |f'|^{2-s}."""
    _require(params.theorem == "S1_hardy", "constraint_S1 needs S1 params")
    _require(omega.arity == "one_point", "S1 weights are one-point")
    p, s_t = params.p, params.s
    e = omega.exponents
    z = rule.nodes
    vals = np.abs(evaluate(derivative(f), z)) ** (e.u + 2.0 - s_t)
    vals = vals * (1.0 - np.abs(z)) ** (e.v + 2.0 - s_t)
    if e.s != 0.0:
        vals = vals * (np.abs(evaluate(f, z)) + omega.softening) ** -e.s
    sups = cone_aggregate(rule, omega.scale * vals, params.aperture, angular_count, op="max")
    q = p / (2.0 - p)
    return float(np.sum(sups**q) / angular_count) ** (1.0 / q)


def dual_S1(
    f: TaylorFunction, omega: WeightSpec, params: DualParams, rule: DiscRule
) -> float:
    """int |f'|^s (1-|z|)^{s-1} omega^{-1} dm (outer p/2 power left to reports)."""
    _require(params.theorem == "S1_hardy", "dual_S1 needs S1 params")
    _require(omega.arity == "one_point", "S1 weights are one-point")
    s_t = params.s
    e = omega.exponents
    raw = power_functional_disc(
        f, rule, s_t - e.u, s_t - 1.0 - e.v, e.s, omega.softening
    )
    return raw / omega.scale


# --- two-point evaluations ------------------------------------------------


def _z_power_factor(
    F: TaylorFunction, rule: BidiscRule, deriv_power: float, omr_power: float
) -> np.ndarray:
    z = rule.rule_z.nodes
    fac = np.ones(z.shape)
    if deriv_power != 0.0:
        fac = fac * np.abs(evaluate(derivative(F), z)) ** deriv_power
    if omr_power != 0.0:
        fac = fac * (1.0 - np.abs(z)) ** omr_power
    return fac


def _pair_constraint_job(
    F: TaylorFunction, omega: WeightSpec, params: DualParams, rule: BidiscRule
) -> PairJob:
    p, ac = params.p, params.alpha_conj
    e = omega.exponents
    return PairJob(
        diff_power=ac * e.s,
        z_factor=_z_power_factor(F, rule, ac * (p - 1.0 - e.u), ac * (p - e.v)),
        softening=omega.softening,
    )


def _pair_dual_job(
    F: TaylorFunction, omega: WeightSpec, params: DualParams, rule: BidiscRule
) -> PairJob:
    a = params.alpha
    e = omega.exponents
    return PairJob(
        diff_power=-a * e.s,
        z_factor=_z_power_factor(F, rule, a * (1.0 + e.u), a * e.v),
        softening=omega.softening,
    )


def _pair_values(
    F: TaylorFunction,
    rule: BidiscRule,
    jobs: list[PairJob],
    a_grid: tuple[MoebiusPoint, ...] | None,
    check: bool = True,
) -> np.ndarray:
    """Per-job totals: sup over a_grid when given, else the d mu dot."""
    fz = evaluate(F, rule.rule_z.nodes)
    fw = evaluate(F, rule.rule_w.nodes)
    profiles = pair_profiles(rule, fz, fw, jobs, check=check)
    if a_grid is None:
        return np.asarray(mu_dot(rule, profiles))
    with np.errstate(invalid="ignore"):
        return np.max(mu_a_dots(rule, profiles, a_grid), axis=1)


def constraint_S3(
    F: TaylorFunction,
    omega: WeightSpec,
    params: DualParams,
    a_grid: tuple[MoebiusPoint, ...],
    rule: BidiscRule,
) -> float:
    _require(params.theorem == "S3_bloch", "constraint_S3 needs S3 params")
    _require(omega.arity == "two_point", "S3 weights are two-point")
    job = _pair_constraint_job(F, omega, params, rule)
    return omega.scale**-params.alpha_conj * float(
        _pair_values(F, rule, [job], a_grid)[0]
    )


def dual_S3(
    F: TaylorFunction,
    omega: WeightSpec,
    params: DualParams,
    a_grid: tuple[MoebiusPoint, ...],
    rule: BidiscRule,
) -> float:
    _require(params.theorem == "S3_bloch", "dual_S3 needs S3 params")
    _require(omega.arity == "two_point", "S3 weights are two-point")
    job = _pair_dual_job(F, omega, params, rule)
    return omega.scale**params.alpha * float(_pair_values(F, rule, [job], a_grid)[0])


def constraint_S4(
    F: TaylorFunction, omega: WeightSpec, params: DualParams, rule: BidiscRule
) -> float:
    _require(params.theorem == "S4_bp", "constraint_S4 needs S4 params")
    _require(omega.arity == "two_point", "S4 weights are two-point")
    job = _pair_constraint_job(F, omega, params, rule)
    return omega.scale**-params.alpha_conj * float(_pair_values(F, rule, [job], None)[0])


def dual_S4(
    F: TaylorFunction, omega: WeightSpec, params: DualParams, rule: BidiscRule
) -> float:
    _require(params.theorem == "S4_bp", "dual_S4 needs S4 params")
    _require(omega.arity == "two_point", "S4 weights are two-point")
    job = _pair_dual_job(F, omega, params, rule)
    return omega.scale**params.alpha * float(_pair_values(F, rule, [job], None)[0])


# --- combined evaluation, normalization, floors ----------------------------


def evaluate_weight(
    F: TaylorFunction, omega: WeightSpec, params: DualParams, grids: EvalGrids
) -> tuple[float, float]:
    """(constraint, dual) for one weight, sharing work where possible."""
    return evaluate_weight_batch(F, [omega], params, grids)[0]


def evaluate_weight_batch(
    F: TaylorFunction,
    omegas: list[WeightSpec],
    params: DualParams,
    grids: EvalGrids,
    strict: bool = True,
) -> list[tuple[float, float]]:
    """(constraint, dual) per weight; bidisc theorems share one pairwise pass.

    With strict=False a candidate whose node sum blows up yields nan
    values instead of raising, so one bad candidate cannot abort a batch.
    """
    th = params.theorem
    if th in ("S2_bergman", "S1_hardy"):
        out = []
        for om in omegas:
            try:
                if th == "S2_bergman":
                    pair = (
                        constraint_S2(F, om, params, grids.disc),
                        dual_S2(F, om, params, grids.disc),
                    )
                else:
                    pair = (
                        constraint_S1(F, om, params, grids.disc, grids.circle_count),
                        dual_S1(F, om, params, grids.disc),
                    )
            except EvaluationError:
                if strict:
                    raise
                pair = (np.nan, np.nan)
            out.append(pair)
        return out
    jobs: list[PairJob] = []
    for om in omegas:
        _require(om.arity == "two_point", f"{th} weights are two-point")
        jobs.append(_pair_constraint_job(F, om, params, grids.bidisc))
        jobs.append(_pair_dual_job(F, om, params, grids.bidisc))
    a_grid = grids.a_grid if th == "S3_bloch" else None
    totals = _pair_values(F, grids.bidisc, jobs, a_grid, check=strict)
    out = []
    for k, om in enumerate(omegas):
        con = om.scale**-params.alpha_conj * float(totals[2 * k])
        dua = om.scale**params.alpha * float(totals[2 * k + 1])
        out.append((con, dua))
    return out


@dataclass(frozen=True, eq=False)
class DualEvaluation:
    """Constraint and dual values of a weight after normalization."""

    constraint_value: float
    dual_value: float
    normalization_scale: float
    feasible: bool
    weight: WeightSpec
    params: DualParams
    grid_provenance: str


def normalized_evaluation(
    omega: WeightSpec,
    params: DualParams,
    constraint: float,
    dual: float,
    provenance: str,
) -> DualEvaluation:
    """Assemble a DualEvaluation from raw (constraint, dual) values.

    Applies the homogeneity-derived scale multiplier so the scaled
    constraint equals 1; the backbone of normalize_weight and of batch
    callers that already hold the raw values.
    """
    if not (np.isfinite(constraint) and constraint > 0):
        raise NormalizationError(
            f"constraint value not normalizable: {constraint} ({params.theorem})"
        )
    if params.theorem == "S1_hardy":
        mult = 1.0 / constraint
        con_after = constraint * mult
        dual_after = dual / mult
    else:
        mult = constraint ** (1.0 / params.alpha_conj)
        con_after = mult**-params.alpha_conj * constraint
        dual_after = mult**params.alpha * dual
    scaled = replace(omega, scale=omega.scale * mult)
    feasible = bool(abs(con_after - 1.0) <= FEASIBLE_TOL and np.isfinite(dual_after))
    return DualEvaluation(
        constraint_value=con_after,
        dual_value=dual_after,
        normalization_scale=mult,
        feasible=feasible,
        weight=scaled,
        params=params,
        grid_provenance=provenance,
    )


def normalize_weight(
    F: TaylorFunction, omega: WeightSpec, params: DualParams, grids: EvalGrids
) -> DualEvaluation:
    """Rescale omega so its constraint equals 1 and re-evaluate the dual.

    The scale multiplier is constraint^{1/alpha'} (1/constraint for S1);
    by the homogeneity laws the rescaled dual is constraint^{alpha/alpha'}
    times the raw dual, exactly as node sums.
    """
    con, dua = evaluate_weight(F, omega, params, grids)
    return normalized_evaluation(omega, params, con, dua, grids.provenance)


def holder_floor(
    F: TaylorFunction, params: DualParams, grids: EvalGrids
) -> float | None:
    """The beta = p node sum that discrete Hoelder bounds by dual^{1/alpha}.

    None for S1, whose cone-maximal constraint admits no such product split.
    """
    th = params.theorem
    if th == "S2_bergman":
        return mixed_area_functional(F, params.p, params.p, grids.disc).value
    if th == "S3_bloch":
        return pair_functional_mu_a(
            F, params.p, params.p, grids.a_grid, grids.bidisc
        ).value
    if th == "S4_bp":
        return pair_functional_mu(F, params.p, params.p, grids.bidisc).value
    return None


def test_weight_report(
    F: TaylorFunction, params: DualParams, grids: EvalGrids
) -> tuple[DualEvaluation, float]:
    """(normalized test-weight evaluation, Hoelder floor) in one shared pass."""
    om = test_weight(F, params)
    if om is None:
        raise DomainError("S1 has no explicit test weight")
    if params.theorem == "S2_bergman":
        con, dua = evaluate_weight(F, om, params, grids)
        floor = holder_floor(F, params, grids)
        return normalized_evaluation(om, params, con, dua, grids.provenance), floor
    jobs = [
        _pair_constraint_job(F, om, params, grids.bidisc),
        _pair_dual_job(F, om, params, grids.bidisc),
        pair_beta_job(F, params.p, params.p, grids.bidisc),
    ]
    a_grid = grids.a_grid if params.theorem == "S3_bloch" else None
    totals = _pair_values(F, grids.bidisc, jobs, a_grid)
    con = om.scale**-params.alpha_conj * float(totals[0])
    dua = om.scale**params.alpha * float(totals[1])
    floor = float(totals[2])
    return normalized_evaluation(om, params, con, dua, grids.provenance), floor
