"""Classical (quasi)norms and the integral functionals they are compared to.

Single-disc quantities: the Bloch seminorm sup |f'(z)|(1-|z|), the p-th
power integrals of the Bergman and B_p scales, Hardy circle means, the
Lusin cone square functional, and the mixed area functional

    M(F, p, beta) = int_D |F|^{p-beta} |F'|^beta (1-|z|)^beta dm.

Bidisc quantities: the difference-pair functionals

    int int |f(z)-f(w)|^{p-beta} |f'(z)|^beta (1-|z|)^beta d nu(z,w)

against d mu (plain Moebius kernel) and d mu_a (with a supremum over a
grid of Moebius points a).  All values are reported as NormValue records
carrying their parameters and grid provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EvaluationError
from .quadrature import (
    BidiscRule,
    DiscRule,
    MoebiusPoint,
    PairJob,
    circle_nodes,
    cone_aggregate,
    mu_a_dots,
    mu_dot,
    pair_profiles,
)
from .taylor import TaylorFunction, derivative, evaluate, fractional_derivative

__all__ = [
    "NormValue",
    "NORM_KINDS",
    "default_hardy_radii",
    "bloch_norm",
    "bp_norm_p",
    "bergman_norm_p",
    "hardy_norm_p",
    "lusin_functional",
    "mixed_area_functional",
    "pair_functional_mu_a",
    "pair_functional_mu",
    "power_functional_disc",
    "pair_beta_job",
]

NORM_KINDS = (
    "hardy_p",
    "bergman_p",
    "bloch",
    "bp",
    "lusin",
    "mixed_area",
    "pair_mu_a",
    "pair_mu",
)


@dataclass(frozen=True, eq=False)
class NormValue:
    """A nonnegative functional value with its parameters and grid."""

    value: float
    norm_kind: str
    params: dict = field(default_factory=dict)
    grid_provenance: str = ""

    def __post_init__(self) -> None:
        if self.norm_kind not in NORM_KINDS:
            raise DomainError(f"unknown norm kind: {self.norm_kind!r}")
        if not (np.isfinite(self.value) and self.value >= 0):
            raise DomainError(
                f"norm value must be finite and >= 0, got {self.value} ({self.norm_kind})"
            )


def power_functional_disc(
    F: TaylorFunction,
    rule: DiscRule,
    deriv_power: float,
    one_minus_r_power: float,
    modulus_power: float,
    softening: float = 0.0,
) -> float:
    """Node sum of |F'|^a (1-|z|)^b (|F|+eps)^c dm over the disc rule.

    The shared backbone of the mixed area functional and of every
    one-point weighted constraint/dual integral; keeping one code path
    makes their algebraic reductions exact node-sum identities.
    """
    z = rule.nodes
    # negative powers of an exact zero are produced as inf on purpose and
    # handled by the finiteness check below
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.ones(z.shape)
        if deriv_power != 0.0:
            vals = vals * np.abs(evaluate(derivative(F), z)) ** deriv_power
        if one_minus_r_power != 0.0:
            vals = vals * (1.0 - np.abs(z)) ** one_minus_r_power
        if modulus_power != 0.0:
            vals = vals * (np.abs(evaluate(F, z)) + softening) ** modulus_power
    if not np.all(np.isfinite(vals)):
        k = int(np.flatnonzero(~np.isfinite(vals))[0])
        raise EvaluationError(f"integrand not finite at node z = {z[k]}")
    return float(np.sum(rule.weights * vals))


def bloch_norm(f: TaylorFunction, rule: DiscRule) -> NormValue:
    """Grid supremum of |f'(z)|(1-|z|) over the rule nodes and z = 0.

    A finite-grid sup is a lower approximation of the true supremum; the
    equivalence bands downstream absorb the gap.
    """
    fp = derivative(f)
    vals = np.abs(evaluate(fp, rule.nodes)) * (1.0 - np.abs(rule.nodes))
    at_zero = abs(fp.coefficients[0])
    value = max(float(np.max(vals)), at_zero) if vals.size else at_zero
    return NormValue(value, "bloch", {}, rule.provenance)


def bp_norm_p(f: TaylorFunction, p: float, rule: DiscRule) -> NormValue:
    """The p-th power functional int |f'|^p (1-|z|)^{p-2} dm."""
    if not p > 1:
        raise DomainError(f"bp norm requires p > 1, got {p}")
    value = power_functional_disc(f, rule, p, p - 2.0, 0.0)
    return NormValue(value, "bp", {"p": float(p)}, rule.provenance)


def bergman_norm_p(F: TaylorFunction, p: float, rule: DiscRule) -> NormValue:
    """The p-th power Bergman integral int |F|^p dm."""
    if not p > 0:
        raise DomainError(f"bergman norm requires p > 0, got {p}")
    value = power_functional_disc(F, rule, 0.0, 0.0, p)
    return NormValue(value, "bergman_p", {"p": float(p)}, rule.provenance)


def default_hardy_radii() -> tuple[float, ...]:
    """Geometric radii 1 - 2^{-k} approaching the boundary.

    The sequence runs to k = 30 so that circle means of polynomial
    corpus entries match their boundary values to well below 1e-6.
    """
    return tuple(1.0 - 2.0**-k for k in range(1, 31))


def hardy_norm_p(
    f: TaylorFunction,
    p: float,
    radii: tuple[float, ...] | None = None,
    angular_count: int = 256,
) -> NormValue:
    """Max over radii of the normalized circle mean of |f(r xi)|^p."""
    if not p > 0:
        raise DomainError(f"hardy norm requires p > 0, got {p}")
    radii = default_hardy_radii() if radii is None else tuple(radii)
    if any(not 0 < r < 1 for r in radii):
        raise DomainError("hardy radii must lie in (0, 1)")
    xi = circle_nodes(angular_count)
    best = 0.0
    for r in radii:
        mean = float(np.sum(np.abs(evaluate(f, r * xi)) ** p) / angular_count)
        best = max(best, mean)
    return NormValue(
        best,
        "hardy_p",
        {"p": float(p), "radii_count": len(radii), "angular_count": angular_count},
        f"circle{angular_count}xr{len(radii)}",
    )


def lusin_functional(
    f: TaylorFunction,
    p: float,
    t: float,
    aperture: float,
    rule: DiscRule,
    angular_count: int,
) -> NormValue:
    """Cone square functional int_T (int_{cone} |D^t f|^2 (1-|z|)^{2t-2} dm)^{p/2} dxi."""
    if not p > 0 or not t > 0:
        raise DomainError(f"lusin functional requires p, t > 0, got p={p}, t={t}")
    if not aperture > 1:
        raise DomainError(f"Stolz aperture must be > 1, got {aperture}")
    dtf = fractional_derivative(f, t)
    z = rule.nodes
    g = np.abs(evaluate(dtf, z)) ** 2
    if t != 1.0:
        g = g * (1.0 - np.abs(z)) ** (2.0 * t - 2.0)
    inner = cone_aggregate(rule, rule.weights * g, aperture, angular_count, op="sum")
    value = float(np.sum(inner ** (0.5 * p)) / angular_count)
    return NormValue(
        value,
        "lusin",
        {"p": float(p), "t": float(t), "aperture": float(aperture)},
        f"{rule.provenance};circ{angular_count}",
    )


def _check_beta(p: float, beta: float) -> None:
    if not 0 <= beta < p + 2:
        raise DomainError(f"beta must lie in [0, p+2), got beta={beta}, p={p}")


def mixed_area_functional(
    F: TaylorFunction, p: float, beta: float, rule: DiscRule
) -> NormValue:
    """int |F|^{p-beta} |F'|^beta (1-|z|)^beta dm for F with F(0) = 0."""
    if not p > 0:
        raise DomainError(f"mixed area functional requires p > 0, got {p}")
    _check_beta(p, beta)
    if not F.vanishes_at_zero:
        raise DomainError("mixed area functional requires F(0) = 0")
    value = power_functional_disc(F, rule, beta, beta, p - beta)
    return NormValue(
        value, "mixed_area", {"p": float(p), "beta": float(beta)}, rule.provenance
    )


def pair_beta_job(
    f: TaylorFunction, p: float, beta: float, rule: BidiscRule
) -> PairJob:
    """PairJob for the integrand |f(z)-f(w)|^{p-beta} |f'(z)|^beta (1-|z|)^beta."""
    z = rule.rule_z.nodes
    zfac = np.ones(z.shape)
    if beta != 0.0:
        zfac = np.abs(evaluate(derivative(f), z)) ** beta * (1.0 - np.abs(z)) ** beta
    return PairJob(diff_power=float(p - beta), z_factor=zfac)


def pair_functional_mu_a(
    f: TaylorFunction,
    p: float,
    beta: float,
    a_grid: tuple[MoebiusPoint, ...],
    rule: BidiscRule,
) -> NormValue:
    """Grid sup over a of the difference-pair integral against d mu_a."""
    if not p > 0:
        raise DomainError(f"pair functional requires p > 0, got {p}")
    _check_beta(p, beta)
    if len(a_grid) == 0:
        raise DomainError("a_grid must be nonempty")
    fz = evaluate(f, rule.rule_z.nodes)
    fw = evaluate(f, rule.rule_w.nodes)
    job = pair_beta_job(f, p, beta, rule)
    profile = pair_profiles(rule, fz, fw, [job])[0]
    values = mu_a_dots(rule, profile, a_grid)
    return NormValue(
        float(np.max(values)),
        "pair_mu_a",
        {"p": float(p), "beta": float(beta), "a_grid_size": len(a_grid)},
        rule.provenance,
    )


def pair_functional_mu(
    f: TaylorFunction, p: float, beta: float, rule: BidiscRule
) -> NormValue:
    """The difference-pair integral against d mu = |1-conj(w) z|^{-4} dm dm."""
    if not p > 1:
        raise DomainError(f"pair functional against d mu requires p > 1, got {p}")
    _check_beta(p, beta)
    fz = evaluate(f, rule.rule_z.nodes)
    fw = evaluate(f, rule.rule_w.nodes)
    job = pair_beta_job(f, p, beta, rule)
    profile = pair_profiles(rule, fz, fw, [job])[0]
    return NormValue(
        float(mu_dot(rule, profile)),
        "pair_mu",
        {"p": float(p), "beta": float(beta)},
        rule.provenance,
    )
