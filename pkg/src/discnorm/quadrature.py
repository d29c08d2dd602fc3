"""Quadrature on the unit disc, the bidisc and the circle.

Area integrals use a graded polar rule: the radial substitution
r = 1 - (1-u)^gamma applied to a Gauss-Legendre rule on u in (0,1)
concentrates nodes near |z| = 1, where the integrands of interest carry
(1-|z|)^beta weights and |1 - conj(w) z|^{-4} kernels.  Angular nodes are
equispaced, so rotation symmetry survives discretization.

Bidisc rules pair two disc rules whose angular offsets differ by half an
angular step; node pairs with z = w therefore never occur and integrable
diagonal singularities |f(z)-f(w)|^{-e} (e < 2) can be summed directly.

Conventions: dm is plain Lebesgue area (total mass pi on the disc); the
circle carries the normalized measure of total mass 1.  All reductions
run in a fixed node order so results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, EvaluationError

__all__ = [
    "DiscRule",
    "BidiscRule",
    "StolzRegion",
    "MoebiusPoint",
    "PairJob",
    "EvalGrids",
    "make_disc_rule",
    "make_bidisc_rule",
    "default_disc_rule",
    "default_bidisc_rule",
    "default_a_grid",
    "default_grids",
    "grids_from_config",
    "circle_nodes",
    "integrate_disc",
    "integrate_bidisc",
    "integrate_mu_a",
    "integrate_mu",
    "stolz_contains",
    "integrate_stolz",
    "integrate_circle",
    "pair_profiles",
    "mu_dot",
    "mu_a_dots",
]

# z-block row count for pairwise sweeps; fixed so summation order never varies.
PAIR_BLOCK = 256


@dataclass(frozen=True, eq=False)
class DiscRule:
    """Nodes and positive area weights for dm on the unit disc."""

    nodes: np.ndarray
    weights: np.ndarray
    radial_count: int
    angular_count: int
    grading_exponent: float
    angular_offset: float

    @property
    def provenance(self) -> str:
        return (
            f"disc{self.radial_count}x{self.angular_count}"
            f"g{self.grading_exponent:g}o{self.angular_offset:.6g}"
        )


@dataclass(frozen=True, eq=False)
class BidiscRule:
    """Product rule on the bidisc with offset angular grids on the two factors."""

    rule_z: DiscRule
    rule_w: DiscRule
    diagonal_policy: str = "offset_grids"

    def __post_init__(self) -> None:
        if self.diagonal_policy != "offset_grids":
            raise ConfigError(f"unknown diagonal policy: {self.diagonal_policy!r}")
        if self.rule_z.angular_offset == self.rule_w.angular_offset:
            raise ConfigError("bidisc factor rules must use distinct angular offsets")

    @property
    def provenance(self) -> str:
        return f"bidisc[{self.rule_z.provenance}|{self.rule_w.provenance}]"


@dataclass(frozen=True)
class StolzRegion:
    """Cone at a boundary point: {z : |z - xi| < aperture * (1 - |z|)}."""

    xi: complex
    aperture: float

    def __post_init__(self) -> None:
        if abs(abs(self.xi) - 1.0) > 1e-14:
            raise DomainError(f"Stolz vertex must lie on the unit circle, got {self.xi}")
        if not self.aperture > 1:
            raise DomainError(f"Stolz aperture must be > 1, got {self.aperture}")


@dataclass(frozen=True)
class MoebiusPoint:
    """A point a in the open disc parametrizing the measure d mu_a."""

    a: complex

    def __post_init__(self) -> None:
        if not abs(self.a) < 1:
            raise DomainError(f"Moebius point must satisfy |a| < 1, got {self.a}")


def make_disc_rule(
    radial_count: int,
    angular_count: int,
    grading_exponent: float = 3.0,
    angular_offset: float = 0.0,
) -> DiscRule:
    """Graded polar rule for dm: Gauss-Legendre in u with r = 1-(1-u)^gamma."""
    if radial_count < 4 or angular_count < 4:
        raise ConfigError(
            f"disc rule needs radial_count, angular_count >= 4, got {radial_count}, {angular_count}"
        )
    if not grading_exponent >= 1:
        raise ConfigError(f"grading exponent must be >= 1, got {grading_exponent}")
    x, w = np.polynomial.legendre.leggauss(int(radial_count))
    u = 0.5 * (x + 1.0)
    wu = 0.5 * w
    gamma = float(grading_exponent)
    r = 1.0 - (1.0 - u) ** gamma
    wr = wu * gamma * (1.0 - u) ** (gamma - 1.0)
    theta = float(angular_offset) + 2.0 * np.pi * np.arange(angular_count) / angular_count
    ang = np.exp(1j * theta)
    nodes = (r[:, None] * ang[None, :]).ravel()
    weights = (wr * r)[:, None] * np.full(angular_count, 2.0 * np.pi / angular_count)[None, :]
    weights = weights.ravel()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return DiscRule(
        nodes=nodes,
        weights=weights,
        radial_count=int(radial_count),
        angular_count=int(angular_count),
        grading_exponent=gamma,
        angular_offset=float(angular_offset),
    )


def make_bidisc_rule(
    radial_count: int,
    angular_count: int,
    grading_exponent: float = 3.0,
) -> BidiscRule:
    rule_z = make_disc_rule(radial_count, angular_count, grading_exponent, 0.0)
    rule_w = make_disc_rule(
        radial_count, angular_count, grading_exponent, math.pi / angular_count
    )
    return BidiscRule(rule_z=rule_z, rule_w=rule_w)


def default_disc_rule(scale: int = 1) -> DiscRule:
    # Half-step angular offset keeps node columns off the real axis, where
    # several corpus functions place zeros; zeros landing on nodes make
    # singular-weight node sums needlessly unstable.
    m = 128 * scale
    return make_disc_rule(96 * scale, m, 3.0, np.pi / m)


def default_bidisc_rule(scale: int = 1) -> BidiscRule:
    return make_bidisc_rule(48 * scale, 64 * scale)


def default_a_grid(doubled: bool = False) -> tuple[MoebiusPoint, ...]:
    """Finite grid for suprema over the Moebius parameter a (includes a = 0)."""
    radii = (0.3, 0.6, 0.85) if not doubled else (0.15, 0.3, 0.45, 0.6, 0.725, 0.85)
    phases = 8 if not doubled else 16
    grid = [MoebiusPoint(0j)]
    for rho in radii:
        for k in range(phases):
            grid.append(MoebiusPoint(rho * np.exp(2j * np.pi * k / phases)))
    return tuple(grid)


@dataclass(frozen=True, eq=False)
class EvalGrids:
    """Bundle of every grid a full evaluation needs."""

    disc: DiscRule
    bidisc: BidiscRule
    a_grid: tuple[MoebiusPoint, ...]
    circle_count: int

    @property
    def provenance(self) -> str:
        return (
            f"{self.disc.provenance};{self.bidisc.provenance};"
            f"a{len(self.a_grid)};circ{self.circle_count}"
        )


def default_grids(scale: int = 1, doubled_a: bool = False) -> EvalGrids:
    return EvalGrids(
        disc=default_disc_rule(scale),
        bidisc=default_bidisc_rule(scale),
        a_grid=default_a_grid(doubled_a),
        circle_count=256 * scale,
    )


def grids_from_config(config: dict | None, scale: int = 1) -> EvalGrids:
    """Build grids from {"radial", "angular", "grading", "circle", "bidisc": {...}}."""
    config = config or {}
    grading = float(config.get("grading", 3.0))
    radial = int(config.get("radial", 96)) * scale
    angular = int(config.get("angular", 128)) * scale
    bi = config.get("bidisc", {})
    bi_radial = int(bi.get("radial", 48)) * scale
    bi_angular = int(bi.get("angular", 64)) * scale
    circle = int(config.get("circle", 256)) * scale
    if circle < 4:
        raise ConfigError(f"circle count must be >= 4, got {circle}")
    return EvalGrids(
        disc=make_disc_rule(radial, angular, grading, np.pi / angular),
        bidisc=make_bidisc_rule(bi_radial, bi_angular, grading),
        a_grid=default_a_grid(bool(config.get("doubled_a", False))),
        circle_count=circle,
    )


def circle_nodes(angular_count: int) -> np.ndarray:
    if angular_count < 4:
        raise ConfigError(f"circle rule needs >= 4 nodes, got {angular_count}")
    return np.exp(2j * np.pi * np.arange(angular_count) / angular_count)


def _check_finite_disc(values: np.ndarray, nodes: np.ndarray) -> None:
    if not np.all(np.isfinite(values)):
        k = int(np.flatnonzero(~np.isfinite(values))[0])
        raise EvaluationError(f"integrand not finite at node z = {nodes[k]}")


def integrate_disc(rule: DiscRule, g) -> float:
    """Weighted node sum of g over the disc rule (pairwise summation order)."""
    values = np.broadcast_to(np.asarray(g(rule.nodes), dtype=float), rule.nodes.shape)
    _check_finite_disc(values, rule.nodes)
    return float(np.sum(rule.weights * values))


def _bidisc_block_sums(rule: BidiscRule, block_fn) -> float:
    """Sum block_fn(zb, slice) * product weights over fixed z blocks."""
    z, wz = rule.rule_z.nodes, rule.rule_z.weights
    w, ww = rule.rule_w.nodes, rule.rule_w.weights
    partials = []
    for i0 in range(0, z.size, PAIR_BLOCK):
        sl = slice(i0, min(i0 + PAIR_BLOCK, z.size))
        zb = z[sl]
        vals = np.broadcast_to(
            np.asarray(block_fn(zb, sl), dtype=float), (zb.size, w.size)
        )
        if not np.all(np.isfinite(vals)):
            i, j = np.argwhere(~np.isfinite(vals))[0]
            raise EvaluationError(
                f"integrand not finite at pair z = {zb[int(i)]}, w = {w[int(j)]}"
            )
        partials.append(np.einsum("i,ij,j->", wz[sl], vals, ww, optimize=False))
    return float(np.sum(np.asarray(partials)))


def integrate_bidisc(rule: BidiscRule, g) -> float:
    """Double node sum of g(z, w) with product weights dm(z) dm(w)."""
    w = rule.rule_w.nodes
    return _bidisc_block_sums(rule, lambda zb, sl: g(zb[:, None], w[None, :]))


def _inv_quartic(q: np.ndarray) -> np.ndarray:
    """Elementwise |q|^{-4} without square roots."""
    m2 = q.real * q.real + q.imag * q.imag
    return 1.0 / (m2 * m2)


def _pair_kernel(zb: np.ndarray, w: np.ndarray) -> np.ndarray:
    """|1 - conj(w_j) z_i|^{-4} for a z block against all w nodes."""
    return _inv_quartic(1.0 - np.conj(w)[None, :] * zb[:, None])


def integrate_mu(rule: BidiscRule, g) -> float:
    """Integral of g against d mu(z,w) = |1 - conj(w) z|^{-4} dm(z) dm(w)."""
    w = rule.rule_w.nodes
    return _bidisc_block_sums(
        rule, lambda zb, sl: g(zb[:, None], w[None, :]) * _pair_kernel(zb, w)
    )


def _mu_a_w_factor(rule: BidiscRule, a: MoebiusPoint) -> np.ndarray:
    """(1-|w|)^2 (1-|a|)^2 |1 - conj(w) a|^{-4} on the w factor grid."""
    w = rule.rule_w.nodes
    return (
        (1.0 - np.abs(w)) ** 2
        * (1.0 - abs(a.a)) ** 2
        * _inv_quartic(1.0 - np.conj(w) * a.a)
    )


def integrate_mu_a(rule: BidiscRule, a: MoebiusPoint, g) -> float:
    """Integral of g against d mu_a (Moebius-kernel product measure)."""
    w = rule.rule_w.nodes
    wfac = _mu_a_w_factor(rule, a)
    return _bidisc_block_sums(
        rule,
        lambda zb, sl: g(zb[:, None], w[None, :]) * _pair_kernel(zb, w) * wfac[None, :],
    )


def stolz_contains(region: StolzRegion, z):
    """Cone membership |z - xi| < aperture * (1 - |z|); scalar or array."""
    arr = np.asarray(z, dtype=complex)
    if arr.size and np.max(np.abs(arr)) >= 1.0:
        raise DomainError("Stolz membership is defined for |z| < 1")
    inside = np.abs(arr - region.xi) < region.aperture * (1.0 - np.abs(arr))
    if arr.ndim == 0:
        return bool(inside)
    return inside


def integrate_stolz(rule: DiscRule, region: StolzRegion, g) -> float:
    """Node sum of g restricted to the Stolz cone of the region."""
    mask = stolz_contains(region, rule.nodes)
    nodes = rule.nodes[mask]
    if nodes.size == 0:
        return 0.0
    values = np.broadcast_to(np.asarray(g(nodes), dtype=float), nodes.shape)
    _check_finite_disc(values, nodes)
    return float(np.sum(rule.weights[mask] * values))


def integrate_circle(angular_count: int, h) -> float:
    """Mean of h over equispaced circle points (normalized measure, mass 1)."""
    xi = circle_nodes(angular_count)
    values = np.broadcast_to(np.asarray(h(xi), dtype=float), xi.shape)
    if not np.all(np.isfinite(values)):
        k = int(np.flatnonzero(~np.isfinite(values))[0])
        raise EvaluationError(f"integrand not finite at circle point xi = {xi[k]}")
    return float(np.sum(values) / angular_count)


def cone_aggregate(
    rule: DiscRule,
    values: np.ndarray,
    aperture: float,
    circle_count: int,
    op: str = "sum",
) -> np.ndarray:
    """Per-boundary-point cone reduction of node values.

    For each circle node xi, reduces values over the rule nodes inside
    the Stolz cone of aperture alpha at xi; op is "sum" (caller folds the
    quadrature weights in) or "max" (grid supremum).  Empty cones reduce
    to 0.
    """
    if op not in ("sum", "max"):
        raise ConfigError(f"unknown cone reduction: {op!r}")
    if not aperture > 1:
        raise DomainError(f"Stolz aperture must be > 1, got {aperture}")
    xi = circle_nodes(circle_count)
    z = rule.nodes
    zr, zi = z.real, z.imag
    r2 = zr * zr + zi * zi
    rhs2 = (aperture * (1.0 - np.abs(z))) ** 2
    out = np.zeros(circle_count)
    for j in range(circle_count):
        xr, xj = xi[j].real, xi[j].imag
        # |z - xi|^2 = |z|^2 - 2 Re(z conj(xi)) + 1
        mask = r2 - 2.0 * (zr * xr + zi * xj) + 1.0 < rhs2
        if not np.any(mask):
            continue
        picked = values[mask]
        out[j] = float(np.sum(picked)) if op == "sum" else float(np.max(picked))
    return out


@dataclass(frozen=True, eq=False)
class PairJob:
    """One pairwise functional: z factor times (|f(z)-f(w)| + softening)^diff_power."""

    diff_power: float
    z_factor: np.ndarray
    softening: float = 0.0


def pair_profiles(
    rule: BidiscRule,
    fz: np.ndarray,
    fw: np.ndarray,
    jobs: list[PairJob] | tuple[PairJob, ...],
    check: bool = True,
) -> np.ndarray:
    """w profiles T[k, j] = sum_i Wz_i zfac_i (|fz_i - fw_j| + eps)^e K_ij.

    K is the shared kernel |1 - conj(w_j) z_i|^{-4}, so every functional
    against d mu or d mu_a becomes a cheap dot product with a profile row.
    Jobs with equal (diff_power, softening) reuse one power evaluation per
    block.  With check=True a non-finite profile entry (reciprocal
    blow-up on the diagonal or at a zero) raises EvaluationError; with
    check=False callers inspect their own rows, so one bad job cannot
    abort a batch.
    """
    z, wz = rule.rule_z.nodes, rule.rule_z.weights
    w = rule.rule_w.nodes
    fz = np.asarray(fz)
    fw = np.asarray(fw)
    if fz.shape != z.shape or fw.shape != w.shape:
        raise EvaluationError("pair_profiles needs f sampled on both factor grids")

    groups: dict[tuple[float, float], list[int]] = {}
    for k, job in enumerate(jobs):
        groups.setdefault((float(job.diff_power), float(job.softening)), []).append(k)

    T = np.zeros((len(jobs), w.size))
    # negative powers of an exact zero distance are produced as inf on
    # purpose and handled by the finiteness check below, so numpy's
    # divide/invalid warnings are suppressed for the accumulation
    with np.errstate(divide="ignore", invalid="ignore"):
        for i0 in range(0, z.size, PAIR_BLOCK):
            sl = slice(i0, min(i0 + PAIR_BLOCK, z.size))
            zb = z[sl]
            K = _pair_kernel(zb, w)
            diff = fz[sl][:, None] - fw[None, :]
            m2 = diff.real * diff.real + diff.imag * diff.imag
            for (e, eps), idxs in groups.items():
                if e == 0.0:
                    P = None
                elif eps == 0.0:
                    P = m2 ** (0.5 * e)
                else:
                    P = (np.sqrt(m2) + eps) ** e
                for k in idxs:
                    zfac = wz[sl] * jobs[k].z_factor[sl]
                    if P is None:
                        T[k] += np.einsum("i,ij->j", zfac, K, optimize=False)
                    else:
                        T[k] += np.einsum("i,ij,ij->j", zfac, P, K, optimize=False)
    if check and not np.all(np.isfinite(T)):
        k, j = np.argwhere(~np.isfinite(T))[0]
        raise EvaluationError(
            f"pairwise sum not finite for job {int(k)} at w = {w[int(j)]}"
        )
    return T


def mu_dot(rule: BidiscRule, profile: np.ndarray) -> np.ndarray | float:
    """Finish a profile against d mu: contract with the w weights."""
    if profile.ndim == 2:
        return np.einsum("kj,j->k", profile, rule.rule_w.weights, optimize=False)
    return float(np.sum(profile * rule.rule_w.weights))


def mu_a_dots(
    rule: BidiscRule,
    profile: np.ndarray,
    a_grid: tuple[MoebiusPoint, ...],
) -> np.ndarray:
    """Finish profiles against d mu_a for every a: shape (n_jobs, n_a)."""
    if len(a_grid) == 0:
        raise ConfigError("a_grid must be nonempty")
    w = rule.rule_w.nodes
    base = rule.rule_w.weights * (1.0 - np.abs(w)) ** 2
    avec = np.array([pt.a for pt in a_grid])
    afac = (1.0 - np.abs(avec)) ** 2
    V = _inv_quartic(1.0 - np.conj(w)[None, :] * avec[:, None]) * base[None, :]
    P = profile if profile.ndim == 2 else profile[None, :]
    out = np.einsum("kj,tj->kt", P, V, optimize=False) * afac[None, :]
    return out if profile.ndim == 2 else out[0]
