"""Test corpus of analytic functions with reference data.

The default families cover the qualitatively different behaviours the
integral functionals have to cope with: monomials (closed forms known),
seeded random polynomials, lacunary gap series, a truncated logarithm
with a boundary singularity, and Blaschke-type factors with an interior
zero.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .taylor import TaylorFunction

__all__ = [
    "ReferenceValue",
    "CorpusEntry",
    "make_corpus",
    "default_corpus",
    "corpus_from_json_file",
    "DEFAULT_DEGREE",
    "DEFAULT_RANDOM_DEGREE",
    "DEFAULT_SEED",
]

DEFAULT_DEGREE = 64
DEFAULT_SEED = 1789
# Random polynomials get a lower default degree than the series truncation:
# high-degree random polynomials scatter dozens of zeros through the disc,
# and weights with the function modulus in a denominator then turn single
# near-node zeros into large node-sum fluctuations.
DEFAULT_RANDOM_DEGREE = 12

PROVENANCE_TAGS = ("closed-form", "high-resolution-oracle")


@dataclass(frozen=True)
class ReferenceValue:
    """A reference norm value together with where it comes from."""

    value: float
    provenance: str

    def __post_init__(self) -> None:
        if self.provenance not in PROVENANCE_TAGS:
            raise ConfigError(f"unknown provenance tag: {self.provenance!r}")


@dataclass(frozen=True, eq=False)
class CorpusEntry:
    function: TaylorFunction
    label: str
    family_params: dict[str, float] = field(default_factory=dict)
    reference_values: dict[str, ReferenceValue] = field(default_factory=dict)
    boundary_singular: bool = False


def _monomial(n: int) -> TaylorFunction:
    return TaylorFunction((0j,) * n + (1 + 0j,))


def _monomial_entries(params: dict) -> list[CorpusEntry]:
    lo = int(params.get("min_power", 1))
    hi = int(params.get("max_power", 6))
    if lo < 1 or hi < lo:
        raise ConfigError(f"bad monomial power range: {lo}..{hi}")
    entries = []
    for n in range(lo, hi + 1):
        # sup of n r^{n-1}(1-r) is attained at r = (n-1)/n
        bloch = 1.0 if n == 1 else (1.0 - 1.0 / n) ** (n - 1)
        refs = {
            "bloch": ReferenceValue(bloch, "closed-form"),
            "bergman_2": ReferenceValue(math.pi / (n + 1), "closed-form"),
            "hardy_2": ReferenceValue(1.0, "closed-form"),
        }
        entries.append(
            CorpusEntry(_monomial(n), f"z^{n}", {"power": float(n)}, refs)
        )
    return entries


def _random_poly_entries(params: dict, rng: np.random.Generator) -> list[CorpusEntry]:
    count = int(params.get("count", 2))
    degree = int(params.get("degree", DEFAULT_RANDOM_DEGREE))
    if count < 1:
        raise ConfigError(f"random_poly count must be >= 1, got {count}")
    if degree < 1:
        raise ConfigError(f"random_poly degree must be >= 1, got {degree}")
    entries = []
    for j in range(count):
        raw = rng.uniform(-1.0, 1.0, size=(degree + 1, 2))
        coeffs = raw[:, 0] + 1j * raw[:, 1]
        coeffs[0] = 0.0
        entries.append(
            CorpusEntry(
                TaylorFunction(tuple(coeffs)),
                f"rand{j}",
                {"index": float(j), "degree": float(degree)},
            )
        )
    return entries


def _lacunary_entry(params: dict, degree: int) -> CorpusEntry:
    lam = float(params.get("ratio", 0.5))
    if not 0 < lam < 1:
        raise ConfigError(f"lacunary ratio must lie in (0,1), got {lam}")
    coeffs = [0j] * (degree + 1)
    k = 0
    while 2**k <= degree:
        coeffs[2**k] = lam**k
        k += 1
    return CorpusEntry(
        TaylorFunction(tuple(coeffs)),
        f"lacunary{lam:g}",
        {"ratio": lam},
    )


def _log_entry(degree: int) -> CorpusEntry:
    # Taylor series of log(1/(1-z)); the boundary singularity at z = 1
    # makes boundary-concentrated integrals sensitive to truncation.
    coeffs = (0j,) + tuple(1.0 / n + 0j for n in range(1, degree + 1))
    return CorpusEntry(
        TaylorFunction(coeffs),
        "logtrunc",
        {"degree": float(degree)},
        boundary_singular=True,
    )


def _blaschke_entry(params: dict, degree: int) -> CorpusEntry:
    a = complex(params.get("zero", 0.3))
    if abs(a) >= 1 or a == 0:
        raise ConfigError(f"blaschke zero must satisfy 0 < |a| < 1, got {a}")
    # z(a - z)/(1 - conj(a) z) = a z + sum_{n>=2} conj(a)^{n-2}(|a|^2 - 1) z^n
    ac = a.conjugate()
    coeffs = [0j, a]
    for n in range(2, degree + 1):
        coeffs.append(ac ** (n - 2) * (abs(a) ** 2 - 1.0))
    return CorpusEntry(
        TaylorFunction(tuple(coeffs)),
        f"blaschke{a.real:g}" if a.imag == 0 else f"blaschke{a:g}",
        {"zero_re": a.real, "zero_im": a.imag},
    )


def _literal_entry(fam: dict) -> CorpusEntry:
    label = fam.get("label")
    pairs = fam.get("coefficients")
    if not label or pairs is None:
        raise ConfigError("literal family needs 'label' and 'coefficients' ([re, im] pairs)")
    coeffs = tuple(complex(float(re), float(im)) for re, im in pairs)
    return CorpusEntry(TaylorFunction(coeffs), str(label))


DEFAULT_FAMILIES = (
    {"name": "monomials", "params": {"min_power": 1, "max_power": 6}},
    {"name": "random_poly", "params": {"count": 2}},
    {"name": "lacunary", "params": {"ratio": 0.5}},
    {"name": "lacunary", "params": {"ratio": 0.9}},
    {"name": "log_singular", "params": {}},
    {"name": "blaschke", "params": {"zero": 0.3}},
    {"name": "blaschke", "params": {"zero": 0.7}},
)


def make_corpus(config: dict) -> list[CorpusEntry]:
    """Build a corpus from a configuration mapping.

    Schema: {"families": [{"name": ..., "params": {...}}, ...],
    "degree": N, "seed": integer}.  A single seeded generator is consumed
    in family order, so the full configuration determines every
    coefficient.
    """
    degree = int(config.get("degree", DEFAULT_DEGREE))
    if degree < 1:
        raise ConfigError(f"corpus degree must be >= 1, got {degree}")
    seed = int(config.get("seed", DEFAULT_SEED))
    families = config.get("families", DEFAULT_FAMILIES)
    rng = np.random.default_rng(seed)

    entries: list[CorpusEntry] = []
    for fam in families:
        name = fam.get("name")
        params = fam.get("params", {})
        if name == "monomials":
            entries.extend(_monomial_entries(params))
        elif name == "random_poly":
            entries.extend(_random_poly_entries(params, rng))
        elif name == "lacunary":
            entries.append(_lacunary_entry(params, degree))
        elif name == "log_singular":
            entries.append(_log_entry(degree))
        elif name == "blaschke":
            entries.append(_blaschke_entry(params, degree))
        elif name == "literal":
            entries.append(_literal_entry(fam))
        else:
            raise ConfigError(f"unknown corpus family: {name!r}")
    return entries


def default_corpus(degree: int = DEFAULT_DEGREE, seed: int = DEFAULT_SEED) -> list[CorpusEntry]:
    return make_corpus({"degree": degree, "seed": seed})


def corpus_from_json_file(path: str) -> list[CorpusEntry]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"corpus file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"corpus file is not valid JSON: {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("corpus configuration must be a JSON object")
    return make_corpus(config)
