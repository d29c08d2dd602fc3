"""Truncated Taylor series on the unit disc.

An analytic function f(z) = sum_{n=0}^{N} a_n z^n is stored by its finite
coefficient sequence.  Differentiation, the coefficient-multiplier
derivative D^t f(z) = sum (n+1)^t a_n z^n, rotation and scalar multiples
all stay inside this representation, so every downstream functional
operates on plain polynomials.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "TaylorFunction",
    "taylor",
    "evaluate",
    "derivative",
    "fractional_derivative",
    "scale",
    "rotate",
]


@dataclass(frozen=True)
class TaylorFunction:
    """Finite Taylor polynomial a_0 + a_1 z + ... + a_N z^N."""

    coefficients: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) == 0:
            raise DomainError("a TaylorFunction needs at least one coefficient")
        coeffs = tuple(complex(c) for c in self.coefficients)
        for n, c in enumerate(coeffs):
            if not (np.isfinite(c.real) and np.isfinite(c.imag)):
                raise DomainError(f"coefficient {n} is not finite: {c!r}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def vanishes_at_zero(self) -> bool:
        return self.coefficients[0] == 0


def taylor(coefficients) -> TaylorFunction:
    """Build a TaylorFunction from any iterable of numbers."""
    return TaylorFunction(tuple(complex(c) for c in coefficients))


def evaluate(f: TaylorFunction, z):
    """Evaluate f at a point or array of points with |z| < 1 (Horner scheme)."""
    arr = np.asarray(z, dtype=complex)
    if arr.size and np.max(np.abs(arr)) >= 1.0:
        flat = arr.ravel()
        bad = flat[int(np.argmax(np.abs(flat) >= 1.0))]
        raise DomainError(f"evaluation point outside the open unit disc: {bad}")
    acc = np.zeros(arr.shape, dtype=complex)
    for c in reversed(f.coefficients):
        acc = acc * arr + c
    if arr.ndim == 0:
        return complex(acc)
    return acc


def derivative(f: TaylorFunction) -> TaylorFunction:
    """Termwise derivative; degree drops by one (zero polynomial for constants)."""
    if f.degree == 0:
        return TaylorFunction((0j,))
    return TaylorFunction(tuple((n + 1) * c for n, c in enumerate(f.coefficients[1:])))


def fractional_derivative(f: TaylorFunction, t: float) -> TaylorFunction:
    """Coefficient multiplier derivative: a_n -> (n+1)^t a_n, same degree."""
    if t < 0:
        raise DomainError(f"fractional derivative order must be >= 0, got {t}")
    return TaylorFunction(tuple((n + 1) ** float(t) * c for n, c in enumerate(f.coefficients)))


def scale(f: TaylorFunction, lam: complex) -> TaylorFunction:
    """Scalar multiple lam * f."""
    lam = complex(lam)
    return TaylorFunction(tuple(lam * c for c in f.coefficients))


def rotate(f: TaylorFunction, theta: float) -> TaylorFunction:
    """Rotation f(e^{i theta} z), realized as a_n -> a_n e^{i n theta}."""
    return TaylorFunction(
        tuple(c * cmath.exp(1j * n * theta) for n, c in enumerate(f.coefficients))
    )
