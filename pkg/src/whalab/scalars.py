"""Scalar arithmetic for structure constants.

Complex numbers with a tolerance-based comparison carry every numeric
structure constant; roots of unity keep cocycle data exact at the exponent
level and are lowered to complex only at tensor-assembly time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Scalar = complex

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Tolerance:
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError(f"tolerance must be positive, got {self.eps}")


DEFAULT_TOL = Tolerance()


def approx_eq(x: Scalar, y: Scalar, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff |x - y| <= tol.eps."""
    return abs(complex(x) - complex(y)) <= tol.eps


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i*exponent/order), arithmetic exact on exponents."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"root-of-unity order must be >= 1, got {self.order}")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def to_scalar(self) -> Scalar:
        return root_of_unity(self.order, self.exponent)

    def as_fraction(self) -> Fraction:
        """Exponent as a fraction of a full turn, reduced, in [0, 1)."""
        return Fraction(self.exponent, self.order) % 1

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if other.order == self.order:
            return RootOfUnity(self.order, self.exponent + other.exponent)
        f = self.as_fraction() + other.as_fraction()
        f %= 1
        return RootOfUnity(f.denominator, f.numerator)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exponent * k)

    def exact_eq(self, other: "RootOfUnity") -> bool:
        return self.as_fraction() == other.as_fraction()

    def to_json(self) -> dict:
        return {"order": self.order, "exp": self.exponent}

    @staticmethod
    def from_json(obj: dict) -> "RootOfUnity":
        return RootOfUnity(int(obj["order"]), int(obj["exp"]))


ONE = RootOfUnity(1, 0)


def root_of_unity(n: int, k: int) -> Scalar:
    """exp(2*pi*i*k/n) as a complex number."""
    if n < 1:
        raise ValueError(f"root-of-unity order must be >= 1, got {n}")
    angle = 2.0 * math.pi * (k % n) / n
    return complex(math.cos(angle), math.sin(angle))


def sqrt_positive(x: float) -> float:
    """Positive square root of a strictly positive real."""
    if not x > 0:
        raise ValueError(f"sqrt_positive needs x > 0, got {x}")
    return math.sqrt(x)


def scalar_to_json(x: Scalar) -> list:
    """Serialize as an [re, im] pair at full precision."""
    z = complex(x)
    return [float(z.real), float(z.imag)]


def scalar_from_json(pair) -> Scalar:
    return complex(float(pair[0]), float(pair[1]))
