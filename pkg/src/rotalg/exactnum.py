"""Gaussian-rational scalars and Laurent polynomials in the rotation phase.

Exact-mode coefficients live in the ring Q(i)[z, 1/z] where z stands for
the unit phase exp(2*pi*i*rho).  For a quadratic-surd rho the phase is
transcendental, so distinct Laurent polynomials represent distinct
operators and equality is coefficient-wise; in general the ring is a
faithful formal model of the multiplication rules, which is what the
exact algebra tests assert against.
"""
from __future__ import annotations

from fractions import Fraction

from .angle import Angle

__all__ = ["QI", "qi", "qi_add", "qi_mul", "qi_conj", "qi_neg",
           "qi_is_zero", "qi_to_complex", "PhasePoly"]

QI = tuple[Fraction, Fraction]

_ZERO = (Fraction(0), Fraction(0))
_ONE = (Fraction(1), Fraction(0))


def qi(re=0, im=0) -> QI:
    return (Fraction(re), Fraction(im))


def qi_add(a: QI, b: QI) -> QI:
    return (a[0] + b[0], a[1] + b[1])


def qi_mul(a: QI, b: QI) -> QI:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def qi_conj(a: QI) -> QI:
    return (a[0], -a[1])


def qi_neg(a: QI) -> QI:
    return (-a[0], -a[1])


def qi_is_zero(a: QI) -> bool:
    return not a[0] and not a[1]


def qi_to_complex(a: QI) -> complex:
    return complex(a[0]) + 1j * complex(a[1])


class PhasePoly:
    """Finite sum of c_j * z**j with Gaussian-rational c_j, z the rotation phase."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, QI] | None = None):
        self.terms = {j: c for j, c in (terms or {}).items() if not qi_is_zero(c)}

    @staticmethod
    def const(re=0, im=0) -> "PhasePoly":
        return PhasePoly({0: qi(re, im)})

    @staticmethod
    def zero() -> "PhasePoly":
        return PhasePoly()

    @staticmethod
    def unit(j: int) -> "PhasePoly":
        """z**j."""
        return PhasePoly({j: _ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PhasePoly") -> "PhasePoly":
        out = dict(self.terms)
        for j, c in other.terms.items():
            out[j] = qi_add(out.get(j, _ZERO), c)
        return PhasePoly(out)

    def __neg__(self) -> "PhasePoly":
        return PhasePoly({j: qi_neg(c) for j, c in self.terms.items()})

    def __sub__(self, other: "PhasePoly") -> "PhasePoly":
        return self + (-other)

    def __mul__(self, other: "PhasePoly") -> "PhasePoly":
        out: dict[int, QI] = {}
        for j1, c1 in self.terms.items():
            for j2, c2 in other.terms.items():
                j = j1 + j2
                out[j] = qi_add(out.get(j, _ZERO), qi_mul(c1, c2))
        return PhasePoly(out)

    def scale(self, c: QI) -> "PhasePoly":
        return PhasePoly({j: qi_mul(v, c) for j, v in self.terms.items()})

    def shift(self, k: int) -> "PhasePoly":
        """Multiply by z**k."""
        if k == 0:
            return self
        return PhasePoly({j + k: c for j, c in self.terms.items()})

    def conj(self) -> "PhasePoly":
        return PhasePoly({-j: qi_conj(c) for j, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_complex(self, angle: Angle) -> complex:
        import cmath
        rho = angle.float_value()
        return sum((qi_to_complex(c) * cmath.exp(2j * cmath.pi * rho * j)
                    for j, c in self.terms.items()), 0j)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for j in sorted(self.terms):
            re, im = self.terms[j]
            bits.append(f"({re}{'+' if im >= 0 else ''}{im}i)z^{j}")
        return " + ".join(bits)
