"""Exact rotation angles.

The rotation parameter rho is an irrational number in (0, 1), held
symbolically so that signs of expressions ``q + n*rho`` (q rational, n
integer) are decided exactly rather than with floating point.  Two
descriptor kinds are supported:

* quadratic surds ``(a + b*sqrt(c)) / den`` with c a non-square,
* continued-fraction coefficient streams given by a finite prefix plus a
  production rule for the tail.

Everything downstream (circle sets, ideal functions) funnels its order
decisions through :meth:`Angle.compare_linear`, which refines a rational
enclosure of rho until the sign is determined.  Termination is guaranteed
because rho is irrational, so ``q + n*rho`` never vanishes for n != 0.
"""
from __future__ import annotations

import json
import os
import threading
from fractions import Fraction
from math import floor, isqrt
from typing import Optional

__all__ = [
    "Angle",
    "golden_angle",
    "silver_angle",
    "named_angle",
    "default_angle",
    "NAMED_ANGLES",
]


def _is_square(c: int) -> bool:
    r = isqrt(c)
    return r * r == c


def _sqrt_enclosure(c: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of sqrt(c) of width 2**-bits (c non-square)."""
    s = isqrt(c << (2 * bits))
    return Fraction(s, 1 << bits), Fraction(s + 1, 1 << bits)


class Angle:
    """An exact irrational rotation parameter in (0, 1).

    Immutable except for internal caches (rational enclosure, continued
    fraction coefficients, convergents, sign/floor memos), which are
    guarded by a lock so instances can be shared across threads.
    """

    def __init__(self, kind: str, *, surd: tuple[int, int, int, int] | None = None,
                 cf_prefix: list[int] | None = None, cf_rule: str = "repeat-last"):
        self.kind = kind
        self._lock = threading.RLock()
        self._lo: Fraction | None = None
        self._hi: Fraction | None = None
        self._coeffs: list[int] = []
        self._convergents: list[tuple[int, int]] = []  # (p_k, q_k) for k >= 0
        self._sign_memo: dict[tuple[Fraction, int], int] = {}
        self._floor_memo: dict[tuple[Fraction, int], int] = {}

        if kind == "surd":
            a, b, c, den = surd
            if den == 0:
                raise ValueError("zero denominator")
            if den < 0:
                a, b, den = -a, -b, -den
            if b == 0 or c <= 1 or _is_square(c):
                raise ValueError("surd must be irrational: need b != 0 and c a non-square > 1")
            self._surd = (a, b, c, den)
            self._surd_bits = 16
            # CF expansion state: x_k = (P + sqrt(D)) / Q with Q | D - P^2
            if b > 0:
                P, D, Q = a, b * b * c, den
            else:
                P, D, Q = -a, b * b * c, -den
            if (D - P * P) % Q != 0:
                P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
            self._cf_state = (P, D, Q)
        elif kind == "cf":
            if not cf_prefix or cf_prefix[0] != 0:
                raise ValueError("prefix must start with 0 for a value in (0, 1)")
            if any(a < 1 for a in cf_prefix[1:]):
                raise ValueError("partial quotients after the first must be >= 1")
            if cf_rule == "repeat-last":
                if len(cf_prefix) < 2:
                    raise ValueError("repeat-last rule needs at least one partial quotient")
            elif cf_rule.startswith("periodic:"):
                k = int(cf_rule.split(":", 1)[1])
                if not (1 <= k <= len(cf_prefix) - 1):
                    raise ValueError("period length out of range")
            else:
                raise ValueError(f"unknown rule {cf_rule!r}")
            self._cf_prefix = list(cf_prefix)
            self._cf_rule = cf_rule
        else:
            raise ValueError(f"unknown descriptor kind {kind!r}")

        lo, hi = self.refine(Fraction(1, 4))
        if not (0 < lo and hi < 1):
            raise ValueError("angle value must lie in (0, 1)")

    # -- continued fraction machinery ------------------------------------

    def _coeff(self, i: int) -> int:
        """i-th partial quotient (a_0 = 0)."""
        with self._lock:
            while len(self._coeffs) <= i:
                self._coeffs.append(self._next_coeff(len(self._coeffs)))
            return self._coeffs[i]

    def _next_coeff(self, i: int) -> int:
        if self.kind == "cf":
            prefix, rule = self._cf_prefix, self._cf_rule
            if i < len(prefix):
                return prefix[i]
            if rule == "repeat-last":
                return prefix[-1]
            k = int(rule.split(":", 1)[1])
            return prefix[len(prefix) - k + (i - len(prefix)) % k]
        # surd: advance the (P, D, Q) state by one step
        P, D, Q = self._cf_state
        a = _floor_quad(P, D, Q)
        P1 = a * Q - P
        Q1 = (D - P1 * P1) // Q
        self._cf_state = (P1, D, Q1)
        return a

    def _convergent(self, k: int) -> tuple[int, int]:
        """(p_k, q_k) with p_k = a_k p_{k-1} + p_{k-2}."""
        with self._lock:
            conv = self._convergents
            while len(conv) <= k:
                i = len(conv)
                a = self._coeff(i)
                if i == 0:
                    conv.append((a, 1))
                elif i == 1:
                    conv.append((a * conv[0][0] + 1, a))
                else:
                    p = a * conv[i - 1][0] + conv[i - 2][0]
                    q = a * conv[i - 1][1] + conv[i - 2][1]
                    conv.append((p, q))
            return conv[k]

    # -- enclosure and refinement ----------------------------------------

    def refine(self, precision: Fraction) -> tuple[Fraction, Fraction]:
        """Rational interval of width <= precision containing the value.

        Successive calls return nested intervals (the cached enclosure is
        only ever intersected with newly computed ones).
        """
        precision = Fraction(precision)
        if precision <= 0:
            raise ValueError("precision must be positive")
        with self._lock:
            if self._lo is not None and self._hi - self._lo <= precision:
                return self._lo, self._hi
            lo, hi = self._compute_enclosure(precision)
            if self._lo is not None:
                lo, hi = max(lo, self._lo), min(hi, self._hi)
            self._lo, self._hi = lo, hi
            return lo, hi

    def _compute_enclosure(self, precision: Fraction) -> tuple[Fraction, Fraction]:
        if self.kind == "surd":
            a, b, c, den = self._surd
            bits = self._surd_bits
            while True:
                slo, shi = _sqrt_enclosure(c, bits)
                if b > 0:
                    lo, hi = Fraction(a + b * slo, den), Fraction(a + b * shi, den)
                else:
                    lo, hi = Fraction(a + b * shi, den), Fraction(a + b * slo, den)
                if hi - lo <= precision:
                    self._surd_bits = bits
                    return lo, hi
                bits *= 2
        # cf: consecutive convergents bracket the value
        k = 1
        while True:
            p0, q0 = self._convergent(k)
            p1, q1 = self._convergent(k + 1)
            if Fraction(1, q0 * q1) <= precision:
                x, y = Fraction(p0, q0), Fraction(p1, q1)
                return (x, y) if x < y else (y, x)
            k += 1

    def float_value(self) -> float:
        lo, hi = self.refine(Fraction(1, 10**18))
        return float((lo + hi) / 2)

    # -- exact decisions ---------------------------------------------------

    def compare_linear(self, q: Fraction, n: int) -> int:
        """Exact sign of q + n*rho, in {-1, 0, +1}."""
        q = Fraction(q)
        if n == 0:
            return (q > 0) - (q < 0)
        key = (q, n)
        memo = self._sign_memo
        cached = memo.get(key)
        if cached is not None:
            return cached
        prec = Fraction(1, 1 << 24)
        while True:
            lo, hi = self.refine(prec)
            vlo, vhi = (q + n * lo, q + n * hi) if n > 0 else (q + n * hi, q + n * lo)
            if vlo > 0:
                memo[key] = 1
                return 1
            if vhi < 0:
                memo[key] = -1
                return -1
            prec /= 1 << 16

    def floor_linear(self, q: Fraction, n: int) -> int:
        """Exact floor of q + n*rho."""
        q = Fraction(q)
        if n == 0:
            return floor(q)
        key = (q, n)
        memo = self._floor_memo
        cached = memo.get(key)
        if cached is not None:
            return cached
        prec = Fraction(1, 1 << 24)
        while True:
            lo, hi = self.refine(prec)
            vlo, vhi = (q + n * lo, q + n * hi) if n > 0 else (q + n * hi, q + n * lo)
            flo, fhi = floor(vlo), floor(vhi)
            if flo == fhi:
                memo[key] = flo
                return flo
            prec /= 1 << 16

    # -- rational approximation services ----------------------------------

    def best_denominators(self, count: int) -> list[int]:
        """First `count` convergent denominators q_1, q_2, ...

        Along this sequence the distance from q_k * rho to the nearest
        integer is strictly decreasing.
        """
        if count < 1:
            raise ValueError("count must be >= 1")
        return [self._convergent(k)[1] for k in range(1, count + 1)]

    def match_phase(self, target: Fraction, tolerance: Fraction,
                    search_bound: int) -> Optional[int]:
        """Best k with 1 <= |k| <= search_bound putting frac(k*rho) near target.

        Minimizes the circle distance from frac(k*rho) to `target` over the
        search range; returns k only when that distance is < tolerance,
        otherwise None.  All comparisons are exact; ties prefer smaller |k|,
        then positive k.
        """
        target = Fraction(target)
        tolerance = Fraction(tolerance)
        if not (0 < tolerance < Fraction(1, 2)):
            raise ValueError("tolerance must lie in (0, 1/2)")
        if not (0 <= target < 1):
            target %= 1

        best_dist: tuple[Fraction, int] | None = None  # (q, n) linear expr
        best_k = None
        for mag in range(1, search_bound + 1):
            for k in (mag, -mag):
                # e = frac(k*rho - target) in [0, 1)
                m = self.floor_linear(-target, k)
                eq, en = -target - m, k
                # circle distance = min(e, 1 - e)
                if self.compare_linear(2 * eq - 1, 2 * en) <= 0:
                    dq, dn = eq, en
                else:
                    dq, dn = 1 - eq, -en
                if best_dist is None:
                    better = True
                else:
                    s = self.compare_linear(dq - best_dist[0], dn - best_dist[1])
                    better = s < 0  # ties keep the earlier (smaller |k|, positive) hit
                if better:
                    best_dist, best_k = (dq, dn), k
        if best_dist is None:
            return None
        if self.compare_linear(best_dist[0] - tolerance, best_dist[1]) < 0:
            return best_k
        return None

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "surd":
            a, b, c, den = self._surd
            return {"kind": "surd", "a": a, "b": b, "c": c, "den": den}
        return {"kind": "cf", "prefix": list(self._cf_prefix), "rule": self._cf_rule}

    @staticmethod
    def from_json(doc: dict) -> "Angle":
        if doc.get("kind") == "surd":
            return Angle("surd", surd=(doc["a"], doc["b"], doc["c"], doc["den"]))
        if doc.get("kind") == "cf":
            return Angle("cf", cf_prefix=list(doc["prefix"]), cf_rule=doc.get("rule", "repeat-last"))
        raise ValueError("unknown angle descriptor")

    def same_as(self, other: "Angle") -> bool:
        """Same rotation parameter: identical object or equal descriptor."""
        if self is other:
            return True
        return isinstance(other, Angle) and self.to_json() == other.to_json()

    def __repr__(self) -> str:
        if self.kind == "surd":
            a, b, c, den = self._surd
            return f"Angle(({a}{b:+}*sqrt({c}))/{den})"
        return f"Angle(cf {self._cf_prefix} {self._cf_rule})"


def _floor_quad(P: int, D: int, Q: int) -> int:
    """Exact floor of (P + sqrt(D)) / Q, D a non-square > 0, Q != 0."""
    bits = 16
    while True:
        slo, shi = _sqrt_enclosure(D, bits)
        xlo, xhi = Fraction(P + slo, Q), Fraction(P + shi, Q)
        if Q < 0:
            xlo, xhi = xhi, xlo
        flo, fhi = floor(xlo), floor(xhi)
        if flo == fhi:
            return flo
        bits *= 2


def golden_angle() -> Angle:
    """(sqrt(5) - 1) / 2, the default test rotation."""
    return Angle("surd", surd=(-1, 1, 5, 2))


def silver_angle() -> Angle:
    """sqrt(2) - 1."""
    return Angle("surd", surd=(-1, 1, 2, 1))


NAMED_ANGLES = {
    "golden": lambda: golden_angle(),
    "silver": lambda: silver_angle(),
    "silver5": lambda: Angle("surd", surd=(-1, 1, 2, 5)),  # (sqrt(2)-1)/5
}


def named_angle(spec: str) -> Angle:
    """Build an angle from a name in NAMED_ANGLES or a JSON descriptor string."""
    if spec in NAMED_ANGLES:
        return NAMED_ANGLES[spec]()
    return Angle.from_json(json.loads(spec))


def default_angle() -> Angle:
    """The angle selected by ROTALG_DEFAULT_ANGLE, golden by default."""
    spec = os.environ.get("ROTALG_DEFAULT_ANGLE")
    if spec:
        return named_angle(spec)
    return golden_angle()
