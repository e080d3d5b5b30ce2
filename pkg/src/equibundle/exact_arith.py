"""Exact scalar arithmetic: rationals, residues, modular inverses, CRT.

``Rational`` is the stdlib ``fractions.Fraction``: arbitrary precision,
always reduced, denominator positive.  It is re-exported here so the rest
of the package has a single spelling for its scalar type.  Everything in
this module is pure and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "Rational",
    "Residue",
    "NotInvertible",
    "DenominatorDivisible",
    "NotCoprime",
    "ModulusMismatch",
    "is_prime",
    "mod_inverse",
    "rational_mod",
    "crt_solve",
    "signed_rep",
]

Rational = Fraction


class NotInvertible(ArithmeticError):
    """gcd(a, n) != 1, so a has no inverse mod n."""


class DenominatorDivisible(ArithmeticError):
    """A rational cannot be reduced mod p because p divides its denominator."""


class NotCoprime(ArithmeticError):
    """Chinese remainder moduli share a common factor."""


class ModulusMismatch(ValueError):
    """Arithmetic between residues with different moduli."""


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division; intended range n <= 10**6."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    top = isqrt(n)
    while d <= top:
        if n % d == 0:
            return False
        d += 2
    return True


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, x, y) with a*x + b*y == g
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class Residue:
    """An element of Z/n, stored with value in [0, n) and modulus n >= 2."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: "Residue | int") -> "Residue":
        if isinstance(other, int):
            return Residue(other, self.modulus)
        if not isinstance(other, Residue):
            return NotImplemented
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"moduli differ: {self.modulus} vs {other.modulus}")
        return other

    def __add__(self, other: "Residue | int") -> "Residue":
        other = self._coerce(other)
        return Residue(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: "Residue | int") -> "Residue":
        other = self._coerce(other)
        return Residue(self.value - other.value, self.modulus)

    def __rsub__(self, other: int) -> "Residue":
        return Residue(other - self.value, self.modulus)

    def __mul__(self, other: "Residue | int") -> "Residue":
        other = self._coerce(other)
        return Residue(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def inverse(self) -> "Residue":
        return mod_inverse(self.value, self.modulus)

    def __int__(self) -> int:
        return self.value

    def signed(self) -> int:
        """Representative in (-n/2, n/2], the display convention."""
        return signed_rep(self.value, self.modulus)

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


def signed_rep(x: int, n: int) -> int:
    """Representative of x mod n lying in (-n/2, n/2]."""
    x %= n
    return x if 2 * x <= n else x - n


def mod_inverse(a: int, n: int) -> Residue:
    """Inverse of a modulo n; raises NotInvertible when gcd(a, n) != 1."""
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    g, x, _ = _xgcd(a % n, n)
    if g != 1:
        raise NotInvertible(f"{a} is not invertible mod {n} (gcd={g})")
    return Residue(x, n)


def rational_mod(q: Fraction | int, p: int) -> Residue:
    """Reduce an exact rational mod p via a modular inverse of its denominator.

    Raises DenominatorDivisible when p divides the denominator, in which
    case the reduction is undefined.
    """
    q = Fraction(q)
    if q.denominator % p == 0:
        raise DenominatorDivisible(f"denominator of {q} is divisible by {p}")
    if q.denominator == 1:
        return Residue(q.numerator, p)
    inv = mod_inverse(q.denominator, p)
    return Residue(q.numerator * inv.value, p)


def crt_solve(r1: int, m1: int, r2: int, m2: int) -> Residue:
    """Solve x == r1 (mod m1), x == r2 (mod m2) for coprime moduli.

    Returns the unique solution mod m1*m2.  Raises NotCoprime when the
    moduli share a factor.
    """
    if m1 < 1 or m2 < 1:
        raise ValueError("moduli must be positive")
    if gcd(m1, m2) != 1:
        raise NotCoprime(f"moduli {m1}, {m2} share factor {gcd(m1, m2)}")
    if m1 * m2 < 2:
        raise ValueError("product modulus must be >= 2")
    # x = r1 + m1 * t with m1 * t == r2 - r1 (mod m2)
    if m2 == 1:
        return Residue(r1, m1)
    if m1 == 1:
        return Residue(r2, m2)
    g, inv_m1, _ = _xgcd(m1 % m2, m2)
    t = (inv_m1 * (r2 - r1)) % m2
    return Residue(r1 + m1 * t, m1 * m2)
