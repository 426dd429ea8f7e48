"""Coefficient fields shared by the equation, hyperplane and fiber code.

Elements are plain Python numbers where possible (``complex``,
``fractions.Fraction``) and :class:`Fp` instances for prime fields, so the
same arithmetic expressions work over every field. The field object carries
what the elements cannot: zero tests, square roots and roots of unity.
"""

from __future__ import annotations

import cmath
import random
from fractions import Fraction


class FieldError(ArithmeticError):
    pass


class MissingRootOfUnity(FieldError):
    """The field lacks a root of unity that an action table needs."""


def is_probable_prime(n: int, rounds: int = 20) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(n)  # deterministic per n
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(x: int, p: int) -> int:
    """Return 1, -1 or 0 by Euler's criterion."""
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_p(x: int, p: int) -> int | None:
    """Square root of ``x`` modulo the odd prime ``p`` (Tonelli-Shanks).

    Returns the root in ``[0, p/2]`` or ``None`` when ``x`` is a non-residue.
    """
    x %= p
    if x == 0:
        return 0
    if legendre(x, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(x, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(x, q, p), pow(x, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


class Fp:
    """An element of the prime field with ``p`` elements."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError(f"division by zero in F_{self.p}")
            return Fp(pow(self.v, -e, self.p), self.p).inverse()
        return Fp(pow(self.v, e, self.p), self.p)

    def inverse(self):
        return Fp(pow(self.v, -1, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def signed(self) -> int:
        """Representative in ``(-p/2, p/2]``."""
        return self.v - self.p if self.v > self.p // 2 else self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class ComplexField:
    """Floating complex numbers; zero tests use an absolute tolerance."""

    exact = False
    characteristic = 0

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    def __call__(self, x) -> complex:
        return complex(x)

    @property
    def zero(self):
        return 0j

    @property
    def one(self):
        return 1 + 0j

    def is_zero(self, x) -> bool:
        return abs(x) < self.tol

    def eq(self, x, y) -> bool:
        return abs(x - y) <= self.tol * max(1.0, abs(x), abs(y))

    def sqrt(self, x):
        return cmath.sqrt(x)

    def zeta8(self, e: int) -> complex:
        return cmath.exp(2j * cmath.pi * (e % 8) / 8)

    def to_json(self, x):
        x = complex(x)
        return [x.real, x.imag]

    def __repr__(self):
        return "ComplexField()"


class RationalField:
    """Exact rationals via :class:`fractions.Fraction`."""

    exact = True
    characteristic = 0

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, x, y) -> bool:
        return x == y

    def sqrt(self, x):
        x = Fraction(x)
        if x < 0:
            return None
        n, d = _isqrt_exact(x.numerator), _isqrt_exact(x.denominator)
        if n is None or d is None:
            return None
        return Fraction(n, d)

    def zeta8(self, e: int):
        e %= 8
        if e == 0:
            return Fraction(1)
        if e == 4:
            return Fraction(-1)
        raise MissingRootOfUnity(f"zeta^{e} is not rational")

    def to_json(self, x):
        x = Fraction(x)
        return str(x)

    def __repr__(self):
        return "RationalField()"


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


class PrimeField:
    """The prime field F_p, p an odd prime."""

    exact = True

    def __init__(self, p: int):
        if p < 3 or not is_probable_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            return x
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / x.denominator
        return Fp(int(x), self.p)

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def is_zero(self, x) -> bool:
        return self(x).v == 0

    def eq(self, x, y) -> bool:
        return self(x) == self(y)

    def is_square(self, x) -> bool:
        return legendre(self(x).v, self.p) >= 0

    def sqrt(self, x):
        r = sqrt_mod_p(self(x).v, self.p)
        return None if r is None else Fp(r, self.p)

    def smallest_nonresidue(self) -> int:
        z = 2
        while legendre(z, self.p) != -1:
            z += 1
        return z

    def zeta8(self, e: int) -> Fp:
        """A fixed choice of primitive 8th root of unity, raised to ``e``.

        Even exponents only need ``p = 1 mod 4``; odd ones need ``p = 1 mod 8``.
        """
        e %= 8
        if e == 0:
            return self.one
        if e == 4:
            return -self.one
        need = 8 if e % 2 else 4
        if (self.p - 1) % need:
            raise MissingRootOfUnity(f"F_{self.p} has no primitive {need}th root of unity")
        if (self.p - 1) % 8 == 0:
            z = self._primitive_root_of_unity(8)
            return z**e
        i = self._primitive_root_of_unity(4)
        return i ** (e // 2)

    def _primitive_root_of_unity(self, n: int) -> Fp:
        for g in range(2, self.p):
            w = pow(g, (self.p - 1) // n, self.p)
            if pow(w, n // 2, self.p) != 1:
                return Fp(w, self.p)
        raise MissingRootOfUnity(f"no primitive {n}th root in F_{self.p}")

    def elements(self):
        return (Fp(v, self.p) for v in range(self.p))

    def to_json(self, x):
        return self(x).v

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))
