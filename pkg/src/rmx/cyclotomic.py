"""Exact arithmetic in the cyclotomic field Q(zeta_N).

An element is stored as an integer vector over a single positive common
denominator, in the power basis ``1, zeta, ..., zeta^(phi(N)-1)`` reduced
modulo the N-th cyclotomic polynomial. The representation is canonical, so
equality of values is equality of the stored data.

>>> i = root_of_unity(4, 1)
>>> i * i
CycNumber(4, [-1, 0])
>>> (1 + root_of_unity(3, 1)) * (1 + root_of_unity(3, 1)).inverse() == 1
True
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import ConductorMismatchError

Scalar = Union["CycNumber", int, Fraction]


def _polymul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _exact_div(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Quotient of integer polynomials (low-to-high); ``den`` monic, remainder must vanish."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    Obtained by dividing ``x^n - 1`` by every ``Phi_d`` with ``d`` a proper
    divisor of ``n``.
    """
    if n < 1:
        raise ValueError(f"cyclotomic_polynomial needs n >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class _Field:
    """Per-conductor tables: ``powers[j]`` is ``zeta^j`` reduced, for 0 <= j < N."""

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        phi = self.phi
        powers = []
        cur = [1] + [0] * (phi - 1)
        for _ in range(n):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * self.poly[j]
        self.powers = tuple(powers)

    def reduce(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        """Reduce an integer vector indexed by powers of zeta (any length)."""
        phi, n = self.phi, self.n
        if len(coeffs) <= phi:
            return tuple(coeffs) + (0,) * (phi - len(coeffs))
        out = list(coeffs[:phi])
        powers = self.powers
        for k in range(phi, len(coeffs)):
            c = coeffs[k]
            if c:
                p = powers[k % n]
                for j in range(phi):
                    if p[j]:
                        out[j] += c * p[j]
        return tuple(out)


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    if n < 1:
        raise ValueError(f"conductor must be >= 1, got {n}")
    return _Field(n)


def _normalize(nums: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums, den = [-x for x in nums], -den
    g = math.gcd(den, *nums)
    if g != 1:
        nums = [x // g for x in nums]
        den //= g
    return tuple(nums), den


class CycNumber:
    """An element of Q(zeta_N); immutable and hashable."""

    __slots__ = ("conductor", "_nums", "_den", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable[int | Fraction] = ()):
        fld = _field(conductor)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > fld.phi:
            raise ValueError(
                f"{len(coeffs)} coefficients given but phi({conductor}) = {fld.phi}; "
                "use from_power_coeffs for unreduced input"
            )
        coeffs += [Fraction(0)] * (fld.phi - len(coeffs))
        den = math.lcm(1, *(c.denominator for c in coeffs))
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        self._set(conductor, *_normalize(nums, den))

    def _set(self, conductor: int, nums: tuple[int, ...], den: int) -> None:
        self.conductor = conductor
        self._nums = nums
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, conductor: int, nums: Sequence[int], den: int = 1) -> CycNumber:
        obj = cls.__new__(cls)
        obj._set(conductor, *_normalize(nums, den))
        return obj

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rational(cls, conductor: int, value: int | Fraction) -> CycNumber:
        value = Fraction(value)
        phi = _field(conductor).phi
        return cls._raw(conductor, [value.numerator] + [0] * (phi - 1), value.denominator)

    @classmethod
    def zero(cls, conductor: int) -> CycNumber:
        return cls.from_rational(conductor, 0)

    @classmethod
    def one(cls, conductor: int) -> CycNumber:
        return cls.from_rational(conductor, 1)

    @classmethod
    def from_power_coeffs(cls, conductor: int, coeffs: Sequence[int], den: int = 1) -> CycNumber:
        """``sum_j coeffs[j] * zeta^j / den`` for an integer vector of any length."""
        return cls._raw(conductor, _field(conductor).reduce(coeffs), den)

    # -- accessors ------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_one(self) -> bool:
        return self._den == 1 and self._nums[0] == 1 and not any(self._nums[1:])

    def __bool__(self) -> bool:
        return any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other: Scalar) -> CycNumber:
        if isinstance(other, CycNumber):
            if other.conductor != self.conductor:
                raise ConductorMismatchError(
                    f"conductors differ: {self.conductor} vs {other.conductor}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.from_rational(self.conductor, other)
        return NotImplemented

    def __add__(self, other: Scalar) -> CycNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self._den, other._den
        if d1 == d2:
            nums = [x + y for x, y in zip(self._nums, other._nums)]
            return CycNumber._raw(self.conductor, nums, d1)
        nums = [x * d2 + y * d1 for x, y in zip(self._nums, other._nums)]
        return CycNumber._raw(self.conductor, nums, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> CycNumber:
        obj = CycNumber.__new__(CycNumber)
        obj._set(self.conductor, tuple(-x for x in self._nums), self._den)
        return obj

    def __sub__(self, other: Scalar) -> CycNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> CycNumber:
        return (-self) + other

    def __mul__(self, other: Scalar) -> CycNumber:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycNumber._raw(
                self.conductor,
                [x * other.numerator for x in self._nums],
                self._den * other.denominator,
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._nums, other._nums
        if len(a) == 1:
            return CycNumber._raw(self.conductor, (a[0] * b[0],), self._den * other._den)
        prod = _field(self.conductor).reduce(_polymul(a, b))
        return CycNumber._raw(self.conductor, prod, self._den * other._den)

    __rmul__ = __mul__

    def mul_root(self, k: int) -> CycNumber:
        """Multiply by ``zeta_N^k``."""
        fld = _field(self.conductor)
        n = fld.n
        k %= n
        if k == 0:
            return self
        vec = [0] * n
        for j, x in enumerate(self._nums):
            vec[(j + k) % n] += x
        return CycNumber._raw(self.conductor, fld.reduce(vec), self._den)

    def inverse(self) -> CycNumber:
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        fld = _field(self.conductor)
        a = _trim([Fraction(x) for x in self._nums])
        s = _poly_inverse_mod(a, [Fraction(c) for c in fld.poly])
        den = math.lcm(1, *(c.denominator for c in s))
        nums = [c.numerator * (den // c.denominator) for c in s]
        nums = list(fld.reduce(nums))
        # 1/(p/d) = d * p^{-1}
        return CycNumber._raw(self.conductor, [x * self._den for x in nums], den)

    def __truediv__(self, other: Scalar) -> CycNumber:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> CycNumber:
        return self.inverse() * other

    def __pow__(self, k: int) -> CycNumber:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> CycNumber:
        """Complex conjugation, i.e. the Galois automorphism zeta -> zeta^-1."""
        return self.galois(-1)

    def galois(self, j: int) -> CycNumber:
        """Apply the automorphism ``zeta -> zeta^j`` (``j`` coprime to N)."""
        n = self.conductor
        if math.gcd(j, n) != 1:
            raise ValueError(f"{j} is not a unit modulo {n}")
        vec = [0] * n
        for i, x in enumerate(self._nums):
            vec[(i * j) % n] += x
        return CycNumber._raw(n, _field(n).reduce(vec), self._den)

    def lift(self, conductor: int) -> CycNumber:
        """The same number viewed in Q(zeta_M) for a multiple M of the conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ConductorMismatchError(
                f"cannot embed Q(zeta_{self.conductor}) into Q(zeta_{conductor})"
            )
        step = conductor // self.conductor
        vec = [0] * conductor
        for i, x in enumerate(self._nums):
            vec[i * step] = x
        return CycNumber._raw(conductor, _field(conductor).reduce(vec), self._den)

    # -- comparison, hashing, display -----------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycNumber):
            return (
                self.conductor == other.conductor
                and self._den == other._den
                and self._nums == other._nums
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._nums[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._nums[0], self._den))
            else:
                self._hash = hash((self.conductor, self._nums, self._den))
        return self._hash

    def __getstate__(self):
        return (self.conductor, self._nums, self._den)

    def __setstate__(self, state) -> None:
        self._set(*state)

    def __repr__(self) -> str:
        coeffs = [str(c) for c in self.coeffs]
        return f"CycNumber({self.conductor}, [{', '.join(coeffs)}])"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                body = str(abs(c))
            else:
                zeta = f"ζ{self.conductor}" + (f"^{j}" if j > 1 else "")
                body = zeta if abs(c) == 1 else f"{abs(c)}*{zeta}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_complex(self) -> complex:
        """Floating-point approximation; for display only."""
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs)) + 0j

    def approx_str(self, digits: int = 6) -> str:
        z = self.to_complex()
        re = round(z.real, digits) + 0.0
        im = round(z.imag, digits) + 0.0
        if im == 0:
            return f"≈{re:g}"
        return f"≈{re:g}{im:+g}i"

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> CycNumber:
        return cls(int(data["conductor"]), [Fraction(int(p), int(q)) for p, q in data["coeffs"]])


def root_of_unity(n: int, k: int = 1) -> CycNumber:
    """``zeta_n^k`` as an element of Q(zeta_n)."""
    fld = _field(n)
    return CycNumber._raw(n, fld.powers[k % n], 1)


def from_root_counts(n: int, counts: Sequence[int], den: int = 1) -> CycNumber:
    """``sum_j counts[j] * zeta_n^j / den``; ``counts`` has length ``n``."""
    return CycNumber.from_power_coeffs(n, counts, den)


def as_cyc(value: Scalar, conductor: int) -> CycNumber:
    """Coerce an int/Fraction/CycNumber to conductor ``conductor`` (lifting if needed)."""
    if isinstance(value, CycNumber):
        return value.lift(conductor)
    return CycNumber.from_rational(conductor, value)


# -- polynomial helpers over Q for the extended Euclidean algorithm -------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, d in enumerate(b):
                a[k + j] -= c * d
    return _trim(q), _trim(a[: len(b) - 1] or [Fraction(0)])


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """``s`` with ``s * a == 1 (mod m)``; requires ``gcd(a, m) == 1``."""
    r0, r1 = m, a
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1 or r1[0] != 0:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    g = r0[0]
    return [c / g for c in s0]
