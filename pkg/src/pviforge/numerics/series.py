"""Truncated Puiseux/Laurent series with mpmath coefficients.

A series with ramification ``N`` stores the coefficients of t^(k/N) for
``val <= k < prec``; everything from exponent prec/N on is unknown.
"""
from fractions import Fraction

from mpmath import fabs, mpc

from ..errors import SeriesInversionError
from .precision import as_mpc


class PuiseuxSeries:
    __slots__ = ("N", "val", "coeffs")

    def __init__(self, coeffs, val=0, N=1):
        self.N = int(N)
        self.val = int(val)
        self.coeffs = [as_mpc(c) for c in coeffs]

    # construction helpers
    @classmethod
    def zero(cls, prec, N=1):
        return cls([], prec, N)

    @classmethod
    def constant(cls, a, prec, N=1):
        if prec <= 0:
            return cls([], prec, N)
        return cls([a] + [0] * (prec - 1), 0, N)

    @classmethod
    def monomial(cls, a, k, prec, N=1):
        """a * t^(k/N) known up to index prec."""
        if prec <= k:
            return cls([], prec, N)
        return cls([a] + [0] * (prec - k - 1), k, N)

    @property
    def prec(self):
        return self.val + len(self.coeffs)

    @property
    def leading_exponent(self):
        return Fraction(self.val, self.N)

    def __repr__(self):
        return f"PuiseuxSeries(N={self.N}, val={self.val}, len={len(self.coeffs)})"

    def coeff(self, k):
        """Coefficient of t^(k/N); zero below val, error beyond truncation."""
        if k < self.val:
            return mpc(0)
        if k >= self.prec:
            raise IndexError("coefficient beyond truncation order")
        return self.coeffs[k - self.val]

    def items(self):
        return ((self.val + i, c) for i, c in enumerate(self.coeffs))

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        if prec <= self.val:
            return PuiseuxSeries([], prec, self.N)
        return PuiseuxSeries(self.coeffs[: prec - self.val], self.val, self.N)

    def normalized(self, tol=0):
        """Drop leading coefficients with modulus <= tol."""
        i = 0
        while i < len(self.coeffs) and fabs(self.coeffs[i]) <= tol:
            i += 1
        return PuiseuxSeries(self.coeffs[i:], self.val + i, self.N)

    def with_ramification(self, M):
        if M % self.N:
            raise ValueError("new ramification must be a multiple")
        f = M // self.N
        if f == 1:
            return self
        out = []
        for c in self.coeffs:
            out.append(c)
            out.extend([mpc(0)] * (f - 1))
        return PuiseuxSeries(out, self.val * f, M)

    # arithmetic
    def _align(self, other):
        if other.N != self.N:
            M = self.N * other.N // _gcd(self.N, other.N)
            return self.with_ramification(M), other.with_ramification(M)
        return self, other

    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self._add_scalar(other)
        a, b = self._align(other)
        lo = min(a.val, b.val)
        hi = min(a.prec, b.prec)
        out = [mpc(0)] * max(hi - lo, 0)
        for k, c in a.items():
            if k < hi:
                out[k - lo] += c
        for k, c in b.items():
            if k < hi:
                out[k - lo] += c
        return PuiseuxSeries(out, lo, a.N)

    __radd__ = __add__

    def _add_scalar(self, a):
        a = as_mpc(a)
        if self.prec <= 0:
            return self
        if self.val > 0:
            out = [a] + [mpc(0)] * (self.val - 1) + list(self.coeffs)
            return PuiseuxSeries(out, 0, self.N)
        out = list(self.coeffs)
        out[-self.val] += a
        return PuiseuxSeries(out, self.val, self.N)

    def __neg__(self):
        return PuiseuxSeries([-c for c in self.coeffs], self.val, self.N)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            o = as_mpc(other)
            return PuiseuxSeries([c * o for c in self.coeffs], self.val, self.N)
        a, b = self._align(other)
        la, lb = len(a.coeffs), len(b.coeffs)
        n = min(la, lb)
        ca, cb = a.coeffs, b.coeffs
        out = []
        for k in range(n):
            s = mpc(0)
            for i in range(k + 1):
                s += ca[i] * cb[k - i]
            out.append(s)
        return PuiseuxSeries(out, a.val + b.val, a.N)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n == 0:
            return PuiseuxSeries.constant(1, len(self.coeffs), self.N)
        if n < 0:
            return self.inverse() ** (-n)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def inverse(self):
        if not self.coeffs or self.coeffs[0] == 0:
            raise SeriesInversionError("leading coefficient vanishes; cannot invert")
        c = self.coeffs
        inv0 = 1 / c[0]
        out = [inv0]
        for k in range(1, len(c)):
            s = mpc(0)
            for i in range(1, k + 1):
                s += c[i] * out[k - i]
            out.append(-s * inv0)
        return PuiseuxSeries(out, -self.val, self.N)

    def __truediv__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self * (1 / as_mpc(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def derivative(self):
        """d/dt: t^(k/N) -> (k/N) t^(k/N - 1)."""
        out = [c * k / self.N for k, c in self.items()]
        return PuiseuxSeries(out, self.val - self.N, self.N)

    def shift(self, k):
        """Multiply by t^(k/N)."""
        return PuiseuxSeries(self.coeffs, self.val + k, self.N)

    def __call__(self, t):
        """Evaluate the truncated sum at t using the principal branch of t^(1/N)."""
        x = as_mpc(t) ** (mpc(1) / self.N)
        return sum((c * x**k for k, c in self.items()), mpc(0))

    def max_abs(self):
        return max((fabs(c) for c in self.coeffs), default=0)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def t_series(prec, N=1):
    """The series of t itself at ramification N."""
    return PuiseuxSeries.monomial(1, N, prec, N)
