"""Exact univariate polynomials and rational functions over the rationals."""
from fractions import Fraction
from math import gcd, lcm


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Dense polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, a):
        return cls((a,))

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lc(self):
        return self.c[-1] if self.c else Fraction(0)

    def __repr__(self):
        return f"Poly({[str(a) for a in self.c]})"

    def __str__(self):
        return poly_str(self.c, "t")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly((other,))
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def _coerce(self, other):
        return other if isinstance(other, Poly) else Poly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            o = _frac(other)
            return Poly([a * o for a in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result, base = Poly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        d = other.degree
        inv = 1 / other.lc()
        quot = [Fraction(0)] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1 - d, -1, -1):
            q = rem[k + d] * inv
            quot[k] = q
            if q:
                for j, b in enumerate(other.c):
                    rem[k + j] -= q * b
        return Poly(quot), Poly(rem[:d] if d > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        exact = isinstance(x, (int, Fraction))
        acc = Fraction(0) if exact else 0
        for a in reversed(self.c):
            acc = acc * x + (a if exact else _num(a))
        return acc

    def derivative(self):
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def monic(self):
        return self * (1 / self.lc()) if self.c else self

    def integer_primitive(self):
        """(content, integer coefficient list) with self = content * primitive."""
        if not self.c:
            return Fraction(0), []
        den = lcm(*(a.denominator for a in self.c))
        ints = [int(a * den) for a in self.c]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return Fraction(g, den), [v // g for v in ints]


def _poly(p):
    if isinstance(p, Poly):
        return p
    if isinstance(p, (list, tuple)):
        return Poly(p)
    return Poly((p,))


def _num(a):
    from .precision import as_mpc

    return as_mpc(a)


def _prim(ints):
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return ints
    if ints[-1] < 0:
        g = -g
    return [v // g for v in ints]


def _int_prem(a, b):
    """Pseudo-remainder of integer coefficient lists (lowest first)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        la = a[-1]
        a = [v * lb for v in a]
        for j, v in enumerate(b):
            a[k + j] -= la * v
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_gcd(p, q):
    """Monic gcd using a primitive pseudo-remainder sequence over the integers."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a = _prim(p.integer_primitive()[1])
    b = _prim(q.integer_primitive()[1])
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, (_prim(r) if r else r)
    return Poly(a).monic()


class RationalFunction:
    """num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, normalize=True):
        num = _poly(num)
        den = Poly((1,)) if den is None else _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if normalize:
            if num.is_zero():
                den = Poly((1,))
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            s = 1 / den.lc()
            num, den = num * s, den * s
        self.num, self.den = num, den

    @classmethod
    def x(cls):
        return cls(Poly.x())

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree == 0:
            return f"{self.num}"
        return f"({self.num})/({self.den})"

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        other = _rf(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _rf(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-_rf(other))

    def __rsub__(self, other):
        return _rf(other) - self

    def __mul__(self, other):
        other = _rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _rf(other) / self

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den**-n, self.num**-n)
        return RationalFunction(self.num**n, self.den**n, normalize=False)

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def compose(self, inner):
        """self(inner) for a rational function inner."""
        inner = _rf(inner)
        return _horner(self.num, inner) / _horner(self.den, inner)


def _horner(p, x):
    acc = RationalFunction(Poly())
    for a in reversed(p.c):
        acc = acc * x + a
    return acc


def _rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x, normalize=False)
    return RationalFunction(Poly((x,)), normalize=False)


def poly_str(coeffs, var):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if a == 0:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if mono and abs(a) == 1:
            s = mono
        elif mono:
            s = f"{abs(a)}*{mono}"
        else:
            s = f"{abs(a)}"
        sign = "-" if a < 0 else "+"
        terms.append((sign, s))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, s in terms[1:]:
        out += f" {sign} {s}"
    return out
