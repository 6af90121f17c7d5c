"""Exact arithmetic tower.

``BivarPoly`` is a rational polynomial in the two weights omega and v,
backed by FLINT.  ``LaurentX`` is a Laurent series in one catalytic
variable with an explicit precision, ``TSeries`` a truncated power
series in t (or q) over any coefficient ring that supports ``+``, ``-``,
``*`` and truth testing.

All values are treated as immutable.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable

import flint

__all__ = [
    "BivarPoly", "LaurentX", "TSeries", "QSeries",
    "WindowOverflow", "WindowMismatch", "RingMismatch",
    "series_mul", "series_reversion", "laurent_part", "substitute",
    "geometric", "widen_window", "widen_and_compare",
    "to_json", "from_json", "OMEGA", "V", "ONE", "ZERO",
]


class WindowOverflow(ArithmeticError):
    """A result needs exponents outside the configured window."""


class WindowMismatch(ArithmeticError):
    """Widening the window changed a result on the original window."""


class RingMismatch(TypeError):
    """Operands live in incompatible coefficient rings."""


_CTX = flint.fmpq_mpoly_ctx.get(("w", "v"), "lex")
_SCALARS = (int, Fraction, flint.fmpq, flint.fmpz)


def _fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, (int, flint.fmpz)):
        return flint.fmpq(int(c))
    if isinstance(c, Rational):
        return flint.fmpq(int(c.numerator), int(c.denominator))
    raise RingMismatch(f"not an exact rational: {c!r}")


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class BivarPoly:
    """Polynomial in omega and v with exact rational coefficients."""

    __slots__ = ("_p",)

    def __init__(self, terms=None):
        if terms is None:
            self._p = _CTX.from_dict({})
        elif isinstance(terms, flint.fmpq_mpoly):
            self._p = terms
        elif isinstance(terms, BivarPoly):
            self._p = terms._p
        elif isinstance(terms, dict):
            d = {}
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent in BivarPoly")
                c = _fmpq(c)
                if c != 0:
                    d[(int(i), int(j))] = c
            self._p = _CTX.from_dict(d)
        elif isinstance(terms, _SCALARS) or isinstance(terms, Rational):
            self._p = _CTX.from_dict({(0, 0): _fmpq(terms)} if terms else {})
        else:
            raise RingMismatch(f"cannot build BivarPoly from {type(terms).__name__}")

    @classmethod
    def _wrap(cls, p):
        obj = cls.__new__(cls)
        obj._p = p
        return obj

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls(c)

    @classmethod
    def omega(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    @property
    def terms(self) -> dict:
        return {(int(k[0]), int(k[1])): _to_fraction(c) for k, c in self._p.to_dict().items()}

    def items(self):
        return sorted(self.terms.items())

    # ring operations
    def _coerce(self, other):
        if isinstance(other, BivarPoly):
            return other._p
        if isinstance(other, _SCALARS) or isinstance(other, Rational):
            return _fmpq(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BivarPoly._wrap(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BivarPoly._wrap(self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BivarPoly._wrap(o - self._p)

    def __mul__(self, other):
        if isinstance(other, BivarPoly):
            return BivarPoly._wrap(self._p * other._p)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BivarPoly._wrap(self._p * o)

    __rmul__ = __mul__

    def __neg__(self):
        return BivarPoly._wrap(-self._p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("BivarPoly power must be a non-negative int")
        return BivarPoly._wrap(self._p ** n)

    def __truediv__(self, other):
        """Exact division; raises ArithmeticError if not exact."""
        if isinstance(other, BivarPoly):
            if other.is_constant():
                return self / other.constant_value()
            try:
                return BivarPoly._wrap(self._p / other._p)
            except Exception as exc:  # flint DomainError
                raise ArithmeticError(f"inexact division of {self} by {other}") from exc
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division of BivarPoly by zero")
        return BivarPoly._wrap(self._p * (1 / o))

    def __bool__(self):
        return not self._p.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o

    def __hash__(self):
        return hash(tuple(sorted(self._p.to_dict().items(), key=lambda kv: kv[0])).__repr__())

    # queries
    def is_constant(self) -> bool:
        return self._p.is_constant()

    def constant_value(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    def deg_omega(self) -> int:
        return max((i for i, _ in self._p.to_dict()), default=-1)

    def deg_v(self) -> int:
        return max((j for _, j in self._p.to_dict()), default=-1)

    def subs(self, omega=None, v=None) -> "BivarPoly":
        """Substitute exact rational values for omega and/or v."""
        d = {}
        if omega is not None:
            d["w"] = _fmpq(omega)
        if v is not None:
            d["v"] = _fmpq(v)
        return BivarPoly._wrap(self._p.subs(d)) if d else self

    def value(self, omega, v) -> Fraction:
        return self.subs(omega, v).constant_value()

    def evalf(self, omega: float, v: float) -> float:
        return float(sum(float(c) * omega ** i * v ** j for (i, j), c in self.terms.items()))

    def derivative(self, var: str) -> "BivarPoly":
        return BivarPoly._wrap(self._p.derivative("w" if var in ("w", "omega") else "v"))

    def __repr__(self):
        return f"BivarPoly({self})"

    def __str__(self):
        if self._p.is_zero():
            return "0"
        return str(self._p).replace("w", "ω")


ZERO = BivarPoly()
ONE = BivarPoly(1)
OMEGA = BivarPoly.omega()
V = BivarPoly.v()


def _zero_like(c):
    if isinstance(c, BivarPoly):
        return ZERO
    if isinstance(c, LaurentX):
        return LaurentX({}, prec=c.prec, zero=c.zero)
    if isinstance(c, float):
        return 0.0
    return c * 0


# ---------------------------------------------------------------------------
# Laurent series in one catalytic variable


_INF = math.inf


class LaurentX:
    """Laurent series ``sum c_k x^k`` with coefficients known up to ``prec``.

    Coefficients are stored densely from ``lo`` with no zero at either end.
    ``prec`` is the largest exponent whose coefficient is known
    (``None`` means the series is an exact Laurent polynomial).
    """

    __slots__ = ("lo", "c", "prec", "zero")

    def __init__(self, coeffs=None, prec=None, zero=ZERO):
        self.zero = zero
        self.prec = prec
        coeffs = coeffs or {}
        if isinstance(coeffs, dict):
            items = {k: v for k, v in coeffs.items() if v and (prec is None or k <= prec)}
            if not items:
                self.lo, self.c = 0, []
                return
            lo, hi = min(items), max(items)
            self.lo = lo
            self.c = [items.get(k, zero) for k in range(lo, hi + 1)]
        else:
            raise TypeError("LaurentX expects a dict of coefficients")

    @classmethod
    def _make(cls, lo, c, prec, zero):
        # strip zeros at both ends and drop unknown coefficients
        if prec is not None and lo + len(c) - 1 > prec:
            c = c[: max(0, prec - lo + 1)]
        i, j = 0, len(c)
        while i < j and not c[i]:
            i += 1
        while j > i and not c[j - 1]:
            j -= 1
        obj = cls.__new__(cls)
        obj.zero = zero
        obj.prec = prec
        if i == j:
            obj.lo, obj.c = 0, []
        else:
            obj.lo, obj.c = lo + i, c[i:j]
        return obj

    @classmethod
    def monomial(cls, k: int, coeff=ONE, prec=None, zero=None) -> "LaurentX":
        return cls({k: coeff}, prec=prec, zero=_zero_like(coeff) if zero is None else zero)

    # shape
    @property
    def kmin(self):
        return self.lo if self.c else None

    @property
    def kmax(self):
        return self.lo + len(self.c) - 1 if self.c else None

    def valuation(self):
        """Lowest exponent with nonzero coefficient (``inf`` for zero)."""
        if self.c:
            return self.lo
        return _INF if self.prec is None else self.prec + 1

    @property
    def coeffs(self) -> dict:
        return {self.lo + i: a for i, a in enumerate(self.c) if a}

    def __getitem__(self, k: int):
        if self.prec is not None and k > self.prec:
            raise WindowOverflow(f"coefficient x^{k} beyond precision {self.prec}")
        i = k - self.lo
        if 0 <= i < len(self.c):
            return self.c[i]
        return self.zero

    def coefficient(self, k: int):
        return self[k]

    def is_exact(self) -> bool:
        return self.prec is None

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    # arithmetic
    def _lift(self, other):
        if isinstance(other, LaurentX):
            return other
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            if other == 0:
                return self
            o = LaurentX.monomial(0, other, zero=self.zero)
        prec = _min_prec(self.prec, o.prec)
        if not self.c:
            return LaurentX._make(o.lo, list(o.c), prec, self.zero)
        if not o.c:
            return LaurentX._make(self.lo, list(self.c), prec, self.zero)
        lo = min(self.lo, o.lo)
        hi = max(self.lo + len(self.c), o.lo + len(o.c)) - 1
        if prec is not None:
            hi = min(hi, prec)
        if hi < lo:
            return LaurentX._make(0, [], prec, self.zero)
        res = [self.zero] * (hi - lo + 1)
        for i, a in enumerate(self.c):
            k = self.lo + i - lo
            if k <= hi - lo:
                res[k] = a
        for i, a in enumerate(o.c):
            k = o.lo + i - lo
            if k <= hi - lo:
                res[k] = res[k] + a
        return LaurentX._make(lo, res, prec, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return LaurentX._make(self.lo, [-a for a in self.c], self.prec, self.zero)

    def __sub__(self, other):
        if isinstance(other, LaurentX):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        return LaurentX._make(self.lo, [a * s for a in self.c], self.prec, self.zero)

    def __mul__(self, other):
        if not isinstance(other, LaurentX):
            return self.scale(other)
        a, b = self, other
        va, vb = a.valuation(), b.valuation()
        prec = _min_prec(None if a.prec is None else a.prec + vb,
                         None if b.prec is None else b.prec + va)
        if not a.c or not b.c:
            return LaurentX._make(0, [], prec, a.zero)
        lo = a.lo + b.lo
        hi = a.lo + len(a.c) + b.lo + len(b.c) - 2
        if prec is not None:
            hi = min(hi, prec)
        n = hi - lo + 1
        if n <= 0:
            return LaurentX._make(0, [], prec, a.zero)
        res = [None] * n
        bc = b.c
        nb = len(bc)
        for i, ai in enumerate(a.c):
            if not ai:
                continue
            top = min(nb, n - i)
            for j in range(top):
                bj = bc[j]
                if not bj:
                    continue
                r = res[i + j]
                res[i + j] = ai * bj if r is None else r + ai * bj
        z = a.zero
        return LaurentX._make(lo, [z if r is None else r for r in res], prec, z)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of LaurentX")
        result = LaurentX.monomial(0, _one_like(self.zero), zero=self.zero)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentX):
            if other == 0:
                return not self.c
            return NotImplemented
        return (self.lo, self.c, self.prec) == (other.lo, other.c, other.prec) or (
            not self.c and not other.c and self.prec == other.prec)

    def agrees_with(self, other: "LaurentX", upto=None) -> bool:
        """Equality on the exponents known to both (and <= ``upto``)."""
        p = _min_prec(self.prec, other.prec)
        if upto is not None:
            p = upto if p is None else min(p, upto)
        d = self - other
        return all(not a for k, a in d.coeffs.items() if p is None or k <= p)

    def shift(self, k: int) -> "LaurentX":
        """Multiply by x^k."""
        prec = None if self.prec is None else self.prec + k
        return LaurentX._make(self.lo + k, list(self.c), prec, self.zero)

    def truncate(self, prec: int) -> "LaurentX":
        return LaurentX._make(self.lo, list(self.c), _min_prec(self.prec, prec), self.zero)

    def part(self, lo=None, hi=None) -> "LaurentX":
        """Keep exponents k with lo <= k <= hi."""
        if hi is not None and self.prec is not None and hi > self.prec:
            raise WindowOverflow(f"extraction up to x^{hi} beyond precision {self.prec}")
        d = {k: a for k, a in self.coeffs.items()
             if (lo is None or k >= lo) and (hi is None or k <= hi)}
        prec = self.prec if hi is None else None
        return LaurentX(d, prec=prec, zero=self.zero)

    def div_one_minus_x(self, times: int = 1) -> "LaurentX":
        """Multiply by (1-x)^(-times) (prefix sums); the result is not exact."""
        if not self.c:
            return self
        if self.prec is None:
            raise WindowOverflow("div_one_minus_x needs a finite precision")
        c = list(self.c) + [self.zero] * (self.prec - (self.lo + len(self.c) - 1))
        for _ in range(times):
            acc = None
            for i, a in enumerate(c):
                acc = a if acc is None else acc + a
                c[i] = acc
        return LaurentX._make(self.lo, c, self.prec, self.zero)

    def map(self, fn) -> "LaurentX":
        c = [fn(a) for a in self.c]
        z = fn(self.zero) if self.c == [] else _zero_like(c[0]) if c else self.zero
        return LaurentX._make(self.lo, c, self.prec, z)

    def reflect(self) -> "LaurentX":
        """x -> 1/x; only for exact Laurent polynomials."""
        if self.prec is not None:
            raise WindowOverflow("x -> 1/x on a truncated series")
        return LaurentX._make(-(self.lo + len(self.c) - 1), list(reversed(self.c)), None, self.zero)

    def derivative(self) -> "LaurentX":
        d = {k - 1: a * k for k, a in self.coeffs.items() if k != 0}
        prec = None if self.prec is None else self.prec - 1
        return LaurentX(d, prec=prec, zero=self.zero)

    def __repr__(self):
        return f"LaurentX({self})"

    def __str__(self):
        if not self.c:
            s = "0"
        else:
            s = " + ".join(f"({a})*x^{k}" for k, a in sorted(self.coeffs.items()))
        if self.prec is not None:
            s += f" + O(x^{self.prec + 1})"
        return s


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _one_like(zero):
    if isinstance(zero, BivarPoly):
        return ONE
    if isinstance(zero, LaurentX):
        return LaurentX.monomial(0, _one_like(zero.zero), zero=zero.zero)
    if isinstance(zero, float):
        return 1.0
    return zero + 1


def geometric(power: int, prec: int, coeff_zero=ZERO, ratio=None) -> LaurentX:
    """(1 - r x)^(-power) expanded up to x^prec (r = ``ratio`` or 1)."""
    one = _one_like(coeff_zero)
    d = {}
    rk = one
    for k in range(prec + 1):
        d[k] = rk * math.comb(power - 1 + k, k)
        if ratio is not None:
            rk = rk * ratio
    if power == 0:
        d = {0: one}
    return LaurentX(d, prec=prec, zero=coeff_zero)


# ---------------------------------------------------------------------------
# truncated power series


class TSeries:
    """Power series sum_{n<=order} c_n t^n over a coefficient ring."""

    __slots__ = ("c", "zero", "var")

    def __init__(self, coeffs: Iterable, order: int | None = None, zero=None, var: str = "t"):
        c = list(coeffs)
        if zero is None:
            zero = _zero_like(c[0]) if c else ZERO
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            c = c[: order + 1] + [zero] * (order + 1 - len(c))
        if not c:
            raise ValueError("empty TSeries")
        self.c = tuple(c)
        self.zero = zero
        self.var = var

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @property
    def coeffs(self):
        return self.c

    @classmethod
    def const(cls, a, order: int, var="t"):
        return cls([a], order=order, zero=_zero_like(a), var=var)

    @classmethod
    def gen(cls, order: int, one=ONE, var="t"):
        return cls([_zero_like(one), one], order=order, zero=_zero_like(one), var=var)

    def __getitem__(self, n: int):
        if n > self.order:
            raise WindowOverflow(f"{self.var}^{n} beyond order {self.order}")
        if n < 0:
            return self.zero
        return self.c[n]

    def _same(self, o):
        if not isinstance(o, TSeries):
            return None
        if o.var != self.var:
            raise RingMismatch(f"series in {self.var} and {o.var}")
        return o

    def __add__(self, other):
        o = self._same(other)
        if o is None:
            c = list(self.c)
            c[0] = c[0] + other
            return TSeries(c, zero=self.zero, var=self.var)
        n = min(self.order, o.order)
        return TSeries([self.c[i] + o.c[i] for i in range(n + 1)], zero=self.zero, var=self.var)

    __radd__ = __add__

    def __neg__(self):
        return TSeries([-a for a in self.c], zero=self.zero, var=self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._same(other)
        if o is None:
            return TSeries([a * other for a in self.c], zero=_zero_like(self.c[0] * other)
                           if self.c else self.zero, var=self.var)
        return series_mul(self, o)

    def __rmul__(self, other):
        return TSeries([other * a for a in self.c], var=self.var)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TSeries.const(_one_like(self.zero), self.order, var=self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, TSeries):
            return self * other.inverse()
        return TSeries([a / other for a in self.c], var=self.var)

    def __eq__(self, other):
        o = self._same(other) if isinstance(other, TSeries) else None
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.var, self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def truncate(self, order: int) -> "TSeries":
        if order > self.order:
            raise WindowOverflow(f"cannot extend order {self.order} to {order}")
        return TSeries(self.c[: order + 1], zero=self.zero, var=self.var)

    def valuation(self):
        for i, a in enumerate(self.c):
            if a:
                return i
        return _INF

    def shift(self, k: int) -> "TSeries":
        """Multiply by t^k; for k < 0 the dropped coefficients must vanish."""
        if k >= 0:
            return TSeries([self.zero] * k + list(self.c), zero=self.zero, var=self.var)
        if any(self.c[: -k]):
            raise ArithmeticError(f"division by {self.var}^{-k} is not exact")
        return TSeries(self.c[-k:], zero=self.zero, var=self.var)

    def map(self, fn) -> "TSeries":
        c = [fn(a) for a in self.c]
        return TSeries(c, var=self.var)

    def derivative(self) -> "TSeries":
        """d/dt; the result has order one less."""
        if self.order == 0:
            return TSeries([self.zero], var=self.var)
        return TSeries([self.c[n] * n for n in range(1, self.order + 1)], zero=self.zero, var=self.var)

    def inverse(self) -> "TSeries":
        """1/f for f with an invertible constant term."""
        c0 = self.c[0]
        inv0 = _inverse_scalar(c0)
        n = self.order
        res = [inv0]
        for k in range(1, n + 1):
            acc = None
            for i in range(1, k + 1):
                if self.c[i]:
                    term = self.c[i] * res[k - i]
                    acc = term if acc is None else acc + term
            res.append(self.zero if acc is None else -(acc * inv0))
        return TSeries(res, zero=self.zero, var=self.var)

    def compose(self, g: "TSeries") -> "TSeries":
        """f(g) for g with zero constant term (Horner)."""
        if g.c[0]:
            raise ArithmeticError("composition needs g with zero constant term")
        n = min(self.order, g.order)
        r = TSeries.const(self.c[n], n, var=g.var)
        gt = g.truncate(n)
        for k in range(n - 1, -1, -1):
            r = r * gt + self.c[k]
        return r

    def sqrt(self) -> "TSeries":
        """Square root of a series with constant term 1."""
        if self.c[0] != 1:
            raise ArithmeticError("sqrt needs constant term 1")
        n = self.order
        res = [self.c[0]]
        half = Fraction(1, 2)
        for k in range(1, n + 1):
            acc = self.c[k]
            for i in range(1, k):
                acc = acc - res[i] * res[k - i]
            res.append(acc * half)
        return TSeries(res, zero=self.zero, var=self.var)

    def power_frac(self, e: Fraction) -> "TSeries":
        """(1 + h)^e by the binomial series, for constant term 1."""
        if self.c[0] != 1:
            raise ArithmeticError("fractional power needs constant term 1")
        h = self - 1
        n = self.order
        out = TSeries.const(_one_like(self.zero), n, var=self.var)
        term = TSeries.const(_one_like(self.zero), n, var=self.var)
        coef = Fraction(1)
        for k in range(1, n + 1):
            term = term * h
            coef = coef * (e - k + 1) / k
            out = out + term * coef
        return out

    def __repr__(self):
        return f"TSeries({self})"

    def __str__(self):
        parts = [f"({a})*{self.var}^{i}" for i, a in enumerate(self.c) if a]
        return (" + ".join(parts) if parts else "0") + f" + O({self.var}^{self.order + 1})"


class QSeries(TSeries):
    """Series in q with coefficients polynomial in omega."""

    def __init__(self, coeffs, order=None, zero=None, var="q"):
        super().__init__(coeffs, order=order, zero=zero, var=var)


def _inverse_scalar(c0):
    if isinstance(c0, BivarPoly):
        if not c0 or not c0.is_constant():
            raise ArithmeticError(f"non-unit constant term {c0}")
        return BivarPoly(1 / c0.constant_value())
    if isinstance(c0, float):
        return 1.0 / c0
    if isinstance(c0, LaurentX):
        raise ArithmeticError("inverse of a Laurent coefficient is not supported")
    if not c0:
        raise ArithmeticError("zero constant term")
    return Fraction(1) / c0


def series_mul(a: TSeries, b: TSeries) -> TSeries:
    """Cauchy product truncated at min(order(a), order(b))."""
    if a.var != b.var:
        raise RingMismatch(f"series in {a.var} and {b.var}")
    ka, kb = type(a.zero), type(b.zero)
    if ka is not kb and not (issubclass(ka, (int, Fraction)) and issubclass(kb, (int, Fraction))):
        if not (ka is BivarPoly and kb is LaurentX) and not (kb is BivarPoly and ka is LaurentX):
            raise RingMismatch(f"coefficient rings {ka.__name__} and {kb.__name__}")
    n = min(a.order, b.order)
    zero = b.zero if isinstance(b.zero, LaurentX) else a.zero
    res = [None] * (n + 1)
    for i in range(n + 1):
        ai = a.c[i]
        if not ai:
            continue
        for j in range(n + 1 - i):
            bj = b.c[j]
            if not bj:
                continue
            p = ai * bj
            r = res[i + j]
            res[i + j] = p if r is None else r + p
    return TSeries([zero if r is None else r for r in res], zero=zero, var=a.var)


def series_reversion(f: TSeries) -> TSeries:
    """Compositional inverse of f = t + O(t^2), by Newton iteration."""
    if f.c[0]:
        raise ArithmeticError("reversion needs zero constant term")
    if f.order < 1 or f.c[1] != 1:
        raise ArithmeticError("reversion needs unit linear coefficient")
    n = f.order
    one = _one_like(f.zero)
    t = TSeries.gen(n, one, var=f.var)
    g = t
    fp = f.derivative()
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        gt = g.truncate(prec)
        err = f.truncate(prec).compose(gt) - t.truncate(prec)
        d = fp.truncate(prec - 1).compose(gt.truncate(prec - 1)) if prec > 1 else None
        if d is None:
            corr = err
        else:
            dfull = TSeries(list(d.c) + [d.zero], zero=d.zero, var=f.var)
            corr = err * dfull.inverse()
        g = TSeries(list((gt - corr).c), order=n, zero=f.zero, var=f.var)
    return g


def laurent_part(f, lo=None, hi=None):
    """Keep exponents in [lo, hi] of a LaurentX or a TSeries over LaurentX."""
    if isinstance(f, LaurentX):
        return f.part(lo, hi)
    if isinstance(f, TSeries):
        return f.map(lambda a: a.part(lo, hi))
    raise RingMismatch("laurent_part expects LaurentX or TSeries over LaurentX")


def substitute(f, rule: str, **kw):
    """Exact substitution with truncation bookkeeping.

    rules: ``"1/x"``, ``"t/x"``, ``"1/(1-x)"``, ``"xt"`` (x -> x*t),
    ``"omega"`` / ``"v"`` (scalar value given as ``value=``).
    """
    if rule in ("omega", "v"):
        val = kw["value"]
        key = {"omega": val} if rule == "omega" else {"v": val}
        return _map_coeffs(f, lambda p: p.subs(**key))
    if isinstance(f, LaurentX):
        if rule == "1/x":
            return f.reflect()
        if rule == "1/(1-x)":
            prec = kw.get("prec")
            if f.prec is not None:
                raise WindowOverflow("x -> 1/(1-x) on a truncated series")
            if prec is None:
                raise WindowOverflow("x -> 1/(1-x) needs an output precision")
            out = LaurentX({}, prec=prec, zero=f.zero)
            for k, a in f.coeffs.items():
                if k >= 0:
                    out = out + geometric(k, prec, f.zero).scale(a)
                else:
                    poly = {i: _one_like(f.zero) * ((-1) ** i * math.comb(-k, i)) for i in range(-k + 1)}
                    out = out + LaurentX(poly, zero=f.zero).scale(a).truncate(prec)
            return out
        raise ValueError(f"unsupported rule {rule} for LaurentX")
    if isinstance(f, TSeries):
        if rule in ("1/x", "1/(1-x)"):
            return f.map(lambda a: substitute(a, rule, **kw))
        if rule == "t/x":
            # [t^n x^k] -> t^(n+k) x^(-k)
            n = f.order
            zero = f.zero
            out = [LaurentX({}, zero=zero.zero) for _ in range(n + 1)]
            for m, a in enumerate(f.c):
                for k, ck in a.coeffs.items():
                    if m + k < 0:
                        raise WindowOverflow("x -> t/x produced a negative t power")
                    if m + k <= n:
                        out[m + k] = out[m + k] + LaurentX({-k: ck}, zero=zero.zero)
                if a.prec is not None and m + a.prec < n:
                    raise WindowOverflow(f"x -> t/x needs x-precision {n - m} at t^{m}")
            return TSeries(out, zero=LaurentX({}, zero=zero.zero), var=f.var)
        if rule == "xt":
            # [t^n x^k] -> t^(n+k) x^k
            n = f.order
            zero = f.zero
            out = [LaurentX({}, zero=zero.zero) for _ in range(n + 1)]
            for m, a in enumerate(f.c):
                if a.prec is not None and m + a.prec < n:
                    raise WindowOverflow(f"x -> xt needs x-precision {n - m} at t^{m}")
                for k, ck in a.coeffs.items():
                    if m + k < 0:
                        raise WindowOverflow("x -> xt produced a negative t power")
                    if m + k <= n:
                        out[m + k] = out[m + k] + LaurentX({k: ck}, zero=zero.zero)
            return TSeries(out, zero=LaurentX({}, zero=zero.zero), var=f.var)
    raise ValueError(f"unsupported substitution {rule} on {type(f).__name__}")


def _map_coeffs(f, fn):
    if isinstance(f, BivarPoly):
        return fn(f)
    if isinstance(f, LaurentX):
        return LaurentX._make(f.lo, [_map_coeffs(a, fn) for a in f.c], f.prec, _map_coeffs(f.zero, fn))
    if isinstance(f, TSeries):
        return TSeries([_map_coeffs(a, fn) for a in f.c], zero=_map_coeffs(f.zero, fn), var=f.var)
    return f


# ---------------------------------------------------------------------------
# window validation


def widen_window(w: int) -> int:
    """The 25% widening used by the validation protocol."""
    return w + max(1, math.ceil(abs(w) * 0.25))


def widen_and_compare(compute: Callable[[int], object], window: int,
                      compare: Callable[[object, object], bool]):
    """Run ``compute`` at ``window`` and at the widened window.

    ``compare(narrow, wide)`` must confirm agreement on the narrow window,
    otherwise :class:`WindowMismatch` is raised.  Returns the narrow result.
    """
    narrow = compute(window)
    wide = compute(widen_window(window))
    if not compare(narrow, wide):
        raise WindowMismatch(f"result changed when widening window {window}")
    return narrow


# ---------------------------------------------------------------------------
# canonical JSON


def _poly_rows(p: BivarPoly, deg_t: int = 0):
    return [[deg_t, i, j, str(c.numerator), str(c.denominator)] for (i, j), c in p.items()]


def to_json(obj) -> str:
    """Canonical JSON rows ``[deg_t, deg_omega, deg_v, num, den]``."""
    if isinstance(obj, BivarPoly):
        rows = _poly_rows(obj)
    elif isinstance(obj, TSeries):
        rows = []
        for n, a in enumerate(obj.c):
            if not isinstance(a, BivarPoly):
                raise RingMismatch("JSON form is defined for series over BivarPoly")
            rows.extend(_poly_rows(a, n))
        return json.dumps({"order": obj.order, "var": obj.var, "terms": rows}, separators=(",", ":"))
    else:
        raise RingMismatch(f"cannot serialise {type(obj).__name__}")
    return json.dumps(rows, separators=(",", ":"))


def from_json(text: str):
    data = json.loads(text)
    if isinstance(data, dict):
        order = data["order"]
        polys = [dict() for _ in range(order + 1)]
        for dt, i, j, num, den in data["terms"]:
            polys[dt][(i, j)] = Fraction(int(num), int(den))
        return TSeries([BivarPoly(d) for d in polys], var=data.get("var", "t"))
    d = {}
    for _, i, j, num, den in data:
        d[(i, j)] = Fraction(int(num), int(den))
    return BivarPoly(d)


def parse_poly(text: str) -> BivarPoly:
    """Parse strings like ``2*w^2*v + 3/4`` (``ω`` accepted for ``w``)."""
    import sympy

    w, v = sympy.symbols("w v")
    expr = sympy.sympify(text.replace("ω", "w").replace("omega", "w").replace("^", "**"),
                         locals={"w": w, "v": v})
    poly = sympy.Poly(sympy.expand(expr), w, v)
    return BivarPoly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})
