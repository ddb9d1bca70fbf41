"""Two-parameter quantum numbers and the scalar field they are evaluated in.

Exponents and labels stay exact (:class:`fractions.Fraction`) until the
moment a scalar is needed; the conversion happens in a :class:`Field`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Union

import mpmath

Rational = Union[int, Fraction]

DEFAULT_PRECISION = 128
DOUBLE_PRECISION = 53


def as_rational(value: Any) -> Fraction:
    """Exact rational from int, Fraction, Decimal, float or a decimal/"n/d" string.

    Floats go through their shortest repr, so ``0.8`` becomes ``4/5``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not labels")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def default_precision() -> int:
    raw = os.environ.get("QGL_PRECISION")
    if not raw:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"QGL_PRECISION must be an integer, got {raw!r}") from exc


def default_tolerance(precision: int) -> float:
    # about 13 decimal digits of headroom, never looser than 1e-10
    if precision <= DOUBLE_PRECISION:
        return 1e-10
    digits = int(precision * math.log10(2))
    return 10.0 ** (-max(10, digits - 13))


class Field:
    """Scalar arithmetic backend. Values are opaque to callers."""

    precision: int

    def num(self, x: Rational) -> Any:
        raise NotImplementedError

    def sqrt(self, x: Any) -> Any:
        raise NotImplementedError

    def power(self, base: Any, e: Rational) -> Any:
        raise NotImplementedError

    def to_str(self, x: Any) -> str:
        raise NotImplementedError

    def parse(self, s: str) -> Any:
        raise NotImplementedError

    @property
    def zero(self) -> Any:
        return self.num(0)

    @property
    def one(self) -> Any:
        return self.num(1)


class MPField(Field):
    """Binary floating point with a fixed mantissa width, via a private mpmath context."""

    def __init__(self, precision: int):
        self.precision = precision
        self.ctx = mpmath.MPContext()
        self.ctx.prec = precision
        self._dps = mpmath.libmp.repr_dps(precision)

    def num(self, x):
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return self.ctx.mpf(x.numerator)
            return self.ctx.mpf(x.numerator) / x.denominator
        return self.ctx.mpf(x)

    def sqrt(self, x):
        if x < 0:
            raise ValueError(f"square root of negative value {x}")
        return self.ctx.sqrt(x)

    def power(self, base, e):
        if isinstance(e, int) or getattr(e, "denominator", None) == 1:
            return base ** int(e)
        return base ** self.num(e)

    def to_str(self, x) -> str:
        return mpmath.libmp.to_str(self.ctx.mpf(x)._mpf_, self._dps)

    def parse(self, s: str):
        return self.ctx.mpf(s)

    def __repr__(self):
        return f"MPField({self.precision})"


class FloatField(Field):
    """Plain IEEE doubles; for quick runs."""

    precision = DOUBLE_PRECISION

    def num(self, x):
        return float(x)

    def sqrt(self, x):
        if x < 0:
            raise ValueError(f"square root of negative value {x}")
        return math.sqrt(x)

    def power(self, base, e):
        if isinstance(e, int) or getattr(e, "denominator", None) == 1:
            return base ** int(e)
        return base ** float(e)

    def to_str(self, x) -> str:
        return repr(float(x))

    def parse(self, s: str):
        return float(s)

    def __repr__(self):
        return "FloatField()"


@lru_cache(maxsize=None)
def make_field(precision: int) -> Field:
    if precision == DOUBLE_PRECISION:
        return FloatField()
    return MPField(precision)


@dataclass(frozen=True)
class Params:
    """Deformation parameters plus numeric configuration.

    ``p`` and ``q`` are stored exactly. With ``classical=True`` the
    undeformed limit is used instead: ``bracket(x) = x`` and every ratio
    power is 1 (``p`` and ``q`` must then both be 1).
    """

    p: Fraction
    q: Fraction
    precision: int = field(default_factory=default_precision)
    tolerance: float | None = None
    classical: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "q", as_rational(self.q))
        if self.p <= 0 or self.q <= 0:
            raise ValueError("p and q must be positive")
        if self.classical:
            if self.p != 1 or self.q != 1:
                raise ValueError("classical parameters require p = q = 1")
        elif self.p * self.q == 1:
            raise ValueError("p*q = 1 makes the bracket denominator vanish")
        if int(self.precision) < DOUBLE_PRECISION:
            raise ValueError("precision must be at least 53 bits")
        object.__setattr__(self, "precision", int(self.precision))
        if self.tolerance is None:
            object.__setattr__(self, "tolerance", default_tolerance(self.precision))
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    @classmethod
    def classical_limit(cls, precision: int | None = None, tolerance: float | None = None) -> "Params":
        return cls(1, 1, precision or default_precision(), tolerance, classical=True)

    @cached_property
    def field(self) -> Field:
        return make_field(self.precision)

    @cached_property
    def ps(self):
        return self.field.num(self.p)

    @cached_property
    def qs(self):
        return self.field.num(self.q)

    @cached_property
    def _memo(self) -> dict:
        return {}

    @cached_property
    def _denominator(self):
        return self.qs - 1 / self.ps

    def bracket(self, x: Rational):
        return bracket(x, self)

    def ratio_pow(self, x: Rational):
        return ratio_pow(x, self)

    def with_tolerance(self, tolerance: float) -> "Params":
        return Params(self.p, self.q, self.precision, tolerance, self.classical)


def bracket(x: Rational, params: Params):
    """(q^x - p^-x) / (q - p^-1) in the scalar field of ``params``."""
    key = ("bracket", x)
    memo = params._memo
    if key in memo:
        return memo[key]
    fld = params.field
    x = Fraction(x)
    if params.classical:
        out = fld.num(x)
    elif x == 0:
        out = fld.zero
    else:
        out = (fld.power(params.qs, x) - fld.power(params.ps, -x)) / params._denominator
    memo[key] = out
    return out


def ratio_pow(x: Rational, params: Params):
    """(q/p)^x."""
    fld = params.field
    x = Fraction(x)
    if params.classical or x == 0 or params.p == params.q:
        return fld.one
    key = ("ratio", x)
    memo = params._memo
    if key not in memo:
        memo[key] = fld.power(params.qs / params.ps, x)
    return memo[key]


def r_commutator(X, Y, r):
    """X Y - r Y X."""
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch {X.shape} vs {Y.shape}")
    return X @ Y - (Y @ X) * r
