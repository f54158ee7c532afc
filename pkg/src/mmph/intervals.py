"""Interval evaluation for coordinatizations that have no exact normal form.

Each precision gets its own mpmath interval context, so no global precision
is ever read or changed.  A zero test that cannot be settled at the
requested precision is retried at double precision up to ``MAX_PRECISION``
and then reported as ambiguous.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from mpmath.ctx_iv import MPIntervalContext

from .algebra import QQ, QQ_OMEGA, Scalar
from .errors import AmbiguousInterval

MIN_CERTIFY_PRECISION = 256
MAX_PRECISION = 4096


@lru_cache(maxsize=None)
def context(precision: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = precision
    return ctx


@dataclass(frozen=True)
class ApproxScalar:
    """Complex interval ``re + i*im``; ``im`` is None for real values."""

    re: object
    im: object = None
    precision: int = 0

    def _ctx(self, other=None):
        p = self.precision
        if isinstance(other, ApproxScalar):
            p = max(p, other.precision)
        return context(p)

    def _lift(self, other):
        if isinstance(other, ApproxScalar):
            return other
        ctx = self._ctx()
        return ApproxScalar(ctx.mpf(other), None, self.precision)

    def __add__(self, other):
        o = self._lift(other)
        im = _add(self.im, o.im)
        return ApproxScalar(self.re + o.re, im, max(self.precision, o.precision))

    __radd__ = __add__

    def __neg__(self):
        return ApproxScalar(-self.re, None if self.im is None else -self.im, self.precision)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        p = max(self.precision, o.precision)
        if self.im is None and o.im is None:
            return ApproxScalar(self.re * o.re, None, p)
        a, b = self.re, self.im
        c, d = o.re, o.im
        re = a * c
        im = None
        if b is not None and d is not None:
            re = re - b * d
        if b is not None:
            im = b * c
        if d is not None:
            im = a * d if im is None else im + a * d
        return ApproxScalar(re, im, p)

    __rmul__ = __mul__

    def conj(self):
        return self if self.im is None else ApproxScalar(self.re, -self.im, self.precision)

    def width(self):
        w = self.re.delta
        if self.im is not None:
            w = max(w, self.im.delta)
        return float(w.b)

    def magnitude_bound(self):
        """Upper bound on max(|re|, |im|)."""
        def mag(x):
            return max(abs(x.a), abs(x.b))
        m = mag(self.re)
        if self.im is not None:
            m = max(m, mag(self.im))
        return m

    def excludes_zero(self) -> bool:
        def out(x):
            return x.a > 0 or x.b < 0
        if out(self.re):
            return True
        return self.im is not None and bool(out(self.im))

    def within(self, eps) -> bool:
        def inside(x):
            return x.a >= -eps and x.b <= eps
        return bool(inside(self.re)) and (self.im is None or bool(inside(self.im)))

    def __float__(self):
        return float(self.re.mid)

    def mid(self) -> complex:
        return complex(float(self.re.mid), 0.0 if self.im is None else float(self.im.mid))


def _add(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return x + y


def approx_scalar(s: Scalar | int, precision: int) -> ApproxScalar:
    """Enclosure of an exact scalar."""
    ctx = context(precision)
    s = Scalar.coerce(s)
    a = ctx.mpf(s.a.numerator) / s.a.denominator
    if not s.b:
        return ApproxScalar(a, None, precision)
    b = ctx.mpf(s.b.numerator) / s.b.denominator
    if s.ring is QQ_OMEGA:
        # w = -1/2 + i*sqrt(3)/2
        return ApproxScalar(a - b / 2, b * ctx.sqrt(3) / 2, precision)
    return ApproxScalar(a + b * ctx.sqrt(s.ring.p), None, precision)


# ---------------------------------------------------------------------------
# constants of the original Kochen-Specker coordinatization

# (p, q, r) exponents of f(p, q, r) = sqrt(2**p * sqrt(5)**q * phi**r)
KS_EXPONENTS = {
    1: (-1, 0, 0), 2: (0, 0, -1), 3: (-1, 1, -3), 4: (-1, 0, -2),
    5: (0, -1, -6), 6: (-1, -1, -5), 7: (2, -1, 0), 8: (-1, -1, -3),
    9: (0, -1, -2), 10: (0, 0, -5), 11: (-1, 0, -6), 12: (2, -1, -2),
    13: (-1, -1, 3), 14: (2, -1, -4),
}


def f_monomial(p, q, r, precision: int):
    ctx = context(precision)
    phi = (1 + ctx.sqrt(5)) / 2
    return ctx.sqrt(ctx.mpf(2) ** p * ctx.sqrt(5) ** q * phi ** r)


@lru_cache(maxsize=32)
def ks_constants(precision: int) -> dict:
    """Interval values of c1..c16 keyed ``"c1"``.. ``"c16"``, plus ``"f"``.

    c15 and c16 have no integer (p, q, r); they are evaluated from their
    closed radical forms.
    """
    if precision < 64:
        raise ValueError("ks_constants needs at least 64 bits")
    ctx = context(precision)
    out: dict = {f"c{i}": f_monomial(*e, precision) for i, e in KS_EXPONENTS.items()}
    s5 = ctx.sqrt(5)
    out["c15"] = 3 * ctx.sqrt((5 - 2 * s5) / 10)
    out["c16"] = ctx.sqrt((85 - 31 * s5) / 5) / 2
    out["f"] = lambda p, q, r: f_monomial(p, q, r, precision)
    return out


@dataclass(frozen=True)
class KSConst:
    """Signed reference ``±c_index`` to a Kochen-Specker constant."""

    index: int
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.index <= 16 or self.sign not in (1, -1):
            raise ValueError(f"bad constant reference {self!r}")

    def __neg__(self):
        return KSConst(self.index, -self.sign)

    def __str__(self):
        return ("-" if self.sign < 0 else "") + f"c{self.index}"


def approx(entry, precision: int) -> ApproxScalar:
    if isinstance(entry, KSConst):
        v = ks_constants(precision)[f"c{entry.index}"]
        return ApproxScalar(v if entry.sign > 0 else -v, None, precision)
    return approx_scalar(entry, precision)


def approx_inner(u, v, precision: int) -> ApproxScalar:
    total = ApproxScalar(context(precision).mpf(0), None, precision)
    for x, y in zip(u, v):
        if _is_exact_zero(x) or _is_exact_zero(y):
            continue
        total = total + approx(x, precision).conj() * approx(y, precision)
    return total


def _is_exact_zero(x) -> bool:
    return isinstance(x, (Scalar, int)) and not x


# ---------------------------------------------------------------------------
# zero certification


@dataclass(frozen=True)
class ZeroTest:
    zero: bool
    precision: int
    width: float
    value: ApproxScalar


def certify_zero(evaluate: Callable[[int], ApproxScalar], precision: int = MIN_CERTIFY_PRECISION,
                 *, max_precision: int = MAX_PRECISION) -> ZeroTest:
    """Decide whether the quantity computed by ``evaluate(bits)`` is zero.

    Nonzero is certain once the enclosure excludes 0.  Zero is accepted when,
    at no less than 256 bits, the enclosure lies within ``2**-(bits/2)``; the
    quantities checked here are finite sums of products of the f-constants,
    for which this is the intended reading of "zero".
    """
    bits = precision
    while bits <= max_precision:
        val = evaluate(bits)
        if val.excludes_zero():
            return ZeroTest(False, bits, val.width(), val)
        if bits >= MIN_CERTIFY_PRECISION:
            eps = context(bits).mpf(2) ** (-(bits // 2))
            if val.within(eps):
                return ZeroTest(True, bits, val.width(), val)
        bits *= 2
    raise AmbiguousInterval(f"zero test undecided at {max_precision} bits")
