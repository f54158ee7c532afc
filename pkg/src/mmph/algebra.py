"""Exact scalars and vectors over Q and its quadratic extensions.

Every ring here is Q(e) with e**2 = p + q*e, so an element is a pair of
rationals ``a + b*e``.  Supported: Q, Q(sqrt 2), Q(sqrt 5) and Q(omega) with
omega = exp(2 pi i / 3), where omega**2 = -1 - omega.  Complex conjugation
is the identity on the real rings and omega -> omega**2 on Q(omega).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, gcd
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    InsufficientRank,
    NotOrthogonal,
    ParseError,
    RingMismatch,
    UnsupportedAtom,
    ZeroVector,
)


@dataclass(frozen=True)
class Ring:
    name: str
    atom: str | None  # text of the generator in the scalar grammar
    p: int = 0
    q: int = 0
    real: bool = True

    def __repr__(self):
        return self.name


QQ = Ring("QQ", None)
QQ_SQRT2 = Ring("QQ(sqrt2)", "sqrt(2)", 2, 0)
QQ_SQRT5 = Ring("QQ(sqrt5)", "sqrt(5)", 5, 0)
QQ_OMEGA = Ring("QQ(w)", "w", -1, -1, real=False)
RINGS = {r.name: r for r in (QQ, QQ_SQRT2, QQ_SQRT5, QQ_OMEGA)}


def _join(r: Ring, s: Ring) -> Ring:
    if r is s or s is QQ:
        return r
    if r is QQ:
        return s
    raise RingMismatch(f"cannot combine {r} and {s}")


class Scalar:
    """Exact element ``a + b*e`` of one of the configured rings."""

    __slots__ = ("a", "b", "ring")

    def __init__(self, a=0, b=0, ring: Ring = QQ):
        a = Fraction(a)
        b = Fraction(b)
        if b and ring is QQ:
            raise RingMismatch("QQ has no generator")
        self.a, self.b = a, b
        self.ring = ring if b else QQ

    # the ring of a scalar with b == 0 is normalised to QQ so that, e.g., the
    # integer 2 compares equal whichever table it was read from.

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot use {type(x).__name__} as a Scalar")

    def _bin(self, other):
        other = Scalar.coerce(other)
        return other, _join(self.ring, other.ring)

    def __add__(self, other):
        try:
            other, r = self._bin(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.a + other.a, self.b + other.b, r)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.ring)

    def __sub__(self, other):
        try:
            other, r = self._bin(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.a - other.a, self.b - other.b, r)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other, r = self._bin(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return Scalar(a * c + r.p * bd, a * d + b * c + r.q * bd, r)

    __rmul__ = __mul__

    def galois(self) -> "Scalar":
        """Image under e -> (q - e), the other root of the minimal polynomial."""
        return Scalar(self.a + self.b * self.ring.q, -self.b, self.ring)

    def norm(self) -> Fraction:
        r = self.ring
        return self.a * self.a + self.a * self.b * r.q - r.p * self.b * self.b

    def conj(self) -> "Scalar":
        return self if self.ring.real else self.galois()

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        g = self.galois()
        return Scalar(g.a / n, g.b / n, self.ring)

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b and (
            not self.b or self.ring is other.ring)

    def __hash__(self):
        return hash((self.a, self.b, self.ring.name if self.b else None))

    def sort_key(self):
        return (self.ring.name if self.b else "", self.a, self.b)

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def to_complex(self) -> complex:
        r = self.ring
        if r is QQ:
            e = 0.0
        elif r is QQ_OMEGA:
            e = complex(-0.5, 3 ** 0.5 / 2)
        else:
            e = r.p ** 0.5
        return complex(float(self.a) + float(self.b) * e)


ZERO = Scalar(0)
ONE = Scalar(1)


def _fmt_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(s: Scalar) -> str:
    """Text in the grammar accepted by :func:`parse_scalar`."""
    if not s.b:
        return _fmt_q(s.a)
    atom = s.ring.atom
    if s.b == 1:
        tail = atom
    elif s.b == -1:
        tail = "-" + atom
    else:
        tail = f"{_fmt_q(s.b)}*{atom}"
    if not s.a:
        return tail
    return f"{_fmt_q(s.a)}{'' if tail.startswith('-') else '+'}{tail}"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt\(\s*(\d+)\s*\))|(w2|w|phi)|([-+*/()]))")


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise UnsupportedAtom(f"cannot read {text[pos:]!r}", pos)
        pos = m.end()
        if m.group(1):
            yield ("num", int(m.group(1)))
        elif m.group(2):
            k = int(m.group(3))
            if k == 2:
                yield ("atom", Scalar(0, 1, QQ_SQRT2))
            elif k == 5:
                yield ("atom", Scalar(0, 1, QQ_SQRT5))
            elif k in (0, 1, 4, 9):
                yield ("num", int(k ** 0.5))
            else:
                raise UnsupportedAtom(f"sqrt({k}) is not in a configured ring", m.start())
        elif m.group(4):
            yield ("atom", {"w": Scalar(0, 1, QQ_OMEGA),
                            "w2": Scalar(-1, -1, QQ_OMEGA),
                            "phi": Scalar(Fraction(1, 2), Fraction(1, 2), QQ_SQRT5)}[m.group(4)])
        else:
            yield ("op", m.group(5))


class _Parser:
    def __init__(self, text):
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            kind, tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.unary()
                val = val * rhs if tok == "*" else val / rhs
            elif kind in ("num", "atom") or tok == "(":
                val = val * self.unary()  # implicit product, as in "2w"
            else:
                return val

    def unary(self):
        kind, tok = self.peek()
        if tok in ("-", "+"):
            self.take()
            v = self.unary()
            return -v if tok == "-" else v
        return self.atom()

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return Scalar(tok)
        if kind == "atom":
            return tok
        if tok == "(":
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return v
        raise ParseError(f"unexpected token {tok!r}")


def parse_scalar(text: str) -> Scalar:
    """Read integers, ``p/q``, ``sqrt(2)``, ``sqrt(5)``, ``phi``, ``w``, ``w2``
    combined with ``+ - * /`` and parentheses (``*`` may be left out)."""
    p = _Parser(text)
    try:
        v = p.expr()
    except RingMismatch as exc:
        raise UnsupportedAtom(str(exc)) from None
    if p.i != len(p.toks):
        raise ParseError(f"trailing input in {text!r}")
    return v


def parse_vector(text: str) -> tuple[Scalar, ...]:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    return tuple(parse_scalar(x) for x in body.split(","))


def format_vector(v: Sequence[Scalar]) -> str:
    return "(" + ",".join(format_scalar(Scalar.coerce(x)) for x in v) + ")"


def vec(*entries) -> tuple[Scalar, ...]:
    """Shorthand: ``vec(1, 0, "w")``."""
    return tuple(parse_scalar(x) if isinstance(x, str) else Scalar.coerce(x) for x in entries)


# ---------------------------------------------------------------------------
# vectors and rays


def vector_ring(v: Iterable[Scalar]) -> Ring:
    r = QQ
    for x in v:
        r = _join(r, x.ring)
    return r


def inner_product(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """Hermitian product, conjugate-linear in ``u``."""
    if len(u) != len(v):
        raise DimensionMismatch(f"dimensions {len(u)} and {len(v)}")
    total = ZERO
    for x, y in zip(u, v):
        if x and y:
            total = total + Scalar.coerce(x).conj() * y
    return total


def scale(c, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    c = Scalar.coerce(c)
    return tuple(c * x for x in v)


def ray_canonical(v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Representative of the projective class of ``v``: first nonzero entry 1."""
    v = tuple(Scalar.coerce(x) for x in v)
    for x in v:
        if x:
            inv = x.inverse()
            return tuple(inv * y for y in v)
    raise ZeroVector("the zero vector has no ray")


def same_ray(u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
    return ray_canonical(u) == ray_canonical(v)


def primitive(v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Scale to integer coefficients with no common factor and a positive
    leading coefficient; handy for display, not a ray invariant across rings."""
    v = tuple(Scalar.coerce(x) for x in v)
    den = 1
    for x in v:
        den = lcm(den, x.a.denominator, x.b.denominator)
    w = [Scalar(x.a * den, x.b * den, x.ring) for x in v]
    g = 0
    for x in w:
        g = gcd(g, int(x.a), int(x.b))
    if g == 0:
        raise ZeroVector("the zero vector has no ray")
    w = [Scalar(x.a / g, x.b / g, x.ring) for x in w]
    lead = next(x for x in w if x)
    if lead.a < 0 or (lead.a == 0 and lead.b < 0):
        w = [-x for x in w]
    return tuple(w)


def _null_space(rows: list[list[Scalar]], n: int) -> list[list[Scalar]]:
    """Basis of {x : row . x = 0 for every row}, by exact Gauss-Jordan."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [inv * x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        x = [ZERO] * n
        x[fcol] = ONE
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fcol]
        basis.append(x)
    return basis


def gram_schmidt(vs: Sequence[Sequence[Scalar]]) -> list[tuple[Scalar, ...]]:
    """Exact Hermitian Gram-Schmidt without normalisation."""
    out: list[tuple[Scalar, ...]] = []
    for v in vs:
        w = tuple(Scalar.coerce(x) for x in v)
        for b in out:
            c = inner_product(b, w) / inner_product(b, b)
            w = tuple(x - c * y for x, y in zip(w, b))
        if any(w):
            out.append(w)
    return out


def orthocomplement_completion(vs: Sequence[Sequence[Scalar]], dim: int, *,
                               mix: int = 0) -> list[tuple[Scalar, ...]]:
    """Extend mutually orthogonal ``vs`` to ``dim`` mutually orthogonal vectors.

    Returns only the added vectors, scaled by :func:`primitive`.  ``mix``
    picks a different (still exact) basis of the complement; callers use it
    to dodge rays that are already taken.
    """
    vs = [tuple(Scalar.coerce(x) for x in v) for v in vs]
    for v in vs:
        if len(v) != dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {dim}")
        if not any(v):
            raise ZeroVector("cannot complete a zero vector")
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if inner_product(vs[i], vs[j]):
                raise NotOrthogonal(f"input vectors {i} and {j} are not orthogonal")
    if len(vs) >= dim:
        if len(vs) == dim:
            return []
        raise InsufficientRank("more vectors than the dimension")
    # x orthogonal to v  <=>  sum conj(v_i) x_i = 0
    basis = _null_space([[x.conj() for x in v] for v in vs], dim)
    if len(basis) != dim - len(vs):
        raise InsufficientRank("input vectors are linearly dependent")
    if mix:
        # unit upper-triangular change of basis: invertible, and it changes
        # the flag of spans that Gram-Schmidt follows
        t = len(basis)
        mixed = []
        for i in range(t):
            row = list(basis[i])
            for j in range(i + 1, t):
                c = (mix * (i + 2) + 3 * j) % 5 - 2
                if c:
                    row = [x + c * y for x, y in zip(row, basis[j])]
            mixed.append(row)
        basis = mixed
    out = gram_schmidt(basis)
    if len(out) != dim - len(vs):
        raise InsufficientRank("complement basis degenerated")
    return [primitive(w) for w in out]
