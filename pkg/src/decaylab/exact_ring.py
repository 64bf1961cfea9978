"""Exact arithmetic in Z[i, tau] = Z[i] + Z[i]*tau, tau the golden ratio.

Elements are stored as four Python integers over the ordered basis
{1, i, tau, i*tau}.  The real subring Z[tau] gets its own type
(:class:`QuadInt`) because squared magnitudes live there and have to be
compared exactly.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence

__all__ = [
    "TAU",
    "SQRT5",
    "QuadInt",
    "GaussInt",
    "RingElem",
    "GaloisMap",
    "RingPoly",
    "ZERO",
    "ONE",
    "I",
    "TAU_ELEM",
    "ALPHA",
    "add",
    "mul",
    "apply_galois",
    "abs_squared",
    "cmp_quad",
    "to_complex",
    "poly_mul",
    "poly_eval",
    "parse_ring_elem",
    "parse_quad_int",
]

SQRT5 = math.sqrt(5.0)
TAU = (1.0 + SQRT5) / 2.0


def _sign_tau(p: int, q: int) -> int:
    # sign of p + q*tau = sign of s + q*sqrt5 with s = 2p + q
    s = 2 * p + q
    if q >= 0 and s >= 0:
        return 0 if (p == 0 and q == 0) else 1
    if q >= 0:
        return 1 if s * s < 5 * q * q else -1
    if s >= 0 and s * s > 5 * q * q:
        return 1
    return -1


def _float_tau(p: int, q: int) -> float:
    # (s + q*sqrt5)/2 evaluated without cancellation when s and q differ in sign
    s = 2 * p + q
    if s == 0 or q == 0 or (s > 0) == (q > 0):
        return (s + q * SQRT5) / 2.0
    num = s * s - 5 * q * q
    return num / (2.0 * (s - q * SQRT5))


@total_ordering
@dataclass(frozen=True, slots=True)
class QuadInt:
    """p + q*tau in Z[tau], ordered as a real number."""

    p: int
    q: int = 0

    @classmethod
    def coerce(cls, other: QuadInt | int) -> QuadInt:
        if isinstance(other, QuadInt):
            return other
        if isinstance(other, int):
            return cls(other, 0)
        raise TypeError(f"cannot coerce {type(other).__name__} to QuadInt")

    def __add__(self, other: QuadInt | int) -> QuadInt:
        if not isinstance(other, (QuadInt, int)):
            return NotImplemented
        o = QuadInt.coerce(other)
        return QuadInt(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.p, -self.q)

    def __sub__(self, other: QuadInt | int) -> QuadInt:
        if not isinstance(other, (QuadInt, int)):
            return NotImplemented
        return self + (-QuadInt.coerce(other))

    def __rsub__(self, other: int) -> QuadInt:
        return QuadInt.coerce(other) - self

    def __mul__(self, other: QuadInt | int) -> QuadInt:
        if not isinstance(other, (QuadInt, int)):
            return NotImplemented
        o = QuadInt.coerce(other)
        qq = self.q * o.q
        return QuadInt(self.p * o.p + qq, self.p * o.q + self.q * o.p + qq)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.q == 0 and self.p == other
        if isinstance(other, QuadInt):
            return self.p == other.p and self.q == other.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __lt__(self, other: QuadInt | int) -> bool:
        if not isinstance(other, (QuadInt, int)):
            return NotImplemented
        return cmp_quad(self, QuadInt.coerce(other)) < 0

    def sign(self) -> int:
        return _sign_tau(self.p, self.q)

    def conjugate(self) -> QuadInt:
        """Image under sqrt5 -> -sqrt5 (tau -> 1 - tau)."""
        return QuadInt(self.p + self.q, -self.q)

    def norm(self) -> int:
        return self.p * self.p + self.p * self.q - self.q * self.q

    def __float__(self) -> float:
        return _float_tau(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}{self.q:+d}τ"

    def __repr__(self) -> str:
        return f"QuadInt({self.p}, {self.q})"


@dataclass(frozen=True, slots=True)
class GaussInt:
    re: int
    im: int = 0

    def __add__(self, other: GaussInt) -> GaussInt:
        return GaussInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussInt) -> GaussInt:
        return GaussInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other: GaussInt) -> GaussInt:
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def __str__(self) -> str:
        return f"{self.re}{self.im:+d}i"


@dataclass(frozen=True, slots=True)
class RingElem:
    """(a + b*i) + (c + d*i)*tau.

    The determinant coordinates usually written (R, S, T, V) for the
    reordered basis {1, tau, i, i*tau} are ``(a, c, b, d)`` here.
    """

    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    @classmethod
    def from_parts(cls, z1: GaussInt, z2: GaussInt) -> RingElem:
        """z1 + z2*tau."""
        return cls(z1.re, z1.im, z2.re, z2.im)

    @classmethod
    def from_int(cls, n: int) -> RingElem:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_quad(cls, x: QuadInt) -> RingElem:
        return cls(x.p, 0, x.q, 0)

    @classmethod
    def coerce(cls, other: RingElem | QuadInt | int) -> RingElem:
        if isinstance(other, RingElem):
            return other
        if isinstance(other, QuadInt):
            return cls.from_quad(other)
        if isinstance(other, int):
            return cls.from_int(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to RingElem")

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def z1(self) -> GaussInt:
        return GaussInt(self.a, self.b)

    @property
    def z2(self) -> GaussInt:
        return GaussInt(self.c, self.d)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def max_abs_coord(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other: RingElem | QuadInt | int) -> RingElem:
        if not isinstance(other, (RingElem, QuadInt, int)):
            return NotImplemented
        return add(self, RingElem.coerce(other))

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: RingElem | QuadInt | int) -> RingElem:
        if not isinstance(other, (RingElem, QuadInt, int)):
            return NotImplemented
        return add(self, -RingElem.coerce(other))

    def __rsub__(self, other: QuadInt | int) -> RingElem:
        return RingElem.coerce(other) - self

    def __mul__(self, other: RingElem | QuadInt | int) -> RingElem:
        if isinstance(other, int):
            return RingElem(self.a * other, self.b * other, self.c * other, self.d * other)
        if not isinstance(other, (RingElem, QuadInt)):
            return NotImplemented
        return mul(self, RingElem.coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RingElem:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = ONE, self
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base)
            n >>= 1
        return result

    def __complex__(self) -> complex:
        return to_complex(self)

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}i{self.c:+d}τ{self.d:+d}iτ"


ZERO = RingElem(0, 0, 0, 0)
ONE = RingElem(1, 0, 0, 0)
I = RingElem(0, 1, 0, 0)
TAU_ELEM = RingElem(0, 0, 1, 0)
ALPHA = RingElem(1, 0, 2, 0)  # 2 + sqrt5 = tau**3


def add(x: RingElem, y: RingElem) -> RingElem:
    return RingElem(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d)


def mul(x: RingElem, y: RingElem) -> RingElem:
    # (A + B t)(C + D t) = (AC + BD) + (AD + BC + BD) t, A..D Gaussian
    ac_r = x.a * y.a - x.b * y.b
    ac_i = x.a * y.b + x.b * y.a
    bd_r = x.c * y.c - x.d * y.d
    bd_i = x.c * y.d + x.d * y.c
    ad_r = x.a * y.c - x.b * y.d
    ad_i = x.a * y.d + x.b * y.c
    bc_r = x.c * y.a - x.d * y.b
    bc_i = x.c * y.b + x.d * y.a
    return RingElem(
        ac_r + bd_r,
        ac_i + bd_i,
        ad_r + bc_r + bd_r,
        ad_i + bc_i + bd_i,
    )


class GaloisMap(enum.Enum):
    """Gal(Q(i, sqrt5)/Q) as the Klein four-group."""

    IDENTITY = "identity"
    RHO = "rho"  # i -> -i
    SIGMA = "sigma"  # sqrt5 -> -sqrt5
    MU = "mu"  # both

    @property
    def flips_i(self) -> bool:
        return self in (GaloisMap.RHO, GaloisMap.MU)

    @property
    def flips_sqrt5(self) -> bool:
        return self in (GaloisMap.SIGMA, GaloisMap.MU)

    def __call__(self, x: RingElem) -> RingElem:
        return apply_galois(self, x)

    def compose(self, other: GaloisMap) -> GaloisMap:
        """``self`` after ``other``."""
        fi = self.flips_i != other.flips_i
        fs = self.flips_sqrt5 != other.flips_sqrt5
        return _GALOIS_BY_FLAGS[(fi, fs)]

    __matmul__ = compose


_GALOIS_BY_FLAGS = {
    (False, False): GaloisMap.IDENTITY,
    (True, False): GaloisMap.RHO,
    (False, True): GaloisMap.SIGMA,
    (True, True): GaloisMap.MU,
}


def apply_galois(g: GaloisMap | str, x: RingElem) -> RingElem:
    g = GaloisMap(g)
    a, b, c, d = x.a, x.b, x.c, x.d
    if g.flips_sqrt5:
        # tau -> 1 - tau
        a, b, c, d = a + c, b + d, -c, -d
    if g.flips_i:
        b, d = -b, -d
    return RingElem(a, b, c, d)


def abs_squared(x: RingElem) -> QuadInt:
    """|x|^2 = x * rho(x), an element of Z[tau]."""
    prod = mul(x, apply_galois(GaloisMap.RHO, x))
    assert prod.b == 0 and prod.d == 0
    return QuadInt(prod.a, prod.c)


def cmp_quad(u: QuadInt, v: QuadInt) -> int:
    """Exact three-way comparison of u and v as real numbers."""
    return _sign_tau(u.p - v.p, u.q - v.q)


def to_complex(x: RingElem) -> complex:
    """Double-precision value; advisory only (pruning and diagnostics)."""
    return complex(x.a + x.c * TAU, x.b + x.d * TAU)


@dataclass(frozen=True, slots=True)
class RingPoly:
    """Polynomial over Z[i, tau]; ``coeffs[k]`` multiplies x**k."""

    coeffs: tuple[RingElem, ...]

    def __init__(self, coeffs: Iterable[RingElem | QuadInt | int]):
        cs = [RingElem.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> RingPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: RingPoly) -> RingPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [ZERO] * n
        for k, c in enumerate(self.coeffs):
            cs[k] = cs[k] + c
        for k, c in enumerate(other.coeffs):
            cs[k] = cs[k] + c
        return RingPoly(cs)

    def __mul__(self, other: RingPoly) -> RingPoly:
        return poly_mul(self, other)

    def __call__(self, x: RingElem) -> RingElem:
        return poly_eval(self, x)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = [f"({c})x^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(reversed(terms))


def poly_mul(f: RingPoly, g: RingPoly) -> RingPoly:
    if not f.coeffs or not g.coeffs:
        return RingPoly([])
    out = [ZERO] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fc in enumerate(f.coeffs):
        if fc.is_zero():
            continue
        for j, gc in enumerate(g.coeffs):
            out[i + j] = out[i + j] + mul(fc, gc)
    return RingPoly(out)


def poly_eval(f: RingPoly, x: RingElem) -> RingElem:
    acc = ZERO
    for c in reversed(f.coeffs):
        acc = mul(acc, x) + c
    return acc


# -- text form ---------------------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(iτ|τi|i|τ|)\s*")


def _normalize(text: str) -> str:
    if re.search(r"\d\s+\d", text):
        raise ValueError(f"whitespace inside a number in {text!r}")
    return "".join(text.split()).replace("tau", "τ").replace("t", "τ").replace("*", "")


def _parse_terms(text: str, allowed: Sequence[str]) -> dict[str, int]:
    t = _normalize(text)
    if not t:
        raise ValueError("empty expression")
    out = {k: 0 for k in allowed}
    pos = 0
    first = True
    while pos < len(t):
        m = _TERM.match(t, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        sign, digits, unit = m.groups()
        if not sign and not first:
            raise ValueError(f"missing sign before term in {text!r}")
        if not digits and not unit:
            raise ValueError(f"empty term in {text!r}")
        unit = "iτ" if unit == "τi" else unit
        if unit not in allowed:
            raise ValueError(f"term {unit or 'constant'!r} not allowed in {text!r}")
        value = int(digits) if digits else 1
        out[unit] += -value if sign == "-" else value
        pos = m.end()
        first = False
    return out


def parse_ring_elem(text: str) -> RingElem:
    """Parse ``a+bi+cτ+diτ`` (any subset of terms, any order; ``t``/``tau`` accepted)."""
    terms = _parse_terms(text, ("", "i", "τ", "iτ"))
    return RingElem(terms[""], terms["i"], terms["τ"], terms["iτ"])


def parse_quad_int(text: str) -> QuadInt:
    terms = _parse_terms(text, ("", "τ"))
    return QuadInt(terms[""], terms["τ"])
