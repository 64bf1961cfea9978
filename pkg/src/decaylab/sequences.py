"""Small-determinant sequence built from powers of the unit 2 - sqrt5.

With a_n - b_n*sqrt5 = (2 - sqrt5)**n and z_n = a_n + i*sqrt5*b_n, the pair
(x1, x2) = (z_n, 1) has determinant (a_n - b_n*sqrt5)(1 - i), which tends to
zero geometrically.  When 5 | n the number z_n factors further over
Z[i, tau] through the cyclotomic factors m_j(n), which lets the size be
shared between the two users.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .codes import DEFAULT_CONFIG, CodeConfig, det_abs_squared
from .exact_ring import (
    ONE,
    GaloisMap,
    QuadInt,
    RingElem,
    RingPoly,
    abs_squared,
    apply_galois,
    mul,
)

__all__ = [
    "AlphaPower",
    "SequenceRecord",
    "SplitChoice",
    "UnbalancedWitness",
    "alpha_power",
    "z_element",
    "m_factor",
    "factor_z5n",
    "factor_atoms",
    "split_options",
    "balanced_split",
    "table1_row",
    "table1",
    "unbalanced_series",
    "det_closed_form",
    "phi20",
    "p_factor",
    "x5_factors",
    "log_abs_det",
    "TABLE1_N",
]

TABLE1_N = (5, 10, 15, 20, 25)

# log|2 - sqrt5| = -log(2 + sqrt5)
LOG_ALPHA = math.log(2.0 + math.sqrt(5.0))


@dataclass(frozen=True)
class AlphaPower:
    """a - b*sqrt5 = (2 - sqrt5)**n."""

    n: int
    a: int
    b: int

    @property
    def quad(self) -> QuadInt:
        """a - b*sqrt5 in Z[tau] (sqrt5 = 2*tau - 1)."""
        return QuadInt(self.a + self.b, -2 * self.b)


@lru_cache(maxsize=None)
def _alpha_pair(n: int) -> tuple[int, int]:
    a, b = 1, 0
    for _ in range(n):
        a, b = 2 * a + 5 * b, a + 2 * b
    return a, b


def alpha_power(n: int) -> AlphaPower:
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = _alpha_pair(n)
    return AlphaPower(n, a, b)


def _sqrt5_times(k: int) -> RingElem:
    return RingElem(-k, 0, 2 * k, 0)


def z_element(n: int) -> RingElem:
    """z_n = a_n + i*sqrt5*b_n, coordinates (a_n, -b_n, 0, 2*b_n)."""
    if n < 1:
        raise ValueError("n must be positive")
    ap = alpha_power(n)
    return RingElem(ap.a, -ap.b, 0, 2 * ap.b)


# i*(1 - tau), i*tau and their negatives
_M_OFFSETS = {
    1: RingElem(0, 1, 0, -1),
    2: RingElem(0, -1, 0, 1),
    3: RingElem(0, 0, 0, 1),
    4: RingElem(0, 0, 0, -1),
}


def m_factor(j: int, n: int) -> RingElem:
    """m_j(n) = u**-1 * p_j(u) with u = (2 + sqrt5)**(2n).

    Since u - 1/u = 2*b_{2n}*sqrt5 this is 2*b_{2n}*sqrt5 plus one of
    +-i(1 - tau), +-i*tau.
    """
    if j not in _M_OFFSETS:
        raise ValueError(f"j must be 1..4, got {j!r}")
    if n < 1:
        raise ValueError("n must be positive")
    b2n = alpha_power(2 * n).b
    return _sqrt5_times(2 * b2n) + _M_OFFSETS[j]


def _pair_index(n: int) -> int:
    return 2 if n % 2 else 1


def factor_z5n(n: int) -> tuple[RingElem, RingElem, RingElem]:
    """(z_n, m_j(n), m_{j+2}(n)) whose product is z_{5n}; j = 2 for odd n, 1 for even."""
    if n < 1:
        raise ValueError("n must be positive")
    j = _pair_index(n)
    return z_element(n), m_factor(j, n), m_factor(j + 2, n)


def factor_atoms(n: int) -> list[tuple[str, RingElem]]:
    """Split z_n as far as repeated 5n -> n factorization goes.

    Returns labelled factors, e.g. for n = 25:
    ``z1, m2(1), m4(1), m2(5), m4(5)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n % 5:
        return [(f"z{n}", z_element(n))]
    k = n // 5
    j = _pair_index(k)
    return factor_atoms(k) + [(f"m{j}({k})", m_factor(j, k)), (f"m{j + 2}({k})", m_factor(j + 2, k))]


def _product(elems) -> RingElem:
    out = ONE
    for e in elems:
        out = mul(out, e)
    return out


@dataclass(frozen=True)
class SplitChoice:
    """One assignment of atoms to users: x1 = prod(group 1), x2 = sigma(prod(group 2))."""

    mask: int
    group1: tuple[str, ...]
    group2: tuple[str, ...]
    x1: RingElem
    x2: RingElem

    @property
    def m(self) -> int:
        return max(self.x1.max_abs_coord(), self.x2.max_abs_coord())


def split_options(atoms: list[tuple[str, RingElem]]) -> list[SplitChoice]:
    """Every 2-partition of the atoms; bit k of ``mask`` puts atom k in group 1."""
    out = []
    for mask in range(1 << len(atoms)):
        g1 = [atoms[k] for k in range(len(atoms)) if mask >> k & 1]
        g2 = [atoms[k] for k in range(len(atoms)) if not mask >> k & 1]
        x1 = _product(e for _, e in g1)
        x2 = apply_galois(GaloisMap.SIGMA, _product(e for _, e in g2))
        out.append(SplitChoice(mask, tuple(l for l, _ in g1), tuple(l for l, _ in g2), x1, x2))
    return out


def balanced_split(atoms: list[tuple[str, RingElem]]) -> SplitChoice:
    """Partition minimising the largest coordinate of x1, x2.

    Ties go to the split whose x1 is larger (user 1 carries the bigger
    share, as in the unbalanced construction), then to the smaller mask.
    """
    return min(split_options(atoms), key=lambda s: (s.m, -s.x1.max_abs_coord(), s.mask))


def det_closed_form(n: int) -> QuadInt:
    """|(2 - sqrt5)**n * (1 - i)|^2 as an exact element of Z[tau]."""
    base = RingElem.from_quad(alpha_power(n).quad)
    return abs_squared(mul(base, RingElem(1, -1, 0, 0)))


def log_abs_det(n: int) -> float:
    """log(sqrt2 * |2 - sqrt5|**n)."""
    return 0.5 * math.log(2.0) - n * LOG_ALPHA


@dataclass(frozen=True)
class SequenceRecord:
    n: int
    a_n: int
    b_n: int
    z_n: RingElem
    factors: tuple[RingElem, ...]
    factor_labels: tuple[str, ...]
    x1: RingElem
    x2: RingElem
    m: int
    detsq: QuadInt
    delta_estimate: float
    split_mask: int = 0

    @property
    def delta_rounded(self) -> str:
        return f"{self.delta_estimate:.3f}"


def table1_row(n: int, cfg: CodeConfig = DEFAULT_CONFIG) -> SequenceRecord:
    """Balanced factor split of z_n for n in 5, 10, ..., 25."""
    if n not in TABLE1_N:
        raise ValueError(f"n must be one of {TABLE1_N}, got {n!r}")
    atoms = factor_atoms(n)
    choice = balanced_split(atoms)
    ap = alpha_power(n)
    return SequenceRecord(
        n=n,
        a_n=ap.a,
        b_n=ap.b,
        z_n=z_element(n),
        factors=tuple(e for _, e in atoms),
        factor_labels=tuple(l for l, _ in atoms),
        x1=choice.x1,
        x2=choice.x2,
        m=choice.m,
        detsq=det_abs_squared(choice.x1, choice.x2, cfg),
        delta_estimate=-log_abs_det(n) / math.log(choice.m),
        split_mask=choice.mask,
    )


def table1(cfg: CodeConfig = DEFAULT_CONFIG) -> list[SequenceRecord]:
    return [table1_row(n, cfg) for n in TABLE1_N]


@dataclass(frozen=True)
class UnbalancedWitness:
    """Unbalanced witness x1 = z_k*m_j(k), x2 = sigma(m_{j+2}(k)) for z_{5k}."""

    k: int
    x1: RingElem
    x2: RingElem
    detsq: QuadInt
    size1: int = field(init=False)
    size2: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "size1", self.x1.max_abs_coord())
        object.__setattr__(self, "size2", self.x2.max_abs_coord())

    @property
    def n(self) -> int:
        return 5 * self.k

    @property
    def log_size_ratio(self) -> float:
        return math.log(self.size1) / math.log(self.size2)

    @property
    def abs_det(self) -> float:
        return math.exp(log_abs_det(self.n))


def unbalanced_series(k_max: int, cfg: CodeConfig = DEFAULT_CONFIG) -> list[UnbalancedWitness]:
    if k_max < 1:
        raise ValueError("k_max must be positive")
    out = []
    for k in range(1, k_max + 1):
        zk, mj, mj2 = factor_z5n(k)
        x1 = mul(zk, mj)
        x2 = apply_galois(GaloisMap.SIGMA, mj2)
        out.append(UnbalancedWitness(k, x1, x2, det_abs_squared(x1, x2, cfg)))
    return out


# -- cyclotomic polynomials over Z[i, tau] ------------------------------------

_I = RingElem(0, 1, 0, 0)


def phi20() -> RingPoly:
    """x^8 - x^6 + x^4 - x^2 + 1."""
    return RingPoly([1, 0, -1, 0, 1, 0, -1, 0, 1])


def p_factor(j: int) -> RingPoly:
    """p_j(x) = x^2 + c_j x - 1 with c_j in {i(1-tau), -i(1-tau), i*tau, -i*tau}."""
    if j not in _M_OFFSETS:
        raise ValueError(f"j must be 1..4, got {j!r}")
    return RingPoly([-1, _M_OFFSETS[j], 1])


def x5_factors(sign: int) -> tuple[RingPoly, RingPoly]:
    """x^5 + sign*i = (x + sign*i)(x^4 - sign*i x^3 - x^2 + sign*i x + 1)."""
    si = _I * sign
    return RingPoly([si, 1]), RingPoly([1, si, -1, -si, 1])

