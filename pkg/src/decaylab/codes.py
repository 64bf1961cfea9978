"""Two-user, single-antenna lattice code with composite matrix

    X = [[x1,        sigma(x1)],
         [gamma*x2,  sigma(x2)]]

Each user disperses two Gaussian integers z1 + z2*tau.  With gamma = i
the matrix is invertible whenever both users send something nonzero.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .exact_ring import (
    I,
    GaloisMap,
    QuadInt,
    RingElem,
    abs_squared,
    apply_galois,
    mul,
)

__all__ = [
    "CodeConfig",
    "UserCoords",
    "CompositeMatrix",
    "DEFAULT_CONFIG",
    "user_element",
    "bb_determinant",
    "det_abs_squared",
    "rank_criterion_check",
    "determinant_coefficients",
    "coefficient_bound",
    "unit_multiples",
]

_SIGMA = GaloisMap.SIGMA


@dataclass(frozen=True)
class CodeConfig:
    gamma: RingElem = I
    U: int = 2
    n_t: int = 1

    def __post_init__(self):
        if self.U != 2 or self.n_t != 1:
            raise ValueError("only U=2 users with n_t=1 antenna are supported")
        if not isinstance(self.gamma, RingElem):
            raise TypeError("gamma must be a RingElem")


DEFAULT_CONFIG = CodeConfig()


class UserCoords(NamedTuple):
    """Integer coordinates of one user's signal: z1 = a + bi, z2 = c + di."""

    a: int
    b: int
    c: int
    d: int

    def is_zero(self) -> bool:
        return not any(self)


def user_element(u: UserCoords | tuple[int, int, int, int]) -> RingElem:
    return RingElem(*u)


@dataclass(frozen=True)
class CompositeMatrix:
    x1: RingElem
    x2: RingElem
    cfg: CodeConfig = DEFAULT_CONFIG

    @property
    def entries(self) -> tuple[tuple[RingElem, RingElem], tuple[RingElem, RingElem]]:
        return (
            (self.x1, apply_galois(_SIGMA, self.x1)),
            (mul(self.cfg.gamma, self.x2), apply_galois(_SIGMA, self.x2)),
        )

    def det(self) -> RingElem:
        (p, q), (r, s) = self.entries
        return mul(p, s) - mul(q, r)

    def to_complex(self):
        import numpy as np

        return np.array([[complex(e) for e in row] for row in self.entries])


def bb_determinant(x1: RingElem, x2: RingElem, cfg: CodeConfig = DEFAULT_CONFIG) -> RingElem:
    """x1*sigma(x2) - gamma*sigma(x1)*x2, i.e. x - gamma*sigma(x) for x = x1*sigma(x2)."""
    s1 = apply_galois(_SIGMA, x1)
    s2 = apply_galois(_SIGMA, x2)
    return mul(x1, s2) - mul(cfg.gamma, mul(s1, x2))


def det_abs_squared(x1: RingElem, x2: RingElem, cfg: CodeConfig = DEFAULT_CONFIG) -> QuadInt:
    return abs_squared(bb_determinant(x1, x2, cfg))


def rank_criterion_check(x1: RingElem, x2: RingElem, cfg: CodeConfig = DEFAULT_CONFIG) -> bool:
    """True unless both inputs are nonzero and the determinant still vanishes."""
    if x1.is_zero() or x2.is_zero():
        return True
    return not bb_determinant(x1, x2, cfg).is_zero()


_BASIS = [RingElem(*e) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]


def determinant_coefficients(cfg: CodeConfig = DEFAULT_CONFIG) -> dict[str, list[list[int]]]:
    """Bilinear coefficient tables of the determinant coordinates.

    The determinant is Z-bilinear in the two users' coordinate vectors, so
    ``coeffs[name][i][j]`` is the given coordinate of ``det(e_i, e_j)``.
    Names follow the (R + S tau) + (T + V tau) i reading: R=a, S=c, T=b, V=d.
    """
    tables = {k: [[0] * 4 for _ in range(4)] for k in "RSTV"}
    for i, j in product(range(4), repeat=2):
        d = bb_determinant(_BASIS[i], _BASIS[j], cfg)
        tables["R"][i][j] = d.a
        tables["S"][i][j] = d.c
        tables["T"][i][j] = d.b
        tables["V"][i][j] = d.d
    return tables


def coefficient_bound(cfg: CodeConfig = DEFAULT_CONFIG) -> int:
    """Constant K1 with max(|S|, |V|) <= K1*N1*N2 on the boxes [-N1,N1]^4 x [-N2,N2]^4.

    Triangle inequality over the bilinear expansion: sum of absolute
    coefficients, taking the worse of S and V.
    """
    tables = determinant_coefficients(cfg)
    return max(sum(abs(v) for row in tables[k] for v in row) for k in "SV")


def unit_multiples(x: RingElem) -> list[RingElem]:
    """x, ix, -x, -ix."""
    out = [x]
    for _ in range(3):
        out.append(mul(I, out[-1]))
    return out
