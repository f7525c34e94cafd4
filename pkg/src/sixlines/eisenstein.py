"""Exact arithmetic in the Eisenstein integers Z[rho], rho^2 + rho + 1 = 0.

Elements are stored as integer pairs ``(a, b)`` meaning ``a + b*rho``.
Rational outputs are :class:`fractions.Fraction`; nothing in this module
touches floating point except :meth:`EisensteinInt.to_complex`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

OMEGA = cmath.exp(2j * cmath.pi / 3)


@dataclass(frozen=True)
class EisensteinInt:
    a: int
    b: int = 0

    @classmethod
    def coerce(cls, x: EisensteinInt | int) -> EisensteinInt:
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, (int, np.integer)):
            return cls(int(x), 0)
        raise TypeError(f"cannot interpret {x!r} as an Eisenstein integer")

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{self.b:+d}ρ"

    def __add__(self, other):
        try:
            o = EisensteinInt.coerce(other)
        except TypeError:
            return NotImplemented
        return EisensteinInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = EisensteinInt.coerce(other)
        except TypeError:
            return NotImplemented
        return EisensteinInt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = EisensteinInt.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        # rho^2 = -1 - rho
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> EisensteinInt:
        if k < 0:
            raise ValueError("negative powers are not defined in Z[rho]")
        out = EisensteinInt(1, 0)
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> EisensteinInt:
        # conj(rho) = rho^2 = -1 - rho
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divmod_exact(self, other: EisensteinInt | int) -> EisensteinInt:
        """Exact quotient ``self / other``; raises ``ValueError`` if not divisible."""
        o = EisensteinInt.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[rho]")
        num = self * o.conj()
        if num.a % n or num.b % n:
            raise ValueError(f"{self} is not divisible by {o}")
        return EisensteinInt(num.a // n, num.b // n)

    def to_complex(self, conjugate: bool = False) -> complex:
        """Image under rho -> omega (or rho -> omega^2 when ``conjugate``)."""
        w = OMEGA.conjugate() if conjugate else OMEGA
        return self.a + self.b * w


RHO = EisensteinInt(0, 1)
ONE = EisensteinInt(1, 0)
ZERO = EisensteinInt(0, 0)
ONE_MINUS_RHO = EisensteinInt(1, -1)

EisensteinVec = tuple  # tuple[EisensteinInt, ...]


def vec(*entries: EisensteinInt | int) -> tuple[EisensteinInt, ...]:
    return tuple(EisensteinInt.coerce(e) for e in entries)


def re(x: EisensteinInt) -> Fraction:
    """Real part (x + conj x)/2 as an exact rational: a - b/2."""
    return Fraction(2 * x.a - x.b, 2)


def mod_one_minus_rho(x: EisensteinInt) -> int:
    """Reduction Z[rho] -> Z[rho]/(1 - rho) = F_3 (rho -> 1), representative in {0,1,2}."""
    return (x.a + x.b) % 3


def hermitian_form(x: Sequence[EisensteinInt], y: Sequence[EisensteinInt]) -> EisensteinInt:
    """h(x, y) = x U conj(y)^t with U the 2x2 swap matrix."""
    if len(x) != 2 or len(y) != 2:
        raise ValueError("hermitian_form expects length-2 vectors")
    return x[0] * y[1].conj() + x[1] * y[0].conj()


_SCALES = (Fraction(2, 3), Fraction(2))


def symmetric_form(
    x: Sequence[EisensteinInt], y: Sequence[EisensteinInt], scale: Fraction | int = 2
) -> Fraction:
    """scale * Re h(x, y); scale 2 is the form on T_X, scale 2/3 the dual one."""
    scale = Fraction(scale)
    if scale not in _SCALES:
        raise ValueError(f"scale must be 2 or 2/3, got {scale}")
    return scale * re(hermitian_form(x, y))


def _bareiss_det(m: list[list[int]]) -> int:
    # fraction-free Gaussian elimination
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def lattice_basis() -> list[tuple[EisensteinInt, EisensteinInt]]:
    """Z-basis {e1, rho e1, e2, rho e2} of Z[rho]^2."""
    return [vec(1, 0), vec(RHO, 0), vec(0, 1), vec(0, RHO)]


def gram_and_discriminant() -> tuple[list[list[int]], int]:
    """Gram matrix of 2 Re h on the basis {e1, rho e1, e2, rho e2} and its determinant."""
    basis = lattice_basis()
    gram = []
    for x in basis:
        row = []
        for y in basis:
            val = symmetric_form(x, y, 2)
            assert val.denominator == 1
            row.append(int(val))
        gram.append(row)
    return gram, _bareiss_det(gram)


def signature(gram: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(positive, negative) inertia indices of a symmetric integer matrix.

    Exact symmetric elimination over the rationals; by Sylvester's law the
    signs of the pivots give the inertia.
    """
    a = [[Fraction(v) for v in row] for row in gram]
    n = len(a)
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            # a zero diagonal with a nonzero off-diagonal entry in the active
            # block: adding row/column j to k makes the pivot 2 a_kj + a_jj
            j = next((j for j in range(k + 1, n) if a[k][j] != 0 and 2 * a[k][j] + a[j][j] != 0), None)
            if j is None:
                j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
                if j is None:
                    if any(a[k][c] != 0 for c in range(k + 1, n)):
                        raise AssertionError("unreachable: pivot search failed")
                    continue
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                for c in range(n):
                    a[k][c] += a[j][c]
                for r in range(n):
                    a[r][k] += a[r][j]
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
    return pos, neg
