"""The unitary group Gamma over Z[rho], its level-(1 - rho) subgroup, the affine
extension G(1 - rho), and their actions on D and on H_2 x C^2.

Group elements are exact.  The 3x3 element [[g, 0], [b, 1]] is stored as the
pair (g, b); products follow block multiplication,

    (g1, b1)(g2, b2) = (g1 g2, b1 g2 + b2).

The symplectic embedding uses the basis (alpha_1, alpha_2, beta_1, beta_2)
with alpha = rho U beta.  Its translation part is the integral cycle
b / (1 - rho); translations in G(1 - rho) are divisible by 1 - rho.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .eisenstein import ONE, ONE_MINUS_RHO, RHO, ZERO, EisensteinInt, mod_one_minus_rho
from .errors import SingularDenominatorError
from .periodmap import PeriodPoint, SiegelPoint

Mat2 = tuple[tuple[EisensteinInt, EisensteinInt], tuple[EisensteinInt, EisensteinInt]]
Vec2 = tuple[EisensteinInt, EisensteinInt]

U_E: Mat2 = ((ZERO, ONE), (ONE, ZERO))
I_E: Mat2 = ((ONE, ZERO), (ZERO, ONE))
U_INT = np.array([[0, 1], [1, 0]], dtype=object)
J = np.array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=object)


def _coerce_mat(m) -> Mat2:
    return tuple(tuple(EisensteinInt.coerce(x) for x in row) for row in m)  # type: ignore[return-value]


def _coerce_vec(v) -> Vec2:
    return tuple(EisensteinInt.coerce(x) for x in v)  # type: ignore[return-value]


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    return tuple(
        tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def vec_mat(v: Vec2, m: Mat2) -> Vec2:
    return (v[0] * m[0][0] + v[1] * m[1][0], v[0] * m[0][1] + v[1] * m[1][1])


def conj_transpose(m: Mat2) -> Mat2:
    return tuple(tuple(m[j][i].conj() for j in range(2)) for i in range(2))  # type: ignore[return-value]


def det(m: Mat2) -> EisensteinInt:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@dataclass(frozen=True)
class GammaElement:
    g: Mat2

    def __post_init__(self):
        object.__setattr__(self, "g", _coerce_mat(self.g))

    def __matmul__(self, other: GammaElement) -> GammaElement:
        return GammaElement(mat_mul(self.g, other.g))

    def det(self) -> EisensteinInt:
        return det(self.g)

    def to_complex(self, conjugate: bool = False) -> np.ndarray:
        return np.array([[x.to_complex(conjugate) for x in row] for row in self.g])

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        """Integer matrices (g1, g2) with g = g1 + g2 rho."""
        g1 = np.array([[x.a for x in row] for row in self.g], dtype=object)
        g2 = np.array([[x.b for x in row] for row in self.g], dtype=object)
        return g1, g2


@dataclass(frozen=True)
class GroupElement:
    g: GammaElement
    b: Vec2

    def __post_init__(self):
        if not isinstance(self.g, GammaElement):
            object.__setattr__(self, "g", GammaElement(self.g))
        object.__setattr__(self, "b", _coerce_vec(self.b))

    @classmethod
    def identity(cls) -> GroupElement:
        return cls(GammaElement(I_E), (ZERO, ZERO))

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.g @ other.g, tuple(
            x + y for x, y in zip(vec_mat(self.b, other.g.g), other.b)))

    def matrix(self) -> tuple[tuple[EisensteinInt, ...], ...]:
        g = self.g.g
        return (
            (g[0][0], g[0][1], ZERO),
            (g[1][0], g[1][1], ZERO),
            (self.b[0], self.b[1], ONE),
        )


def is_in_gamma(g: GammaElement | Mat2) -> bool:
    """Exact check of g U conj(g)^t = U."""
    m = g.g if isinstance(g, GammaElement) else _coerce_mat(g)
    return mat_mul(mat_mul(m, U_E), conj_transpose(m)) == U_E


def is_in_level(x: GammaElement | GroupElement | Mat2) -> bool:
    """Membership in Gamma(1 - rho), resp. G(1 - rho) for a GroupElement."""
    if isinstance(x, GroupElement):
        if any(mod_one_minus_rho(v) for v in x.b):
            return False
        x = x.g
    m = x.g if isinstance(x, GammaElement) else _coerce_mat(x)
    if not is_in_gamma(m):
        return False
    return all(mod_one_minus_rho(m[i][j] - (ONE if i == j else ZERO)) == 0
               for i in range(2) for j in range(2))


def _unipotent(k: int, upper: bool) -> GammaElement:
    # k rho (1 - rho) = k (1 + 2 rho) is purely imaginary, so these are U-unitary
    x = EisensteinInt(k, 2 * k)
    return GammaElement(((ONE, x), (ZERO, ONE)) if upper else ((ONE, ZERO), (x, ONE)))


def level_generators() -> list[GammaElement]:
    """Sample generating set: scalar rho, scalar rho^2, unipotents and their U-conjugates."""
    gens = [GammaElement(((RHO, ZERO), (ZERO, RHO))), GammaElement(((RHO * RHO, ZERO), (ZERO, RHO * RHO)))]
    for k in (-2, -1, 1, 2):
        up = _unipotent(k, True)
        gens.append(up)
        gens.append(GammaElement(U_E) @ up @ GammaElement(U_E))
    return gens


def random_level_element(seed: int | random.Random, word_len: int,
                         translation_size: int = 1) -> GroupElement:
    """Random word of ``word_len`` level-(1 - rho) generators with a translation in (1 - rho) Z[rho]^2."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if word_len < 0:
        raise ValueError("word_len must be non-negative")
    if word_len == 0:
        return GroupElement.identity()
    gens = level_generators()
    g = GammaElement(I_E)
    for _ in range(word_len):
        g = g @ rng.choice(gens)
    s = translation_size
    b = tuple(
        ONE_MINUS_RHO * EisensteinInt(rng.randint(-s, s), rng.randint(-s, s)) for _ in range(2)
    )
    return GroupElement(g, b)


def act_on_D(gt: GroupElement, p: PeriodPoint) -> PeriodPoint:
    """(eta, z1, z2) -> ((g11 eta + g12)/(g21 eta + g22),
    (z1 + w1 eta + w2)/(g21 eta + g22), (z2 - conj(w1) eta + conj(w2))/(-conj(g21) eta + conj(g22)))."""
    g = gt.g.to_complex()
    gb = gt.g.to_complex(conjugate=True)
    w1 = gt.b[0].to_complex()
    w2 = gt.b[1].to_complex()
    eta, z1, z2 = p.eta, p.z1, p.z2
    den = g[1, 0] * eta + g[1, 1]
    den_c = -gb[1, 0] * eta + gb[1, 1]
    scale = max(1.0, abs(eta))
    if abs(den) < 1e-300 * scale or abs(den_c) < 1e-300 * scale:
        raise SingularDenominatorError("denominator of the fractional action vanishes")
    return PeriodPoint(
        (g[0, 0] * eta + g[0, 1]) / den,
        (z1 + w1 * eta + w2) / den,
        (z2 - w1.conjugate() * eta + w2.conjugate()) / den_c,
    )


def embed_jH(b: Sequence[EisensteinInt]) -> tuple[int, int, int, int]:
    """(r1 + r2 rho, s1 + s2 rho) -> (s2, r2, r1, s1): Z-coordinates of the cycle b.beta."""
    x, y = _coerce_vec(b)
    return (y.b, x.b, x.a, y.a)


def embed_jGamma(g: GammaElement) -> np.ndarray:
    """g = g1 + g2 rho -> [[U (g1 - g2) U, -U g2], [g2 U, g1]]."""
    g1, g2 = g.split()
    U = U_INT
    top = np.hstack([U.dot(g1 - g2).dot(U), -U.dot(g2)])
    bottom = np.hstack([g2.dot(U), g1])
    return np.vstack([top, bottom]).astype(object)


@dataclass(frozen=True, eq=False)
class SymplecticAffine:
    """(s, v) in Sp_4(Z) x Z^4 acting by tau -> (A tau + B)(C tau + D)^-1,
    zeta -> (zeta + m tau + n)(C tau + D)^-1 with v = (m, n)."""

    s: np.ndarray
    v: tuple[int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "s", np.asarray(self.s, dtype=object))
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))

    def __matmul__(self, other: SymplecticAffine) -> SymplecticAffine:
        v = np.array(self.v, dtype=object).dot(other.s) + np.array(other.v, dtype=object)
        return SymplecticAffine(self.s.dot(other.s), tuple(v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymplecticAffine):
            return NotImplemented
        return np.array_equal(self.s, other.s) and self.v == other.v

    def is_symplectic(self) -> bool:
        return np.array_equal(self.s.T.dot(J).dot(self.s), J)


def embed_jG(gt: GroupElement) -> SymplecticAffine:
    c = tuple(x.divmod_exact(ONE_MINUS_RHO) for x in gt.b)
    return SymplecticAffine(embed_jGamma(gt.g), embed_jH(c))


def act_on_siegel(sa: SymplecticAffine, s: SiegelPoint) -> SiegelPoint:
    m = sa.s.astype(float)
    A, B, C, D = m[:2, :2], m[:2, 2:], m[2:, :2], m[2:, 2:]
    tau, zeta = s.tau, s.zeta
    ctd = C @ tau + D
    if abs(np.linalg.det(ctd)) < 1e-14 * max(1.0, np.abs(ctd).max()) ** 2:
        raise SingularDenominatorError("C tau + D is singular")
    inv = np.linalg.inv(ctd)
    v = np.array(sa.v, dtype=float)
    new_tau = (A @ tau + B) @ inv
    new_tau = (new_tau + new_tau.T) / 2
    return SiegelPoint(new_tau, (zeta + v[:2] @ tau + v[2:]) @ inv)
