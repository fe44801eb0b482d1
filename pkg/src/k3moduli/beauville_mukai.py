"""Beauville-Mukai systems ``M_v(S, H) -> |mH|`` for ``v = (0, mH, ms)``.

Also hosts the small cohomology ring of ``S x P^1`` used to compute the
degree of the ruling line of the theta divisor against ``lambda(a)`` and
``lambda(b)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DomainError, IdentityFailure
from .lattice_core import divisibility
from .mukai import MukaiVector, dual_twist, mukai_pairing, times_sqrt_td, vperp


@dataclass(frozen=True)
class BMSystem:
    d: int
    m: int
    s: int

    def __post_init__(self):
        if self.d < 1 or self.m < 1:
            raise DomainError("d and m must be positive")

    @property
    def v(self) -> MukaiVector:
        return MukaiVector(0, self.m, self.m * self.s, self.d)

    @property
    def base_dim(self) -> int:
        return self.m**2 * self.d + 1

    @property
    def fiber_degree(self) -> int:
        return self.m * (self.m * self.d + self.s)

    @property
    def dim(self) -> int:
        return self.v.square + 2

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "s": self.s,
            "v": list(self.v.triple),
            "base_dim": self.base_dim,
            "fiber_degree": self.fiber_degree,
            "dim": self.dim,
        }


def make_bm(d: int, m: int, s: int) -> BMSystem:
    bm = BMSystem(d, m, s)
    bm.v.validated()
    return bm


@dataclass(frozen=True)
class BMPicardLattice:
    """The rank-2 lattice ``(v^perp)^{1,1}`` with basis ``(a, b)``.

    ``saturated`` records whether ``a, b`` span all of ``v^perp`` in the
    algebraic lattice; ``index`` is the index of their span otherwise.
    """

    gram: tuple[tuple[int, int], tuple[int, int]]
    a: MukaiVector
    b: MukaiVector
    mu: int | None
    index: int
    basis_labels: tuple[str, str] = ("a", "b")

    @property
    def saturated(self) -> bool:
        return self.index == 1

    def to_json(self) -> dict:
        return {
            "gram": [list(r) for r in self.gram],
            "basis_labels": list(self.basis_labels),
            "a": list(self.a.triple),
            "b": list(self.b.triple),
            "mu": self.mu,
            "saturated": self.saturated,
            "index": self.index,
        }


def picard_classes(bm: BMSystem) -> tuple[MukaiVector, MukaiVector, int | None]:
    d, s = bm.d, bm.s
    b = MukaiVector(0, 0, 1, d)
    if s == 0:
        return MukaiVector(-1, 0, 0, d), b, None
    mu = gcd(d, s)
    return MukaiVector(2 * d // mu, s // mu, 0, d), b, mu


def picard_lattice(bm: BMSystem) -> BMPicardLattice:
    """Gram matrix of ``(a, b)`` from the closed-form display, cross-checked by pairing."""
    d, s = bm.d, bm.s
    a, b, mu = picard_classes(bm)
    if s == 0:
        gram = ((0, 1), (1, 0))
    else:
        if (2 * d * s * s) % (mu * mu) or (2 * d) % mu:
            raise IdentityFailure("non-integral Picard Gram entries")
        gram = ((2 * d * s * s // mu**2, -2 * d // mu), (-2 * d // mu, 0))
    paired = tuple(tuple(mukai_pairing(x, y) for y in (a, b)) for x in (a, b))
    if paired != gram:
        raise IdentityFailure(f"Picard Gram {gram} disagrees with Mukai pairing {paired}")
    for x in (a, b):
        if mukai_pairing(x, bm.v) != 0:
            raise IdentityFailure(f"{x.triple} is not orthogonal to v")
    # a saturated rank-2 sublattice has coprime 2x2 minors
    ra, rb = a.triple, b.triple
    index = gcd(*[ra[i] * rb[j] - ra[j] * rb[i] for i in range(3) for j in range(i + 1, 3)])
    return BMPicardLattice(gram, a, b, mu, index)


@dataclass(frozen=True)
class ThetaReport:
    theta: tuple[int, int]
    q_theta: int
    q_theta_b: int
    div_theta: int
    div_b: int

    @property
    def ok(self) -> bool:
        return self.q_theta == -2 and self.q_theta_b == 1 and self.div_theta == 1

    def to_json(self) -> dict:
        return {
            "theta": list(self.theta),
            "q_theta": self.q_theta,
            "q_theta_b": self.q_theta_b,
            "div_theta": self.div_theta,
            "div_b": self.div_b,
            "ok": self.ok,
        }


def _require_s0(bm: BMSystem) -> None:
    if bm.s != 0:
        raise DomainError("the theta divisor is only constructed for v = (0, mH, 0)")


def theta_class(bm: BMSystem) -> ThetaReport:
    """Theta divisor class ``a - b`` with its square, pairing with ``b`` and divisibility in ``v^perp``."""
    _require_s0(bm)
    pic = picard_lattice(bm)
    theta = (1, -1)
    G = pic.gram
    q = sum(theta[i] * G[i][j] * theta[j] for i in range(2) for j in range(2))
    qb = sum(theta[i] * G[i][1] for i in range(2))
    _, w = bm.v.primitive_part()
    vp = vperp(w)
    theta_vec = pic.a - pic.b
    div_t = divisibility(vp.lattice, vp.coords(theta_vec))
    div_b = divisibility(vp.lattice, vp.coords(pic.b))
    return ThetaReport(theta, q, qb, div_t, div_b)


def brill_noether_rho(g: int, deg: int, r: int) -> int:
    if g < 0:
        raise DomainError("genus must be nonnegative")
    return g - (r + 1) * (g - deg + r)


@dataclass(frozen=True)
class DimensionReport:
    d: int
    m: int
    dim_theta: int
    dim_moduli: int

    @property
    def ok(self) -> bool:
        return self.dim_theta == self.dim_moduli - 1 == 2 * self.m**2 * self.d + 1

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "dim_theta": self.dim_theta, "dim_moduli": self.dim_moduli, "ok": self.ok}


def theta_dimension_check(d: int, m: int) -> DimensionReport:
    """Brill-Noether count for ``{F : h^0(F) >= 1}`` in ``M_(0,mH,0)``."""
    g = m * m * d + 1
    dim_theta = g + brill_noether_rho(g, m * m * d, 0)
    return DimensionReport(d, m, dim_theta, MukaiVector(0, m, 0, d).square + 2)


# Cohomology of S x P^1 truncated to the classes generated by 1, h, p on S
# and 1, f on P^1, with h^2 = 2d p, h p = p^2 = f^2 = 0.
_S_BASIS = ("1", "h", "p")
_S_DEG = {"1": 0, "h": 1, "p": 2}


@dataclass(frozen=True)
class ProductClass:
    """Element of ``H*(S x P^1)`` as coefficients on ``{1,h,p} x {1,f}``."""

    d: int
    coeffs: tuple[int, int, int, int, int, int]  # 1, h, p, f, hf, pf

    @staticmethod
    def basis(d: int, s_part: str, with_f: bool) -> "ProductClass":
        c = [0] * 6
        c[_S_BASIS.index(s_part) + 3 * with_f] = 1
        return ProductClass(d, tuple(c))

    @classmethod
    def from_surface(cls, x: MukaiVector) -> "ProductClass":
        """Pullback of ``x0 + x1 h + x2 p`` along the projection to S."""
        return cls(x.d, (x.r, x.c, x.s, 0, 0, 0))

    def __add__(self, other: "ProductClass") -> "ProductClass":
        return ProductClass(self.d, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int) -> "ProductClass":
        return ProductClass(self.d, tuple(k * a for a in self.coeffs))

    def __mul__(self, other: "ProductClass") -> "ProductClass":
        if self.d != other.d:
            raise DomainError("classes on different surfaces")
        out = [0] * 6
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                fi, fj = i // 3, j // 3
                if fi + fj > 1:
                    continue
                si, sj = _S_BASIS[i % 3], _S_BASIS[j % 3]
                deg = _S_DEG[si] + _S_DEG[sj]
                if deg > 2:
                    continue
                if si == "h" and sj == "h":
                    idx, coef = 2, 2 * self.d
                else:
                    idx, coef = deg, 1
                out[idx + 3 * (fi + fj)] += a * b * coef
        return ProductClass(self.d, tuple(out))

    def push_to_line(self) -> int:
        """Degree of ``pi_{P^1 *}`` of the top-degree part: the ``p x f`` coefficient."""
        return self.coeffs[5]


def chern_character_family(bm: BMSystem, ch2_coeff: int = 0, ch3_coeff: int = 0) -> ProductClass:
    """``ch`` of the family over the ruling line ``L ~ P^1``.

    ``ch_1 = m [H x L] + [S x pt]``, ``ch_2 = ch2_coeff [pt x L]`` and
    ``ch_3 = ch3_coeff [pt x pt]``. The ``ch_2`` term never reaches the
    top degree against classes pulled back from S, so its value is free.
    """
    _require_s0(bm)
    d = bm.d
    return (
        bm.m * ProductClass.basis(d, "h", False)
        + ProductClass.basis(d, "1", True)
        + ch2_coeff * ProductClass.basis(d, "p", False)
        + ch3_coeff * ProductClass.basis(d, "p", True)
    )


def curve_pairing(bm: BMSystem, x: MukaiVector, ch2_coeff: int = 0, ch3_coeff: int = 0) -> int:
    """Degree of ``lambda(x)`` on the ruling line: ``pi_*[ch(F) · (x^dual sqrt(td))]_3``."""
    _require_s0(bm)
    if mukai_pairing(x, bm.v) != 0:
        raise DomainError(f"{x.triple} is not orthogonal to v = {bm.v.triple}")
    ch = chern_character_family(bm, ch2_coeff, ch3_coeff)
    twisted = times_sqrt_td(dual_twist(x))
    return (ch * ProductClass.from_surface(twisted)).push_to_line()


@dataclass(frozen=True)
class CurveClassReport:
    ell_a: int
    ell_b: int
    q_theta_a: int
    q_theta_b: int
    q_theta: int

    @property
    def ok(self) -> bool:
        return (
            self.ell_a == self.q_theta_a == -1
            and self.ell_b == self.q_theta_b == 1
            and self.q_theta == -2
        )

    def to_json(self) -> dict:
        return {
            "ell.a": self.ell_a,
            "ell.b": self.ell_b,
            "q(theta,a)": self.q_theta_a,
            "q(theta,b)": self.q_theta_b,
            "q(theta)": self.q_theta,
            "ok": self.ok,
        }


def theta_equals_curve_class(bm: BMSystem) -> CurveClassReport:
    """Check that the ruling line pairs with ``a, b`` exactly as ``a - b`` does."""
    _require_s0(bm)
    pic = picard_lattice(bm)
    G = pic.gram
    return CurveClassReport(
        curve_pairing(bm, pic.a),
        curve_pairing(bm, pic.b),
        G[0][0] - G[1][0],
        G[0][1] - G[1][1],
        G[0][0] - 2 * G[0][1] + G[1][1],
    )
