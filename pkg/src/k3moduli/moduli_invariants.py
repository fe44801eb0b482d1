"""Numerical invariants of varieties of type K3^[k]_m.

Convention: ``v = m·w`` with ``w`` primitive and ``w^2 = 2k``, so the
half-dimension is ``n = k·m^2 + 1``. (The alternative normalisation
``w^2 = 2(k-1)`` shifts ``k`` by one; it is not used here.)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Literal

from .errors import DomainError, IdentityFailure

B2 = 23


@dataclass(frozen=True)
class ModuliSpec:
    m: int
    k: int
    d: int | None = None

    def __post_init__(self):
        if self.m < 1 or self.k < 1:
            raise DomainError("m and k must be positive")
        if self.d is not None and self.d != self.k:
            raise DomainError("a Beauville-Mukai realisation (0, H, s) needs d = k")

    @property
    def n(self) -> int:
        return self.k * self.m**2 + 1

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def v_square(self) -> int:
        return 2 * self.k * self.m**2

    @property
    def b2(self) -> int:
        return B2

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "n": self.n,
            "dim": self.dim,
            "b2": self.b2,
            "fujiki": str(fujiki_constant(self.n)),
            "rr_family": hrr_polynomial(self).family,
        }


def spec_from_mw(m: int, k: int) -> ModuliSpec:
    return ModuliSpec(m, k)


def fujiki_constant(n: int) -> Fraction:
    """``(2n)! / (n! 2^n)``, the Fujiki constant of a 2n-dimensional K3^[k]_m variety."""
    if n < 1:
        raise DomainError("n must be positive")
    return Fraction(factorial(2 * n), factorial(n) * 2**n)


def binomial_poly(x: Fraction, n: int) -> Fraction:
    """``x (x-1) ... (x-n+1) / n!``: the polynomial extension of C(x, n)."""
    out = Fraction(1)
    for i in range(n):
        out *= x - i
    return out / factorial(n)


@dataclass(frozen=True)
class RRPolynomial:
    """Huybrechts-Riemann-Roch polynomial of K3^[n] or Kum_n type."""

    n: int
    family: Literal["K3n", "Kum"] = "K3n"

    def __call__(self, t) -> Fraction:
        half = Fraction(t) / 2
        if self.family == "K3n":
            return binomial_poly(half + self.n + 1, self.n)
        return (self.n + 1) * binomial_poly(half + self.n, self.n)

    def coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients in ``t``, constant term first."""
        shift = self.n + 1 if self.family == "K3n" else self.n
        scale = 1 if self.family == "K3n" else self.n + 1
        # prod_i (t/2 + shift - i)
        poly = [Fraction(1)]
        for i in range(self.n):
            a = Fraction(shift - i)
            nxt = [Fraction(0)] * (len(poly) + 1)
            for j, c in enumerate(poly):
                nxt[j] += c * a
                nxt[j + 1] += c / 2
            poly = nxt
        return tuple(c * scale / factorial(self.n) for c in poly)


def hrr_polynomial(spec: ModuliSpec) -> RRPolynomial:
    return RRPolynomial(spec.n, "K3n")


def evaluate_rr(p: RRPolynomial, t: int) -> int:
    """Euler characteristic of a line bundle of BBF square ``t``."""
    if t % 2:
        raise DomainError(f"t={t} is odd; BBF squares on these lattices are even")
    val = p(t)
    if val.denominator != 1:
        raise IdentityFailure(f"RR({t}) = {val} is not an integer")
    return int(val)


def euler_characteristic(m: int, k: int, q: int) -> int:
    return evaluate_rr(hrr_polynomial(spec_from_mw(m, k)), q)


def polarization_type(spec: ModuliSpec) -> tuple[int, ...]:
    """Polarisation type of any lagrangian fibration: always principal.

    Not computed; general fibres of Beauville-Mukai systems are Jacobians
    and the type is a locally trivial deformation invariant.
    """
    return (1,) * spec.n


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: int | Fraction
    rhs: int | Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": str(self.lhs), "rhs": str(self.rhs), "holds": self.holds}


def _poly_pow(p: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(n):
        nxt = [Fraction(0)] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                nxt[i + j] += a * b
        out = nxt
    return out


def fujiki_coefficient_identity(
    n: int, q_theta: int = -2, q_b: int = 0, q_theta_b: int = 1
) -> IdentityReport:
    """Compare t^n coefficients of ``int (Theta + t b)^{2n}`` computed two ways.

    Left: ``C · q(Theta + t b)^n`` expanded, with ``q(Theta + t b) =
    q_theta + 2 t q_theta_b + t^2 q_b``. Right: ``C(2n, n) · n! · q_theta_b^n``,
    i.e. ``C(2n, n)`` times the theta-divisor self-intersection ``n!`` on a
    principally polarised fibre, scaled by the pairing with the fibre class.
    """
    C = fujiki_constant(n)
    expanded = _poly_pow([Fraction(q_theta), Fraction(2 * q_theta_b), Fraction(q_b)], n)
    lhs = C * expanded[n]
    rhs = comb(2 * n, n) * factorial(n) * Fraction(q_theta_b) ** n
    rep = IdentityReport(f"fujiki t^{n} coefficient", lhs, rhs)
    if not rep.holds:
        raise IdentityFailure(f"{rep.name}: {lhs} != {rhs}")
    return rep
