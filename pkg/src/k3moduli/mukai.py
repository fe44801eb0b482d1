"""Mukai lattice of a K3 surface with Picard group Z·H, H^2 = 2d.

The algebraic part is modelled by triples ``(r, c, s)`` standing for
``r + c·H + s·pt``. The full lattice is the rank-24 model
U + U + U + U + E8(-1) + E8(-1), whose first hyperbolic plane carries
H^0 + H^4 and whose second carries H.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from . import _linalg as la
from .errors import DomainError
from .lattice_core import (
    IntegralLattice,
    direct_sum,
    integer_kernel,
    orthogonal_complement,
    pair,
    smith_normal_form,
    standard_lattice,
    sublattice_coordinates,
)


@dataclass(frozen=True)
class MukaiVector:
    """Algebraic Mukai class ``(r, c·H, s)``.

    Construction does not enforce the Mukai-vector positivity conditions,
    since classes such as ``(-1, 0, 0)`` appear as lattice elements; use
    :attr:`is_valid` or :meth:`validated` where a genuine Mukai vector is
    required.
    """

    r: int
    c: int
    s: int
    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("surface datum d must be positive (H^2 = 2d)")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.r, self.c, self.s)

    @property
    def is_valid(self) -> bool:
        if self.r < 0:
            return False
        if self.r == 0:
            return self.c > 0 or (self.c == 0 and self.s > 0)
        return True

    def validated(self) -> "MukaiVector":
        if not self.is_valid:
            raise DomainError(f"{self.triple} is not a Mukai vector")
        return self

    @property
    def square(self) -> int:
        return mukai_pairing(self, self)

    @property
    def divisor(self) -> int:
        """Largest m with ``v = m·w`` for an integral ``w``."""
        return gcd(gcd(self.r, self.c), self.s)

    @property
    def is_primitive(self) -> bool:
        return self.divisor == 1

    def primitive_part(self) -> tuple[int, "MukaiVector"]:
        m = self.divisor
        if m == 0:
            raise DomainError("zero vector")
        return m, MukaiVector(self.r // m, self.c // m, self.s // m, self.d)

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        _same_surface(self, other)
        return MukaiVector(self.r + other.r, self.c + other.c, self.s + other.s, self.d)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        _same_surface(self, other)
        return MukaiVector(self.r - other.r, self.c - other.c, self.s - other.s, self.d)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, -self.c, -self.s, self.d)

    def __rmul__(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, k * self.c, k * self.s, self.d)

    def to_json(self) -> dict:
        return {"r": self.r, "c": self.c, "s": self.s, "d": self.d}

    @classmethod
    def from_json(cls, doc: dict) -> "MukaiVector":
        return cls(doc["r"], doc["c"], doc["s"], doc.get("d", 1))


@dataclass(frozen=True)
class MukaiSquareReport:
    square: int
    k: int | None


def _same_surface(v: MukaiVector, u: MukaiVector) -> None:
    if v.d != u.d:
        raise DomainError(f"Mukai vectors on different surfaces (d={v.d} vs d={u.d})")


def mukai_pairing(v: MukaiVector, u: MukaiVector) -> int:
    _same_surface(v, u)
    return 2 * v.d * v.c * u.c - v.r * u.s - u.r * v.s


def square_report(v: MukaiVector) -> MukaiSquareReport:
    sq = v.square
    return MukaiSquareReport(sq, sq // 2 if v.is_primitive and sq % 2 == 0 else None)


def sheaf_mukai_vector(m: int, chi: int, d: int) -> MukaiVector:
    """Mukai vector ``(0, mH, chi)`` of ``i_* L`` with ``L`` on a curve in ``|mH|``."""
    if m < 1:
        raise DomainError("multiplicity m must be positive")
    if chi % m:
        raise DomainError(f"chi={chi} is not divisible by m={m}")
    return MukaiVector(0, m, chi, d).validated()


def dual_twist(v: MukaiVector) -> MukaiVector:
    """``v^dual``: negate the H^2 component."""
    return MukaiVector(v.r, -v.c, v.s, v.d)


def times_sqrt_td(v: MukaiVector) -> MukaiVector:
    """Multiply by ``sqrt(td_S) = (1, 0, 1)`` in the cohomology ring of S."""
    return MukaiVector(v.r, v.c, v.s + v.r, v.d)


@dataclass(frozen=True)
class VPerp:
    lattice: IntegralLattice
    embedding: tuple[tuple[int, ...], ...]
    w: MukaiVector

    def coords(self, x: MukaiVector | tuple) -> tuple[int, ...]:
        """Coordinates in the complement basis of an algebraic class or ambient vector."""
        amb = MukaiAmbient.of(self.w.d)
        vec = amb.embed(x) if isinstance(x, MukaiVector) else tuple(x)
        return sublattice_coordinates(self.embedding, vec)


class MukaiAmbient:
    """Rank-24 Mukai lattice together with its rank-3 algebraic part."""

    def __init__(self, d: int):
        if d < 1:
            raise DomainError("d must be positive")
        self.d = d
        U = standard_lattice("U")
        E = standard_lattice("E8_minus")
        self.full = direct_sum(U, U, U, U, E, E, label="U^4 + E8(-1)^2")
        self.alg = IntegralLattice(((0, 0, -1), (0, 2 * d, 0), (-1, 0, 0)), f"N(S), H^2={2 * d}")
        self.embed_H = (0, 0, 1, d) + (0,) * 20

    @staticmethod
    @lru_cache(maxsize=None)
    def of(d: int) -> "MukaiAmbient":
        return MukaiAmbient(d)

    def embed(self, v: MukaiVector) -> tuple[int, ...]:
        """Image of ``(r, c, s)``: ``r·e0 - s·f0 + c·H``.

        ``(1,0,0)`` and ``(0,0,1)`` pair to -1, so the H^4 generator maps
        to ``-f0`` of the standard hyperbolic plane.
        """
        if v.d != self.d:
            raise DomainError(f"vector lives on d={v.d}, ambient has d={self.d}")
        out = [0] * 24
        out[0] = v.r
        out[1] = -v.s
        out[2] = v.c
        out[3] = v.c * self.d
        return tuple(out)

    @cached_property
    def uu_block(self) -> tuple[tuple[int, ...], ...]:
        """Basis of the third and fourth hyperbolic planes (orthogonal to all algebraic classes)."""
        return tuple(tuple(int(i == j) for i in range(24)) for j in range(4, 8))


def vperp(w: MukaiVector, amb: MukaiAmbient | None = None) -> VPerp:
    """Orthogonal complement of a primitive ``w`` with ``w^2 > 0`` in the full lattice.

    The result carries a certificate for U + U and a canonical generator of
    its (cyclic) discriminant group: the projection ``u - w/w^2`` of any
    ``u`` with ``(u, w) = 1``.
    """
    amb = amb or MukaiAmbient.of(w.d)
    if not w.is_primitive:
        raise DomainError(f"{w.triple} is not primitive; pass the primitive part")
    sq = w.square
    if sq <= 0:
        raise DomainError(f"w^2 = {sq} must be positive")
    x = amb.embed(w)
    sub, emb = orthogonal_complement(amb.full, [x])
    gx = la.mat_vec(amb.full.gram, x)
    snf = smith_normal_form([gx])
    u = tuple(snf.V[i][0] * snf.U[0][0] for i in range(24))
    assert pair(amb.full, u, x) == 1
    proj = tuple(Fraction(a) - Fraction(b, sq) for a, b in zip(u, x))
    gen = la.solve_rational(emb, proj)
    witness = tuple(sublattice_coordinates(emb, e) for e in amb.uu_block)
    lat = IntegralLattice(
        sub.gram,
        f"v-perp of {w.triple} (d={w.d})",
        uu_witness=witness,
        disc_generators=(gen,),
    )
    return VPerp(lat, emb, w)


def algebraic_vperp(v: MukaiVector) -> tuple[tuple[int, int, int], ...]:
    """Saturated basis of ``v^perp`` inside the rank-3 algebraic lattice."""
    amb = MukaiAmbient.of(v.d)
    row = la.mat_vec(amb.alg.gram, v.triple)
    return integer_kernel([row])
