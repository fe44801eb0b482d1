"""Lattice-level monodromy: membership in W(L) and isotropic orbit invariants.

``W(L)`` is the group of orientation preserving isometries of a lattice of
signature ``(3, t)`` acting as ``±id`` on the discriminant group. Matrices
act on column coordinate vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .beauville_mukai import make_bm
from .errors import DimensionError, DomainError
from .lattice_core import (
    DiscriminantGroup,
    IntegralLattice,
    discriminant_group,
    divisibility,
    is_primitive,
    pair,
    positive_subspace_basis,
    quadratic,
)
from .moduli_invariants import ModuliSpec
from .mukai import MukaiVector, vperp

DEFAULT_SEARCH_BOUND = 12


def _check_square(L: IntegralLattice, M) -> tuple[tuple[int, ...], ...]:
    M = la.as_matrix(M)
    if len(M) != L.rank or any(len(r) != L.rank for r in M):
        raise DimensionError(f"expected a {L.rank}x{L.rank} matrix")
    return M


def is_isometry(L: IntegralLattice, M) -> bool:
    M = _check_square(L, M)
    return la.mat_mul(la.mat_mul(la.transpose(M), L.gram), M) == L.gram


@dataclass(frozen=True)
class LatticeIsometry:
    lattice: IntegralLattice
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", _check_square(self.lattice, self.matrix))
        if not is_isometry(self.lattice, self.matrix):
            raise DomainError("matrix does not preserve the Gram matrix")

    def __call__(self, x: Sequence) -> tuple:
        return la.mat_vec(self.matrix, x)

    def __matmul__(self, other: "LatticeIsometry") -> "LatticeIsometry":
        return LatticeIsometry(self.lattice, la.mat_mul(self.matrix, other.matrix))

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix]}


def identity_isometry(L: IntegralLattice) -> LatticeIsometry:
    return LatticeIsometry(L, la.identity(L.rank))


def minus_identity(L: IntegralLattice) -> LatticeIsometry:
    return LatticeIsometry(L, tuple(tuple(-x for x in r) for r in la.identity(L.rank)))


def reflection(L: IntegralLattice, r: Sequence[int]) -> LatticeIsometry:
    """``x -> x + (x, r) r`` for a root ``r`` of square -2."""
    if quadratic(L, r) != -2:
        raise DomainError(f"reflection needs r^2 = -2, got {quadratic(L, r)}")
    gr = la.mat_vec(L.gram, r)
    n = L.rank
    M = tuple(tuple(int(i == j) + r[i] * gr[j] for j in range(n)) for i in range(n))
    return LatticeIsometry(L, M)


def _as_isometry(L: IntegralLattice, M) -> LatticeIsometry:
    return M if isinstance(M, LatticeIsometry) else LatticeIsometry(L, M)


def is_orientation_preserving(L: IntegralLattice, M) -> bool:
    """Sign of the determinant of ``M`` restricted and projected to a positive subspace."""
    g = _as_isometry(L, M)
    P = positive_subspace_basis(L)
    norms = [pair(L, p, p) for p in P]
    images = [la.mat_vec(g.matrix, p) for p in P]
    C = tuple(
        tuple(Fraction(pair(L, images[j], P[i])) / norms[i] for j in range(len(P)))
        for i in range(len(P))
    )
    dt = la.det(C)
    if dt == 0:
        raise DomainError("projection to the positive subspace is singular")
    return dt > 0


@dataclass(frozen=True)
class DiscAction:
    matrix: tuple[tuple[int, ...], ...]
    is_plus_id: bool
    is_minus_id: bool

    @property
    def is_pm_id(self) -> bool:
        return self.is_plus_id or self.is_minus_id


def disc_action(L: IntegralLattice, M, group: DiscriminantGroup | None = None) -> DiscAction:
    """Induced action on ``L^dual / L``; column ``i`` is the image of generator ``i``."""
    g = _as_isometry(L, M)
    group = group or discriminant_group(L)
    cols = [group.coords(la.mat_vec(g.matrix, lift)) for lift in group.generator_lifts]
    k = len(group.orders)
    plus = all(group.reduce(c) == group.reduce(tuple(int(i == j) for j in range(k))) for i, c in enumerate(cols))
    minus = all(
        group.reduce(c) == group.reduce(tuple(-int(i == j) for j in range(k))) for i, c in enumerate(cols)
    )
    return DiscAction(la.transpose(cols) if cols else (), plus, minus)


def in_monodromy_group(L: IntegralLattice, M) -> bool:
    if not is_isometry(L, M.matrix if isinstance(M, LatticeIsometry) else M):
        return False
    return is_orientation_preserving(L, M) and disc_action(L, M).is_pm_id


@dataclass(frozen=True)
class OrbitInvariant:
    """Square, divisibility and ``±`` discriminant class of a primitive vector."""

    square: int
    div: int
    disc_class: tuple[int, ...]
    orbit_complete: bool = True

    def key(self) -> tuple:
        return (self.square, self.div, self.disc_class)

    def to_json(self) -> dict:
        return {
            "square": self.square,
            "div": self.div,
            "disc_class": list(self.disc_class),
            "orbit_complete": self.orbit_complete,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "OrbitInvariant":
        return cls(doc["square"], doc["div"], tuple(doc["disc_class"]), doc.get("orbit_complete", True))


def _literal_uu(L: IntegralLattice) -> tuple | None:
    """Two hyperbolic planes that are literal orthogonal summands of the basis."""
    G = L.gram
    n = L.rank
    planes = []
    used: set[int] = set()
    for i in range(n):
        for j in range(i + 1, n):
            if i in used or j in used:
                continue
            if G[i][i] == 0 and G[j][j] == 0 and G[i][j] == 1:
                others = [t for t in range(n) if t not in (i, j)]
                if all(G[i][t] == 0 and G[j][t] == 0 for t in others):
                    planes.append((i, j))
                    used.update((i, j))
    if len(planes) < 2:
        return None
    e = lambda t: tuple(int(s == t) for s in range(n))  # noqa: E731
    (a, b), (c, d) = planes[:2]
    return (e(a), e(b), e(c), e(d))


def certify_uu(L: IntegralLattice) -> bool:
    """True when ``L`` is known to contain U + U (hence as an orthogonal summand)."""
    w = L.uu_witness or _literal_uu(L)
    if w is None:
        return False
    gram = tuple(tuple(pair(L, x, y) for y in w) for x in w)
    return gram == ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))


def canonical_pm(group: DiscriminantGroup, c: Sequence[int]) -> tuple[int, ...]:
    a = group.reduce(c)
    return min(a, group.neg(a))


def primitive_orbit_invariant(
    L: IntegralLattice, h: Sequence[int], group: DiscriminantGroup | None = None
) -> OrbitInvariant:
    if not is_primitive(h):
        raise DomainError("vector must be primitive")
    group = group or discriminant_group(L)
    div = divisibility(L, h)
    cls = group.coords(tuple(Fraction(x, div) for x in h))
    return OrbitInvariant(quadratic(L, h), div, canonical_pm(group, cls), certify_uu(L))


def isotropic_orbit_invariant(
    L: IntegralLattice, h: Sequence[int], group: DiscriminantGroup | None = None
) -> OrbitInvariant:
    """Complete W-orbit invariant of a primitive isotropic class.

    Completeness relies on the Eichler criterion and so on ``L`` containing
    U + U; if that cannot be certified, ``orbit_complete`` is False.
    """
    if quadratic(L, h) != 0:
        raise DomainError("vector is not isotropic")
    return primitive_orbit_invariant(L, h, group)


def same_orbit(L: IntegralLattice, h1: Sequence[int], h2: Sequence[int]) -> bool:
    group = discriminant_group(L)
    a = isotropic_orbit_invariant(L, h1, group)
    b = isotropic_orbit_invariant(L, h2, group)
    return a.key() == b.key()


def _search_order(bound: int):
    yield 0
    for s in range(1, bound + 1):
        yield -s
        yield s


def fibration_invariant(bm) -> OrbitInvariant:
    """Orbit invariant of the fibration class ``lambda(b)``, ``b = (0,0,1)``, in ``v^perp``."""
    _, w = bm.v.primitive_part()
    vp = vperp(w)
    return isotropic_orbit_invariant(vp.lattice, vp.coords(MukaiVector(0, 0, 1, bm.d)))


def bm_representative(spec: ModuliSpec, inv: OrbitInvariant, bound: int = DEFAULT_SEARCH_BOUND):
    """First Beauville-Mukai system ``(d=k, m, s)`` whose fibration class has invariant ``inv``.

    Candidates are tried in the order ``s = 0, -1, 1, -2, 2, ...`` up to
    ``|s| <= bound``; returns None when the bound is exhausted.
    """
    if inv.square != 0:
        raise DomainError("fibration classes are isotropic")
    for s in _search_order(bound):
        bm = make_bm(spec.k, spec.m, s)
        if fibration_invariant(bm).key() == inv.key():
            return bm
    return None
