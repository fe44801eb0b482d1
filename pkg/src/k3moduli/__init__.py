"""Exact lattice and enumerative invariants of moduli spaces of sheaves on K3 surfaces."""
from .errors import DegenerateLatticeError, DimensionError, DomainError, IdentityFailure
from .lattice_core import (
    DiscriminantGroup,
    IntegralLattice,
    direct_sum,
    discriminant_group,
    divisibility,
    orthogonal_complement,
    signature,
    smith_normal_form,
    standard_lattice,
)
from .moduli_invariants import (
    ModuliSpec,
    RRPolynomial,
    euler_characteristic,
    evaluate_rr,
    fujiki_constant,
    hrr_polynomial,
    polarization_type,
    spec_from_mw,
)
from .mukai import MukaiAmbient, MukaiVector, mukai_pairing, vperp
from .beauville_mukai import BMSystem, curve_pairing, make_bm, picard_lattice, theta_class
from .monodromy import (
    OrbitInvariant,
    bm_representative,
    in_monodromy_group,
    isotropic_orbit_invariant,
    reflection,
    same_orbit,
)
from .verify import verify

__version__ = "0.1.0"
